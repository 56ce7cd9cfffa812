#include "tdmie/vsh.hpp"

#include <cmath>

namespace tdmie {

namespace {

// theta-parts of the Psi components for degree n, |m|: returns
// (d/dtheta Ybar, m Ybar / sin theta) without the e^{jm phi} factor,
// adjusted for the sign of m.
struct PsiTheta {
    double dtheta;
    double m_over_sin;
};

PsiTheta psi_theta_parts(int n, int m, double theta) {
    const int ma = std::abs(m);
    if (ma > n) throw DomainError("vsh: |m| > n");
    const PlmTheta plm = normalized_plm_theta(n, ma, theta);
    double d = plm.dpbar[n];
    double q = ma * plm.pbarsin[n];
    if (m < 0) {
        const double sign = (ma % 2 == 0) ? 1.0 : -1.0; // Pbar_n^{-m} = (-1)^m Pbar_n^m
        d *= sign;
        q *= sign * -1.0; // the factor m flips sign
    }
    return {d, q};
}

} // namespace

TangentVector vsh_psi(const ModeIndex& mode, double theta, double phi) {
    if (mode.n < 1) throw DomainError("vsh_psi: n must be >= 1");
    const PsiTheta p = psi_theta_parts(mode.n, mode.m, theta);
    const double norm = 1.0 / std::sqrt(static_cast<double>(mode.n) * (mode.n + 1.0));
    const double arg = mode.m * phi;
    const complexd ephi{std::cos(arg), std::sin(arg)};
    TangentVector v;
    v.v_theta = norm * p.dtheta * ephi;
    v.v_phi = norm * complexd{0.0, 1.0} * p.m_over_sin * ephi;
    return v;
}

TangentVector vsh_phi(const ModeIndex& mode, double theta, double phi) {
    const TangentVector psi = vsh_psi(mode, theta, phi);
    // Phi = r_hat x Psi: (v_theta, v_phi) -> (-v_phi, v_theta)
    return {-psi.v_phi, psi.v_theta};
}

double IncidentConfig::waveform(double s) const {
    const double d = s - tp();
    const double sig = sigma();
    return amplitude * std::cos(2.0 * M_PI * f0 * s) * std::exp(-d * d / (2.0 * sig * sig));
}

std::array<double, 3> incident_e(const IncidentConfig& cfg, const std::array<double, 3>& r, double t) {
    const double g = cfg.waveform(t - r[2] / cfg.c);
    return {g, 0.0, 0.0};
}

std::array<double, 3> incident_h(const IncidentConfig& cfg, const std::array<double, 3>& r, double t) {
    const double g = cfg.waveform(t - r[2] / cfg.c);
    return {0.0, g / cfg.eta, 0.0};
}

SurfaceRule SurfaceRule::for_degree(int n) {
    SurfaceRule rule;
    rule.theta = gauss_legendre(std::max(n + 2, 32));
    rule.n_phi = std::max(2 * (n + 1) + 1, 16);
    return rule;
}

IncidentProjector::IncidentProjector(const IncidentConfig& cfg, const ModeIndex& mode,
                                     TestedEquation equation, double radius,
                                     const SurfaceRule& rule)
    : cfg_(cfg), radius_(radius) {
    if (mode.n < 1 || std::abs(mode.m) > mode.n)
        throw DomainError("IncidentProjector: invalid mode");
    const int n_theta = static_cast<int>(rule.theta.nodes.size());
    if (n_theta < mode.n + 2 || rule.n_phi < 2 * (mode.n + 1) + 1)
        throw DomainError("IncidentProjector: quadrature resolution below (n+2) x (2(n+1)+1)");

    const bool efie = equation == TestedEquation::EFIE_Psi || equation == TestedEquation::EFIE_Phi;
    const bool psi_test = equation == TestedEquation::EFIE_Psi || equation == TestedEquation::MFIE_Psi;
    const double field_scale = efie ? 1.0 : 1.0 / cfg.eta;

    cos_theta_.resize(n_theta);
    weights_.assign(n_theta, complexd{0.0, 0.0});
    const double dphi = 2.0 * M_PI / rule.n_phi;
    const double jac = radius * radius;
    for (int q = 0; q < n_theta; ++q) {
        const double x = rule.theta.nodes[q];
        cos_theta_[q] = x;
        const double theta = std::acos(x);
        complexd acc{0.0, 0.0};
        for (int p = 0; p < rule.n_phi; ++p) {
            const double phi = dphi * p;
            const TangentVector test =
                psi_test ? vsh_psi({mode.n, mode.m, mode.family}, theta, phi)
                         : vsh_phi({mode.n, mode.m, mode.family}, theta, phi);
            // Tested trace direction (the common g factor is applied later):
            //   EFIE: tangential E of the x-polarized wave
            //   MFIE: r_hat x H of the same wave
            double x_theta, x_phi;
            if (efie) {
                x_theta = std::cos(theta) * std::cos(phi);
                x_phi = -std::sin(phi);
            } else {
                x_theta = -std::cos(phi);
                x_phi = std::cos(theta) * std::sin(phi);
            }
            acc += std::conj(test.v_theta) * x_theta + std::conj(test.v_phi) * x_phi;
        }
        weights_[q] = acc * (rule.theta.weights[q] * dphi * jac * field_scale);
    }
}

complexd IncidentProjector::operator()(double t) const {
    complexd acc{0.0, 0.0};
    for (std::size_t q = 0; q < weights_.size(); ++q)
        acc += weights_[q] * cfg_.waveform(t - radius_ * cos_theta_[q] / cfg_.c);
    return acc;
}

complexd IncidentProjector::fd_factor(double omega) const {
    const complexd jimag{0.0, 1.0};
    complexd acc{0.0, 0.0};
    for (std::size_t q = 0; q < weights_.size(); ++q)
        acc += weights_[q] * std::exp(-jimag * (omega * radius_ * cos_theta_[q] / cfg_.c));
    // Amplitude-free: F[f](w) = ghat(w) * fd_factor(w), with the amplitude
    // carried by ghat.
    return acc;
}

complexd project_incident(const IncidentConfig& cfg, const ModeIndex& mode,
                          TestedEquation equation, double radius, double t,
                          const SurfaceRule& rule) {
    return IncidentProjector(cfg, mode, equation, radius, rule)(t);
}

} // namespace tdmie
