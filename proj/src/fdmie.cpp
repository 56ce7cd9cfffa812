#include "tdmie/fdmie.hpp"

#include <cmath>

namespace tdmie {

std::vector<double> BandSpec::frequencies() const {
    std::vector<double> f(count);
    if (count == 1) {
        f[0] = f_lo;
        return f;
    }
    for (int i = 0; i < count; ++i)
        f[i] = f_lo + (f_hi - f_lo) * i / (count - 1);
    return f;
}

complexd incident_spectrum(const IncidentConfig& cfg, double f_hz) {
    const double sig = cfg.sigma();
    const double gm = 2.0 * M_PI * M_PI * sig * sig;
    const double env = std::exp(-gm * (f_hz - cfg.f0) * (f_hz - cfg.f0)) +
                       std::exp(-gm * (f_hz + cfg.f0) * (f_hz + cfg.f0));
    const double mag = cfg.amplitude * sig * std::sqrt(2.0 * M_PI) * 0.5 * env;
    const double phase = -2.0 * M_PI * f_hz * cfg.tp();
    return mag * complexd{std::cos(phase), std::sin(phase)};
}

TestedEquation equation_for_kind(KernelKind kind) {
    switch (kind) {
        case KernelKind::K1: return TestedEquation::EFIE_Psi;
        case KernelKind::K2: return TestedEquation::EFIE_Phi;
        case KernelKind::K3: return TestedEquation::MFIE_Psi;
        case KernelKind::K4: return TestedEquation::MFIE_Phi;
        default: throw DomainError("equation_for_kind: K0 has no tested equation");
    }
}

VshFamily family_for_kind(KernelKind kind) {
    switch (kind) {
        case KernelKind::K1:
        case KernelKind::K3: return VshFamily::Psi;
        case KernelKind::K2:
        case KernelKind::K4: return VshFamily::Phi;
        default: throw DomainError("family_for_kind: K0 has no mode family");
    }
}

FdModeSolution fd_mode_solution(const ModeIndex& mode, KernelKind kind, const BandSpec& band,
                                const IncidentConfig& cfg, double a, double mu) {
    FdModeSolution sol;
    sol.mode = mode;
    sol.kind = kind;
    sol.band = band;
    const SurfaceRule rule = SurfaceRule::for_degree(mode.n);
    const IncidentProjector proj(cfg, mode, equation_for_kind(kind), a, rule);
    const double ident = mfie_identity_weight(kind, a);
    for (double f : band.frequencies()) {
        const double omega = 2.0 * M_PI * f;
        const complexd fhat = incident_spectrum(cfg, f) * proj.fd_factor(omega);
        const complexd denom = kernel_fd_oracle(kind, mode.n, a, omega, cfg.c, mu) + ident;
        if (std::abs(denom) < 1e-300)
            throw NumericalError("fd_mode_solution: mode operator vanishes (resonance/underflow)");
        sol.values.push_back(fhat / denom);
    }
    return sol;
}

std::vector<complexd> td_to_fd(const CoefficientSeries& series, const BandSpec& band) {
    const complexd jimag{0.0, 1.0};
    std::vector<complexd> out;
    out.reserve(band.count);
    const double dt = series.dt;
    for (double f : band.frequencies()) {
        const double omega = 2.0 * M_PI * f;
        const double x = omega * dt;
        // Per-order step moments M_j = dt e^{-jx/2} (-j)^j j_j(x/2).
        std::vector<complexd> moment(series.np + 1);
        const complexd base = dt * std::exp(-jimag * (0.5 * x));
        complexd mj{1.0, 0.0};
        for (int j = 0; j <= series.np; ++j) {
            moment[j] = base * mj * sph_bessel_j(j, 0.5 * x);
            mj *= -jimag;
        }
        const complexd step_phase = std::exp(-jimag * x);
        complexd phase{1.0, 0.0};
        complexd acc{0.0, 0.0};
        for (const CoefficientVec& v : series.values) {
            complexd s{0.0, 0.0};
            for (int j = 0; j <= series.np; ++j) s += v[j] * moment[j];
            acc += phase * s;
            phase *= step_phase;
        }
        out.push_back(acc);
    }
    return out;
}

double series_decay_ratio(const CoefficientSeries& series, double window_fraction) {
    const int window = std::max<int>(1, static_cast<int>(series.values.size() * window_fraction));
    return series.late_time_ratio(window);
}

double band_compare(const std::vector<complexd>& td, const std::vector<complexd>& fd) {
    if (td.size() != fd.size()) throw DomainError("band_compare: sample counts differ");
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < td.size(); ++i) {
        num += std::norm(td[i] - fd[i]);
        den += std::norm(fd[i]);
    }
    if (den == 0.0) throw NumericalError("band_compare: zero-norm reference");
    return std::sqrt(num / den);
}

} // namespace tdmie
