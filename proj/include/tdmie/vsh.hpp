#ifndef TDMIE_VSH_HPP
#define TDMIE_VSH_HPP

#include <array>
#include <complex>
#include <vector>

#include "tdmie/specfun.hpp"

// Tangential vector spherical harmonics Psi/Phi, the modulated-Gaussian
// plane-wave excitation, and the Galerkin projections of its tested traces
// onto the harmonics (the right-hand sides of the four Volterra equations).

namespace tdmie {

enum class VshFamily { Psi, Phi };

struct ModeIndex {
    int n = 1;        // degree >= 1
    int m = 0;        // |m| <= n
    VshFamily family = VshFamily::Psi;
};

struct TangentVector {
    complexd v_theta{0.0, 0.0};
    complexd v_phi{0.0, 0.0};
};

// Psi_n^m = grad_t Y_n^m / sqrt(n(n+1)); Phi = r_hat x Psi.  Components are
// evaluated through normalized Legendre ladders that stay finite at the
// poles, so no separate limit branch is needed.
TangentVector vsh_psi(const ModeIndex& mode, double theta, double phi);
TangentVector vsh_phi(const ModeIndex& mode, double theta, double phi);

// Modulated-Gaussian plane wave, x-polarized, propagating along +z:
//   E(r,t) = x_hat A g(tau),  tau = t - z/c,
//   g(s)   = cos(2 pi f0 s) exp(-(s - tp)^2 / (2 sigma^2)),
// with sigma = 3/(2 pi B) and tp = 40 sigma.
struct IncidentConfig {
    double f0 = 0.4e9;            // center frequency (Hz)
    double bandwidth = 0.3e9;     // B (Hz)
    double c = 299792458.0;       // wave speed (m/s)
    double eta = 4.0e-7 * 3.14159265358979323846 * 299792458.0; // mu*c (ohm)
    double amplitude = 1.0;       // E-field scale (V/m)

    double sigma() const { return 3.0 / (2.0 * 3.14159265358979323846 * bandwidth); }
    double tp() const { return 40.0 * sigma(); }
    double mu() const { return eta / c; }
    // Baseband waveform g at retarded argument s.
    double waveform(double s) const;
};

std::array<double, 3> incident_e(const IncidentConfig& cfg, const std::array<double, 3>& r, double t);
std::array<double, 3> incident_h(const IncidentConfig& cfg, const std::array<double, 3>& r, double t);

enum class TestedEquation { EFIE_Psi = 1, EFIE_Phi = 2, MFIE_Psi = 3, MFIE_Phi = 4 };

// Product quadrature on the unit sphere: Gauss in cos(theta), uniform in phi.
struct SurfaceRule {
    QuadratureRule theta;   // rule over x = cos(theta)
    int n_phi = 0;

    static SurfaceRule for_degree(int n); // max(n+2, 32) x max(2(n+1)+1, 16)
};

// Projection of the tested incident trace onto one mode.  The plane wave
// factorizes as g(t - a cos(theta)/c), so the angular quadrature collapses to
// per-theta-node complex weights computed once; evaluating f(t) or the
// frequency-domain spatial factor is then a short weighted sum.
class IncidentProjector {
public:
    IncidentProjector(const IncidentConfig& cfg, const ModeIndex& mode,
                      TestedEquation equation, double radius,
                      const SurfaceRule& rule);

    // f_nm^nu(t) with the a^2 dOmega surface measure included.
    complexd operator()(double t) const;

    // Spatial factor S(w) such that F[f](w) = ghat(w) S(w).
    complexd fd_factor(double omega) const;

    double radius() const { return radius_; }

private:
    IncidentConfig cfg_;
    double radius_;
    std::vector<double> cos_theta_;
    std::vector<complexd> weights_;
};

// One-off evaluation (builds the projector internally).
complexd project_incident(const IncidentConfig& cfg, const ModeIndex& mode,
                          TestedEquation equation, double radius, double t,
                          const SurfaceRule& rule);

} // namespace tdmie

#endif
