#ifndef TDMIE_FDMIE_HPP
#define TDMIE_FDMIE_HPP

#include <vector>

#include "tdmie/kernels.hpp"
#include "tdmie/mot.hpp"
#include "tdmie/vsh.hpp"

// Frequency-domain per-mode reference solution in the same tested-Galerkin
// normalization as the time-domain path, plus the TD->FD comparison tools.

namespace tdmie {

struct BandSpec {
    double f_lo = 0.1e9;
    double f_hi = 0.7e9;
    int count = 21;

    std::vector<double> frequencies() const;
};

// Analytic transform of the modulated Gaussian waveform (amplitude included):
//   ghat(f) = A (sigma sqrt(2 pi)/2)
//             [e^{-2 pi^2 sigma^2 (f-f0)^2} + e^{-2 pi^2 sigma^2 (f+f0)^2}]
//             e^{-j 2 pi f tp}
complexd incident_spectrum(const IncidentConfig& cfg, double f_hz);

struct FdModeSolution {
    ModeIndex mode;
    KernelKind kind = KernelKind::K1;
    BandSpec band;
    std::vector<complexd> values;
};

TestedEquation equation_for_kind(KernelKind kind);
VshFamily family_for_kind(KernelKind kind);

// J(w) = fhat/Khat (first kind) or fhat/(a^2 + Khat) (second kind), with
// fhat = incident_spectrum x the quadrature spatial factor.
FdModeSolution fd_mode_solution(const ModeIndex& mode, KernelKind kind, const BandSpec& band,
                                const IncidentConfig& cfg, double a, double mu);

// Continuous-time transform of the piecewise-Legendre series, evaluated
// analytically per step through int_0^1 P_j(2 tau - 1) e^{-j x tau} dtau
//   = e^{-j x/2} (-j)^j j_j(x/2); no FFT, no leakage.
std::vector<complexd> td_to_fd(const CoefficientSeries& series, const BandSpec& band);

// max |coefficient| over the trailing fraction of the series / peak.
double series_decay_ratio(const CoefficientSeries& series, double window_fraction = 0.1);

// || td - fd ||_2 / || fd ||_2 over the band samples.
double band_compare(const std::vector<complexd>& td, const std::vector<complexd>& fd);

} // namespace tdmie

#endif
