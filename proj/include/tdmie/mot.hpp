#ifndef TDMIE_MOT_HPP
#define TDMIE_MOT_HPP

#include <complex>
#include <functional>
#include <vector>

#include "tdmie/kernels.hpp"
#include "tdmie/linalg.hpp"
#include "tdmie/vsh.hpp"

// Galerkin-in-time discretization (pulse x shifted Legendre), Z-block
// assembly, marching-on-in-time solvers, and the dense collocation oracle
// used to verify them.

namespace tdmie {

struct TemporalBasisConfig {
    double dt = 0.0; // step (s)
    int np = 1;      // highest Legendre order; basis size np+1
    int nt = 1;      // total steps
};

// Shifted Legendre polynomial P_j(2 tau - 1) for tau in [0, 1).
double temporal_basis(int j, double tau);

enum class BlockVariant { plain, differenced };

struct MotBlocks {
    std::vector<Mat> blocks;   // Z_0 .. Z_Nk (plain) or Z^I_0 .. Z^I_{Nk+1}
    int nk = 0;                // ceil(support/dt) + 1
    BlockVariant variant = BlockVariant::plain;
    double tail_constant = 0.0; // kernel tail (K1 only)
    double dt = 0.0;
    int np = 0;
    double identity_weight = 0.0; // second-kind weight folded into Z_0
    KernelKind kind = KernelKind::K0;
    int n = 0;

    // Constant block all plain blocks equal beyond nk (tail kernels).
    Mat tail_block() const;
};

// Exact double integrals <Pi_p P_i, K (x) Pi_q P_j>: impulse terms reduce to
// shifted cross-correlations of the basis, smooth terms to single integrals
// split at kernel breakpoints; every panel is polynomial and integrated by a
// Gauss rule of matching exactness.
MotBlocks assemble_blocks(const PiecewiseKernel& kernel, const TemporalBasisConfig& basis,
                          BlockVariant variant, double identity_weight);

using CoefficientVec = std::vector<complexd>; // length np+1

struct CoefficientSeries {
    ModeIndex mode;
    KernelKind kind = KernelKind::K0;
    double dt = 0.0;
    int np = 0;
    std::vector<CoefficientVec> values; // one vector per step

    double peak_abs() const;
    // max |coefficient| over the final `window` steps divided by peak.
    double late_time_ratio(int window) const;
    complexd evaluate(double t) const; // piecewise-Legendre reconstruction
};

// Plain marching for finite-support blocks (kernels 2-4 and tests).
CoefficientSeries march(const MotBlocks& blocks, const std::vector<CoefficientVec>& rhs);

// Auxiliary-charge marching on the differenced system (kernel 1):
//   Z^I_0 I_q = V_q - sum_{j=q-Nk}^{q-1} Z^I_{q-j} I_j - C_{q-1},
//   C_q = C_{q-1} + sum_{k=max(0,q-Nk)}^{q} Z^I_{q-k} I_k,
// with per-step cost independent of q.
CoefficientSeries march_with_charge(const MotBlocks& blocks, const std::vector<CoefficientVec>& rhs);

// Time-tested projections V_q of a right-hand side: (np+1) Gauss-weighted
// moments of f over [q dt, (q+1) dt].
CoefficientVec assemble_rhs(const std::function<complexd(double)>& f,
                            const TemporalBasisConfig& basis, int q);
std::vector<CoefficientVec> assemble_rhs_all(const std::function<complexd(double)>& f,
                                             const TemporalBasisConfig& basis);

// Independent fine-step collocation oracle for
//   iota J(t) + (K (x) J)(t) = f(t)
// with the kernel's impulses applied exactly and trapezoidal quadrature on
// the smooth/tail parts; second order in dt_fine.
std::vector<complexd> volterra_oracle(const PiecewiseKernel& kernel, double identity_weight,
                                      const std::function<complexd(double)>& f,
                                      double dt_fine, int nt_fine);

// Sample a coefficient series on the oracle grid for L2 comparison.
double relative_l2_vs_oracle(const CoefficientSeries& series,
                             const std::vector<complexd>& oracle, double dt_fine);

} // namespace tdmie

#endif
