#ifndef TDMIE_KERNELS_HPP
#define TDMIE_KERNELS_HPP

#include <complex>
#include <functional>
#include <string>
#include <vector>

#include "tdmie/specfun.hpp"

// Reduced per-degree Volterra kernels for the sphere, r = r' = a.
//
// Everything derives from the mode kernel
//   K0(r,r',t) = c/(2rr') P_n(xi/(2rr')) on t in [|r-r'|/c, (r+r')/c]
// whose Fourier transform is -jk z_n^(4)(kr) z_n^(1)(kr').  The four solver
// kernels are radial/time derivatives (and one time integral) of K0 taken in
// the limit r' -> r = a from the exterior side; the pulse edges turn into
// impulses at t = 0 and t = 2a/c, and the time integral in kernel 1 leaves a
// constant tail.  All constants are pinned so that each kernel's transform
// equals the analytic spherical Bessel/Hankel product in kernel_fd_oracle.

namespace tdmie {

enum class KernelKind { K0 = 0, K1 = 1, K2 = 2, K3 = 3, K4 = 4 };

const char* kernel_kind_name(KernelKind kind);

struct DeltaTerm {
    double time;
    double weight;
};

struct PiecewiseKernel {
    int n = 0;
    KernelKind kind = KernelKind::K0;
    double a = 1.0;  // sphere radius (m)
    double c = 0.0;  // wave speed (m/s)
    double mu = 0.0; // permeability (H/m)
    double support_end = 0.0; // 2a/c (s)
    std::function<double(double)> smooth; // valid on (0, support_end), else 0
    std::vector<DeltaTerm> deltas;        // impulses at 0 and support_end
    double tail = 0.0;                    // constant value for t > support_end
    std::vector<double> breakpoints;      // {0, support_end}

    // Distribution-free part at lag t: smooth inside the support, tail beyond.
    double value_at(double t) const {
        if (t <= 0.0) return 0.0;
        if (t < support_end) return smooth(t);
        return tail;
    }
};

// Stable addition-theorem kernel for general radii (testing surface;
// the solver path always uses r = r' = a through build_kernel).
double kernel_k0(int n, double r, double rp, double t, double c);

PiecewiseKernel build_kernel(KernelKind kind, int n, double a, double c, double mu);

// Second-kind identity weight carried by the tested MFIE equations.
double mfie_identity_weight(KernelKind kind, double a);

// Analytic frequency-domain mode kernel (same normalization as build_kernel):
//   K0: -jk z4(ka) j_n(ka)
//   K1:  w mu k a^4 R4(ka) R1(ka)
//   K2:  w mu k a^4 z4(ka) j_n(ka)
//   K3:  +j k^2 a^4 z4(ka) R1(ka)
//   K4:  -j k^2 a^4 j_n(ka) R4(ka)
// with R(x) = [x z(x)]'/x.
complexd kernel_fd_oracle(KernelKind kind, int n, double a, double omega,
                          double c, double mu);

// High-accuracy Fourier integral F[K](w) = int K(t) e^{-jwt} dt of the
// piecewise kernel: Gauss panels on the smooth part, exact phase factors for
// the impulses, tail transformed as tail e^{-jw b}/(jw).
complexd kernel_fd_numeric(const PiecewiseKernel& kernel, double omega);

// Debug dump: CSV `t,smooth_value` rows plus `# delta t=... w=...` and
// `# tail=...` header lines.
void write_kernel_csv(const PiecewiseKernel& kernel, const std::string& path,
                      int samples = 512);

} // namespace tdmie

#endif
