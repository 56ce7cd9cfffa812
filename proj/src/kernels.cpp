#include "tdmie/kernels.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>

namespace tdmie {

const char* kernel_kind_name(KernelKind kind) {
    switch (kind) {
        case KernelKind::K0: return "K0";
        case KernelKind::K1: return "K1";
        case KernelKind::K2: return "K2";
        case KernelKind::K3: return "K3";
        case KernelKind::K4: return "K4";
    }
    return "?";
}

double kernel_k0(int n, double r, double rp, double t, double c) {
    if (r <= 0.0 || rp <= 0.0) throw DomainError("kernel_k0: radii must be positive");
    if (t < 0.0) return 0.0;
    const double alpha = std::abs(r - rp) / c;
    const double beta = (r + rp) / c;
    if (t < alpha || t > beta) return 0.0;
    const double xi = r * r + rp * rp - c * c * t * t;
    const double u = xi / (2.0 * r * rp);
    return c / (2.0 * r * rp) * legendre(n, std::min(1.0, std::max(-1.0, u))).p;
}

namespace {

// G_n(w) = int_0^w [ P_n''(1 - v^2/2) v^4/4 - P_n'(1 - v^2/2) (2 + v^2)/2 ] dv.
// The integrand is a polynomial of degree 2n in v, so an (n+1)-point Gauss
// rule evaluates the integral exactly.
double k1_running_integral(int n, double w) {
    if (w <= 0.0) return 0.0;
    const QuadratureRule& rule = cached_gauss(n + 1);
    return gauss_integrate(rule, 0.0, w, [n](double v) {
        const double u = 1.0 - 0.5 * v * v;
        const LegendreValue lv = legendre(n, u);
        return lv.d2p * v * v * v * v * 0.25 - lv.dp * (2.0 + v * v) * 0.5;
    });
}

} // namespace

double mfie_identity_weight(KernelKind kind, double a) {
    return (kind == KernelKind::K3 || kind == KernelKind::K4) ? a * a : 0.0;
}

PiecewiseKernel build_kernel(KernelKind kind, int n, double a, double c, double mu) {
    if (kind != KernelKind::K0 && n < 1)
        throw DomainError("build_kernel: solver kernels require n >= 1");
    PiecewiseKernel k;
    k.n = n;
    k.kind = kind;
    k.a = a;
    k.c = c;
    k.mu = mu;
    k.support_end = 2.0 * a / c;
    k.breakpoints = {0.0, k.support_end};
    const double beta = k.support_end;
    const double sign_n = (n % 2 == 0) ? 1.0 : -1.0; // P_n(-1)
    const double dpm1 = legendre(n, -1.0).dp;        // P_n'(-1)

    auto u_of = [a, c](double t) { return 1.0 - c * c * t * t / (2.0 * a * a); };

    switch (kind) {
        case KernelKind::K0:
            k.smooth = [n, a, c, u_of](double t) {
                return c / (2.0 * a * a) * legendre(n, u_of(t)).p;
            };
            break;
        case KernelKind::K1: {
            const double amp = -0.5 * mu * c * c * a;
            k.smooth = [n, a, c, amp](double t) {
                return amp * k1_running_integral(n, c * t / a);
            };
            k.deltas = {{0.0, 0.5 * mu * c * a * a},
                        {beta, sign_n * 0.5 * mu * c * a * a}};
            k.tail = amp * k1_running_integral(n, 2.0) - mu * c * c * a * dpm1;
            break;
        }
        case KernelKind::K2:
            k.smooth = [n, mu, c, u_of](double t) {
                return -0.5 * mu * c * c * c * t * legendre(n, u_of(t)).dp;
            };
            k.deltas = {{0.0, 0.5 * mu * c * a * a},
                        {beta, -sign_n * 0.5 * mu * c * a * a}};
            break;
        case KernelKind::K3:
            k.smooth = [n, a, c, u_of](double t) {
                return -c * c * c * t * t / (4.0 * a) * legendre(n, u_of(t)).dp;
            };
            k.deltas = {{0.0, -0.5 * a * a}, {beta, -sign_n * 0.5 * a * a}};
            break;
        case KernelKind::K4:
            k.smooth = [n, a, c, u_of](double t) {
                return c * c * c * t * t / (4.0 * a) * legendre(n, u_of(t)).dp;
            };
            k.deltas = {{0.0, -0.5 * a * a}, {beta, sign_n * 0.5 * a * a}};
            break;
    }
    return k;
}

complexd kernel_fd_oracle(KernelKind kind, int n, double a, double omega,
                          double c, double mu) {
    if (omega <= 0.0) throw DomainError("kernel_fd_oracle: omega must be positive");
    const double kw = omega / c;
    const double x = kw * a;
    const complexd jimag{0.0, 1.0};
    const complexd z4 = sph_bessel(RadialKind::hankel2, n, x);
    const complexd z1 = sph_bessel(RadialKind::bessel_j, n, x);
    const complexd r4 = riccati_factor(RadialKind::hankel2, n, x);
    const complexd r1 = riccati_factor(RadialKind::bessel_j, n, x);
    const double a4 = a * a * a * a;
    switch (kind) {
        case KernelKind::K0: return -jimag * kw * z4 * z1;
        case KernelKind::K1: return omega * mu * kw * a4 * r4 * r1;
        case KernelKind::K2: return omega * mu * kw * a4 * z4 * z1;
        case KernelKind::K3: return jimag * kw * kw * a4 * z4 * r1;
        case KernelKind::K4: return -jimag * kw * kw * a4 * z1 * r4;
    }
    return {};
}

complexd kernel_fd_numeric(const PiecewiseKernel& kernel, double omega) {
    const double beta = kernel.support_end;
    const complexd jimag{0.0, 1.0};
    complexd acc{0.0, 0.0};
    // Panel count resolves both the Legendre oscillation (~n kinks of P_n
    // over the support) and the e^{-jwt} phase.
    const int panels = std::max({32, 2 * kernel.n, static_cast<int>(std::ceil(std::abs(omega) * beta / M_PI)) * 2});
    const QuadratureRule& rule = cached_gauss(16);
    const double h = beta / panels;
    for (int p = 0; p < panels; ++p) {
        const double lo = p * h, hi = lo + h;
        const double mid = 0.5 * (lo + hi), half = 0.5 * (hi - lo);
        complexd panel{0.0, 0.0};
        for (std::size_t q = 0; q < rule.nodes.size(); ++q) {
            const double t = mid + half * rule.nodes[q];
            panel += rule.weights[q] * kernel.smooth(t) *
                     std::exp(-jimag * (omega * t));
        }
        acc += panel * half;
    }
    for (const DeltaTerm& d : kernel.deltas)
        acc += d.weight * std::exp(-jimag * (omega * d.time));
    if (kernel.tail != 0.0) {
        if (omega == 0.0) throw DomainError("kernel_fd_numeric: tail transform needs omega != 0");
        acc += kernel.tail * std::exp(-jimag * (omega * beta)) / (jimag * omega);
    }
    return acc;
}

void write_kernel_csv(const PiecewiseKernel& kernel, const std::string& path,
                      int samples) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("write_kernel_csv: cannot open " + path);
    for (const DeltaTerm& d : kernel.deltas) {
        char buf[96];
        std::snprintf(buf, sizeof buf, "# delta t=%.17g w=%.17g\n", d.time, d.weight);
        out << buf;
    }
    {
        char buf[64];
        std::snprintf(buf, sizeof buf, "# tail=%.17g\n", kernel.tail);
        out << buf;
    }
    out << "t,smooth_value\n";
    for (int i = 0; i <= samples; ++i) {
        const double t = kernel.support_end * i / samples;
        char buf[96];
        std::snprintf(buf, sizeof buf, "%.17g,%.17g\n", t, kernel.value_at(t));
        out << buf;
    }
}

} // namespace tdmie
