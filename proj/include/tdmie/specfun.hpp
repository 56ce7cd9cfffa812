#ifndef TDMIE_SPECFUN_HPP
#define TDMIE_SPECFUN_HPP

#include <complex>
#include <stdexcept>
#include <vector>

// Real and complex special functions shared by every other layer:
// Legendre and associated Legendre polynomials, spherical Bessel/Hankel
// functions with their Riccati derivative factors, Gauss-Legendre rules,
// and orthonormal scalar spherical harmonics.

namespace tdmie {

using complexd = std::complex<double>;

struct DomainError : std::domain_error {
    using std::domain_error::domain_error;
};

// P_n(x) together with its first two derivatives.
struct LegendreValue {
    double p;
    double dp;
    double d2p;
};

// Forward three-term recurrence; |x| may exceed 1 by at most 1e-12.
LegendreValue legendre(int n, double x);

// Ferrers associated Legendre P_n^m(x), Condon-Shortley phase included.
// Negative m handled through the (n-m)!/(n+m)! reflection.
double assoc_legendre(int n, int m, double x);

enum class RadialKind {
    bessel_j, // z^(1): regular spherical Bessel j_n
    hankel2   // z^(4): outgoing h_n^(2) = j_n - i y_n under e^{+jwt}
};

double sph_bessel_j(int n, double x); // Miller downward recurrence
double sph_bessel_y(int n, double x); // upward recurrence

// z_n(x) for the requested kind as a complex value.
complexd sph_bessel(RadialKind kind, int n, double x);

// [x z_n(x)]' / x = z_{n-1}(x) - (n/x) z_n(x).
complexd riccati_factor(RadialKind kind, int n, double x);

// Orthonormal scalar spherical harmonic Y_n^m(theta, phi).
complexd ynm(int n, int m, double theta, double phi);

// Normalized associated Legendre theta-machinery used by the vector
// harmonics: for fixed m >= 0 and all degrees n in [m, n_max] returns
//   pbar[n]   = Nbar_n^m P_n^m(cos theta)          (orthonormal over S^2)
//   dpbar[n]  = d/dtheta of pbar
//   pbarsin[n]= pbar / sin(theta), evaluated pole-safely
// The /sin ladder is seeded with sin^{m-1} so poles need no special case.
struct PlmTheta {
    std::vector<double> pbar;
    std::vector<double> dpbar;
    std::vector<double> pbarsin; // only meaningful for m >= 1
};
PlmTheta normalized_plm_theta(int n_max, int m, double theta);

struct QuadratureRule {
    std::vector<double> nodes;   // strictly increasing, inside (-1, 1)
    std::vector<double> weights; // positive, summing to 2
};

// Gauss-Legendre rule of size n; Newton iteration on P_n from Chebyshev
// starting guesses, node accuracy ~1e-14.
QuadratureRule gauss_legendre(int n);

// Integrate f over [a, b] with an ng-point Gauss rule (rule cached per size).
template <typename F>
double gauss_integrate(const QuadratureRule& rule, double a, double b, F&& f) {
    const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    double acc = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i)
        acc += rule.weights[i] * f(mid + half * rule.nodes[i]);
    return acc * half;
}

// Shared cache of Gauss rules keyed by size.
const QuadratureRule& cached_gauss(int n);

} // namespace tdmie

#endif
