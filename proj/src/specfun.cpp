#include "tdmie/specfun.hpp"

#include <cmath>
#include <map>
#include <mutex>

namespace tdmie {

LegendreValue legendre(int n, double x) {
    if (n < 0) throw DomainError("legendre: degree must be non-negative");
    if (std::abs(x) > 1.0 + 1e-12) throw DomainError("legendre: |x| > 1");
    double p0 = 1.0, d0 = 0.0, s0 = 0.0;   // P_0
    if (n == 0) return {p0, d0, s0};
    double p1 = x, d1 = 1.0, s1 = 0.0;     // P_1
    for (int k = 1; k < n; ++k) {
        const double a = (2.0 * k + 1.0) / (k + 1.0);
        const double b = static_cast<double>(k) / (k + 1.0);
        const double p2 = a * x * p1 - b * p0;
        const double d2 = a * (p1 + x * d1) - b * d0;
        const double s2 = a * (2.0 * d1 + x * s1) - b * s0;
        p0 = p1; d0 = d1; s0 = s1;
        p1 = p2; d1 = d2; s1 = s2;
    }
    return {p1, d1, s1};
}

double assoc_legendre(int n, int m, double x) {
    if (n < 0) throw DomainError("assoc_legendre: degree must be non-negative");
    if (std::abs(x) > 1.0 + 1e-12) throw DomainError("assoc_legendre: |x| > 1");
    if (m < 0) {
        // P_n^{-m} = (-1)^m (n-m)!/(n+m)! P_n^m
        const int ma = -m;
        if (ma > n) throw DomainError("assoc_legendre: |m| > n");
        double ratio = 1.0;
        for (int k = n - ma + 1; k <= n + ma; ++k) ratio *= k;
        const double sign = (ma % 2 == 0) ? 1.0 : -1.0;
        return sign / ratio * assoc_legendre(n, ma, x);
    }
    if (m > n) throw DomainError("assoc_legendre: m > n");
    if (m == 0) return legendre(n, x).p;

    // P_m^m = (-1)^m (2m-1)!! (1-x^2)^{m/2}, then upward in degree.
    const double sx2 = std::max(0.0, 1.0 - x * x);
    double pmm = 1.0;
    double fact = 1.0;
    const double s = std::sqrt(sx2);
    for (int k = 1; k <= m; ++k) {
        pmm *= -fact * s;
        fact += 2.0;
    }
    if (n == m) return pmm;
    double pmmp1 = x * (2.0 * m + 1.0) * pmm;
    if (n == m + 1) return pmmp1;
    double pnm = 0.0;
    for (int k = m + 2; k <= n; ++k) {
        pnm = (x * (2.0 * k - 1.0) * pmmp1 - (k + m - 1.0) * pmm) / (k - m);
        pmm = pmmp1;
        pmmp1 = pnm;
    }
    return pnm;
}

double sph_bessel_y(int n, double x) {
    if (x <= 0.0) throw DomainError("sph_bessel_y: x must be positive");
    double ym1 = -std::cos(x) / x; // y_0
    if (n == 0) return ym1;
    double y = -std::cos(x) / (x * x) - std::sin(x) / x; // y_1
    if (n == 1) return y;
    for (int k = 1; k < n; ++k) {
        const double ynext = (2.0 * k + 1.0) / x * y - ym1;
        ym1 = y;
        y = ynext;
    }
    return y;
}

double sph_bessel_j(int n, double x) {
    if (x <= 0.0) throw DomainError("sph_bessel_j: x must be positive");
    const double j0 = std::sin(x) / x;
    if (n == 0) return j0;
    if (x >= static_cast<double>(n) + 0.5) {
        // Upward recurrence is stable once x exceeds the degree.
        double jm1 = j0;
        double j = std::sin(x) / (x * x) - std::cos(x) / x;
        for (int k = 1; k < n; ++k) {
            const double jnext = (2.0 * k + 1.0) / x * j - jm1;
            jm1 = j;
            j = jnext;
        }
        return j;
    }
    // Miller's algorithm: downward recurrence from a padded start order,
    // normalized against j_0. Rescale on the fly to dodge overflow.
    const int nstart = n + 16 + static_cast<int>(std::ceil(std::sqrt(40.0 * (n + 1))));
    double jp1 = 0.0, j = 1e-300;
    double jn = 0.0;
    double scale = 1.0;
    for (int k = nstart; k >= 1; --k) {
        double jm1 = (2.0 * k + 1.0) / x * j - jp1;
        jp1 = j;
        j = jm1;
        if (k - 1 == n) jn = j;
        if (std::abs(j) > 1e250) {
            j *= 1e-250;
            jp1 *= 1e-250;
            jn *= 1e-250;
            scale *= 1e-250;
        }
    }
    (void)scale;
    if (j == 0.0) return 0.0;
    return jn * (j0 / j);
}

complexd sph_bessel(RadialKind kind, int n, double x) {
    if (x <= 0.0) throw DomainError("sph_bessel: x must be positive");
    if (n < 0) throw DomainError("sph_bessel: degree must be non-negative");
    const double j = sph_bessel_j(n, x);
    if (kind == RadialKind::bessel_j) return {j, 0.0};
    return {j, -sph_bessel_y(n, x)};
}

namespace {

// z_{n-1} for either kind, valid down to n = 0 via the closed forms
// j_{-1} = cos x / x and y_{-1} = sin x / x.
complexd radial_nm1(RadialKind kind, int n, double x) {
    if (n >= 1) return sph_bessel(kind, n - 1, x);
    const double jm1 = std::cos(x) / x;
    if (kind == RadialKind::bessel_j) return {jm1, 0.0};
    const double ym1 = std::sin(x) / x;
    return {jm1, -ym1};
}

} // namespace

complexd riccati_factor(RadialKind kind, int n, double x) {
    if (x <= 0.0) throw DomainError("riccati_factor: x must be positive");
    const complexd zn = sph_bessel(kind, n, x);
    return radial_nm1(kind, n, x) - (static_cast<double>(n) / x) * zn;
}

PlmTheta normalized_plm_theta(int n_max, int m, double theta) {
    if (m < 0) throw DomainError("normalized_plm_theta: m must be non-negative");
    if (n_max < m) throw DomainError("normalized_plm_theta: n_max < m");
    const double ct = std::cos(theta), st = std::sin(theta);
    PlmTheta out;
    out.pbar.assign(n_max + 1, 0.0);
    out.dpbar.assign(n_max + 1, 0.0);
    out.pbarsin.assign(n_max + 1, 0.0);

    // Seed: pbar_m^m = (-1)^m c_m sin^m(theta) with
    // c_m = sqrt((2m+1)/(4pi)) sqrt((2m-1)!!/(2m)!!).
    double cm = 1.0 / std::sqrt(4.0 * M_PI);
    for (int k = 1; k <= m; ++k)
        cm *= -std::sqrt((2.0 * k + 1.0) / (2.0 * k));
    double stm = 1.0, stm1 = 0.0; // sin^m, sin^{m-1}
    if (m >= 1) {
        stm1 = 1.0;
        for (int k = 1; k < m; ++k) stm1 *= st;
        stm = stm1 * st;
    }
    double p = cm * stm;                       // pbar_m^m
    double d = cm * m * stm1 * ct;             // its theta derivative
    double q = (m >= 1) ? cm * stm1 : 0.0;     // pbar / sin, pole-safe seed
    out.pbar[m] = p;
    out.dpbar[m] = d;
    out.pbarsin[m] = q;
    if (n_max == m) return out;

    // n = m+1 term: pbar_{m+1}^m = sqrt(2m+3) cos(theta) pbar_m^m.
    const double e = std::sqrt(2.0 * m + 3.0);
    double p1 = e * ct * p;
    double d1 = e * (ct * d - st * p);
    double q1 = e * ct * q;
    out.pbar[m + 1] = p1;
    out.dpbar[m + 1] = d1;
    out.pbarsin[m + 1] = q1;

    for (int n = m + 2; n <= n_max; ++n) {
        const double a = std::sqrt((4.0 * n * n - 1.0) / (static_cast<double>(n) * n - static_cast<double>(m) * m));
        const double bn = (n - 1.0) * (n - 1.0);
        const double b = std::sqrt((bn - static_cast<double>(m) * m) / (4.0 * bn - 1.0));
        const double p2 = a * (ct * p1 - b * p);
        const double d2 = a * (ct * d1 - st * p1 - b * d);
        const double q2 = a * (ct * q1 - b * q);
        p = p1; d = d1; q = q1;
        p1 = p2; d1 = d2; q1 = q2;
        out.pbar[n] = p1;
        out.dpbar[n] = d1;
        out.pbarsin[n] = q1;
    }
    return out;
}

complexd ynm(int n, int m, double theta, double phi) {
    if (std::abs(m) > n) throw DomainError("ynm: |m| > n");
    const int ma = std::abs(m);
    const PlmTheta plm = normalized_plm_theta(n, ma, theta);
    double pbar = plm.pbar[n];
    if (m < 0 && (ma % 2 != 0)) pbar = -pbar; // Y_n^{-m} = (-1)^m conj(Y_n^m)
    const double arg = m * phi;
    return pbar * complexd{std::cos(arg), std::sin(arg)};
}

QuadratureRule gauss_legendre(int n) {
    if (n < 1) throw DomainError("gauss_legendre: size must be >= 1");
    QuadratureRule rule;
    rule.nodes.assign(n, 0.0);
    rule.weights.assign(n, 0.0);
    const int half = (n + 1) / 2;
    for (int i = 0; i < half; ++i) {
        // Chebyshev-flavored first guess, then Newton on P_n.
        double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            const LegendreValue lv = legendre(n, x);
            dp = lv.dp;
            const double dx = lv.p / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        const LegendreValue lv = legendre(n, x);
        dp = lv.dp;
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        rule.nodes[n - 1 - i] = x;
        rule.weights[n - 1 - i] = w;
        rule.nodes[i] = -x;
        rule.weights[i] = w;
    }
    if (n % 2 == 1) rule.nodes[n / 2] = 0.0;
    return rule;
}

const QuadratureRule& cached_gauss(int n) {
    static std::map<int, QuadratureRule> cache;
    static std::mutex mtx;
    std::lock_guard<std::mutex> lock(mtx);
    auto it = cache.find(n);
    if (it == cache.end()) it = cache.emplace(n, gauss_legendre(n)).first;
    return it->second;
}

} // namespace tdmie
