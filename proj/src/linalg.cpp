#include "tdmie/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace tdmie {

Mat& Mat::operator+=(const Mat& o) {
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
    return *this;
}

Mat& Mat::operator-=(const Mat& o) {
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
    return *this;
}

Mat& Mat::operator*=(double s) {
    for (double& v : data_) v *= s;
    return *this;
}

Mat operator*(const Mat& a, const Mat& b) {
    Mat c(a.rows_, b.cols_);
    for (int i = 0; i < a.rows_; ++i)
        for (int k = 0; k < a.cols_; ++k) {
            const double aik = a(i, k);
            if (aik == 0.0) continue;
            for (int j = 0; j < b.cols_; ++j) c(i, j) += aik * b(k, j);
        }
    return c;
}

double Mat::max_abs() const {
    double m = 0.0;
    for (double v : data_) m = std::max(m, std::abs(v));
    return m;
}

LuFactor::LuFactor(const Mat& a) : n_(a.rows()), lu_(a), piv_(a.rows()) {
    if (a.rows() != a.cols()) throw NumericalError("LuFactor: matrix not square");
    for (int i = 0; i < n_; ++i) piv_[i] = i;
    for (int k = 0; k < n_; ++k) {
        int p = k;
        double best = std::abs(lu_(k, k));
        for (int i = k + 1; i < n_; ++i) {
            const double v = std::abs(lu_(i, k));
            if (v > best) { best = v; p = i; }
        }
        if (best == 0.0) throw NumericalError("LuFactor: singular matrix");
        if (p != k) {
            for (int j = 0; j < n_; ++j) std::swap(lu_(k, j), lu_(p, j));
            std::swap(piv_[k], piv_[p]);
        }
        const double pivot = lu_(k, k);
        for (int i = k + 1; i < n_; ++i) {
            const double m = lu_(i, k) / pivot;
            lu_(i, k) = m;
            if (m == 0.0) continue;
            for (int j = k + 1; j < n_; ++j) lu_(i, j) -= m * lu_(k, j);
        }
    }
}

std::vector<double> LuFactor::solve(const std::vector<double>& b) const {
    std::vector<double> x(n_);
    for (int i = 0; i < n_; ++i) x[i] = b[piv_[i]];
    for (int i = 1; i < n_; ++i) {
        double s = x[i];
        for (int j = 0; j < i; ++j) s -= lu_(i, j) * x[j];
        x[i] = s;
    }
    for (int i = n_ - 1; i >= 0; --i) {
        double s = x[i];
        for (int j = i + 1; j < n_; ++j) s -= lu_(i, j) * x[j];
        x[i] = s / lu_(i, i);
    }
    return x;
}

std::vector<std::complex<double>> LuFactor::solve(const std::vector<std::complex<double>>& b) const {
    std::vector<double> re(n_), im(n_);
    for (int i = 0; i < n_; ++i) { re[i] = b[i].real(); im[i] = b[i].imag(); }
    const std::vector<double> xr = solve(re), xi = solve(im);
    std::vector<std::complex<double>> x(n_);
    for (int i = 0; i < n_; ++i) x[i] = {xr[i], xi[i]};
    return x;
}

Mat LuFactor::solve(const Mat& b) const {
    Mat x(n_, b.cols());
    std::vector<double> col(n_);
    for (int j = 0; j < b.cols(); ++j) {
        for (int i = 0; i < n_; ++i) col[i] = b(i, j);
        const std::vector<double> sol = solve(col);
        for (int i = 0; i < n_; ++i) x(i, j) = sol[i];
    }
    return x;
}

namespace {

// Parlett-Reinsch balancing: scale rows/columns by powers of 2 until row and
// column norms agree, preserving eigenvalues.
void balance(Mat& a) {
    const int n = a.rows();
    const double radix = 2.0;
    bool done = false;
    while (!done) {
        done = true;
        for (int i = 0; i < n; ++i) {
            double r = 0.0, c = 0.0;
            for (int j = 0; j < n; ++j) {
                if (j == i) continue;
                c += std::abs(a(j, i));
                r += std::abs(a(i, j));
            }
            if (c == 0.0 || r == 0.0) continue;
            double g = r / radix, f = 1.0, s = c + r;
            while (c < g) { f *= radix; c *= radix * radix; }
            g = r * radix;
            while (c > g) { f /= radix; c /= radix * radix; }
            if ((c + r) / f < 0.95 * s) {
                done = false;
                const double ginv = 1.0 / f;
                for (int j = 0; j < n; ++j) a(i, j) *= ginv;
                for (int j = 0; j < n; ++j) a(j, i) *= f;
            }
        }
    }
}

// Householder reduction to upper Hessenberg form (similarity transform,
// eigenvalues preserved; transforms not accumulated).
void hessenberg(Mat& a) {
    const int n = a.rows();
    std::vector<double> v(n);
    for (int k = 0; k < n - 2; ++k) {
        double scale = 0.0;
        for (int i = k + 1; i < n; ++i) scale += std::abs(a(i, k));
        if (scale == 0.0) continue;
        double h = 0.0;
        for (int i = k + 1; i < n; ++i) {
            v[i] = a(i, k) / scale;
            h += v[i] * v[i];
        }
        double g = std::sqrt(h);
        if (v[k + 1] > 0.0) g = -g;
        h -= v[k + 1] * g;
        v[k + 1] -= g;
        if (h == 0.0) continue;
        // A <- (I - v v^T / h) A (I - v v^T / h)
        for (int j = 0; j < n; ++j) {
            double s = 0.0;
            for (int i = k + 1; i < n; ++i) s += v[i] * a(i, j);
            s /= h;
            for (int i = k + 1; i < n; ++i) a(i, j) -= s * v[i];
        }
        for (int i = 0; i < n; ++i) {
            double s = 0.0;
            for (int j = k + 1; j < n; ++j) s += a(i, j) * v[j];
            s /= h;
            for (int j = k + 1; j < n; ++j) a(i, j) -= s * v[j];
        }
        a(k + 1, k) = scale * g;
        for (int i = k + 2; i < n; ++i) a(i, k) = 0.0;
    }
}

} // namespace

std::vector<std::complex<double>> eigenvalues_dense(Mat a, int iterations_cap) {
    if (a.rows() != a.cols()) throw NumericalError("eigenvalues_dense: matrix not square");
    const int n = a.rows();
    std::vector<std::complex<double>> eig;
    eig.reserve(n);
    if (n == 0) return eig;

    balance(a);
    hessenberg(a);

    // Francis double-shift QR on the Hessenberg matrix (EISPACK hqr scheme).
    double anorm = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = std::max(i - 1, 0); j < n; ++j) anorm += std::abs(a(i, j));

    int nn = n - 1;
    double t = 0.0;
    while (nn >= 0) {
        int its = 0;
        int l;
        for (;;) {
            for (l = nn; l >= 1; --l) {
                const double s = std::abs(a(l - 1, l - 1)) + std::abs(a(l, l));
                const double cmp = (s == 0.0) ? anorm : s;
                if (std::abs(a(l, l - 1)) <= 1e-300 + 2.3e-16 * cmp) {
                    a(l, l - 1) = 0.0;
                    break;
                }
            }
            double x = a(nn, nn);
            if (l == nn) { // one real eigenvalue deflated
                eig.emplace_back(x + t, 0.0);
                nn--;
                break;
            }
            double y = a(nn - 1, nn - 1);
            double w = a(nn, nn - 1) * a(nn - 1, nn);
            if (l == nn - 1) { // 2x2 block deflated
                const double p = 0.5 * (y - x);
                const double q = p * p + w;
                const double z = std::sqrt(std::abs(q));
                x += t;
                if (q >= 0.0) {
                    const double zz = p + (p >= 0.0 ? z : -z);
                    eig.emplace_back(x + zz, 0.0);
                    eig.emplace_back(zz != 0.0 ? x - w / zz : x + zz, 0.0);
                } else {
                    eig.emplace_back(x + p, z);
                    eig.emplace_back(x + p, -z);
                }
                nn -= 2;
                break;
            }
            if (its == iterations_cap)
                throw NumericalError("eigenvalues_dense: QR failed to converge at eigenvalue index " +
                                     std::to_string(nn));
            if (its == 10 || its == 20 || its == 30) {
                // exceptional shift
                t += x;
                for (int i = 0; i <= nn; ++i) a(i, i) -= x;
                const double s = std::abs(a(nn, nn - 1)) + std::abs(a(nn - 1, nn - 2));
                y = 0.75 * s;
                x = y;
                w = -0.4375 * s * s;
            }
            ++its;
            int m;
            double p = 0.0, q = 0.0, z = 0.0, r = 0.0, s = 0.0;
            for (m = nn - 2; m >= l; --m) {
                z = a(m, m);
                r = x - z;
                s = y - z;
                p = (r * s - w) / a(m + 1, m) + a(m, m + 1);
                q = a(m + 1, m + 1) - z - r - s;
                r = a(m + 2, m + 1);
                s = std::abs(p) + std::abs(q) + std::abs(r);
                p /= s; q /= s; r /= s;
                if (m == l) break;
                const double u = std::abs(a(m, m - 1)) * (std::abs(q) + std::abs(r));
                const double v = std::abs(p) * (std::abs(a(m - 1, m - 1)) + std::abs(z) + std::abs(a(m + 1, m + 1)));
                if (u <= 2.3e-16 * v) break;
            }
            for (int i = m + 2; i <= nn; ++i) {
                a(i, i - 2) = 0.0;
                if (i != m + 2) a(i, i - 3) = 0.0;
            }
            for (int k = m; k <= nn - 1; ++k) {
                if (k != m) {
                    p = a(k, k - 1);
                    q = a(k + 1, k - 1);
                    r = (k != nn - 1) ? a(k + 2, k - 1) : 0.0;
                    x = std::abs(p) + std::abs(q) + std::abs(r);
                    if (x != 0.0) { p /= x; q /= x; r /= x; }
                }
                s = std::sqrt(p * p + q * q + r * r);
                if (p < 0.0) s = -s;
                if (s == 0.0) continue;
                if (k == m) {
                    if (l != m) a(k, k - 1) = -a(k, k - 1);
                } else {
                    a(k, k - 1) = -s * x;
                }
                p += s;
                x = p / s;
                y = q / s;
                z = r / s;
                q /= p;
                r /= p;
                for (int j = k; j <= nn; ++j) { // row transform
                    p = a(k, j) + q * a(k + 1, j);
                    if (k != nn - 1) {
                        p += r * a(k + 2, j);
                        a(k + 2, j) -= p * z;
                    }
                    a(k + 1, j) -= p * y;
                    a(k, j) -= p * x;
                }
                const int mmin = (nn < k + 3) ? nn : k + 3;
                for (int i = l; i <= mmin; ++i) { // column transform
                    p = x * a(i, k) + y * a(i, k + 1);
                    if (k != nn - 1) {
                        p += z * a(i, k + 2);
                        a(i, k + 2) -= p * r;
                    }
                    a(i, k + 1) -= p * q;
                    a(i, k) -= p;
                }
            }
        }
    }
    return eig;
}

} // namespace tdmie
