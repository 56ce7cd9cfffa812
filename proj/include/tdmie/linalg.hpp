#ifndef TDMIE_LINALG_HPP
#define TDMIE_LINALG_HPP

#include <complex>
#include <stdexcept>
#include <vector>

// Minimal dense real linear algebra: row-major matrices, LU solves for the
// marching blocks, and a general (non-symmetric) eigenvalue solver via
// balancing + Householder Hessenberg reduction + Francis double-shift QR.

namespace tdmie {

struct NumericalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

class Mat {
public:
    Mat() = default;
    Mat(int rows, int cols, double value = 0.0)
        : rows_(rows), cols_(cols), data_(static_cast<std::size_t>(rows) * cols, value) {}

    static Mat identity(int n) {
        Mat m(n, n);
        for (int i = 0; i < n; ++i) m(i, i) = 1.0;
        return m;
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    double& operator()(int i, int j) { return data_[static_cast<std::size_t>(i) * cols_ + j]; }
    double operator()(int i, int j) const { return data_[static_cast<std::size_t>(i) * cols_ + j]; }

    const std::vector<double>& data() const { return data_; }

    Mat& operator+=(const Mat& o);
    Mat& operator-=(const Mat& o);
    Mat& operator*=(double s);
    friend Mat operator*(const Mat& a, const Mat& b);

    double max_abs() const;

private:
    int rows_ = 0;
    int cols_ = 0;
    std::vector<double> data_;
};

// LU factorization with partial pivoting, reusable across many solves.
class LuFactor {
public:
    explicit LuFactor(const Mat& a); // throws NumericalError if singular
    std::vector<double> solve(const std::vector<double>& b) const;
    std::vector<std::complex<double>> solve(const std::vector<std::complex<double>>& b) const;
    Mat solve(const Mat& b) const; // column-wise
    int size() const { return n_; }

private:
    int n_ = 0;
    Mat lu_;
    std::vector<int> piv_;
};

// All eigenvalues of a general real matrix. `iterations_cap` bounds the QR
// sweeps per eigenvalue; failure to deflate raises NumericalError naming the
// stuck eigenvalue index.
std::vector<std::complex<double>> eigenvalues_dense(Mat a, int iterations_cap = 60);

} // namespace tdmie

#endif
