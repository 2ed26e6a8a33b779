// Minimal dense linear algebra for element-sized systems (<= 18x18).
#ifndef PLATEFEM_DENSE_HPP
#define PLATEFEM_DENSE_HPP

#include <cassert>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace platefem {

class DenseMatrix {
public:
    DenseMatrix() = default;
    DenseMatrix(int rows, int cols) : rows_(rows), cols_(cols), a_(std::size_t(rows) * cols, 0.0) {}

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    double& operator()(int i, int j) { return a_[std::size_t(i) * cols_ + j]; }
    double operator()(int i, int j) const { return a_[std::size_t(i) * cols_ + j]; }

    static DenseMatrix identity(int n) {
        DenseMatrix m(n, n);
        for (int i = 0; i < n; ++i) m(i, i) = 1.0;
        return m;
    }

    double max_abs_diff(const DenseMatrix& o) const {
        assert(rows_ == o.rows_ && cols_ == o.cols_);
        double m = 0.0;
        for (std::size_t k = 0; k < a_.size(); ++k) m = std::max(m, std::abs(a_[k] - o.a_[k]));
        return m;
    }

private:
    int rows_ = 0, cols_ = 0;
    std::vector<double> a_;
};

// Gaussian elimination with partial pivoting; throws on singular input.
inline std::vector<double> dense_solve(DenseMatrix A, std::vector<double> b) {
    const int n = A.rows();
    assert(A.cols() == n && int(b.size()) == n);
    for (int k = 0; k < n; ++k) {
        int piv = k;
        double pv = std::abs(A(k, k));
        for (int i = k + 1; i < n; ++i) {
            if (std::abs(A(i, k)) > pv) { piv = i; pv = std::abs(A(i, k)); }
        }
        if (pv == 0.0) throw std::runtime_error("dense_solve: singular matrix");
        if (piv != k) {
            for (int j = 0; j < n; ++j) std::swap(A(k, j), A(piv, j));
            std::swap(b[k], b[piv]);
        }
        for (int i = k + 1; i < n; ++i) {
            const double f = A(i, k) / A(k, k);
            if (f == 0.0) continue;
            for (int j = k; j < n; ++j) A(i, j) -= f * A(k, j);
            b[i] -= f * b[k];
        }
    }
    std::vector<double> x(n);
    for (int i = n - 1; i >= 0; --i) {
        double s = b[i];
        for (int j = i + 1; j < n; ++j) s -= A(i, j) * x[j];
        x[i] = s / A(i, i);
    }
    return x;
}

} // namespace platefem

#endif
