// Compressed sparse rows with a symmetric pattern, plus Jacobi-preconditioned
// conjugate gradients.
#ifndef PLATEFEM_SPARSE_HPP
#define PLATEFEM_SPARSE_HPP

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <tuple>
#include <vector>

namespace platefem {

class SparseSymMatrix {
public:
    int n = 0;
    std::vector<int> row_ptr;  // size n+1
    std::vector<int> col;
    std::vector<double> val;

    static SparseSymMatrix from_triplets(int n, std::vector<std::tuple<int, int, double>> trip) {
        std::sort(trip.begin(), trip.end(), [](const auto& a, const auto& b) {
            return std::get<0>(a) != std::get<0>(b) ? std::get<0>(a) < std::get<0>(b)
                                                    : std::get<1>(a) < std::get<1>(b);
        });
        SparseSymMatrix m;
        m.n = n;
        m.row_ptr.assign(n + 1, 0);
        for (std::size_t k = 0; k < trip.size();) {
            const int i = std::get<0>(trip[k]);
            const int j = std::get<1>(trip[k]);
            double s = 0.0;
            while (k < trip.size() && std::get<0>(trip[k]) == i && std::get<1>(trip[k]) == j)
                s += std::get<2>(trip[k++]);
            m.col.push_back(j);
            m.val.push_back(s);
            m.row_ptr[i + 1] = int(m.col.size());
        }
        for (int i = 0; i < n; ++i) m.row_ptr[i + 1] = std::max(m.row_ptr[i + 1], m.row_ptr[i]);
        return m;
    }

    void matvec(const std::vector<double>& x, std::vector<double>& y) const {
        y.assign(n, 0.0);
        for (int i = 0; i < n; ++i) {
            double s = 0.0;
            for (int k = row_ptr[i]; k < row_ptr[i + 1]; ++k) s += val[k] * x[col[k]];
            y[i] = s;
        }
    }

    double coeff(int i, int j) const {
        for (int k = row_ptr[i]; k < row_ptr[i + 1]; ++k)
            if (col[k] == j) return val[k];
        return 0.0;
    }

    std::vector<double> diagonal() const {
        std::vector<double> d(n, 0.0);
        for (int i = 0; i < n; ++i)
            for (int k = row_ptr[i]; k < row_ptr[i + 1]; ++k)
                if (col[k] == i) d[i] = val[k];
        return d;
    }

    double max_abs() const {
        double m = 0.0;
        for (double v : val) m = std::max(m, std::abs(v));
        return m;
    }

    // max |A_ij - A_ji| over stored entries
    double asymmetry() const {
        double m = 0.0;
        for (int i = 0; i < n; ++i)
            for (int k = row_ptr[i]; k < row_ptr[i + 1]; ++k)
                m = std::max(m, std::abs(val[k] - coeff(col[k], i)));
        return m;
    }

    SparseSymMatrix plus(const SparseSymMatrix& o) const {
        std::vector<std::tuple<int, int, double>> trip;
        trip.reserve(val.size() + o.val.size());
        for (int i = 0; i < n; ++i)
            for (int k = row_ptr[i]; k < row_ptr[i + 1]; ++k)
                trip.emplace_back(i, col[k], val[k]);
        for (int i = 0; i < o.n; ++i)
            for (int k = o.row_ptr[i]; k < o.row_ptr[i + 1]; ++k)
                trip.emplace_back(i, o.col[k], o.val[k]);
        return from_triplets(n, std::move(trip));
    }
};

struct CgFailure : std::runtime_error {
    std::vector<double> best;
    double rel_residual;
    CgFailure(std::vector<double> x, double r)
        : std::runtime_error("cg: iteration cap exceeded"), best(std::move(x)), rel_residual(r) {}
};

struct CgResult {
    std::vector<double> x;
    int iterations = 0;
    double rel_residual = 0.0;
};

// Jacobi-preconditioned CG with relative-residual stopping; optional warm
// start. Throws CgFailure (carrying the best iterate) at the iteration cap.
inline CgResult solve_spd(const SparseSymMatrix& A, const std::vector<double>& b, double tol,
                          int max_iter, const std::vector<double>* x0 = nullptr) {
    const int n = A.n;
    CgResult res;
    res.x.assign(n, 0.0);
    double bnorm = 0.0;
    for (double v : b) bnorm += v * v;
    bnorm = std::sqrt(bnorm);
    if (bnorm == 0.0) return res;

    std::vector<double> d = A.diagonal();
    for (double& v : d) v = (v != 0.0) ? 1.0 / v : 1.0;

    std::vector<double> x = x0 ? *x0 : std::vector<double>(n, 0.0);
    std::vector<double> r(n), z(n), p(n), Ap(n);
    A.matvec(x, Ap);
    for (int i = 0; i < n; ++i) r[i] = b[i] - Ap[i];

    auto norm = [](const std::vector<double>& v) {
        double s = 0.0;
        for (double e : v) s += e * e;
        return std::sqrt(s);
    };

    double rz = 0.0;
    for (int i = 0; i < n; ++i) {
        z[i] = d[i] * r[i];
        rz += r[i] * z[i];
    }
    p = z;

    double best_res = norm(r) / bnorm;
    std::vector<double> best_x = x;
    int it = 0;
    for (; it < max_iter; ++it) {
        const double rn = norm(r) / bnorm;
        if (rn < best_res) {
            best_res = rn;
            best_x = x;
        }
        if (rn <= tol) {
            res.x = x;
            res.iterations = it;
            res.rel_residual = rn;
            return res;
        }
        A.matvec(p, Ap);
        double pAp = 0.0;
        for (int i = 0; i < n; ++i) pAp += p[i] * Ap[i];
        if (pAp <= 0.0) break; // loss of positive definiteness in floating point
        const double alpha = rz / pAp;
        for (int i = 0; i < n; ++i) {
            x[i] += alpha * p[i];
            r[i] -= alpha * Ap[i];
        }
        double rz_new = 0.0;
        for (int i = 0; i < n; ++i) {
            z[i] = d[i] * r[i];
            rz_new += r[i] * z[i];
        }
        const double beta = rz_new / rz;
        rz = rz_new;
        for (int i = 0; i < n; ++i) p[i] = z[i] + beta * p[i];
    }
    const double rn = norm(r) / bnorm;
    if (rn <= tol) {
        res.x = x;
        res.iterations = it;
        res.rel_residual = rn;
        return res;
    }
    if (rn < best_res) {
        best_res = rn;
        best_x = x;
    }
    throw CgFailure(std::move(best_x), best_res);
}

} // namespace platefem

#endif
