// Assembly of the linearized plate operator: stiffness (Delta u, Delta v),
// frozen-coefficient weighted mass lambda (|w|^{2p} u, v), load vector, and
// clamped boundary conditions. All element integrals run per HCT subtriangle
// since the basis is only piecewise cubic.
#ifndef PLATEFEM_ASSEMBLY_HPP
#define PLATEFEM_ASSEMBLY_HPP

#include <cmath>
#include <functional>
#include <stdexcept>
#include <vector>

#include "platefem/dofmap.hpp"
#include "platefem/field.hpp"
#include "platefem/quadrature.hpp"
#include "platefem/sparse.hpp"

namespace platefem {

constexpr int kStiffnessQuadDegree = 4;
constexpr int kMassQuadDegree = 8;

namespace detail {

// K_global = T^t K_local T scattered to the element's dof slots.
template <typename LocalKernel>
inline void scatter_element(const DofMap& dm, int t,
                            std::vector<std::tuple<int, int, double>>& trip,
                            LocalKernel&& local_matrix) {
    const int n = dm.dofs_per_element();
    const DenseMatrix Kl = local_matrix();
    const DenseMatrix T = dm.element_transform(t);
    DenseMatrix Kg(n, n);
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) {
            double s = 0.0;
            for (int i = 0; i < n; ++i) {
                if (T(i, r) == 0.0) continue;
                for (int j = 0; j < n; ++j) s += T(i, r) * Kl(i, j) * T(j, c);
            }
            Kg(r, c) = s;
        }
    const auto slots = dm.element_dofs(t);
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c)
            if (Kg(r, c) != 0.0) trip.emplace_back(slots[r], slots[c], Kg(r, c));
}

} // namespace detail

inline SparseSymMatrix assemble_stiffness(const DofMap& dm) {
    const Mesh& m = dm.mesh();
    const QuadRule& rule = triangle_rule(kStiffnessQuadDegree);
    std::vector<std::tuple<int, int, double>> trip;
    for (int t = 0; t < m.num_triangles(); ++t) {
        detail::scatter_element(dm, t, trip, [&] {
            const HctElement elem(m, t, dm.kind());
            const int n = elem.ndof();
            DenseMatrix Kl(n, n);
            const auto subs = hct_split(m, t);
            for (int sub = 0; sub < 3; ++sub) {
                const double sub_area = signed_area(subs[sub][0], subs[sub][1], subs[sub][2]);
                for (std::size_t q = 0; q < rule.size(); ++q) {
                    const Vec2 p = rule.map(subs[sub][0], subs[sub][1], subs[sub][2], q);
                    const auto l = elem.barycentric(p);
                    const double w = rule.weights[q] * sub_area;
                    std::array<double, 12> lap;
                    for (int j = 0; j < n; ++j) lap[j] = elem.laplacian(l, sub, j);
                    for (int i = 0; i < n; ++i)
                        for (int j = 0; j < n; ++j) Kl(i, j) += w * lap[i] * lap[j];
                }
            }
            return Kl;
        });
    }
    return SparseSymMatrix::from_triplets(dm.size(), std::move(trip));
}

inline SparseSymMatrix assemble_weighted_mass(const DofMap& dm, const Field& w_field,
                                              double lambda, double p) {
    if (lambda <= 0.0 || p <= 0.0)
        throw std::invalid_argument("assemble_weighted_mass: lambda and p must be positive");
    const Mesh& m = dm.mesh();
    const QuadRule& rule = triangle_rule(kMassQuadDegree);
    std::vector<std::tuple<int, int, double>> trip;
    for (int t = 0; t < m.num_triangles(); ++t) {
        detail::scatter_element(dm, t, trip, [&] {
            const ElementField w(dm, w_field, t);
            const HctElement& elem = w.element();
            const int n = elem.ndof();
            DenseMatrix Kl(n, n);
            const auto subs = hct_split(m, t);
            for (int sub = 0; sub < 3; ++sub) {
                const double sub_area = signed_area(subs[sub][0], subs[sub][1], subs[sub][2]);
                for (std::size_t q = 0; q < rule.size(); ++q) {
                    const Vec2 pt = rule.map(subs[sub][0], subs[sub][1], subs[sub][2], q);
                    const auto l = elem.barycentric(pt);
                    const double wv = std::pow(std::abs(w.value(l, sub)), 2.0 * p);
                    const double c = rule.weights[q] * sub_area * lambda * wv;
                    if (c == 0.0) continue;
                    std::array<double, 12> phi;
                    for (int j = 0; j < n; ++j) phi[j] = elem.value(l, sub, j);
                    for (int i = 0; i < n; ++i)
                        for (int j = 0; j < n; ++j) Kl(i, j) += c * phi[i] * phi[j];
                }
            }
            return Kl;
        });
    }
    return SparseSymMatrix::from_triplets(dm.size(), std::move(trip));
}

inline std::vector<double> assemble_load(const DofMap& dm,
                                         const std::function<double(Vec2)>& f) {
    const Mesh& m = dm.mesh();
    const QuadRule& rule = triangle_rule(kMassQuadDegree);
    std::vector<double> b(dm.size(), 0.0);
    const int n = dm.dofs_per_element();
    for (int t = 0; t < m.num_triangles(); ++t) {
        const HctElement elem(m, t, dm.kind());
        std::vector<double> bl(n, 0.0);
        const auto subs = hct_split(m, t);
        for (int sub = 0; sub < 3; ++sub) {
            const double sub_area = signed_area(subs[sub][0], subs[sub][1], subs[sub][2]);
            for (std::size_t q = 0; q < rule.size(); ++q) {
                const Vec2 pt = rule.map(subs[sub][0], subs[sub][1], subs[sub][2], q);
                const auto l = elem.barycentric(pt);
                const double c = rule.weights[q] * sub_area * f(pt);
                for (int j = 0; j < n; ++j) bl[j] += c * elem.value(l, sub, j);
            }
        }
        const DenseMatrix T = dm.element_transform(t);
        const auto slots = dm.element_dofs(t);
        for (int c = 0; c < n; ++c) {
            double s = 0.0;
            for (int i = 0; i < n; ++i) s += T(i, c) * bl[i];
            b[slots[c]] += s;
        }
    }
    return b;
}

// Symmetric elimination: constrained rows/cols zeroed, unit diagonal, zero
// rhs (homogeneous clamped data).
inline std::vector<int> apply_clamped_bc(SparseSymMatrix& A, std::vector<double>& rhs,
                                         const DofMap& dm) {
    const auto constrained = dm.clamped_dofs();
    std::vector<char> is_c(A.n, 0);
    for (int d : constrained) is_c[d] = 1;
    for (int i = 0; i < A.n; ++i) {
        const bool ci = is_c[i];
        for (int k = A.row_ptr[i]; k < A.row_ptr[i + 1]; ++k) {
            const int j = A.col[k];
            if (ci || is_c[j]) A.val[k] = (i == j) ? 1.0 : 0.0;
        }
        if (ci) rhs[i] = 0.0;
    }
    return constrained;
}

} // namespace platefem

#endif
