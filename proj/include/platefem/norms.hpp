// Error norms and the energy functional. The H2 seminorm is realized as
// ||Delta(.)||_L2, the equivalent norm used throughout for H^2_0 fields.
#ifndef PLATEFEM_NORMS_HPP
#define PLATEFEM_NORMS_HPP

#include <cmath>
#include <functional>

#include "platefem/cases.hpp"
#include "platefem/field.hpp"
#include "platefem/quadrature.hpp"

namespace platefem {

constexpr int kNormQuadDegree = 8;

// (err_L2, err_H2) of field against the exact case.
inline std::pair<double, double> error_norms(const DofMap& dm, const Field& f,
                                             const ManufacturedCase& exact) {
    const Mesh& m = dm.mesh();
    const QuadRule& rule = triangle_rule(kNormQuadDegree);
    double l2 = 0.0, h2 = 0.0;
    for (int t = 0; t < m.num_triangles(); ++t) {
        const ElementField u(dm, f, t);
        const auto subs = hct_split(m, t);
        for (int sub = 0; sub < 3; ++sub) {
            const double sub_area = signed_area(subs[sub][0], subs[sub][1], subs[sub][2]);
            for (std::size_t q = 0; q < rule.size(); ++q) {
                const Vec2 p = rule.map(subs[sub][0], subs[sub][1], subs[sub][2], q);
                const auto l = u.element().barycentric(p);
                const double w = rule.weights[q] * sub_area;
                const double dv = exact.value(p) - u.value(l, sub);
                const double dl = exact.laplacian(p) - u.laplacian(l, sub);
                l2 += w * dv * dv;
                h2 += w * dl * dl;
            }
        }
    }
    return {std::sqrt(l2), std::sqrt(h2)};
}

// ||Delta(f1 - f2)||_{L2(Omega)}; fields on the same dof map.
inline double h2_seminorm_diff(const DofMap& dm, const Field& f1, const Field& f2) {
    const Mesh& m = dm.mesh();
    const QuadRule& rule = triangle_rule(kNormQuadDegree);
    double s = 0.0;
    for (int t = 0; t < m.num_triangles(); ++t) {
        const ElementField u1(dm, f1, t), u2(dm, f2, t);
        const auto subs = hct_split(m, t);
        for (int sub = 0; sub < 3; ++sub) {
            const double sub_area = signed_area(subs[sub][0], subs[sub][1], subs[sub][2]);
            for (std::size_t q = 0; q < rule.size(); ++q) {
                const Vec2 p = rule.map(subs[sub][0], subs[sub][1], subs[sub][2], q);
                const auto l = u1.element().barycentric(p);
                const double d = u1.laplacian(l, sub) - u2.laplacian(l, sub);
                s += rule.weights[q] * sub_area * d * d;
            }
        }
    }
    return std::sqrt(s);
}

inline double h2_seminorm(const DofMap& dm, const Field& f) {
    Field zero;
    zero.kind = f.kind;
    zero.coef.assign(f.coef.size(), 0.0);
    return h2_seminorm_diff(dm, f, zero);
}

// J(u) = 1/2 int |Delta u|^2 + lambda/(2p+2) int |u|^{2p} u^2 - <f, u>.
inline double energy(const DofMap& dm, const Field& f, double lambda, double p,
                     const std::function<double(Vec2)>& forcing) {
    const Mesh& m = dm.mesh();
    const QuadRule& rule = triangle_rule(kNormQuadDegree);
    double bend = 0.0, nl = 0.0, work = 0.0;
    for (int t = 0; t < m.num_triangles(); ++t) {
        const ElementField u(dm, f, t);
        const auto subs = hct_split(m, t);
        for (int sub = 0; sub < 3; ++sub) {
            const double sub_area = signed_area(subs[sub][0], subs[sub][1], subs[sub][2]);
            for (std::size_t q = 0; q < rule.size(); ++q) {
                const Vec2 pt = rule.map(subs[sub][0], subs[sub][1], subs[sub][2], q);
                const auto l = u.element().barycentric(pt);
                const double w = rule.weights[q] * sub_area;
                const double uv = u.value(l, sub);
                const double ul = u.laplacian(l, sub);
                bend += w * ul * ul;
                nl += w * std::pow(std::abs(uv), 2.0 * p) * uv * uv;
                work += w * forcing(pt) * uv;
            }
        }
    }
    return 0.5 * bend + lambda / (2.0 * p + 2.0) * nl - work;
}

} // namespace platefem

#endif
