// A posteriori error indicators separating discretization and linearization
// error:
//   eta_D_K = h_K^2 ||f_h - Delta^2 u_{n+1} - lambda |u_n|^{2p} u_n||_{L2(K)}
//           + sum_{e in eps(K)} ||Delta u_{n+1}||_{L2(e)}
//           + 1/2 sum_{e in eps(K)} h_e^{3/2} ||[d(Delta u_{n+1})/dn]||_{L2(e)}
//   eta_L_K = lambda h_K^2 ||Delta(u_n - u_{n+1})||_{L2(K)}
// eps(K) are the macro-triangle sides not on the boundary; Delta^2 u_h = 0 on
// every HCT subtriangle interior, and f_h is the elementwise L2 projection of
// f onto P1. The edge term (ii) is offered in two variants: `paper` uses the
// two-sided average of Delta u_h with no h power, as written; `jump` uses the
// conventional h_e^{1/2} ||[Delta u_h]||_{L2(e)}.
#ifndef PLATEFEM_ESTIMATORS_HPP
#define PLATEFEM_ESTIMATORS_HPP

#include <cmath>
#include <functional>
#include <memory>
#include <vector>

#include "platefem/dense.hpp"
#include "platefem/field.hpp"
#include "platefem/norms.hpp"
#include "platefem/quadrature.hpp"

namespace platefem {

enum class EstimatorVariant { paper, jump };

struct Indicators {
    std::vector<double> eta_D, eta_L, eta_K, oscillation; // per macro triangle
    double eta_D_global = 0.0, eta_L_global = 0.0, eta_global = 0.0, osc_global = 0.0;
};

inline double root_sum_squares(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x * x;
    return std::sqrt(s);
}

namespace detail {

// P1 coefficients (1, x-xc, y-yc) of the elementwise L2 projection of f.
inline std::array<double, 3> p1_projection(const Mesh& m, int t,
                                           const std::function<double(Vec2)>& f) {
    const QuadRule& rule = triangle_rule(kNormQuadDegree);
    const Vec2 ctr = m.centroid(t);
    DenseMatrix G(3, 3);
    std::vector<double> rhs(3, 0.0);
    const auto subs = hct_split(m, t);
    for (int sub = 0; sub < 3; ++sub) {
        const double sub_area = signed_area(subs[sub][0], subs[sub][1], subs[sub][2]);
        for (std::size_t q = 0; q < rule.size(); ++q) {
            const Vec2 p = rule.map(subs[sub][0], subs[sub][1], subs[sub][2], q);
            const double w = rule.weights[q] * sub_area;
            const std::array<double, 3> b{1.0, p.x - ctr.x, p.y - ctr.y};
            for (int i = 0; i < 3; ++i) {
                for (int j = 0; j < 3; ++j) G(i, j) += w * b[i] * b[j];
                rhs[i] += w * b[i] * f(p);
            }
        }
    }
    const auto c = dense_solve(G, rhs);
    return {c[0], c[1], c[2]};
}

} // namespace detail

// Per-element data oscillation h_K^2 ||f - f_h||_{L2(K)}.
inline double data_oscillation(const Mesh& m, const std::function<double(Vec2)>& f, int t) {
    const auto c = detail::p1_projection(m, t, f);
    const Vec2 ctr = m.centroid(t);
    const QuadRule& rule = triangle_rule(kNormQuadDegree);
    double s = 0.0;
    const auto subs = hct_split(m, t);
    for (int sub = 0; sub < 3; ++sub) {
        const double sub_area = signed_area(subs[sub][0], subs[sub][1], subs[sub][2]);
        for (std::size_t q = 0; q < rule.size(); ++q) {
            const Vec2 p = rule.map(subs[sub][0], subs[sub][1], subs[sub][2], q);
            const double d = f(p) - (c[0] + c[1] * (p.x - ctr.x) + c[2] * (p.y - ctr.y));
            s += rule.weights[q] * sub_area * d * d;
        }
    }
    const double h = geometry(m, t).h_K;
    return h * h * std::sqrt(s);
}

inline Indicators compute_indicators(const DofMap& dm, const Field& u_next, const Field& u_prev,
                                     const std::function<double(Vec2)>& f, double lambda,
                                     double p, EstimatorVariant variant = EstimatorVariant::paper) {
    const Mesh& m = dm.mesh();
    const int nt = m.num_triangles();
    Indicators out;
    out.eta_D.assign(nt, 0.0);
    out.eta_L.assign(nt, 0.0);
    out.eta_K.assign(nt, 0.0);
    out.oscillation.assign(nt, 0.0);

    std::vector<ElementField> un, up;
    un.reserve(nt);
    up.reserve(nt);
    for (int t = 0; t < nt; ++t) {
        un.emplace_back(dm, u_next, t);
        up.emplace_back(dm, u_prev, t);
    }

    const QuadRule& rule = triangle_rule(kNormQuadDegree);
    std::vector<double> hK(nt);
    for (int t = 0; t < nt; ++t) hK[t] = geometry(m, t).h_K;

    // element residual, linearization term and oscillation
    std::vector<double> elem_term(nt, 0.0);
    for (int t = 0; t < nt; ++t) {
        const auto c = detail::p1_projection(m, t, f);
        const Vec2 ctr = m.centroid(t);
        double resid2 = 0.0, osc2 = 0.0, lin2 = 0.0;
        const auto subs = hct_split(m, t);
        for (int sub = 0; sub < 3; ++sub) {
            const double sub_area = signed_area(subs[sub][0], subs[sub][1], subs[sub][2]);
            for (std::size_t q = 0; q < rule.size(); ++q) {
                const Vec2 pt = rule.map(subs[sub][0], subs[sub][1], subs[sub][2], q);
                const auto l = un[t].element().barycentric(pt);
                const double w = rule.weights[q] * sub_area;
                const double fh = c[0] + c[1] * (pt.x - ctr.x) + c[2] * (pt.y - ctr.y);
                const double upv = up[t].value(l, sub);
                const double r = fh - lambda * std::pow(std::abs(upv), 2.0 * p) * upv;
                resid2 += w * r * r;
                const double df = f(pt) - fh;
                osc2 += w * df * df;
                const double dl = up[t].laplacian(l, sub) - un[t].laplacian(l, sub);
                lin2 += w * dl * dl;
            }
        }
        elem_term[t] = hK[t] * hK[t] * std::sqrt(resid2);
        out.oscillation[t] = hK[t] * hK[t] * std::sqrt(osc2);
        out.eta_L[t] = lambda * hK[t] * hK[t] * std::sqrt(lin2);
    }

    // interior-edge terms
    std::vector<double> edge_term2(nt, 0.0), edge_term3(nt, 0.0);
    const EdgeRule& erule = edge_rule(kNormQuadDegree);
    for (int e = 0; e < m.num_edges(); ++e) {
        const MeshEdge& ed = m.edges[e];
        if (ed.boundary) continue;
        const int tA = ed.tris[0], tB = ed.tris[1];
        const Vec2 P = m.vertices[ed.v0], Q = m.vertices[ed.v1];
        const double he = (Q - P).norm();
        const Vec2 nrm = (Q - P).perp() / he;
        double avg2 = 0.0, jmp2 = 0.0, jn2 = 0.0;
        for (std::size_t q = 0; q < erule.size(); ++q) {
            const Vec2 pt = P + (Q - P) * erule.points[q];
            const double w = erule.weights[q] * he;
            const auto lA = un[tA].element().barycentric(pt);
            const auto lB = un[tB].element().barycentric(pt);
            const int sA = hct_subtriangle(lA), sB = hct_subtriangle(lB);
            const double lapA = un[tA].laplacian(lA, sA);
            const double lapB = un[tB].laplacian(lB, sB);
            avg2 += w * 0.25 * (lapA + lapB) * (lapA + lapB);
            jmp2 += w * (lapA - lapB) * (lapA - lapB);
            const double gn = (un[tA].lap_grad(sA) - un[tB].lap_grad(sB)).dot(nrm);
            jn2 += w * gn * gn;
        }
        const double term2 = variant == EstimatorVariant::paper
                                 ? std::sqrt(avg2)
                                 : std::sqrt(he) * std::sqrt(jmp2);
        const double term3 = 0.5 * std::pow(he, 1.5) * std::sqrt(jn2);
        for (int t : {tA, tB}) {
            edge_term2[t] += term2;
            edge_term3[t] += term3;
        }
    }

    for (int t = 0; t < nt; ++t) {
        out.eta_D[t] = elem_term[t] + edge_term2[t] + edge_term3[t];
        out.eta_K[t] = std::sqrt(out.eta_D[t] * out.eta_D[t] + out.eta_L[t] * out.eta_L[t]);
    }
    out.eta_D_global = root_sum_squares(out.eta_D);
    out.eta_L_global = root_sum_squares(out.eta_L);
    out.eta_global = std::sqrt(out.eta_D_global * out.eta_D_global +
                               out.eta_L_global * out.eta_L_global);
    out.osc_global = root_sum_squares(out.oscillation);
    return out;
}

// Single-element entry points.
inline double eta_D(const DofMap& dm, const Field& u_next, const Field& u_prev,
                    const std::function<double(Vec2)>& f, double lambda, double p,
                    int t, EstimatorVariant variant = EstimatorVariant::paper) {
    return compute_indicators(dm, u_next, u_prev, f, lambda, p, variant).eta_D[t];
}

inline double eta_L(const DofMap& dm, const Field& u_next, const Field& u_prev,
                    double lambda, int t) {
    const Mesh& m = dm.mesh();
    const QuadRule& rule = triangle_rule(kNormQuadDegree);
    const ElementField un(dm, u_next, t), up(dm, u_prev, t);
    double lin2 = 0.0;
    const auto subs = hct_split(m, t);
    for (int sub = 0; sub < 3; ++sub) {
        const double sub_area = signed_area(subs[sub][0], subs[sub][1], subs[sub][2]);
        for (std::size_t q = 0; q < rule.size(); ++q) {
            const Vec2 pt = rule.map(subs[sub][0], subs[sub][1], subs[sub][2], q);
            const auto l = un.element().barycentric(pt);
            const double d = up.laplacian(l, sub) - un.laplacian(l, sub);
            lin2 += rule.weights[q] * sub_area * d * d;
        }
    }
    const double h = geometry(m, t).h_K;
    return lambda * h * h * std::sqrt(lin2);
}

struct GlobalEta {
    double eta_D, eta_L, eta;
};

inline GlobalEta aggregate(const std::vector<double>& etaD, const std::vector<double>& etaL) {
    GlobalEta g{root_sum_squares(etaD), root_sum_squares(etaL), 0.0};
    g.eta = std::sqrt(g.eta_D * g.eta_D + g.eta_L * g.eta_L);
    return g;
}

inline double effectivity(double err_H2, const Indicators& ind) {
    if (err_H2 <= 0.0) throw std::invalid_argument("effectivity: err_H2 must be positive");
    return ind.eta_global / err_H2;
}

} // namespace platefem

#endif
