// Quadrature rules on triangles (barycentric points, weights summing to 1,
// scaled by element measure at the call site) and Gauss-Legendre edge rules.
//
// Stocked triangle rules: the classical symmetric rules for degrees 1, 2 and 5
// and collapsed Gauss-Legendre product rules (Duffy map) for the other
// degrees. All stocked rules have strictly positive weights and are validated
// by the exactness sweep in the test suite.
#ifndef PLATEFEM_QUADRATURE_HPP
#define PLATEFEM_QUADRATURE_HPP

#include <array>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "platefem/geometry.hpp"

namespace platefem {

struct QuadRule {
    std::vector<std::array<double, 3>> points; // barycentric triples
    std::vector<double> weights;               // sum to 1
    int degree = 0;

    std::size_t size() const { return points.size(); }
    Vec2 map(const Vec2& a, const Vec2& b, const Vec2& c, std::size_t q) const {
        const auto& l = points[q];
        return a * l[0] + b * l[1] + c * l[2];
    }
};

struct EdgeRule {
    std::vector<double> points;  // parameters in [0,1]
    std::vector<double> weights; // sum to 1
    int degree = 0;

    std::size_t size() const { return points.size(); }
};

// Gauss-Legendre nodes/weights on [0,1], exact through degree 2n-1.
inline void gauss_legendre_01(int n, std::vector<double>& x, std::vector<double>& w) {
    x.assign(n, 0.0);
    w.assign(n, 0.0);
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double z = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = 0.0;
            for (int j = 0; j < n; ++j) {
                const double p2 = p1;
                p1 = p0;
                p0 = ((2.0 * j + 1.0) * z * p1 - j * p2) / (j + 1.0);
            }
            pp = n * (z * p0 - p1) / (z * z - 1.0);
            const double dz = p0 / pp;
            z -= dz;
            if (std::abs(dz) < 1e-15) break;
        }
        x[i] = 0.5 * (1.0 - z);
        x[n - 1 - i] = 0.5 * (1.0 + z);
        const double wi = 1.0 / ((1.0 - z * z) * pp * pp);
        w[i] = wi;
        w[n - 1 - i] = wi;
    }
}

namespace detail {

inline QuadRule centroid_rule() {
    QuadRule r;
    r.degree = 1;
    r.points = {{1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0}};
    r.weights = {1.0};
    return r;
}

inline QuadRule three_point_rule() {
    QuadRule r;
    r.degree = 2;
    const double a = 1.0 / 6.0, b = 2.0 / 3.0;
    r.points = {{b, a, a}, {a, b, a}, {a, a, b}};
    r.weights = {1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0};
    return r;
}

// 7-point degree-5 rule (centroid + two symmetric orbits).
inline QuadRule strang_rule() {
    QuadRule r;
    r.degree = 5;
    const double s15 = std::sqrt(15.0);
    const double a1 = (6.0 - s15) / 21.0, w1 = (155.0 - s15) / 1200.0;
    const double a2 = (6.0 + s15) / 21.0, w2 = (155.0 + s15) / 1200.0;
    r.points.push_back({1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0});
    r.weights.push_back(9.0 / 40.0);
    for (auto [a, w] : {std::pair{a1, w1}, std::pair{a2, w2}}) {
        const double b = 1.0 - 2.0 * a;
        r.points.push_back({b, a, a});
        r.points.push_back({a, b, a});
        r.points.push_back({a, a, b});
        r.weights.insert(r.weights.end(), 3, w);
    }
    return r;
}

// Collapsed Gauss-Legendre product on the reference triangle via the Duffy
// map (u, v) -> (u, v(1-u)); the (1-u) Jacobian is absorbed into the weight,
// so u needs one extra point of exactness.
inline QuadRule collapsed_rule(int degree) {
    const int nu = (degree + 3) / 2; // exact for u-polynomials up to degree+1
    const int nv = (degree + 2) / 2;
    std::vector<double> xu, wu, xv, wv;
    gauss_legendre_01(nu, xu, wu);
    gauss_legendre_01(nv, xv, wv);
    QuadRule r;
    r.degree = degree;
    for (int i = 0; i < nu; ++i) {
        for (int j = 0; j < nv; ++j) {
            const double x = xu[i];
            const double y = xv[j] * (1.0 - xu[i]);
            r.points.push_back({1.0 - x - y, x, y});
            r.weights.push_back(2.0 * wu[i] * wv[j] * (1.0 - xu[i]));
        }
    }
    return r;
}

} // namespace detail

// Smallest stocked rule with exactness >= degree; throws outside [1,12].
inline const QuadRule& triangle_rule(int degree) {
    if (degree < 1 || degree > 12)
        throw std::invalid_argument("triangle_rule: degree must be in [1,12]");
    static const std::vector<QuadRule> stocked = [] {
        std::vector<QuadRule> rules;
        rules.push_back(detail::centroid_rule());
        rules.push_back(detail::three_point_rule());
        rules.push_back(detail::collapsed_rule(4));
        rules.push_back(detail::strang_rule());
        rules.push_back(detail::collapsed_rule(6));
        rules.push_back(detail::collapsed_rule(8));
        rules.push_back(detail::collapsed_rule(10));
        rules.push_back(detail::collapsed_rule(12));
        return rules;
    }();
    for (const auto& r : stocked)
        if (r.degree >= degree) return r;
    throw std::logic_error("triangle_rule: no stocked rule");
}

inline const EdgeRule& edge_rule(int degree) {
    if (degree < 1 || degree > 23)
        throw std::invalid_argument("edge_rule: degree must be in [1,23]");
    static const std::vector<EdgeRule> stocked = [] {
        std::vector<EdgeRule> rules;
        for (int n = 1; n <= 12; ++n) {
            EdgeRule r;
            r.degree = 2 * n - 1;
            gauss_legendre_01(n, r.points, r.weights);
            rules.push_back(std::move(r));
        }
        return rules;
    }();
    for (const auto& r : stocked)
        if (r.degree >= degree) return r;
    throw std::logic_error("edge_rule: no stocked rule");
}

} // namespace platefem

#endif
