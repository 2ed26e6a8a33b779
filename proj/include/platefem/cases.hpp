// Manufactured solutions for verification: the clamped polynomial bump
// x^2(1-x)^2 y^2(1-y)^2 and sin(pi x) sin(pi y) on the unit square, with the
// forcing f = Delta^2 u + lambda |u|^{2p} u induced pointwise.
#ifndef PLATEFEM_CASES_HPP
#define PLATEFEM_CASES_HPP

#include <cmath>
#include <functional>
#include <random>
#include <string>

#include "platefem/field.hpp"
#include "platefem/geometry.hpp"

namespace platefem {

struct ManufacturedCase {
    std::string name;
    std::function<double(Vec2)> value;
    std::function<Vec2(Vec2)> grad;
    std::function<double(Vec2)> laplacian;
    std::function<double(Vec2)> bilaplacian;
    double max_abs = 1.0; // max |u| over the domain

    std::function<double(Vec2)> forcing(double lambda, double p) const {
        auto u = value;
        auto b = bilaplacian;
        return [u, b, lambda, p](Vec2 x) {
            const double v = u(x);
            return b(x) + lambda * std::pow(std::abs(v), 2.0 * p) * v;
        };
    }

    SmoothFunction smooth() const { return {value, grad}; }
};

inline ManufacturedCase poly_case() {
    // u = g(x) g(y), g(t) = t^2(1-t)^2;  g'''' = 24, so
    // Delta^2 u = 24 g(y) + 2 g''(x) g''(y) + 24 g(x).
    auto g = [](double t) { return t * t * (1.0 - t) * (1.0 - t); };
    auto dg = [](double t) { return 2.0 * t * (1.0 - t) * (1.0 - 2.0 * t); };
    auto d2g = [](double t) { return 12.0 * t * t - 12.0 * t + 2.0; };
    ManufacturedCase c;
    c.name = "poly";
    c.value = [g](Vec2 p) { return g(p.x) * g(p.y); };
    c.grad = [g, dg](Vec2 p) { return Vec2{dg(p.x) * g(p.y), g(p.x) * dg(p.y)}; };
    c.laplacian = [g, d2g](Vec2 p) { return d2g(p.x) * g(p.y) + g(p.x) * d2g(p.y); };
    c.bilaplacian = [g, d2g](Vec2 p) {
        return 24.0 * g(p.y) + 2.0 * d2g(p.x) * d2g(p.y) + 24.0 * g(p.x);
    };
    c.max_abs = 1.0 / 256.0;
    return c;
}

inline ManufacturedCase sine_case() {
    const double pi = M_PI;
    ManufacturedCase c;
    c.name = "sine";
    c.value = [pi](Vec2 p) { return std::sin(pi * p.x) * std::sin(pi * p.y); };
    c.grad = [pi](Vec2 p) {
        return Vec2{pi * std::cos(pi * p.x) * std::sin(pi * p.y),
                    pi * std::sin(pi * p.x) * std::cos(pi * p.y)};
    };
    c.laplacian = [pi](Vec2 p) {
        return -2.0 * pi * pi * std::sin(pi * p.x) * std::sin(pi * p.y);
    };
    c.bilaplacian = [pi](Vec2 p) {
        return 4.0 * pi * pi * pi * pi * std::sin(pi * p.x) * std::sin(pi * p.y);
    };
    c.max_abs = 1.0;
    return c;
}

inline ManufacturedCase zero_case() {
    ManufacturedCase c;
    c.name = "zero";
    c.value = [](Vec2) { return 0.0; };
    c.grad = [](Vec2) { return Vec2{0, 0}; };
    c.laplacian = [](Vec2) { return 0.0; };
    c.bilaplacian = [](Vec2) { return 0.0; };
    c.max_abs = 0.0;
    return c;
}

inline ManufacturedCase case_by_name(const std::string& name) {
    if (name == "poly") return poly_case();
    if (name == "sine") return sine_case();
    if (name == "zero") return zero_case();
    throw std::invalid_argument("unknown case '" + name + "'");
}

// Cross-checks the bilaplacian callback against a 13-point finite-difference
// stencil applied to the value callback. Returns the max relative error over
// sample points (relative to |exact| + the case's natural scale).
inline double fd_bilaplacian_check(const ManufacturedCase& c, int npoints = 10,
                                   double step = 1e-3, unsigned seed = 7) {
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> U(0.2, 0.8);
    double worst = 0.0;
    const double h = step, h4 = h * h * h * h;
    double scale = 1e-12;
    for (int i = 0; i < 50; ++i)
        scale = std::max(scale, std::abs(c.bilaplacian({U(rng), U(rng)})));
    rng.seed(seed);
    for (int i = 0; i < npoints; ++i) {
        const Vec2 p{U(rng), U(rng)};
        auto u = [&](double dx, double dy) { return c.value({p.x + dx, p.y + dy}); };
        const double fd =
            (20.0 * u(0, 0) - 8.0 * (u(h, 0) + u(-h, 0) + u(0, h) + u(0, -h)) +
             2.0 * (u(h, h) + u(h, -h) + u(-h, h) + u(-h, -h)) +
             (u(2 * h, 0) + u(-2 * h, 0) + u(0, 2 * h) + u(0, -2 * h))) / h4;
        const double exact = c.bilaplacian(p);
        worst = std::max(worst, std::abs(fd - exact) / (std::abs(exact) + 1e-3 * scale));
    }
    return worst;
}

} // namespace platefem

#endif
