// Bell triangle on the reference element (0,0), (1,0), (0,1): quintics whose
// normal slope is cubic along each side, 18 dofs (value, both first and all
// three second partials at each vertex).
//
// Two basis tables are provided: `literal` is the published table transcribed
// verbatim (it contains defects; the duality check reports them per function),
// `corrected` is the exact dual basis and is the one safe for interpolation.
#ifndef PLATEFEM_BELL_HPP
#define PLATEFEM_BELL_HPP

#include <array>
#include <cassert>
#include <vector>

#include "platefem/geometry.hpp"

namespace platefem {

// Dense bivariate polynomial, degree <= 6 in each variable.
class Poly2 {
public:
    static constexpr int N = 7;
    std::array<double, N * N> c{};

    static Poly2 constant(double v) {
        Poly2 p;
        p.c[0] = v;
        return p;
    }
    static Poly2 var_x() {
        Poly2 p;
        p.at(1, 0) = 1.0;
        return p;
    }
    static Poly2 var_y() {
        Poly2 p;
        p.at(0, 1) = 1.0;
        return p;
    }

    double& at(int i, int j) { return c[i * N + j]; }
    double at(int i, int j) const { return c[i * N + j]; }

    Poly2 operator+(const Poly2& o) const {
        Poly2 r;
        for (int k = 0; k < N * N; ++k) r.c[k] = c[k] + o.c[k];
        return r;
    }
    Poly2 operator-(const Poly2& o) const {
        Poly2 r;
        for (int k = 0; k < N * N; ++k) r.c[k] = c[k] - o.c[k];
        return r;
    }
    Poly2 operator*(double s) const {
        Poly2 r;
        for (int k = 0; k < N * N; ++k) r.c[k] = c[k] * s;
        return r;
    }
    Poly2 operator*(const Poly2& o) const {
        Poly2 r;
        for (int i = 0; i < N; ++i)
            for (int j = 0; j < N; ++j) {
                if (at(i, j) == 0.0) continue;
                for (int k = 0; k + i < N; ++k)
                    for (int l = 0; l + j < N; ++l)
                        r.at(i + k, j + l) += at(i, j) * o.at(k, l);
            }
        return r;
    }

    Poly2 dx() const {
        Poly2 r;
        for (int i = 1; i < N; ++i)
            for (int j = 0; j < N; ++j) r.at(i - 1, j) = i * at(i, j);
        return r;
    }
    Poly2 dy() const {
        Poly2 r;
        for (int i = 0; i < N; ++i)
            for (int j = 1; j < N; ++j) r.at(i, j - 1) = j * at(i, j);
        return r;
    }

    double value(const Vec2& p) const {
        // Horner in x then y
        double s = 0.0;
        for (int i = N - 1; i >= 0; --i) {
            double row = 0.0;
            for (int j = N - 1; j >= 0; --j) row = row * p.y + at(i, j);
            s = s * p.x + row;
        }
        return s;
    }
};

enum class BellTable { literal, corrected };

// The 18 basis functions, vertex-major: for each vertex (a1, a2, a3) the six
// slots (value, d/dx, d/dy, d2/dx2, d2/dxdy, d2/dy2).
inline std::array<Poly2, 18> bell_basis(BellTable table) {
    using P = Poly2;
    const P x = P::var_x(), y = P::var_y(), one = P::constant(1.0);
    const P lam = one - x - y;
    const P x2 = x * x, y2 = y * y, lam2 = lam * lam;

    std::array<P, 18> phi;
    phi[0] = lam2 * (lam * 10.0 - lam2 * 15.0 + lam * lam2 * 6.0 + x * y * (x + y) * 30.0);
    phi[1] = x * lam2 * (one * 3.0 - lam * 2.0 - x2 * 3.0 + x * y * 6.0);
    phi[2] = y * lam2 * (one * 3.0 - lam * 2.0 - y2 * 3.0 + x * y * 6.0);
    phi[3] = lam2 * x2 * (one - x + y * 2.0) * 0.5;
    phi[4] = x * y * lam2;
    phi[5] = lam2 * y2 * (one - y + x * 2.0) * 0.5;

    const double c21 = table == BellTable::literal ? 1.0 : 6.0;
    phi[6] = x2 * (x * 10.0 - x2 * 15.0 + x * x2 * c21 + y2 * lam * 15.0);
    const P q22 = x2 * y * (one * 6.0 - x * 4.0 - y * 3.0 - y2 * 3.0 + x * y * 3.0) * 0.5;
    const P q23 = x2 * (x * -8.0 + x2 * 14.0 - x * x2 * 6.0 - y2 * lam * 15.0) * 0.5;
    if (table == BellTable::literal) {
        phi[7] = q22;
        phi[8] = q23;
    } else {
        phi[7] = q23;
        phi[8] = q22;
    }
    const double c24 = table == BellTable::literal ? 0.5 : 0.25;
    phi[9] = x2 * (x * ((one - x) * (one - x)) * 2.0 + y2 * lam * 5.0) * c24;
    phi[10] = x2 * y * (one * -2.0 + x * 2.0 + y + y2 - x * y) * 0.5;
    phi[11] = x2 * y2 * lam * 0.25 + x * x2 * y2 * 0.5;

    phi[12] = y2 * (y * 10.0 - y2 * 15.0 + y * y2 * 6.0 + x2 * lam * 15.0);
    const double c32 = table == BellTable::literal ? -6.0 : 6.0;
    phi[13] = x * y2 * (one * c32 - x * 3.0 - y * 4.0 - x2 * 3.0 + x * y * 3.0) * 0.5;
    phi[14] = y2 * (y * -8.0 + y2 * 14.0 - y * y2 * 6.0 - x2 * lam * 15.0) * 0.5;
    phi[15] = x2 * y2 * lam * 0.25 + x2 * y * y2 * 0.5;
    phi[16] = x * y2 * (one * -2.0 + x + y * 2.0 + x2 - x * y) * 0.5;
    phi[17] = y2 * (y * ((one - y) * (one - y)) * 2.0 + x2 * lam * 5.0) * 0.25;
    return phi;
}

// Applies the 18 Bell dof functionals to a polynomial.
inline std::array<double, 18> bell_dofs(const Poly2& p) {
    static const std::array<Vec2, 3> verts = {Vec2{0, 0}, Vec2{1, 0}, Vec2{0, 1}};
    const Poly2 px = p.dx(), py = p.dy();
    const Poly2 pxx = px.dx(), pxy = px.dy(), pyy = py.dy();
    std::array<double, 18> out{};
    for (int v = 0; v < 3; ++v) {
        out[6 * v + 0] = p.value(verts[v]);
        out[6 * v + 1] = px.value(verts[v]);
        out[6 * v + 2] = py.value(verts[v]);
        out[6 * v + 3] = pxx.value(verts[v]);
        out[6 * v + 4] = pxy.value(verts[v]);
        out[6 * v + 5] = pyy.value(verts[v]);
    }
    return out;
}

struct BellDualityReport {
    double max_dev = 0.0;                  // over all entries
    std::vector<int> failing;              // basis indices with any entry off
    std::array<double, 18> column_dev{};   // worst deviation per basis function
};

inline BellDualityReport bell_duality(BellTable table, double tol = 1e-9) {
    const auto phi = bell_basis(table);
    BellDualityReport rep;
    for (int j = 0; j < 18; ++j) {
        const auto d = bell_dofs(phi[j]);
        double dev = 0.0;
        for (int i = 0; i < 18; ++i) dev = std::max(dev, std::abs(d[i] - (i == j ? 1.0 : 0.0)));
        rep.column_dev[j] = dev;
        rep.max_dev = std::max(rep.max_dev, dev);
        if (dev > tol) rep.failing.push_back(j);
    }
    return rep;
}

// Interpolates v on the reference triangle: dofs = (value, grad, hessian).
struct BellPointData {
    double value;
    Vec2 grad;
    SymMat2 hess;
};

inline std::array<double, 18> bell_interpolation_dofs(
    const std::array<BellPointData, 3>& at_verts) {
    std::array<double, 18> d{};
    for (int v = 0; v < 3; ++v) {
        d[6 * v + 0] = at_verts[v].value;
        d[6 * v + 1] = at_verts[v].grad.x;
        d[6 * v + 2] = at_verts[v].grad.y;
        d[6 * v + 3] = at_verts[v].hess.xx;
        d[6 * v + 4] = at_verts[v].hess.xy;
        d[6 * v + 5] = at_verts[v].hess.yy;
    }
    return d;
}

} // namespace platefem

#endif
