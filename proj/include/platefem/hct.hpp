// Hsieh-Clough-Tocher macro-element kernels. Each basis function is a cubic
// in the macro-triangle barycentric coordinates on each of the three
// subtriangles K_i = (a_0, a_{i+1}, a_{i+2}); the coefficients depend only on
// the eccentricity parameters E_i, so one table serves any triangle shape.
//
// Degree-of-freedom order (HCT-C, 12):
//   0..2   p(a_j)
//   3..8   grad p(a_j).(a_{j+1}-a_j), grad p(a_j).(a_{j+2}-a_j)   (j = 0,1,2)
//   9..11  grad p(b_j).(a_j-c_j), b_j = midpoint of the side opposite a_j,
//          c_j = foot of the perpendicular from a_j onto that side
// HCT-R drops the midside triple (9 dofs).
#ifndef PLATEFEM_HCT_HPP
#define PLATEFEM_HCT_HPP

#include <array>
#include <cmath>

#include "platefem/geometry.hpp"
#include "platefem/mesh.hpp"

namespace platefem {

// Homogeneous cubic in (l0, l1, l2).
class LambdaCubic {
public:
    std::array<double, 10> c{};

    // monomial order: exponents of (l0, l1, l2)
    static constexpr std::array<std::array<int, 3>, 10> monos = {{
        {3, 0, 0}, {0, 3, 0}, {0, 0, 3},
        {2, 1, 0}, {2, 0, 1}, {1, 2, 0},
        {0, 2, 1}, {1, 0, 2}, {0, 1, 2},
        {1, 1, 1},
    }};

    static int mono_index(int e0, int e1, int e2) {
        for (int m = 0; m < 10; ++m)
            if (monos[m][0] == e0 && monos[m][1] == e1 && monos[m][2] == e2) return m;
        return -1;
    }

    void add(int e0, int e1, int e2, double coef) { c[mono_index(e0, e1, e2)] += coef; }

    double value(const std::array<double, 3>& l) const {
        double s = 0.0;
        for (int m = 0; m < 10; ++m) {
            const auto& e = monos[m];
            s += c[m] * pw(l[0], e[0]) * pw(l[1], e[1]) * pw(l[2], e[2]);
        }
        return s;
    }

    // d/dl_k
    double dl(const std::array<double, 3>& l, int k) const {
        double s = 0.0;
        for (int m = 0; m < 10; ++m) {
            auto e = monos[m];
            if (e[k] == 0) continue;
            const double f = e[k];
            e[k] -= 1;
            s += c[m] * f * pw(l[0], e[0]) * pw(l[1], e[1]) * pw(l[2], e[2]);
        }
        return s;
    }

    double d2l(const std::array<double, 3>& l, int k, int k2) const {
        double s = 0.0;
        for (int m = 0; m < 10; ++m) {
            auto e = monos[m];
            if (e[k] == 0) continue;
            double f = e[k];
            e[k] -= 1;
            if (e[k2] == 0) continue;
            f *= e[k2];
            e[k2] -= 1;
            s += c[m] * f * pw(l[0], e[0]) * pw(l[1], e[1]) * pw(l[2], e[2]);
        }
        return s;
    }

    // third derivative d^3/dl_k dl_k2 dl_k3 (constant for cubics)
    double d3l(int k, int k2, int k3) const {
        double s = 0.0;
        for (int m = 0; m < 10; ++m) {
            auto e = monos[m];
            double f = 1.0;
            for (int kk : {k, k2, k3}) {
                if (e[kk] == 0) { f = 0.0; break; }
                f *= e[kk];
                e[kk] -= 1;
            }
            s += c[m] * f;
        }
        return s;
    }

private:
    static double pw(double x, int n) {
        double r = 1.0;
        for (int i = 0; i < n; ++i) r *= x;
        return r;
    }
};

namespace hct_detail {

// Builds the 12 HCT-C basis restrictions on subtriangle i. The j-th entry
// follows the dof order in the header comment. Index arithmetic is cyclic;
// e[0..2] = (E_i, E_{i+1}, E_{i+2}) relative to the subtriangle.
inline std::array<LambdaCubic, 12> hct_c_row(int i, const std::array<double, 3>& E) {
    const int i1 = (i + 1) % 3, i2 = (i + 2) % 3;
    const double e0 = E[i], e1 = E[i1], e2 = E[i2];
    // helper: add monomial with exponents given relative to i
    auto rel = [&](LambdaCubic& p, int a, int b, int c, double coef) {
        std::array<int, 3> e{};
        e[i] += a;
        e[i1] += b;
        e[i2] += c;
        p.add(e[0], e[1], e[2], coef);
    };

    std::array<LambdaCubic, 12> out;
    auto& r0_0 = out[(i + 0) % 3];
    rel(r0_0, 3, 0, 0, -0.5 * (e1 - e2));
    rel(r0_0, 2, 0, 1, 1.5 * (3.0 + e1));
    rel(r0_0, 2, 1, 0, 1.5 * (3.0 - e2));

    auto& r0_1 = out[(i + 1) % 3];
    rel(r0_1, 3, 0, 0, 0.5 * (1.0 - 2.0 * e0 - e2));
    rel(r0_1, 0, 3, 0, 1.0);
    rel(r0_1, 2, 0, 1, -1.5 * (1.0 - e0));
    rel(r0_1, 2, 1, 0, 1.5 * (e0 + e2));
    rel(r0_1, 1, 2, 0, 3.0);
    rel(r0_1, 0, 2, 1, 3.0);
    rel(r0_1, 1, 1, 1, 3.0 * (1.0 - e0));

    auto& r0_2 = out[(i + 2) % 3];
    rel(r0_2, 3, 0, 0, 0.5 * (1.0 + 2.0 * e0 + e1));
    rel(r0_2, 0, 0, 3, 1.0);
    rel(r0_2, 2, 0, 1, -1.5 * (e0 + e1));
    rel(r0_2, 2, 1, 0, -1.5 * (1.0 + e0));
    rel(r0_2, 0, 1, 2, 3.0);
    rel(r0_2, 1, 0, 2, 3.0);
    rel(r0_2, 1, 1, 1, 3.0 * (1.0 + e0));

    auto dslot = [&](int v, int w) { return 3 + 2 * v + (((w - v + 3) % 3) == 1 ? 0 : 1); };

    auto& d_0_1 = out[dslot(i, i1)];
    rel(d_0_1, 3, 0, 0, -(1.0 - e2) / 12.0);
    rel(d_0_1, 2, 0, 1, -0.5);
    rel(d_0_1, 2, 1, 0, 0.25 * (7.0 - e2));

    auto& d_0_2 = out[dslot(i, i2)];
    rel(d_0_2, 3, 0, 0, -(1.0 + e1) / 12.0);
    rel(d_0_2, 2, 0, 1, 0.25 * (7.0 + e1));
    rel(d_0_2, 2, 1, 0, -0.5);

    auto& d_1_0 = out[dslot(i1, i)];
    rel(d_1_0, 3, 0, 0, -(7.0 + e2) / 12.0);
    rel(d_1_0, 2, 0, 1, 0.5);
    rel(d_1_0, 2, 1, 0, 0.25 * (5.0 + e2));
    rel(d_1_0, 1, 2, 0, 1.0);
    rel(d_1_0, 1, 1, 1, -1.0);

    auto& d_1_2 = out[dslot(i1, i2)];
    rel(d_1_2, 3, 0, 0, (4.0 - e0) / 6.0);
    rel(d_1_2, 2, 0, 1, -0.25 * (3.0 - e0));
    rel(d_1_2, 2, 1, 0, -0.25 * (5.0 - e0));
    rel(d_1_2, 0, 2, 1, 1.0);
    rel(d_1_2, 1, 1, 1, 0.5 * (3.0 - e0));

    auto& d_2_1 = out[dslot(i2, i1)];
    rel(d_2_1, 3, 0, 0, (4.0 + e0) / 6.0);
    rel(d_2_1, 2, 0, 1, -0.25 * (5.0 + e0));
    rel(d_2_1, 2, 1, 0, -0.25 * (3.0 + e0));
    rel(d_2_1, 0, 1, 2, 1.0);
    rel(d_2_1, 1, 1, 1, 0.5 * (3.0 + e0));

    auto& d_2_0 = out[dslot(i2, i)];
    rel(d_2_0, 3, 0, 0, -(7.0 - e1) / 12.0);
    rel(d_2_0, 2, 0, 1, 0.25 * (5.0 - e1));
    rel(d_2_0, 2, 1, 0, 0.5);
    rel(d_2_0, 1, 0, 2, 1.0);
    rel(d_2_0, 1, 1, 1, -1.0);

    auto& p_0 = out[9 + (i + 0) % 3];
    rel(p_0, 3, 0, 0, 4.0 / 3.0);
    rel(p_0, 2, 0, 1, -2.0);
    rel(p_0, 2, 1, 0, -2.0);
    rel(p_0, 1, 1, 1, 4.0);

    auto& p_1 = out[9 + (i + 1) % 3];
    rel(p_1, 3, 0, 0, -2.0 / 3.0);
    rel(p_1, 2, 0, 1, 2.0);

    auto& p_2 = out[9 + (i + 2) % 3];
    rel(p_2, 3, 0, 0, -2.0 / 3.0);
    rel(p_2, 2, 1, 0, 2.0);

    return out;
}

inline std::array<LambdaCubic, 9> hct_r_row(int i, const std::array<double, 3>& E) {
    const int i1 = (i + 1) % 3, i2 = (i + 2) % 3;
    const double e0 = E[i], e1 = E[i1], e2 = E[i2];
    auto rel = [&](LambdaCubic& p, int a, int b, int c, double coef) {
        std::array<int, 3> e{};
        e[i] += a;
        e[i1] += b;
        e[i2] += c;
        p.add(e[0], e[1], e[2], coef);
    };

    std::array<LambdaCubic, 9> out;
    auto& r0_0 = out[(i + 0) % 3];
    rel(r0_0, 3, 0, 0, -0.5 * (e1 - e2));
    rel(r0_0, 2, 0, 1, 1.5 * (3.0 + e1));
    rel(r0_0, 2, 1, 0, 1.5 * (3.0 - e2));

    auto& r0_1 = out[(i + 1) % 3];
    rel(r0_1, 3, 0, 0, 0.5 * (1.0 - 2.0 * e0 - e2));
    rel(r0_1, 0, 3, 0, 1.0);
    rel(r0_1, 2, 0, 1, -1.5 * (1.0 - e0));
    rel(r0_1, 2, 1, 0, 1.5 * (e0 + e2));
    rel(r0_1, 1, 2, 0, 3.0);
    rel(r0_1, 0, 2, 1, 3.0);
    rel(r0_1, 1, 1, 1, 3.0 * (1.0 - e0));

    auto& r0_2 = out[(i + 2) % 3];
    rel(r0_2, 3, 0, 0, 0.5 * (1.0 + 2.0 * e0 + e1));
    rel(r0_2, 0, 0, 3, 1.0);
    rel(r0_2, 2, 0, 1, -1.5 * (e0 + e1));
    rel(r0_2, 2, 1, 0, -1.5 * (1.0 + e0));
    rel(r0_2, 0, 1, 2, 3.0);
    rel(r0_2, 1, 0, 2, 3.0);
    rel(r0_2, 1, 1, 1, 3.0 * (1.0 + e0));

    auto dslot = [&](int v, int w) { return 3 + 2 * v + (((w - v + 3) % 3) == 1 ? 0 : 1); };

    auto& d_0_1 = out[dslot(i, i1)];
    rel(d_0_1, 3, 0, 0, -0.25 * (1.0 - e2));
    rel(d_0_1, 2, 0, 1, 0.5);
    rel(d_0_1, 2, 1, 0, 0.25 * (5.0 - 3.0 * e2));

    auto& d_0_2 = out[dslot(i, i2)];
    rel(d_0_2, 3, 0, 0, -0.25 * (1.0 + e1));
    rel(d_0_2, 2, 0, 1, 0.25 * (5.0 + 3.0 * e1));
    rel(d_0_2, 2, 1, 0, 0.5);

    auto& d_1_0 = out[dslot(i1, i)];
    rel(d_1_0, 3, 0, 0, 0.25 * (1.0 - e2));
    rel(d_1_0, 2, 0, 1, -0.5);
    rel(d_1_0, 2, 1, 0, -0.25 * (1.0 - 3.0 * e2));
    rel(d_1_0, 1, 2, 0, 1.0);
    rel(d_1_0, 1, 1, 1, 1.0);

    auto& d_1_2 = out[dslot(i1, i2)];
    rel(d_1_2, 3, 0, 0, -0.5 * e0);
    rel(d_1_2, 2, 0, 1, -0.25 * (1.0 - 3.0 * e0));
    rel(d_1_2, 2, 1, 0, 0.25 * (1.0 + 3.0 * e0));
    rel(d_1_2, 0, 2, 1, 1.0);
    rel(d_1_2, 1, 1, 1, 0.5 * (1.0 - 3.0 * e0));

    auto& d_2_1 = out[dslot(i2, i1)];
    rel(d_2_1, 3, 0, 0, 0.5 * e0);
    rel(d_2_1, 2, 0, 1, 0.25 * (1.0 - 3.0 * e0));
    rel(d_2_1, 2, 1, 0, -0.25 * (1.0 + 3.0 * e0));
    rel(d_2_1, 0, 1, 2, 1.0);
    rel(d_2_1, 1, 1, 1, 0.5 * (1.0 + 3.0 * e0));

    auto& d_2_0 = out[dslot(i2, i)];
    rel(d_2_0, 3, 0, 0, 0.25 * (1.0 + e1));
    rel(d_2_0, 2, 0, 1, -0.25 * (1.0 + 3.0 * e1));
    rel(d_2_0, 2, 1, 0, -0.5);
    rel(d_2_0, 1, 0, 2, 1.0);
    rel(d_2_0, 1, 1, 1, 1.0);

    return out;
}

} // namespace hct_detail

} // namespace platefem

#endif
