// Element kinds, dof functionals and basis evaluation on physical triangles.
#ifndef PLATEFEM_ELEMENTS_HPP
#define PLATEFEM_ELEMENTS_HPP

#include <array>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <vector>

#include "platefem/bell.hpp"
#include "platefem/hct.hpp"
#include "platefem/mesh.hpp"

namespace platefem {

enum class ElementKind { hct_c, hct_r, bell };

inline int dof_count(ElementKind k) {
    switch (k) {
        case ElementKind::hct_c: return 12;
        case ElementKind::hct_r: return 9;
        case ElementKind::bell: return 18;
    }
    return 0;
}

inline const char* kind_name(ElementKind k) {
    switch (k) {
        case ElementKind::hct_c: return "hct-c";
        case ElementKind::hct_r: return "hct-r";
        case ElementKind::bell: return "bell";
    }
    return "?";
}

struct DofDescriptor {
    enum class Kind { value, directional_derivative, dxx, dxy, dyy };
    Kind kind = Kind::value;
    Vec2 anchor;
    Vec2 direction; // directional_derivative only
};

// Per-triangle HCT kernel: caches geometry and the basis polynomial tables.
class HctElement {
public:
    static constexpr int max_dofs = 12;

    HctElement(const Mesh& m, int t, ElementKind kind) : kind_(kind) {
        if (kind == ElementKind::bell)
            throw std::invalid_argument("HctElement: bell is reference-only");
        for (int i = 0; i < 3; ++i) a_[i] = m.vertex(t, i);
        init();
    }

    HctElement(const std::array<Vec2, 3>& verts, ElementKind kind) : kind_(kind), a_(verts) {
        init();
    }

    int ndof() const { return dof_count(kind_); }
    ElementKind kind() const { return kind_; }
    const std::array<Vec2, 3>& verts() const { return a_; }
    Vec2 barycenter() const { return (a_[0] + a_[1] + a_[2]) / 3.0; }
    double area() const { return area_; }
    const std::array<double, 3>& ecc() const { return E_; }

    std::array<double, 3> barycentric(const Vec2& p) const {
        return {signed_area(p, a_[1], a_[2]) / area_,
                signed_area(a_[0], p, a_[2]) / area_,
                signed_area(a_[0], a_[1], p) / area_};
    }

    Vec2 point(const std::array<double, 3>& l) const {
        return a_[0] * l[0] + a_[1] * l[1] + a_[2] * l[2];
    }

    // midpoint of the side opposite a_j
    Vec2 midside(int j) const { return (a_[(j + 1) % 3] + a_[(j + 2) % 3]) * 0.5; }

    // altitude vector a_j - c_j (c_j = foot of the perpendicular from a_j)
    Vec2 altitude(int j) const {
        const Vec2 t = a_[(j + 2) % 3] - a_[(j + 1) % 3];
        const Vec2 n = t.perp() / t.norm();
        return n * ((a_[j] - midside(j)).dot(n));
    }

    const LambdaCubic& basis(int sub, int j) const { return poly_[sub][j]; }

    double value(const std::array<double, 3>& l, int sub, int j) const {
        return poly_[sub][j].value(l);
    }

    Vec2 grad(const std::array<double, 3>& l, int sub, int j) const {
        Vec2 g{0, 0};
        for (int k = 0; k < 3; ++k) g += grad_lambda_[k] * poly_[sub][j].dl(l, k);
        return g;
    }

    SymMat2 hess(const std::array<double, 3>& l, int sub, int j) const {
        SymMat2 h;
        for (int k = 0; k < 3; ++k)
            for (int k2 = 0; k2 < 3; ++k2) {
                const double d = poly_[sub][j].d2l(l, k, k2);
                if (d == 0.0) continue;
                h.xx += d * grad_lambda_[k].x * grad_lambda_[k2].x;
                h.xy += d * grad_lambda_[k].x * grad_lambda_[k2].y;
                h.yy += d * grad_lambda_[k].y * grad_lambda_[k2].y;
            }
        return h;
    }

    double laplacian(const std::array<double, 3>& l, int sub, int j) const {
        return hess(l, sub, j).trace();
    }

    // gradient of the laplacian; constant on each subtriangle for cubics
    Vec2 lap_grad(int sub, int j) const {
        Vec2 g{0, 0};
        for (int k = 0; k < 3; ++k) {
            double coeff = 0.0; // d/dl_k of (laplacian in lambda form)
            for (int k2 = 0; k2 < 3; ++k2)
                for (int k3 = 0; k3 < 3; ++k3)
                    coeff += poly_[sub][j].d3l(k, k2, k3) * grad_lambda_[k2].dot(grad_lambda_[k3]);
            g += grad_lambda_[k] * coeff;
        }
        return g;
    }

    std::vector<DofDescriptor> dofs() const {
        std::vector<DofDescriptor> out;
        for (int j = 0; j < 3; ++j)
            out.push_back({DofDescriptor::Kind::value, a_[j], {}});
        for (int j = 0; j < 3; ++j) {
            out.push_back({DofDescriptor::Kind::directional_derivative, a_[j], a_[(j + 1) % 3] - a_[j]});
            out.push_back({DofDescriptor::Kind::directional_derivative, a_[j], a_[(j + 2) % 3] - a_[j]});
        }
        if (kind_ == ElementKind::hct_c)
            for (int j = 0; j < 3; ++j)
                out.push_back({DofDescriptor::Kind::directional_derivative, midside(j), altitude(j)});
        return out;
    }

    // dof functionals applied to a smooth function (value + gradient)
    std::vector<double> apply_dofs(const std::function<double(Vec2)>& v,
                                   const std::function<Vec2(Vec2)>& dv) const {
        std::vector<double> out;
        for (const auto& d : dofs())
            out.push_back(d.kind == DofDescriptor::Kind::value ? v(d.anchor)
                                                               : dv(d.anchor).dot(d.direction));
        return out;
    }

private:
    void init() {
        area_ = signed_area(a_[0], a_[1], a_[2]);
        if (area_ <= 0.0) throw std::invalid_argument("HctElement: triangle must be CCW");
        std::array<double, 3> lsq{};
        for (int i = 0; i < 3; ++i)
            lsq[i] = (a_[(i + 2) % 3] - a_[(i + 1) % 3]).norm2();
        for (int i = 0; i < 3; ++i)
            E_[i] = (lsq[(i + 2) % 3] - lsq[(i + 1) % 3]) / lsq[i];
        for (int i = 0; i < 3; ++i)
            grad_lambda_[i] = (a_[(i + 2) % 3] - a_[(i + 1) % 3]).perp() / (2.0 * area_);
        for (int sub = 0; sub < 3; ++sub) {
            if (kind_ == ElementKind::hct_c) {
                auto row = hct_detail::hct_c_row(sub, E_);
                for (int j = 0; j < 12; ++j) poly_[sub][j] = row[j];
            } else {
                auto row = hct_detail::hct_r_row(sub, E_);
                for (int j = 0; j < 9; ++j) poly_[sub][j] = row[j];
            }
        }
    }

    ElementKind kind_;
    std::array<Vec2, 3> a_;
    double area_ = 0.0;
    std::array<double, 3> E_{};
    std::array<Vec2, 3> grad_lambda_{};
    std::array<std::array<LambdaCubic, 12>, 3> poly_{};
};

struct BasisEval {
    int n = 0;
    std::array<double, 18> value{};
    std::array<Vec2, 18> grad{};
    std::array<SymMat2, 18> hess{};
};

inline std::vector<DofDescriptor> dof_functionals(ElementKind kind, const Mesh& m, int t) {
    if (kind == ElementKind::bell) {
        const std::array<Vec2, 3> ref = {Vec2{0, 0}, Vec2{1, 0}, Vec2{0, 1}};
        for (int i = 0; i < 3; ++i)
            if ((m.vertex(t, i) - ref[i]).norm() > 1e-14)
                throw std::invalid_argument("dof_functionals: bell requires the reference triangle");
        std::vector<DofDescriptor> out;
        using K = DofDescriptor::Kind;
        for (int v = 0; v < 3; ++v) {
            out.push_back({K::value, ref[v], {}});
            out.push_back({K::directional_derivative, ref[v], {1, 0}});
            out.push_back({K::directional_derivative, ref[v], {0, 1}});
            out.push_back({K::dxx, ref[v], {}});
            out.push_back({K::dxy, ref[v], {}});
            out.push_back({K::dyy, ref[v], {}});
        }
        return out;
    }
    return HctElement(m, t, kind).dofs();
}

inline BasisEval eval_basis(ElementKind kind, const Mesh& m, int t, const Vec2& p,
                            BellTable bell_table = BellTable::literal) {
    BasisEval out;
    if (kind == ElementKind::bell) {
        (void)dof_functionals(kind, m, t); // validates reference triangle
        const auto phi = bell_basis(bell_table);
        out.n = 18;
        for (int j = 0; j < 18; ++j) {
            out.value[j] = phi[j].value(p);
            const Poly2 px = phi[j].dx(), py = phi[j].dy();
            out.grad[j] = {px.value(p), py.value(p)};
            out.hess[j] = {px.dx().value(p), px.dy().value(p), py.dy().value(p)};
        }
        return out;
    }
    const HctElement elem(m, t, kind);
    const auto l = elem.barycentric(p);
    const double lmin = std::min({l[0], l[1], l[2]});
    if (lmin < -1e-12)
        throw std::invalid_argument("eval_basis: point outside triangle");
    const int sub = hct_subtriangle(l);
    out.n = elem.ndof();
    for (int j = 0; j < out.n; ++j) {
        out.value[j] = elem.value(l, sub, j);
        out.grad[j] = elem.grad(l, sub, j);
        out.hess[j] = elem.hess(l, sub, j);
    }
    return out;
}

} // namespace platefem

#endif
