// Fields: one coefficient per global dof, evaluated through the element
// kernels. Includes global interpolation of smooth functions and field IO.
#ifndef PLATEFEM_FIELD_HPP
#define PLATEFEM_FIELD_HPP

#include <functional>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "platefem/dofmap.hpp"
#include "platefem/elements.hpp"

namespace platefem {

struct Field {
    ElementKind kind = ElementKind::hct_c;
    std::vector<double> coef;
};

struct SmoothFunction {
    std::function<double(Vec2)> value;
    std::function<Vec2(Vec2)> grad;
};

// Binds a field to one element: local dof values u_local = T * gathered.
class ElementField {
public:
    ElementField(const DofMap& dm, const Field& f, int t)
        : elem_(dm.mesh(), t, f.kind) {
        const auto slots = dm.element_dofs(t);
        const auto T = dm.element_transform(t);
        const int n = dm.dofs_per_element();
        u_.assign(n, 0.0);
        for (int r = 0; r < n; ++r)
            for (int c = 0; c < n; ++c)
                if (T(r, c) != 0.0) u_[r] += T(r, c) * f.coef[slots[c]];
    }

    const HctElement& element() const { return elem_; }
    const std::vector<double>& local_coeffs() const { return u_; }

    double value(const std::array<double, 3>& l, int sub) const {
        double s = 0.0;
        for (int j = 0; j < int(u_.size()); ++j) s += u_[j] * elem_.value(l, sub, j);
        return s;
    }
    Vec2 grad(const std::array<double, 3>& l, int sub) const {
        Vec2 g{0, 0};
        for (int j = 0; j < int(u_.size()); ++j) g += elem_.grad(l, sub, j) * u_[j];
        return g;
    }
    SymMat2 hess(const std::array<double, 3>& l, int sub) const {
        SymMat2 h;
        for (int j = 0; j < int(u_.size()); ++j) h += elem_.hess(l, sub, j) * u_[j];
        return h;
    }
    double laplacian(const std::array<double, 3>& l, int sub) const {
        return hess(l, sub).trace();
    }
    Vec2 lap_grad(int sub) const {
        Vec2 g{0, 0};
        for (int j = 0; j < int(u_.size()); ++j) g += elem_.lap_grad(sub, j) * u_[j];
        return g;
    }

    double value_at(const Vec2& p) const {
        const auto l = elem_.barycentric(p);
        return value(l, hct_subtriangle(l));
    }
    Vec2 grad_at(const Vec2& p) const {
        const auto l = elem_.barycentric(p);
        return grad(l, hct_subtriangle(l));
    }
    double laplacian_at(const Vec2& p) const {
        const auto l = elem_.barycentric(p);
        return laplacian(l, hct_subtriangle(l));
    }

private:
    HctElement elem_;
    std::vector<double> u_;
};

// Interpolation: vertex dofs from (value, grad), edge dofs from the normal
// derivative at the edge midpoint. The resulting field is globally C^1 and
// its restriction to each element matches the element interpolation operator.
inline Field interpolate(const DofMap& dm, const SmoothFunction& v) {
    Field f;
    f.kind = dm.kind();
    f.coef.assign(dm.size(), 0.0);
    const Mesh& m = dm.mesh();
    for (int vtx = 0; vtx < m.num_vertices(); ++vtx) {
        const Vec2 p = m.vertices[vtx];
        f.coef[dm.vertex_value(vtx)] = v.value(p);
        const Vec2 g = v.grad(p);
        f.coef[dm.vertex_dx(vtx)] = g.x;
        f.coef[dm.vertex_dy(vtx)] = g.y;
    }
    if (dm.kind() == ElementKind::hct_c)
        for (int e = 0; e < m.num_edges(); ++e)
            f.coef[dm.edge_dof(e)] = v.grad(dm.edge_midpoint(e)).dot(dm.edge_normal(e));
    return f;
}

inline Field constant_field(const DofMap& dm, double c) {
    return interpolate(dm, {[c](Vec2) { return c; }, [](Vec2) { return Vec2{0, 0}; }});
}

// Brute-force point location; returns the triangle with the least-negative
// barycentric minimum (clipping handles boundary roundoff).
inline int locate_point(const Mesh& m, const Vec2& p) {
    int best = -1;
    double best_min = -1e300;
    for (int t = 0; t < m.num_triangles(); ++t) {
        const auto l = barycentric(m, t, p);
        const double lmin = std::min({l[0], l[1], l[2]});
        if (lmin > best_min) {
            best_min = lmin;
            best = t;
        }
        if (lmin >= 0.0) return t;
    }
    if (best_min < -1e-9)
        throw std::runtime_error("locate_point: point outside mesh");
    return best;
}

// --- field text format: kind, count, then one coefficient per line ---

inline void write_field(const Field& f, std::ostream& os) {
    os.precision(17);
    os << kind_name(f.kind) << '\n' << f.coef.size() << '\n';
    for (double c : f.coef) os << c << '\n';
}

inline Field read_field(std::istream& is) {
    auto next_line = [&is](std::string& line) {
        while (std::getline(is, line)) {
            const auto pos = line.find_first_not_of(" \t\r");
            if (pos == std::string::npos || line[pos] == '#') continue;
            return true;
        }
        return false;
    };
    std::string line;
    if (!next_line(line)) throw std::runtime_error("field read: empty input");
    Field f;
    std::string kind = line.substr(0, line.find_last_not_of(" \t\r") + 1);
    if (kind == "hct-c") f.kind = ElementKind::hct_c;
    else if (kind == "hct-r") f.kind = ElementKind::hct_r;
    else throw std::runtime_error("field read: unknown element kind '" + kind + "'");
    if (!next_line(line)) throw std::runtime_error("field read: missing count");
    const long n = std::stol(line);
    f.coef.resize(n);
    for (long i = 0; i < n; ++i) {
        if (!next_line(line)) throw std::runtime_error("field read: truncated coefficients");
        f.coef[i] = std::stod(line);
    }
    return f;
}

} // namespace platefem

#endif
