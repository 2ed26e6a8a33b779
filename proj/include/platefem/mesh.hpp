// Conforming triangle meshes: construction/validation, geometry queries
// (diameters, eccentricities, barycentrics), HCT macro-splitting, text IO.
#ifndef PLATEFEM_MESH_HPP
#define PLATEFEM_MESH_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "platefem/geometry.hpp"

namespace platefem {

enum class RefineKind { red, green };

// One-level refinement genealogy: the parent's vertex triple (indices stay
// valid in the child mesh) and a sibling group id.
struct MeshParent {
    std::array<int, 3> verts{};
    int group = -1;
    RefineKind kind = RefineKind::red;
};

struct MeshEdge {
    int v0 = -1, v1 = -1;        // v0 < v1
    std::array<int, 2> tris{-1, -1};
    bool boundary = false;
};

class Mesh {
public:
    std::vector<Vec2> vertices;
    std::vector<std::array<int, 3>> triangles;      // CCW vertex indices
    std::vector<std::optional<MeshParent>> parents; // per triangle
    int next_group = 0;

    // Derived connectivity, filled by finalize().
    std::vector<MeshEdge> edges;
    std::vector<std::array<int, 3>> tri_edges; // edge opposite local vertex i
    std::vector<char> boundary_vertex;

    int num_vertices() const { return int(vertices.size()); }
    int num_triangles() const { return int(triangles.size()); }
    int num_edges() const { return int(edges.size()); }

    Vec2 vertex(int t, int local) const { return vertices[triangles[t][local]]; }

    double area(int t) const {
        return signed_area(vertex(t, 0), vertex(t, 1), vertex(t, 2));
    }

    Vec2 centroid(int t) const {
        return (vertex(t, 0) + vertex(t, 1) + vertex(t, 2)) / 3.0;
    }

    // Rebuilds edges/adjacency/boundary flags; enforces CCW orientation and
    // rejects degenerate triangles and non-manifold edges.
    void finalize() {
        for (auto& tri : triangles) {
            for (int v : tri)
                if (v < 0 || v >= num_vertices())
                    throw std::runtime_error("mesh: vertex index out of range");
            const double a2 = 2.0 * signed_area(vertices[tri[0]], vertices[tri[1]], vertices[tri[2]]);
            double scale = 0.0;
            for (int i = 0; i < 3; ++i)
                scale = std::max(scale, (vertices[tri[(i + 1) % 3]] - vertices[tri[i]]).norm2());
            if (std::abs(a2) <= 1e-14 * scale)
                throw std::runtime_error("mesh: degenerate triangle (zero area)");
            if (a2 < 0.0) std::swap(tri[1], tri[2]); // silently fix orientation
        }
        parents.resize(triangles.size());
        edges.clear();
        tri_edges.assign(triangles.size(), {-1, -1, -1});
        std::map<std::pair<int, int>, int> edge_of;
        for (int t = 0; t < num_triangles(); ++t) {
            for (int i = 0; i < 3; ++i) {
                int a = triangles[t][(i + 1) % 3], b = triangles[t][(i + 2) % 3];
                if (a > b) std::swap(a, b);
                auto [it, inserted] = edge_of.try_emplace({a, b}, int(edges.size()));
                if (inserted) edges.push_back({a, b, {t, -1}, false});
                else {
                    MeshEdge& e = edges[it->second];
                    if (e.tris[1] != -1)
                        throw std::runtime_error("mesh: non-manifold edge (more than 2 adjacent triangles)");
                    e.tris[1] = t;
                }
                tri_edges[t][i] = it->second;
            }
        }
        boundary_vertex.assign(vertices.size(), 0);
        for (auto& e : edges) {
            e.boundary = (e.tris[1] == -1);
            if (e.boundary) boundary_vertex[e.v0] = boundary_vertex[e.v1] = 1;
        }
    }
};

// Throws if the mesh violates conformity: hanging vertices, wrong edge
// adjacency counts, or non-positive orientation.
inline void check_conforming(const Mesh& m) {
    for (int t = 0; t < m.num_triangles(); ++t)
        if (m.area(t) <= 0.0) throw std::runtime_error("conformity: non-positive triangle area");
    for (const auto& e : m.edges) {
        const int count = (e.tris[0] != -1) + (e.tris[1] != -1);
        if (count < 1 || count > 2) throw std::runtime_error("conformity: bad edge adjacency");
    }
    // Hanging vertex: a used vertex strictly inside some edge.
    std::vector<char> used(m.vertices.size(), 0);
    for (const auto& tri : m.triangles)
        for (int v : tri) used[v] = 1;
    for (const auto& e : m.edges) {
        const Vec2 p = m.vertices[e.v0], q = m.vertices[e.v1];
        const Vec2 d = q - p;
        const double len2 = d.norm2();
        for (int v = 0; v < m.num_vertices(); ++v) {
            if (!used[v] || v == e.v0 || v == e.v1) continue;
            const Vec2 w = m.vertices[v] - p;
            if (std::abs(d.cross(w)) > 1e-12 * len2) continue;
            const double s = d.dot(w);
            if (s > 1e-12 * len2 && s < len2 * (1.0 - 1e-12))
                throw std::runtime_error("conformity: hanging vertex detected");
        }
    }
}

// Shape-regularity check h_K/rho_K <= sigma0; violations are warnings.
inline std::vector<std::string> shape_warnings(const Mesh& m, double sigma0 = 20.0) {
    std::vector<std::string> out;
    for (int t = 0; t < m.num_triangles(); ++t) {
        double h = 0.0, per = 0.0;
        for (int i = 0; i < 3; ++i) {
            const double l = (m.vertex(t, (i + 2) % 3) - m.vertex(t, (i + 1) % 3)).norm();
            h = std::max(h, l);
            per += l;
        }
        const double rho = 4.0 * m.area(t) / per; // inradius diameter
        if (h / rho > sigma0) {
            std::ostringstream os;
            os << "triangle " << t << ": h/rho = " << h / rho << " exceeds sigma0 = " << sigma0;
            out.push_back(os.str());
        }
    }
    return out;
}

inline Mesh build_mesh(std::vector<Vec2> vertices, std::vector<std::array<int, 3>> triangles) {
    Mesh m;
    m.vertices = std::move(vertices);
    m.triangles = std::move(triangles);
    m.finalize();
    check_conforming(m);
    return m;
}

struct TriangleGeometry {
    double h_K = 0.0;                 // diameter
    double rho_K = 0.0;               // inradius diameter
    double area = 0.0;
    std::array<double, 3> l_sq{};     // squared length of side opposite a_i
    std::array<double, 3> E{};        // eccentricity parameters
    Vec2 barycenter;
};

inline TriangleGeometry geometry(const Mesh& m, int t) {
    TriangleGeometry g;
    const Vec2 a0 = m.vertex(t, 0), a1 = m.vertex(t, 1), a2 = m.vertex(t, 2);
    const std::array<Vec2, 3> a{a0, a1, a2};
    double per = 0.0;
    for (int i = 0; i < 3; ++i) {
        const Vec2 d = a[(i + 2) % 3] - a[(i + 1) % 3];
        g.l_sq[i] = d.norm2();
        per += d.norm();
        g.h_K = std::max(g.h_K, d.norm());
    }
    for (int i = 0; i < 3; ++i)
        g.E[i] = (g.l_sq[(i + 2) % 3] - g.l_sq[(i + 1) % 3]) / g.l_sq[i];
    g.area = signed_area(a0, a1, a2);
    g.rho_K = 4.0 * g.area / per;
    g.barycenter = (a0 + a1 + a2) / 3.0;
    return g;
}

inline std::array<double, 3> barycentric(const Mesh& m, int t, const Vec2& p) {
    const Vec2 a = m.vertex(t, 0), b = m.vertex(t, 1), c = m.vertex(t, 2);
    const double A = signed_area(a, b, c);
    return {signed_area(p, b, c) / A, signed_area(a, p, c) / A, signed_area(a, b, p) / A};
}

// HCT macro-split: subtriangle K_i = (a_0, a_{i+1}, a_{i+2}).
inline std::array<std::array<Vec2, 3>, 3> hct_split(const Mesh& m, int t) {
    const Vec2 g = m.centroid(t);
    std::array<std::array<Vec2, 3>, 3> out;
    for (int i = 0; i < 3; ++i)
        out[i] = {g, m.vertex(t, (i + 1) % 3), m.vertex(t, (i + 2) % 3)};
    return out;
}

// Index of the HCT subtriangle containing a point with macro barycentrics
// lam: K_i is the region where lam_i is minimal; ties pick the smallest index.
inline int hct_subtriangle(const std::array<double, 3>& lam) {
    int best = 0;
    for (int i = 1; i < 3; ++i)
        if (lam[i] < lam[best]) best = i;
    return best;
}

// Uniform n x n grid on the unit square, each cell split along the
// (i,j)-(i+1,j+1) diagonal: 2n^2 triangles (6n^2 HCT subtriangles).
inline Mesh make_square_mesh(int n) {
    if (n < 1) throw std::invalid_argument("make_square_mesh: n must be >= 1");
    std::vector<Vec2> verts;
    verts.reserve(std::size_t(n + 1) * (n + 1));
    for (int j = 0; j <= n; ++j)
        for (int i = 0; i <= n; ++i)
            verts.push_back({double(i) / n, double(j) / n});
    auto vid = [n](int i, int j) { return j * (n + 1) + i; };
    std::vector<std::array<int, 3>> tris;
    tris.reserve(std::size_t(2) * n * n);
    for (int j = 0; j < n; ++j) {
        for (int i = 0; i < n; ++i) {
            tris.push_back({vid(i, j), vid(i + 1, j), vid(i + 1, j + 1)});
            tris.push_back({vid(i, j), vid(i + 1, j + 1), vid(i, j + 1)});
        }
    }
    return build_mesh(std::move(verts), std::move(tris));
}

inline double max_diameter(const Mesh& m) {
    double h = 0.0;
    for (int t = 0; t < m.num_triangles(); ++t) h = std::max(h, geometry(m, t).h_K);
    return h;
}

// --- text format: "nv nt", nv lines "x y flag", nt lines "i j k" ---

inline void write_mesh(const Mesh& m, std::ostream& os) {
    os.precision(17);
    os << m.num_vertices() << ' ' << m.num_triangles() << '\n';
    for (int v = 0; v < m.num_vertices(); ++v)
        os << m.vertices[v].x << ' ' << m.vertices[v].y << ' '
           << int(v < int(m.boundary_vertex.size()) ? m.boundary_vertex[v] : 0) << '\n';
    for (const auto& t : m.triangles)
        os << t[0] << ' ' << t[1] << ' ' << t[2] << '\n';
}

inline Mesh read_mesh(std::istream& is) {
    auto next_line = [&is](std::string& line) {
        while (std::getline(is, line)) {
            const auto pos = line.find_first_not_of(" \t\r");
            if (pos == std::string::npos || line[pos] == '#') continue;
            return true;
        }
        return false;
    };
    std::string line;
    if (!next_line(line)) throw std::runtime_error("mesh read: empty input");
    std::istringstream hd(line);
    int nv = 0, nt = 0;
    if (!(hd >> nv >> nt) || nv < 3 || nt < 1) throw std::runtime_error("mesh read: bad header");
    std::vector<Vec2> verts(nv);
    for (int v = 0; v < nv; ++v) {
        if (!next_line(line)) throw std::runtime_error("mesh read: truncated vertices");
        std::istringstream ls(line);
        if (!(ls >> verts[v].x >> verts[v].y)) throw std::runtime_error("mesh read: bad vertex line");
        int flag; // boundary flag is optional and recomputed anyway
        ls >> flag;
    }
    std::vector<std::array<int, 3>> tris(nt);
    for (int t = 0; t < nt; ++t) {
        if (!next_line(line)) throw std::runtime_error("mesh read: truncated triangles");
        std::istringstream ls(line);
        if (!(ls >> tris[t][0] >> tris[t][1] >> tris[t][2]))
            throw std::runtime_error("mesh read: bad triangle line");
    }
    return build_mesh(std::move(verts), std::move(tris));
}

} // namespace platefem

#endif
