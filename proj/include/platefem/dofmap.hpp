// Global dof numbering and the per-element local<->global transform.
//
// Vertex v carries (value, d/dx, d/dy) at indices 3v..3v+2; HCT-C adds one
// dof per edge, the normal derivative at the edge midpoint along a canonical
// unit normal (left of the direction from the smaller to the larger vertex
// id). The element-local midside dof grad p(b).(a_j - c_j) equals that normal
// derivative scaled by the signed distance from a_j to the edge line, which
// is what makes the shared dof exact across neighbors.
#ifndef PLATEFEM_DOFMAP_HPP
#define PLATEFEM_DOFMAP_HPP

#include <stdexcept>
#include <vector>

#include "platefem/dense.hpp"
#include "platefem/elements.hpp"
#include "platefem/mesh.hpp"

namespace platefem {

class DofMap {
public:
    DofMap(const Mesh& m, ElementKind kind) : mesh_(&m), kind_(kind) {
        if (kind == ElementKind::bell)
            throw std::invalid_argument("DofMap: bell is reference-only, not assembled globally");
        n_ = 3 * m.num_vertices() + (kind == ElementKind::hct_c ? m.num_edges() : 0);
    }

    int size() const { return n_; }
    ElementKind kind() const { return kind_; }
    const Mesh& mesh() const { return *mesh_; }

    int vertex_value(int v) const { return 3 * v; }
    int vertex_dx(int v) const { return 3 * v + 1; }
    int vertex_dy(int v) const { return 3 * v + 2; }
    int edge_dof(int e) const { return 3 * mesh_->num_vertices() + e; }

    Vec2 edge_tangent(int e) const {
        const auto& ed = mesh_->edges[e];
        const Vec2 d = mesh_->vertices[ed.v1] - mesh_->vertices[ed.v0];
        return d / d.norm();
    }
    Vec2 edge_normal(int e) const { return edge_tangent(e).perp(); }
    Vec2 edge_midpoint(int e) const {
        const auto& ed = mesh_->edges[e];
        return (mesh_->vertices[ed.v0] + mesh_->vertices[ed.v1]) * 0.5;
    }

    int dofs_per_element() const { return kind_ == ElementKind::hct_c ? 12 : 9; }

    // Global ids in element-slot order: (value, dx, dy) per vertex, then the
    // three edge dofs (edge i opposite local vertex i) for HCT-C.
    std::vector<int> element_dofs(int t) const {
        std::vector<int> out;
        out.reserve(dofs_per_element());
        for (int j = 0; j < 3; ++j) {
            const int v = mesh_->triangles[t][j];
            out.push_back(vertex_value(v));
            out.push_back(vertex_dx(v));
            out.push_back(vertex_dy(v));
        }
        if (kind_ == ElementKind::hct_c)
            for (int j = 0; j < 3; ++j) out.push_back(edge_dof(mesh_->tri_edges[t][j]));
        return out;
    }

    // T maps element-slot values to local dof values: u_local = T u_slots.
    DenseMatrix element_transform(int t) const {
        const int n = dofs_per_element();
        DenseMatrix T(n, n);
        const HctElement elem(*mesh_, t, kind_);
        for (int j = 0; j < 3; ++j) {
            T(j, 3 * j) = 1.0;
            const Vec2 d1 = elem.verts()[(j + 1) % 3] - elem.verts()[j];
            const Vec2 d2 = elem.verts()[(j + 2) % 3] - elem.verts()[j];
            T(3 + 2 * j, 3 * j + 1) = d1.x;
            T(3 + 2 * j, 3 * j + 2) = d1.y;
            T(4 + 2 * j, 3 * j + 1) = d2.x;
            T(4 + 2 * j, 3 * j + 2) = d2.y;
        }
        if (kind_ == ElementKind::hct_c) {
            for (int j = 0; j < 3; ++j) {
                const int e = mesh_->tri_edges[t][j];
                const Vec2 n_e = edge_normal(e);
                const double dist = (elem.verts()[j] - edge_midpoint(e)).dot(n_e);
                T(9 + j, 9 + j) = dist;
            }
        }
        return T;
    }

    // Clamped plate: value and both derivative dofs at boundary vertices,
    // plus the normal-derivative dof on boundary edges (HCT-C).
    std::vector<int> clamped_dofs() const {
        std::vector<int> out;
        for (int v = 0; v < mesh_->num_vertices(); ++v) {
            if (!mesh_->boundary_vertex[v]) continue;
            out.push_back(vertex_value(v));
            out.push_back(vertex_dx(v));
            out.push_back(vertex_dy(v));
        }
        if (kind_ == ElementKind::hct_c)
            for (int e = 0; e < mesh_->num_edges(); ++e)
                if (mesh_->edges[e].boundary) out.push_back(edge_dof(e));
        return out;
    }

private:
    const Mesh* mesh_;
    ElementKind kind_;
    int n_ = 0;
};

} // namespace platefem

#endif
