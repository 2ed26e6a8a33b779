// Red-green mesh adaptation: marked triangles are quadrisected (red), green
// bisections restore conformity, and coarsening un-refines complete sibling
// groups. Green triangles are recombined into their parent before any further
// refinement touches them.
#ifndef PLATEFEM_REFINE_HPP
#define PLATEFEM_REFINE_HPP

#include <cstdint>
#include <cstring>
#include <map>
#include <set>
#include <stdexcept>
#include <vector>

#include "platefem/mesh.hpp"

namespace platefem {

struct RefineResult {
    Mesh mesh;
    // old triangle id -> new id for triangles carried over unchanged, -1 if
    // the triangle was replaced (split, recombined or merged away).
    std::vector<int> old_to_new;
};

namespace detail {

struct CoordKey {
    std::uint64_t x, y;
    bool operator<(const CoordKey& o) const { return x != o.x ? x < o.x : y < o.y; }
};

inline CoordKey coord_key(const Vec2& p) {
    CoordKey k{};
    const double xx = p.x == 0.0 ? 0.0 : p.x; // normalize -0
    const double yy = p.y == 0.0 ? 0.0 : p.y;
    std::memcpy(&k.x, &xx, 8);
    std::memcpy(&k.y, &yy, 8);
    return k;
}

struct Cell {
    std::array<int, 3> v{};
    std::optional<MeshParent> parent;
    int origin = -1; // original triangle id when carried over unchanged
};

class RefineWorker {
public:
    explicit RefineWorker(const Mesh& m) : mesh_(m) {
        vertices_ = m.vertices;
        for (int v = 0; v < m.num_vertices(); ++v)
            vertex_at_[coord_key(vertices_[v])] = v;
        cells_.reserve(m.triangles.size() * 2);
        for (int t = 0; t < m.num_triangles(); ++t)
            cells_.push_back({m.triangles[t], m.parents[t], t});
        alive_.assign(cells_.size(), true);
        next_group_ = m.next_group;
    }

    RefineResult run(const std::set<int>& marked) {
        for (int t : marked) {
            if (t < 0 || t >= mesh_.num_triangles())
                throw std::invalid_argument("refine: marked id out of range");
            if (!alive_[t]) continue; // sibling of an already-recombined green
            if (is_green(t)) red_split(recombine(t));
            else red_split(t);
        }
        closure();
        // Remaining cells with exactly one hanging midpoint get green-bisected.
        const int ncells = int(cells_.size());
        for (int c = 0; c < ncells; ++c) {
            if (!alive_[c]) continue;
            int split_local = -1, nsplit = 0;
            for (int i = 0; i < 3; ++i)
                if (existing_midpoint(c, i) >= 0) { split_local = i; ++nsplit; }
            if (nsplit == 0) continue;
            if (nsplit > 1) throw std::logic_error("refine: closure left multiple hanging midpoints");
            green_bisect(c, split_local);
        }
        return build_result();
    }

private:
    bool is_green(int c) const {
        return cells_[c].parent && cells_[c].parent->kind == RefineKind::green;
    }

    int midpoint_vertex(int va, int vb) {
        const Vec2 p = (vertices_[va] + vertices_[vb]) * 0.5;
        auto [it, inserted] = vertex_at_.try_emplace(coord_key(p), int(vertices_.size()));
        if (inserted) vertices_.push_back(p);
        return it->second;
    }

    // Edge i of cell c is (v_{i+1}, v_{i+2}); returns the id of an existing
    // vertex at its midpoint, or -1.
    int existing_midpoint(int c, int i) const {
        const auto& v = cells_[c].v;
        const Vec2 p = (vertices_[v[(i + 1) % 3]] + vertices_[v[(i + 2) % 3]]) * 0.5;
        const auto it = vertex_at_.find(coord_key(p));
        return it == vertex_at_.end() ? -1 : it->second;
    }

    int recombine(int c) {
        const int group = cells_[c].parent->group;
        int sib = -1;
        for (int o = 0; o < int(cells_.size()); ++o)
            if (o != c && alive_[o] && cells_[o].parent && cells_[o].parent->group == group) sib = o;
        if (sib < 0) throw std::logic_error("refine: green sibling missing");
        alive_[c] = alive_[sib] = false;
        cells_.push_back({cells_[c].parent->verts, std::nullopt, -1});
        alive_.push_back(true);
        return int(cells_.size()) - 1;
    }

    void red_split(int c) {
        const auto v = cells_[c].v;
        const int m0 = midpoint_vertex(v[1], v[2]);
        const int m1 = midpoint_vertex(v[2], v[0]);
        const int m2 = midpoint_vertex(v[0], v[1]);
        alive_[c] = false;
        const int g = next_group_++;
        const MeshParent par{v, g, RefineKind::red};
        for (const auto& child : {std::array<int, 3>{v[0], m2, m1},
                                  std::array<int, 3>{v[1], m0, m2},
                                  std::array<int, 3>{v[2], m1, m0},
                                  std::array<int, 3>{m0, m1, m2}}) {
            cells_.push_back({child, par, -1});
            alive_.push_back(true);
        }
    }

    void green_bisect(int c, int i) {
        const auto v = cells_[c].v;
        const int va = v[(i + 1) % 3], vb = v[(i + 2) % 3], vc = v[i];
        const int m = midpoint_vertex(va, vb);
        alive_[c] = false;
        const int g = next_group_++;
        const MeshParent par{v, g, RefineKind::green};
        cells_.push_back({{vc, va, m}, par, -1});
        alive_.push_back(true);
        cells_.push_back({{vc, m, vb}, par, -1});
        alive_.push_back(true);
    }

    void closure() {
        for (int guard = 0;; ++guard) {
            if (guard > 64 + int(cells_.size()))
                throw std::logic_error("refine: closure did not terminate");
            bool changed = false;
            for (int c = 0; c < int(cells_.size()); ++c) {
                if (!alive_[c]) continue;
                int nsplit = 0;
                for (int i = 0; i < 3; ++i)
                    if (existing_midpoint(c, i) >= 0) ++nsplit;
                if (nsplit == 0) continue;
                if (is_green(c)) {
                    // A green touched by new refinement is promoted: undo the
                    // bisection and red-split the parent instead.
                    red_split(recombine(c));
                    changed = true;
                } else if (nsplit >= 2) {
                    red_split(c);
                    changed = true;
                }
            }
            if (!changed) break;
        }
    }

    RefineResult build_result() {
        RefineResult out;
        out.old_to_new.assign(mesh_.num_triangles(), -1);
        out.mesh.vertices = vertices_;
        out.mesh.next_group = next_group_;
        for (int c = 0; c < int(cells_.size()); ++c) {
            if (!alive_[c]) continue;
            const int id = int(out.mesh.triangles.size());
            out.mesh.triangles.push_back(cells_[c].v);
            out.mesh.parents.push_back(cells_[c].parent);
            if (cells_[c].origin >= 0) out.old_to_new[cells_[c].origin] = id;
        }
        auto parents = out.mesh.parents; // finalize() may reorder vertices of a triangle
        out.mesh.finalize();
        out.mesh.parents = std::move(parents);
        return out;
    }

    const Mesh& mesh_;
    std::vector<Vec2> vertices_;
    std::map<CoordKey, int> vertex_at_;
    std::vector<Cell> cells_;
    std::vector<char> alive_;
    int next_group_ = 0;
};

} // namespace detail

inline RefineResult refine(const Mesh& m, const std::set<int>& marked) {
    if (marked.empty()) {
        RefineResult r{m, {}};
        r.old_to_new.resize(m.num_triangles());
        for (int t = 0; t < m.num_triangles(); ++t) r.old_to_new[t] = t;
        return r;
    }
    return detail::RefineWorker(m).run(marked);
}

// Best-effort coarsening: complete sibling groups whose members are all
// marked are merged back into their parent, provided no hanging vertex would
// remain. Complete green pairs are merged automatically when the red merges
// orphan their split midpoint.
inline RefineResult coarsen(const Mesh& m, const std::set<int>& marked) {
    RefineResult out;
    out.old_to_new.assign(m.num_triangles(), -1);

    std::map<int, std::vector<int>> groups;
    for (int t = 0; t < m.num_triangles(); ++t)
        if (m.parents[t]) groups[m.parents[t]->group].push_back(t);

    struct Group {
        std::vector<int> members;
        std::array<int, 3> parent_verts{};
        std::vector<int> midpoints; // child vertices not in the parent triple
        RefineKind kind;
    };
    std::map<int, Group> complete;
    for (auto& [gid, members] : groups) {
        const auto& par = *m.parents[members[0]];
        const std::size_t want = par.kind == RefineKind::red ? 4 : 2;
        if (members.size() != want) continue;
        Group g;
        g.members = members;
        g.parent_verts = par.verts;
        g.kind = par.kind;
        std::set<int> pv(par.verts.begin(), par.verts.end());
        std::set<int> mids;
        for (int t : members)
            for (int v : m.triangles[t])
                if (!pv.count(v)) mids.insert(v);
        g.midpoints.assign(mids.begin(), mids.end());
        complete[gid] = g;
    }

    std::set<int> selected;
    for (auto& [gid, g] : complete) {
        bool all = true;
        for (int t : g.members)
            if (!marked.count(t)) all = false;
        if (all) selected.insert(gid);
    }

    std::vector<std::vector<int>> users(m.vertices.size());
    for (int t = 0; t < m.num_triangles(); ++t)
        for (int v : m.triangles[t]) users[v].push_back(t);
    std::map<int, int> group_of; // triangle -> complete group id
    for (auto& [gid, g] : complete)
        for (int t : g.members) group_of[t] = gid;

    auto merged_set = [&]() {
        std::set<int> s;
        for (int gid : selected)
            for (int t : complete[gid].members) s.insert(t);
        return s;
    };

    // Phase 1: pull in complete green pairs whose split midpoint would be
    // orphaned by the selected merges.
    for (bool grew = true; grew;) {
        grew = false;
        const std::set<int> merged = merged_set();
        for (int gid : std::vector<int>(selected.begin(), selected.end())) {
            for (int mv : complete[gid].midpoints) {
                for (int user : users[mv]) {
                    if (merged.count(user)) continue;
                    const auto git = group_of.find(user);
                    if (git == group_of.end() || selected.count(git->second)) continue;
                    const Group& ug = complete[git->second];
                    if (ug.kind == RefineKind::green && ug.midpoints == std::vector<int>{mv}) {
                        selected.insert(git->second);
                        grew = true;
                    }
                }
            }
        }
    }
    // Phase 2: drop groups whose merge would leave a hanging midpoint.
    for (bool shrunk = true; shrunk;) {
        shrunk = false;
        const std::set<int> merged = merged_set();
        for (int gid : std::vector<int>(selected.begin(), selected.end())) {
            bool ok = true;
            for (int mv : complete[gid].midpoints)
                for (int user : users[mv])
                    if (!merged.count(user)) ok = false;
            if (!ok) {
                selected.erase(gid);
                shrunk = true;
            }
        }
    }

    // Materialize: drop merged triangles, add parents, compact vertices.
    std::set<int> merged_tris;
    for (int gid : selected)
        for (int t : complete[gid].members) merged_tris.insert(t);

    std::vector<std::array<int, 3>> new_tris;
    std::vector<std::optional<MeshParent>> new_parents;
    for (int t = 0; t < m.num_triangles(); ++t) {
        if (merged_tris.count(t)) continue;
        out.old_to_new[t] = int(new_tris.size());
        new_tris.push_back(m.triangles[t]);
        new_parents.push_back(m.parents[t]);
    }
    for (int gid : selected) {
        new_tris.push_back(complete[gid].parent_verts);
        new_parents.push_back(std::nullopt);
    }

    std::vector<int> vmap(m.vertices.size(), -1);
    Mesh nm;
    for (auto& tri : new_tris) {
        for (int& v : tri) {
            if (vmap[v] == -1) {
                vmap[v] = nm.num_vertices();
                nm.vertices.push_back(m.vertices[v]);
            }
            v = vmap[v];
        }
    }
    nm.triangles = std::move(new_tris);
    nm.parents = std::move(new_parents);
    for (auto& p : nm.parents) {
        if (!p) continue;
        bool valid = true;
        for (int& v : p->verts) {
            if (vmap[v] == -1) valid = false;
            else v = vmap[v];
        }
        if (!valid) p.reset(); // parent vertices vanished; genealogy unusable
    }
    nm.next_group = m.next_group;
    auto parents = nm.parents;
    nm.finalize();
    nm.parents = std::move(parents);
    out.mesh = std::move(nm);
    return out;
}

} // namespace platefem

#endif
