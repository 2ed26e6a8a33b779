// Field export: legacy VTK unstructured grid with each HCT subtriangle
// subsampled for display, plus a flat (x, y, u) CSV.
#ifndef PLATEFEM_EXPORT_HPP
#define PLATEFEM_EXPORT_HPP

#include <fstream>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "platefem/field.hpp"

namespace platefem {

struct SamplePoint {
    Vec2 p;
    double u;
};

// Subdivides each HCT subtriangle `level` times per edge and samples there.
inline void sample_field(const DofMap& dm, const Field& f, int level,
                         std::vector<SamplePoint>& points, std::vector<std::array<int, 3>>& cells) {
    points.clear();
    cells.clear();
    const Mesh& m = dm.mesh();
    const int s = std::max(1, level);
    for (int t = 0; t < m.num_triangles(); ++t) {
        const ElementField u(dm, f, t);
        const auto subs = hct_split(m, t);
        for (int sub = 0; sub < 3; ++sub) {
            const int base = int(points.size());
            // lattice of barycentric points on the subtriangle
            for (int i = 0; i <= s; ++i) {
                for (int j = 0; j <= s - i; ++j) {
                    const double l1 = double(i) / s, l2 = double(j) / s;
                    const Vec2 p = subs[sub][0] * (1.0 - l1 - l2) + subs[sub][1] * l1 +
                                   subs[sub][2] * l2;
                    const auto lam = u.element().barycentric(p);
                    points.push_back({p, u.value(lam, sub)});
                }
            }
            auto idx = [&](int i, int j) {
                // row-major over (i, j), rows shrink with i
                int off = 0;
                for (int k = 0; k < i; ++k) off += s + 1 - k;
                return base + off + j;
            };
            for (int i = 0; i < s; ++i) {
                for (int j = 0; j < s - i; ++j) {
                    cells.push_back({idx(i, j), idx(i + 1, j), idx(i, j + 1)});
                    if (j < s - i - 1)
                        cells.push_back({idx(i + 1, j), idx(i + 1, j + 1), idx(i, j + 1)});
                }
            }
        }
    }
}

inline void write_vtk(const DofMap& dm, const Field& f, std::ostream& os, int level = 2) {
    std::vector<SamplePoint> pts;
    std::vector<std::array<int, 3>> cells;
    sample_field(dm, f, level, pts, cells);
    os.precision(17);
    os << "# vtk DataFile Version 3.0\n"
       << "platefem field\n"
       << "ASCII\n"
       << "DATASET UNSTRUCTURED_GRID\n"
       << "POINTS " << pts.size() << " double\n";
    for (const auto& sp : pts) os << sp.p.x << ' ' << sp.p.y << " 0\n";
    os << "CELLS " << cells.size() << ' ' << 4 * cells.size() << '\n';
    for (const auto& c : cells) os << "3 " << c[0] << ' ' << c[1] << ' ' << c[2] << '\n';
    os << "CELL_TYPES " << cells.size() << '\n';
    for (std::size_t i = 0; i < cells.size(); ++i) os << "5\n";
    os << "POINT_DATA " << pts.size() << "\nSCALARS u double 1\nLOOKUP_TABLE default\n";
    for (const auto& sp : pts) os << sp.u << '\n';
}

inline void write_samples_csv(const DofMap& dm, const Field& f, std::ostream& os, int level = 2) {
    std::vector<SamplePoint> pts;
    std::vector<std::array<int, 3>> cells;
    sample_field(dm, f, level, pts, cells);
    os.precision(17);
    os << "x,y,u\n";
    for (const auto& sp : pts) os << sp.p.x << ',' << sp.p.y << ',' << sp.u << '\n';
}

inline void export_field(const DofMap& dm, const Field& f, const std::string& path_prefix,
                         int level = 2) {
    std::ofstream vtk(path_prefix + ".vtk");
    if (!vtk) throw std::runtime_error("export_field: cannot write " + path_prefix + ".vtk");
    write_vtk(dm, f, vtk, level);
    std::ofstream csv(path_prefix + ".csv");
    if (!csv) throw std::runtime_error("export_field: cannot write " + path_prefix + ".csv");
    write_samples_csv(dm, f, csv, level);
}

} // namespace platefem

#endif
