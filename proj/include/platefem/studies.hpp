// Convergence studies and the lambda/p and h sweeps, with CSV emission.
#ifndef PLATEFEM_STUDIES_HPP
#define PLATEFEM_STUDIES_HPP

#include <cmath>
#include <future>
#include <sstream>
#include <string>
#include <vector>

#include "platefem/adaptivity.hpp"
#include "platefem/solver.hpp"

namespace platefem {

// Least-squares slope of log(err) against log(h).
inline double fit_loglog_slope(const std::vector<double>& h, const std::vector<double>& err) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int n = 0;
    for (std::size_t i = 0; i < h.size(); ++i) {
        if (!(err[i] > 0.0)) continue;
        const double x = std::log(h[i]), y = std::log(err[i]);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        ++n;
    }
    if (n < 2) return 0.0;
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

struct ConvergenceRow {
    double h = 0.0;       // grid cell size 1/n
    int n_triangles = 0;  // macro triangles
    int n_cells = 0;      // HCT subtriangles
    int dofs = 0;
    double err_L2 = -1.0, err_H2 = -1.0;
    double eta_D = -1.0, eta_L = -1.0;
    bool div = false;
};

struct ConvergenceReport {
    std::vector<ConvergenceRow> rows;
    double slope_L2 = 0.0, slope_H2 = 0.0;
};

inline ConvergenceRow solve_on_grid(int n, const ManufacturedCase& mcase,
                                    const SolverConfig& cfg, bool with_eta) {
    ConvergenceRow row;
    row.h = 1.0 / n;
    const Mesh mesh = make_square_mesh(n);
    const DofMap dm(mesh, cfg.kind);
    row.n_triangles = mesh.num_triangles();
    row.n_cells = 3 * mesh.num_triangles();
    row.dofs = dm.size();
    const auto f = mcase.forcing(cfg.lambda, cfg.p);
    const SolveResult sol = fixed_point_solve(dm, cfg, f);
    if (sol.report.diverged()) {
        row.div = true;
        return row;
    }
    const auto [l2, h2] = error_norms(dm, sol.u, mcase);
    row.err_L2 = l2;
    row.err_H2 = h2;
    if (with_eta) {
        const Indicators ind =
            compute_indicators(dm, sol.u, sol.u_prev, f, cfg.lambda, cfg.p, cfg.variant);
        row.eta_D = ind.eta_D_global;
        row.eta_L = ind.eta_L_global;
    }
    return row;
}

inline ConvergenceReport convergence_study(const ManufacturedCase& mcase,
                                           const std::vector<int>& grids,
                                           const SolverConfig& cfg, bool with_eta = false) {
    if (grids.size() < 3)
        throw std::invalid_argument("convergence_study: need at least 3 meshes");
    ConvergenceReport rep;
    for (int n : grids) rep.rows.push_back(solve_on_grid(n, mcase, cfg, with_eta));
    std::vector<double> hs, l2s, h2s;
    for (const auto& r : rep.rows) {
        if (r.div) continue;
        hs.push_back(r.h);
        l2s.push_back(r.err_L2);
        h2s.push_back(r.err_H2);
    }
    std::vector<double> hs2 = hs;
    rep.slope_L2 = fit_loglog_slope(hs, l2s);
    rep.slope_H2 = fit_loglog_slope(hs2, h2s);
    return rep;
}

inline std::string convergence_csv(const ConvergenceReport& rep) {
    std::ostringstream os;
    os.precision(17);
    os << "h,n_t,cells,dofs,err_L2,err_H2,eta_D,eta_L\n";
    for (const auto& r : rep.rows) {
        os << r.h << ',' << r.n_triangles << ',' << r.n_cells << ',' << r.dofs << ',';
        if (r.div) os << "div,div,div,div\n";
        else {
            os << r.err_L2 << ',' << r.err_H2 << ',';
            if (r.eta_D >= 0) os << r.eta_D << ',' << r.eta_L << '\n';
            else os << ",\n";
        }
    }
    os << "# slope_L2 = " << rep.slope_L2 << ", slope_H2 = " << rep.slope_H2 << '\n';
    return os.str();
}

// err_H2 over the lambda x p grid of the fixed-point robustness sweep;
// divergent runs are recorded as the literal string "div".
inline std::string run_table_tab2(int grid_n = 8, int max_iter = 400,
                                  ElementKind kind = ElementKind::hct_c) {
    const std::vector<double> lambdas = {1e-1, 1e2, 1e3, 1e4, 1e5, 1e6, 1e7, 1e8, 1e9, 1e10};
    const std::vector<double> ps = {1, 2, 3, 10};
    const ManufacturedCase mcase = poly_case();

    struct Cell {
        bool div = false;
        double err = 0.0;
    };
    std::vector<std::future<Cell>> futures;
    for (double lambda : lambdas) {
        for (double p : ps) {
            futures.push_back(std::async(std::launch::async, [=] {
                SolverConfig cfg;
                cfg.kind = kind;
                cfg.lambda = lambda;
                cfg.p = p;
                cfg.stop = StopMode::classic;
                cfg.tol = 1e-7;
                cfg.max_iter = max_iter;
                Cell c;
                const ConvergenceRow row = solve_on_grid(grid_n, mcase, cfg, false);
                c.div = row.div;
                c.err = row.err_H2;
                return c;
            }));
        }
    }
    std::ostringstream os;
    os.precision(17);
    os << "lambda";
    for (double p : ps) os << ",p=" << p;
    os << '\n';
    std::size_t k = 0;
    for (double lambda : lambdas) {
        os << lambda;
        for (std::size_t j = 0; j < ps.size(); ++j) {
            const Cell c = futures[k++].get();
            if (c.div) os << ",div";
            else os << ',' << c.err;
        }
        os << '\n';
    }
    return os.str();
}

// err_H2, eta_D, eta_L and the effectivity index over a mesh-size sweep for
// the sine case at lambda = 1e6, p = 1.
inline std::string run_table_tab5(const std::vector<int>& grids = {4, 5, 8, 16},
                                  EstimatorVariant variant = EstimatorVariant::paper,
                                  ElementKind kind = ElementKind::hct_c) {
    std::ostringstream os;
    os.precision(17);
    os << "h,err_H2,eta_D,eta_L,effectivity\n";
    const ManufacturedCase mcase = sine_case();
    for (int n : grids) {
        SolverConfig cfg;
        cfg.kind = kind;
        cfg.lambda = 1e6;
        cfg.p = 1.0;
        cfg.stop = StopMode::indicator;
        cfg.gamma = 1e-5;
        cfg.tol_abs = 0.0;
        cfg.max_iter = 200;
        cfg.variant = variant;
        const ConvergenceRow row = solve_on_grid(n, mcase, cfg, true);
        os << 1.0 / n << ',';
        if (row.div) {
            os << "div,div,div,div\n";
            continue;
        }
        const double eff =
            std::sqrt(row.eta_D * row.eta_D + row.eta_L * row.eta_L) / row.err_H2;
        os << row.err_H2 << ',' << row.eta_D << ',' << row.eta_L << ',' << eff << '\n';
    }
    return os.str();
}

} // namespace platefem

#endif
