// Fixed-point solution of Delta^2 u + lambda |u|^{2p} u = f: each step
// freezes the weight |u_n|^{2p} and solves the SPD linear problem
//   int Delta u_{n+1} Delta v + lambda int |u_n|^{2p} u_{n+1} v = <f, v>
// with clamped boundary conditions. CG warm-starts from the previous iterate
// so the increments can contract down to the machine floor.
#ifndef PLATEFEM_SOLVER_HPP
#define PLATEFEM_SOLVER_HPP

#include <cmath>
#include <functional>
#include <optional>
#include <vector>

#include "platefem/assembly.hpp"
#include "platefem/estimators.hpp"
#include "platefem/norms.hpp"

namespace platefem {

enum class StopMode { classic, indicator, absolute };

struct SolverConfig {
    double lambda = 1e4;
    double p = 1.0;
    ElementKind kind = ElementKind::hct_c;
    double u0 = 0.0069;          // constant initial guess
    StopMode stop = StopMode::classic;
    double tol = 1e-7;           // classic: err_L threshold
    double gamma = 1e-5;         // indicator: eta_L <= gamma * eta_D
    double tol_abs = 1e-5;       // indicator/absolute: eta_L <= tol_abs
    int max_iter = 100;
    double cg_tol = 1e-12;
    int cg_max_iter = 60000;
    EstimatorVariant variant = EstimatorVariant::paper;
    bool track_eta = false;      // record indicators even under classic stop
    double divergence_limit = 1e6;
};

enum class StopCause { converged, diverged, max_iter };

inline const char* stop_cause_name(StopCause c) {
    switch (c) {
        case StopCause::converged: return "converged";
        case StopCause::diverged: return "diverged";
        case StopCause::max_iter: return "max_iter";
    }
    return "?";
}

struct IterationRecord {
    int iter = 0;
    double err_L = 0.0;   // |u_{n+1} - u_n|_{2,Omega}
    double q = 0.0;       // err_L(n) / err_L(n-1), 0 on the first step
    double eta_D = -1.0;  // -1 when not computed
    double eta_L = -1.0;
};

struct SolveReport {
    std::vector<IterationRecord> iterations;
    StopCause cause = StopCause::max_iter;
    long cg_iterations_total = 0;

    bool diverged() const { return cause != StopCause::converged; }
    double final_err_L() const {
        return iterations.empty() ? 0.0 : iterations.back().err_L;
    }
};

struct SolveResult {
    Field u;       // final iterate
    Field u_prev;  // iterate before the final one (for indicator evaluation)
    SolveReport report;
};

// One frozen-coefficient step; standalone version that assembles everything.
inline Field fixed_point_step(const DofMap& dm, const SolverConfig& cfg, const Field& u_n,
                              const std::function<double(Vec2)>& f) {
    SparseSymMatrix A = assemble_stiffness(dm);
    const SparseSymMatrix M = assemble_weighted_mass(dm, u_n, cfg.lambda, cfg.p);
    SparseSymMatrix S = A.plus(M);
    std::vector<double> b = assemble_load(dm, f);
    apply_clamped_bc(S, b, dm);
    Field out;
    out.kind = cfg.kind;
    out.coef = solve_spd(S, b, cfg.cg_tol, cfg.cg_max_iter, &u_n.coef).x;
    return out;
}

inline SolveResult fixed_point_solve(const DofMap& dm, const SolverConfig& cfg,
                                     const std::function<double(Vec2)>& f,
                                     const Field* u_init = nullptr) {
    SolveResult res;
    const SparseSymMatrix A = assemble_stiffness(dm);
    const std::vector<double> b0 = assemble_load(dm, f);

    Field u = u_init ? *u_init : constant_field(dm, cfg.u0);
    Field u_prev = u;
    res.report.cause = StopCause::max_iter;

    int grow_streak = 0;
    double prev_err = -1.0;
    std::vector<double> warm(dm.size(), 0.0);

    for (int it = 1; it <= cfg.max_iter; ++it) {
        SparseSymMatrix S = A.plus(assemble_weighted_mass(dm, u, cfg.lambda, cfg.p));
        std::vector<double> b = b0;
        apply_clamped_bc(S, b, dm);
        Field u_next;
        u_next.kind = cfg.kind;
        try {
            CgResult cg = solve_spd(S, b, cfg.cg_tol, cfg.cg_max_iter, &warm);
            res.report.cg_iterations_total += cg.iterations;
            u_next.coef = std::move(cg.x);
        } catch (const CgFailure&) {
            res.report.cause = StopCause::diverged;
            break;
        }
        warm = u_next.coef;

        IterationRecord rec;
        rec.iter = it;
        rec.err_L = h2_seminorm_diff(dm, u_next, u);
        rec.q = prev_err > 0.0 ? rec.err_L / prev_err : 0.0;

        const bool need_eta =
            cfg.stop == StopMode::indicator || cfg.stop == StopMode::absolute || cfg.track_eta;
        if (need_eta) {
            const Indicators ind =
                compute_indicators(dm, u_next, u, f, cfg.lambda, cfg.p, cfg.variant);
            rec.eta_D = ind.eta_D_global;
            rec.eta_L = ind.eta_L_global;
        }
        res.report.iterations.push_back(rec);

        u_prev = u;
        u = u_next;

        bool stop = false;
        switch (cfg.stop) {
            case StopMode::classic:
                stop = rec.err_L <= cfg.tol;
                break;
            case StopMode::indicator:
                stop = rec.eta_L <= cfg.gamma * rec.eta_D || rec.eta_L <= cfg.tol_abs;
                break;
            case StopMode::absolute:
                stop = rec.eta_L <= cfg.tol_abs;
                break;
        }
        if (stop) {
            res.report.cause = StopCause::converged;
            break;
        }
        if (rec.err_L > cfg.divergence_limit) {
            res.report.cause = StopCause::diverged;
            break;
        }
        grow_streak = (prev_err >= 0.0 && rec.err_L > prev_err) ? grow_streak + 1 : 0;
        if (grow_streak >= 3) {
            res.report.cause = StopCause::diverged;
            break;
        }
        prev_err = rec.err_L;
    }
    res.u = std::move(u);
    res.u_prev = std::move(u_prev);
    return res;
}

} // namespace platefem

#endif
