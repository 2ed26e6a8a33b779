// Adaptive loop: solve with indicator stopping, mark by mean-based
// thresholds, coarsen + refine, transfer the solution, repeat until the
// global discretization indicator drops below the tolerance.
#ifndef PLATEFEM_ADAPTIVITY_HPP
#define PLATEFEM_ADAPTIVITY_HPP

#include <memory>
#include <numeric>
#include <set>
#include <vector>

#include "platefem/refine.hpp"
#include "platefem/solver.hpp"

namespace platefem {

struct AdaptConfig {
    double epsilon = 1e-3;      // stop when global eta_D <= epsilon
    double alpha_refine = 1.5;  // refine where eta_D_K > alpha * mean
    double beta_coarsen = 0.1;  // coarsen where eta_D_K < beta * mean
    int max_rounds = 3;
    SolverConfig inner;
    bool restart_from_u0 = false; // otherwise transfer the previous solution
};

struct MarkSets {
    std::set<int> refine, coarsen;
};

inline MarkSets mark(const std::vector<double>& eta_D, double alpha_refine,
                     double beta_coarsen) {
    if (eta_D.empty()) throw std::invalid_argument("mark: empty indicator set");
    const double mean =
        std::accumulate(eta_D.begin(), eta_D.end(), 0.0) / double(eta_D.size());
    MarkSets out;
    for (int t = 0; t < int(eta_D.size()); ++t) {
        if (eta_D[t] > alpha_refine * mean) out.refine.insert(t);
        else if (eta_D[t] < beta_coarsen * mean) out.coarsen.insert(t);
    }
    return out;
}

struct AdaptRound {
    int round = 0;
    int n_triangles = 0;  // macro triangles
    int n_cells = 0;      // HCT subtriangles (3 per macro triangle)
    int dofs = 0;
    double eta_D = 0.0, eta_L = 0.0;
    double err_H2 = -1.0; // filled when an exact solution is supplied
    int refined = 0, coarsened = 0;
    StopCause solver_cause = StopCause::converged;
};

struct AdaptResult {
    std::vector<Mesh> meshes;      // mesh sequence, meshes[0] = input
    std::vector<AdaptRound> rounds;
    Field final_field;             // on meshes.back()
    bool aborted = false;          // inner solver diverged
};

// Evaluates an existing field as a smooth function (for transfer).
inline SmoothFunction field_as_function(std::shared_ptr<const Mesh> mesh,
                                        std::shared_ptr<const DofMap> dm,
                                        std::shared_ptr<const Field> f) {
    auto value = [mesh, dm, f](Vec2 p) {
        const int t = locate_point(*mesh, p);
        return ElementField(*dm, *f, t).value_at(p);
    };
    auto grad = [mesh, dm, f](Vec2 p) {
        const int t = locate_point(*mesh, p);
        return ElementField(*dm, *f, t).grad_at(p);
    };
    return {value, grad};
}

inline AdaptResult adaptive_solve(const Mesh& mesh0, const AdaptConfig& cfg,
                                  const std::function<double(Vec2)>& f,
                                  const ManufacturedCase* exact = nullptr) {
    AdaptResult out;
    auto mesh = std::make_shared<Mesh>(mesh0);
    out.meshes.push_back(*mesh);
    std::optional<Field> carried; // solution transferred from the previous round

    for (int round = 0; round < cfg.max_rounds; ++round) {
        auto dm = std::make_shared<DofMap>(*mesh, cfg.inner.kind);
        SolverConfig scfg = cfg.inner;
        if (scfg.stop == StopMode::classic) scfg.stop = StopMode::indicator;

        const Field* seed = (carried && !cfg.restart_from_u0) ? &*carried : nullptr;
        SolveResult sol = fixed_point_solve(*dm, scfg, f, seed);

        const Indicators ind =
            compute_indicators(*dm, sol.u, sol.u_prev, f, scfg.lambda, scfg.p, scfg.variant);

        AdaptRound rep;
        rep.round = round;
        rep.n_triangles = mesh->num_triangles();
        rep.n_cells = 3 * mesh->num_triangles();
        rep.dofs = dm->size();
        rep.eta_D = ind.eta_D_global;
        rep.eta_L = ind.eta_L_global;
        rep.solver_cause = sol.report.cause;
        if (exact) rep.err_H2 = error_norms(*dm, sol.u, *exact).second;

        if (sol.report.cause == StopCause::diverged) {
            out.rounds.push_back(rep);
            out.final_field = sol.u;
            out.aborted = true;
            return out;
        }

        const MarkSets marks = mark(ind.eta_D, cfg.alpha_refine, cfg.beta_coarsen);
        rep.refined = int(marks.refine.size());
        rep.coarsened = int(marks.coarsen.size());
        out.rounds.push_back(rep);
        out.final_field = sol.u;

        if (ind.eta_D_global <= cfg.epsilon || round == cfg.max_rounds - 1 ||
            (marks.refine.empty() && marks.coarsen.empty()))
            return out;

        // coarsen first (ids valid on the current mesh), then refine on the
        // coarsened mesh through the id map
        RefineResult co = coarsen(*mesh, marks.coarsen);
        std::set<int> refine2;
        for (int t : marks.refine)
            if (co.old_to_new[t] >= 0) refine2.insert(co.old_to_new[t]);
        RefineResult rf = refine(co.mesh, refine2);

        auto old_mesh = mesh;
        auto old_dm = dm;
        auto old_field = std::make_shared<Field>(sol.u);
        mesh = std::make_shared<Mesh>(std::move(rf.mesh));
        out.meshes.push_back(*mesh);

        const DofMap new_dm(*mesh, cfg.inner.kind);
        carried = interpolate(new_dm, field_as_function(old_mesh, old_dm, old_field));
    }
    return out;
}

} // namespace platefem

#endif
