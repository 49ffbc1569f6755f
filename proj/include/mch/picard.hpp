#pragma once

#include <limits>
#include <vector>

#include "mch/littlewood_paley.hpp"
#include "mch/solver.hpp"

namespace mch {

/// Convergence record of the iterative scheme: per-iterate norm samples
/// Gamma^n(t) (Besov surrogate H^s) on the step mesh, and successive-difference
/// norms in the weaker H^{s-1} surrogate.
struct PicardTrace {
    std::vector<std::vector<double>> iterate_norms;
    std::vector<double> successive_diff;
    bool converged = false;
    int iterations = 0;
};

struct PicardResult {
    std::vector<State> trajectory;  // step-mesh samples of the final iterate
    PicardTrace trace;
};

/// Iterative construction of the solution on one window [0, t_end]: iterate
/// zero vanishes identically, and iterate n+1 solves the linear transport
/// system with advecting field u^n and sources F1(u^n, gamma^n), F2(u^n,
/// gamma^n), started from the low-frequency cut-off data S_{n+1} u0, S_{n+1}
/// gamma0. Substeps freeze coefficients at the average of the stored endpoint
/// samples of the previous iterate (iterates live on a dt/2 mesh).
inline PicardResult picard_solve(const State& s0, const SolverConfig& cfg) {
    cfg.validate();
    const Grid& grid = s0.grid();
    const int steps = static_cast<int>(std::llround(cfg.t_end / cfg.dt));
    const int fine = 2 * steps;  // half-step mesh
    const double h = steps > 0 ? cfg.t_end / fine : 0.0;

    struct Sample {
        VectorField u;
        Field gamma;
    };
    std::vector<Sample> prev(fine + 1, Sample{VectorField(grid), Field(grid)});
    PicardResult result;

    auto surrogate_norm = [&](const Sample& a) {
        return sobolev_norm(a.u, cfg.sobolev_s) + sobolev_norm(a.gamma, cfg.sobolev_s);
    };
    auto diff_norm = [&](const Sample& a, const Sample& b) {
        VectorField du = a.u - b.u;
        return sobolev_norm(du, cfg.sobolev_s - 1.0) +
               sobolev_norm(a.gamma - b.gamma, cfg.sobolev_s - 1.0);
    };

    int grew = 0;
    std::vector<Sample> cur;
    for (int iterate = 1; iterate <= cfg.picard_depth; ++iterate) {
        // sources from the previous iterate, on the whole fine mesh
        std::vector<StateRhs> source;
        source.reserve(fine + 1);
        for (int j = 0; j <= fine; ++j) {
            State sj(prev[j].u, prev[j].gamma, j * h);
            source.push_back({compute_F1(sj), compute_F2(sj)});
        }

        cur.assign(fine + 1, Sample{VectorField(grid), Field(grid)});
        cur[0] = {lp_lowpass(s0.u, iterate), lp_lowpass(s0.gamma, iterate)};
        for (int j = 0; j < fine; ++j) {
            VectorField v = 0.5 * (prev[j].u + prev[j + 1].u);
            VectorField rhs_u = 0.5 * (source[j].du + source[j + 1].du);
            Field rhs_g = 0.5 * (source[j].dgamma + source[j + 1].dgamma);
            cur[j + 1].u = transport_substep(cur[j].u, v, rhs_u, h);
            cur[j + 1].gamma = transport_substep(cur[j].gamma, v, rhs_g, h);
            if (!all_finite(cur[j + 1].u) || !all_finite(cur[j + 1].gamma))
                throw PicardDivergenceError(
                    "picard_solve: iterate produced non-finite samples; try a smaller t_end");
        }

        std::vector<double> norms;
        for (int j = 0; j <= fine; j += 2) norms.push_back(surrogate_norm(cur[j]));
        result.trace.iterate_norms.push_back(std::move(norms));

        double diff = 0.0;
        for (int j = 0; j <= fine; ++j) diff = std::max(diff, diff_norm(cur[j], prev[j]));
        result.trace.successive_diff.push_back(diff);
        result.trace.iterations = iterate;

        if (result.trace.successive_diff.size() >= 2) {
            const auto& sd = result.trace.successive_diff;
            grew = diff > sd[sd.size() - 2] ? grew + 1 : 0;
            if (grew >= 3)
                throw PicardDivergenceError(
                    "picard_solve: successive differences grew for 3 iterates; try a smaller t_end");
        }

        prev.swap(cur);
        if (diff < cfg.picard_tol) {
            result.trace.converged = true;
            break;
        }
    }

    result.trajectory.reserve(steps + 1);
    for (int j = 0; j <= fine; j += 2)
        result.trajectory.emplace_back(prev[j].u, prev[j].gamma, s0.time + j * h);
    if (steps == 0) result.trajectory.assign(1, s0);
    return result;
}

/// Advisory existence-time estimate T = 1 / (4 C^2 (||u0|| + ||gamma0||)) in the
/// working Besov-surrogate norm; infinite for zero data.
struct ExistenceTimeEstimate {
    double c_cal = 1.0;
    double initial_norm = 0.0;
    double t_est = 0.0;
};

inline ExistenceTimeEstimate estimate_existence_time(const State& s0, double c_cal,
                                                     double sobolev_s = 3.0) {
    if (!(c_cal > 0.0))
        throw std::invalid_argument("estimate_existence_time: calibrated constant must be positive");
    ExistenceTimeEstimate est;
    est.c_cal = c_cal;
    est.initial_norm = sobolev_norm(s0.u, sobolev_s) + sobolev_norm(s0.gamma, sobolev_s);
    est.t_est = est.initial_norm > 0.0
                    ? 1.0 / (4.0 * c_cal * c_cal * est.initial_norm)
                    : std::numeric_limits<double>::infinity();
    return est;
}

}  // namespace mch
