#pragma once

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <optional>
#include <thread>
#include <vector>

#include "mch/config.hpp"
#include "mch/diagnostics.hpp"
#include "mch/picard.hpp"
#include "mch/snapshot.hpp"
#include "mch/solver.hpp"

namespace mch {

inline std::string format_g17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

struct SimulationOutcome {
    enum class Status { completed, steepening_alert, blowup_suspected, cfl_violation, diverged };
    Status status = Status::completed;
    SteepeningAlert alert;
    std::vector<DiagnosticsRecord> trace;  // includes the t = 0 record
    State final_state;
    std::string message;
};

/// Method-of-lines run on the nonlocal form. The observer fires after every
/// completed step with the new state and its diagnostics record.
inline SimulationOutcome simulate(
    const State& s0, const SolverConfig& cfg, double steepening_ratio,
    const std::function<void(const State&, const DiagnosticsRecord&)>& on_step = {}) {
    cfg.validate();
    SimulationOutcome out;
    out.final_state = s0;
    out.trace.push_back(record(s0, nullptr, cfg.sobolev_s));

    auto observe = [&](const State& s) {
        out.trace.push_back(record(s, &out.trace.back(), cfg.sobolev_s));
        if (on_step) on_step(s, out.trace.back());
        if (!std::isinf(steepening_ratio)) {
            const auto& first = out.trace.front();
            const auto& last = out.trace.back();
            if (last.linf_grad_u > steepening_ratio * first.linf_grad_u &&
                last.linf_u <= 2.0 * first.linf_u) {
                out.alert = {true, last.time, "linf_grad_u", steepening_ratio};
                return true;
            }
        }
        return false;
    };

    try {
        if (cfg.scheme == Scheme::picard) {
            PicardResult pr = picard_solve(s0, cfg);
            for (std::size_t i = 1; i < pr.trajectory.size(); ++i) {
                out.final_state = pr.trajectory[i];
                if (observe(pr.trajectory[i])) {
                    out.status = SimulationOutcome::Status::steepening_alert;
                    return out;
                }
            }
            if (!pr.trajectory.empty()) out.final_state = pr.trajectory.back();
        } else {
            const long steps = std::lround(cfg.t_end / cfg.dt);
            State s = s0;
            for (long k = 0; k < steps; ++k) {
                check_cfl(s, cfg.dt, cfg.cfl_guard);
                s = step_rk4(s, cfg.dt);
                out.final_state = s;
                if (observe(s)) {
                    out.status = SimulationOutcome::Status::steepening_alert;
                    return out;
                }
            }
        }
    } catch (const BlowupSuspectedError& e) {
        out.status = SimulationOutcome::Status::blowup_suspected;
        out.final_state = e.last_valid;
        out.message = e.what();
    } catch (const CflViolationError& e) {
        out.status = SimulationOutcome::Status::cfl_violation;
        out.message = e.what();
    } catch (const PicardDivergenceError& e) {
        out.status = SimulationOutcome::Status::diverged;
        out.message = e.what();
    }
    return out;
}

namespace detail {

inline constexpr const char* kTrajectoryHeader =
    "time,H,linf_u,linf_grad_u,linf_gamma,linf_grad_gamma,sobolev_s_norm,"
    "blowup_integral_T13,blowup_integral_T14,blowup_integral_T15\n";

inline std::string trajectory_row(const DiagnosticsRecord& r) {
    std::string row = format_g17(r.time);
    for (double v : {r.energy, r.linf_u, r.linf_grad_u, r.linf_gamma, r.linf_grad_gamma,
                     r.sobolev_norm, r.integral_t13, r.integral_t14, r.integral_t15})
        row += "," + format_g17(v);
    row += "\n";
    return row;
}

inline void write_state_snapshot(const std::string& path, const State& s) {
    std::vector<const Field*> comps;
    for (const auto& f : s.u.comp) comps.push_back(&f);
    comps.push_back(&s.gamma);
    snapshot::write(path, s.grid(), comps);
}

inline std::string snapshot_path(const std::string& dir, long step) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "snapshot_%06ld.mchf", step);
    return dir + "/" + buf;
}

}  // namespace detail

inline State make_initial_state(const RunConfig& rc) {
    return State(make_vector_initial(rc.grid, rc.initial_u),
                 make_scalar_initial(rc.grid, rc.initial_gamma));
}

/// Full configured run: trajectory CSV (one row per completed step) plus
/// snapshots at the configured stride, all under rc.out_dir.
inline SimulationOutcome run_simulation(const RunConfig& rc) {
    std::filesystem::create_directories(rc.out_dir);
    const State s0 = make_initial_state(rc);
    std::ofstream csv(rc.out_dir + "/trajectory.csv", std::ios::binary);
    if (!csv) throw std::runtime_error("cannot open trajectory CSV under " + rc.out_dir);
    csv << detail::kTrajectoryHeader;
    detail::write_state_snapshot(detail::snapshot_path(rc.out_dir, 0), s0);

    long step = 0;
    auto on_step = [&](const State& s, const DiagnosticsRecord& r) {
        ++step;
        csv << detail::trajectory_row(r);
        if (rc.stride > 0 && step % rc.stride == 0)
            detail::write_state_snapshot(detail::snapshot_path(rc.out_dir, step), s);
    };
    SimulationOutcome out = simulate(s0, rc.solver, rc.steepening_ratio, on_step);
    csv.flush();
    return out;
}

/// One row of a blow-up scan table.
struct ScanRow {
    double amplitude = 0.0;
    std::string status;
    double alert_time = std::numeric_limits<double>::quiet_NaN();
    double final_i13 = 0.0;
    double final_i14 = 0.0;
    double final_i15 = 0.0;
};

inline const char* to_string(SimulationOutcome::Status s) {
    switch (s) {
        case SimulationOutcome::Status::completed: return "completed";
        case SimulationOutcome::Status::steepening_alert: return "alert";
        case SimulationOutcome::Status::blowup_suspected: return "blowup_suspected";
        case SimulationOutcome::Status::cfl_violation: return "cfl_violation";
        case SimulationOutcome::Status::diverged: return "diverged";
    }
    return "unknown";
}

inline int scan_worker_count(std::size_t jobs) {
    int workers = 1;
    if (const char* env = std::getenv("MCH_THREADS")) {
        workers = std::max(1, std::atoi(env));
    }
    return static_cast<int>(std::min<std::size_t>(workers, jobs));
}

/// Runs the configured initial-data family across scan amplitudes (each scales
/// the profile amplitudes) and tabulates the final blow-up integrals and alert
/// times. Solver failures become table rows, not aborts. Workers are capped by
/// MCH_THREADS; results are ordered by amplitude index regardless.
inline std::vector<ScanRow> blowup_scan(const RunConfig& rc) {
    if (rc.scan_amplitudes.empty())
        throw ConfigError("blowup_scan: empty amplitude list (scan.amplitudes)");
    std::vector<ScanRow> rows(rc.scan_amplitudes.size());
    auto run_one = [&](std::size_t i) {
        RunConfig member = rc;
        member.initial_u.amplitude *= rc.scan_amplitudes[i];
        member.initial_gamma.amplitude *= rc.scan_amplitudes[i];
        ScanRow row;
        row.amplitude = rc.scan_amplitudes[i];
        try {
            const State s0 = make_initial_state(member);
            const SimulationOutcome out = simulate(s0, member.solver, member.steepening_ratio);
            row.status = to_string(out.status);
            if (out.alert.triggered) row.alert_time = out.alert.time;
            row.final_i13 = out.trace.back().integral_t13;
            row.final_i14 = out.trace.back().integral_t14;
            row.final_i15 = out.trace.back().integral_t15;
        } catch (const std::exception&) {
            row.status = "error";
        }
        rows[i] = row;
    };

    const int workers = scan_worker_count(rows.size());
    if (workers <= 1) {
        for (std::size_t i = 0; i < rows.size(); ++i) run_one(i);
    } else {
        std::vector<std::thread> pool;
        for (int w = 0; w < workers; ++w)
            pool.emplace_back([&, w] {
                for (std::size_t i = w; i < rows.size(); i += static_cast<std::size_t>(workers))
                    run_one(i);
            });
        for (auto& t : pool) t.join();
    }
    return rows;
}

inline std::string scan_table_csv(const std::vector<ScanRow>& rows) {
    std::string out = "amplitude,status,alert_time,final_I13,final_I14,final_I15\n";
    for (const auto& r : rows) {
        out += format_g17(r.amplitude) + "," + r.status + "," + format_g17(r.alert_time) + "," +
               format_g17(r.final_i13) + "," + format_g17(r.final_i14) + "," +
               format_g17(r.final_i15) + "\n";
    }
    return out;
}

}  // namespace mch
