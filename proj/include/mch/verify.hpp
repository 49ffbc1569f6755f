#pragma once

#include <string>
#include <vector>

#include "mch/diagnostics.hpp"
#include "mch/inequalities.hpp"
#include "mch/initial_data.hpp"
#include "mch/picard.hpp"
#include "mch/simulate.hpp"

namespace mch::verify {

struct CheckResult {
    std::string name;
    double measured = 0.0;
    double threshold = 0.0;
    bool require_at_most = true;  // false: measured must be >= threshold
    bool pass = false;
    std::string note;
};

inline CheckResult at_most(const std::string& name, double measured, double threshold,
                           const std::string& note = "") {
    return {name, measured, threshold, true, measured <= threshold, note};
}

inline CheckResult at_least(const std::string& name, double measured, double threshold,
                            const std::string& note = "") {
    return {name, measured, threshold, false, measured >= threshold, note};
}

inline bool all_pass(const std::vector<CheckResult>& results) {
    for (const auto& r : results)
        if (!r.pass) return false;
    return true;
}

// ---- shared fixtures --------------------------------------------------------

/// The documented smooth d=1 benchmark data (n = 256, L = 2*pi): Gaussian bumps
/// in u and gamma. Used by the conservation, convergence and iteration suites.
inline State smooth_benchmark_state(int n = 256) {
    const Grid g(1, n, 2.0 * std::numbers::pi);
    InitialDataSpec u_spec;
    u_spec.kind = "gaussian_bump";
    u_spec.amplitude = 1.0;
    u_spec.width = 0.08;
    u_spec.center = 0.5;
    InitialDataSpec g_spec;
    g_spec.kind = "gaussian_bump";
    g_spec.amplitude = 0.5;
    g_spec.width = 0.1;
    g_spec.center = 0.35;
    return State(make_vector_initial(g, u_spec), make_scalar_initial(g, g_spec));
}

inline State random_bandlimited_state(const Grid& g, std::uint64_t seed) {
    Rng rng(seed);
    const double beta_u = rng.uniform(1.5, 3.0);
    const double beta_g = rng.uniform(1.5, 3.0);
    return State(random_bandlimited_vector(g, beta_u, mix_seed(seed, 1)),
                 random_bandlimited(g, beta_g, mix_seed(seed, 2)));
}

// ---- suite: appendix --------------------------------------------------------

inline std::vector<CheckResult> run_appendix(int states_per_dim = 50) {
    std::vector<CheckResult> out;
    const char* ids[] = {"6-2", "6-3", "6-4", "6-5", "6-7", "6-8"};
    for (int d = 1; d <= 2; ++d) {
        const Grid g(d, d == 1 ? 256 : 64, 1.0);
        double worst_total = 0.0;
        std::map<std::string, double> worst_id;
        for (int i = 0; i < states_per_dim; ++i) {
            const State s = random_bandlimited_state(g, mix_seed(911 + d, i));
            const AppendixReport rep = appendix_consistency(s);
            worst_total = std::max(worst_total, rep.total);
            for (const auto& [id, r] : rep.per_identity)
                worst_id[id] = std::max(worst_id[id], r);
        }
        const std::string tag = "_d" + std::to_string(d);
        out.push_back(at_most("appendix_total" + tag, worst_total, 1e-8,
                              std::to_string(states_per_dim) + " random band-limited states"));
        for (const char* id : ids)
            out.push_back(at_most(std::string("appendix_") + id + tag, worst_id[id], 1e-8));
    }
    return out;
}

// ---- suite: besov -----------------------------------------------------------

inline std::vector<CheckResult> run_besov() {
    std::vector<CheckResult> out;
    // partition of unity over random fields, including non-dealiased noise
    double worst_recon = 0.0;
    for (int d = 1; d <= 2; ++d) {
        const Grid g(d, d == 1 ? 256 : 64, 1.0);
        for (int i = 0; i < 5; ++i) {
            Rng rng(mix_seed(31 + d, i));
            Field f(g);
            for (std::size_t j = 0; j < f.size(); ++j) f[j] = rng.normal();
            const LPDecomposition dec = lp_decompose(f);
            Field sum(g);
            for (const auto& b : dec.blocks) sum += b;
            worst_recon = std::max(worst_recon, l2_norm(sum - f) / l2_norm(f));
        }
    }
    out.push_back(at_most("lp_partition_of_unity", worst_recon, 1e-12));

    // single-block Besov identity on plateau-mode fields
    const Grid g1(1, 256, 1.0);
    double worst_single = 0.0;
    for (int q : {2, 3, 4}) {
        const int k = 3 * (1 << (q - 1));  // right edge of the plateau of block q
        InitialDataSpec spec;
        spec.kind = "fourier_mode";
        spec.mode = k;
        const Field f = make_scalar_initial(g1, spec);
        for (double s : {0.0, 1.5})
            for (double p : {2.0, kInf})
                for (double r : {1.0, 2.0, kInf}) {
                    const double lhs = besov_norm(f, {s, p, r});
                    const double rhs = std::pow(2.0, q * s) * lp_quadrature_norm(f, p);
                    worst_single = std::max(worst_single, std::abs(lhs - rhs) / rhs);
                }
    }
    out.push_back(at_most("single_block_identity", worst_single, 1e-12));

    // constant-free interpolation inequality on every sample
    double worst_ratio = 0.0;
    for (int i = 0; i < 40; ++i) {
        Rng rng(mix_seed(57, i));
        const Field f = random_bandlimited(g1, rng.uniform(1.5, 3.0), mix_seed(58, i));
        for (double theta : {0.25, 0.5, 0.75}) {
            const RatioSample rs = check_interpolation(f, 0.5, 2.5, theta, 2.0, 2.0);
            if (rs.valid) worst_ratio = std::max(worst_ratio, rs.ratio);
        }
    }
    out.push_back(at_most("interpolation_constant_free", worst_ratio, 1.0 + 1e-10));
    return out;
}

// ---- suite: inequalities (calibrate on seed A, assert at 2x on seed B) ------

namespace detail {

struct EnsembleSpec {
    std::string id;
    std::function<RatioSample(const Grid&, std::uint64_t)> sample;
};

inline std::vector<EnsembleSpec> inequality_specs() {
    std::vector<EnsembleSpec> specs;
    specs.push_back({"log_interpolation_2.2", [](const Grid& g, std::uint64_t seed) {
                         Rng rng(seed);
                         const Field f = random_bandlimited(g, rng.uniform(1.5, 3.0), mix_seed(seed, 3));
                         return check_log_interpolation(f, 1.0, 0.5, 2.0);
                     }});
    specs.push_back({"endpoint_corollary_2.3", [](const Grid& g, std::uint64_t seed) {
                         Rng rng(seed);
                         const Field f = random_bandlimited(g, rng.uniform(1.5, 3.0), mix_seed(seed, 3));
                         return check_log_interpolation_corollary(f, 2.0 * g.dim);
                     }});
    specs.push_back({"morse_algebra_2.4", [](const Grid& g, std::uint64_t seed) {
                         Rng rng(seed);
                         const Field f = random_bandlimited(g, rng.uniform(1.5, 3.0), mix_seed(seed, 3));
                         const Field h = random_bandlimited(g, rng.uniform(1.5, 3.0), mix_seed(seed, 4));
                         MorseParams mp;
                         mp.s = 2.0;
                         return check_morse(f, h, MorseVariant::algebra, mp);
                     }});
    specs.push_back({"morse_duality_2.5", [](const Grid& g, std::uint64_t seed) {
                         Rng rng(seed);
                         const Field f = random_bandlimited(g, rng.uniform(1.5, 3.0), mix_seed(seed, 3));
                         const Field h = random_bandlimited(g, rng.uniform(1.5, 3.0), mix_seed(seed, 4));
                         MorseParams mp;
                         mp.s1 = 0.25;
                         mp.s2 = 1.5;
                         return check_morse(f, h, MorseVariant::duality, mp);
                     }});
    specs.push_back({"morse_critical_2.6", [](const Grid& g, std::uint64_t seed) {
                         Rng rng(seed);
                         const Field f = random_bandlimited(g, rng.uniform(1.5, 3.0), mix_seed(seed, 3));
                         const Field h = random_bandlimited(g, rng.uniform(1.5, 3.0), mix_seed(seed, 4));
                         MorseParams mp;
                         mp.p = 2.0;
                         return check_morse(f, h, MorseVariant::critical, mp);
                     }});
    specs.push_back({"commutator_lemma_2.4", [](const Grid& g, std::uint64_t seed) {
                         Rng rng(seed);
                         const VectorField v =
                             random_bandlimited_vector(g, rng.uniform(1.5, 3.0), mix_seed(seed, 3));
                         const Field f = random_bandlimited(g, rng.uniform(1.5, 3.0), mix_seed(seed, 4));
                         return check_commutator(v, f, 2.0, 2.0, 2.0);
                     }});
    return specs;
}

}  // namespace detail

inline constexpr std::uint64_t kCalibrationSeed = 20250801;
inline constexpr std::uint64_t kTestSeed = 20250802;

inline std::vector<CheckResult> run_inequalities(int samples = 100) {
    std::vector<CheckResult> out;
    const Grid g(1, 256, 1.0);
    for (const auto& spec : detail::inequality_specs()) {
        const EnsembleReport cal = run_ensemble(
            spec.id, samples,
            [&](int i) { return spec.sample(g, mix_seed(kCalibrationSeed, i)); });
        const EnsembleReport test = run_ensemble(
            spec.id, samples, [&](int i) { return spec.sample(g, mix_seed(kTestSeed, i)); });
        out.push_back(at_most(spec.id, test.empirical_constant,
                              cal.calibration_margin * cal.empirical_constant,
                              "calibrated C = " + format_g17(cal.empirical_constant) +
                                  " on " + std::to_string(samples) + " samples; margin 2x"));
    }
    return out;
}

// ---- suite: convergence -----------------------------------------------------

inline State advance_rk4(State s, double dt, double t_end) {
    const long steps = std::lround(t_end / dt);
    for (long i = 0; i < steps; ++i) s = step_rk4(s, dt);
    return s;
}

inline std::vector<CheckResult> run_convergence() {
    const State s0 = smooth_benchmark_state();
    const double t_end = 1.0;
    const State a = advance_rk4(s0, 4e-3, t_end);
    const State b = advance_rk4(s0, 2e-3, t_end);
    const State c = advance_rk4(s0, 1e-3, t_end);
    auto diff = [](const State& x, const State& y) {
        double acc = 0.0;
        for (int i = 0; i < x.u.dim(); ++i) {
            const double e = l2_norm(x.u[i] - y.u[i]);
            acc += e * e;
        }
        const double e = l2_norm(x.gamma - y.gamma);
        return std::sqrt(acc + e * e);
    };
    const double e1 = diff(a, b);
    const double e2 = diff(b, c);
    const double order = std::log2(e1 / e2);
    return {at_least("rk4_observed_order", order, 3.8,
                     "Richardson halving, dt in {4e-3, 2e-3, 1e-3}, t_end = 1")};
}

// ---- suite: conservation ----------------------------------------------------

inline std::vector<CheckResult> run_conservation() {
    const State s0 = smooth_benchmark_state();
    SolverConfig cfg;
    cfg.dt = 1e-3;
    cfg.t_end = 1.0;
    const SimulationOutcome out = simulate(s0, cfg, kInf);
    const double h0 = out.trace.front().energy;
    double drift = 0.0;
    for (const auto& r : out.trace) drift = std::max(drift, std::abs(r.energy - h0) / h0);
    std::vector<CheckResult> res;
    res.push_back(at_most("energy_drift", drift, 1e-6,
                          "smooth d=1 run, n=256, dt=1e-3, t in [0,1]"));
    res.push_back(at_most("run_completed", out.status == SimulationOutcome::Status::completed ? 0.0 : 1.0,
                          0.0));
    return res;
}

// ---- suite: picard ----------------------------------------------------------

inline std::vector<CheckResult> run_picard() {
    std::vector<CheckResult> out;
    const State s0 = smooth_benchmark_state();
    SolverConfig cfg;
    cfg.dt = 1e-3;
    cfg.t_end = 0.05;
    cfg.picard_depth = 14;
    cfg.picard_tol = 1e-10;
    const PicardResult pr = picard_solve(s0, cfg);

    // contraction factor between successive differences, after iterate 2
    const auto& sd = pr.trace.successive_diff;
    double min_factor = std::numeric_limits<double>::infinity();
    for (std::size_t i = 2; i + 1 < sd.size(); ++i) {
        if (sd[i + 1] < cfg.picard_tol) break;  // at the convergence floor
        min_factor = std::min(min_factor, sd[i] / sd[i + 1]);
    }
    out.push_back(at_least("picard_contraction_factor", min_factor, 2.0,
                           "successive-difference decay after iterate 2"));
    out.push_back(at_most("picard_converged", pr.trace.converged ? 0.0 : 1.0, 0.0));

    State rk = s0;
    const long steps = std::lround(cfg.t_end / cfg.dt);
    for (long i = 0; i < steps; ++i) rk = step_rk4(rk, cfg.dt);
    const State& pc = pr.trajectory.back();
    double acc = 0.0, scale = 0.0;
    for (int i = 0; i < rk.u.dim(); ++i) {
        const double e = l2_norm(rk.u[i] - pc.u[i]);
        acc += e * e;
        const double n = l2_norm(rk.u[i]);
        scale += n * n;
    }
    {
        const double e = l2_norm(rk.gamma - pc.gamma);
        acc += e * e;
        const double n = l2_norm(rk.gamma);
        scale += n * n;
    }
    out.push_back(at_most("picard_vs_rk4", std::sqrt(acc / scale), 1e-5,
                          "relative L2 distance at t_end = 0.05"));
    return out;
}

inline std::vector<std::string> suite_names() {
    return {"appendix", "besov", "inequalities", "convergence", "conservation", "picard"};
}

inline std::vector<CheckResult> run_suite(const std::string& name) {
    if (name == "appendix") return run_appendix();
    if (name == "besov") return run_besov();
    if (name == "inequalities") return run_inequalities();
    if (name == "convergence") return run_convergence();
    if (name == "conservation") return run_conservation();
    if (name == "picard") return run_picard();
    throw std::invalid_argument("unknown verify suite '" + name + "'");
}

}  // namespace mch::verify
