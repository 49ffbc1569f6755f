#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

#include "mch/dynamics.hpp"

namespace mch {

enum class Scheme { rk4, picard };

struct SolverConfig {
    double dt = 1e-3;
    double t_end = 1.0;
    Scheme scheme = Scheme::rk4;
    int picard_depth = 12;
    double picard_tol = 1e-9;
    double cfl_guard = 0.5;     // max allowed ||u||_inf dt / spacing
    double sobolev_s = 3.0;     // index of the recorded Besov-norm surrogate

    void validate() const {
        if (!(dt > 0.0)) throw std::invalid_argument("SolverConfig: dt must be positive");
        if (t_end < 0.0) throw std::invalid_argument("SolverConfig: t_end must be >= 0");
        if (picard_depth < 1) throw std::invalid_argument("SolverConfig: picard_depth >= 1");
    }
};

/// Raised when a stage produces non-finite samples; carries the last valid state.
struct BlowupSuspectedError : std::runtime_error {
    State last_valid;
    explicit BlowupSuspectedError(State s)
        : std::runtime_error("blow-up suspected: non-finite samples at t = " +
                             std::to_string(s.time)),
          last_valid(std::move(s)) {}
};

struct CflViolationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Raised when Picard successive differences grow three iterates in a row.
struct PicardDivergenceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline double cfl_number(const State& s, double dt) {
    return linf_norm(s.u) * dt / s.grid().spacing();
}

inline void check_cfl(const State& s, double dt, double guard) {
    const double c = cfl_number(s, dt);
    if (c > guard)
        throw CflViolationError("CFL guard violated: |u|_inf dt / h = " + std::to_string(c) +
                                " > " + std::to_string(guard) + " at t = " + std::to_string(s.time));
}

namespace detail {

inline void require_finite(const VectorField& u, const Field& gamma, const State& last_valid) {
    if (!all_finite(u) || !all_finite(gamma)) throw BlowupSuspectedError(last_valid);
}

}  // namespace detail

/// One classical four-stage step of the nonlocal system.
inline State step_rk4(const State& s, double dt) {
    const StateRhs k1 = nonlocal_rhs(s);
    detail::require_finite(k1.du, k1.dgamma, s);

    State s2(s.u + 0.5 * dt * k1.du, s.gamma + 0.5 * dt * k1.dgamma, s.time + 0.5 * dt);
    const StateRhs k2 = nonlocal_rhs(s2);
    detail::require_finite(k2.du, k2.dgamma, s);

    State s3(s.u + 0.5 * dt * k2.du, s.gamma + 0.5 * dt * k2.dgamma, s.time + 0.5 * dt);
    const StateRhs k3 = nonlocal_rhs(s3);
    detail::require_finite(k3.du, k3.dgamma, s);

    State s4(s.u + dt * k3.du, s.gamma + dt * k3.dgamma, s.time + dt);
    const StateRhs k4 = nonlocal_rhs(s4);
    detail::require_finite(k4.du, k4.dgamma, s);

    const double w = dt / 6.0;
    State out(s.u + w * (k1.du + 2.0 * k2.du + 2.0 * k3.du + k4.du),
              s.gamma + w * (k1.dgamma + 2.0 * k2.dgamma + 2.0 * k3.dgamma + k4.dgamma),
              s.time + dt);
    detail::require_finite(out.u, out.gamma, s);
    return out;
}

namespace detail {

inline Field advect(const VectorField& v, const Field& f) {
    const VectorField g = gradient(f);
    Field r(f.grid());
    for (int a = 0; a < v.dim(); ++a) r += multiply(v[a], g[a]);
    return r;
}

inline VectorField advect(const VectorField& v, const VectorField& f) {
    VectorField r(f.grid());
    for (int i = 0; i < f.dim(); ++i) r[i] = advect(v, f[i]);
    return r;
}

}  // namespace detail

/// One RK4 step of the frozen-coefficient linear transport equation
/// d f / dt = -v . grad f + rhs, with v and rhs held fixed over the substep.
template <class FieldLike>
FieldLike transport_substep(const FieldLike& f, const VectorField& v, const FieldLike& rhs,
                            double dt) {
    auto stage = [&](const FieldLike& y) { return rhs - detail::advect(v, y); };
    const FieldLike k1 = stage(f);
    const FieldLike k2 = stage(f + 0.5 * dt * k1);
    const FieldLike k3 = stage(f + 0.5 * dt * k2);
    const FieldLike k4 = stage(f + dt * k3);
    return f + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

}  // namespace mch
