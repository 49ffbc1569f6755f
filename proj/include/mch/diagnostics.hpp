#pragma once

#include <cmath>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "mch/besov.hpp"
#include "mch/dynamics.hpp"

namespace mch {

/// Per-timestep monitors. The accumulated integrals are the quantities whose
/// divergence characterizes finite-time blow-up:
///   I13 = int (|u|_inf + |grad u|_inf + |gamma|_inf + |grad gamma|_inf)
///   I14 = int |grad u|_inf
///   I15 = int (|grad u|_{B^0_{inf,inf}} + |grad gamma|_{B^0_{inf,inf}})
/// On a finite grid these never diverge; growth plus a steepening alert is the
/// honest desk-scale reading.
struct DiagnosticsRecord {
    double time = 0.0;
    double energy = 0.0;
    double linf_u = 0.0;
    double linf_grad_u = 0.0;
    double linf_gamma = 0.0;
    double linf_grad_gamma = 0.0;
    double b0_grad_u = 0.0;
    double b0_grad_gamma = 0.0;
    double integral_t13 = 0.0;
    double integral_t14 = 0.0;
    double integral_t15 = 0.0;
    double sobolev_norm = 0.0;  // ||u||_{H^s} + ||gamma||_{H^s}

    double integrand_t13() const { return linf_u + linf_grad_u + linf_gamma + linf_grad_gamma; }
    double integrand_t14() const { return linf_grad_u; }
    double integrand_t15() const { return b0_grad_u + b0_grad_gamma; }
};

/// Monitors of one state; accumulators advance by the trapezoid rule from the
/// previous record (pass nullptr for the first sample).
inline DiagnosticsRecord record(const State& s, const DiagnosticsRecord* prev,
                                double sobolev_s = 3.0) {
    DiagnosticsRecord r;
    r.time = s.time;
    r.energy = energy(s);
    const MatrixField grad_u = jacobian(s.u);
    const VectorField grad_gamma = gradient(s.gamma);
    r.linf_u = linf_norm(s.u);
    r.linf_grad_u = linf_norm(grad_u);
    r.linf_gamma = linf_norm(s.gamma);
    r.linf_grad_gamma = linf_norm(grad_gamma);
    r.b0_grad_u = b0_inf_inf_norm(grad_u);
    r.b0_grad_gamma = b0_inf_inf_norm(grad_gamma);
    r.sobolev_norm = sobolev_norm(s.u, sobolev_s) + mch::sobolev_norm(s.gamma, sobolev_s);
    if (prev) {
        const double half = 0.5 * (r.time - prev->time);
        r.integral_t13 = prev->integral_t13 + half * (prev->integrand_t13() + r.integrand_t13());
        r.integral_t14 = prev->integral_t14 + half * (prev->integrand_t14() + r.integrand_t14());
        r.integral_t15 = prev->integral_t15 + half * (prev->integrand_t15() + r.integrand_t15());
    }
    return r;
}

/// Finite-grid wave-breaking proxy: the slope grows past threshold_ratio times
/// its initial size while the amplitude stays within twice its initial size.
struct SteepeningAlert {
    bool triggered = false;
    double time = 0.0;
    std::string quantity;
    double threshold = 0.0;
};

inline SteepeningAlert detect_steepening(std::span<const DiagnosticsRecord> trace,
                                         double threshold_ratio) {
    SteepeningAlert alert;
    if (trace.empty() || std::isinf(threshold_ratio)) return alert;
    if (!(threshold_ratio > 1.0))
        throw std::invalid_argument("detect_steepening: threshold_ratio must exceed 1");
    const double slope0 = trace.front().linf_grad_u;
    const double amp0 = trace.front().linf_u;
    for (const auto& r : trace) {
        const bool slope_grew = r.linf_grad_u > threshold_ratio * slope0;
        const bool amplitude_bounded = r.linf_u <= 2.0 * amp0;
        if (slope_grew && amplitude_bounded) {
            alert.triggered = true;
            alert.time = r.time;
            alert.quantity = "linf_grad_u";
            alert.threshold = threshold_ratio;
            return alert;
        }
    }
    return alert;
}

/// Empirical constants of the two structural bounds that order the blow-up
/// criteria along a trace:
///   (a) |gamma|_inf + |grad gamma|_inf <= C g0 exp(C I14(t))
///   (b) |u|_inf + |grad u|_inf <= C (U0 + int (gamma monitors)^2) exp(C I14(t))
/// Each constant is the smallest C making its bound hold at every sample.
struct CriterionOrderingReport {
    double c_gamma = 0.0;
    double c_u = 0.0;
    bool gamma_degenerate = false;  // gamma monitors vanish: bound (a) is 0 <= anything
};

namespace detail {

/// Smallest C >= 0 with lhs[i] <= C * base[i] * exp(C * accum[i]) for all i.
inline double calibrate_exponential_constant(std::span<const double> lhs,
                                             std::span<const double> base,
                                             std::span<const double> accum) {
    auto holds = [&](double c) {
        for (std::size_t i = 0; i < lhs.size(); ++i)
            if (lhs[i] > c * base[i] * std::exp(c * accum[i]) + 1e-300) return false;
        return true;
    };
    if (holds(0.0)) return 0.0;
    double hi = 1.0;
    while (!holds(hi)) {
        hi *= 2.0;
        if (hi > 1e12) return std::numeric_limits<double>::infinity();
    }
    double lo = 0.0;
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        (holds(mid) ? hi : lo) = mid;
    }
    return hi;
}

}  // namespace detail

inline CriterionOrderingReport check_criterion_ordering(std::span<const DiagnosticsRecord> trace) {
    if (trace.empty())
        throw std::invalid_argument("check_criterion_ordering: trace must be nonempty");
    CriterionOrderingReport rep;
    const std::size_t n = trace.size();
    const double g0 = trace.front().linf_gamma + trace.front().linf_grad_gamma;
    const double u0 = trace.front().linf_u + trace.front().linf_grad_u;

    std::vector<double> gamma_monitor(n), u_monitor(n), i14(n), gamma_sq_integral(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        gamma_monitor[i] = trace[i].linf_gamma + trace[i].linf_grad_gamma;
        u_monitor[i] = trace[i].linf_u + trace[i].linf_grad_u;
        i14[i] = trace[i].integral_t14;
        if (i > 0)
            gamma_sq_integral[i] =
                gamma_sq_integral[i - 1] +
                0.5 * (trace[i].time - trace[i - 1].time) *
                    (gamma_monitor[i] * gamma_monitor[i] + gamma_monitor[i - 1] * gamma_monitor[i - 1]);
    }

    double gmax = 0.0;
    for (double g : gamma_monitor) gmax = std::max(gmax, g);
    rep.gamma_degenerate = gmax == 0.0;

    if (!rep.gamma_degenerate) {
        const std::vector<double> base_gamma(n, g0);
        rep.c_gamma = detail::calibrate_exponential_constant(gamma_monitor, base_gamma, i14);
    }
    std::vector<double> base_u(n);
    for (std::size_t i = 0; i < n; ++i) base_u[i] = u0 + gamma_sq_integral[i];
    rep.c_u = detail::calibrate_exponential_constant(u_monitor, base_u, i14);
    return rep;
}

}  // namespace mch
