#pragma once

#include <cmath>
#include <functional>
#include <string>

#include "mch/besov.hpp"
#include "mch/random_fields.hpp"

namespace mch {

/// One left/right ratio with the unknown constant stripped to 1. Samples with
/// a degenerate denominator are marked invalid and skipped by the runner.
struct RatioSample {
    double ratio = 0.0;
    bool valid = false;
};

/// Complex interpolation: ratio of ||f||_{B^{theta s1 + (1-theta) s2}} to
/// ||f||^theta_{B^{s1}} ||f||^{1-theta}_{B^{s2}}. Constant-free: the ratio is
/// bounded by 1 (Hoelder on the block sequence).
inline RatioSample check_interpolation(const Field& f, double s1, double s2, double theta,
                                       double p, double r) {
    if (theta < 0.0 || theta > 1.0) throw std::invalid_argument("check_interpolation: theta in [0,1]");
    const LPDecomposition dec = lp_decompose(f);
    const double mid = besov_norm(dec, {theta * s1 + (1.0 - theta) * s2, p, r});
    const double a = besov_norm(dec, {s1, p, r});
    const double b = besov_norm(dec, {s2, p, r});
    const double rhs = std::pow(a, theta) * std::pow(b, 1.0 - theta);
    if (rhs <= 0.0) return {};
    return {mid / rhs, true};
}

/// Logarithmic interpolation: ratio of ||f||_{B^s_{p,1}} to
/// (1+eps)/eps * ||f||_{B^s_{p,inf}} * ln(e + ||f||_{B^{s+eps}_{p,inf}} / ||f||_{B^s_{p,inf}}).
inline RatioSample check_log_interpolation(const Field& f, double s, double eps, double p) {
    if (!(eps > 0.0)) throw std::invalid_argument("check_log_interpolation: eps > 0");
    const LPDecomposition dec = lp_decompose(f);
    const double lhs = besov_norm(dec, {s, p, 1.0});
    const double base = besov_norm(dec, {s, p, kInf});
    const double high = besov_norm(dec, {s + eps, p, kInf});
    if (base <= 0.0) return {};
    const double rhs = (1.0 + eps) / eps * base * std::log(std::numbers::e + high / base);
    return {lhs / rhs, true};
}

/// Endpoint-Sobolev corollary: ratio of ||f||_{L^inf} to
/// (2q-d)/(q-d) * (1 + ||f||_{B^0_{inf,inf}} ln(e + ||f||_{W^{1,q}})), q > d.
inline RatioSample check_log_interpolation_corollary(const Field& f, double q) {
    const int d = f.grid().dim;
    if (!(q > d)) throw std::invalid_argument("corollary check: requires q > d");
    const double lhs = linf_norm(f);
    if (lhs <= 0.0) return {};
    const double factor = (2.0 * q - d) / (q - d);
    const double rhs =
        factor * (1.0 + b0_inf_inf_norm(f) * std::log(std::numbers::e + w1q_norm(f, q)));
    return {lhs / rhs, true};
}

enum class MorseVariant { algebra, duality, critical };

struct MorseParams {
    double s = 0.0;    // algebra
    double s1 = 0.0;   // duality
    double s2 = 0.0;   // duality
    double p = 2.0;
    double r = 2.0;
};

/// Morse-type product estimates; the product is the dealiased grid product.
///   algebra:  ||fg||_{B^s_{p,r}} vs ||f||_inf ||g||_{B^s} + ||g||_inf ||f||_{B^s}, s > 0
///   duality:  ||fg||_{B^{s1}_{p,r}} vs ||f||_{B^{s1}} ||g||_{B^{s2}},
///             s1 <= d/p < s2 (s2 >= d/p if r = 1), s1 + s2 > 0
///   critical: ||fg||_{B^{d/p-1}_{p,inf}} vs ||f||_{B^{d/p-1}_{p,1}} ||g||_{B^{d/p}_{p,inf} ^ L^inf},
///             1 <= p <= 2d
inline RatioSample check_morse(const Field& f, const Field& g, MorseVariant variant,
                               const MorseParams& mp) {
    const int d = f.grid().dim;
    const Field fg = multiply(f, g);
    switch (variant) {
        case MorseVariant::algebra: {
            if (!(mp.s > 0.0)) throw std::invalid_argument("morse algebra: requires s > 0");
            const double lhs = besov_norm(fg, {mp.s, mp.p, mp.r});
            const double rhs = linf_norm(f) * besov_norm(g, {mp.s, mp.p, mp.r}) +
                               linf_norm(g) * besov_norm(f, {mp.s, mp.p, mp.r});
            if (rhs <= 0.0) return {};
            return {lhs / rhs, true};
        }
        case MorseVariant::duality: {
            const double dp = d / mp.p;
            const bool upper_ok = mp.r == 1.0 ? mp.s2 >= dp : mp.s2 > dp;
            if (!(mp.s1 <= dp) || !upper_ok || !(mp.s1 + mp.s2 > 0.0))
                throw std::invalid_argument("morse duality: index hypotheses violated");
            const double lhs = besov_norm(fg, {mp.s1, mp.p, mp.r});
            const double rhs =
                besov_norm(f, {mp.s1, mp.p, mp.r}) * besov_norm(g, {mp.s2, mp.p, mp.r});
            if (rhs <= 0.0) return {};
            return {lhs / rhs, true};
        }
        case MorseVariant::critical: {
            if (!(mp.p >= 1.0 && mp.p <= 2.0 * d))
                throw std::invalid_argument("morse critical: requires 1 <= p <= 2d");
            const double dp = d / mp.p;
            const double lhs = besov_norm(fg, {dp - 1.0, mp.p, kInf});
            const double rhs = besov_norm(f, {dp - 1.0, mp.p, 1.0}) *
                               std::max(besov_norm(g, {dp, mp.p, kInf}), linf_norm(g));
            if (rhs <= 0.0) return {};
            return {lhs / rhs, true};
        }
    }
    return {};
}

/// Commutator estimate: the l^r aggregation of 2^{qs} ||[v, Delta_q] . grad f||_{L^p}
/// against ||grad v||_inf ||f||_{B^s_{p,r}} + ||grad f||_inf ||grad v||_{B^{s-1}_{p,r}}.
inline RatioSample check_commutator(const VectorField& v, const Field& f, double s, double p,
                                    double r) {
    if (!(s > 0.0)) throw std::invalid_argument("check_commutator: requires s > 0");
    const Grid& g = f.grid();
    double acc = 0.0, top = 0.0;
    for (int q = -1; q <= lp_qmax(g); ++q) {
        const double term = std::pow(2.0, q * s) * lp_quadrature_norm(commutator(v, f, q), p);
        if (std::isinf(r))
            top = std::max(top, term);
        else
            acc += std::pow(term, r);
    }
    const double lhs = std::isinf(r) ? top : std::pow(acc, 1.0 / r);

    const MatrixField grad_v = jacobian(v);
    double grad_v_besov = 0.0;
    for (const auto& entry : grad_v.e) {
        const double c = besov_norm(entry, {s - 1.0, p, r});
        grad_v_besov += c * c;
    }
    grad_v_besov = std::sqrt(grad_v_besov);
    const double rhs = linf_norm(grad_v) * besov_norm(f, {s, p, r}) +
                       linf_norm(gradient(f)) * grad_v_besov;
    if (rhs <= 0.0) return {lhs == 0.0 ? 0.0 : kInf, lhs == 0.0};
    return {lhs / rhs, true};
}

/// Outcome of a calibrate-or-test pass over one inequality.
struct EnsembleReport {
    std::string inequality_id;
    int sample_count = 0;
    int skipped = 0;
    double empirical_constant = 0.0;  // max over valid samples of lhs/rhs with C = 1
    double calibration_margin = 2.0;  // asserted headroom on disjoint ensembles
};

/// Runs fn(sample_index) over an ensemble and records the max ratio.
inline EnsembleReport run_ensemble(const std::string& id, int samples,
                                   const std::function<RatioSample(int)>& fn,
                                   double margin = 2.0) {
    EnsembleReport rep{id, samples, 0, 0.0, margin};
    for (int i = 0; i < samples; ++i) {
        const RatioSample s = fn(i);
        if (!s.valid) {
            ++rep.skipped;
            continue;
        }
        rep.empirical_constant = std::max(rep.empirical_constant, s.ratio);
    }
    return rep;
}

}  // namespace mch
