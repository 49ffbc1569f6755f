#pragma once

#include <cmath>
#include <limits>
#include <span>
#include <stdexcept>
#include <vector>

#include "mch/littlewood_paley.hpp"

namespace mch {

/// Besov indices B^s_{p,r}; p and r admit infinity (IEEE inf).
struct BesovParams {
    double s = 0.0;
    double p = 2.0;
    double r = 2.0;

    void validate() const {
        if (!(p >= 1.0) || !(r >= 1.0))
            throw std::invalid_argument("BesovParams: p and r must lie in [1, inf]");
    }
};

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// Weighted l^r aggregation of the block sequence (2^{qs} ||Delta_q f||_{L^p})_{q >= -1}.
inline double besov_norm(const LPDecomposition& dec, const BesovParams& bp) {
    bp.validate();
    double acc = 0.0;
    double top = 0.0;
    for (int q = dec.qmin(); q <= dec.qmax(); ++q) {
        const double term = std::pow(2.0, q * bp.s) * lp_norm(dec, q, bp.p);
        if (std::isinf(bp.r))
            top = std::max(top, term);
        else
            acc += std::pow(term, bp.r);
    }
    return std::isinf(bp.r) ? top : std::pow(acc, 1.0 / bp.r);
}

inline double besov_norm(const Field& f, const BesovParams& bp) {
    return besov_norm(lp_decompose(f), bp);
}

/// Discrete B^0_{inf,inf} norm: the largest grid sup over dyadic blocks.
inline double b0_inf_inf_norm(const Field& f) {
    return besov_norm(f, BesovParams{0.0, kInf, kInf});
}

/// B^0_{inf,inf} of a multi-component object; blocks are taken per component
/// and the sup is of the pointwise Euclidean magnitude of the block vector.
inline double b0_inf_inf_norm(std::span<const Field> components) {
    if (components.empty()) return 0.0;
    const Grid& g = components.front().grid();
    std::vector<LPDecomposition> decs;
    decs.reserve(components.size());
    for (const Field& f : components) decs.push_back(lp_decompose(f));
    double top = 0.0;
    for (int q = decs.front().qmin(); q <= decs.front().qmax(); ++q) {
        Field mag(g);
        for (std::size_t i = 0; i < mag.size(); ++i) {
            double s = 0.0;
            for (const auto& dec : decs) {
                const double x = dec.block(q)[i];
                s += x * x;
            }
            mag[i] = std::sqrt(s);
        }
        top = std::max(top, linf_norm(mag));
    }
    return top;
}

inline double b0_inf_inf_norm(const VectorField& v) {
    return b0_inf_inf_norm(std::span<const Field>(v.comp.data(), v.comp.size()));
}

inline double b0_inf_inf_norm(const MatrixField& m) {
    return b0_inf_inf_norm(std::span<const Field>(m.e.data(), m.e.size()));
}

/// Besov norm of a vector field: l^2 over the component norms, matching the
/// convention that vector norms aggregate componentwise.
inline double besov_norm(const VectorField& v, const BesovParams& bp) {
    double acc = 0.0;
    for (const auto& f : v.comp) {
        const double c = besov_norm(f, bp);
        acc += c * c;
    }
    return std::sqrt(acc);
}

/// W^{1,q} grid norm ||f||_{L^q} + ||grad f||_{L^q}.
inline double w1q_norm(const Field& f, double q) {
    return lp_quadrature_norm(f, q) + lp_quadrature_norm(gradient(f), q);
}

}  // namespace mch
