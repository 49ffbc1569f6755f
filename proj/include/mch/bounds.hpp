#pragma once

#include <cmath>
#include <span>
#include <stdexcept>

namespace mch {

/// Trapezoidal integral of a uniformly sampled time series with spacing dt.
inline double integral_trapezoid(std::span<const double> samples, double dt) {
    if (samples.size() < 2) return 0.0;
    double acc = 0.5 * (samples.front() + samples.back());
    for (std::size_t i = 1; i + 1 < samples.size(); ++i) acc += samples[i];
    return acc * dt;
}

/// Linear Gronwall evaluation: alpha * exp(int lambda dt).
inline double gronwall_bound(double alpha, std::span<const double> lambda, double dt) {
    return alpha * std::exp(integral_trapezoid(lambda, dt));
}

/// Moduli mu(r) admitted by the Osgood evaluator. W(x) = int dr / mu(r) is
/// inverted in closed form per modulus.
enum class OsgoodModulus {
    linear,           // mu(r) = r: plain Gronwall
    r_one_minus_log,  // mu(r) = r (1 - ln r), domain 0 < alpha <= 1
    r_log,            // mu(r) = r ln r, domain alpha >= e
};

/// Closed-form Osgood bound: the largest f(t) consistent with
/// W(f) <= W(alpha) + int lambda.
inline double osgood_bound(double alpha, std::span<const double> lambda, OsgoodModulus mu,
                           double dt) {
    const double big_lambda = integral_trapezoid(lambda, dt);
    switch (mu) {
        case OsgoodModulus::linear:
            if (!(alpha > 0.0)) throw std::domain_error("osgood_bound: alpha must be positive");
            return alpha * std::exp(big_lambda);
        case OsgoodModulus::r_one_minus_log:
            // W(x) = -ln(1 - ln x); bound e * (alpha / e)^{exp(-int lambda)}
            if (!(alpha > 0.0) || alpha > 1.0)
                throw std::domain_error("osgood_bound: r(1 - ln r) modulus needs 0 < alpha <= 1");
            return std::exp(1.0 - (1.0 - std::log(alpha)) * std::exp(-big_lambda));
        case OsgoodModulus::r_log:
            // W(x) = ln ln x; bound alpha^{exp(int lambda)}
            if (!(alpha >= std::exp(1.0)))
                throw std::domain_error("osgood_bound: r ln r modulus needs alpha >= e");
            return std::exp(std::log(alpha) * std::exp(big_lambda));
    }
    throw std::logic_error("osgood_bound: unknown modulus");
}

}  // namespace mch
