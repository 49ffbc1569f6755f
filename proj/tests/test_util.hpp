#pragma once

#include <cmath>
#include <functional>

#include "mch/field.hpp"
#include "mch/spectral.hpp"

namespace testutil {

inline double rel_l2(const mch::Field& a, const mch::Field& b) {
    const double scale = std::max(mch::l2_norm(a), mch::l2_norm(b));
    return scale > 0.0 ? mch::l2_norm(a - b) / scale : 0.0;
}

inline double max_abs_diff(const mch::Field& a, const mch::Field& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

/// Field from a closed-form function of the coordinates.
inline mch::Field sampled(const mch::Grid& g, const std::function<double(double, double)>& fn) {
    mch::Field f(g);
    if (g.dim == 1) {
        for (int i = 0; i < g.n; ++i) f[i] = fn(g.coord(i), 0.0);
    } else {
        for (int i = 0; i < g.n; ++i)
            for (int j = 0; j < g.n; ++j)
                f[static_cast<std::size_t>(i) * g.n + j] = fn(g.coord(i), g.coord(j));
    }
    return f;
}

}  // namespace testutil
