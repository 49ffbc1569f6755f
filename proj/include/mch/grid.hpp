#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace mch {

/// Uniform isotropic periodic tensor grid on the torus [0, L)^dim.
/// All axes share the same point count n (a power of two) and period L.
struct Grid {
    int dim = 1;
    int n = 8;
    double period = 1.0;

    Grid() = default;

    Grid(int dim_, int n_, double period_ = 1.0) : dim(dim_), n(n_), period(period_) {
        if (dim < 1 || dim > 2)
            throw std::invalid_argument("Grid: dim must be 1 or 2, got " + std::to_string(dim));
        if (n < 8 || (n & (n - 1)) != 0)
            throw std::invalid_argument("Grid: n must be a power of two >= 8, got " + std::to_string(n));
        if (!(period > 0.0))
            throw std::invalid_argument("Grid: period must be positive");
    }

    double spacing() const { return period / n; }

    std::size_t num_points() const {
        std::size_t m = 1;
        for (int a = 0; a < dim; ++a) m *= static_cast<std::size_t>(n);
        return m;
    }

    /// Quadrature weight of one grid cell, (L/n)^dim.
    double cell_volume() const {
        double w = 1.0;
        for (int a = 0; a < dim; ++a) w *= spacing();
        return w;
    }

    /// Coordinate of sample index i along any axis.
    double coord(int i) const { return spacing() * i; }

    bool operator==(const Grid&) const = default;
};

}  // namespace mch
