#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <vector>

#include "mch/grid.hpp"

namespace mch {

/// Real scalar samples on a Grid, row-major over grid points
/// (index (i0, i1) -> i0 * n + i1 for dim == 2).
class Field {
public:
    Field() = default;

    explicit Field(const Grid& g) : grid_(g), v_(g.num_points(), 0.0) {}

    Field(const Grid& g, std::vector<double> values) : grid_(g), v_(std::move(values)) {
        if (v_.size() != g.num_points())
            throw std::invalid_argument("Field: sample count does not match grid");
    }

    const Grid& grid() const { return grid_; }
    std::size_t size() const { return v_.size(); }

    double operator[](std::size_t i) const { return v_[i]; }
    double& operator[](std::size_t i) { return v_[i]; }

    const std::vector<double>& values() const { return v_; }
    std::vector<double>& values() { return v_; }

    Field& operator+=(const Field& o) {
        for (std::size_t i = 0; i < v_.size(); ++i) v_[i] += o.v_[i];
        return *this;
    }
    Field& operator-=(const Field& o) {
        for (std::size_t i = 0; i < v_.size(); ++i) v_[i] -= o.v_[i];
        return *this;
    }
    Field& operator*=(double c) {
        for (double& x : v_) x *= c;
        return *this;
    }

    friend Field operator+(Field a, const Field& b) { return a += b; }
    friend Field operator-(Field a, const Field& b) { return a -= b; }
    friend Field operator*(double c, Field a) { return a *= c; }
    friend Field operator*(Field a, double c) { return a *= c; }
    friend Field operator-(Field a) { return a *= -1.0; }

private:
    Grid grid_;
    std::vector<double> v_;
};

/// d-component vector field; all components share one Grid.
struct VectorField {
    std::vector<Field> comp;

    VectorField() = default;

    explicit VectorField(const Grid& g) {
        comp.reserve(g.dim);
        for (int a = 0; a < g.dim; ++a) comp.emplace_back(g);
    }

    const Grid& grid() const { return comp.at(0).grid(); }
    int dim() const { return static_cast<int>(comp.size()); }

    const Field& operator[](int a) const { return comp[a]; }
    Field& operator[](int a) { return comp[a]; }

    VectorField& operator+=(const VectorField& o) {
        for (int a = 0; a < dim(); ++a) comp[a] += o.comp[a];
        return *this;
    }
    VectorField& operator-=(const VectorField& o) {
        for (int a = 0; a < dim(); ++a) comp[a] -= o.comp[a];
        return *this;
    }
    VectorField& operator*=(double c) {
        for (auto& f : comp) f *= c;
        return *this;
    }
    friend VectorField operator+(VectorField a, const VectorField& b) { return a += b; }
    friend VectorField operator-(VectorField a, const VectorField& b) { return a -= b; }
    friend VectorField operator*(double c, VectorField a) { return a *= c; }
};

/// d x d matrix of Fields, row-major entries; entry(i, j) of a jacobian holds
/// the j-th derivative of component i.
struct MatrixField {
    int dim = 0;
    std::vector<Field> e;

    MatrixField() = default;

    explicit MatrixField(const Grid& g) : dim(g.dim) {
        e.reserve(static_cast<std::size_t>(dim) * dim);
        for (int i = 0; i < dim * dim; ++i) e.emplace_back(g);
    }

    const Grid& grid() const { return e.at(0).grid(); }

    const Field& entry(int i, int j) const { return e[static_cast<std::size_t>(i) * dim + j]; }
    Field& entry(int i, int j) { return e[static_cast<std::size_t>(i) * dim + j]; }

    MatrixField& operator+=(const MatrixField& o) {
        for (std::size_t i = 0; i < e.size(); ++i) e[i] += o.e[i];
        return *this;
    }
    MatrixField& operator-=(const MatrixField& o) {
        for (std::size_t i = 0; i < e.size(); ++i) e[i] -= o.e[i];
        return *this;
    }
    friend MatrixField operator+(MatrixField a, const MatrixField& b) { return a += b; }
    friend MatrixField operator-(MatrixField a, const MatrixField& b) { return a -= b; }

    MatrixField transpose() const {
        MatrixField t(grid());
        for (int i = 0; i < dim; ++i)
            for (int j = 0; j < dim; ++j) t.entry(i, j) = entry(j, i);
        return t;
    }
};

// ---- grid quadrature norms ------------------------------------------------

inline double l2_norm(const Field& f) {
    double s = 0.0;
    for (double x : f.values()) s += x * x;
    return std::sqrt(s * f.grid().cell_volume());
}

inline double linf_norm(const Field& f) {
    double m = 0.0;
    for (double x : f.values()) m = std::max(m, std::abs(x));
    return m;
}

/// L^p grid quadrature norm with cell weight (L/n)^d; p may be infinity.
inline double lp_quadrature_norm(const Field& f, double p) {
    if (std::isinf(p)) return linf_norm(f);
    if (p < 1.0) throw std::invalid_argument("lp_quadrature_norm: p must be >= 1");
    double s = 0.0;
    for (double x : f.values()) s += std::pow(std::abs(x), p);
    return std::pow(s * f.grid().cell_volume(), 1.0 / p);
}

/// Pointwise Euclidean magnitude of a vector field.
inline Field pointwise_magnitude(const VectorField& v) {
    Field r(v.grid());
    for (std::size_t i = 0; i < r.size(); ++i) {
        double s = 0.0;
        for (int a = 0; a < v.dim(); ++a) s += v[a][i] * v[a][i];
        r[i] = std::sqrt(s);
    }
    return r;
}

/// Pointwise Frobenius magnitude of a matrix field.
inline Field pointwise_magnitude(const MatrixField& m) {
    Field r(m.grid());
    for (std::size_t i = 0; i < r.size(); ++i) {
        double s = 0.0;
        for (const auto& f : m.e) s += f[i] * f[i];
        r[i] = std::sqrt(s);
    }
    return r;
}

inline double linf_norm(const VectorField& v) { return linf_norm(pointwise_magnitude(v)); }
inline double linf_norm(const MatrixField& m) { return linf_norm(pointwise_magnitude(m)); }

inline double l2_norm(const VectorField& v) {
    double s = 0.0;
    for (const auto& f : v.comp) {
        const double c = l2_norm(f);
        s += c * c;
    }
    return std::sqrt(s);
}

inline double lp_quadrature_norm(const VectorField& v, double p) {
    return lp_quadrature_norm(pointwise_magnitude(v), p);
}

inline bool all_finite(const Field& f) {
    for (double x : f.values())
        if (!std::isfinite(x)) return false;
    return true;
}

inline bool all_finite(const VectorField& v) {
    for (const auto& f : v.comp)
        if (!all_finite(f)) return false;
    return true;
}

// ---- samplewise helpers ----------------------------------------------------

/// Samplewise product with no aliasing control. Spectral code paths should use
/// multiply() from spectral.hpp instead.
inline Field multiply_raw(const Field& a, const Field& b) {
    Field r = a;
    for (std::size_t i = 0; i < r.size(); ++i) r[i] *= b[i];
    return r;
}

/// Circular shift by whole grid cells (sample permutation).
inline Field shift(const Field& f, const std::array<int, 2>& cells) {
    const Grid& g = f.grid();
    Field r(g);
    const int n = g.n;
    if (g.dim == 1) {
        for (int i = 0; i < n; ++i) r[((i + cells[0]) % n + n) % n] = f[i];
    } else {
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                const int ii = ((i + cells[0]) % n + n) % n;
                const int jj = ((j + cells[1]) % n + n) % n;
                r[static_cast<std::size_t>(ii) * n + jj] = f[static_cast<std::size_t>(i) * n + j];
            }
    }
    return r;
}

inline VectorField shift(const VectorField& v, const std::array<int, 2>& cells) {
    VectorField r(v.grid());
    for (int a = 0; a < v.dim(); ++a) r[a] = shift(v[a], cells);
    return r;
}

/// Reflection x -> -x (sample permutation fixing the origin).
inline Field reflect(const Field& f) {
    const Grid& g = f.grid();
    Field r(g);
    const int n = g.n;
    if (g.dim == 1) {
        for (int i = 0; i < n; ++i) r[(n - i) % n] = f[i];
    } else {
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                r[static_cast<std::size_t>((n - i) % n) * n + (n - j) % n] =
                    f[static_cast<std::size_t>(i) * n + j];
    }
    return r;
}

}  // namespace mch
