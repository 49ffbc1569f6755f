#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>

#include "mch/random_fields.hpp"
#include "mch/spectral.hpp"

namespace mch {

/// Catalog entry for reproducible initial data. Every kind produces real,
/// band-limited (dealiased) fields.
///   gaussian_bump       periodized Gaussian: amplitude, width, center
///   fourier_mode        cosine mode along each axis: amplitude, mode, center
///   smoothed_peakon     exp(-|x - c|) Gaussian-mollified: amplitude, width, center
///   peakon_antipeakon   peakon at center minus peakon at center2
///   random_bandlimited  spectral decay (1+|k|)^-beta: amplitude, beta, seed
struct InitialDataSpec {
    std::string kind = "gaussian_bump";
    double amplitude = 1.0;
    double width = 0.25;       // in units of the period
    double center = 0.5;       // in units of the period, axis 0
    double center_y = -1.0;    // axis 1; negative means "same as center"
    double center2 = 0.75;     // second peakon position
    int mode = 1;
    double beta = 2.0;
    std::uint64_t seed = 0;
};

inline bool initial_data_kind_known(const std::string& kind) {
    return kind == "gaussian_bump" || kind == "fourier_mode" || kind == "smoothed_peakon" ||
           kind == "peakon_antipeakon" || kind == "random_bandlimited";
}

namespace detail {

/// Periodization by image summing; radial profiles sampled with the nearest
/// image only would keep a derivative kink at the antipode.
template <class F>
Field periodized_profile(const Grid& g, F profile, double cx, double cy) {
    const double L = g.period;
    Field f(g);
    const int n = g.n;
    auto value = [&](double x, double y) {
        double acc = 0.0;
        for (int mx = -3; mx <= 3; ++mx) {
            if (g.dim == 1) {
                acc += profile(std::abs(x - cx - mx * L));
            } else {
                for (int my = -3; my <= 3; ++my) {
                    const double ddx = x - cx - mx * L;
                    const double ddy = y - cy - my * L;
                    acc += profile(std::sqrt(ddx * ddx + ddy * ddy));
                }
            }
        }
        return acc;
    };
    if (g.dim == 1) {
        for (int i = 0; i < n; ++i) f[i] = value(g.coord(i), 0.0);
    } else {
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                f[static_cast<std::size_t>(i) * n + j] = value(g.coord(i), g.coord(j));
    }
    return f;
}

/// Periodized peakon profile sum_m exp(-|x - c - m L|), mollified afterwards.
inline Field peakon_profile(const Grid& g, double amplitude, double cx, double cy) {
    Field f = periodized_profile(
        g, [](double r) { return std::exp(-r); }, cx, cy);
    f *= amplitude;
    return f;
}

/// Gaussian low-pass with physical-space std dev sigma: multiplier exp(-(sigma xi)^2 / 2).
inline Field mollify(const Field& f, double sigma) {
    const Grid& g = f.grid();
    const auto& cache = SpectralCache::get(g);
    Spectrum s = to_spectrum(f);
    const int n = g.n;
    for (std::size_t idx = 0; idx < s.coeff.size(); ++idx) {
        const int i0 = g.dim == 1 ? static_cast<int>(idx) : static_cast<int>(idx) / n;
        double xi2 = cache.xi(i0) * cache.xi(i0);
        if (g.dim == 2) {
            const int i1 = static_cast<int>(idx) % n;
            xi2 += cache.xi(i1) * cache.xi(i1);
        }
        s.coeff[idx] *= std::exp(-0.5 * sigma * sigma * xi2);
    }
    return to_field(s);
}

}  // namespace detail

inline Field make_scalar_initial(const Grid& g, const InitialDataSpec& spec) {
    if (!initial_data_kind_known(spec.kind))
        throw std::invalid_argument("unknown initial data kind '" + spec.kind + "'");
    const double L = g.period;
    const double cx = spec.center * L;
    const double cy = (spec.center_y < 0.0 ? spec.center : spec.center_y) * L;
    Field f(g);
    if (spec.kind == "gaussian_bump") {
        const double sigma = spec.width * L;
        f = detail::periodized_profile(
            g, [&](double r) { return std::exp(-0.5 * r * r / (sigma * sigma)); }, cx, cy);
        f *= spec.amplitude;
    } else if (spec.kind == "fourier_mode") {
        if (spec.mode < 0 || spec.mode > g.n / 3)
            throw std::invalid_argument("fourier_mode: mode must lie inside the dealias band");
        const double w = 2.0 * std::numbers::pi * spec.mode / L;
        const int n = g.n;
        for (int i = 0; i < n; ++i) {
            const double vx = std::cos(w * (g.coord(i) - cx));
            if (g.dim == 1) {
                f[i] = spec.amplitude * vx;
            } else {
                for (int j = 0; j < n; ++j)
                    f[static_cast<std::size_t>(i) * n + j] =
                        spec.amplitude * vx * std::cos(w * (g.coord(j) - cy));
            }
        }
    } else if (spec.kind == "smoothed_peakon") {
        f = detail::mollify(detail::peakon_profile(g, spec.amplitude, cx, cy), spec.width * L);
    } else if (spec.kind == "peakon_antipeakon") {
        f = detail::mollify(detail::peakon_profile(g, spec.amplitude, cx, cy) -
                                detail::peakon_profile(g, spec.amplitude, spec.center2 * L,
                                                       spec.center2 * L),
                            spec.width * L);
    } else {  // random_bandlimited
        f = random_bandlimited(g, spec.beta, spec.seed);
        f *= spec.amplitude;
    }
    return dealias(f);
}

/// Vector realization: the scalar profile with the center shifted by L/4 per
/// component; random kinds use independent per-component seed offsets.
inline VectorField make_vector_initial(const Grid& g, const InitialDataSpec& spec) {
    VectorField v(g);
    for (int a = 0; a < g.dim; ++a) {
        InitialDataSpec comp = spec;
        if (spec.kind == "random_bandlimited") {
            comp.seed = mix_seed(spec.seed, 77 + a);
        } else if (a > 0) {
            comp.center = std::fmod(spec.center + 0.25 * a, 1.0);
            comp.center2 = std::fmod(spec.center2 + 0.25 * a, 1.0);
        }
        v[a] = make_scalar_initial(g, comp);
    }
    return v;
}

}  // namespace mch
