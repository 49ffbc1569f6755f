#pragma once

#include <cmath>
#include <cstdint>
#include <random>

#include "mch/field.hpp"
#include "mch/spectral.hpp"

namespace mch {

/// Deterministic normal deviates: mt19937_64 bits through a hand-rolled
/// Box-Muller, so streams do not depend on the standard library's
/// distribution internals.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    double uniform() {
        // 53-bit mantissa uniform in [0, 1)
        return static_cast<double>(gen_() >> 11) * (1.0 / 9007199254740992.0);
    }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    double normal() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1 = uniform();
        while (u1 <= 1e-300) u1 = uniform();
        const double u2 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double a = 2.0 * std::numbers::pi * u2;
        spare_ = r * std::sin(a);
        have_spare_ = true;
        return r * std::cos(a);
    }

private:
    std::mt19937_64 gen_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

/// Mixes a base seed with a sample index into a fresh stream seed.
inline std::uint64_t mix_seed(std::uint64_t base, std::uint64_t index) {
    std::uint64_t z = base + 0x9E3779B97F4A7C15ull * (index + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

/// Random real band-limited field with spectral decay |coeff(k)| ~ (1+|k|)^-beta,
/// normalized to unit L^2 norm (zero field only if the grid is degenerate).
/// Realized as white noise shaped by a real even multiplier, so realness and
/// Hermitian symmetry hold by construction.
inline Field random_bandlimited(const Grid& g, double beta, std::uint64_t seed) {
    Rng rng(seed);
    Field noise(g);
    for (std::size_t i = 0; i < noise.size(); ++i) noise[i] = rng.normal();
    Spectrum s = to_spectrum(noise);
    const auto& cache = SpectralCache::get(g);
    const auto& radius = cache.mode_radius();
    const auto& mask = cache.dealias_mask();
    for (std::size_t i = 0; i < s.coeff.size(); ++i) {
        if (!mask[i]) {
            s.coeff[i] = 0.0;
            continue;
        }
        s.coeff[i] *= std::pow(1.0 + radius[i], -beta);
    }
    Field f = to_field(s);
    const double norm = l2_norm(f);
    if (norm > 0.0) f *= 1.0 / norm;
    return f;
}

inline VectorField random_bandlimited_vector(const Grid& g, double beta, std::uint64_t seed) {
    VectorField v(g);
    for (int a = 0; a < g.dim; ++a) v[a] = random_bandlimited(g, beta, mix_seed(seed, 1000 + a));
    return v;
}

}  // namespace mch
