#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

#include "mch/spectral.hpp"

namespace mch {

// Dyadic radial cutoff built from a quintic smoothstep transition. chi is 1 on
// the ball |k| <= 3/4 and 0 outside |k| >= 4/3; phi(r) = chi(r/2) - chi(r) is
// supported on the annulus [3/4, 8/3] with plateau [4/3, 3/2]. The telescoping
// sum chi + sum_q phi(2^-q .) is exactly 1 on the whole grid spectrum.

namespace lp {

inline double smoothstep5(double t) {
    if (t <= 0.0) return 0.0;
    if (t >= 1.0) return 1.0;
    return t * t * t * (10.0 + t * (-15.0 + 6.0 * t));
}

inline constexpr double kChiInner = 0.75;
inline constexpr double kChiOuter = 4.0 / 3.0;

inline double chi(double r) {
    if (r <= kChiInner) return 1.0;
    if (r >= kChiOuter) return 0.0;
    return 1.0 - smoothstep5((r - kChiInner) / (kChiOuter - kChiInner));
}

inline double phi(double r) { return chi(0.5 * r) - chi(r); }

/// Annulus carrying block q >= 0 in integer mode radius: [3/4 * 2^q, 8/3 * 2^q].
inline double annulus_inner(int q) { return kChiInner * std::ldexp(1.0, q); }
inline double annulus_outer(int q) { return kChiOuter * 2.0 * std::ldexp(1.0, q); }

}  // namespace lp

/// Highest block index carried by the grid: ceil(log2(n/3)) + 1. Blocks above
/// the grid band are empty by construction.
inline int lp_qmax(const Grid& g) {
    return static_cast<int>(std::ceil(std::log2(g.n / 3.0))) + 1;
}

/// Dyadic blocks Delta_q f for q = -1, 0, ..., qmax, stored densely
/// (slot 0 holds q = -1). Summing all blocks reproduces the source.
struct LPDecomposition {
    Grid grid;
    std::vector<Field> blocks;

    int qmin() const { return -1; }
    int qmax() const { return static_cast<int>(blocks.size()) - 2; }

    const Field& block(int q) const {
        if (q < qmin() || q > qmax()) throw std::out_of_range("LPDecomposition: block index");
        return blocks[static_cast<std::size_t>(q + 1)];
    }
};

/// Multiplier value of block q at integer mode radius r.
inline double lp_block_multiplier(int q, double r) {
    return q == -1 ? lp::chi(r) : lp::phi(std::ldexp(r, -q));
}

inline LPDecomposition lp_decompose(const Field& f) {
    const Grid& g = f.grid();
    const auto& radius = SpectralCache::get(g).mode_radius();
    const Spectrum src = to_spectrum(f);
    LPDecomposition dec{g, {}};
    const int qmax = lp_qmax(g);
    dec.blocks.reserve(static_cast<std::size_t>(qmax) + 2);
    Spectrum blk(g);
    for (int q = -1; q <= qmax; ++q) {
        for (std::size_t i = 0; i < src.coeff.size(); ++i)
            blk.coeff[i] = src.coeff[i] * lp_block_multiplier(q, radius[i]);
        dec.blocks.push_back(to_field(blk));
    }
    return dec;
}

/// Single block Delta_q f without materializing the whole decomposition.
inline Field lp_block(const Field& f, int q) {
    const Grid& g = f.grid();
    if (q < -1 || q > lp_qmax(g)) throw std::out_of_range("lp_block: block index");
    const auto& radius = SpectralCache::get(g).mode_radius();
    Spectrum s = to_spectrum(f);
    for (std::size_t i = 0; i < s.coeff.size(); ++i)
        s.coeff[i] *= lp_block_multiplier(q, radius[i]);
    return to_field(s);
}

/// Low-frequency cut-off S_m = sum_{q=-1}^{m-1} Delta_q, realized by the exact
/// telescoped multiplier chi(2^-m |k|). For m > qmax it is the identity.
inline Field lp_lowpass(const Field& f, int m) {
    const Grid& g = f.grid();
    const auto& radius = SpectralCache::get(g).mode_radius();
    Spectrum s = to_spectrum(f);
    for (std::size_t i = 0; i < s.coeff.size(); ++i)
        s.coeff[i] *= lp::chi(std::ldexp(radius[i], -m));
    return to_field(s);
}

inline VectorField lp_lowpass(const VectorField& v, int m) {
    VectorField r(v.grid());
    for (int a = 0; a < v.dim(); ++a) r[a] = lp_lowpass(v[a], m);
    return r;
}

/// L^p norm of block q via grid quadrature; p = infinity is the grid max.
inline double lp_norm(const LPDecomposition& dec, int q, double p) {
    return lp_quadrature_norm(dec.block(q), p);
}

/// Commutator [v, Delta_q] . grad f = v . grad(Delta_q f) - Delta_q(v . grad f),
/// with both advection products dealiased.
inline Field commutator(const VectorField& v, const Field& f, int q) {
    const Grid& g = f.grid();
    if (q < -1 || q > lp_qmax(g)) throw std::out_of_range("commutator: block index");
    const Field blk = lp_block(f, q);
    const VectorField grad_blk = gradient(blk);
    Field advect_block(g);
    for (int a = 0; a < g.dim; ++a) advect_block += multiply(v[a], grad_blk[a]);
    const VectorField grad_f = gradient(f);
    Field advect(g);
    for (int a = 0; a < g.dim; ++a) advect += multiply(v[a], grad_f[a]);
    return advect_block - lp_block(advect, q);
}

/// Operator norm bound of the block family on (grid, L^inf): the largest l^1
/// kernel mass over blocks. Controls the discrete norm chain
/// max_q ||Delta_q f||_inf <= C ||f||_inf.
inline double lp_chain_constant(const Grid& g) {
    const auto& radius = SpectralCache::get(g).mode_radius();
    const double inv_points = 1.0 / static_cast<double>(g.num_points());
    double worst = 0.0;
    Spectrum s(g);
    for (int q = -1; q <= lp_qmax(g); ++q) {
        for (std::size_t i = 0; i < s.coeff.size(); ++i)
            s.coeff[i] = lp_block_multiplier(q, radius[i]) * inv_points;
        const Field kernel = to_field(s);
        double mass = 0.0;
        for (double x : kernel.values()) mass += std::abs(x);
        worst = std::max(worst, mass);
    }
    return worst;
}

}  // namespace mch
