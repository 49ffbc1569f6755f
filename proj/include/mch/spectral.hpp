#pragma once

#include <cmath>
#include <complex>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <tuple>
#include <vector>

#include "mch/fft.hpp"
#include "mch/field.hpp"
#include "mch/grid.hpp"

namespace mch {

/// Complex Fourier coefficients of a Field, same row-major layout as the
/// samples. Flat index i_a along axis a maps to the integer mode
/// k_a = i_a < n/2 ? i_a : i_a - n (so i_a = n/2 is the Nyquist mode -n/2).
struct Spectrum {
    Grid grid;
    std::vector<std::complex<double>> coeff;

    explicit Spectrum(const Grid& g) : grid(g), coeff(g.num_points()) {}
};

/// Precomputed per-grid spectral tables: FFT plan, wavenumbers, the (I - Delta)
/// symbol, the two-thirds dealias mask and the integer-scale mode radii used by
/// the Littlewood-Paley decomposition. Cached per (dim, n, period).
class SpectralCache {
public:
    static const SpectralCache& get(const Grid& g) {
        static std::mutex mu;
        static std::map<std::tuple<int, int, double>, std::unique_ptr<SpectralCache>> registry;
        std::lock_guard<std::mutex> lock(mu);
        auto key = std::make_tuple(g.dim, g.n, g.period);
        auto it = registry.find(key);
        if (it == registry.end())
            it = registry.emplace(key, std::unique_ptr<SpectralCache>(new SpectralCache(g))).first;
        return *it->second;
    }

    const detail::FftPlan& plan() const { return plan_; }

    int mode_index(int i) const { return i < grid_.n / 2 ? i : i - grid_.n; }

    /// Physical wavenumber 2*pi*k/L along one axis.
    double xi(int i) const { return two_pi_over_l_ * mode_index(i); }

    /// Derivative wavenumber: the sign-ambiguous Nyquist mode is dropped so
    /// derivatives of real fields stay real.
    double dxi(int i) const { return i == grid_.n / 2 ? 0.0 : xi(i); }

    const std::vector<double>& helmholtz_symbol() const { return helm_; }
    const std::vector<double>& helmholtz_inverse_symbol() const { return inv_helm_; }
    /// Symbol of Delta built from derivative wavenumbers (matches div o grad).
    const std::vector<double>& laplace_symbol() const { return lap_; }
    const std::vector<uint8_t>& dealias_mask() const { return mask_; }
    /// |k| with integer per-axis modes; the dyadic decomposition scale.
    const std::vector<double>& mode_radius() const { return radius_; }

    int dealias_cutoff() const { return cutoff_; }

private:
    explicit SpectralCache(const Grid& g)
        : grid_(g),
          plan_(g.n),
          two_pi_over_l_(2.0 * std::numbers::pi / g.period),
          cutoff_(g.n / 3) {
        const std::size_t m = g.num_points();
        helm_.resize(m);
        inv_helm_.resize(m);
        lap_.resize(m);
        mask_.resize(m);
        radius_.resize(m);
        const int n = g.n;
        for (std::size_t idx = 0; idx < m; ++idx) {
            int i0 = 0, i1 = 0;
            if (g.dim == 1) {
                i0 = static_cast<int>(idx);
            } else {
                i0 = static_cast<int>(idx) / n;
                i1 = static_cast<int>(idx) % n;
            }
            double xi2 = xi(i0) * xi(i0);
            double dxi2 = dxi(i0) * dxi(i0);
            double k2 = static_cast<double>(mode_index(i0)) * mode_index(i0);
            bool in = std::abs(mode_index(i0)) <= cutoff_;
            if (g.dim == 2) {
                xi2 += xi(i1) * xi(i1);
                dxi2 += dxi(i1) * dxi(i1);
                k2 += static_cast<double>(mode_index(i1)) * mode_index(i1);
                in = in && std::abs(mode_index(i1)) <= cutoff_;
            }
            helm_[idx] = 1.0 + xi2;
            inv_helm_[idx] = 1.0 / (1.0 + xi2);
            lap_[idx] = -dxi2;
            mask_[idx] = in ? 1 : 0;
            radius_[idx] = std::sqrt(k2);
        }
    }

    Grid grid_;
    detail::FftPlan plan_;
    double two_pi_over_l_;
    int cutoff_;
    std::vector<double> helm_, inv_helm_, lap_, radius_;
    std::vector<uint8_t> mask_;
};

namespace detail {

/// In-place FFT along every axis of a row-major complex lattice.
inline void transform_all_axes(const Grid& g, std::vector<std::complex<double>>& a, bool inv) {
    const auto& plan = SpectralCache::get(g).plan();
    const int n = g.n;
    if (g.dim == 1) {
        inv ? plan.inverse(a.data()) : plan.forward(a.data());
        return;
    }
    // axis 1: contiguous rows
    for (int r = 0; r < n; ++r) {
        auto* row = a.data() + static_cast<std::size_t>(r) * n;
        inv ? plan.inverse(row) : plan.forward(row);
    }
    // axis 0: strided columns through a scratch buffer
    std::vector<std::complex<double>> scratch(n);
    for (int c = 0; c < n; ++c) {
        for (int r = 0; r < n; ++r) scratch[r] = a[static_cast<std::size_t>(r) * n + c];
        inv ? plan.inverse(scratch.data()) : plan.forward(scratch.data());
        for (int r = 0; r < n; ++r) a[static_cast<std::size_t>(r) * n + c] = scratch[r];
    }
}

}  // namespace detail

inline Spectrum to_spectrum(const Field& f) {
    Spectrum s(f.grid());
    for (std::size_t i = 0; i < f.size(); ++i) s.coeff[i] = f[i];
    detail::transform_all_axes(f.grid(), s.coeff, false);
    const double scale = 1.0 / static_cast<double>(f.grid().num_points());
    for (auto& c : s.coeff) c *= scale;
    return s;
}

inline Field to_field(const Spectrum& s) {
    std::vector<std::complex<double>> a = s.coeff;
    detail::transform_all_axes(s.grid, a, true);
    Field f(s.grid);
    for (std::size_t i = 0; i < f.size(); ++i) f[i] = a[i].real();
    return f;
}

inline Field apply_symbol(const Field& f, const std::vector<double>& symbol) {
    Spectrum s = to_spectrum(f);
    for (std::size_t i = 0; i < s.coeff.size(); ++i) s.coeff[i] *= symbol[i];
    return to_field(s);
}

/// Multiply spectral coefficients by 1 + |xi|^2, the symbol of I - Delta.
inline Field helmholtz(const Field& f) {
    return apply_symbol(f, SpectralCache::get(f.grid()).helmholtz_symbol());
}

/// Multiply spectral coefficients by 1 / (1 + |xi|^2); exact inverse of helmholtz.
inline Field helmholtz_inverse(const Field& f) {
    return apply_symbol(f, SpectralCache::get(f.grid()).helmholtz_inverse_symbol());
}

inline VectorField helmholtz(const VectorField& v) {
    VectorField r(v.grid());
    for (int a = 0; a < v.dim(); ++a) r[a] = helmholtz(v[a]);
    return r;
}

inline VectorField helmholtz_inverse(const VectorField& v) {
    VectorField r(v.grid());
    for (int a = 0; a < v.dim(); ++a) r[a] = helmholtz_inverse(v[a]);
    return r;
}

inline Field laplacian(const Field& f) {
    return apply_symbol(f, SpectralCache::get(f.grid()).laplace_symbol());
}

inline VectorField laplacian(const VectorField& v) {
    VectorField r(v.grid());
    for (int a = 0; a < v.dim(); ++a) r[a] = laplacian(v[a]);
    return r;
}

/// Zero every spectral mode outside the two-thirds mask (|k_a| <= floor(n/3)
/// per axis).
inline void dealias_in_place(Spectrum& s) {
    const auto& mask = SpectralCache::get(s.grid).dealias_mask();
    for (std::size_t i = 0; i < s.coeff.size(); ++i)
        if (!mask[i]) s.coeff[i] = 0.0;
}

inline Field dealias(const Field& f) {
    Spectrum s = to_spectrum(f);
    dealias_in_place(s);
    return to_field(s);
}

inline VectorField dealias(const VectorField& v) {
    VectorField r(v.grid());
    for (int a = 0; a < v.dim(); ++a) r[a] = dealias(v[a]);
    return r;
}

/// Samplewise product followed by dealiasing; for inputs supported inside the
/// mask this is the exact truncation of the trigonometric product.
inline Field multiply(const Field& a, const Field& b) { return dealias(multiply_raw(a, b)); }

namespace detail {

inline void derivative_in_spectrum(const Grid& g, const std::vector<std::complex<double>>& in,
                                   std::vector<std::complex<double>>& out, int axis) {
    const auto& cache = SpectralCache::get(g);
    const int n = g.n;
    out.resize(in.size());
    if (g.dim == 1) {
        for (int i = 0; i < n; ++i) out[i] = in[i] * std::complex<double>(0.0, cache.dxi(i));
    } else {
        for (int r = 0; r < n; ++r)
            for (int c = 0; c < n; ++c) {
                const double k = axis == 0 ? cache.dxi(r) : cache.dxi(c);
                out[static_cast<std::size_t>(r) * n + c] =
                    in[static_cast<std::size_t>(r) * n + c] * std::complex<double>(0.0, k);
            }
    }
}

}  // namespace detail

/// Exact spectral derivative of the trigonometric interpolant along one axis.
inline Field derivative(const Field& f, int axis) {
    Spectrum s = to_spectrum(f);
    Spectrum d(f.grid());
    detail::derivative_in_spectrum(f.grid(), s.coeff, d.coeff, axis);
    return to_field(d);
}

inline VectorField gradient(const Field& f) {
    const Grid& g = f.grid();
    Spectrum s = to_spectrum(f);
    VectorField r(g);
    Spectrum d(g);
    for (int a = 0; a < g.dim; ++a) {
        detail::derivative_in_spectrum(g, s.coeff, d.coeff, a);
        r[a] = to_field(d);
    }
    return r;
}

inline Field divergence(const VectorField& v) {
    const Grid& g = v.grid();
    Spectrum acc(g);
    Spectrum d(g);
    for (int a = 0; a < g.dim; ++a) {
        Spectrum s = to_spectrum(v[a]);
        detail::derivative_in_spectrum(g, s.coeff, d.coeff, a);
        for (std::size_t i = 0; i < acc.coeff.size(); ++i) acc.coeff[i] += d.coeff[i];
    }
    return to_field(acc);
}

/// Jacobian matrix; entry (i, j) = d_j v_i.
inline MatrixField jacobian(const VectorField& v) {
    const Grid& g = v.grid();
    MatrixField m(g);
    Spectrum d(g);
    for (int i = 0; i < g.dim; ++i) {
        Spectrum s = to_spectrum(v[i]);
        for (int j = 0; j < g.dim; ++j) {
            detail::derivative_in_spectrum(g, s.coeff, d.coeff, j);
            m.entry(i, j) = to_field(d);
        }
    }
    return m;
}

/// Row-wise divergence of a matrix field: result_i = sum_j d_j A_ij.
inline VectorField divergence(const MatrixField& m) {
    VectorField r(m.grid());
    for (int i = 0; i < m.dim; ++i) {
        VectorField row(m.grid());
        for (int j = 0; j < m.dim; ++j) row[j] = m.entry(i, j);
        r[i] = divergence(row);
    }
    return r;
}

// ---- spectral norms ---------------------------------------------------------

/// L^2 norm evaluated from Fourier coefficients (Parseval): L^d sum |u_k|^2.
inline double l2_norm_spectral(const Field& f) {
    Spectrum s = to_spectrum(f);
    double acc = 0.0;
    for (const auto& c : s.coeff) acc += std::norm(c);
    double ld = 1.0;
    for (int a = 0; a < f.grid().dim; ++a) ld *= f.grid().period;
    return std::sqrt(ld * acc);
}

/// Grid Sobolev norm H^s with integer-scale spectral weights (1 + |k|^2)^s,
/// the discrete stand-in for the B^s_{2,2} norm.
inline double sobolev_norm(const Field& f, double s) {
    Spectrum sp = to_spectrum(f);
    const auto& radius = SpectralCache::get(f.grid()).mode_radius();
    double acc = 0.0;
    for (std::size_t i = 0; i < sp.coeff.size(); ++i)
        acc += std::pow(1.0 + radius[i] * radius[i], s) * std::norm(sp.coeff[i]);
    double ld = 1.0;
    for (int a = 0; a < f.grid().dim; ++a) ld *= f.grid().period;
    return std::sqrt(ld * acc);
}

inline double sobolev_norm(const VectorField& v, double s) {
    double acc = 0.0;
    for (const auto& f : v.comp) {
        const double c = sobolev_norm(f, s);
        acc += c * c;
    }
    return std::sqrt(acc);
}

/// True when every spectral coefficient outside the dealias mask is below tol
/// relative to the largest coefficient.
inline bool is_band_limited(const Field& f, double tol = 1e-12) {
    Spectrum s = to_spectrum(f);
    const auto& mask = SpectralCache::get(f.grid()).dealias_mask();
    double peak = 0.0;
    for (const auto& c : s.coeff) peak = std::max(peak, std::abs(c));
    if (peak == 0.0) return true;
    for (std::size_t i = 0; i < s.coeff.size(); ++i)
        if (!mask[i] && std::abs(s.coeff[i]) > tol * peak) return false;
    return true;
}

}  // namespace mch
