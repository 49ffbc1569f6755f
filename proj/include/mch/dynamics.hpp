#pragma once

#include <cmath>
#include <map>
#include <stdexcept>
#include <string>

#include "mch/spectral.hpp"

namespace mch {

/// Evolved unknowns of the nonlocal system: velocity u and the averaged
/// density deviation gamma, on one shared Grid.
struct State {
    VectorField u;
    Field gamma;
    double time = 0.0;

    State() = default;
    State(VectorField u_, Field gamma_, double t = 0.0)
        : u(std::move(u_)), gamma(std::move(gamma_)), time(t) {
        if (!(u.grid() == gamma.grid()))
            throw std::invalid_argument("State: u and gamma must share a grid");
    }

    const Grid& grid() const { return gamma.grid(); }
};

/// Momentum-form unknowns m = (I - Delta) u and rho = (I - Delta) gamma.
struct MomentumState {
    VectorField m;
    Field rho;
};

inline MomentumState to_momentum(const State& s) {
    return {helmholtz(s.u), helmholtz(s.gamma)};
}

namespace detail {

// Pointwise algebra on fields; every product is dealiased individually.

inline MatrixField mat_mul(const MatrixField& a, const MatrixField& b) {
    MatrixField r(a.grid());
    for (int i = 0; i < r.dim; ++i)
        for (int j = 0; j < r.dim; ++j)
            for (int k = 0; k < r.dim; ++k) r.entry(i, j) += multiply(a.entry(i, k), b.entry(k, j));
    return r;
}

inline MatrixField mat_scale(const MatrixField& a, const Field& h) {
    MatrixField r(a.grid());
    for (int i = 0; i < r.dim; ++i)
        for (int j = 0; j < r.dim; ++j) r.entry(i, j) = multiply(a.entry(i, j), h);
    return r;
}

inline MatrixField outer(const VectorField& a, const VectorField& b) {
    MatrixField r(a.grid());
    for (int i = 0; i < r.dim; ++i)
        for (int j = 0; j < r.dim; ++j) r.entry(i, j) = multiply(a[i], b[j]);
    return r;
}

inline MatrixField identity_times(const Field& h) {
    MatrixField r(h.grid());
    for (int i = 0; i < r.dim; ++i) r.entry(i, i) = h;
    return r;
}

/// Frobenius square |A|^2 = sum_ij A_ij^2, dealiased termwise.
inline Field frobenius_square(const MatrixField& a) {
    Field r(a.grid());
    for (const auto& entry : a.e) r += multiply(entry, entry);
    return r;
}

inline VectorField mat_vec(const MatrixField& a, const VectorField& x) {
    VectorField r(x.grid());
    for (int i = 0; i < a.dim; ++i)
        for (int j = 0; j < a.dim; ++j) r[i] += multiply(a.entry(i, j), x[j]);
    return r;
}

inline VectorField vec_scale(const VectorField& x, const Field& h) {
    VectorField r(x.grid());
    for (int i = 0; i < x.dim(); ++i) r[i] = multiply(x[i], h);
    return r;
}

inline Field dot(const VectorField& a, const VectorField& b) {
    Field r(a.grid());
    for (int i = 0; i < a.dim(); ++i) r += multiply(a[i], b[i]);
    return r;
}

inline Field trace(const MatrixField& a) {
    Field r(a.grid());
    for (int i = 0; i < a.dim; ++i) r += a.entry(i, i);
    return r;
}

/// Shared derivative data for one right-hand-side assembly.
struct StateDerivatives {
    MatrixField jac_u;   // entry (i, j) = d_j u_i
    Field div_u;
    VectorField grad_gamma;

    explicit StateDerivatives(const State& s)
        : jac_u(jacobian(s.u)), div_u(trace(jac_u)), grad_gamma(gradient(s.gamma)) {}
};

/// The three term groups of the u-equation source, kept in the grouping of the
/// momentum-to-velocity rewrite: two matrix groups under (I-Delta)^{-1} div and
/// one vector group under (I-Delta)^{-1}.
inline VectorField assemble_F1(const State& s, const StateDerivatives& d) {
    const MatrixField& J = d.jac_u;
    const MatrixField Jt = J.transpose();

    MatrixField grad_quadratic = mat_mul(J, J + Jt) - mat_mul(Jt, J) - mat_scale(J, d.div_u);

    Field pressure_scalar = multiply(s.gamma, s.gamma);
    pressure_scalar += frobenius_square(J);
    pressure_scalar += dot(d.grad_gamma, d.grad_gamma);
    pressure_scalar *= 0.5;
    MatrixField pressure = identity_times(pressure_scalar) - outer(d.grad_gamma, d.grad_gamma);

    VectorField transport = vec_scale(s.u, d.div_u) + mat_vec(Jt, s.u);

    VectorField f1 = helmholtz_inverse(divergence(grad_quadratic));
    f1 += helmholtz_inverse(divergence(pressure));
    f1 += helmholtz_inverse(transport);
    return -1.0 * f1;
}

/// The two term groups of the gamma-equation source.
inline Field assemble_F2(const State& s, const StateDerivatives& d) {
    const MatrixField& J = d.jac_u;
    const VectorField& g = d.grad_gamma;
    VectorField flux = mat_vec(J.transpose(), g) + mat_vec(J, g) - vec_scale(g, d.div_u);
    Field f2 = helmholtz_inverse(divergence(flux));
    f2 += helmholtz_inverse(multiply(s.gamma, d.div_u));
    return -1.0 * f2;
}

}  // namespace detail

inline VectorField compute_F1(const State& s) {
    detail::StateDerivatives d(s);
    return detail::assemble_F1(s, d);
}

inline Field compute_F2(const State& s) {
    detail::StateDerivatives d(s);
    return detail::assemble_F2(s, d);
}

struct StateRhs {
    VectorField du;
    Field dgamma;
};

/// Right-hand side of the nonlocal form: (-u . grad u + F1, -u . grad gamma + F2).
inline StateRhs nonlocal_rhs(const State& s) {
    detail::StateDerivatives d(s);
    VectorField du = detail::assemble_F1(s, d) - detail::mat_vec(d.jac_u, s.u);
    Field dgamma = detail::assemble_F2(s, d) - detail::dot(s.u, d.grad_gamma);
    return {std::move(du), std::move(dgamma)};
}

struct MomentumRhs {
    VectorField dm;
    Field drho;
};

/// Right-hand side of the momentum form
///   dm/dt = -u . grad m - grad u^T . m - m div u - rho grad gamma
///   drho/dt = -div(rho u).
/// The pair is rejected when m deviates from (I - Delta) u beyond 1e-10.
inline MomentumRhs momentum_rhs(const MomentumState& ms, const State& s) {
    const VectorField hu = helmholtz(s.u);
    const Field hg = helmholtz(s.gamma);
    double diff = 0.0, scale = 0.0;
    for (int a = 0; a < s.u.dim(); ++a) {
        const double e = l2_norm(ms.m[a] - hu[a]);
        diff += e * e;
        const double n = l2_norm(ms.m[a]);
        scale += n * n;
    }
    {
        const double e = l2_norm(ms.rho - hg);
        diff += e * e;
        const double n = l2_norm(ms.rho);
        scale += n * n;
    }
    if (std::sqrt(diff) > 1e-10 * std::max(1.0, std::sqrt(scale)))
        throw std::invalid_argument("momentum_rhs: momentum pair inconsistent with state");

    detail::StateDerivatives d(s);
    const MatrixField jac_m = jacobian(ms.m);
    const Grid& g = s.grid();
    VectorField dm(g);
    for (int i = 0; i < g.dim; ++i) {
        Field acc(g);
        for (int j = 0; j < g.dim; ++j) {
            acc += multiply(s.u[j], jac_m.entry(i, j));       // convection u . grad m
            acc += multiply(d.jac_u.entry(j, i), ms.m[j]);    // stretching grad u^T . m
        }
        acc += multiply(ms.m[i], d.div_u);                    // expansion m div u
        acc += multiply(ms.rho, d.grad_gamma[i]);             // force rho grad gamma
        dm[i] = -acc;
    }
    VectorField rho_u(g);
    for (int j = 0; j < g.dim; ++j) rho_u[j] = multiply(ms.rho, s.u[j]);
    Field drho = -divergence(rho_u);
    return {std::move(dm), std::move(drho)};
}

/// Conserved energy H = int (|u|^2 + |grad u|^2 + gamma^2 + |grad gamma|^2) dx
/// by grid quadrature.
inline double energy(const State& s) {
    const MatrixField J = jacobian(s.u);
    const VectorField g = gradient(s.gamma);
    double acc = 0.0;
    for (std::size_t i = 0; i < s.gamma.size(); ++i) {
        double v = s.gamma[i] * s.gamma[i];
        for (const auto& f : J.e) v += f[i] * f[i];
        for (const auto& f : g.comp) v += f[i] * f[i];
        for (const auto& f : s.u.comp) v += f[i] * f[i];
        acc += v;
    }
    return acc * s.grid().cell_volume();
}

/// Same energy from Fourier coefficients: L^d sum (1 + |xi|^2)(|u_k|^2 + |gamma_k|^2),
/// with the gradient part using the derivative wavenumbers so both routes agree
/// on every field.
inline double energy_spectral(const State& s) {
    const auto& cache = SpectralCache::get(s.grid());
    const auto& lap = cache.laplace_symbol();
    double acc = 0.0;
    auto add = [&](const Field& f) {
        const Spectrum sp = to_spectrum(f);
        for (std::size_t i = 0; i < sp.coeff.size(); ++i)
            acc += (1.0 - lap[i]) * std::norm(sp.coeff[i]);
    };
    for (const auto& f : s.u.comp) add(f);
    add(s.gamma);
    double ld = 1.0;
    for (int a = 0; a < s.grid().dim; ++a) ld *= s.grid().period;
    return ld * acc;
}

namespace detail {

inline double relative_l2(const Field& a, const Field& b) {
    const double d = l2_norm(a - b);
    const double scale = std::max(l2_norm(a), l2_norm(b));
    return scale > 0.0 ? d / scale : 0.0;
}

inline double relative_l2(const VectorField& a, const VectorField& b) {
    double d = 0.0, na = 0.0, nb = 0.0;
    for (int i = 0; i < a.dim(); ++i) {
        const double e = l2_norm(a[i] - b[i]);
        d += e * e;
        const double x = l2_norm(a[i]);
        na += x * x;
        const double y = l2_norm(b[i]);
        nb += y * y;
    }
    const double scale = std::sqrt(std::max(na, nb));
    return scale > 0.0 ? std::sqrt(d) / scale : 0.0;
}

}  // namespace detail

struct AppendixReport {
    double total = 0.0;                          // joint residual of both equations
    std::map<std::string, double> per_identity;  // residuals of the rewrite identities
};

/// Certifies the momentum-to-nonlocal rewrite on a band-limited state: the
/// joint residual of (I - Delta)(nonlocal rhs) against the momentum rhs, plus
/// each intermediate integration-by-parts identity assembled side by side.
inline AppendixReport appendix_consistency(const State& s) {
    AppendixReport rep;
    const Grid& grid = s.grid();
    detail::StateDerivatives d(s);
    const MatrixField& J = d.jac_u;
    const MatrixField Jt = J.transpose();
    const VectorField& g = d.grad_gamma;
    const Field& div_u = d.div_u;
    const VectorField lap_u = laplacian(s.u);
    const Field lap_gamma = laplacian(s.gamma);
    const MatrixField jac_lap_u = jacobian(lap_u);
    const VectorField grad_div_u = gradient(div_u);
    const VectorField grad_lap_gamma = gradient(lap_gamma);

    auto advect = [&](const VectorField& w) {
        VectorField r(grid);
        const MatrixField jw = jacobian(w);
        for (int i = 0; i < grid.dim; ++i)
            for (int j = 0; j < grid.dim; ++j) r[i] += multiply(s.u[j], jw.entry(i, j));
        return r;
    };

    // u . grad(Delta u) - Delta(u . grad u)
    //   = -div(grad u grad u + grad u grad u^T) + (grad u) . grad(div u)
    {
        VectorField lhs(grid);
        for (int i = 0; i < grid.dim; ++i)
            for (int j = 0; j < grid.dim; ++j) lhs[i] += multiply(s.u[j], jac_lap_u.entry(i, j));
        lhs -= laplacian(advect(s.u));
        VectorField rhs = -1.0 * divergence(detail::mat_mul(J, J) + detail::mat_mul(J, Jt));
        rhs += detail::mat_vec(J, grad_div_u);
        rep.per_identity["6-2"] = detail::relative_l2(lhs, rhs);
    }
    // grad u^T . (Delta u) = div(grad u^T grad u - 1/2 |grad u|^2 I)
    {
        VectorField lhs = detail::mat_vec(Jt, lap_u);
        MatrixField m = detail::mat_mul(Jt, J);
        Field half_sq = detail::frobenius_square(J);
        half_sq *= 0.5;
        m -= detail::identity_times(half_sq);
        rep.per_identity["6-3"] = detail::relative_l2(lhs, divergence(m));
    }
    // (grad u) . grad(div u) + (Delta u) div u = div(grad u (div u))
    {
        VectorField lhs = detail::mat_vec(J, grad_div_u) + detail::vec_scale(lap_u, div_u);
        rep.per_identity["6-4"] = detail::relative_l2(lhs, divergence(detail::mat_scale(J, div_u)));
    }
    // gamma grad gamma - (Delta gamma) grad gamma
    //   = div(1/2 (gamma^2 + |grad gamma|^2) I - grad gamma^T grad gamma)
    {
        VectorField lhs = detail::vec_scale(g, s.gamma) - detail::vec_scale(g, lap_gamma);
        Field scal = multiply(s.gamma, s.gamma) + detail::dot(g, g);
        scal *= 0.5;
        MatrixField m = detail::identity_times(scal) - detail::outer(g, g);
        rep.per_identity["6-5"] = detail::relative_l2(lhs, divergence(m));
    }
    // u . grad(Delta gamma) - Delta(u . grad gamma)
    //   = -div(grad gamma grad u + (grad gamma) . grad u) + grad gamma . grad(div u)
    {
        Field lhs(grid);
        for (int j = 0; j < grid.dim; ++j) lhs += multiply(s.u[j], grad_lap_gamma[j]);
        lhs -= laplacian(detail::dot(s.u, g));
        Field rhs = -divergence(detail::mat_vec(Jt, g) + detail::mat_vec(J, g));
        rhs += detail::dot(g, grad_div_u);
        rep.per_identity["6-7"] = detail::relative_l2(lhs, rhs);
    }
    // (Delta gamma)(div u) = div(grad gamma (div u)) - grad gamma . grad(div u)
    {
        Field lhs = multiply(lap_gamma, div_u);
        Field rhs = divergence(detail::vec_scale(g, div_u)) - detail::dot(g, grad_div_u);
        rep.per_identity["6-8"] = detail::relative_l2(lhs, rhs);
    }

    // joint residual: (I - Delta) applied to the nonlocal rhs vs the momentum rhs
    const StateRhs nl = nonlocal_rhs(s);
    const MomentumState ms = to_momentum(s);
    const MomentumRhs mo = momentum_rhs(ms, s);
    double diff = 0.0, na = 0.0, nb = 0.0;
    auto accumulate = [&](const Field& a, const Field& b) {
        const double e = l2_norm(a - b);
        diff += e * e;
        const double x = l2_norm(a);
        na += x * x;
        const double y = l2_norm(b);
        nb += y * y;
    };
    for (int i = 0; i < grid.dim; ++i) accumulate(helmholtz(nl.du[i]), mo.dm[i]);
    accumulate(helmholtz(nl.dgamma), mo.drho);
    const double scale = std::sqrt(std::max(na, nb));
    rep.total = scale > 0.0 ? std::sqrt(diff) / scale : 0.0;
    return rep;
}

}  // namespace mch
