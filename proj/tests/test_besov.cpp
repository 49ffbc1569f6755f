#include <catch2/catch_amalgamated.hpp>

#include "mch/besov.hpp"
#include "mch/inequalities.hpp"
#include "mch/random_fields.hpp"
#include "test_util.hpp"

using namespace mch;
using testutil::rel_l2;
using testutil::sampled;

namespace {
const double kPi = std::numbers::pi;

Field plateau_mode(const Grid& g, int k) {
    return sampled(g, [&](double x, double) { return std::cos(2 * kPi * k * x / g.period); });
}
}  // namespace

TEST_CASE("partition of unity over the dyadic blocks") {
    SECTION("constant field lives in block -1 alone") {
        const Grid g(1, 64, 1.0);
        Field f(g);
        for (std::size_t i = 0; i < f.size(); ++i) f[i] = 2.5;
        const LPDecomposition dec = lp_decompose(f);
        CHECK(rel_l2(dec.block(-1), f) <= 1e-13);
        for (int q = 0; q <= dec.qmax(); ++q) CHECK(linf_norm(dec.block(q)) <= 1e-13);
    }
    SECTION("random fields reconstruct, including non-band-limited noise") {
        for (int dim : {1, 2}) {
            const Grid g(dim, dim == 1 ? 256 : 64, 1.0);
            Rng rng(64 + dim);
            Field f(g);
            for (std::size_t i = 0; i < f.size(); ++i) f[i] = rng.normal();
            const LPDecomposition dec = lp_decompose(f);
            Field sum(g);
            for (const auto& b : dec.blocks) sum += b;
            CHECK(rel_l2(sum, f) <= 1e-12);
        }
    }
}

TEST_CASE("block spectral supports sit in the dyadic annuli") {
    const Grid g(1, 256, 1.0);
    const Field f = random_bandlimited(g, 1.6, 2718);
    const auto& radius = SpectralCache::get(g).mode_radius();
    const LPDecomposition dec = lp_decompose(f);
    for (int q = -1; q <= dec.qmax(); ++q) {
        const Spectrum s = to_spectrum(dec.block(q));
        for (std::size_t i = 0; i < s.coeff.size(); ++i) {
            const double r = radius[i];
            const bool inside =
                q == -1 ? r < lp::kChiOuter : (r > lp::annulus_inner(q) && r < lp::annulus_outer(q));
            if (!inside) CHECK(std::abs(s.coeff[i]) <= 1e-14);
        }
    }
    // non-adjacent blocks have disjoint supports: annuli separate when |q - q'| >= 2
    for (int q = 0; q + 2 <= dec.qmax(); ++q)
        CHECK(lp::annulus_outer(q) < lp::annulus_inner(q + 2));
}

TEST_CASE("a plateau mode occupies exactly one block") {
    const Grid g(1, 256, 1.0);
    for (int q : {1, 2, 3, 4}) {
        const int k = 3 * (1 << (q - 1));  // |k| = 1.5 * 2^q, on the plateau of phi(2^-q .)
        const Field f = plateau_mode(g, k);
        const LPDecomposition dec = lp_decompose(f);
        for (int qq = -1; qq <= dec.qmax(); ++qq) {
            if (qq == q)
                CHECK(rel_l2(dec.block(qq), f) <= 1e-13);
            else
                CHECK(linf_norm(dec.block(qq)) <= 1e-13 * linf_norm(f));
        }
    }
}

TEST_CASE("block L^p norms via grid quadrature") {
    const Grid g(1, 64, 1.0);
    SECTION("zero field") {
        const LPDecomposition dec = lp_decompose(Field(g));
        for (int q = -1; q <= dec.qmax(); ++q) CHECK(lp_norm(dec, q, 2.0) == 0.0);
    }
    SECTION("unit constant has block -1 L1 norm equal to the torus measure") {
        Field f(g);
        for (std::size_t i = 0; i < f.size(); ++i) f[i] = 1.0;
        const LPDecomposition dec = lp_decompose(f);
        CHECK(std::abs(lp_norm(dec, -1, 1.0) - 1.0) <= 1e-13);
    }
    SECTION("p = 2 agrees with per-block Parseval energy") {
        const Grid gg(1, 256, 1.0);
        const Field f = random_bandlimited(gg, 1.9, 404);
        const LPDecomposition dec = lp_decompose(f);
        for (int q = -1; q <= dec.qmax(); ++q) {
            CHECK(std::abs(lp_norm(dec, q, 2.0) - l2_norm_spectral(dec.block(q))) <= 1e-10);
        }
    }
    SECTION("block index out of range") {
        const LPDecomposition dec = lp_decompose(Field(g));
        CHECK_THROWS_AS(lp_norm(dec, -2, 2.0), std::out_of_range);
        CHECK_THROWS_AS(lp_norm(dec, dec.qmax() + 1, 2.0), std::out_of_range);
    }
}

TEST_CASE("besov norm basics") {
    const Grid g(1, 256, 1.0);
    SECTION("zero field") { CHECK(besov_norm(Field(g), {1.5, 2.0, 2.0}) == 0.0); }
    SECTION("single-block field reduces to 2^{qs} times the block norm") {
        const int q = 3, k = 12;
        const Field f = plateau_mode(g, k);
        for (double s : {-0.5, 0.0, 2.0})
            for (double r : {1.0, 2.0, kInf}) {
                const double expect = std::pow(2.0, q * s) * lp_quadrature_norm(f, 2.0);
                CHECK(std::abs(besov_norm(f, {s, 2.0, r}) - expect) <= 1e-12 * expect);
            }
    }
    SECTION("B^0_{2,2} is equivalent to L2 within the cutoff bracket") {
        // block multipliers overlap in pairs with values summing to 1, so the
        // energy ratio lies in [1/sqrt(2), 1]
        for (int i = 0; i < 20; ++i) {
            Rng rng(mix_seed(99, i));
            const Field f = random_bandlimited(g, rng.uniform(1.5, 3.0), mix_seed(98, i));
            const double ratio = besov_norm(f, {0.0, 2.0, 2.0}) / l2_norm(f);
            CHECK(ratio >= 1.0 / std::sqrt(2.0) - 1e-12);
            CHECK(ratio <= 1.0 + 1e-12);
        }
    }
}

TEST_CASE("besov norm monotonicity in s") {
    const Grid g(1, 256, 1.0);
    // With the block weights 2^{qs} (q >= -1), monotonicity with constant 1
    // holds for fields with no Delta_{-1} content; in general the embedding
    // constant 2^{s2 - s1} is sharp (the -1 block weight decreases in s).
    for (int i = 0; i < 10; ++i) {
        const Field f = random_bandlimited(g, 2.0, mix_seed(311, i));
        Field highpass = f - lp_block(f, -1);
        const double s1 = 0.5, s2 = 2.0;
        for (double r : {1.0, 2.0, kInf}) {
            CHECK(besov_norm(highpass, {s1, 2.0, r}) <=
                  besov_norm(highpass, {s2, 2.0, r}) * (1.0 + 1e-12));
            CHECK(besov_norm(f, {s1, 2.0, r}) <=
                  std::pow(2.0, s2 - s1) * besov_norm(f, {s2, 2.0, r}) * (1.0 + 1e-12));
        }
    }
    // constants witness that the unweighted claim cannot hold with C = 1
    Field c(g);
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = 1.0;
    CHECK(besov_norm(c, {2.0, 2.0, 2.0}) < besov_norm(c, {0.5, 2.0, 2.0}));
}

TEST_CASE("complex interpolation ratio") {
    const Grid g(1, 256, 1.0);
    const Field f = random_bandlimited(g, 2.0, 6060);
    SECTION("endpoints give ratio exactly 1") {
        for (double theta : {0.0, 1.0}) {
            const RatioSample rs = check_interpolation(f, 0.5, 2.5, theta, 2.0, 2.0);
            REQUIRE(rs.valid);
            CHECK(std::abs(rs.ratio - 1.0) <= 1e-12);
        }
    }
    SECTION("single-block fields give ratio 1 for interior theta") {
        const Field p = plateau_mode(g, 12);
        const RatioSample rs = check_interpolation(p, 0.5, 2.5, 0.4, 2.0, 2.0);
        REQUIRE(rs.valid);
        CHECK(std::abs(rs.ratio - 1.0) <= 1e-12);
    }
    SECTION("random ensemble never exceeds 1") {
        double worst = 0.0;
        for (int i = 0; i < 50; ++i) {
            Rng rng(mix_seed(17, i));
            const Field h = random_bandlimited(g, rng.uniform(1.5, 3.0), mix_seed(18, i));
            const RatioSample rs =
                check_interpolation(h, 0.0, 3.0, rng.uniform(0.1, 0.9), 2.0, 2.0);
            if (rs.valid) worst = std::max(worst, rs.ratio);
        }
        CHECK(worst <= 1.0 + 1e-10);
    }
    SECTION("zero field samples are skipped") {
        const RatioSample rs = check_interpolation(Field(g), 0.5, 2.5, 0.5, 2.0, 2.0);
        CHECK_FALSE(rs.valid);
    }
}

TEST_CASE("commutator behavior") {
    const Grid g(1, 128, 1.0);
    const Field f = random_bandlimited(g, 1.8, 777);
    SECTION("constant advecting field commutes with every block") {
        VectorField v(g);
        for (std::size_t i = 0; i < v[0].size(); ++i) v[0][i] = 0.7;
        const double scale = linf_norm(gradient(f)[0]);
        for (int q : {-1, 0, 2, 5}) CHECK(linf_norm(commutator(v, f, q)) <= 1e-12 * scale);
    }
    SECTION("zero advecting field gives zero") {
        CHECK(linf_norm(commutator(VectorField(g), f, 2)) == 0.0);
    }
    SECTION("block index validated") {
        CHECK_THROWS_AS(commutator(VectorField(g), f, lp_qmax(g) + 1), std::out_of_range);
    }
    SECTION("ratio is homogeneous of degree zero in f") {
        const VectorField v = random_bandlimited_vector(g, 2.0, 888);
        const RatioSample a = check_commutator(v, f, 2.0, 2.0, 2.0);
        const RatioSample b = check_commutator(v, 2.0 * f, 2.0, 2.0, 2.0);
        REQUIRE(a.valid);
        REQUIRE(b.valid);
        CHECK(std::abs(a.ratio - b.ratio) <= 1e-10 * a.ratio);
    }
    SECTION("constant v yields ratio 0") {
        VectorField v(g);
        for (std::size_t i = 0; i < v[0].size(); ++i) v[0][i] = 1.3;
        const RatioSample rs = check_commutator(v, f, 2.0, 2.0, 2.0);
        REQUIRE(rs.valid);
        CHECK(rs.ratio <= 1e-10);
    }
}

TEST_CASE("morse product checks") {
    const Grid g(1, 128, 1.0);
    const Field f = random_bandlimited(g, 2.0, 4321);
    SECTION("constant second factor scales out of the algebra ratio") {
        Field one(g), five(g);
        for (std::size_t i = 0; i < one.size(); ++i) one[i] = 1.0, five[i] = 5.0;
        MorseParams mp;
        mp.s = 2.0;
        const RatioSample r1 = check_morse(f, one, MorseVariant::algebra, mp);
        const RatioSample r5 = check_morse(f, five, MorseVariant::algebra, mp);
        REQUIRE(r1.valid);
        REQUIRE(r5.valid);
        CHECK(std::abs(r1.ratio - r5.ratio) <= 1e-10 * r1.ratio);
        CHECK(std::abs(besov_norm(multiply(f, five), {2.0, 2.0, 2.0}) -
                       5.0 * besov_norm(f, {2.0, 2.0, 2.0})) <=
              1e-10 * besov_norm(f, {2.0, 2.0, 2.0}));
    }
    SECTION("squared low mode expands into two known blocks") {
        // cos(2 pi 6 x)^2 = 1/2 + 1/2 cos(2 pi 12 x): block -1 plus block 3
        const Field p = plateau_mode(g, 6);
        const Field sq = multiply(p, p);
        const double s = 1.5, L = 1.0;
        const double const_l2 = 0.5 * std::sqrt(L);            // ||1/2||_{L^2}
        const double mode_l2 = 0.5 / std::sqrt(2.0);           // ||1/2 cos||_{L^2}
        const double expect = std::sqrt(std::pow(std::pow(2.0, -s) * const_l2, 2.0) +
                                        std::pow(std::pow(2.0, 3 * s) * mode_l2, 2.0));
        CHECK(std::abs(besov_norm(sq, {s, 2.0, 2.0}) - expect) <= 1e-12 * expect);
    }
    SECTION("hypothesis violations are rejected") {
        MorseParams bad;
        bad.s = -1.0;
        CHECK_THROWS_AS(check_morse(f, f, MorseVariant::algebra, bad), std::invalid_argument);
        MorseParams dual;
        dual.s1 = 1.0;  // violates s1 <= d/p = 0.5
        dual.s2 = 1.5;
        CHECK_THROWS_AS(check_morse(f, f, MorseVariant::duality, dual), std::invalid_argument);
        MorseParams crit;
        crit.p = 3.0;  // violates p <= 2d = 2
        CHECK_THROWS_AS(check_morse(f, f, MorseVariant::critical, crit), std::invalid_argument);
    }
}

TEST_CASE("B^0_{inf,inf} of a single-block field is its block sup") {
    const Grid g(1, 256, 1.0);
    const Field f = plateau_mode(g, 12);
    CHECK(std::abs(b0_inf_inf_norm(f) - linf_norm(f)) <= 1e-12);
}

TEST_CASE("sobolev surrogate at s = 0 is the L2 norm") {
    const Grid g(1, 128, 1.0);
    const Field f = random_bandlimited(g, 2.0, 107);
    CHECK(std::abs(sobolev_norm(f, 0.0) - l2_norm(f)) <= 1e-12);
}

TEST_CASE("log interpolation corollary carries the stated q factor") {
    const Grid g(1, 128, 1.0);
    const Field f = random_bandlimited(g, 2.0, 2023);
    // at q = 2d the prefactor (2q - d)/(q - d) equals 3 exactly
    const double q = 2.0 * g.dim;
    const double factor = (2.0 * q - g.dim) / (q - g.dim);
    CHECK(factor == 3.0);
    const RatioSample rs = check_log_interpolation_corollary(f, q);
    REQUIRE(rs.valid);
    const double rhs_with_factor =
        factor * (1.0 + b0_inf_inf_norm(f) * std::log(std::numbers::e + w1q_norm(f, q)));
    CHECK(std::abs(rs.ratio - linf_norm(f) / rhs_with_factor) <= 1e-12);
    CHECK_THROWS_AS(check_log_interpolation_corollary(f, 0.5), std::invalid_argument);
}
