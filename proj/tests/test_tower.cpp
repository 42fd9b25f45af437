#include <doctest.h>

#include "oracles.hpp"
#include "phitower/tower.hpp"

using namespace phitower;

#define CHECK_ERRC(expr, expected)                                                                 \
    do {                                                                                           \
        try {                                                                                      \
            (void)(expr);                                                                          \
            FAIL("expected error " << errc_name(expected));                                        \
        } catch (const Error& e) {                                                                 \
            CHECK(e.code() == (expected));                                                         \
        }                                                                                          \
    } while (0)

namespace {

TowerContext cheb_tower(int precision = 8, long max_level = 4) {
    auto z3 = Ring::zp(3, precision);
    RPoly P = RPoly::from_integers(z3, {BigInt(0), BigInt(9), BigInt(6), BigInt(1)});
    return TowerContext(z3, P, z3->from_integer(-3), max_level);
}

PadicSeries poly_series(const RingPtr& ring, std::vector<long> coeffs, long trunc = -1) {
    std::vector<Elt> c;
    c.reserve(coeffs.size());
    for (long v : coeffs) c.push_back(ring->from_integer(v));
    return PadicSeries::polynomial_from(std::move(c), trunc);
}

} // namespace

TEST_SUITE_BEGIN("tower");

TEST_CASE("tower construction checks the level moduli") {
    TowerContext ctx = cheb_tower();
    CHECK(ctx.degree() == 3);
    CHECK(newton_polygon(ctx.level_modulus(1)).eisenstein(3));
    CHECK(newton_polygon(ctx.level_modulus(2)).eisenstein(9));
    CHECK(newton_polygon(ctx.level_modulus(4)).eisenstein(81));

    auto z3 = Ring::zp(3, 8);
    // u0 must be a uniformizer
    CHECK_ERRC(TowerContext(z3, RPoly::from_integers(z3, {BigInt(0), BigInt(9), BigInt(6), BigInt(1)}),
                            z3->from_integer(2), 1),
               errc::inconsistent_valuation);
    // unit lower coefficient breaks the shape
    CHECK_ERRC(TowerContext(z3, RPoly::from_integers(z3, {BigInt(0), BigInt(2), BigInt(6), BigInt(1)}),
                            z3->from_integer(3), 1),
               errc::invalid_argument);
}

TEST_CASE("norm operator on polynomials matches the resultant oracle") {
    TowerContext ctx = cheb_tower();
    const RingPtr& ring = ctx.ring();

    // N_P(T) = T, as the degree is odd
    PadicSeries t = PadicSeries::identity(ring->zero(), 5);
    CHECK(series_congruent(norm_operator(ctx, t, 5), t, 8));

    // constants map to their d-th power
    PadicSeries c = poly_series(ring, {7}, 3);
    PadicSeries nc = norm_operator(ctx, c, 3);
    CHECK(nc[0].congruent(ring->from_integer(343), 8));

    for (auto coeffs : {std::vector<long>{1, 1}, {0, 1}, {0, 4, 1}, {1, 1, 2, 1}}) {
        RPoly f = RPoly(ring, [&] {
            std::vector<Elt> v;
            for (long x : coeffs) v.push_back(ring->from_integer(x));
            return v;
        }());
        RPoly lhs = norm_poly(ctx, f);
        RPoly rhs = testing::norm_via_resultant(ctx, f);
        CHECK(lhs.congruent(rhs, 8));
    }

    // N_P(f) = f mod pi on the 1 + T example
    PadicSeries f = poly_series(ring, {1, 1}, 4);
    CHECK(series_congruent(norm_operator(ctx, f, 4), f, 1));
}

TEST_CASE("norm operator congruence ladder on fixed inputs") {
    TowerContext ctx = cheb_tower();
    const RingPtr& ring = ctx.ring();

    // 1 + pi^k h maps into 1 + pi^(k+1) O[[T]]
    PadicSeries one = poly_series(ring, {1}, 6);
    for (int k = 1; k <= 3; ++k) {
        PadicSeries h = poly_series(ring, {2, 1, 0, 2, 1, 1, 2}, 6);
        PadicSeries f = one + scale(h, ring->from_integer(BigInt(pow_int(BigInt(3), k))));
        PadicSeries nf = norm_operator(ctx, f, 6);
        PadicSeries diff = nf - one;
        for (long i = 0; i <= 6; ++i)
            CHECK(diff[i].valuation().value >= k + 1);
    }

    // iterated norms stabilize: N^(m+k) f = N^k f mod pi^(k+1)
    PadicSeries f = poly_series(ring, {1, 3, 1, 0, 2}, 18).extended(18);
    PadicSeries n1 = norm_operator(ctx, f, 18);
    PadicSeries n2 = norm_operator(ctx, n1, 18);
    PadicSeries n3 = norm_operator(ctx, n2, 18);
    CHECK(series_congruent(n2, n1, 2, 6));
    CHECK(series_congruent(n3, n2, 3, 6));
}

TEST_CASE("trace operator") {
    TowerContext ctx = cheb_tower();
    const RingPtr& ring = ctx.ring();

    PadicSeries one = poly_series(ring, {1}, 3);
    PadicSeries tr1 = trace_operator(ctx, one, 3);
    CHECK(tr1[0].congruent(ring->from_integer(3), 8));

    // trace of multiplication by T on (1, T, T^2) reads off -6 from T^3 = U - 6T^2 - 9T
    PadicSeries t = PadicSeries::identity(ring->zero(), 3);
    PadicSeries trt = trace_operator(ctx, t, 3);
    CHECK(trt[0].congruent(ring->from_integer(-6), 8));
    for (long i = 1; i <= 3; ++i) CHECK(trt[i].is_zero());

    // the trace lands in pi * O_K[[T]]
    PadicSeries h = poly_series(ring, {2, 1, 1, 0, 1, 2, 2}, 2).as_series_tail_unknown();
    PadicSeries trh = trace_operator(ctx, h, 2);
    for (long i = 0; i <= 2; ++i) CHECK(trh[i].valuation().value >= 1);
}

TEST_CASE("tower norms walk down the tower") {
    TowerContext ctx = cheb_tower();
    const RingPtr& ring = ctx.ring();

    // N(u_{n+1}) = u_n, all the way to the bottom
    TowerElement u3 = tower_uniformizer(ctx, 3);
    TowerElement down = tower_norm(ctx, u3);
    CHECK(tower_congruent(down, tower_uniformizer(ctx, 2), 8));
    down = tower_norm(ctx, down);
    down = tower_norm(ctx, down);
    CHECK(down.level == 0);
    CHECK(down.rep.coeff(0).congruent(ctx.u0(), 8));

    TowerElement c = tower_constant(ctx, 2, ring->from_integer(5));
    CHECK(tower_norm(ctx, c).rep.coeff(0).congruent(ring->from_integer(125), 8));

    // the quadratic shift is norm-invariant: N(P2(u_{n+1})) = P2(u_n)
    RPoly p2 = RPoly::from_integers(ring, {BigInt(0), BigInt(4), BigInt(1)});
    TowerElement x3 = tower_element(ctx, 3, p2);
    TowerElement x2 = tower_element(ctx, 2, p2);
    CHECK(tower_congruent(tower_norm(ctx, x3), x2, 8));

    CHECK_ERRC(tower_norm(ctx, tower_constant(ctx, 0, ring->one())), errc::level_zero);
}

TEST_CASE("valuation and uniformizer division in levels") {
    TowerContext ctx = cheb_tower();
    const RingPtr& ring = ctx.ring();

    TowerElement u2 = tower_uniformizer(ctx, 2);
    CHECK(tower_valuation(ctx, u2) == Valuation{1, false});
    CHECK(tower_valuation(ctx, tower_constant(ctx, 2, ring->from_integer(3))) ==
          Valuation{9, false});

    RPoly p2 = RPoly::from_integers(ring, {BigInt(0), BigInt(4), BigInt(1)});
    TowerElement x = tower_element(ctx, 2, p2); // u(u + 4): valuation 1
    CHECK(tower_valuation(ctx, x) == Valuation{1, false});
    TowerElement unit = tower_divide_by_uniformizer(ctx, x);
    CHECK(tower_valuation(ctx, unit) == Valuation{0, false});
    // u + 4 exactly
    CHECK(unit.rep.coeff(0).congruent(ring->from_integer(4), 7));
    CHECK(unit.rep.coeff(1).congruent(ring->one(), 7));
}

TEST_CASE("coleman recovery") {
    TowerContext ctx = cheb_tower();
    const RingPtr& ring = ctx.ring();

    SUBCASE("identity sequence through the factoring path") {
        NormCompatibleSequence u = sequence_from_poly(
            ctx, RPoly::from_integers(ring, {BigInt(0), BigInt(1)}), 4);
        CHECK(is_norm_compatible(ctx, u));
        auto [e, units] = factor_by_uniformizer(ctx, u);
        CHECK(e == 1);
        for (const auto& el : units.elems) CHECK(el.rep.coeff(0).congruent(ring->one(), 7));

        ColemanRecovery rec = coleman_series(ctx, u, 2);
        CHECK(rec.certificate_ok);
        CHECK(rec.uniformizer_exponent == 1);
        CHECK(rec.series[0].is_zero());
        CHECK(rec.series[1].congruent(ring->one(), 3));
        for (long i = 2; i <= rec.series.trunc(); ++i) CHECK(rec.series[i].valuation().value >= 3);
    }

    SUBCASE("constant-one sequence recovers the constant series") {
        NormCompatibleSequence ones = sequence_from_poly(ctx, RPoly(ring, {ring->one()}), 4);
        auto [e, units] = factor_by_uniformizer(ctx, ones);
        CHECK(e == 0);
        ColemanRecovery rec = coleman_recover(ctx, units, 2);
        CHECK(rec.certificate_ok);
        CHECK(rec.series[0].congruent(ring->one(), 3));
    }

    SUBCASE("quadratic sequence x_n = u_n (u_n + 4)") {
        RPoly p2 = RPoly::from_integers(ring, {BigInt(0), BigInt(4), BigInt(1)});
        NormCompatibleSequence x = sequence_from_poly(ctx, p2, 4);
        CHECK(is_norm_compatible(ctx, x));
        ColemanRecovery rec = coleman_series(ctx, x, 2);
        CHECK(rec.certificate_ok);
        CHECK(rec.uniformizer_exponent == 1);
        CHECK(rec.certified_pi_precision == 3);
        // the recovered series is T^2 + 4T back again
        CHECK(rec.series[1].congruent(ring->from_integer(4), 3));
        CHECK(rec.series[2].congruent(ring->one(), 3));
        CHECK(rec.series[0].is_zero());
        for (long i = 3; i <= rec.series.trunc(); ++i) CHECK(rec.series[i].valuation().value >= 3);
    }

    SUBCASE("norm-compatibility is actually checked") {
        NormCompatibleSequence ones = sequence_from_poly(ctx, RPoly(ring, {ring->one()}), 4);
        ones.elems[2] = tower_constant(ctx, 2, ring->from_integer(4)); // unit tweak
        CHECK(!is_norm_compatible(ctx, ones));
        CHECK_ERRC(coleman_recover(ctx, ones, 2), errc::not_norm_compatible);
    }

    SUBCASE("error paths") {
        NormCompatibleSequence u = sequence_from_poly(
            ctx, RPoly::from_integers(ring, {BigInt(0), BigInt(1)}), 4);
        CHECK_ERRC(coleman_recover(ctx, u, 2), errc::not_unit);
        NormCompatibleSequence ones = sequence_from_poly(ctx, RPoly(ring, {ring->one()}), 2);
        CHECK_ERRC(coleman_recover(ctx, ones, 2), errc::tower_too_shallow);
    }

    SUBCASE("factoring rejects a level with a different uniformizer exponent") {
        NormCompatibleSequence u = sequence_from_poly(
            ctx, RPoly::from_integers(ring, {BigInt(0), BigInt(1)}), 4);
        u.elems[2] = tower_mul(ctx, u.elems[2], u.elems[2]); // valuation 2 at one level
        CHECK_ERRC(factor_by_uniformizer(ctx, u), errc::inconsistent_valuation);
    }
}

TEST_CASE("norm operator demands enough coefficients") {
    TowerContext ctx = cheb_tower();
    PadicSeries f = poly_series(ctx.ring(), {1, 1, 1}, 5).as_series_tail_unknown();
    CHECK_ERRC(norm_operator(ctx, f, 4), errc::insufficient_truncation);
}

TEST_SUITE_END();
