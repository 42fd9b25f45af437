#include <doctest.h>

#include "phitower/series.hpp"

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

RatSeries rat_poly(std::vector<long> coeffs, long trunc = -1) {
    std::vector<Rational> c;
    c.reserve(coeffs.size());
    for (long v : coeffs) c.emplace_back(v);
    return RatSeries::polynomial_from(std::move(c), trunc);
}

} // namespace

TEST_SUITE_BEGIN("series");

TEST_CASE("ring operations and truncation rule") {
    RatSeries t = RatSeries::identity(Rational(0), 4);
    CHECK(series_equal(t * t, rat_poly({0, 0, 1}, 4)));

    RatSeries a = rat_poly({1, 1}, 2), b = rat_poly({1, -1}, 2);
    CHECK(series_equal(a * b, rat_poly({1, 0, -1}, 2)));

    RatSeries c = rat_poly({1, 1}, 5);
    CHECK((c * rat_poly({1}, 2)).trunc() == 2);

    auto z3 = Ring::zp(3, 8);
    PadicSeries tp = PadicSeries::identity(z3->zero(), 3);
    PadicSeries three_t = scale(tp, z3->from_integer(3));
    PadicSeries sq = three_t * three_t;
    CHECK(sq[2].valuation() == Valuation{2, false});
    CHECK(sq[1].is_zero());
}

TEST_CASE("composition") {
    RatSeries f = rat_poly({0, 1, 1}, 2);  // T + T^2
    RatSeries g = rat_poly({0, 2}, 2);     // 2T
    CHECK(series_equal(compose(f, g), rat_poly({0, 2, 4}, 2)));

    // the commuting pair T^2+4T and T^3+6T^2+9T composes equally in both orders
    RatSeries p2 = rat_poly({0, 4, 1}, 6);
    RatSeries p3 = rat_poly({0, 9, 6, 1}, 6);
    CHECK(series_equal(compose(p2, p3), compose(p3, p2)));

    RatSeries id = RatSeries::identity(Rational(0), 6);
    CHECK(series_equal(compose(p3, id), p3));

    RatSeries tail = rat_poly({1, 1}).as_series_tail_unknown();
    CHECK_ERRC(compose(tail, rat_poly({1, 1})), errc::nonzero_constant_term);
}

TEST_CASE("composition is associative on zero-constant triples") {
    RatSeries f = rat_poly({0, 1, 2, 3}, 8);
    RatSeries g = rat_poly({0, 2, 0, 1}, 8);
    RatSeries h = rat_poly({0, 1, 1}, 8);
    CHECK(series_equal(compose(compose(f, g), h), compose(f, compose(g, h))));
}

TEST_CASE("derivative") {
    RatSeries p3 = rat_poly({0, 9, 6, 1}, 3);
    RatSeries d = derivative(p3);
    CHECK(series_equal(d, rat_poly({9, 12, 3}, 2)));
    CHECK(d[0] == Rational(9));

    CHECK(derivative(rat_poly({5}, 3)).is_zero());
    for (long k = 2; k <= 5; ++k) {
        RatSeries tk = rat_poly(std::vector<long>(k, 0), k).with_coeff(k, Rational(1));
        CHECK(derivative(tk)[0] == 0);
    }

    // chain rule on a fixed pair
    RatSeries f = rat_poly({0, 3, 1, 2}, 6);
    RatSeries g = rat_poly({0, 1, 4}, 6);
    RatSeries lhs = derivative(compose(f, g));
    RatSeries rhs = compose(derivative(f), g) * derivative(g);
    CHECK(series_equal(lhs, rhs, 5));
}

TEST_CASE("reversion") {
    RatSeries f = rat_poly({0, 2, 1}, 2); // 2T + T^2
    RatSeries g = reversion(f);
    CHECK(g[1] == Rational(1, 2));
    CHECK(g[2] == Rational(-1, 8));
    // oracle: composition collapses to the identity
    CHECK(series_equal(compose(f, g), RatSeries::identity(Rational(0), 2)));
    CHECK(series_equal(compose(g, f), RatSeries::identity(Rational(0), 2)));

    RatSeries id = RatSeries::identity(Rational(0), 5);
    CHECK(series_equal(reversion(id), id));

    CHECK_ERRC(reversion(rat_poly({0, 0, 1}, 4)), errc::non_unit_linear_term);

    auto z3 = Ring::zp(3, 6);
    PadicSeries noninvertible = PadicSeries::polynomial_from(
        {z3->zero(), z3->from_integer(3), z3->one()}, 4);
    CHECK_ERRC(reversion(noninvertible), errc::non_unit_linear_term);

    // involution
    RatSeries h = rat_poly({0, 1, 5, -2, 7}, 7);
    CHECK(series_equal(reversion(reversion(h)), h));
}

TEST_CASE("evaluation") {
    auto z3 = Ring::zp(3, 8);
    PadicSeries t = PadicSeries::identity(z3->zero(), 4);
    Elt x = z3->from_integer(12);
    CHECK(evaluate(t, x) == x);

    // exact-integer oracle: -27 + 6*9 + 9*(-3) = 0
    CHECK(BigInt(-27) + 6 * 9 + 9 * (-3) == 0);
    PadicSeries p3 = PadicSeries::polynomial_from(
        {z3->zero(), z3->from_integer(9), z3->from_integer(6), z3->one()});
    CHECK(evaluate(p3, z3->from_integer(-3)).is_zero());

    PadicSeries nonpoly = p3.as_series_tail_unknown();
    CHECK_ERRC(evaluate(nonpoly, z3->from_integer(1)), errc::divergent_evaluation);

    // truncation tail limits the certified precision
    Elt v = evaluate(nonpoly.truncated(2), z3->from_integer(3));
    CHECK(v.precision() == 3);
}

TEST_CASE("exact to p-adic conversion") {
    auto z3 = Ring::zp(3, 6);
    RatSeries f({Rational(1, 2), Rational(3)}, 1, true);
    PadicSeries g = to_padic(f, z3);
    CHECK((g[0] * z3->from_integer(2)).congruent(z3->one(), 6));
    CHECK_ERRC(to_padic(RatSeries({Rational(1, 3)}, 0, true), z3), errc::not_divisible);
}

TEST_CASE("bivariate basics") {
    BivariateTrunc<Rational> s = BivariateTrunc<Rational>::x_plus_y(4, Rational(0));
    s.set(1, 1, Rational(1)); // X + Y + XY
    CHECK(s.symmetric());

    RatSeries t = RatSeries::identity(Rational(0), 4);
    RatSeries zero = RatSeries::zero(Rational(0), 4);
    // substituting (X, 0) returns the univariate identity
    CHECK(series_equal(s.subst(t, zero), t));

    RatSeries both = s.subst(t, t); // 2T + T^2
    CHECK(series_equal(both, rat_poly({0, 2, 1}, 4)));

    BivariateTrunc<Rational> prod = s * s;
    CHECK(prod.at(2, 0) == Rational(1));
    CHECK(prod.at(1, 1) == Rational(2));
    CHECK(prod.at(2, 1) == Rational(2));
}

TEST_SUITE_END();
