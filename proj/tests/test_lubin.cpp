#include <doctest.h>

#include "phitower/lubin.hpp"

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

const RatSeries kP3 = rat_poly({0, 9, 6, 1});
const RatSeries kP2 = rat_poly({0, 4, 1});

} // namespace

TEST_SUITE_BEGIN("lubin");

TEST_CASE("recursive logarithm of the shifted cubic") {
    LogarithmResult log = lubin_log_recursive(3, kP3, 8);
    // degree-2 and degree-3 steps solve 9c2 = 6 + 81c2 and 9c3 = 1 + 108c2 + 729c3
    CHECK(log.series[1] == Rational(1));
    CHECK(log.series[2] == Rational(-1, 12));
    CHECK(log.series[3] == Rational(1, 90));
    // the recursion satisfies the functional equation exactly at this order
    CHECK(log.functional_residual_val == kValInfinity);
}

TEST_CASE("linear coefficient is always one") {
    for (auto coeffs : {std::vector<long>{0, 9, 6, 1}, {0, 3, 0, 1}, {0, 15, 5, 0, 0, 1}}) {
        LogarithmResult log = lubin_log_recursive(coeffs[1] == 15 ? 5 : 3, rat_poly(coeffs), 6);
        CHECK(log.series[1] == Rational(1));
    }
}

TEST_CASE("recursion and product formula agree") {
    LogarithmResult rec = lubin_log_recursive(3, kP3, 10);
    LogarithmResult prod = lubin_log_product(3, kP3, 10, 6);
    for (long j = 0; j <= 10; ++j) {
        CHECK(prod.coeff_precision[static_cast<size_t>(j)] >= 6);
        CHECK(val_rat(rec.series[j] - prod.series[j], 3) >= 6);
    }
}

TEST_CASE("two independent routes pin the cubic term of the 3T + T^3 logarithm") {
    RatSeries P = rat_poly({0, 3, 0, 1});
    LogarithmResult rec = lubin_log_recursive(3, P, 6);
    CHECK(rec.series[2] == Rational(0));
    CHECK(rec.series[3] == Rational(-1, 24));
    LogarithmResult prod = lubin_log_product(3, P, 6, 6);
    for (long j = 0; j <= 6; ++j) CHECK(val_rat(rec.series[j] - prod.series[j], 3) >= 6);
}

TEST_CASE("first product factor is P / P'(0)") {
    // T * Q(T)/Q(0) with P = T Q(T) collapses to P/P'(0)
    RatSeries t = RatSeries::identity(Rational(0), 5);
    RatSeries q = rat_poly({9, 6, 1}, 5);
    RatSeries first = scale(t * q, Rational(1, 9));
    CHECK(series_equal(first, scale(kP3.extended(5), Rational(1, 9)), 5));
}

TEST_CASE("logarithm validation") {
    CHECK_ERRC(lubin_log_recursive(3, rat_poly({0, 0, 1}), 4), errc::zero_linear_term);
    CHECK_ERRC(lubin_log_recursive(3, rat_poly({0, 2, 1}), 4), errc::unit_linear_term);
    CHECK_ERRC(lubin_log_recursive(3, rat_poly({1, 3, 1}), 4), errc::nonzero_constant_term);
    CHECK_ERRC(lubin_log_product(3, rat_poly({0, 3}), 4, 4), errc::invalid_argument);
}

TEST_CASE("commuting solver") {
    SUBCASE("eta0 = 4 recovers the quadratic") {
        CommutingResult r = solve_commuting(3, kP3, 4, 8);
        CHECK(r.p_integral);
        CHECK(r.series[1] == Rational(4));
        CHECK(r.series[2] == Rational(1));
        for (long m = 3; m <= 8; ++m) CHECK(r.series[m] == Rational(0));
        // oracle: the quadratic really does commute and has the right derivative
        CHECK(commutes(kP2.extended(8), kP3.extended(8), 8));
        CHECK(eta_value(kP2) == Rational(4));
    }

    SUBCASE("eta0 = 1 gives the identity") {
        CommutingResult r = solve_commuting(3, kP3, 1, 8);
        CHECK(r.p_integral);
        CHECK(series_equal(r.series, RatSeries::identity(Rational(0), 8), 8));
    }

    SUBCASE("eta0 = P'(0) gives P back") {
        CommutingResult r = solve_commuting(3, kP3, 9, 8);
        CHECK(r.p_integral);
        CHECK(series_equal(r.series, kP3.extended(8), 8));
    }

    SUBCASE("multiplicativity on integral values") {
        CommutingResult f2 = solve_commuting(3, kP3, 4, 8);
        CommutingResult f3 = solve_commuting(3, kP3, 9, 8);
        CommutingResult f6 = solve_commuting(3, kP3, 36, 8);
        CHECK(f6.p_integral);
        RatSeries comp = compose(f2.series, f3.series);
        CHECK(series_equal(comp, f6.series, 8));
    }
}

TEST_CASE("commuting solver validation") {
    CHECK_ERRC(solve_commuting(3, rat_poly({0, 0, 1}), 2, 6), errc::zero_linear_term);
    CHECK_ERRC(solve_commuting(3, rat_poly({0, 2, 1}), 2, 6), errc::unit_linear_term);
}

TEST_CASE("commutation predicate") {
    CHECK(commutes(kP2.extended(8), kP3.extended(8), 8));
    RatSeries f = rat_poly({0, 1, 1}, 4); // T + T^2
    RatSeries g = rat_poly({0, 0, 1}, 4); // T^2
    CHECK(!commutes(f, g, 4));
    CHECK(commutes(f, RatSeries::identity(Rational(0), 4), 4));
}

TEST_CASE("eta values") {
    CHECK(eta_value(kP2) == Rational(4));
    CHECK(eta_value(RatSeries::identity(Rational(0), 3)) == Rational(1));
    CHECK(eta_value(kP3) == Rational(9));
}

TEST_CASE("log equivariance") {
    CHECK(log_equivariance(3, kP3, kP2, 8, 5));
    CHECK(log_equivariance(3, kP3, RatSeries::identity(Rational(0), 8), 8, 5));
    CHECK(log_equivariance(3, kP3, kP3, 8, 5));
    // a series that fails to commute is rejected outright
    CHECK(!log_equivariance(3, kP3, rat_poly({0, 4, 2}), 8, 5));
}

TEST_CASE("derivative at zero agrees with the difference quotient") {
    LogarithmResult log = lubin_log_recursive(3, kP3, 6);
    RatSeries lpoly = RatSeries(log.series.coeffs(), 6, true);
    CHECK(derivative(log.series)[0] == log.series[1]);
    Rational t(81); // 3^4
    Rational quotient = evaluate(lpoly, t) / t;
    CHECK(val_rat(quotient - log.series[1], 3) >= 3);
}

TEST_SUITE_END();
