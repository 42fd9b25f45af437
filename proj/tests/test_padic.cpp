#include <doctest.h>

#include <random>

#include "phitower/padic.hpp"
#include "phitower/padic_poly.hpp"

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

const std::vector<BigInt> kLinear{BigInt(0), BigInt(1)};          // x
const std::vector<BigInt> kOmega{BigInt(-1), BigInt(-1), BigInt(1)}; // x^2 - x - 1

} // namespace

TEST_SUITE_BEGIN("padic");

TEST_CASE("ring construction and validation") {
    auto z3 = Ring::make(3, 10, kLinear);
    CHECK(z3->degree() == 1);
    CHECK(z3->precision() == 10);
    CHECK(z3->residue_cardinality() == 3);

    // oracle for the quadratic example: exhaustive root search mod 3
    for (BigInt r = 0; r < 3; ++r) CHECK(mod_canonical(r * r - r - 1, BigInt(3)) != 0);
    auto r9 = Ring::make(3, 8, kOmega);
    CHECK(r9->degree() == 2);
    CHECK(r9->residue_cardinality() == 9);

    CHECK_ERRC(Ring::make(3, 8, {BigInt(-1), BigInt(0), BigInt(1)}), errc::reducible_modulus);
    CHECK_ERRC(Ring::make(9, 4, kLinear), errc::composite_p);
    CHECK_ERRC(Ring::make(2, 4, kLinear), errc::even_prime);
    CHECK_ERRC(Ring::make(3, 0, kLinear), errc::invalid_argument);
    CHECK_ERRC(Ring::make(3, 4, {BigInt(1), BigInt(2)}), errc::invalid_argument); // not monic
}

TEST_CASE("valuation") {
    auto z3 = Ring::make(3, 8, kLinear);
    CHECK(z3->from_integer(9).valuation() == Valuation{2, false});
    CHECK(z3->from_integer(10).valuation() == Valuation{0, false});

    auto rw = Ring::make(3, 8, kOmega);
    Elt omega = rw->generator();
    CHECK(omega.valuation() == Valuation{0, false});

    Elt zero = z3->zero();
    Valuation v = zero.valuation();
    CHECK(v.is_lower_bound);
    CHECK(v.value == 8);
}

TEST_CASE("arithmetic tracks precision through valuations") {
    auto z3 = Ring::make(3, 8, kLinear);
    Elt a = z3->from_integer(9), b = z3->from_integer(6);
    Elt prod = a * b;
    CHECK(prod.valuation() == Valuation{3, false});
    CHECK(prod.precision() == 8); // capped at M

    // division costs the divisor's valuation
    Elt q = prod.divide_by(z3->from_integer(3));
    CHECK(q.precision() == 7);
    CHECK(q.valuation() == Valuation{2, false});
    CHECK_ERRC(z3->from_integer(1).divide_by(z3->from_integer(3)), errc::not_divisible);
    CHECK_ERRC(z3->from_integer(1).divide_by(z3->zero()), errc::indistinguishable_from_zero);

    // units invert at full precision
    Elt u = z3->from_integer(10);
    Elt inv = u.inverse();
    CHECK((u * inv).congruent(z3->one(), 8));
}

TEST_CASE("valuation is additive on products") {
    auto rw = Ring::make(5, 6, {BigInt(2), BigInt(4), BigInt(1)}); // x^2+4x+2, Eisenstein-free check below
    // x^2+4x+2 mod 5: roots? 0:2,1:7=2,2:14=4,3:23=3,4:34=4 -> none
    Elt x = rw->from_integer(50);
    Elt y = rw->generator() * rw->from_integer(5);
    Valuation vx = x.valuation(), vy = y.valuation();
    CHECK((x * y).valuation() == Valuation{vx.value + vy.value, false});
}

TEST_CASE("frobenius has exact order h on a random sample") {
    auto rw = Ring::make(3, 8, kOmega);
    std::mt19937_64 rng(42);
    bool some_moved = false;
    for (int i = 0; i < 100; ++i) {
        Elt x = rw->from_coords({BigInt(static_cast<unsigned long>(rng() % 6561)),
                                 BigInt(static_cast<unsigned long>(rng() % 6561))});
        Elt fx = frobenius(x);
        CHECK(frobenius(fx) == x);
        if (fx != x) some_moved = true;
    }
    CHECK(some_moved);
}

TEST_CASE("frobenius fixes the base and has order h") {
    auto rw = Ring::make(3, 8, kOmega);
    Elt omega = rw->generator();
    Elt img = frobenius(omega);

    // oracle: 1 - omega is an exact root of the modulus, and omega^3 = 1 - omega mod 3
    Elt other = rw->one() - omega;
    CHECK((other * other - other - rw->one()).is_zero());
    CHECK(img == other);
    CHECK(omega.pow(3).congruent(other, 1));

    CHECK(frobenius(rw->from_integer(17)) == rw->from_integer(17));
    CHECK(frobenius(frobenius(omega)) == omega);

    // additive + multiplicative on a couple of fixed elements
    Elt a = rw->from_coords({BigInt(5), BigInt(7)});
    Elt b = rw->from_coords({BigInt(11), BigInt(2)});
    CHECK(frobenius(a + b) == frobenius(a) + frobenius(b));
    CHECK(frobenius(a * b) == frobenius(a) * frobenius(b));
}

TEST_CASE("hensel lifting") {
    auto z7 = Ring::make(7, 3, kLinear);
    RPoly f = RPoly::from_integers(z7, {BigInt(-2), BigInt(0), BigInt(1)}); // x^2 - 2

    // brute-force oracle: unique y in [0, 343) with y = 3 mod 7 and y^2 = 2 mod 343
    BigInt expected = -1;
    for (BigInt y = 3; y < 343; y += 7)
        if (mod_canonical(y * y - 2, BigInt(343)) == 0) {
            CHECK(expected == -1);
            expected = y;
        }
    CHECK(expected == 108);

    Elt root = hensel_lift_root(f, z7->from_integer(3));
    CHECK(root.congruent(z7->from_integer(expected), 3));
    CHECK(f.eval(root).is_zero());

    RPoly lin = RPoly::from_integers(z7, {BigInt(-5), BigInt(1)});
    CHECK(hensel_lift_root(lin, z7->from_integer(5)) == z7->from_integer(5));

    auto z3 = Ring::make(3, 6, kLinear);
    RPoly g = RPoly::from_integers(z3, {BigInt(-3), BigInt(0), BigInt(1)}); // x^2 - 3
    CHECK_ERRC(hensel_lift_root(g, z3->zero()), errc::hensel_condition_failed);
}

TEST_CASE("newton polygons") {
    auto z3 = Ring::make(3, 8, kLinear);

    // P(T) - 3 with P = T^3 + 6T^2 + 9T: Eisenstein of degree 3
    RPoly f = RPoly::from_integers(z3, {BigInt(-3), BigInt(9), BigInt(6), BigInt(1)});
    NewtonPolygon np = newton_polygon(f);
    CHECK(np.zero_order == 0);
    REQUIRE(np.segments.size() == 1);
    CHECK(np.segments[0] == NewtonSegment{Rational(1, 3), 3});
    CHECK(np.eisenstein(3));

    // 3T + T^3: hull of {(1,1),(3,0)}
    RPoly g = RPoly::from_integers(z3, {BigInt(0), BigInt(3), BigInt(0), BigInt(1)});
    NewtonPolygon ng = newton_polygon(g);
    CHECK(ng.zero_order == 1);
    REQUIRE(ng.segments.size() == 1);
    CHECK(ng.segments[0] == NewtonSegment{Rational(1, 2), 2});

    RPoly cube = RPoly::from_integers(z3, {BigInt(0), BigInt(0), BigInt(0), BigInt(1)});
    NewtonPolygon nc = newton_polygon(cube);
    CHECK(nc.zero_order == 3);
    CHECK(nc.segments.empty());

    // two slopes, listed increasing: (T-3)(T^2-3) = T^3 - 3T^2 - 3T + 9
    RPoly two = RPoly::from_integers(z3, {BigInt(9), BigInt(-3), BigInt(-3), BigInt(1)});
    NewtonPolygon nt = newton_polygon(two);
    CHECK(nt.zero_order == 0);
    REQUIRE(nt.segments.size() == 2);
    CHECK(nt.segments[0] == NewtonSegment{Rational(1, 2), 2});
    CHECK(nt.segments[1] == NewtonSegment{Rational(1, 1), 1});

    CHECK_ERRC(newton_polygon(RPoly::zero(z3)), errc::zero_polynomial);
}

TEST_CASE("phi-twisted linear solver") {
    auto z3 = Ring::make(3, 8, kLinear);

    SUBCASE("b = 0 reduces to division") {
        Elt c = solve_phi_linear(z3->from_integer(3), z3->zero(), z3->from_integer(6));
        CHECK(c.congruent(z3->from_integer(2), 7));
    }

    SUBCASE("h = 1 closed form") {
        Elt c = solve_phi_linear(z3->from_integer(3), z3->from_integer(27), z3->from_integer(3));
        Elt tenth = z3->one().divide_by(z3->from_integer(10));
        CHECK(c.precision() == 7);
        CHECK(c.congruent(tenth.capped(7), 7));
        CHECK((z3->from_integer(3) * c + z3->from_integer(27) * c - z3->from_integer(3)).is_zero());
    }

    SUBCASE("extension ring with genuine twist") {
        auto rw = Ring::make(3, 8, kOmega);
        Elt a = rw->from_integer(3), b = rw->from_integer(9);
        Elt e = rw->generator() * rw->from_integer(3);
        Elt c = solve_phi_linear(a, b, e);
        Elt residual = a * c + b * frobenius(c) - e;
        CHECK(residual.is_zero());

        // uniqueness: an independent iteration seed lands on the same solution
        Elt c2 = solve_phi_linear(a, b, e, PhiLinearSeed::zero);
        CHECK(c == c2);
    }

    SUBCASE("error paths") {
        CHECK_ERRC(solve_phi_linear(z3->from_integer(3), z3->from_integer(3), z3->from_integer(3)),
                   errc::no_contraction);
        CHECK_ERRC(solve_phi_linear(z3->from_integer(3), z3->from_integer(9), z3->one()),
                   errc::not_divisible);
    }
}

TEST_SUITE_END();
