#include <doctest.h>

#include "phitower/json_io.hpp"

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

TEST_SUITE_BEGIN("json");

TEST_CASE("ring context round trip") {
    auto ring = Ring::make(3, 8, {BigInt(-1), BigInt(-1), BigInt(1)});
    RingPtr back = jsonio::ring_from_json(jsonio::ring_to_json(*ring));
    CHECK(back->same_as(*ring));

    CHECK_ERRC(jsonio::ring_from_json("{\"p\":\"4\",\"precision\":2,\"modulus\":[\"0\",\"1\"]}"),
               errc::composite_p);
    CHECK_ERRC(jsonio::ring_from_json("{\"precision\":2}"), errc::schema_error);
    CHECK_ERRC(jsonio::ring_from_json("not json"), errc::schema_error);
}

TEST_CASE("series round trips preserve mode, truncation and coefficients") {
    RatSeries f({Rational(1, 2), Rational(-3), Rational(0), Rational(7, 5)}, 5, false);
    RatSeries f2 = jsonio::rat_series_from_json(jsonio::series_to_json(f));
    CHECK(f2.trunc() == f.trunc());
    CHECK(!f2.polynomial());
    CHECK(series_equal(f, f2));

    auto ring = Ring::make(3, 6, {BigInt(-1), BigInt(-1), BigInt(1)});
    PadicSeries g = PadicSeries::polynomial_from(
        {ring->zero(), ring->generator() * ring->from_integer(3), ring->zero(), ring->one()});
    PadicSeries g2 = jsonio::padic_series_from_json(jsonio::series_to_json(g));
    CHECK(g2.polynomial());
    CHECK(g2.trunc() == g.trunc());
    CHECK(series_congruent(g, g2, 6));

    CHECK_ERRC(jsonio::rat_series_from_json("{\"mode\":\"padic\",\"trunc\":1,\"coeffs\":[]}"),
               errc::schema_error);
}

TEST_CASE("polygon serialization") {
    auto z3 = Ring::zp(3, 8);
    NewtonPolygon np = newton_polygon(
        RPoly::from_integers(z3, {BigInt(-3), BigInt(9), BigInt(6), BigInt(1)}));
    std::string text = jsonio::polygon_to_json(np);
    CHECK(text.find("\"zeroOrder\":0") != std::string::npos);
    CHECK(text.find("\"slope\":\"1/3\"") != std::string::npos);
    CHECK(text.find("\"length\":3") != std::string::npos);
}

TEST_CASE("tower input with sequence") {
    std::string text = R"({
      "tower": {"ring": {"p": "3", "precision": 8, "modulus": ["0","1"]},
                 "P": ["0","9","6","1"], "u0": "-3", "maxLevel": 3},
      "elements": [["1"], ["1"], ["1"], ["1"]]
    })";
    jsonio::TowerInput input = jsonio::tower_input_from_json(text);
    CHECK(input.ctx.degree() == 3);
    CHECK(input.seq.elems.size() == 4);
    CHECK(is_norm_compatible(input.ctx, input.seq));

    ColemanRecovery rec = coleman_series(input.ctx, input.seq, 1);
    std::string out = jsonio::recovery_to_json(rec);
    CHECK(out.find("\"certifiedPiPrecision\":2") != std::string::npos);
    CHECK(out.find("\"certificateOk\":true") != std::string::npos);
}

TEST_CASE("formal group serialization") {
    auto z3 = Ring::zp(3, 6);
    PadicSeries f = PadicSeries::polynomial_from(
        {z3->zero(), z3->from_integer(3), z3->zero(), z3->one()});
    LubinTateData data = jsonio::lubin_tate_from_json(
        R"({"E": {"p":"3","precision":6,"modulus":["0","1"]}, "alpha":"3", "f":["0","3","0","1"]})");
    CHECK(series_congruent(data.f, f, 6));

    FormalGroup g = group_law(data, 4);
    std::string out = jsonio::formal_group_to_json(g);
    CHECK(out.find("\"N\":4") != std::string::npos);
    CHECK(out.find("\"S\":") != std::string::npos);
}

TEST_SUITE_END();
