#include <doctest.h>

#include "phitower/props.hpp"

using namespace phitower;

TEST_SUITE_BEGIN("props");

TEST_CASE("every randomized property passes at seed 1") {
    auto suites = run_property_suites(1, 30);
    REQUIRE(!suites.empty());
    for (const auto& suite : suites)
        for (const auto& prop : suite.properties) {
            CAPTURE(suite.name);
            CAPTURE(prop.name);
            CHECK(prop.cases > 0);
            CHECK(prop.passes == prop.cases);
        }
}

TEST_CASE("zero case budget yields an empty report") {
    CHECK(run_property_suites(7, 0).empty());
}

TEST_CASE("fixed seed reproduces the exact case outcomes") {
    auto a = run_property_suites(99, 10);
    auto b = run_property_suites(99, 10);
    REQUIRE(a.size() == b.size());
    for (size_t i = 0; i < a.size(); ++i) {
        REQUIRE(a[i].properties.size() == b[i].properties.size());
        for (size_t j = 0; j < a[i].properties.size(); ++j) {
            CHECK(a[i].properties[j].name == b[i].properties[j].name);
            CHECK(a[i].properties[j].passes == b[i].properties[j].passes);
        }
    }
}

TEST_SUITE_END();
