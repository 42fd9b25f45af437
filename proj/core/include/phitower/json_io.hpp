#pragma once

#include <string>
#include <vector>

#include "phitower/chebyshev.hpp"
#include "phitower/lubin.hpp"
#include "phitower/lubin_tate.hpp"
#include "phitower/padic_poly.hpp"
#include "phitower/props.hpp"
#include "phitower/tower.hpp"

// JSON wire formats. Big integers travel as decimal strings, rationals as "a/b",
// polynomials as coefficient arrays with the constant term first. Ring contexts are
// {"p","precision","modulus"}; series are {"mode","ring"?,"trunc","coeffs",...}.
// Parsers throw schema_error with a pointer to the offending field.

namespace phitower::jsonio {

std::string ring_to_json(const Ring& ring);
RingPtr ring_from_json(const std::string& text);

std::vector<BigInt> int_list_from_json(const std::string& text);
std::string int_list_to_json(const std::vector<BigInt>& coeffs);

std::string series_to_json(const RatSeries& f);
std::string series_to_json(const PadicSeries& f);
RatSeries rat_series_from_json(const std::string& text);
PadicSeries padic_series_from_json(const std::string& text);

std::string polygon_to_json(const NewtonPolygon& np);

struct TowerInput {
    TowerContext ctx;
    NormCompatibleSequence seq;
};
/// {"tower": {"ring", "P", "u0", "maxLevel"}, "elements": [[coeff...], ...]}
TowerInput tower_input_from_json(const std::string& text);

std::string recovery_to_json(const ColemanRecovery& rec);

/// {"E", "alpha", "f"} (ring, element, series over it)
LubinTateData lubin_tate_from_json(const std::string& text);
std::string formal_group_to_json(const FormalGroup& g);

std::string log_result_to_json(const LogarithmResult& log);
std::string commuting_to_json(const CommutingResult& r);
std::string axiom_report_to_json(const AxiomReport& report);
std::string cheb_report_to_json(const ChebyshevReport& report);
std::string suites_to_json(const std::vector<PropertySuite>& suites);

} // namespace phitower::jsonio
