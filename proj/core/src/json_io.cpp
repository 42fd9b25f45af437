#include "phitower/json_io.hpp"

#include <json.hpp>

namespace phitower::jsonio {

using nlohmann::json;

namespace {

json parse(const std::string& text) {
    json j = json::parse(text, nullptr, false);
    if (j.is_discarded()) raise(errc::schema_error, "malformed JSON");
    return j;
}

const json& field(const json& j, const char* name) {
    auto it = j.find(name);
    if (!j.is_object() || it == j.end())
        raise(errc::schema_error, std::string("missing field '") + name + "'");
    return *it;
}

BigInt bigint_from(const json& j) {
    if (j.is_number_integer()) return BigInt(j.get<long>());
    if (j.is_string()) return parse_bigint(j.get<std::string>());
    raise(errc::schema_error, "expected an integer or decimal string");
}

Rational rational_from(const json& j) {
    if (j.is_number_integer()) return Rational(BigInt(j.get<long>()));
    if (j.is_string()) return parse_rational(j.get<std::string>());
    raise(errc::schema_error, "expected a rational as 'a/b' or 'a'");
}

long long_from(const json& j, const char* name) {
    const json& v = field(j, name);
    if (!v.is_number_integer()) raise(errc::schema_error, std::string(name) + " must be an integer");
    return v.get<long>();
}

json elt_to_json(const Elt& x) {
    if (x.ring()->degree() == 1) return x.coords()[0].get_str();
    json arr = json::array();
    for (const auto& c : x.coords()) arr.push_back(c.get_str());
    return arr;
}

Elt elt_from_json(const RingPtr& ring, const json& j) {
    std::vector<BigInt> coords;
    if (j.is_array()) {
        for (const auto& c : j) coords.push_back(bigint_from(c));
    } else {
        coords.push_back(bigint_from(j));
    }
    if (static_cast<int>(coords.size()) > ring->degree())
        raise(errc::schema_error, "element has more coordinates than the ring degree");
    return ring->from_coords(std::move(coords));
}

json ring_to_json_obj(const Ring& ring) {
    json mod = json::array();
    for (const auto& c : ring.modulus()) mod.push_back(c.get_str());
    return json{{"p", ring.p().get_str()}, {"precision", ring.precision()}, {"modulus", mod}};
}

RingPtr ring_from_json_obj(const json& j) {
    BigInt p = bigint_from(field(j, "p"));
    long precision = long_from(j, "precision");
    std::vector<BigInt> modulus;
    for (const auto& c : field(j, "modulus")) modulus.push_back(bigint_from(c));
    return Ring::make(p, static_cast<int>(precision), modulus);
}

json rat_series_to_json_obj(const RatSeries& f) {
    json coeffs = json::array();
    for (const auto& q : f.coeffs()) coeffs.push_back(to_string(q));
    return json{
        {"mode", "exact"}, {"trunc", f.trunc()}, {"coeffs", coeffs}, {"polynomial", f.polynomial()}};
}

json padic_series_to_json_obj(const PadicSeries& f) {
    json coeffs = json::array();
    for (const auto& c : f.coeffs()) coeffs.push_back(elt_to_json(c));
    return json{{"mode", "padic"},
                {"ring", ring_to_json_obj(*f[0].ring())},
                {"trunc", f.trunc()},
                {"coeffs", coeffs},
                {"polynomial", f.polynomial()}};
}

RatSeries rat_series_from_json_obj(const json& j) {
    if (field(j, "mode").get<std::string>() != "exact")
        raise(errc::schema_error, "expected an exact-mode series");
    long trunc = long_from(j, "trunc");
    std::vector<Rational> coeffs;
    for (const auto& c : field(j, "coeffs")) coeffs.push_back(rational_from(c));
    bool poly = j.value("polynomial", false);
    if (coeffs.empty()) coeffs.emplace_back(0);
    return RatSeries(std::move(coeffs), trunc, poly);
}

PadicSeries padic_series_from_json_obj(const json& j) {
    if (field(j, "mode").get<std::string>() != "padic")
        raise(errc::schema_error, "expected a padic-mode series");
    RingPtr ring = ring_from_json_obj(field(j, "ring"));
    long trunc = long_from(j, "trunc");
    std::vector<Elt> coeffs;
    for (const auto& c : field(j, "coeffs")) coeffs.push_back(elt_from_json(ring, c));
    bool poly = j.value("polynomial", false);
    if (coeffs.empty()) coeffs.push_back(ring->zero());
    return PadicSeries(std::move(coeffs), trunc, poly);
}

json valuation_to_json(long v) {
    if (v >= kValInfinity) return "inf";
    return v;
}

} // namespace

std::string ring_to_json(const Ring& ring) { return ring_to_json_obj(ring).dump(); }

RingPtr ring_from_json(const std::string& text) { return ring_from_json_obj(parse(text)); }

std::vector<BigInt> int_list_from_json(const std::string& text) {
    json j = parse(text);
    if (!j.is_array()) raise(errc::schema_error, "expected a coefficient array");
    std::vector<BigInt> out;
    for (const auto& c : j) out.push_back(bigint_from(c));
    return out;
}

std::string int_list_to_json(const std::vector<BigInt>& coeffs) {
    json arr = json::array();
    for (const auto& c : coeffs) arr.push_back(c.get_str());
    return arr.dump();
}

std::string series_to_json(const RatSeries& f) { return rat_series_to_json_obj(f).dump(); }
std::string series_to_json(const PadicSeries& f) { return padic_series_to_json_obj(f).dump(); }

RatSeries rat_series_from_json(const std::string& text) {
    return rat_series_from_json_obj(parse(text));
}

PadicSeries padic_series_from_json(const std::string& text) {
    return padic_series_from_json_obj(parse(text));
}

std::string polygon_to_json(const NewtonPolygon& np) {
    json segs = json::array();
    for (const auto& s : np.segments)
        segs.push_back(json{{"slope", to_string(Rational(s.slope))}, {"length", s.length}});
    return json{{"zeroOrder", np.zero_order}, {"segments", segs}}.dump();
}

TowerInput tower_input_from_json(const std::string& text) {
    json j = parse(text);
    const json& tw = field(j, "tower");
    RingPtr ring = ring_from_json_obj(field(tw, "ring"));
    std::vector<Elt> pc;
    for (const auto& c : field(tw, "P")) pc.push_back(elt_from_json(ring, c));
    RPoly P(ring, std::move(pc));
    Elt u0 = elt_from_json(ring, field(tw, "u0"));
    long max_level = long_from(tw, "maxLevel");
    TowerContext ctx(ring, P, u0, max_level);

    NormCompatibleSequence seq;
    if (auto it = j.find("elements"); it != j.end()) {
        long level = 0;
        for (const auto& el : *it) {
            std::vector<Elt> rep;
            if (el.is_array())
                for (const auto& c : el) rep.push_back(elt_from_json(ring, c));
            else
                rep.push_back(elt_from_json(ring, el));
            seq.elems.push_back(tower_element(ctx, level, RPoly(ring, std::move(rep))));
            ++level;
        }
    }
    return TowerInput{std::move(ctx), std::move(seq)};
}

std::string recovery_to_json(const ColemanRecovery& rec) {
    return json{{"series", padic_series_to_json_obj(rec.series)},
                {"certifiedPiPrecision", rec.certified_pi_precision},
                {"levelsChecked", rec.levels_checked},
                {"certificateOk", rec.certificate_ok},
                {"uniformizerExponent", rec.uniformizer_exponent}}
        .dump();
}

LubinTateData lubin_tate_from_json(const std::string& text) {
    json j = parse(text);
    RingPtr E = ring_from_json_obj(field(j, "E"));
    Elt alpha = elt_from_json(E, field(j, "alpha"));
    const json& fj = field(j, "f");
    PadicSeries f = fj.is_array()
                        ? PadicSeries::polynomial_from([&] {
                              std::vector<Elt> c;
                              for (const auto& e : fj) c.push_back(elt_from_json(E, e));
                              return c;
                          }())
                        : padic_series_from_json_obj(fj);
    if (!f[0].ring()->same_as(*E)) raise(errc::schema_error, "f must live over E");
    return make_lubin_tate(E, alpha, f);
}

std::string formal_group_to_json(const FormalGroup& g) {
    json entries = json::array();
    for (long m = 0; m <= g.certified_degree; ++m)
        for (long i = m; i >= 0; --i) {
            const Elt& c = g.S.at(i, m - i);
            if (c.is_zero()) continue;
            entries.push_back(json::array({i, m - i, elt_to_json(c)}));
        }
    return json{{"E", ring_to_json_obj(*g.data.E)},
                {"alpha", elt_to_json(g.data.alpha)},
                {"f", padic_series_to_json_obj(g.data.f)},
                {"N", g.certified_degree},
                {"S", entries}}
        .dump();
}

std::string log_result_to_json(const LogarithmResult& log) {
    json prec = json::array();
    for (long v : log.coeff_precision) prec.push_back(valuation_to_json(v));
    return json{{"method", log.method == LogMethod::recursion ? "recursion" : "product"},
                {"series", rat_series_to_json_obj(log.series)},
                {"residualValuation", valuation_to_json(log.functional_residual_val)},
                {"coefficientPrecision", prec}}
        .dump();
}

std::string commuting_to_json(const CommutingResult& r) {
    return json{{"series", rat_series_to_json_obj(r.series)}, {"pIntegral", r.p_integral}}.dump();
}

std::string axiom_report_to_json(const AxiomReport& report) {
    json checks = json::array();
    for (const auto& c : report.checks) checks.push_back(json{{"name", c.name}, {"pass", c.pass}});
    return json{{"checks", checks}, {"allPass", report.all_pass()}}.dump();
}

std::string cheb_report_to_json(const ChebyshevReport& report) {
    json items = json::array();
    for (const auto& item : report.items)
        items.push_back(json{{"name", item.name}, {"pass", item.pass}, {"detail", item.detail}});
    return json{{"items", items}, {"allPass", report.all_pass()}}.dump();
}

std::string suites_to_json(const std::vector<PropertySuite>& suites) {
    json out = json::array();
    for (const auto& suite : suites) {
        json props = json::array();
        for (const auto& p : suite.properties)
            props.push_back(json{{"name", p.name}, {"cases", p.cases}, {"passes", p.passes}});
        out.push_back(json{{"name", suite.name}, {"properties", props}});
    }
    return out.dump();
}

} // namespace phitower::jsonio
