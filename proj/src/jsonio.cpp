#include "critdisc/jsonio.hpp"

namespace critdisc {

json to_json(const StandardPair& pair) {
    return json{{"d", pair.d()},
                {"lambda", to_string(pair.lambda())},
                {"A", to_string(pair.A())},
                {"B", to_string(pair.B())}};
}

StandardPair standard_pair_from_json(const json& j) {
    const long d = j.at("d").get<long>();
    const Rat lambda = parse_rat(j.at("lambda").get<std::string>());
    const Poly a = parse_poly(j.at("A").get<std::string>());
    const Poly b = parse_poly(j.at("B").get<std::string>());
    return StandardPair(d, lambda, a, b);
}

json to_json(const AffineAut& sigma) {
    return json{{"alpha", to_string(sigma.alpha)},
                {"beta", to_string(sigma.beta)}};
}

json to_json(const MembershipReport& report) {
    return json{{"degree_ok", report.degree_ok},
                {"multiplier_ok", report.multiplier_ok},
                {"f3_ok", report.f3_ok},
                {"separable_ok", report.separable_ok},
                {"epsilon", to_string(report.epsilon)},
                {"delta", to_string(report.delta)},
                {"member", report.member}};
}

json to_json(const LocalMinimizationResult& result) {
    return json{{"p", to_string(result.p)},
                {"delta", result.delta},
                {"certified", result.certified},
                {"witness", to_json(result.witness)},
                {"minimal_model", to_json(result.minimal_model)}};
}

json to_json(const GlobalDiscriminant& gd) {
    json entries = json::array();
    for (const auto& entry : gd.entries)
        entries.push_back(json{{"p", to_string(entry.p)},
                               {"delta", entry.delta},
                               {"certified", entry.certified}});
    json excluded = json::array();
    for (const auto& p : gd.excluded_primes) excluded.push_back(to_string(p));
    return json{{"entries", std::move(entries)},
                {"excluded_primes", std::move(excluded)}};
}

json to_json(const SzpiroReport& report) {
    json j{{"norm_delta", to_string(report.norm_delta)},
           {"norm_radical", to_string(report.norm_radical)},
           {"exponent_bound", report.exponent_bound},
           {"ratio_defined", report.ratio_defined},
           {"all_certified", report.all_certified}};
    if (report.ratio_defined) j["ratio"] = report.ratio;
    return j;
}

json to_json(const Cubic& f) {
    return json{{"a", to_string(f.a)},
                {"b", to_string(f.b)},
                {"c", to_string(f.c)}};
}

json to_json(const WeierstrassInvariants& inv) {
    return json{{"disc_f", to_string(inv.disc_f)},
                {"delta_e", to_string(inv.delta_e)},
                {"c4", to_string(inv.c4)},
                {"j", to_string(inv.j)}};
}

json to_json(const IdentityReport& report) {
    return json{{"delta_ab", to_string(report.delta_ab)},
                {"disc_f", to_string(report.disc_f)},
                {"delta_e", to_string(report.delta_e)},
                {"disc_identity_ok", report.disc_identity_ok},
                {"weier_identity_ok", report.weier_identity_ok}};
}

json to_json(const EllipticPoint& pt) {
    if (pt.at_infinity) return json{{"at_infinity", true}};
    return json{{"at_infinity", false},
                {"x", to_string(pt.x)},
                {"y", to_string(pt.y)}};
}

json to_json(const ReductionTypeReport& report) {
    json j{{"type", to_string(report.type)},
           {"scaling_exponent", report.scaling_exponent},
           {"ord_delta_e", report.ord_delta_e}};
    if (report.ord_c4)
        j["ord_c4"] = *report.ord_c4;
    else
        j["ord_c4"] = nullptr;
    return j;
}

json to_json(const SzpiroLocalReport& report) {
    return json{{"p", to_string(report.p)},
                {"type", to_string(report.type)},
                {"ord_delta_e_min", report.ord_delta_e_min},
                {"delta_p", report.delta_p},
                {"certified", report.certified},
                {"holds", report.holds}};
}

json to_json(const QuadraticModelResult& result) {
    return json{{"model", to_json(result.model)},
                {"m", result.m},
                {"ord_delta_model", result.ord_delta_model},
                {"bound", result.bound},
                {"minimize_delta", result.minimize_delta},
                {"bound_ok", result.bound_ok}};
}

}  // namespace critdisc
