#ifndef CRITDISC_JSONIO_HPP
#define CRITDISC_JSONIO_HPP

// JSON serialization of the public value types. Exact values travel as
// decimal strings, never floating point.

#include <json.hpp>

#include "critdisc/lattes.hpp"

namespace critdisc {

using json = nlohmann::json;

// {"d": int, "lambda": rat-string, "A": poly-string, "B": poly-string}
json to_json(const StandardPair& pair);
StandardPair standard_pair_from_json(const json& j);

json to_json(const AffineAut& sigma);
json to_json(const MembershipReport& report);
json to_json(const LocalMinimizationResult& result);
// {"excluded_primes": [..], "entries": [{"p": "...", "delta": n,
//  "certified": bool}, ..]}
json to_json(const GlobalDiscriminant& gd);
json to_json(const SzpiroReport& report);
json to_json(const Cubic& f);
json to_json(const WeierstrassInvariants& inv);
json to_json(const IdentityReport& report);
json to_json(const EllipticPoint& pt);
json to_json(const ReductionTypeReport& report);
json to_json(const SzpiroLocalReport& report);
json to_json(const QuadraticModelResult& result);

}  // namespace critdisc

#endif
