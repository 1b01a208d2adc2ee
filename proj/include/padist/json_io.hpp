#pragma once

#include "padist/distribution.hpp"
#include "padist/integrate.hpp"
#include "padist/verify.hpp"

#include <json.hpp>

#include <map>
#include <string>

namespace padist {

using Json = nlohmann::ordered_json;

// Wire formats:
//   rational  "num/den" or "num" (a bare JSON integer is also accepted)
//   ball      {"a": integer, "n": integer}
//   path      {"preperiod": [digits], "period": [digits]}
//   expr      {"type": "dirac"|"haar"|"mazur"|"bernoulli"|"lincomb"|"restrict"
//                      |"regularize"|"graft"|"branch", ...}  or  {"ref": name}
//   document  {"prime": p, "expr": expr, "defs": {name: expr, ...}}

Rational rational_from_json(const Json& j);
Json rational_to_json(const Rational& x);

Ball ball_from_json(const Json& j, long p);
Json ball_to_json(const Ball& b);

Path path_from_json(const Json& j, long p);
Json path_to_json(const Path& path);

/// `defs` resolves {"ref": name}; names must already be parsed.
Dist dist_from_json(const Json& j, long p, const std::map<std::string, Dist>& defs = {});
Json dist_to_json(const Dist& e);

struct SpecDocument {
    long prime;
    Dist expr;
    std::map<std::string, Dist> defs;
};

/// `prime_flag`, when nonzero, must agree with the document's "prime" (one of
/// the two must be given). Definitions may refer to earlier definitions.
SpecDocument spec_from_json(const Json& j, long prime_flag = 0);

Json to_json(const RelationReport& r, std::size_t max_violations);
Json to_json(const GraftPreconditionReport& r);
Json to_json(const NormScanReport& r);
Json to_json(const IntegrationReport& r);

/// Step function: {"depth": d, "values": {"0": rational, ..., "p^d-1": rational}}.
TestFn step_from_json(const Json& j, long p);

}  // namespace padist
