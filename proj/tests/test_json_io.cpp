#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "padist/errors.hpp"
#include "padist/json_io.hpp"

using namespace padist;

namespace {

Rational q(const char* s) { return parse_rational(s); }
Dist delta(long p, const char* t) { return dirac(PAdicPoint(p, q(t))); }

Json parse(const char* text) { return Json::parse(text); }

// Two expressions agree on every ball to the given depth.
bool agree(const Dist& a, const Dist& b, unsigned depth) {
    const long p = a.prime();
    for (unsigned n = 0; n <= depth; ++n)
        for (Integer r = 0; r < ipow(p, n); ++r)
            if (evaluate(a, Ball(p, n, r)) != evaluate(b, Ball(p, n, r))) return false;
    return true;
}

}  // namespace

TEST_CASE("scalar formats") {
    CHECK(rational_from_json(parse(R"("-6/4")")) == q("-3/2"));
    CHECK(rational_from_json(parse("7")) == 7);
    CHECK_THROWS_AS(rational_from_json(parse("0.5")), InputError);
    CHECK(ball_from_json(parse(R"({"a": 7, "n": 2})"), 3) == Ball(3, 2, 7));
    CHECK(ball_to_json(Ball(3, 2, 7)).dump() == R"({"a":7,"n":2})");
    CHECK_THROWS_AS(ball_from_json(parse(R"({"a": 9, "n": 2})"), 3), InputError);
    CHECK_THROWS_AS(ball_from_json(parse(R"({"a": 1})"), 3), InputError);
    const Path pi = path_from_json(parse(R"({"period": [1, 2]})"), 3);
    CHECK(pi == Path(3, {}, {1, 2}));
    CHECK(path_to_json(pi).dump() == R"({"preperiod":[],"period":[1,2]})");
    CHECK_THROWS_AS(path_from_json(parse(R"({"period": [3]})"), 3), InputError);
}

TEST_CASE("expression round trip") {
    const long p = 3;
    const Dist e = graft(Path(p, {0}, {1, 2}), restrict_to(Ball(p, 1, 2), haar(p, q("2/3"))),
                         regularize(2, 2, bernoulli(p, 2)) - q("1/2") * delta(p, "-7/8"));
    const Dist back = dist_from_json(dist_to_json(e), p);
    CHECK(dist_to_json(back).dump() == dist_to_json(e).dump());
    CHECK(agree(e, back, 4));

    const Dist b = branch(1, {haar(p), delta(p, "0"), mazur(p)});
    CHECK(agree(b, dist_from_json(dist_to_json(b), p), 3));
}

TEST_CASE("spec documents") {
    const auto doc = spec_from_json(parse(R"({
        "prime": 5,
        "defs": {"m": {"type": "mazur"}, "twice": {"type": "lincomb", "terms": [{"coef": "2", "expr": {"ref": "m"}}]}},
        "expr": {"type": "lincomb", "terms": [{"coef": 1, "expr": {"ref": "twice"}}, {"coef": "-1", "expr": {"ref": "m"}}]}
    })"));
    CHECK(doc.prime == 5);
    CHECK(doc.defs.size() == 2);
    CHECK(agree(doc.expr, mazur(5), 3));

    const auto flagged = spec_from_json(parse(R"({"expr": {"type": "haar"}})"), 7);
    CHECK(flagged.prime == 7);
    CHECK(spec_from_json(parse(R"({"prime": 7, "expr": {"type": "haar"}})"), 7).prime == 7);

    CHECK_THROWS_AS(spec_from_json(parse(R"({"prime": 5, "expr": {"type": "haar"}})"), 7), InputError);
    CHECK_THROWS_AS(spec_from_json(parse(R"({"expr": {"type": "haar"}})")), InputError);
    CHECK_THROWS_AS(spec_from_json(parse(R"({"prime": 6, "expr": {"type": "haar"}})")), InputError);
    CHECK_THROWS_AS(spec_from_json(parse(R"({"prime": 5})")), InputError);
    CHECK_THROWS_AS(spec_from_json(parse(R"({"prime": 5, "expr": {"ref": "nope"}})")), InputError);
    CHECK_THROWS_AS(spec_from_json(parse(R"({"prime": 5, "expr": {"type": "gaussian"}})")), InputError);
    CHECK_THROWS_AS(spec_from_json(parse(R"({"prime": 5, "expr": {"type": "dirac", "point": "1/5"}})")), InputError);
    CHECK_THROWS_AS(spec_from_json(parse(R"({"prime": 5, "expr": {"type": "regularize", "k": 1, "alpha": "5",
                                                          "expr": {"type": "mazur"}}})")),
                    InputError);
}

TEST_CASE("branch children keys") {
    const char* ok = R"({"prime": 2, "expr": {"type": "branch", "k": 1,
        "children": {"0": {"type": "haar"}, "1": {"type": "dirac", "point": "1"}}}})";
    CHECK_NOTHROW(spec_from_json(parse(ok)));
    const char* missing = R"({"prime": 2, "expr": {"type": "branch", "k": 1, "children": {"0": {"type": "haar"}}}})";
    CHECK_THROWS_AS(spec_from_json(parse(missing)), InputError);
    const char* extra = R"({"prime": 2, "expr": {"type": "branch", "k": 1,
        "children": {"0": {"type": "haar"}, "1": {"type": "haar"}, "2": {"type": "haar"}}}})";
    CHECK_THROWS_AS(spec_from_json(parse(extra)), InputError);
}

TEST_CASE("report serialization") {
    const Path pi(5, {}, {2});
    const Dist broken = graft(pi, delta(5, "1"), delta(5, "4")) + haar(5);
    const auto r = check_relation(broken, 3);
    const Json capped = to_json(r, 0);
    CHECK(capped["ok"] == false);
    CHECK(capped["truncated"] == true);
    CHECK(capped["violations"].empty());
    CHECK(capped["violation_count"].get<std::size_t>() == r.violations.size());
    const Json full = to_json(r, 1000);
    CHECK(full["truncated"] == false);
    CHECK(full["violations"][0]["ball"].dump() == R"({"a":0,"n":0})");
    CHECK(full["violations"][0]["lhs"] == "2");
    CHECK(full["violations"][0]["children_sum"] == "3");

    const Json g = to_json(check_graft_precondition(delta(5, "1"), delta(5, "4"), pi, 2));
    CHECK(g["passed"] == false);
    CHECK(g["tail_sum_failures"][0]["left_sum_difference"] == "1");
    CHECK(g["tail_sum_failures"][0]["right_sum_difference"] == "-1");

    const Json n = to_json(norm_scan(haar(3), 2));
    CHECK(n["rows"][2]["max_norm"] == "9");

    const Json i = to_json(integrate(haar(5), parse_polynomial("1"), 3));
    CHECK(i["verdict"] == "converged-exactly");
    CHECK(i["partial_sums"].dump() == R"(["1","1","1"])");
}

TEST_CASE("step function input") {
    const TestFn a = step_from_json(parse(R"({"depth": 1, "values": ["1", "2", "1/3"]})"), 3);
    const TestFn b = step_from_json(parse(R"({"depth": 1, "values": {"0": 1, "1": "2", "2": "1/3"}})"), 3);
    for (long x = 0; x < 9; ++x) CHECK(a(Integer(x)) == b(Integer(x)));
    CHECK(a(Integer(5)) == q("1/3"));
    CHECK_THROWS_AS(step_from_json(parse(R"({"depth": 1, "values": ["1"]})"), 3), InputError);
    CHECK_THROWS_AS(step_from_json(parse(R"({"depth": 1, "values": {"0": 1, "1": 2}})"), 3), InputError);
    CHECK_THROWS_AS(step_from_json(parse(R"({"values": []})"), 3), InputError);
}
