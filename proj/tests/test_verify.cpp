#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "oracles.hpp"
#include "padist/errors.hpp"
#include "padist/json_io.hpp"
#include "padist/verify.hpp"

using namespace padist;

namespace {

Rational q(const char* s) { return parse_rational(s); }
Dist delta(long p, const char* t) { return dirac(PAdicPoint(p, q(t))); }

}  // namespace

TEST_CASE("check_relation on base families") {
    const auto haar_report = check_relation(haar(3), 4);
    CHECK(haar_report.ok());
    CHECK(haar_report.checked_count == 1 + 3 + 9 + 27);
    CHECK(check_relation(mazur(5), 3).ok());
    CHECK(check_relation(bernoulli(2, 4), 8).ok());
    CHECK_THROWS_AS(check_relation(haar(3), 0), InputError);
}

TEST_CASE("check_relation reports a broken graft at the root") {
    const Path pi(5, {}, {2});
    const auto r = check_relation(graft(pi, delta(5, "1"), delta(5, "4")), 3);
    REQUIRE_FALSE(r.ok());
    CHECK(r.violations.front().ball == Ball::whole(5));
    CHECK(r.violations.front().lhs == 1);
    CHECK(r.violations.front().children_sum == 2);
}

TEST_CASE("check_relation respects the ball budget") {
    ScanOptions tight;
    tight.ball_budget = 100;
    CHECK_THROWS_AS(check_relation(haar(5), 3, tight), BudgetError);
    CHECK_NOTHROW(check_relation(haar(5), 2, tight));
}

TEST_CASE("graft precondition") {
    const long p = 5;
    const Path pi(p, {}, {2});
    const auto pass = check_graft_precondition(delta(p, "1") + delta(p, "3"), delta(p, "0") + delta(p, "4"), pi, 8);
    CHECK(pass.passed());
    CHECK(pass.depth_checked == 8);

    const auto fail = check_graft_precondition(delta(p, "1"), delta(p, "4"), pi, 6);
    CHECK_FALSE(fail.passed());
    CHECK(fail.on_path_agreement.empty());
    REQUIRE(fail.tail_sum_failures.size() == 1);
    CHECK(fail.tail_sum_failures[0].depth == 0);
    CHECK(fail.tail_sum_failures[0].right_sum_difference == -1);
    CHECK(fail.tail_sum_failures[0].left_sum_difference == 1);

    CHECK(check_graft_precondition(haar(p), haar(p), pi, 5).passed());
}

TEST_CASE("graft precondition on-path failure") {
    const long p = 3;
    const Path pi(p, {}, {1, 2});
    const auto r = check_graft_precondition(delta(p, "0"), delta(p, "-7/8"), pi, 3);
    // delta(-7/8) sits on the path; delta(0) leaves it at digit 0, so the
    // two agree on Z_3 and disagree on every deeper on-path ball.
    REQUIRE(r.on_path_agreement.size() == 3);
    CHECK(r.on_path_agreement[0].depth == 1);
    CHECK(r.on_path_agreement[0].left_value == 0);
    CHECK(r.on_path_agreement[0].right_value == 1);
}

TEST_CASE("property: graft checker soundness") {
    // If the precondition passes to depth N, the graft satisfies the relation
    // below depth N. Inputs mix random point masses so both outcomes occur.
    oracle::Gen gen(31);
    int passed = 0, failed = 0;
    for (int i = 0; i < 300; ++i) {
        const long p = gen.uniform(0, 1) ? 2 : 3;
        const Path pi = gen.path(p);
        auto masses = [&] {
            std::vector<node::Term> terms;
            for (long j = 0, n = gen.uniform(1, 3); j < n; ++j)
                terms.push_back({gen.uniform(0, 1) ? 1 : -1, dirac(PAdicPoint(p, Rational(gen.uniform(0, 26))))});
            return linear_comb(p, std::move(terms));
        };
        const Dist l = masses(), r = gen.uniform(0, 3) == 0 ? l : masses();
        const unsigned depth = 4;
        const auto pre = check_graft_precondition(l, r, pi, depth);
        const auto rel = check_relation(graft(pi, l, r), depth);
        if (pre.passed()) {
            ++passed;
            CHECK(rel.ok());
        } else {
            ++failed;
        }
    }
    CHECK(passed > 20);
    CHECK(failed > 20);
}

TEST_CASE("remark fixture: Haar and Mazur fail the graft precondition") {
    const long p = 3;
    const Path pi(p, {}, {1, 2});
    const auto [mu1, mu2] = remark_pair(haar(p), mazur(p), pi);
    const auto r = check_graft_precondition(mu1, mu2, pi, 4);
    CHECK_FALSE(r.passed());
    REQUIRE(r.on_path_agreement.size() == 1);
    CHECK(r.on_path_agreement[0].depth == 0);
    CHECK(r.on_path_agreement[0].left_value == 1);
    CHECK(r.on_path_agreement[0].right_value == 0);
    REQUIRE(r.tail_sum_failures.size() == 1);
    CHECK(r.tail_sum_failures[0].left_sum_difference == q("5/6"));
    CHECK(r.tail_sum_failures[0].right_sum_difference == q("1/6"));
}

TEST_CASE("branch hypothesis") {
    const long p = 3;
    const std::vector<Dist> kids{haar(p), delta(p, "0"), mazur(p)};
    const auto w = check_branch_hypothesis(1, kids, 3);
    REQUIRE(w);
    CHECK(w->t == 0);
    CHECK(w->s == 1);
    CHECK(w->ball == Ball(p, 1, 0));

    const std::vector<Dist> same(3, haar(p));
    CHECK_FALSE(check_branch_hypothesis(1, same, 4));

    // Children that differ only from depth 3 on: delta_1 vs delta_1 - delta_4 + delta_13,
    // where 4 = (1,1,0,...) and 13 = (1,1,1,...) split at digit 2.
    const Dist a = delta(p, "1");
    const Dist b = linear_comb(p, {{1, delta(p, "1")}, {-1, delta(p, "4")}, {1, delta(p, "13")}});
    const std::vector<Dist> deep{a, a, b};
    const auto wd = check_branch_hypothesis(1, deep, 4);
    REQUIRE(wd);
    CHECK(wd->ball.depth() == 3);
    CHECK(wd->t == 0);
    CHECK(wd->s == 2);
    CHECK_FALSE(check_branch_hypothesis(1, deep, 2));

    CHECK_THROWS_AS(check_branch_hypothesis(2, kids, 1), InputError);
}

TEST_CASE("distinctness witness") {
    const long p = 3;
    const Dist mu = branch(1, {haar(p), delta(p, "0"), mazur(p)});
    for (const Dist& nu : {haar(p), delta(p, "0"), mazur(p)}) CHECK(distinctness_witness(mu, nu, 1));
    // Fixture: against Haar the root already differs (1/2 vs 1).
    CHECK(*distinctness_witness(mu, haar(p), 3) == Ball::whole(p));
    CHECK_FALSE(distinctness_witness(mu, mu, 4));
    CHECK(*distinctness_witness(delta(5, "1"), delta(5, "2"), 3) == Ball(5, 1, 1));
}

TEST_CASE("branch distinctness is not guaranteed by the hypothesis") {
    // nu_0 = delta_0 + delta_1 and nu_1 = delta_1 differ on 0 + (2), yet the
    // level-1 branch coincides with nu_0 everywhere.
    const long p = 2;
    const std::vector<Dist> kids{delta(p, "0") + delta(p, "1"), delta(p, "1")};
    REQUIRE(check_branch_hypothesis(1, kids, 3));
    const Dist mu = branch(1, kids);
    CHECK_FALSE(distinctness_witness(mu, kids[0], 8));
    CHECK(distinctness_witness(mu, kids[1], 8));
}

TEST_CASE("norm scan") {
    const auto h = norm_scan(haar(3), 5);
    REQUIRE(h.rows.size() == 6);
    for (unsigned n = 0; n <= 5; ++n) CHECK(h.rows[n].max_norm == Rational(ipow(3, n)));

    for (const auto& row : norm_scan(delta(5, "-1/2"), 4).rows) CHECK(row.max_norm == 1);

    const auto reg = norm_scan(regularize(1, 3, mazur(5)), 5);
    for (const auto& row : reg.rows) CHECK(row.max_norm <= 1);

    const auto zero = norm_scan(haar(3, 0), 2);
    CHECK(zero.rows[2].max_norm == 0);
    CHECK(zero.rows[2].argmax == Ball(3, 2, 0));
}

TEST_CASE("boundedness verdict") {
    const long p = 5;
    const Path pi(p, {}, {2});
    const auto g = boundedness_verdict(graft(pi, delta(p, "1") + delta(p, "3"), delta(p, "0") + delta(p, "4")), 4);
    CHECK(g.flag == BoundednessFlag::Bounded);
    CHECK_FALSE(g.discrepancy);
    for (const auto& row : g.scan.rows) CHECK(row.max_norm == 1);

    const auto hh = boundedness_verdict(graft(pi, haar(p), haar(p)), 4);
    CHECK(hh.flag == BoundednessFlag::Unbounded);
    for (const auto& row : hh.scan.rows) CHECK(row.max_norm == Rational(ipow(p, row.depth)));

    const auto bd = boundedness_verdict(branch(1, {delta(p, "0"), delta(p, "1"), delta(p, "2"), delta(p, "3"), delta(p, "4")}), 3);
    CHECK(bd.flag == BoundednessFlag::Bounded);
    for (const auto& row : bd.scan.rows) CHECK(row.max_norm <= 1);

    // Two unbounded terms cancel: the structural flag cannot tell.
    const auto cancel = boundedness_verdict(mazur(p) - mazur(p), 3);
    CHECK(cancel.flag == BoundednessFlag::Unknown);
    CHECK_FALSE(cancel.discrepancy);
}

TEST_CASE("boundedness verdict attaches discrepancy notes") {
    const long p = 3;
    // Nothing lies strictly right of the all-(p-1) path, so the Haar side is
    // never used and the scan stays at 1 while the flag says Unbounded.
    const Path top(p, {}, {2});
    const auto v = boundedness_verdict(graft(top, delta(p, "0"), haar(p)), 4);
    CHECK(v.flag == BoundednessFlag::Unbounded);
    REQUIRE(v.discrepancy);
    for (const auto& row : v.scan.rows) CHECK(row.max_norm == 1);
}

TEST_CASE("reports are identical across thread counts") {
    const long p = 3;
    const Dist e = graft(Path(p, {}, {1, 2}), haar(p), bernoulli(p, 3) - delta(p, "5"));
    ScanOptions one, many;
    many.threads = 7;
    CHECK(to_json(check_relation(e, 6, one), 1000).dump() == to_json(check_relation(e, 6, many), 1000).dump());
    CHECK(to_json(norm_scan(e, 6, one)).dump() == to_json(norm_scan(e, 6, many)).dump());
    const Path pi(5, {}, {2});
    const Dist broken = graft(pi, delta(5, "1"), delta(5, "4")) + haar(5);
    CHECK(to_json(check_relation(broken, 5, one), 1000).dump() ==
          to_json(check_relation(broken, 5, many), 1000).dump());
}
