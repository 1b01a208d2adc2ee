#include "padist/verify.hpp"

#include "padist/errors.hpp"

namespace padist {

RelationReport check_relation(const Dist& e, unsigned max_depth, const ScanOptions& opts) {
    if (max_depth < 1) throw InputError("check_relation: max_depth must be >= 1");
    const long p = e.prime();
    level_size(p, max_depth, opts);

    RelationReport report{p, max_depth, {}, 0};
    std::vector<Rational> parent = evaluate_level(e, 0, opts);
    for (unsigned n = 0; n < max_depth; ++n) {
        std::vector<Rational> child = evaluate_level(e, n + 1, opts);
        const std::uint64_t stride = parent.size();
        for (std::uint64_t a = 0; a < stride; ++a) {
            Rational sum = 0;
            for (long b = 0; b < p; ++b) sum += child[a + stride * static_cast<std::uint64_t>(b)];
            if (sum != parent[a])
                report.violations.push_back({Ball(p, n, Integer(static_cast<unsigned long>(a))), parent[a], sum});
        }
        report.checked_count += stride;
        parent = std::move(child);
    }
    return report;
}

GraftPreconditionReport check_graft_precondition(const Dist& left, const Dist& right, const Path& path,
                                                 unsigned max_depth) {
    const long p = path.prime();
    if (left.prime() != p || right.prime() != p) throw InputError("graft precondition: prime mismatch");

    GraftPreconditionReport report;
    report.depth_checked = max_depth;
    Integer rep = 0, scale = 1;
    for (unsigned n = 0; n <= max_depth; ++n) {
        const Ball on_path(p, n, rep);
        const Rational l = evaluate(left, on_path), r = evaluate(right, on_path);
        if (l != r) report.on_path_agreement.push_back({n, l, r});

        const unsigned i = path.digit(n);
        Rational left_sum = 0, right_sum = 0;
        const auto kids = on_path.children();
        for (unsigned b = 0; b < kids.size(); ++b) {
            if (b == i) continue;
            const Rational diff = evaluate(left, kids[b]) - evaluate(right, kids[b]);
            (b < i ? left_sum : right_sum) += diff;
        }
        if (left_sum != 0 || right_sum != 0) report.tail_sum_failures.push_back({n, left_sum, right_sum});

        rep += scale * i;
        scale *= p;
    }
    return report;
}

std::optional<BranchWitness> check_branch_hypothesis(unsigned k, std::span<const Dist> children,
                                                     unsigned search_depth, const ScanOptions& opts) {
    if (search_depth < k) throw InputError("branch hypothesis: search_depth must be >= k");
    if (children.size() < 2) return std::nullopt;
    const long p = children.front().prime();
    level_size(p, search_depth, opts);

    // levels[t][n - k] = values of children[t] at depth n.
    std::vector<std::vector<std::vector<Rational>>> levels(children.size());
    for (std::size_t t = 0; t < children.size(); ++t)
        for (unsigned n = k; n <= search_depth; ++n) levels[t].push_back(evaluate_level(children[t], n, opts));

    for (std::size_t t = 0; t < children.size(); ++t)
        for (std::size_t s = t + 1; s < children.size(); ++s)
            for (unsigned n = k; n <= search_depth; ++n) {
                const auto& vt = levels[t][n - k];
                const auto& vs = levels[s][n - k];
                for (std::uint64_t a = 0; a < vt.size(); ++a)
                    if (vt[a] != vs[a]) return BranchWitness{t, s, Ball(p, n, Integer(static_cast<unsigned long>(a)))};
            }
    return std::nullopt;
}

std::optional<Ball> distinctness_witness(const Dist& a, const Dist& b, unsigned max_depth, const ScanOptions& opts) {
    const long p = a.prime();
    if (b.prime() != p) throw InputError("distinctness: prime mismatch");
    level_size(p, max_depth, opts);
    for (unsigned n = 0; n <= max_depth; ++n) {
        const auto va = evaluate_level(a, n, opts);
        const auto vb = evaluate_level(b, n, opts);
        for (std::uint64_t r = 0; r < va.size(); ++r)
            if (va[r] != vb[r]) return Ball(p, n, Integer(static_cast<unsigned long>(r)));
    }
    return std::nullopt;
}

NormScanReport norm_scan(const Dist& e, unsigned max_depth, const ScanOptions& opts) {
    const long p = e.prime();
    level_size(p, max_depth, opts);
    NormScanReport report;
    for (unsigned n = 0; n <= max_depth; ++n) {
        const auto values = evaluate_level(e, n, opts);
        Rational best = -1;
        std::uint64_t best_rep = 0;
        for (std::uint64_t r = 0; r < values.size(); ++r) {
            const Rational v = norm(values[r], p);
            if (v > best) {
                best = v;
                best_rep = r;
            }
        }
        report.rows.push_back({n, best, Ball(p, n, Integer(static_cast<unsigned long>(best_rep)))});
    }
    return report;
}

BoundednessVerdict boundedness_verdict(const Dist& e, unsigned max_depth, const ScanOptions& opts) {
    BoundednessVerdict out{boundedness_flag(e), norm_scan(e, max_depth, opts), std::nullopt};
    const auto& rows = out.scan.rows;
    const std::size_t n = rows.size();
    if (out.flag == BoundednessFlag::Bounded && n >= 3 && rows[n - 3].max_norm < rows[n - 2].max_norm &&
        rows[n - 2].max_norm < rows[n - 1].max_norm) {
        out.discrepancy = "flag is Bounded but max norm grows strictly over the last three depths";
    }
    if (out.flag == BoundednessFlag::Unbounded) {
        bool constant = true;
        for (const auto& row : rows) constant = constant && row.max_norm == rows.front().max_norm;
        if (constant) out.discrepancy = "flag is Unbounded but max norm is constant over the scanned depths";
    }
    return out;
}

}  // namespace padist
