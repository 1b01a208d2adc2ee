#pragma once

#include "padist/distribution.hpp"
#include "padist/enumerate.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace padist {

struct RelationViolation {
    Ball ball;
    Rational lhs;
    Rational children_sum;
};

/// Violations are ordered by (depth, rep).
struct RelationReport {
    long prime;
    unsigned max_depth;
    std::vector<RelationViolation> violations;
    std::uint64_t checked_count = 0;

    bool ok() const noexcept { return violations.empty(); }
};

/// Checks mu(B) = sum of mu over the p children of B, exactly, on every ball
/// of depth 0..max_depth-1.
RelationReport check_relation(const Dist& e, unsigned max_depth, const ScanOptions& opts = {});

struct OnPathFailure {
    unsigned depth;
    Rational left_value;   ///< mu_1 on the on-path ball
    Rational right_value;  ///< mu_2 on the on-path ball
};

/// Sums of (mu_1 - mu_2) over the children of an on-path ball strictly left
/// (b < i_n) and strictly right (b > i_n) of the path.
struct TailSumFailure {
    unsigned depth;
    Rational left_sum_difference;
    Rational right_sum_difference;
};

struct GraftPreconditionReport {
    std::vector<OnPathFailure> on_path_agreement;
    std::vector<TailSumFailure> tail_sum_failures;
    unsigned depth_checked = 0;

    bool passed() const noexcept { return on_path_agreement.empty() && tail_sum_failures.empty(); }
};

/// For each n in 0..max_depth, checks agreement of left and right on the
/// on-path ball of depth n, and that both tail sums of their difference over
/// that ball's off-path children vanish.
GraftPreconditionReport check_graft_precondition(const Dist& left, const Dist& right, const Path& path,
                                                 unsigned max_depth);

struct BranchWitness {
    std::size_t t;
    std::size_t s;
    Ball ball;
};

/// Lexicographically first (t < s, ball) with children[t] != children[s] on a
/// ball of depth in [k, search_depth]. std::nullopt means none up to that
/// depth, which is inconclusive.
std::optional<BranchWitness> check_branch_hypothesis(unsigned k, std::span<const Dist> children,
                                                     unsigned search_depth, const ScanOptions& opts = {});

/// First ball by (depth, rep) with depth <= max_depth where the two differ.
std::optional<Ball> distinctness_witness(const Dist& a, const Dist& b, unsigned max_depth,
                                         const ScanOptions& opts = {});

struct NormScanRow {
    unsigned depth;
    Rational max_norm;
    Ball argmax;  ///< smallest rep attaining max_norm
};

struct NormScanReport {
    std::vector<NormScanRow> rows;  ///< depths 0..max_depth
};

NormScanReport norm_scan(const Dist& e, unsigned max_depth, const ScanOptions& opts = {});

struct BoundednessVerdict {
    BoundednessFlag flag;
    NormScanReport scan;
    std::optional<std::string> discrepancy;
};

/// The structural flag, cross-checked against an exact scan. A disagreement is
/// reported in `discrepancy`; the flag itself is never overridden.
BoundednessVerdict boundedness_verdict(const Dist& e, unsigned max_depth, const ScanOptions& opts = {});

}  // namespace padist
