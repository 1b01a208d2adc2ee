#pragma once

#include "padist/distribution.hpp"
#include "padist/enumerate.hpp"

#include <optional>
#include <string_view>
#include <variant>
#include <vector>

namespace padist {

/// A test function sampled at the canonical representative of each ball.
class TestFn {
public:
    struct Polynomial {
        std::vector<Rational> coeffs;  // low degree first
    };
    struct Step {
        long prime;
        unsigned depth;
        std::vector<Rational> values;  // indexed by depth-d rep
    };

    static TestFn polynomial(std::vector<Rational> coeffs);
    /// Throws InputError unless values.size() == p^depth.
    static TestFn step(long p, unsigned depth, std::vector<Rational> values);

    Rational operator()(const Integer& x) const;

    /// d such that f is constant on every depth-d ball, when known:
    /// the step depth, or 0 for a constant polynomial.
    std::optional<unsigned> locally_constant_depth() const;

    const std::variant<Polynomial, Step>& kind() const noexcept { return kind_; }

private:
    explicit TestFn(std::variant<Polynomial, Step> k) : kind_(std::move(k)) {}
    std::variant<Polynomial, Step> kind_;
};

/// "c0 + c1*x + c2*x^2" with rational coefficients; '-' between terms and
/// bare "x" / "x^k" are accepted.
TestFn parse_polynomial(std::string_view text);

/// S_N = sum over a < p^N of f(a) * e(a + (p^N)).
Rational riemann_sum(const Dist& e, const TestFn& f, unsigned depth, const ScanOptions& opts = {});

enum class ConvergenceVerdict { ConvergedExactly, NormDecreasing, Diverging, Inconclusive };
const char* to_string(ConvergenceVerdict v);

struct IntegrationReport {
    std::vector<Rational> partial_sums;      ///< S_1..S_N
    std::vector<Rational> difference_norms;  ///< |S_(m+1) - S_m|_p, m = 1..N-1
    ConvergenceVerdict verdict;
};

/// Verdict rules, first match wins:
///  converged-exactly: f is locally constant at depth d <= N-1 and every
///                     difference from S_d on is zero;
///  norm-decreasing:   the norms never increase and the last is below the first;
///  diverging:         the norms grow strictly over the final three steps;
///  inconclusive:      otherwise.
/// These are finite-window heuristics; nothing is claimed about a limit.
IntegrationReport integrate(const Dist& e, const TestFn& f, unsigned max_depth, const ScanOptions& opts = {});

/// The verdict as a function of the recorded data alone.
ConvergenceVerdict classify(const std::vector<Rational>& difference_norms, std::optional<unsigned> step_depth);

}  // namespace padist
