#pragma once

#include "padist/rational.hpp"

#include <climits>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace padist {

/// Returned by valuation() for x = 0.
inline constexpr long kInfiniteValuation = LONG_MAX;

bool is_prime(long p);

/// Throws InputError unless p is prime.
void require_prime(long p);

/// Exponent of p in x, or kInfiniteValuation for zero.
long valuation(const Rational& x, long p);

/// |x|_p = p^(-valuation), exactly; 0 for x = 0.
Rational norm(const Rational& x, long p);

/// A rational point of Z_p: the denominator is coprime to p.
class PAdicPoint {
public:
    PAdicPoint(long prime, Rational value);

    long prime() const noexcept { return prime_; }
    const Rational& value() const noexcept { return value_; }

    friend bool operator==(const PAdicPoint&, const PAdicPoint&) = default;

private:
    long prime_;
    Rational value_;
};

/// First `count` canonical digits x_0, x_1, ... of t.
std::vector<unsigned> digit_expand(const PAdicPoint& t, std::size_t count);

/// Eventually periodic digit stream i_0 i_1 i_2 ... = preperiod, then period
/// repeated forever. Encodes an infinite upward path of the half Cayley tree
/// of order p, one digit per edge label.
class Path {
public:
    Path(long prime, std::vector<unsigned> preperiod, std::vector<unsigned> period);

    long prime() const noexcept { return prime_; }
    const std::vector<unsigned>& preperiod() const noexcept { return preperiod_; }
    const std::vector<unsigned>& period() const noexcept { return period_; }

    unsigned digit(std::size_t i) const noexcept {
        if (i < preperiod_.size()) return preperiod_[i];
        return period_[(i - preperiod_.size()) % period_.size()];
    }

    /// Number of leading digits after which two streams that still agree
    /// agree forever: max preperiod + lcm of periods.
    std::size_t comparison_horizon(const Path& other) const;

    /// Same digit stream (representations may differ).
    bool same_stream(const Path& other) const;

    /// Struct equality of the representation.
    friend bool operator==(const Path&, const Path&) = default;

private:
    long prime_;
    std::vector<unsigned> preperiod_;
    std::vector<unsigned> period_;
};

/// Minimal (preperiod, period) representation of t's digit stream.
Path point_to_path(const PAdicPoint& t);

/// t(pi) = sum of i_n p^n as an exact rational.
PAdicPoint path_to_point(const Path& path);

/// The interval a + (p^n) of Z_p, canonical: 0 <= rep < p^n.
class Ball {
public:
    /// Throws InputError unless 0 <= rep < p^depth and p is prime.
    Ball(long prime, unsigned depth, Integer rep);

    /// The whole space Z_p.
    static Ball whole(long prime) { return Ball(prime, 0, Integer(0)); }

    long prime() const noexcept { return prime_; }
    unsigned depth() const noexcept { return depth_; }
    const Integer& rep() const noexcept { return rep_; }

    /// p^depth.
    Integer modulus() const { return ipow(prime_, depth_); }

    /// The first depth digits of rep, least significant first.
    std::vector<unsigned> digits() const;

    /// Children a + b p^n + (p^(n+1)) for b = 0..p-1, in that order.
    std::vector<Ball> children() const;

    /// The depth-d ancestor, d <= depth.
    Ball truncate(unsigned d) const;

    bool contains(const Ball& other) const;
    bool contains(const PAdicPoint& t) const;

    friend bool operator==(const Ball& a, const Ball& b) {
        return a.prime_ == b.prime_ && a.depth_ == b.depth_ && a.rep_ == b.rep_;
    }

    /// "rep/depth", the CLI syntax.
    std::string to_string() const;

private:
    long prime_;
    unsigned depth_;
    Integer rep_;
};

/// Canonical ball of depth n containing the integer a.
Ball ball_make(long p, unsigned n, const Integer& a);

/// Canonical ball of depth n containing the p-adic integer a; throws InputError
/// when p divides the denominator.
Ball ball_make(long p, unsigned n, const Rational& a);

inline std::vector<Ball> ball_children(const Ball& b) { return b.children(); }

/// Throws InputError on prime mismatch.
bool ball_contains(const Ball& b, const PAdicPoint& t);

enum class Order { Less, Equal, Greater };

/// Lexicographic order of digit streams from index 0.
Order path_compare(const Path& a, const Path& b);

/// m(a, pi): the last index through which a agrees with pi before the first
/// disagreement.
struct Divergence {
    enum class Kind {
        At,                 ///< digits 0..index agree, digit index+1 differs
        FirstDigitDiffers,  ///< digit 0 already differs: no common edge
        Never,              ///< agrees on all `index` inspected digits
    };
    Kind kind;
    std::size_t index;

    friend bool operator==(const Divergence&, const Divergence&) = default;
};

Divergence divergence_index(const Ball& a, const Path& path);
Divergence divergence_index(const PAdicPoint& a, const Path& path);

const char* to_string(Order o);
std::string to_string(const Divergence& d);

}  // namespace padist
