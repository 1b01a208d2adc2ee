#pragma once

// Test-only oracles. Each one computes its answer by a route that does not
// go through the library function it is used to check.

#include "padist/distribution.hpp"
#include "padist/padic.hpp"

#include <cstdint>
#include <random>
#include <vector>

namespace oracle {

using padist::Integer;
using padist::Rational;

inline Integer pow_int(long p, unsigned n) {
    Integer r = 1;
    for (unsigned i = 0; i < n; ++i) r *= p;
    return r;
}

// Digits by search: d_n is the unique digit with
// num ≡ den * (d_0 + ... + d_n p^n)  (mod p^(n+1)).
inline std::vector<unsigned> digits_by_search(const Rational& t, long p, std::size_t count) {
    std::vector<unsigned> out;
    Integer partial = 0, scale = 1;
    for (std::size_t n = 0; n < count; ++n) {
        const Integer m = scale * p;
        for (long d = 0; d < p; ++d) {
            Integer diff = t.get_num() - t.get_den() * (partial + scale * d);
            if (mpz_divisible_p(diff.get_mpz_t(), m.get_mpz_t())) {
                out.push_back(static_cast<unsigned>(d));
                partial += scale * d;
                break;
            }
        }
        scale = m;
    }
    return out;
}

// Akiyama–Tanigawa: yields B_n with the B_1 = +1/2 convention.
inline std::vector<Rational> bernoulli_numbers_at(unsigned k) {
    std::vector<Rational> out;
    std::vector<Rational> a(k + 1);
    for (unsigned m = 0; m <= k; ++m) {
        a[m] = Rational(1, m + 1);
        for (unsigned j = m; j >= 1; --j) {
            a[j - 1] = Rational(j) * (a[j - 1] - a[j]);
        }
        out.push_back(a[0]);
    }
    if (k >= 1) out[1] = -out[1];
    return out;
}

inline Rational bernoulli_poly(unsigned k, const Rational& x) {
    const auto b = bernoulli_numbers_at(k);
    Rational acc = 0, xp = 1;
    // sum_j C(k, j) B_j x^(k-j), accumulated from j = k down.
    for (unsigned j = k + 1; j-- > 0;) {
        Integer c;
        mpz_bin_uiui(c.get_mpz_t(), k, j);
        acc += Rational(c) * b[j] * xp;
        xp *= x;
    }
    return acc;
}

// Digits of a non-negative integer rep, least significant first.
inline std::vector<unsigned> rep_digits(Integer a, long p, unsigned n) {
    std::vector<unsigned> out;
    for (unsigned i = 0; i < n; ++i) {
        Integer r = a % p;
        out.push_back(static_cast<unsigned>(r.get_ui()));
        a /= p;
    }
    return out;
}

// The graft as a literal reading of its defining case table, using
// m(a, pi) and the side of pi on which a's path leaves it.
enum class Side { Left, Right };
inline Side graft_side(const std::vector<unsigned>& ds, const padist::Path& pi) {
    const std::size_t n = ds.size();
    // pi_a ∩ pi = ∅: decided by digit 0.
    if (n > 0 && ds[0] != pi.digit(0)) return ds[0] < pi.digit(0) ? Side::Left : Side::Right;
    // Common edge: m = last agreeing index; n <= m means the ball lies on pi.
    std::size_t m = 0;
    while (m + 1 < n && ds[m + 1] == pi.digit(m + 1)) ++m;
    if (n == 0 || m + 1 >= n) return Side::Left;
    return ds[m + 1] < pi.digit(m + 1) ? Side::Left : Side::Right;
}

// Branch on a + (p^n), n <= k, by the index-shuffled recursion: `digits`
// holds k digits a_0..a_{k-1} of which only the first n name the ball, and
// level j sums over the digit (a_j + b) mod p.
inline Rational branch_by_shuffle(const std::vector<padist::Dist>& children, long p, std::vector<unsigned> digits,
                                  unsigned n) {
    const unsigned k = static_cast<unsigned>(digits.size());
    if (n == k) {
        Integer t = 0;
        for (unsigned j = k; j-- > 0;) t = t * p + digits[j];
        return padist::evaluate(children[t.get_ui()], padist::Ball(p, k, t));
    }
    Rational acc = 0;
    for (long b = 0; b < p; ++b) {
        auto d = digits;
        d[n] = static_cast<unsigned>((digits[n] + b) % p);
        acc += branch_by_shuffle(children, p, d, n + 1);
    }
    return acc;
}

// Regularize(1, alpha, Mazur) on a + (p^n) for a positive integer alpha:
// (1/alpha) floor(alpha a / p^n) + (1/alpha - 1) / 2.
inline Rational regularized_mazur(long alpha, const Integer& a, const Integer& pn) {
    Integer q;
    const Integer num = a * alpha;
    mpz_fdiv_q(q.get_mpz_t(), num.get_mpz_t(), pn.get_mpz_t());
    return padist::fraction(q, Integer(alpha)) + (Rational(1, alpha) - 1) / 2;
}

// Deterministic generators for hand-rolled property tests.
struct Gen {
    std::mt19937_64 rng;
    explicit Gen(std::uint64_t seed) : rng(seed) {}

    long uniform(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng); }

    long prime() {
        static constexpr long primes[] = {2, 3, 5, 7};
        return primes[uniform(0, 3)];
    }

    Rational rational(long span = 1000) {
        Rational r(uniform(-span, span), uniform(1, span));
        r.canonicalize();
        return r;
    }

    Rational padic_integer(long p, long span = 200) {
        long den = uniform(1, span);
        while (den % p == 0) den = uniform(1, span);
        Rational r(uniform(-span, span), den);
        r.canonicalize();
        return r;
    }

    std::vector<unsigned> digits(long p, std::size_t len) {
        std::vector<unsigned> d(len);
        for (auto& x : d) x = static_cast<unsigned>(uniform(0, p - 1));
        return d;
    }

    padist::Path path(long p) {
        return padist::Path(p, digits(p, static_cast<std::size_t>(uniform(0, 4))),
                            digits(p, static_cast<std::size_t>(uniform(1, 4))));
    }
};

}  // namespace oracle
