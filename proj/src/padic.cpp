#include "padist/padic.hpp"

#include "padist/errors.hpp"

#include <map>
#include <numeric>

namespace padist {

namespace {

long valuation_of(const Integer& x, long p) {
    Integer q = x;
    long v = 0;
    while (mpz_divisible_ui_p(q.get_mpz_t(), static_cast<unsigned long>(p))) {
        mpz_divexact_ui(q.get_mpz_t(), q.get_mpz_t(), static_cast<unsigned long>(p));
        ++v;
    }
    return v;
}

void require_same_prime(long a, long b) {
    if (a != b)
        throw InputError("prime mismatch: " + std::to_string(a) + " vs " + std::to_string(b));
}

void require_digits(long p, const std::vector<unsigned>& ds, const char* what) {
    for (unsigned d : ds)
        if (static_cast<long>(d) >= p)
            throw InputError(std::string(what) + " digit " + std::to_string(d) +
                             " out of range for p=" + std::to_string(p));
}

// u * v^{-1} mod m, for v invertible mod m.
Integer residue(const Rational& x, const Integer& m) {
    if (m == 1) return 0;
    Integer inv;
    if (mpz_invert(inv.get_mpz_t(), x.get_den_mpz_t(), m.get_mpz_t()) == 0)
        throw InputError("not a p-adic integer: " + to_string(x));
    Integer r = x.get_num() * inv;
    mpz_fdiv_r(r.get_mpz_t(), r.get_mpz_t(), m.get_mpz_t());
    return r;
}

}  // namespace

bool is_prime(long p) {
    if (p < 2) return false;
    for (long d = 2; d * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

void require_prime(long p) {
    if (!is_prime(p)) throw InputError("not a prime: " + std::to_string(p));
}

long valuation(const Rational& x, long p) {
    require_prime(p);
    if (x == 0) return kInfiniteValuation;
    return valuation_of(x.get_num(), p) - valuation_of(x.get_den(), p);
}

Rational norm(const Rational& x, long p) {
    const long v = valuation(x, p);
    if (v == kInfiniteValuation) return 0;
    return rpow(Rational(p), -v);
}

PAdicPoint::PAdicPoint(long prime, Rational value) : prime_(prime), value_(std::move(value)) {
    require_prime(prime_);
    value_.canonicalize();
    if (mpz_divisible_ui_p(value_.get_den_mpz_t(), static_cast<unsigned long>(prime_)))
        throw InputError("not a p-adic integer: " + to_string(value_) + " (p=" +
                         std::to_string(prime_) + ")");
}

std::vector<unsigned> digit_expand(const PAdicPoint& t, std::size_t count) {
    const long p = t.prime();
    const Integer pz(p);
    const Integer& v = t.value().get_den();
    Integer vinv;
    mpz_invert(vinv.get_mpz_t(), v.get_mpz_t(), pz.get_mpz_t());

    // t = u / v; peel d = u v^{-1} mod p, then u <- (u - d v) / p.
    Integer u = t.value().get_num();
    std::vector<unsigned> out;
    out.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        Integer d = u * vinv;
        mpz_fdiv_r(d.get_mpz_t(), d.get_mpz_t(), pz.get_mpz_t());
        out.push_back(static_cast<unsigned>(d.get_ui()));
        u -= d * v;
        mpz_divexact_ui(u.get_mpz_t(), u.get_mpz_t(), static_cast<unsigned long>(p));
    }
    return out;
}

Path::Path(long prime, std::vector<unsigned> preperiod, std::vector<unsigned> period)
    : prime_(prime), preperiod_(std::move(preperiod)), period_(std::move(period)) {
    require_prime(prime_);
    if (period_.empty()) throw InputError("path period must be nonempty");
    require_digits(prime_, preperiod_, "preperiod");
    require_digits(prime_, period_, "period");
}

std::size_t Path::comparison_horizon(const Path& other) const {
    return std::max(preperiod_.size(), other.preperiod_.size()) +
           std::lcm(period_.size(), other.period_.size());
}

bool Path::same_stream(const Path& other) const {
    return path_compare(*this, other) == Order::Equal;
}

Path point_to_path(const PAdicPoint& t) {
    const long p = t.prime();
    const Integer pz(p);
    const Integer& v = t.value().get_den();
    Integer vinv;
    mpz_invert(vinv.get_mpz_t(), v.get_mpz_t(), pz.get_mpz_t());

    // The tail after i digits is u_i / v; the state sequence u_i is eventually
    // periodic and equal states mean equal tails, so the first repeat gives
    // the minimal preperiod and period.
    std::map<Integer, std::size_t> seen;
    std::vector<unsigned> digits;
    Integer u = t.value().get_num();
    while (true) {
        auto [it, inserted] = seen.emplace(u, digits.size());
        if (!inserted) {
            const std::size_t start = it->second;
            std::vector<unsigned> pre(digits.begin(), digits.begin() + static_cast<std::ptrdiff_t>(start));
            std::vector<unsigned> per(digits.begin() + static_cast<std::ptrdiff_t>(start), digits.end());
            return Path(p, std::move(pre), std::move(per));
        }
        Integer d = u * vinv;
        mpz_fdiv_r(d.get_mpz_t(), d.get_mpz_t(), pz.get_mpz_t());
        digits.push_back(static_cast<unsigned>(d.get_ui()));
        u -= d * v;
        mpz_divexact_ui(u.get_mpz_t(), u.get_mpz_t(), static_cast<unsigned long>(p));
    }
}

PAdicPoint path_to_point(const Path& path) {
    const long p = path.prime();
    Integer head = 0, scale = 1;
    for (unsigned d : path.preperiod()) {
        head += scale * d;
        scale *= p;
    }
    Integer block = 0, block_scale = 1;
    for (unsigned d : path.period()) {
        block += block_scale * d;
        block_scale *= p;
    }
    // scale = p^L, block_scale = p^T: tail = P p^L / (1 - p^T).
    return PAdicPoint(p, Rational(head) + fraction(block * scale, Integer(1 - block_scale)));
}

Ball::Ball(long prime, unsigned depth, Integer rep) : prime_(prime), depth_(depth), rep_(std::move(rep)) {
    require_prime(prime_);
    if (rep_ < 0 || rep_ >= modulus())
        throw InputError("ball rep " + padist::to_string(rep_) + " out of range for depth " +
                         std::to_string(depth_) + " (p=" + std::to_string(prime_) + ")");
}

std::vector<unsigned> Ball::digits() const {
    std::vector<unsigned> out;
    out.reserve(depth_);
    Integer q = rep_;
    for (unsigned i = 0; i < depth_; ++i)
        out.push_back(static_cast<unsigned>(mpz_fdiv_q_ui(q.get_mpz_t(), q.get_mpz_t(),
                                                          static_cast<unsigned long>(prime_))));
    return out;
}

std::vector<Ball> Ball::children() const {
    const Integer step = modulus();
    std::vector<Ball> out;
    out.reserve(static_cast<std::size_t>(prime_));
    for (long b = 0; b < prime_; ++b) out.emplace_back(prime_, depth_ + 1, rep_ + step * b);
    return out;
}

Ball Ball::truncate(unsigned d) const {
    if (d > depth_) throw InputError("cannot truncate a ball to a greater depth");
    Integer r;
    const Integer m = ipow(prime_, d);
    mpz_fdiv_r(r.get_mpz_t(), rep_.get_mpz_t(), m.get_mpz_t());
    return Ball(prime_, d, std::move(r));
}

bool Ball::contains(const Ball& other) const {
    require_same_prime(prime_, other.prime_);
    return other.depth_ >= depth_ && other.truncate(depth_).rep_ == rep_;
}

bool Ball::contains(const PAdicPoint& t) const {
    require_same_prime(prime_, t.prime());
    return residue(t.value(), modulus()) == rep_;
}

std::string Ball::to_string() const { return padist::to_string(rep_) + "/" + std::to_string(depth_); }

Ball ball_make(long p, unsigned n, const Integer& a) {
    require_prime(p);
    const Integer m = ipow(p, n);
    Integer r;
    mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
    return Ball(p, n, std::move(r));
}

Ball ball_make(long p, unsigned n, const Rational& a) {
    const PAdicPoint t(p, a);
    return Ball(p, n, residue(t.value(), ipow(p, n)));
}

bool ball_contains(const Ball& b, const PAdicPoint& t) { return b.contains(t); }

Order path_compare(const Path& a, const Path& b) {
    require_same_prime(a.prime(), b.prime());
    const std::size_t horizon = a.comparison_horizon(b);
    for (std::size_t i = 0; i < horizon; ++i) {
        const unsigned x = a.digit(i), y = b.digit(i);
        if (x < y) return Order::Less;
        if (x > y) return Order::Greater;
    }
    return Order::Equal;
}

namespace {

template <class DigitAt>
Divergence first_difference(std::size_t count, DigitAt&& digit_at, const Path& path) {
    for (std::size_t i = 0; i < count; ++i) {
        if (digit_at(i) != path.digit(i)) {
            if (i == 0) return {Divergence::Kind::FirstDigitDiffers, 0};
            return {Divergence::Kind::At, i - 1};
        }
    }
    return {Divergence::Kind::Never, count};
}

}  // namespace

Divergence divergence_index(const Ball& a, const Path& path) {
    require_same_prime(a.prime(), path.prime());
    const auto ds = a.digits();
    return first_difference(ds.size(), [&](std::size_t i) { return ds[i]; }, path);
}

Divergence divergence_index(const PAdicPoint& a, const Path& path) {
    require_same_prime(a.prime(), path.prime());
    const Path pa = point_to_path(a);
    return first_difference(pa.comparison_horizon(path), [&](std::size_t i) { return pa.digit(i); }, path);
}

const char* to_string(Order o) {
    switch (o) {
        case Order::Less: return "Less";
        case Order::Equal: return "Equal";
        case Order::Greater: return "Greater";
    }
    return "?";
}

std::string to_string(const Divergence& d) {
    switch (d.kind) {
        case Divergence::Kind::At: return std::to_string(d.index);
        case Divergence::Kind::FirstDigitDiffers: return "first-digit-differs";
        case Divergence::Kind::Never: return "never(" + std::to_string(d.index) + ")";
    }
    return "?";
}

}  // namespace padist
