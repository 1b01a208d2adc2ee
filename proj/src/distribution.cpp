#include "padist/distribution.hpp"

#include "padist/bernoulli.hpp"
#include "padist/errors.hpp"

#include <optional>

namespace padist {

namespace {

template <class... Fs>
struct overloaded : Fs... {
    using Fs::operator()...;
};
template <class... Fs>
overloaded(Fs...) -> overloaded<Fs...>;

void require_prime_match(long expected, long got, const char* where) {
    if (expected != got)
        throw InputError(std::string(where) + ": prime mismatch (" + std::to_string(expected) + " vs " +
                         std::to_string(got) + ")");
}

bool is_unit(const Rational& x, long p) { return x != 0 && valuation(x, p) == 0; }

// The rep of alpha * a mod p^n for a p-adic unit alpha.
Ball scale_ball(const Rational& alpha, const Ball& b) {
    return ball_make(b.prime(), b.depth(), Rational(alpha * Rational(b.rep())));
}

// Intersection of two balls of Z_p: the deeper one if they nest.
std::optional<Ball> intersect(const Ball& a, const Ball& b) {
    if (a.depth() >= b.depth()) {
        if (b.contains(a)) return a;
    } else if (a.contains(b)) {
        return b;
    }
    return std::nullopt;
}

Rational evaluate_graft(const node::Graft& g, const Ball& b) {
    Integer q = b.rep();
    for (unsigned j = 0; j < b.depth(); ++j) {
        const auto d = static_cast<unsigned>(
            mpz_fdiv_q_ui(q.get_mpz_t(), q.get_mpz_t(), static_cast<unsigned long>(b.prime())));
        const unsigned i = g.path.digit(j);
        if (d < i) return evaluate(g.left, b);
        if (d > i) return evaluate(g.right, b);
    }
    // Fully on the path, including the root.
    return evaluate(g.left, b);
}

Rational evaluate_branch(const node::Branch& br, const Ball& b) {
    if (b.depth() >= br.k) {
        Integer t;
        const Integer m = ipow(b.prime(), br.k);
        mpz_fdiv_r(t.get_mpz_t(), b.rep().get_mpz_t(), m.get_mpz_t());
        return evaluate(br.children[t.get_ui()], b);
    }
    // (a_j + b) mod p over b = 0..p-1 visits every child once, so the
    // recursive definition is the plain sum over children.
    Rational acc = 0;
    for (const Ball& c : b.children()) acc += evaluate_branch(br, c);
    return acc;
}

}  // namespace

Dist make_dist(long prime, DistNode node) {
    require_prime(prime);
    return Dist(prime, std::make_shared<const DistNode>(std::move(node)));
}

Dist dirac(const PAdicPoint& t) { return make_dist(t.prime(), {node::Dirac{t}}); }

Dist haar(long p, Rational scale) { return make_dist(p, {node::Haar{std::move(scale)}}); }

Dist mazur(long p) { return make_dist(p, {node::Mazur{}}); }

Dist bernoulli(long p, unsigned k) {
    if (k < 1) throw InputError("bernoulli: k must be >= 1");
    return make_dist(p, {node::Bernoulli{k, bernoulli_polynomial_coefficients(k)}});
}

Dist linear_comb(long p, std::vector<node::Term> terms) {
    for (const auto& t : terms) require_prime_match(p, t.expr.prime(), "lincomb");
    return make_dist(p, {node::LinearComb{std::move(terms)}});
}

Dist restrict_to(const Ball& cell, Dist expr) {
    require_prime_match(cell.prime(), expr.prime(), "restrict");
    const long p = expr.prime();
    return make_dist(p, {node::Restrict{cell, std::move(expr)}});
}

Dist regularize(unsigned k, Rational alpha, Dist expr) {
    const long p = expr.prime();
    if (k < 1) throw InputError("regularize: k must be >= 1");
    if (!is_unit(alpha, p)) throw InputError("regularize: alpha must be a p-adic unit");
    if (alpha == 1) throw InputError("regularize: alpha must differ from 1");
    return make_dist(p, {node::Regularize{k, std::move(alpha), std::move(expr)}});
}

Dist graft(const Path& path, Dist left, Dist right) {
    require_prime_match(path.prime(), left.prime(), "graft");
    require_prime_match(path.prime(), right.prime(), "graft");
    return make_dist(path.prime(), {node::Graft{path, std::move(left), std::move(right)}});
}

Dist branch(unsigned k, std::vector<Dist> children) {
    if (k < 1) throw InputError("branch: k must be >= 1");
    if (children.empty()) throw InputError("branch: no children");
    const long p = children.front().prime();
    for (const auto& c : children) require_prime_match(p, c.prime(), "branch");
    if (Integer(static_cast<unsigned long>(children.size())) != ipow(p, k))
        throw InputError("branch: expected p^k = " + to_string(ipow(p, k)) + " children, got " +
                         std::to_string(children.size()));
    return make_dist(p, {node::Branch{k, std::move(children)}});
}

Dist operator+(const Dist& a, const Dist& b) { return linear_comb(a.prime(), {{1, a}, {1, b}}); }
Dist operator-(const Dist& a, const Dist& b) { return linear_comb(a.prime(), {{1, a}, {-1, b}}); }
Dist operator*(const Rational& c, const Dist& e) { return linear_comb(e.prime(), {{c, e}}); }

Rational evaluate(const Dist& e, const Ball& b) {
    require_prime_match(e.prime(), b.prime(), "evaluate");
    return std::visit(
        overloaded{
            [&](const node::Dirac& d) -> Rational { return b.contains(d.point) ? 1 : 0; },
            [&](const node::Haar& h) -> Rational { return h.scale / Rational(b.modulus()); },
            [&](const node::Mazur&) -> Rational {
                return fraction(b.rep(), b.modulus()) - Rational(1, 2);
            },
            [&](const node::Bernoulli& bn) -> Rational {
                const Integer m = b.modulus();
                const Rational x = fraction(b.rep(), m);
                Integer scale;
                mpz_pow_ui(scale.get_mpz_t(), m.get_mpz_t(), bn.k - 1);
                return Rational(scale) * evaluate_polynomial(bn.coeffs, x);
            },
            [&](const node::LinearComb& lc) -> Rational {
                Rational acc = 0;
                for (const auto& t : lc.terms)
                    if (t.coef != 0) acc += t.coef * evaluate(t.expr, b);
                return acc;
            },
            [&](const node::Restrict& r) -> Rational {
                const auto cap = intersect(b, r.cell);
                return cap ? evaluate(r.expr, *cap) : Rational(0);
            },
            [&](const node::Regularize& r) -> Rational {
                return evaluate(r.expr, b) -
                       rpow(r.alpha, -static_cast<long>(r.k)) * evaluate(r.expr, scale_ball(r.alpha, b));
            },
            [&](const node::Graft& g) -> Rational { return evaluate_graft(g, b); },
            [&](const node::Branch& br) -> Rational { return evaluate_branch(br, b); },
        },
        e.node().v);
}

const char* to_string(BoundednessFlag f) {
    switch (f) {
        case BoundednessFlag::Bounded: return "Bounded";
        case BoundednessFlag::Unbounded: return "Unbounded";
        case BoundednessFlag::Unknown: return "Unknown";
    }
    return "?";
}

namespace {

// Bounded iff all parts Bounded; Unbounded if any part Unbounded.
BoundednessFlag all_or_any(const std::vector<BoundednessFlag>& flags) {
    bool unknown = false;
    for (auto f : flags) {
        if (f == BoundednessFlag::Unbounded) return BoundednessFlag::Unbounded;
        if (f == BoundednessFlag::Unknown) unknown = true;
    }
    return unknown ? BoundednessFlag::Unknown : BoundednessFlag::Bounded;
}

}  // namespace

BoundednessFlag boundedness_flag(const Dist& e) {
    return std::visit(
        overloaded{
            [](const node::Dirac&) { return BoundednessFlag::Bounded; },
            [](const node::Haar& h) { return h.scale == 0 ? BoundednessFlag::Bounded : BoundednessFlag::Unbounded; },
            [](const node::Mazur&) { return BoundednessFlag::Unbounded; },
            [](const node::Bernoulli&) { return BoundednessFlag::Unbounded; },
            [](const node::LinearComb& lc) {
                int unbounded = 0;
                bool unknown = false;
                for (const auto& t : lc.terms) {
                    if (t.coef == 0) continue;
                    const auto f = boundedness_flag(t.expr);
                    if (f == BoundednessFlag::Unbounded) ++unbounded;
                    if (f == BoundednessFlag::Unknown) unknown = true;
                }
                if (unknown || unbounded > 1) return BoundednessFlag::Unknown;
                return unbounded == 1 ? BoundednessFlag::Unbounded : BoundednessFlag::Bounded;
            },
            [](const node::Restrict& r) { return boundedness_flag(r.expr); },
            [](const node::Regularize&) { return BoundednessFlag::Unknown; },
            [](const node::Graft& g) { return all_or_any({boundedness_flag(g.left), boundedness_flag(g.right)}); },
            [](const node::Branch& br) {
                std::vector<BoundednessFlag> flags;
                flags.reserve(br.children.size());
                for (const auto& c : br.children) flags.push_back(boundedness_flag(c));
                return all_or_any(flags);
            },
        },
        e.node().v);
}

std::pair<Dist, Dist> remark_pair(const Dist& nu0, const Dist& nu1, const Path& path) {
    require_prime_match(path.prime(), nu0.prime(), "remark_pair");
    require_prime_match(path.prime(), nu1.prime(), "remark_pair");
    const unsigned on_path = path.digit(0);
    std::vector<Dist> children;
    for (long t = 0; t < path.prime(); ++t) children.push_back(static_cast<unsigned>(t) == on_path ? nu0 : nu1);
    return {nu0, branch(1, std::move(children))};
}

}  // namespace padist
