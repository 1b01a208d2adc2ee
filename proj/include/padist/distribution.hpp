#pragma once

#include "padist/padic.hpp"
#include "padist/rational.hpp"

#include <memory>
#include <utility>
#include <variant>
#include <vector>

namespace padist {

struct DistNode;

/// An immutable distribution expression over Z_p. Copies share the tree.
/// Every node carries the prime, and combinators reject mixed primes.
class Dist {
public:
    long prime() const noexcept { return prime_; }
    const DistNode& node() const noexcept { return *node_; }

    /// Same tree object (cheap identity, not semantic equality).
    bool same_tree(const Dist& other) const noexcept { return node_ == other.node_; }

private:
    friend Dist make_dist(long prime, DistNode node);
    Dist(long prime, std::shared_ptr<const DistNode> node) : prime_(prime), node_(std::move(node)) {}

    long prime_;
    std::shared_ptr<const DistNode> node_;
};

namespace node {

struct Dirac {
    PAdicPoint point;
};
struct Haar {
    Rational scale;
};
struct Mazur {};
struct Bernoulli {
    unsigned k;
    std::vector<Rational> coeffs;  // B_k(x), low degree first
};
struct Term {
    Rational coef;
    Dist expr;
};
struct LinearComb {
    std::vector<Term> terms;
};
struct Restrict {
    Ball cell;
    Dist expr;
};
struct Regularize {
    unsigned k;
    Rational alpha;
    Dist expr;
};
struct Graft {
    Path path;
    Dist left;
    Dist right;
};
struct Branch {
    unsigned k;
    std::vector<Dist> children;  // p^k entries, keyed by the level-k digit string read as an integer
};

}  // namespace node

struct DistNode {
    std::variant<node::Dirac, node::Haar, node::Mazur, node::Bernoulli, node::LinearComb, node::Restrict,
                 node::Regularize, node::Graft, node::Branch>
        v;
};

Dist make_dist(long prime, DistNode node);

// Base families.
Dist dirac(const PAdicPoint& t);
Dist haar(long p, Rational scale = 1);
Dist mazur(long p);
Dist bernoulli(long p, unsigned k);

// Combinators. All throw InputError on a prime mismatch or a broken invariant.
Dist linear_comb(long p, std::vector<node::Term> terms);
Dist restrict_to(const Ball& cell, Dist expr);
Dist regularize(unsigned k, Rational alpha, Dist expr);

/// Equal to `left` strictly left of the path (and on it), `right` strictly right.
Dist graft(const Path& path, Dist left, Dist right);

/// Equal to children[t] on every ball of depth >= k whose first k digits
/// spell t; shallower balls are the sums of their children.
Dist branch(unsigned k, std::vector<Dist> children);

Dist operator+(const Dist& a, const Dist& b);
Dist operator-(const Dist& a, const Dist& b);
Dist operator*(const Rational& c, const Dist& e);

/// mu(B), exactly.
Rational evaluate(const Dist& e, const Ball& b);

enum class BoundednessFlag { Bounded, Unbounded, Unknown };
const char* to_string(BoundednessFlag f);

/// Structural boundedness: base-family facts propagated through combinators.
BoundednessFlag boundedness_flag(const Dist& e);

/// (mu_1, mu_2) = (nu_0, branch(1, t -> t == i_0 ? nu_0 : nu_1)).
/// No guarantee that the pair satisfies the graft precondition.
std::pair<Dist, Dist> remark_pair(const Dist& nu0, const Dist& nu1, const Path& path);

}  // namespace padist
