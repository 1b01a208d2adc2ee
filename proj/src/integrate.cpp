#include "padist/integrate.hpp"

#include "padist/bernoulli.hpp"
#include "padist/errors.hpp"

#include <cctype>
#include <string>

namespace padist {

TestFn TestFn::polynomial(std::vector<Rational> coeffs) {
    while (!coeffs.empty() && coeffs.back() == 0) coeffs.pop_back();
    return TestFn(Polynomial{std::move(coeffs)});
}

TestFn TestFn::step(long p, unsigned depth, std::vector<Rational> values) {
    require_prime(p);
    if (Integer(static_cast<unsigned long>(values.size())) != ipow(p, depth))
        throw InputError("step function needs p^d = " + to_string(ipow(p, depth)) + " values, got " +
                         std::to_string(values.size()));
    return TestFn(Step{p, depth, std::move(values)});
}

Rational TestFn::operator()(const Integer& x) const {
    if (const auto* poly = std::get_if<Polynomial>(&kind_)) return evaluate_polynomial(poly->coeffs, Rational(x));
    const auto& st = std::get<Step>(kind_);
    Integer r;
    const Integer m = ipow(st.prime, st.depth);
    mpz_fdiv_r(r.get_mpz_t(), x.get_mpz_t(), m.get_mpz_t());
    return st.values[r.get_ui()];
}

std::optional<unsigned> TestFn::locally_constant_depth() const {
    if (const auto* poly = std::get_if<Polynomial>(&kind_))
        return poly->coeffs.size() <= 1 ? std::optional<unsigned>(0) : std::nullopt;
    return std::get<Step>(kind_).depth;
}

TestFn parse_polynomial(std::string_view text) {
    std::string s;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
    if (s.empty()) throw InputError("empty polynomial");

    std::vector<Rational> coeffs;
    std::size_t pos = 0;
    while (pos < s.size()) {
        Rational sign = 1;
        if (s[pos] == '+' || s[pos] == '-') {
            if (s[pos] == '-') sign = -1;
            ++pos;
        } else if (pos != 0) {
            throw InputError("malformed polynomial '" + std::string(text) + "'");
        }
        std::size_t end = pos;
        while (end < s.size() && s[end] != '+' && s[end] != '-') ++end;
        const std::string term = s.substr(pos, end - pos);
        pos = end;
        if (term.empty()) throw InputError("malformed polynomial '" + std::string(text) + "'");

        Rational coef = 1;
        unsigned long degree = 0;
        const auto x = term.find('x');
        if (x == std::string::npos) {
            coef = parse_rational(term);
        } else {
            if (x > 0) {
                if (term[x - 1] != '*') throw InputError("expected '*' before x in '" + term + "'");
                coef = parse_rational(term.substr(0, x - 1));
            }
            const std::string rest = term.substr(x + 1);
            if (rest.empty()) {
                degree = 1;
            } else if (rest[0] == '^' && rest.size() > 1) {
                const Integer d = parse_integer(rest.substr(1));
                if (d < 0 || d > 4096) throw InputError("bad exponent in '" + term + "'");
                degree = d.get_ui();
            } else {
                throw InputError("malformed term '" + term + "'");
            }
        }
        if (coeffs.size() <= degree) coeffs.resize(degree + 1, Rational(0));
        coeffs[degree] += sign * coef;
    }
    return TestFn::polynomial(std::move(coeffs));
}

Rational riemann_sum(const Dist& e, const TestFn& f, unsigned depth, const ScanOptions& opts) {
    const long p = e.prime();
    const std::uint64_t count = level_size(p, depth, opts);
    const auto terms = parallel_map<Rational>(count, opts.threads, [&](std::uint64_t a) -> Rational {
        const Integer rep(static_cast<unsigned long>(a));
        const Rational fa = f(rep);
        return fa == 0 ? Rational(0) : Rational(fa * evaluate(e, Ball(p, depth, rep)));
    });
    Rational sum = 0;
    for (const auto& t : terms) sum += t;
    return sum;
}

const char* to_string(ConvergenceVerdict v) {
    switch (v) {
        case ConvergenceVerdict::ConvergedExactly: return "converged-exactly";
        case ConvergenceVerdict::NormDecreasing: return "norm-decreasing";
        case ConvergenceVerdict::Diverging: return "diverging";
        case ConvergenceVerdict::Inconclusive: return "inconclusive";
    }
    return "?";
}

ConvergenceVerdict classify(const std::vector<Rational>& norms, std::optional<unsigned> step_depth) {
    const std::size_t n = norms.size();  // norms[i] = |S_(i+2) - S_(i+1)|
    if (step_depth && n > 0 && *step_depth <= n) {
        // Differences S_(m+1) - S_m for m >= max(d, 1) live at indices >= max(d, 1) - 1.
        const std::size_t from = std::max<unsigned>(*step_depth, 1) - 1;
        bool zero_tail = true;
        for (std::size_t i = from; i < n; ++i) zero_tail = zero_tail && norms[i] == 0;
        if (zero_tail) return ConvergenceVerdict::ConvergedExactly;
    }
    if (n >= 2) {
        bool non_increasing = true;
        for (std::size_t i = 1; i < n; ++i) non_increasing = non_increasing && norms[i] <= norms[i - 1];
        if (non_increasing && norms.back() < norms.front()) return ConvergenceVerdict::NormDecreasing;
    }
    if (n >= 3 && norms[n - 3] < norms[n - 2] && norms[n - 2] < norms[n - 1]) return ConvergenceVerdict::Diverging;
    return ConvergenceVerdict::Inconclusive;
}

IntegrationReport integrate(const Dist& e, const TestFn& f, unsigned max_depth, const ScanOptions& opts) {
    if (max_depth < 2) throw InputError("integrate: max_depth must be >= 2");
    if (const auto* st = std::get_if<TestFn::Step>(&f.kind()); st && st->prime != e.prime())
        throw InputError("integrate: step function prime does not match distribution");
    level_size(e.prime(), max_depth, opts);

    IntegrationReport report;
    for (unsigned n = 1; n <= max_depth; ++n) report.partial_sums.push_back(riemann_sum(e, f, n, opts));
    for (std::size_t i = 1; i < report.partial_sums.size(); ++i)
        report.difference_norms.push_back(norm(report.partial_sums[i] - report.partial_sums[i - 1], e.prime()));
    report.verdict = classify(report.difference_norms, f.locally_constant_depth());
    return report;
}

}  // namespace padist
