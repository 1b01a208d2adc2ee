#include "padist/bernoulli.hpp"

namespace padist {

namespace {

Integer binomial(unsigned long n, unsigned long k) {
    Integer r;
    mpz_bin_uiui(r.get_mpz_t(), n, k);
    return r;
}

}  // namespace

std::vector<Rational> bernoulli_numbers(unsigned k) {
    std::vector<Rational> b(k + 1);
    b[0] = 1;
    for (unsigned m = 1; m <= k; ++m) {
        Rational acc = 0;
        for (unsigned j = 0; j < m; ++j) acc += Rational(binomial(m + 1, j)) * b[j];
        b[m] = -acc / Rational(m + 1);
    }
    return b;
}

std::vector<Rational> bernoulli_polynomial_coefficients(unsigned k) {
    const auto b = bernoulli_numbers(k);
    std::vector<Rational> c(k + 1);
    for (unsigned j = 0; j <= k; ++j) c[k - j] = Rational(binomial(k, j)) * b[j];
    return c;
}

Rational evaluate_polynomial(const std::vector<Rational>& coeffs, const Rational& x) {
    Rational acc = 0;
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * x + *it;
    return acc;
}

Rational bernoulli_polynomial(unsigned k, const Rational& x) {
    return evaluate_polynomial(bernoulli_polynomial_coefficients(k), x);
}

}  // namespace padist
