#pragma once

#include "padist/rational.hpp"

#include <vector>

namespace padist {

/// B_0..B_k from sum_{j<=m} C(m+1, j) B_j = 0, B_0 = 1 (so B_1 = -1/2).
std::vector<Rational> bernoulli_numbers(unsigned k);

/// Coefficients c_0..c_k of B_k(x) = sum_j C(k, j) B_j x^(k-j), low degree first.
std::vector<Rational> bernoulli_polynomial_coefficients(unsigned k);

Rational bernoulli_polynomial(unsigned k, const Rational& x);

/// Horner evaluation, coefficients low degree first.
Rational evaluate_polynomial(const std::vector<Rational>& coeffs, const Rational& x);

}  // namespace padist
