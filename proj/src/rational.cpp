#include "padist/rational.hpp"

#include "padist/errors.hpp"

#include <cctype>

namespace padist {

namespace {

bool is_signed_digits(std::string_view s, bool allow_sign) {
    if (allow_sign && !s.empty() && (s.front() == '-' || s.front() == '+')) s.remove_prefix(1);
    if (s.empty()) return false;
    for (char c : s)
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    return true;
}

std::string strip_plus(std::string_view s) {
    if (!s.empty() && s.front() == '+') s.remove_prefix(1);
    return std::string(s);
}

}  // namespace

Integer parse_integer(std::string_view text) {
    if (!is_signed_digits(text, true))
        throw InputError("malformed integer '" + std::string(text) + "'");
    return Integer(strip_plus(text), 10);
}

Rational parse_rational(std::string_view text) {
    const auto slash = text.find('/');
    if (slash == std::string_view::npos) return Rational(parse_integer(text));

    const auto num = text.substr(0, slash);
    const auto den = text.substr(slash + 1);
    if (!is_signed_digits(num, true) || !is_signed_digits(den, false))
        throw InputError("malformed rational '" + std::string(text) + "'");
    Integer d(std::string(den), 10);
    if (d == 0) throw InputError("zero denominator in '" + std::string(text) + "'");
    return fraction(Integer(strip_plus(num), 10), d);
}

Rational fraction(const Integer& num, const Integer& den) {
    if (den == 0) throw InputError("zero denominator");
    Rational r(num, den);
    r.canonicalize();
    return r;
}

std::string to_string(const Integer& x) { return x.get_str(10); }

std::string to_string(const Rational& x) {
    if (x.get_den() == 1) return x.get_num().get_str(10);
    return x.get_num().get_str(10) + "/" + x.get_den().get_str(10);
}

Integer ipow(long base, unsigned long exp) {
    Integer b(base), r;
    mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), exp);
    return r;
}

Rational rpow(const Rational& base, long exp) {
    if (exp < 0 && base == 0) throw InputError("negative power of zero");
    const unsigned long e = exp < 0 ? static_cast<unsigned long>(-exp) : static_cast<unsigned long>(exp);
    Integer num, den;
    mpz_pow_ui(num.get_mpz_t(), base.get_num_mpz_t(), e);
    mpz_pow_ui(den.get_mpz_t(), base.get_den_mpz_t(), e);
    return exp < 0 ? fraction(den, num) : fraction(num, den);
}

}  // namespace padist
