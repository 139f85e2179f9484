// Copyright The lbochner Authors
// SPDX-License-Identifier: Apache-2.0

#include "lbochner/rational.hpp"

#include <cctype>
#include <ostream>

#include "lbochner/errors.hpp"

namespace lbochner {

namespace {

bool is_integer_literal(std::string_view s) {
    if (s.empty()) return false;
    std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (i == s.size()) return false;
    for (; i < s.size(); ++i) {
        if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
    }
    return true;
}

mpz_class parse_integer(std::string_view s, std::string_view whole) {
    if (!is_integer_literal(s)) {
        throw ParseError("malformed rational '" + std::string(whole) + "'");
    }
    std::string digits(s[0] == '+' ? s.substr(1) : s);
    return mpz_class(digits, 10);
}

}  // namespace

Rational::Rational(long num, long den) : Rational(mpz_class(num), mpz_class(den)) {}

Rational::Rational(mpq_class q) : q_(std::move(q)) {
    if (q_.get_den() == 0) throw ZeroDivisor(0);
    q_.canonicalize();
}

Rational::Rational(const mpz_class& num, const mpz_class& den) {
    if (den == 0) throw ZeroDivisor(0);
    q_ = mpq_class(num, den);
    q_.canonicalize();
}

Rational Rational::parse(std::string_view text) {
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
    if (text.rfind("2^", 0) == 0) {
        const mpz_class e = parse_integer(text.substr(2), text);
        if (!e.fits_slong_p()) throw ParseError("exponent out of range in '" + std::string(text) + "'");
        return pow2(e.get_si());
    }
    const auto slash = text.find('/');
    if (slash == std::string_view::npos) {
        return Rational(parse_integer(text, text), mpz_class(1));
    }
    const mpz_class num = parse_integer(text.substr(0, slash), text);
    const mpz_class den = parse_integer(text.substr(slash + 1), text);
    if (den == 0) throw ParseError("zero denominator in '" + std::string(text) + "'");
    return Rational(num, den);
}

Rational Rational::pow2(long exponent) {
    mpz_class p = 1;
    const unsigned long e = static_cast<unsigned long>(exponent < 0 ? -exponent : exponent);
    mpz_mul_2exp(p.get_mpz_t(), p.get_mpz_t(), e);
    return exponent >= 0 ? Rational(p, mpz_class(1)) : Rational(mpz_class(1), p);
}

std::string Rational::to_string() const {
    return q_.get_num().get_str() + "/" + q_.get_den().get_str();
}

Rational& Rational::operator/=(const Rational& o) {
    if (o.is_zero()) throw ZeroDivisor(0);
    q_ /= o.q_;
    return *this;
}

Rational abs(const Rational& a) { return a.sign() < 0 ? -a : a; }
Rational min(const Rational& a, const Rational& b) { return b < a ? b : a; }
Rational max(const Rational& a, const Rational& b) { return a < b ? b : a; }

Rational pow(const Rational& a, unsigned long n) {
    mpz_class num, den;
    mpz_pow_ui(num.get_mpz_t(), a.raw().get_num_mpz_t(), n);
    mpz_pow_ui(den.get_mpz_t(), a.raw().get_den_mpz_t(), n);
    return Rational(num, den);
}

long floor_log2(const Rational& a) {
    // bits(num) - bits(den) is within one of log2|a|; adjust by comparing.
    const Rational m = abs(a);
    long k = static_cast<long>(mpz_sizeinbase(m.raw().get_num_mpz_t(), 2)) -
             static_cast<long>(mpz_sizeinbase(m.raw().get_den_mpz_t(), 2));
    while (Rational::pow2(k) > m) --k;
    while (Rational::pow2(k + 1) <= m) ++k;
    return k;
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.to_string(); }

}  // namespace lbochner
