// Copyright The lbochner Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace lbochner {

/// Exact rational number, always reduced with a positive denominator.
///
/// Thin value wrapper over GMP's mpq_class. The wrapper exists so that
/// arithmetic never leaks gmpxx expression templates into `auto` variables
/// and so that the text form is always "num/den".
class Rational {
public:
    Rational() = default;
    Rational(long value) : q_(value) {}
    Rational(int value) : q_(value) {}
    Rational(long num, long den);
    explicit Rational(mpq_class q);
    Rational(const mpz_class& num, const mpz_class& den);

    /// Parses "num/den", "num" or "2^e" (e may be negative).
    static Rational parse(std::string_view text);
    /// 2^e for any integer e.
    static Rational pow2(long exponent);

    const mpq_class& raw() const noexcept { return q_; }
    mpz_class num() const { return q_.get_num(); }
    mpz_class den() const { return q_.get_den(); }

    bool is_zero() const noexcept { return sgn(q_) == 0; }
    bool is_integer() const { return q_.get_den() == 1; }
    int sign() const noexcept { return sgn(q_); }

    /// "num/den" form, e.g. "3/2", "-1/4", "5/1".
    std::string to_string() const;

    Rational& operator+=(const Rational& o) { q_ += o.q_; return *this; }
    Rational& operator-=(const Rational& o) { q_ -= o.q_; return *this; }
    Rational& operator*=(const Rational& o) { q_ *= o.q_; return *this; }
    Rational& operator/=(const Rational& o);

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
    friend Rational operator-(const Rational& a) { return Rational(mpq_class(-a.q_)); }

    friend bool operator==(const Rational& a, const Rational& b) { return cmp(a.q_, b.q_) == 0; }
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
        const int c = cmp(a.q_, b.q_);
        return c < 0 ? std::strong_ordering::less
                     : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
    }

private:
    mpq_class q_;
};

Rational abs(const Rational& a);
Rational min(const Rational& a, const Rational& b);
Rational max(const Rational& a, const Rational& b);
/// a^n for n ≥ 0 (a^0 = 1).
Rational pow(const Rational& a, unsigned long n);
/// Largest k with 2^k ≤ |a| (a ≠ 0); used to size brackets.
long floor_log2(const Rational& a);

std::ostream& operator<<(std::ostream& os, const Rational& r);

}  // namespace lbochner
