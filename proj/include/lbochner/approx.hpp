// Copyright The lbochner Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <iosfwd>
#include <optional>
#include <string>

#include "lbochner/rational.hpp"

namespace lbochner {

/// Real number known up to a certified absolute error:
/// the true value lies in [value - error, value + error].
///
/// An error of zero means the value is exact. All endpoints are rationals,
/// so no binary floating point is involved anywhere.
class ApproxReal {
public:
    ApproxReal() = default;
    ApproxReal(Rational exact) : value_(std::move(exact)) {}
    ApproxReal(Rational value, Rational error);

    /// Smallest enclosure with the given endpoints.
    static ApproxReal from_bounds(const Rational& lo, const Rational& hi);

    const Rational& value() const noexcept { return value_; }
    const Rational& error() const noexcept { return error_; }
    Rational lower() const { return value_ - error_; }
    Rational upper() const { return value_ + error_; }
    bool is_exact() const noexcept { return error_.is_zero(); }
    std::optional<Rational> exact() const;

    /// "num/den" when exact, otherwise "num/den+-num/den".
    std::string to_string() const;

    friend ApproxReal operator+(const ApproxReal& a, const ApproxReal& b);
    friend ApproxReal operator-(const ApproxReal& a, const ApproxReal& b);
    friend ApproxReal operator*(const ApproxReal& a, const ApproxReal& b);
    friend ApproxReal operator-(const ApproxReal& a);
    friend bool operator==(const ApproxReal&, const ApproxReal&) = default;

private:
    Rational value_;
    Rational error_;
};

ApproxReal abs(const ApproxReal& a);
/// Interval power x^n, n ≥ 0; requires x ≥ 0 on its whole enclosure.
ApproxReal pow_int(const ApproxReal& x, unsigned long n);

/// Certified enclosure of x^r for x ≥ 0 and r ≥ 0, with width ≤ 2·tol.
///
/// Exact whenever x^r is rational and the exponent is small enough to test
/// it (perfect powers). Small exponents go through bisection on a dyadic
/// grid with exact integer comparisons; large exponent numerators or
/// denominators go through MPFR with directed rounding.
ApproxReal pow_real(const Rational& x, const Rational& r, const Rational& tol);
ApproxReal pow_real(const ApproxReal& x, const Rational& r, const Rational& tol);

namespace detail {
/// Bisection route only; throws InvalidArgument if the exponent is too large.
ApproxReal pow_bisect(const Rational& x, const Rational& r, const Rational& tol);
/// MPFR route only.
ApproxReal pow_mpfr(const Rational& x, const Rational& r, const Rational& tol);
}  // namespace detail

/// a ≤ b + tol, certified: exact comparison when both sides are exact,
/// otherwise upper(a) ≤ lower(b) + tol.
bool leq_within(const ApproxReal& a, const ApproxReal& b, const Rational& tol);
/// |a - b| ≤ tol, certified (exact equality when both are exact).
bool equal_within(const ApproxReal& a, const ApproxReal& b, const Rational& tol);

std::ostream& operator<<(std::ostream& os, const ApproxReal& a);

}  // namespace lbochner
