// Copyright The lbochner Authors
// SPDX-License-Identifier: Apache-2.0

#include "lbochner/approx.hpp"

#include <algorithm>
#include <array>
#include <ostream>

#include <mpfr.h>

#include "lbochner/errors.hpp"

namespace lbochner {

namespace {

// Above these sizes the exact bisection route is too expensive.
constexpr unsigned long kMaxBisectDenominator = 256;
constexpr unsigned long kMaxBisectBits = 1UL << 18;
constexpr mpfr_prec_t kMaxPrecision = 1L << 18;

// floor(a / b) for b > 0.
long floor_div(long a, long b) {
    long q = a / b;
    if ((a % b != 0) && (a < 0)) --q;
    return q;
}

// Snaps [lo, hi] outward onto the grid 2^grid_exp.
std::pair<Rational, Rational> snap_outward(const Rational& lo, const Rational& hi, long grid_exp) {
    const Rational g = Rational::pow2(grid_exp);
    auto snap = [&](const Rational& v, bool up) {
        const Rational scaled = v / g;
        mpz_class q;
        if (up) {
            mpz_cdiv_q(q.get_mpz_t(), scaled.raw().get_num_mpz_t(), scaled.raw().get_den_mpz_t());
        } else {
            mpz_fdiv_q(q.get_mpz_t(), scaled.raw().get_num_mpz_t(), scaled.raw().get_den_mpz_t());
        }
        return Rational(q, mpz_class(1)) * g;
    };
    return {snap(lo, false), snap(hi, true)};
}

Rational from_mpfr(const mpfr_t v) {
    mpz_class mant;
    const mpfr_exp_t e = mpfr_get_z_2exp(mant.get_mpz_t(), v);
    return Rational(mant, mpz_class(1)) * Rational::pow2(static_cast<long>(e));
}

// Exact perfect-power test: returns y with y^den == t when it exists.
std::optional<Rational> exact_root(const Rational& t, unsigned long den) {
    mpz_class rn, rd;
    const bool num_exact = mpz_root(rn.get_mpz_t(), t.raw().get_num_mpz_t(), den) != 0;
    if (!num_exact) return std::nullopt;
    const bool den_exact = mpz_root(rd.get_mpz_t(), t.raw().get_den_mpz_t(), den) != 0;
    if (!den_exact) return std::nullopt;
    return Rational(rn, rd);
}

struct Fraction {
    unsigned long num;
    unsigned long den;
};

std::optional<Fraction> small_fraction(const Rational& r) {
    if (!r.num().fits_ulong_p() || !r.den().fits_ulong_p()) return std::nullopt;
    return Fraction{r.num().get_ui(), r.den().get_ui()};
}

}  // namespace

ApproxReal::ApproxReal(Rational value, Rational error) : value_(std::move(value)), error_(std::move(error)) {
    if (error_.sign() < 0) throw InvalidArgument("negative error bound");
}

ApproxReal ApproxReal::from_bounds(const Rational& lo, const Rational& hi) {
    if (hi < lo) throw InvalidArgument("empty enclosure");
    return ApproxReal((lo + hi) / Rational(2), (hi - lo) / Rational(2));
}

std::optional<Rational> ApproxReal::exact() const {
    if (is_exact()) return value_;
    return std::nullopt;
}

std::string ApproxReal::to_string() const {
    if (is_exact()) return value_.to_string();
    return value_.to_string() + "+-" + error_.to_string();
}

ApproxReal operator+(const ApproxReal& a, const ApproxReal& b) {
    return ApproxReal(a.value_ + b.value_, a.error_ + b.error_);
}

ApproxReal operator-(const ApproxReal& a, const ApproxReal& b) {
    return ApproxReal(a.value_ - b.value_, a.error_ + b.error_);
}

ApproxReal operator-(const ApproxReal& a) { return ApproxReal(-a.value_, a.error_); }

ApproxReal operator*(const ApproxReal& a, const ApproxReal& b) {
    if (a.is_exact()) return ApproxReal(a.value_ * b.value_, abs(a.value_) * b.error_);
    if (b.is_exact()) return ApproxReal(a.value_ * b.value_, abs(b.value_) * a.error_);
    const std::array<Rational, 4> corners{a.lower() * b.lower(), a.lower() * b.upper(),
                                          a.upper() * b.lower(), a.upper() * b.upper()};
    const auto [lo, hi] = std::minmax_element(corners.begin(), corners.end());
    return ApproxReal::from_bounds(*lo, *hi);
}

ApproxReal abs(const ApproxReal& a) {
    if (a.is_exact()) return ApproxReal(abs(a.value()));
    if (a.lower().sign() >= 0) return a;
    if (a.upper().sign() <= 0) return -a;
    return ApproxReal::from_bounds(Rational(0), max(-a.lower(), a.upper()));
}

ApproxReal pow_int(const ApproxReal& x, unsigned long n) {
    if (x.is_exact()) return ApproxReal(pow(x.value(), n));
    if (x.value().sign() < 0) throw NegativeCoordinate("pow_int of a negative enclosure");
    const Rational lo = max(Rational(0), x.lower());
    return ApproxReal::from_bounds(pow(lo, n), pow(x.upper(), n));
}

namespace detail {

ApproxReal pow_bisect(const Rational& x, const Rational& r, const Rational& tol) {
    if (x.sign() < 0) throw NegativeCoordinate("power of a negative number");
    if (r.sign() < 0) throw InvalidArgument("negative exponent");
    if (tol.sign() <= 0) throw InvalidArgument("tolerance must be positive");
    if (r.is_zero()) return ApproxReal(Rational(1));
    if (x.is_zero()) return ApproxReal(Rational(0));
    const auto frac = small_fraction(r);
    const unsigned long bits = mpz_sizeinbase(x.raw().get_num_mpz_t(), 2) +
                               mpz_sizeinbase(x.raw().get_den_mpz_t(), 2);
    if (!frac || frac->den > kMaxBisectDenominator || frac->num > kMaxBisectBits / bits) {
        throw InvalidArgument("exponent too large for exact bisection");
    }
    const Rational target = pow(x, frac->num);
    if (frac->den == 1) return ApproxReal(target);
    if (auto y = exact_root(target, frac->den)) return ApproxReal(*y);

    // y^den = target with 2^k ≤ target < 2^(k+1), so y ∈ [2^f, 2^(f+1)), f = floor(k/den).
    const long den = static_cast<long>(frac->den);
    const long f = floor_div(floor_log2(target), den);
    const long grid = -floor_log2(tol);  // grid step 2^-grid ≤ tol
    // Work with integers Y where y = Y·2^-grid; Y^den·t.den vs t.num·2^(grid·den).
    const long shift = grid + f;
    mpz_class lo = 1, hi = 1;
    if (shift >= 0) {
        mpz_mul_2exp(lo.get_mpz_t(), lo.get_mpz_t(), static_cast<unsigned long>(shift));
        mpz_mul_2exp(hi.get_mpz_t(), hi.get_mpz_t(), static_cast<unsigned long>(shift + 1));
    } else {
        lo = 0;
        hi = 1;
        if (shift + 1 > 0) mpz_mul_2exp(hi.get_mpz_t(), hi.get_mpz_t(), static_cast<unsigned long>(shift + 1));
    }
    mpz_class rhs = target.raw().get_num();
    const long scale_bits = grid * den;
    if (scale_bits >= 0) {
        mpz_mul_2exp(rhs.get_mpz_t(), rhs.get_mpz_t(), static_cast<unsigned long>(scale_bits));
    }
    mpz_class t_den = target.raw().get_den();
    if (scale_bits < 0) {
        mpz_mul_2exp(t_den.get_mpz_t(), t_den.get_mpz_t(), static_cast<unsigned long>(-scale_bits));
    }
    mpz_class mid, lhs;
    while (hi - lo > 1) {
        mid = (lo + hi) / 2;
        mpz_pow_ui(lhs.get_mpz_t(), mid.get_mpz_t(), frac->den);
        lhs *= t_den;
        if (lhs <= rhs) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    const Rational step = Rational::pow2(-grid);
    return ApproxReal::from_bounds(Rational(lo, mpz_class(1)) * step, Rational(hi, mpz_class(1)) * step);
}

ApproxReal pow_mpfr(const Rational& x, const Rational& r, const Rational& tol) {
    if (x.sign() < 0) throw NegativeCoordinate("power of a negative number");
    if (r.sign() < 0) throw InvalidArgument("negative exponent");
    if (tol.sign() <= 0) throw InvalidArgument("tolerance must be positive");
    if (r.is_zero()) return ApproxReal(Rational(1));
    if (x.is_zero()) return ApproxReal(Rational(0));
    if (x == Rational(1)) return ApproxReal(Rational(1));

    const long grid = floor_log2(tol) - 2;
    for (mpfr_prec_t prec = 128; prec <= kMaxPrecision; prec *= 2) {
        mpfr_t xl, xh, rl, rh, lo, hi;
        mpfr_inits2(prec, xl, xh, rl, rh, lo, hi, static_cast<mpfr_ptr>(nullptr));
        mpfr_set_q(xl, x.raw().get_mpq_t(), MPFR_RNDD);
        mpfr_set_q(xh, x.raw().get_mpq_t(), MPFR_RNDU);
        mpfr_set_q(rl, r.raw().get_mpq_t(), MPFR_RNDD);
        mpfr_set_q(rh, r.raw().get_mpq_t(), MPFR_RNDU);
        // x^r is increasing in x; in r it increases iff x ≥ 1.
        mpfr_pow(lo, xl, mpfr_cmp_ui(xl, 1) >= 0 ? rl : rh, MPFR_RNDD);
        mpfr_pow(hi, xh, mpfr_cmp_ui(xh, 1) >= 0 ? rh : rl, MPFR_RNDU);
        const Rational l = max(Rational(0), from_mpfr(lo));
        const Rational h = from_mpfr(hi);
        mpfr_clears(xl, xh, rl, rh, lo, hi, static_cast<mpfr_ptr>(nullptr));
        if (h - l <= tol) {
            auto [sl, sh] = snap_outward(l, h, grid);
            return ApproxReal::from_bounds(max(Rational(0), sl), sh);
        }
    }
    throw InvalidArgument("power enclosure did not reach the requested tolerance");
}

}  // namespace detail

ApproxReal pow_real(const Rational& x, const Rational& r, const Rational& tol) {
    if (x.sign() < 0) throw NegativeCoordinate("power of a negative number: " + x.to_string());
    if (r.sign() < 0) throw InvalidArgument("negative exponent");
    if (r.is_zero()) return ApproxReal(Rational(1));
    if (x.is_zero() || x == Rational(1)) return ApproxReal(x);
    try {
        return detail::pow_bisect(x, r, tol);
    } catch (const InvalidArgument&) {
        return detail::pow_mpfr(x, r, tol);
    }
}

ApproxReal pow_real(const ApproxReal& x, const Rational& r, const Rational& tol) {
    if (x.is_exact()) return pow_real(x.value(), r, tol);
    if (x.upper().sign() < 0) throw NegativeCoordinate("power of a negative enclosure");
    const Rational lo = max(Rational(0), x.lower());
    return ApproxReal::from_bounds(pow_real(lo, r, tol).lower(), pow_real(x.upper(), r, tol).upper());
}

bool leq_within(const ApproxReal& a, const ApproxReal& b, const Rational& tol) {
    if (a.is_exact() && b.is_exact()) return a.value() <= b.value();
    return a.upper() <= b.lower() + tol;
}

bool equal_within(const ApproxReal& a, const ApproxReal& b, const Rational& tol) {
    if (a.is_exact() && b.is_exact()) return a.value() == b.value();
    return max(a.upper() - b.lower(), b.upper() - a.lower()) <= tol;
}

std::ostream& operator<<(std::ostream& os, const ApproxReal& a) { return os << a.to_string(); }

}  // namespace lbochner
