// Copyright The lbochner Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <initializer_list>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "lbochner/approx.hpp"
#include "lbochner/rational.hpp"

namespace lbochner {

/// Element of the f-algebra L = Q^d with pointwise operations.
///
/// The lattice order is the componentwise order; it is partial, so
/// leq(a, b) and leq(b, a) can both be false.
class LElement {
public:
    LElement() = default;
    explicit LElement(std::vector<Rational> coords);
    LElement(std::initializer_list<Rational> coords);

    static LElement zero(std::size_t d);
    static LElement unit(std::size_t d);
    /// c·unit.
    static LElement constant(std::size_t d, const Rational& c);

    std::size_t dim() const noexcept { return coords_.size(); }
    const Rational& operator[](std::size_t i) const { return coords_[i]; }
    std::span<const Rational> coords() const noexcept { return coords_; }

    bool is_zero() const;

    friend bool operator==(const LElement&, const LElement&) = default;

private:
    std::vector<Rational> coords_;
};

LElement operator+(const LElement& a, const LElement& b);
LElement operator-(const LElement& a, const LElement& b);
LElement operator*(const LElement& a, const LElement& b);
LElement operator-(const LElement& a);
LElement operator*(const Rational& c, const LElement& a);

LElement add(const LElement& a, const LElement& b);
LElement mul(const LElement& a, const LElement& b);
LElement neg(const LElement& a);
LElement abs(const LElement& a);
LElement sup(const LElement& a, const LElement& b);
LElement inf(const LElement& a, const LElement& b);
/// Componentwise sign: -1, 0 or +1 per coordinate.
LElement sgn(const LElement& a);

/// Componentwise order; incomparable pairs give false both ways.
bool leq(const LElement& a, const LElement& b);
/// Componentwise n-th power; pow_int(a, 0) is the unit.
LElement pow_int(const LElement& a, unsigned long n);
/// Componentwise reciprocal. Throws ZeroDivisor naming the first zero coordinate.
LElement recip(const LElement& a);

std::ostream& operator<<(std::ostream& os, const LElement& a);

struct ToleranceConfig {
    Rational root_tol = Rational::pow2(-40);
    Rational compare_tol = Rational::pow2(-30);

    /// Throws InvalidArgument unless 0 < root_tol < compare_tol.
    void validate() const;
};

/// A d-tuple of certified approximations; the value type of every norm.
class ApproxElement {
public:
    ApproxElement() = default;
    explicit ApproxElement(std::vector<ApproxReal> coords) : coords_(std::move(coords)) {}
    ApproxElement(const LElement& exact);

    std::size_t dim() const noexcept { return coords_.size(); }
    const ApproxReal& operator[](std::size_t i) const { return coords_[i]; }
    std::span<const ApproxReal> coords() const noexcept { return coords_; }

    bool is_exact() const;
    /// The exact element when every coordinate is exact.
    std::optional<LElement> exact() const;
    /// Midpoints; exact iff is_exact().
    LElement values() const;
    LElement lower() const;
    LElement upper() const;

    friend bool operator==(const ApproxElement&, const ApproxElement&) = default;

private:
    std::vector<ApproxReal> coords_;
};

ApproxElement operator+(const ApproxElement& a, const ApproxElement& b);
ApproxElement operator-(const ApproxElement& a, const ApproxElement& b);
ApproxElement operator*(const ApproxElement& a, const ApproxElement& b);
ApproxElement abs(const ApproxElement& a);
/// Componentwise max of enclosures.
ApproxElement sup(const ApproxElement& a, const ApproxElement& b);
ApproxElement pow_int(const ApproxElement& a, unsigned long n);
/// Componentwise x^r with certified error.
ApproxElement pow_real(const ApproxElement& a, const Rational& r, const Rational& tol);

/// Componentwise a^r for a ≥ 0 and rational r > 0, each coordinate within
/// root_tol; exact where the coordinate is a perfect power.
/// Throws NegativeCoordinate.
ApproxElement root(const LElement& a, const Rational& r, const ToleranceConfig& cfg = {});

/// Per-coordinate outcome of comparing two approximate elements in the L-order.
struct OrderComparison {
    bool holds = true;
    /// rhs - lhs per coordinate.
    std::vector<ApproxReal> slack;
    std::optional<std::size_t> first_violation;
};

/// lhs ≤ rhs per coordinate; exact where both sides are exact, otherwise up to tol.
OrderComparison compare_leq(const ApproxElement& lhs, const ApproxElement& rhs, const Rational& tol);
/// |lhs - rhs| ≤ tol per coordinate (exact equality where both are exact).
OrderComparison compare_equal(const ApproxElement& lhs, const ApproxElement& rhs, const Rational& tol);

/// One ε in the envelope E ↓ 0 together with its index threshold α₀.
struct EnvelopeEntry {
    LElement epsilon;
    std::size_t index_threshold = 1;
};

struct Violation {
    std::size_t index = 0;        ///< 1-based sequence index n
    std::size_t other_index = 0;  ///< second index m for Cauchy checks, 0 otherwise
    std::size_t coordinate = 0;   ///< 0-based coordinate of L
    std::size_t envelope_entry = 0;
};

struct ConvergenceCertificate {
    std::vector<EnvelopeEntry> envelope;
    bool passed = false;
    std::optional<Violation> first_violation;
    /// Smallest ε of the supplied family; the finite stand-in for inf E = 0.
    LElement resolution;
};

/// Checks |x_n - limit| ≤ ε for every (ε, α₀) in the envelope and every n ≥ α₀.
/// Sequence indices are 1-based: seq[0] is x_1.
/// Throws InvalidArgument on an empty sequence or an envelope whose epsilons are
/// negative or not componentwise nonincreasing.
ConvergenceCertificate check_order_convergence(std::span<const LElement> seq, const LElement& limit,
                                               std::span<const EnvelopeEntry> envelope);

/// Checks |x_n - x_m| ≤ ε for all n, m ≥ α₀.
ConvergenceCertificate check_cauchy(std::span<const LElement> seq, std::span<const EnvelopeEntry> envelope);

}  // namespace lbochner
