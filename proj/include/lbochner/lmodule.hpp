// Copyright The lbochner Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "lbochner/falgebra.hpp"

namespace lbochner {

/// L-valued norms on the free module L^k, all computed coordinatewise in L.
enum class NormKind {
    Sup,  ///< sup_i |x_i|
    One,  ///< Σ_i |x_i|
    Two,  ///< (Σ_i x_i²)^{1/2}
};

/// SUP ↔ ONE, TWO ↔ TWO.
NormKind dual_kind(NormKind kind);
std::string_view to_string(NormKind kind);
/// "sup" | "one" | "two"; throws ParseError otherwise.
NormKind parse_norm_kind(std::string_view text);

/// X = L^k with d coordinates in L and a chosen norm.
struct ModuleSpace {
    std::size_t rank = 1;
    std::size_t d = 1;
    NormKind kind = NormKind::Sup;

    /// The dual module X* with its operator norm.
    ModuleSpace dual() const { return {rank, d, dual_kind(kind)}; }
    friend bool operator==(const ModuleSpace&, const ModuleSpace&) = default;
};

class ModuleVector {
public:
    ModuleVector() = default;
    /// Throws InvalidArgument if empty or if entries disagree on d.
    explicit ModuleVector(std::vector<LElement> entries);
    static ModuleVector zero(std::size_t rank, std::size_t d);
    /// x·e_i: the i-th basis vector scaled by x.
    static ModuleVector basis(std::size_t rank, std::size_t i, const LElement& x);

    std::size_t rank() const noexcept { return entries_.size(); }
    std::size_t d() const { return entries_.front().dim(); }
    const LElement& operator[](std::size_t i) const { return entries_[i]; }
    std::span<const LElement> entries() const noexcept { return entries_; }
    bool is_zero() const;
    bool fits(const ModuleSpace& space) const { return rank() == space.rank && d() == space.d; }

    friend bool operator==(const ModuleVector&, const ModuleVector&) = default;

private:
    std::vector<LElement> entries_;
};

ModuleVector operator+(const ModuleVector& a, const ModuleVector& b);
ModuleVector operator-(const ModuleVector& a, const ModuleVector& b);
ModuleVector operator-(const ModuleVector& a);
/// L-scalar multiplication λx.
ModuleVector operator*(const LElement& lambda, const ModuleVector& x);
ModuleVector operator*(const Rational& c, const ModuleVector& x);

/// An element of X*, acting by φ(x) = Σ_i coeffs_i·x_i.
class Functional {
public:
    Functional() = default;
    explicit Functional(std::vector<LElement> coeffs) : coeffs_(std::move(coeffs)) {}
    explicit Functional(const ModuleVector& coeffs);
    static Functional zero(std::size_t rank, std::size_t d);

    std::size_t rank() const noexcept { return coeffs_.size(); }
    std::size_t d() const { return coeffs_.front().dim(); }
    std::span<const LElement> coeffs() const noexcept { return coeffs_; }
    const LElement& operator[](std::size_t i) const { return coeffs_[i]; }
    ModuleVector as_vector() const { return ModuleVector(coeffs_); }
    bool is_zero() const;

    friend bool operator==(const Functional&, const Functional&) = default;

private:
    std::vector<LElement> coeffs_;
};

Functional operator+(const Functional& a, const Functional& b);
Functional operator*(const LElement& lambda, const Functional& phi);

/// φ(x) = Σ coeffs_i·x_i, exact. Throws DimensionMismatch on shape mismatch.
LElement apply(const Functional& phi, const ModuleVector& x);

/// ‖x‖ per the norm kind; exact for SUP and ONE, certified for TWO.
ApproxElement norm(NormKind kind, std::span<const LElement> entries, const ToleranceConfig& cfg = {});
ApproxElement norm(const ModuleSpace& space, const ModuleVector& x, const ToleranceConfig& cfg = {});

/// ‖x‖^p for rational p > 0, exact whenever the value is rational and
/// detectable (integer p with SUP/ONE, even integer p with TWO, perfect powers).
ApproxElement norm_pow(NormKind kind, std::span<const LElement> entries, const Rational& p,
                       const ToleranceConfig& cfg = {});

/// Exact test of coordinate `coord` of ‖x‖ ≥ bound (uses squares for TWO).
bool norm_at_least(NormKind kind, std::span<const LElement> entries, std::size_t coord, const Rational& bound);
/// Exact test of ‖x‖ ≤ bound in the L-order.
bool norm_at_most(NormKind kind, std::span<const LElement> entries, const LElement& bound);

/// Least c ∈ L+ with |φ(x)| ≤ c‖x‖ for the primal norm kind, coordinatewise.
ApproxElement dual_norm(const Functional& phi, NormKind primal, const ToleranceConfig& cfg = {});

/// A vector in the primal unit ball at which φ attains (SUP, ONE) or nearly
/// attains (TWO, up to rounding of the square root) its dual norm.
ModuleVector alignment_vector(const Functional& phi, NormKind primal, const ToleranceConfig& cfg = {});

/// Max of |φ(x)| over seeded unit-ball samples (each sample scaled per
/// coordinate to norm ≤ 1), plus the alignment vector when requested.
LElement operator_norm_sample_lower_bound(const Functional& phi, NormKind primal, std::size_t trials,
                                          std::uint64_t seed, bool include_alignment = true,
                                          const ToleranceConfig& cfg = {});

struct NormSample {
    LElement lambda;
    ModuleVector x;
    ModuleVector y;
};

struct AxiomWitness {
    std::size_t sample = 0;
    std::optional<std::size_t> coordinate;
    std::string detail;
};

struct AxiomOutcome {
    bool passed = true;
    std::size_t checked = 0;
    std::optional<AxiomWitness> witness;
};

struct NormAxiomReport {
    AxiomOutcome definiteness;   ///< ‖x‖ = 0 ⇔ x = 0
    AxiomOutcome homogeneity;    ///< ‖λx‖ = |λ|‖x‖
    AxiomOutcome triangle;       ///< ‖x+y‖ ≤ ‖x‖ + ‖y‖
    bool passed() const { return definiteness.passed && homogeneity.passed && triangle.passed; }
};

/// Checks the three L-norm axioms on every sample. SUP and ONE are checked
/// exactly; TWO up to cfg.compare_tol. Failures become report entries.
NormAxiomReport check_norm_axioms(const ModuleSpace& space, std::span<const NormSample> samples,
                                  const ToleranceConfig& cfg = {});

}  // namespace lbochner
