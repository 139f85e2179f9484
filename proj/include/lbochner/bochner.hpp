// Copyright The lbochner Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "lbochner/lmodule.hpp"
#include "lbochner/measure.hpp"

namespace lbochner {

/// Exponent p ∈ [1, ∞] of L^p(μ, X).
class LpExponent {
public:
    /// Throws InvalidArgument unless p ≥ 1.
    explicit LpExponent(Rational p);
    static LpExponent infinity() { return LpExponent(); }
    /// "inf", "∞" or a rational such as "3/2".
    static LpExponent parse(std::string_view text);

    bool is_infinite() const noexcept { return !p_.has_value(); }
    /// Throws InvalidArgument for p = ∞.
    const Rational& value() const;
    /// 1/p, with 1/∞ = 0.
    Rational reciprocal() const;
    /// q with 1/p + 1/q = 1.
    LpExponent conjugate() const;
    std::string to_string() const;

    friend bool operator==(const LpExponent&, const LpExponent&) = default;

private:
    LpExponent() = default;
    std::optional<Rational> p_;
};

bool are_conjugate(const LpExponent& p, const LpExponent& q);

/// A map atom → ModuleVector. On a finite atomic space every such map is
/// L-simple with the atoms as its sets.
class LFunction {
public:
    /// Throws DimensionMismatch unless there is one fitting value per atom.
    LFunction(MeasureSpace space, ModuleSpace codomain, std::vector<ModuleVector> values);
    static LFunction zero(const MeasureSpace& space, const ModuleSpace& codomain);
    /// x·I_F.
    static LFunction indicator(const MeasurableSet& set, const ModuleSpace& codomain, const ModuleVector& x);

    const MeasureSpace& space() const noexcept { return space_; }
    const ModuleSpace& codomain() const noexcept { return codomain_; }
    const ModuleVector& operator[](std::size_t atom) const { return values_.at(atom); }
    std::span<const ModuleVector> values() const noexcept { return values_; }
    bool is_zero() const;

    friend bool operator==(const LFunction& a, const LFunction& b) {
        return a.space_ == b.space_ && a.codomain_ == b.codomain_ && a.values_ == b.values_;
    }

private:
    MeasureSpace space_;
    ModuleSpace codomain_;
    std::vector<ModuleVector> values_;
};

LFunction operator+(const LFunction& a, const LFunction& b);
LFunction operator-(const LFunction& a, const LFunction& b);
LFunction operator*(const LElement& lambda, const LFunction& f);
LFunction operator*(const Rational& c, const LFunction& f);
/// f·I_E.
LFunction restrict_to(const LFunction& f, const MeasurableSet& set);

/// Σ_t f(t)·μ({t}), exact.
ModuleVector integrate(const LFunction& f);
/// ∫_E f dμ. Throws SpaceMismatch.
ModuleVector integrate_over(const LFunction& f, const MeasurableSet& set);

/// ∫_S ‖f(t)‖^p dμ(t) for finite p.
ApproxElement lp_integral(const LFunction& f, const Rational& p, const ToleranceConfig& cfg = {});
/// ‖f‖_p; for p = ∞ the sup of ‖f(t)‖ over atoms of positive mass.
ApproxElement lp_norm(const LFunction& f, const LpExponent& p, const ToleranceConfig& cfg = {});

struct SupRepresentationReport {
    std::size_t subsets_checked = 0;
    bool monotone = true;
    bool max_at_full = true;
    /// Number of subsets E with ∫_E ‖f‖^p = ∫_S ‖f‖^p.
    std::size_t attaining_subsets = 0;
    ApproxElement full_integral;
    /// Offending pair (E ⊂ E') or set, as atom-index bitmasks.
    std::optional<std::pair<std::uint64_t, std::uint64_t>> witness;
    bool passed() const { return monotone && max_at_full; }
};

/// Enumerates every E ⊆ S and checks E ↦ ∫_E ‖f‖^p dμ is monotone and maximal
/// at E = S. Throws TooManyAtoms above max_atoms, InvalidArgument for p = ∞.
SupRepresentationReport verify_sup_representation(const LFunction& f, const LpExponent& p,
                                                  const ToleranceConfig& cfg = {}, std::size_t max_atoms = 16);

struct InequalityReport {
    ApproxElement lhs;
    ApproxElement rhs;
    OrderComparison comparison;
    bool passed() const { return comparison.holds; }
};

/// ∫ |⟨u(t), v(t)⟩| dμ ≤ ‖u‖_p ‖v‖_q, with v measured in its own codomain norm.
/// For rank > 1, v's norm must be the dual of u's. Throws InvalidArgument for
/// non-conjugate exponents, SpaceMismatch or DimensionMismatch on shape errors.
InequalityReport check_holder(const LFunction& u, const LFunction& v, const LpExponent& p, const LpExponent& q,
                              const ToleranceConfig& cfg = {});

/// ‖u + v‖_p ≤ ‖u‖_p + ‖v‖_p for finite p.
InequalityReport check_minkowski(const LFunction& u, const LFunction& v, const LpExponent& p,
                                 const ToleranceConfig& cfg = {});

struct ChebyshevRow {
    std::size_t n = 0;  ///< 1-based index into the supplied sequence
    std::size_t coordinate = 0;
    MeasurableSet level_set;
    Rational level_mass;
    ApproxReal integral;
    bool holds = true;
};

struct ChebyshevReport {
    Rational gamma;
    std::vector<ChebyshevRow> rows;
    bool passed = true;
    /// Per coordinate: the last integral is below γ·(smallest positive mass),
    /// which forces the last level set to be null.
    std::vector<bool> integral_vanishes;
    /// Per coordinate: the last level set has measure zero.
    std::vector<bool> measure_vanishes;
};

/// For each h_n and coordinate i, with A = {t : ‖h_n(t) - h(t)‖_i ≥ γ},
/// checks γ·μ(A) ≤ ∫ ‖h_n - h‖_i dμ. Throws InvalidArgument unless γ > 0.
ChebyshevReport check_chebyshev_step(std::span<const LFunction> hs, const LFunction& h, const Rational& gamma,
                                     const ToleranceConfig& cfg = {});

/// g_n = f·I_{first n atoms}.
LFunction simple_approximation(const LFunction& f, std::size_t n);

struct TruncatedSequenceSpec {
    TruncatedSpace space;
    ModuleSpace codomain;
    /// g_n(t) for atom t and n ≥ 1.
    std::function<ModuleVector(std::size_t atom, std::size_t n)> generator;
    std::vector<ModuleVector> limit;
    std::vector<LElement> dominator;
    Rational phi;
    bool monotone = false;
};

/// g_n = g·I_{first n atoms}, dominated by h = ‖g‖ (componentwise).
TruncatedSequenceSpec truncation_family(const TruncatedSpace& space, const ModuleSpace& codomain,
                                        std::vector<ModuleVector> g, const Rational& phi);

struct DctRow {
    std::size_t n = 0;
    ApproxElement error;  ///< e_n = ‖∫g_n - ∫g‖
    ApproxElement bound;  ///< ∫‖g_n - g‖ + 2φ·tail_mass
    bool within_bound = true;
    bool bound_nonincreasing = true;
};

struct DctReport {
    std::vector<DctRow> rows;
    Rational tail_term;  ///< 2φ·tail_mass
    bool passed = true;
};

/// Throws DominatorViolated when ‖g_n(t)‖ ≤ h(t) or h(t) ≤ φ fails (n = 0
/// denotes the limit g).
DctReport run_dct_experiment(const TruncatedSequenceSpec& spec, std::size_t n_max, const ToleranceConfig& cfg = {});

struct CompletenessRow {
    std::size_t n = 0;
    ApproxElement residual;  ///< ‖u* - u_n‖_p, computed
    ApproxElement expected;  ///< 2^-n ‖w‖_p
    bool residual_matches = true;
    bool sharp_bound = true;  ///< residual ≤ ε_n
    bool scaled_bound = true;  ///< residual ≤ ε_n μ(S)^{1/p}
};

struct CompletenessReport {
    LpExponent p = LpExponent::infinity();
    ApproxElement w_norm;
    std::vector<CompletenessRow> rows;
    bool pairwise_envelope = true;    ///< ‖u_n - u_m‖_p ≤ 2^{1-k}‖w‖_p for n, m ≥ k
    bool pointwise_limit = true;      ///< u_n(t) → u*(t) with certificate
    bool pointwise_estimate = true;   ///< ‖u_n(t) - u_m(t)‖^p μ({t}) ≤ ‖u_n - u_m‖_p^p
    bool literal_pointwise_estimate = true;  ///< ‖u_n(t) - u_m(t)‖ ≤ ‖u_n - u_m‖_p
    bool scaled_bound_everywhere = true;
    std::optional<std::pair<std::size_t, std::size_t>> envelope_violation;
    bool passed() const;
};

CompletenessReport completeness_harness(const LFunction& u_star, const LFunction& w, const LpExponent& p,
                                        std::size_t n_terms, const ToleranceConfig& cfg = {});
/// Seeded u*, w on the given space and codomain.
CompletenessReport run_completeness_harness(const MeasureSpace& space, const ModuleSpace& codomain,
                                            const LpExponent& p, std::uint64_t seed, std::size_t n_terms,
                                            const ToleranceConfig& cfg = {});

}  // namespace lbochner
