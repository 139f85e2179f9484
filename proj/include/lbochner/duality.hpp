// Copyright The lbochner Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "lbochner/bochner.hpp"
#include "lbochner/generators.hpp"
#include "lbochner/vecmeasure.hpp"

namespace lbochner {

/// v : atoms → X*, an element of L^q(μ, X*). `primal` is X; the values are
/// measured in X*'s norm, primal.dual().
class DualFunction {
public:
    DualFunction(MeasureSpace space, ModuleSpace primal, std::vector<Functional> values);
    static DualFunction zero(const MeasureSpace& space, const ModuleSpace& primal);

    const MeasureSpace& space() const noexcept { return space_; }
    const ModuleSpace& primal() const noexcept { return primal_; }
    const Functional& operator[](std::size_t atom) const { return values_.at(atom); }
    std::span<const Functional> values() const noexcept { return values_; }
    /// The same data as an LFunction into X* (for lp_norm and friends).
    LFunction as_lfunction() const;
    static DualFunction from_lfunction(const LFunction& f, const ModuleSpace& primal);

    friend bool operator==(const DualFunction& a, const DualFunction& b) {
        return a.space_ == b.space_ && a.primal_ == b.primal_ && a.values_ == b.values_;
    }

private:
    MeasureSpace space_;
    ModuleSpace primal_;
    std::vector<Functional> values_;
};

/// An L-linear map H : L^p(μ, X) → L given by its action on the basis
/// e_i·I_{t}: H(u) = Σ_{t,i} u(t)_i · basis_action[t][i].
class LpOperator {
public:
    LpOperator(MeasureSpace space, ModuleSpace primal, LpExponent p, std::vector<std::vector<LElement>> basis_action);

    const MeasureSpace& space() const noexcept { return space_; }
    const ModuleSpace& primal() const noexcept { return primal_; }
    const LpExponent& p() const noexcept { return p_; }
    const LElement& action(std::size_t atom, std::size_t i) const { return basis_action_.at(atom).at(i); }
    const std::vector<std::vector<LElement>>& basis_action() const noexcept { return basis_action_; }
    LElement apply(const LFunction& u) const;

private:
    MeasureSpace space_;
    ModuleSpace primal_;
    LpExponent p_;
    std::vector<std::vector<LElement>> basis_action_;
};

/// F_v(u) = Σ_t v(t)(u(t)) μ({t}), exact.
LElement pairing(const LFunction& u, const DualFunction& v);

/// basis_action[t][i] = v(t)(e_i)·μ({t}).
LpOperator build_F(const DualFunction& v, const LpExponent& p);

struct OperatorNormResult {
    ApproxElement closed_form;  ///< ‖v‖_q of the density re-derived from H
    LElement sampled_lower;     ///< max |H(u)|/‖u‖_p over alignment and random candidates
    ApproxElement gap;          ///< closed_form - sampled_lower
    std::size_t candidates = 0;
    /// sampled_lower ≤ closed_form and the gap is at most compare_tol.
    bool interval_ok = true;
};

/// Least c with |H(u)| ≤ c‖u‖_p, as [sampled lower bound, closed form].
/// Throws NotAbsolutelyContinuous when H acts on a null atom (then H is
/// unbounded on L^p, since e_i·I_{t} is the zero class).
OperatorNormResult operator_norm(const LpOperator& h, std::size_t trials = 20, std::uint64_t seed = 0,
                                 const ToleranceConfig& cfg = {});

struct BootstrapRow {
    std::size_t n = 0;
    Rational s;  ///< 1 + 1/p + … + 1/p^n
    ApproxElement lhs;
    ApproxElement rhs;
    bool holds = true;
};

struct BootstrapTrace {
    std::vector<BootstrapRow> rows;
    ApproxElement limit;   ///< lhs_{n_max}^{1/s_{n_max}}
    ApproxElement target;  ///< ‖v‖_q
    Rational limit_tol;
    bool limit_ok = true;
    bool chain_holds() const;
    bool passed() const { return chain_holds() && limit_ok; }
};

/// Exponent bootstrap chain ∫‖v‖^{s_n} dμ ≤ ‖F_v‖^{s_n} μ(S)^{1/p^{n+1}} for n ≤ n_max,
/// plus convergence of lhs_n^{1/s_n} to ‖v‖_q within limit_tol.
/// Throws InvalidArgument unless 1 < p < ∞, ZeroNorm if some positive-mass
/// atom has a zero coordinate of ‖v(t)‖.
BootstrapTrace bootstrap_lower_bound(const DualFunction& v, const LpExponent& p, std::size_t n_max,
                                     const ApproxElement& fv_norm, const ToleranceConfig& cfg = {},
                                     const Rational& limit_tol = Rational::pow2(-20));

struct EssSupRow {
    Rational epsilon;
    std::size_t coordinate = 0;
    MeasurableSet set;  ///< E_ε for this coordinate
    Rational mass;
    bool null = true;
};

struct EssSupReport {
    LElement fv_norm;
    std::vector<EssSupRow> rows;
    bool all_null = true;
    bool concluded = true;  ///< ‖v‖_∞ ≤ ‖F_v‖
    bool passed() const { return all_null && concluded; }
};

/// p = 1 case: E_ε = {t : ‖v(t)‖_i > ‖F_v‖_i + ε} must be null for each ε
/// and coordinate i. ‖F_v‖ defaults to the sampled lower bound of
/// operator_norm(build_F(v, 1)); pass `fv_override` to test other values.
EssSupReport ess_sup_lower_bound(const DualFunction& v, std::span<const Rational> epsilons,
                                 const std::optional<LElement>& fv_override = std::nullopt,
                                 const ToleranceConfig& cfg = {});

struct IsometryReport {
    LpExponent p = LpExponent::infinity();
    OperatorNormResult fv_norm;
    ApproxElement v_norm;
    ApproxElement gap;  ///< |‖F_v‖ - ‖v‖_q|
    OrderComparison equality;
    std::optional<BootstrapTrace> bootstrap;
    /// Why the bootstrap was skipped, when it was.
    std::string bootstrap_note;
    bool verdict = true;
};

IsometryReport isometry_check(const DualFunction& v, const LpExponent& p, const ToleranceConfig& cfg = {},
                              std::size_t trials = 20, std::uint64_t seed = 0, std::size_t bootstrap_n = 20);

struct RepresentResult {
    DualFunction v;
    std::size_t basis_checked = 0;
    std::size_t random_checked = 0;
    bool matches = true;
};

/// Builds G(F)(x) = H(x·I_F), v = dG/dμ, then checks
/// H(u) = pairing(u, v) on every basis function and on `trials` seeded u.
/// Throws NotAbsolutelyContinuous.
RepresentResult represent(const LpOperator& h, std::size_t trials = 100, std::uint64_t seed = 0);

DualFunction random_dual_function(Rng& rng, const MeasureSpace& space, const ModuleSpace& primal,
                                  const GenRange& range = {});
/// Random basis action, zero on null atoms.
LpOperator random_operator(Rng& rng, const MeasureSpace& space, const ModuleSpace& primal, const LpExponent& p,
                           const GenRange& range = {});

struct RoundtripRow {
    std::size_t trial = 0;
    ApproxElement gap;
    bool represent_ok = true;  ///< represent(build_F(v)) = v on positive-mass atoms
    bool operator_ok = true;   ///< build_F(represent(H)) = H on the basis
    bool isometry_ok = true;
};

struct RoundtripReport {
    LpExponent p = LpExponent::infinity();
    ModuleSpace primal;
    std::vector<RoundtripRow> rows;
    bool passed = true;
};

struct RoundtripOptions {
    ModuleSpace primal{2, 2, NormKind::Sup};
    std::size_t atoms = 3;
    std::size_t null_atoms = 1;
    std::size_t operator_trials = 10;
    std::size_t bootstrap_n = 5;
};

/// Per trial (stream `trial` of `seed`): random space and v, random H.
RoundtripReport roundtrip_check(const LpExponent& p, std::size_t trials, std::uint64_t seed,
                                const RoundtripOptions& options = {}, const ToleranceConfig& cfg = {});

}  // namespace lbochner
