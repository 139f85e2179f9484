// Copyright The lbochner Authors
// SPDX-License-Identifier: Apache-2.0

#include "lbochner/duality.hpp"

#include <algorithm>

#include "lbochner/errors.hpp"

namespace lbochner {

namespace {

ApproxElement broadcast(std::size_t d, const ApproxReal& x) {
    return ApproxElement(std::vector<ApproxReal>(d, x));
}

// |H(u)| / upper(‖u‖_p) per coordinate, 0 where the norm vanishes.
LElement ratio(const LElement& value, const ApproxElement& u_norm) {
    const LElement bound = u_norm.upper();
    std::vector<Rational> out(value.dim());
    for (std::size_t j = 0; j < value.dim(); ++j) {
        if (bound[j].sign() > 0) out[j] = abs(value[j]) / bound[j];
    }
    return LElement(std::move(out));
}

}  // namespace

DualFunction::DualFunction(MeasureSpace space, ModuleSpace primal, std::vector<Functional> values)
    : space_(std::move(space)), primal_(primal), values_(std::move(values)) {
    if (values_.size() != space_.size()) throw DimensionMismatch("dual function needs one value per atom");
    for (std::size_t t = 0; t < values_.size(); ++t) {
        if (values_[t].rank() != primal_.rank || values_[t].d() != primal_.d) {
            throw DimensionMismatch("functional at atom '" + space_.name(t) + "' does not fit X*");
        }
    }
}

DualFunction DualFunction::zero(const MeasureSpace& space, const ModuleSpace& primal) {
    return DualFunction(space, primal, std::vector<Functional>(space.size(), Functional::zero(primal.rank, primal.d)));
}

LFunction DualFunction::as_lfunction() const {
    std::vector<ModuleVector> out;
    for (const auto& phi : values_) out.push_back(phi.as_vector());
    return LFunction(space_, primal_.dual(), std::move(out));
}

DualFunction DualFunction::from_lfunction(const LFunction& f, const ModuleSpace& primal) {
    std::vector<Functional> out;
    for (const auto& x : f.values()) out.emplace_back(x);
    return DualFunction(f.space(), primal, std::move(out));
}

LpOperator::LpOperator(MeasureSpace space, ModuleSpace primal, LpExponent p,
                       std::vector<std::vector<LElement>> basis_action)
    : space_(std::move(space)), primal_(primal), p_(std::move(p)), basis_action_(std::move(basis_action)) {
    if (basis_action_.size() != space_.size()) throw DimensionMismatch("basis action needs one row per atom");
    for (const auto& row : basis_action_) {
        if (row.size() != primal_.rank) throw DimensionMismatch("basis action row does not match the rank");
        for (const auto& x : row) {
            if (x.dim() != primal_.d) throw DimensionMismatch("basis action entry does not match d");
        }
    }
}

LElement LpOperator::apply(const LFunction& u) const {
    if (!(u.space() == space_)) throw SpaceMismatch("operator and function live on different spaces");
    if (!(u.codomain().rank == primal_.rank && u.codomain().d == primal_.d)) {
        throw DimensionMismatch("function does not fit the operator's module");
    }
    LElement total = LElement::zero(primal_.d);
    for (std::size_t t = 0; t < space_.size(); ++t) {
        for (std::size_t i = 0; i < primal_.rank; ++i) total = total + u[t][i] * basis_action_[t][i];
    }
    return total;
}

LElement pairing(const LFunction& u, const DualFunction& v) {
    if (!(u.space() == v.space())) throw SpaceMismatch("u and v live on different spaces");
    if (u.codomain().rank != v.primal().rank || u.codomain().d != v.primal().d) {
        throw DimensionMismatch("u and v have incompatible ranks");
    }
    LElement total = LElement::zero(u.codomain().d);
    for (std::size_t t = 0; t < u.space().size(); ++t) {
        if (!u.space().mass(t).is_zero()) total = total + u.space().mass(t) * apply(v[t], u[t]);
    }
    return total;
}

LpOperator build_F(const DualFunction& v, const LpExponent& p) {
    std::vector<std::vector<LElement>> action;
    for (std::size_t t = 0; t < v.space().size(); ++t) {
        std::vector<LElement> row;
        for (const auto& c : v[t].coeffs()) row.push_back(v.space().mass(t) * c);
        action.push_back(std::move(row));
    }
    return LpOperator(v.space(), v.primal(), p, std::move(action));
}

namespace {

// v(t) = basis_action[t] / μ({t}); null atoms must carry no action.
DualFunction density_of(const LpOperator& h) {
    const MeasureSpace& space = h.space();
    const ModuleSpace& x = h.primal();
    std::vector<Functional> values;
    for (std::size_t t = 0; t < space.size(); ++t) {
        const auto& row = h.basis_action()[t];
        if (space.mass(t).is_zero()) {
            if (std::any_of(row.begin(), row.end(), [](const LElement& e) { return !e.is_zero(); })) {
                throw NotAbsolutelyContinuous(t, space.name(t));
            }
            values.push_back(Functional::zero(x.rank, x.d));
            continue;
        }
        const Rational inv = Rational(1) / space.mass(t);
        std::vector<LElement> coeffs;
        for (const auto& e : row) coeffs.push_back(inv * e);
        values.emplace_back(std::move(coeffs));
    }
    return DualFunction(space, x, std::move(values));
}

}  // namespace

OperatorNormResult operator_norm(const LpOperator& h, std::size_t trials, std::uint64_t seed,
                                 const ToleranceConfig& cfg) {
    const MeasureSpace& space = h.space();
    const ModuleSpace& x = h.primal();
    const LpExponent& p = h.p();
    const LpExponent q = p.conjugate();
    const DualFunction v = density_of(h);

    OperatorNormResult result;
    result.closed_form = lp_norm(v.as_lfunction(), q, cfg);
    result.sampled_lower = LElement::zero(x.d);
    auto consider = [&](const LFunction& u) {
        ++result.candidates;
        result.sampled_lower = sup(result.sampled_lower, ratio(h.apply(u), lp_norm(u, p, cfg)));
    };

    if (!p.is_infinite() && p.value() == Rational(1)) {
        // Mass concentrated on one atom, aligned with v(t).
        for (std::size_t t = 0; t < space.size(); ++t) {
            if (space.mass(t).is_zero()) continue;
            const ModuleVector aligned = alignment_vector(v[t], x.kind, cfg);
            consider(LFunction::indicator(MeasurableSet(space, {t}), x, (Rational(1) / space.mass(t)) * aligned));
        }
    } else {
        // u(t) ≈ ‖v(t)‖^{q-1} times the aligned unit vector; equality case of Hölder.
        std::vector<ModuleVector> values;
        for (std::size_t t = 0; t < space.size(); ++t) {
            const ModuleVector aligned = alignment_vector(v[t], x.kind, cfg);
            if (q.value() == Rational(1)) {
                values.push_back(aligned);
                continue;
            }
            const LElement weight =
                norm_pow(dual_kind(x.kind), v[t].coeffs(), q.value() - Rational(1), cfg).values();
            values.push_back(weight * aligned);
        }
        consider(LFunction(space, x, std::move(values)));
    }
    Rng rng(seed);
    for (std::size_t s = 0; s < trials; ++s) consider(random_lfunction(rng, space, x));

    result.gap = result.closed_form - ApproxElement(result.sampled_lower);
    result.interval_ok = compare_leq(ApproxElement(result.sampled_lower), result.closed_form, cfg.compare_tol).holds &&
                         compare_leq(result.closed_form, ApproxElement(result.sampled_lower), cfg.compare_tol).holds;
    return result;
}

bool BootstrapTrace::chain_holds() const {
    return std::all_of(rows.begin(), rows.end(), [](const BootstrapRow& r) { return r.holds; });
}

BootstrapTrace bootstrap_lower_bound(const DualFunction& v, const LpExponent& p, std::size_t n_max,
                                     const ApproxElement& fv_norm, const ToleranceConfig& cfg,
                                     const Rational& limit_tol) {
    if (p.is_infinite() || p.value() <= Rational(1)) throw InvalidArgument("bootstrap needs 1 < p < inf");
    const MeasureSpace& space = v.space();
    const ModuleSpace& x = v.primal();
    const NormKind dual = dual_kind(x.kind);
    for (std::size_t t = 0; t < space.size(); ++t) {
        if (space.mass(t).is_zero()) continue;
        for (std::size_t j = 0; j < x.d; ++j) {
            const auto coeffs = v[t].coeffs();
            if (std::all_of(coeffs.begin(), coeffs.end(), [j](const LElement& c) { return c[j].is_zero(); })) {
                throw ZeroNorm(t, j);
            }
        }
    }

    BootstrapTrace trace;
    trace.limit_tol = limit_tol;
    const Rational inv_p = Rational(1) / p.value();
    Rational s(1);
    Rational inv_p_power = inv_p;  // 1/p^{n+1}
    for (std::size_t n = 0; n <= n_max; ++n) {
        if (n > 0) {
            s += inv_p_power;
            inv_p_power *= inv_p;
        }
        BootstrapRow row;
        row.n = n;
        row.s = s;
        row.lhs = ApproxElement(LElement::zero(x.d));
        for (std::size_t t = 0; t < space.size(); ++t) {
            if (space.mass(t).is_zero()) continue;
            row.lhs = row.lhs + ApproxElement(LElement::constant(x.d, space.mass(t))) *
                                    norm_pow(dual, v[t].coeffs(), s, cfg);
        }
        row.rhs = pow_real(fv_norm, s, cfg.root_tol) *
                  broadcast(x.d, pow_real(space.total_mass(), inv_p_power, cfg.root_tol));
        row.holds = compare_leq(row.lhs, row.rhs, cfg.compare_tol).holds;
        trace.rows.push_back(std::move(row));
    }
    trace.limit = pow_real(trace.rows.back().lhs, Rational(1) / s, cfg.root_tol);
    trace.target = lp_norm(v.as_lfunction(), p.conjugate(), cfg);
    trace.limit_ok = compare_equal(trace.limit, trace.target, limit_tol).holds;
    return trace;
}

EssSupReport ess_sup_lower_bound(const DualFunction& v, std::span<const Rational> epsilons,
                                 const std::optional<LElement>& fv_override, const ToleranceConfig& cfg) {
    const MeasureSpace& space = v.space();
    const ModuleSpace& x = v.primal();
    EssSupReport report;
    report.fv_norm = fv_override ? *fv_override
                                 : operator_norm(build_F(v, LpExponent(Rational(1))), 0, 0, cfg).sampled_lower;
    if (report.fv_norm.dim() != x.d) throw DimensionMismatch("operator norm override has the wrong d");

    std::vector<ApproxElement> norms;
    for (std::size_t t = 0; t < space.size(); ++t) norms.push_back(norm(dual_kind(x.kind), v[t].coeffs(), cfg));

    for (const auto& eps : epsilons) {
        if (eps.sign() <= 0) throw InvalidArgument("epsilon must be positive");
        for (std::size_t j = 0; j < x.d; ++j) {
            std::vector<std::size_t> members;
            for (std::size_t t = 0; t < space.size(); ++t) {
                if (norms[t][j].lower() > report.fv_norm[j] + eps) members.push_back(t);
            }
            MeasurableSet set(space, std::move(members));
            const Rational mass = measure_of(set);
            const bool null = mass.is_zero();
            report.all_null = report.all_null && null;
            report.rows.push_back(EssSupRow{eps, j, std::move(set), mass, null});
        }
    }
    const ApproxElement v_inf = lp_norm(v.as_lfunction(), LpExponent::infinity(), cfg);
    report.concluded = compare_leq(v_inf, ApproxElement(report.fv_norm), cfg.compare_tol).holds;
    return report;
}

IsometryReport isometry_check(const DualFunction& v, const LpExponent& p, const ToleranceConfig& cfg,
                              std::size_t trials, std::uint64_t seed, std::size_t bootstrap_n) {
    IsometryReport report;
    report.p = p;
    report.fv_norm = operator_norm(build_F(v, p), trials, seed, cfg);
    report.v_norm = lp_norm(v.as_lfunction(), p.conjugate(), cfg);
    report.gap = abs(report.fv_norm.closed_form - report.v_norm);
    report.equality = compare_equal(report.fv_norm.closed_form, report.v_norm, cfg.compare_tol);
    const bool lower_ok =
        compare_leq(report.v_norm, ApproxElement(report.fv_norm.sampled_lower), cfg.compare_tol).holds;
    report.verdict = report.equality.holds && lower_ok && report.fv_norm.interval_ok;

    if (p.is_infinite() || p.value() == Rational(1)) {
        report.bootstrap_note = "bootstrap applies to 1 < p < inf only";
    } else {
        try {
            report.bootstrap = bootstrap_lower_bound(v, p, bootstrap_n, report.fv_norm.closed_form, cfg);
            report.verdict = report.verdict && report.bootstrap->chain_holds();
        } catch (const ZeroNorm& e) {
            report.bootstrap_note = std::string("bootstrap skipped: ") + e.what();
        }
    }
    return report;
}

RepresentResult represent(const LpOperator& h, std::size_t trials, std::uint64_t seed) {
    const MeasureSpace& space = h.space();
    const ModuleSpace& x = h.primal();
    std::vector<ModuleVector> atoms;
    for (const auto& row : h.basis_action()) atoms.emplace_back(row);
    const VectorMeasure g(space, x.dual(), std::move(atoms));
    const DensityResult density = rn_density(g, seed);
    RepresentResult result{DualFunction::from_lfunction(density.density, x), 0, 0, density.verified};

    for (std::size_t t = 0; t < space.size(); ++t) {
        for (std::size_t i = 0; i < x.rank; ++i) {
            const LFunction u = LFunction::indicator(MeasurableSet(space, {t}), x,
                                                     ModuleVector::basis(x.rank, i, LElement::unit(x.d)));
            ++result.basis_checked;
            if (!(h.apply(u) == pairing(u, result.v))) result.matches = false;
        }
    }
    Rng rng(seed);
    for (std::size_t s = 0; s < trials; ++s) {
        const LFunction u = random_lfunction(rng, space, x);
        ++result.random_checked;
        if (!(h.apply(u) == pairing(u, result.v))) result.matches = false;
    }
    return result;
}

DualFunction random_dual_function(Rng& rng, const MeasureSpace& space, const ModuleSpace& primal,
                                  const GenRange& range) {
    std::vector<Functional> values;
    for (std::size_t t = 0; t < space.size(); ++t) {
        values.emplace_back(random_vector(rng, primal.rank, primal.d, range));
    }
    return DualFunction(space, primal, std::move(values));
}

LpOperator random_operator(Rng& rng, const MeasureSpace& space, const ModuleSpace& primal, const LpExponent& p,
                           const GenRange& range) {
    std::vector<std::vector<LElement>> action;
    for (std::size_t t = 0; t < space.size(); ++t) {
        std::vector<LElement> row;
        for (std::size_t i = 0; i < primal.rank; ++i) {
            row.push_back(space.mass(t).is_zero() ? LElement::zero(primal.d)
                                                  : rng.element(primal.d, range.lo, range.hi, range.max_den));
        }
        action.push_back(std::move(row));
    }
    return LpOperator(space, primal, p, std::move(action));
}

RoundtripReport roundtrip_check(const LpExponent& p, std::size_t trials, std::uint64_t seed,
                                const RoundtripOptions& options, const ToleranceConfig& cfg) {
    RoundtripReport report;
    report.p = p;
    report.primal = options.primal;
    for (std::size_t trial = 0; trial < trials; ++trial) {
        Rng rng = Rng::stream(seed, trial);
        const MeasureSpace space = random_space(rng, options.atoms, options.null_atoms);
        const DualFunction v = random_dual_function(rng, space, options.primal);
        RoundtripRow row;
        row.trial = trial;

        const RepresentResult back = represent(build_F(v, p), options.operator_trials, rng.next());
        row.represent_ok = back.matches;
        for (std::size_t t = 0; t < space.size(); ++t) {
            if (!space.mass(t).is_zero() && !(back.v[t] == v[t])) row.represent_ok = false;
        }

        const LpOperator h = random_operator(rng, space, options.primal, p);
        const RepresentResult rep = represent(h, options.operator_trials, rng.next());
        row.operator_ok = rep.matches && build_F(rep.v, p).basis_action() == h.basis_action();

        const IsometryReport iso =
            isometry_check(v, p, cfg, options.operator_trials, rng.next(), options.bootstrap_n);
        row.gap = iso.gap;
        row.isometry_ok = iso.verdict;
        report.passed = report.passed && row.represent_ok && row.operator_ok && row.isometry_ok;
        report.rows.push_back(std::move(row));
    }
    return report;
}

}  // namespace lbochner
