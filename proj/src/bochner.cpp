// Copyright The lbochner Authors
// SPDX-License-Identifier: Apache-2.0

#include "lbochner/bochner.hpp"

#include <algorithm>

#include "lbochner/errors.hpp"
#include "lbochner/generators.hpp"

namespace lbochner {

namespace {

void require_same_space(const MeasureSpace& a, const MeasureSpace& b) {
    if (!(a == b)) throw SpaceMismatch("functions live on different measure spaces");
}

void require_same_codomain(const LFunction& a, const LFunction& b) {
    require_same_space(a.space(), b.space());
    if (!(a.codomain() == b.codomain())) throw DimensionMismatch("functions have different codomains");
}

ApproxElement scaled(const Rational& c, const ApproxElement& a) {
    return ApproxElement(LElement::constant(a.dim(), c)) * a;
}

}  // namespace

LpExponent::LpExponent(Rational p) : p_(std::move(p)) {
    if (*p_ < Rational(1)) throw InvalidArgument("exponent p must be >= 1, got " + p_->to_string());
}

LpExponent LpExponent::parse(std::string_view text) {
    if (text == "inf" || text == "∞" || text == "infinity") return infinity();
    return LpExponent(Rational::parse(text));
}

const Rational& LpExponent::value() const {
    if (!p_) throw InvalidArgument("p = inf has no finite value");
    return *p_;
}

Rational LpExponent::reciprocal() const { return p_ ? Rational(1) / *p_ : Rational(0); }

LpExponent LpExponent::conjugate() const {
    if (!p_) return LpExponent(Rational(1));
    if (*p_ == Rational(1)) return infinity();
    return LpExponent(*p_ / (*p_ - Rational(1)));
}

std::string LpExponent::to_string() const { return p_ ? p_->to_string() : "inf"; }

bool are_conjugate(const LpExponent& p, const LpExponent& q) {
    return p.reciprocal() + q.reciprocal() == Rational(1);
}

LFunction::LFunction(MeasureSpace space, ModuleSpace codomain, std::vector<ModuleVector> values)
    : space_(std::move(space)), codomain_(codomain), values_(std::move(values)) {
    if (values_.size() != space_.size()) {
        throw DimensionMismatch("function has " + std::to_string(values_.size()) + " values for " +
                                std::to_string(space_.size()) + " atoms");
    }
    for (std::size_t t = 0; t < values_.size(); ++t) {
        if (!values_[t].fits(codomain_)) {
            throw DimensionMismatch("value at atom '" + space_.name(t) + "' does not fit the codomain");
        }
    }
}

LFunction LFunction::zero(const MeasureSpace& space, const ModuleSpace& codomain) {
    return LFunction(space, codomain,
                     std::vector<ModuleVector>(space.size(), ModuleVector::zero(codomain.rank, codomain.d)));
}

LFunction LFunction::indicator(const MeasurableSet& set, const ModuleSpace& codomain, const ModuleVector& x) {
    std::vector<ModuleVector> values(set.space().size(), ModuleVector::zero(codomain.rank, codomain.d));
    for (auto t : set.members()) values[t] = x;
    return LFunction(set.space(), codomain, std::move(values));
}

bool LFunction::is_zero() const {
    return std::all_of(values_.begin(), values_.end(), [](const ModuleVector& v) { return v.is_zero(); });
}

LFunction operator+(const LFunction& a, const LFunction& b) {
    require_same_codomain(a, b);
    std::vector<ModuleVector> out;
    for (std::size_t t = 0; t < a.space().size(); ++t) out.push_back(a[t] + b[t]);
    return LFunction(a.space(), a.codomain(), std::move(out));
}

LFunction operator-(const LFunction& a, const LFunction& b) {
    require_same_codomain(a, b);
    std::vector<ModuleVector> out;
    for (std::size_t t = 0; t < a.space().size(); ++t) out.push_back(a[t] - b[t]);
    return LFunction(a.space(), a.codomain(), std::move(out));
}

LFunction operator*(const LElement& lambda, const LFunction& f) {
    std::vector<ModuleVector> out;
    for (const auto& v : f.values()) out.push_back(lambda * v);
    return LFunction(f.space(), f.codomain(), std::move(out));
}

LFunction operator*(const Rational& c, const LFunction& f) {
    std::vector<ModuleVector> out;
    for (const auto& v : f.values()) out.push_back(c * v);
    return LFunction(f.space(), f.codomain(), std::move(out));
}

LFunction restrict_to(const LFunction& f, const MeasurableSet& set) {
    require_same_space(f.space(), set.space());
    std::vector<ModuleVector> out(f.space().size(), ModuleVector::zero(f.codomain().rank, f.codomain().d));
    for (auto t : set.members()) out[t] = f[t];
    return LFunction(f.space(), f.codomain(), std::move(out));
}

ModuleVector integrate(const LFunction& f) {
    ModuleVector total = ModuleVector::zero(f.codomain().rank, f.codomain().d);
    for (std::size_t t = 0; t < f.space().size(); ++t) {
        if (!f.space().mass(t).is_zero()) total = total + f.space().mass(t) * f[t];
    }
    return total;
}

ModuleVector integrate_over(const LFunction& f, const MeasurableSet& set) {
    require_same_space(f.space(), set.space());
    ModuleVector total = ModuleVector::zero(f.codomain().rank, f.codomain().d);
    for (auto t : set.members()) {
        if (!f.space().mass(t).is_zero()) total = total + f.space().mass(t) * f[t];
    }
    return total;
}

ApproxElement lp_integral(const LFunction& f, const Rational& p, const ToleranceConfig& cfg) {
    ApproxElement total(LElement::zero(f.codomain().d));
    for (std::size_t t = 0; t < f.space().size(); ++t) {
        const Rational& mass = f.space().mass(t);
        if (mass.is_zero()) continue;
        total = total + scaled(mass, norm_pow(f.codomain().kind, f[t].entries(), p, cfg));
    }
    return total;
}

ApproxElement lp_norm(const LFunction& f, const LpExponent& p, const ToleranceConfig& cfg) {
    if (p.is_infinite()) {
        std::optional<ApproxElement> best;
        for (std::size_t t = 0; t < f.space().size(); ++t) {
            if (f.space().mass(t).is_zero()) continue;
            const ApproxElement n = norm(f.codomain(), f[t], cfg);
            best = best ? sup(*best, n) : n;
        }
        return *best;  // total mass > 0
    }
    const ApproxElement integral = lp_integral(f, p.value(), cfg);
    if (p.value() == Rational(1)) return integral;
    return pow_real(integral, Rational(1) / p.value(), cfg.root_tol);
}

SupRepresentationReport verify_sup_representation(const LFunction& f, const LpExponent& p,
                                                  const ToleranceConfig& cfg, std::size_t max_atoms) {
    if (p.is_infinite()) throw InvalidArgument("the subset representation needs a finite p");
    const std::size_t m = f.space().size();
    if (m > max_atoms || m > 30) {
        throw TooManyAtoms(std::to_string(m) + " atoms exceed the subset cap of " + std::to_string(max_atoms));
    }
    std::vector<ApproxElement> contribution;
    for (std::size_t t = 0; t < m; ++t) {
        contribution.push_back(scaled(f.space().mass(t), norm_pow(f.codomain().kind, f[t].entries(), p.value(), cfg)));
    }

    const std::uint64_t count = std::uint64_t{1} << m;
    std::vector<ApproxElement> value(count);
    value[0] = ApproxElement(LElement::zero(f.codomain().d));
    for (std::uint64_t mask = 1; mask < count; ++mask) {
        const auto low = static_cast<std::size_t>(__builtin_ctzll(mask));
        value[mask] = value[mask & (mask - 1)] + contribution[low];
    }

    SupRepresentationReport report;
    report.subsets_checked = count;
    const std::uint64_t full = count - 1;
    report.full_integral = value[full];
    for (std::uint64_t mask = 0; mask < count; ++mask) {
        for (std::size_t i = 0; i < m; ++i) {
            const std::uint64_t bigger = mask | (std::uint64_t{1} << i);
            if (bigger == mask) continue;
            if (!compare_leq(value[mask], value[bigger], cfg.compare_tol).holds && report.monotone) {
                report.monotone = false;
                if (!report.witness) report.witness = std::pair{mask, bigger};
            }
        }
        if (!compare_leq(value[mask], value[full], cfg.compare_tol).holds && report.max_at_full) {
            report.max_at_full = false;
            if (!report.witness) report.witness = std::pair{mask, full};
        }
        if (compare_equal(value[mask], value[full], cfg.compare_tol).holds) ++report.attaining_subsets;
    }
    return report;
}

InequalityReport check_holder(const LFunction& u, const LFunction& v, const LpExponent& p, const LpExponent& q,
                              const ToleranceConfig& cfg) {
    if (!are_conjugate(p, q)) {
        throw InvalidArgument("exponents " + p.to_string() + " and " + q.to_string() + " are not conjugate");
    }
    require_same_space(u.space(), v.space());
    const ModuleSpace& x = u.codomain();
    if (x.rank != v.codomain().rank || x.d != v.codomain().d) {
        throw DimensionMismatch("u and v have different module shapes");
    }
    if (x.rank > 1 && v.codomain().kind != dual_kind(x.kind)) {
        throw InvalidArgument("v must carry the dual norm '" + std::string(to_string(dual_kind(x.kind))) + "'");
    }
    LElement lhs = LElement::zero(x.d);
    for (std::size_t t = 0; t < u.space().size(); ++t) {
        lhs = lhs + u.space().mass(t) * abs(apply(Functional(v[t]), u[t]));
    }
    InequalityReport report;
    report.lhs = ApproxElement(lhs);
    report.rhs = lp_norm(u, p, cfg) * lp_norm(v, q, cfg);
    report.comparison = compare_leq(report.lhs, report.rhs, cfg.compare_tol);
    return report;
}

InequalityReport check_minkowski(const LFunction& u, const LFunction& v, const LpExponent& p,
                                 const ToleranceConfig& cfg) {
    if (p.is_infinite()) throw InvalidArgument("Minkowski check needs a finite p");
    require_same_codomain(u, v);
    InequalityReport report;
    report.lhs = lp_norm(u + v, p, cfg);
    report.rhs = lp_norm(u, p, cfg) + lp_norm(v, p, cfg);
    report.comparison = compare_leq(report.lhs, report.rhs, cfg.compare_tol);
    return report;
}

ChebyshevReport check_chebyshev_step(std::span<const LFunction> hs, const LFunction& h, const Rational& gamma,
                                     const ToleranceConfig& cfg) {
    if (gamma.sign() <= 0) throw InvalidArgument("gamma must be positive");
    const std::size_t d = h.codomain().d;
    const MeasureSpace& space = h.space();
    ChebyshevReport report;
    report.gamma = gamma;
    report.integral_vanishes.assign(d, false);
    report.measure_vanishes.assign(d, false);
    const Rational floor_mass = gamma * space.min_positive_mass();

    for (std::size_t n = 0; n < hs.size(); ++n) {
        const LFunction diff = hs[n] - h;
        const ApproxElement integral = lp_integral(diff, Rational(1), cfg);
        for (std::size_t i = 0; i < d; ++i) {
            std::vector<std::size_t> members;
            for (std::size_t t = 0; t < space.size(); ++t) {
                if (norm_at_least(h.codomain().kind, diff[t].entries(), i, gamma)) members.push_back(t);
            }
            MeasurableSet level(space, std::move(members));
            const Rational mass = measure_of(level);
            const bool holds = leq_within(ApproxReal(gamma * mass), integral[i], cfg.compare_tol);
            report.passed = report.passed && holds;
            if (n + 1 == hs.size()) {
                report.integral_vanishes[i] = integral[i].upper() < floor_mass;
                report.measure_vanishes[i] = mass.is_zero();
            }
            report.rows.push_back(ChebyshevRow{n + 1, i, std::move(level), mass, integral[i], holds});
        }
    }
    return report;
}

LFunction simple_approximation(const LFunction& f, std::size_t n) {
    std::vector<ModuleVector> out(f.values().begin(), f.values().end());
    for (std::size_t t = std::min(n, out.size()); t < out.size(); ++t) {
        out[t] = ModuleVector::zero(f.codomain().rank, f.codomain().d);
    }
    return LFunction(f.space(), f.codomain(), std::move(out));
}

TruncatedSequenceSpec truncation_family(const TruncatedSpace& space, const ModuleSpace& codomain,
                                        std::vector<ModuleVector> g, const Rational& phi) {
    std::vector<LElement> dominator;
    for (const auto& x : g) dominator.push_back(norm(codomain, x).upper());
    std::vector<ModuleVector> limit = g;
    auto generator = [g = std::move(g), codomain](std::size_t atom, std::size_t n) {
        return atom < n ? g[atom] : ModuleVector::zero(codomain.rank, codomain.d);
    };
    TruncatedSequenceSpec spec{space, codomain, std::move(generator), std::move(limit), std::move(dominator), phi};
    spec.monotone = true;
    return spec;
}

DctReport run_dct_experiment(const TruncatedSequenceSpec& spec, std::size_t n_max, const ToleranceConfig& cfg) {
    const MeasureSpace& space = spec.space.space;
    const std::size_t m = space.size();
    const std::size_t d = spec.codomain.d;
    if (spec.dominator.size() != m || spec.limit.size() != m) {
        throw DimensionMismatch("dominator and limit need one value per atom");
    }
    const LElement cap = LElement::constant(d, spec.phi);
    for (std::size_t t = 0; t < m; ++t) {
        const LElement& h = spec.dominator[t];
        if (!leq(LElement::zero(d), h) || !leq(h, cap)) {
            throw DominatorViolated(0, t, "dominator at atom '" + space.name(t) + "' is not within [0, phi]");
        }
        if (!norm_at_most(spec.codomain.kind, spec.limit[t].entries(), h)) {
            throw DominatorViolated(0, t, "limit exceeds the dominator at atom '" + space.name(t) + "'");
        }
    }

    const LFunction g(space, spec.codomain, spec.limit);
    const ModuleVector g_integral = integrate(g);
    DctReport report;
    report.tail_term = Rational(2) * spec.phi * spec.space.tail_mass;
    const ApproxElement tail(LElement::constant(d, report.tail_term));

    for (std::size_t n = 1; n <= n_max; ++n) {
        std::vector<ModuleVector> values;
        for (std::size_t t = 0; t < m; ++t) {
            ModuleVector x = spec.generator(t, n);
            if (!norm_at_most(spec.codomain.kind, x.entries(), spec.dominator[t])) {
                throw DominatorViolated(n, t, "g_" + std::to_string(n) + " exceeds the dominator at atom '" +
                                                  space.name(t) + "'");
            }
            values.push_back(std::move(x));
        }
        const LFunction gn(space, spec.codomain, std::move(values));
        DctRow row;
        row.n = n;
        row.error = norm(spec.codomain, integrate(gn) - g_integral, cfg);
        row.bound = lp_integral(gn - g, Rational(1), cfg) + tail;
        row.within_bound = compare_leq(row.error, row.bound, cfg.compare_tol).holds;
        if (spec.monotone && !report.rows.empty()) {
            row.bound_nonincreasing = compare_leq(row.bound, report.rows.back().bound, cfg.compare_tol).holds;
        }
        report.passed = report.passed && row.within_bound && row.bound_nonincreasing;
        report.rows.push_back(std::move(row));
    }
    return report;
}

bool CompletenessReport::passed() const {
    const bool rows_ok = std::all_of(rows.begin(), rows.end(),
                                     [](const CompletenessRow& r) { return r.residual_matches && r.sharp_bound; });
    return rows_ok && pairwise_envelope && pointwise_limit && pointwise_estimate;
}

CompletenessReport completeness_harness(const LFunction& u_star, const LFunction& w, const LpExponent& p,
                                        std::size_t n_terms, const ToleranceConfig& cfg) {
    if (p.is_infinite()) throw InvalidArgument("completeness harness needs a finite p");
    if (n_terms == 0) throw InvalidArgument("n_terms must be >= 1");
    require_same_codomain(u_star, w);
    const MeasureSpace& space = u_star.space();
    const ModuleSpace& x = u_star.codomain();
    const Rational inv_p = Rational(1) / p.value();

    CompletenessReport report;
    report.p = p;
    report.w_norm = lp_norm(w, p, cfg);
    const ApproxElement mass_factor(std::vector<ApproxReal>(x.d, pow_real(space.total_mass(), inv_p, cfg.root_tol)));

    std::vector<LFunction> seq;
    for (std::size_t n = 1; n <= n_terms; ++n) seq.push_back(u_star + Rational::pow2(-static_cast<long>(n)) * w);

    for (std::size_t n = 1; n <= n_terms; ++n) {
        for (std::size_t m = n + 1; m <= n_terms; ++m) {
            const LFunction diff = seq[n - 1] - seq[m - 1];
            const ApproxElement integral = lp_integral(diff, p.value(), cfg);
            const ApproxElement dist =
                p.value() == Rational(1) ? integral : pow_real(integral, inv_p, cfg.root_tol);
            const ApproxElement eps = scaled(Rational::pow2(1 - static_cast<long>(n)), report.w_norm);
            if (!compare_leq(dist, eps, cfg.compare_tol).holds && report.pairwise_envelope) {
                report.pairwise_envelope = false;
                report.envelope_violation = std::pair{n, m};
            }
            for (std::size_t t = 0; t < space.size(); ++t) {
                const ApproxElement local = scaled(space.mass(t), norm_pow(x.kind, diff[t].entries(), p.value(), cfg));
                report.pointwise_estimate =
                    report.pointwise_estimate && compare_leq(local, integral, cfg.compare_tol).holds;
                report.literal_pointwise_estimate =
                    report.literal_pointwise_estimate && compare_leq(norm(x, diff[t], cfg), dist, cfg.compare_tol).holds;
            }
        }
    }

    for (std::size_t t = 0; t < space.size() && report.pointwise_limit; ++t) {
        for (std::size_t i = 0; i < x.rank && report.pointwise_limit; ++i) {
            std::vector<LElement> coords;
            std::vector<EnvelopeEntry> envelope;
            for (std::size_t n = 1; n <= n_terms; ++n) {
                coords.push_back(seq[n - 1][t][i]);
                envelope.push_back({Rational::pow2(-static_cast<long>(n)) * abs(w[t][i]), n});
            }
            report.pointwise_limit = check_order_convergence(coords, u_star[t][i], envelope).passed;
        }
    }

    for (std::size_t n = 1; n <= n_terms; ++n) {
        CompletenessRow row;
        row.n = n;
        row.residual = lp_norm(u_star - seq[n - 1], p, cfg);
        row.expected = scaled(Rational::pow2(-static_cast<long>(n)), report.w_norm);
        row.residual_matches = compare_equal(row.residual, row.expected, cfg.compare_tol).holds;
        const ApproxElement eps = scaled(Rational::pow2(1 - static_cast<long>(n)), report.w_norm);
        row.sharp_bound = compare_leq(row.residual, eps, cfg.compare_tol).holds;
        row.scaled_bound = compare_leq(row.residual, eps * mass_factor, cfg.compare_tol).holds;
        report.scaled_bound_everywhere = report.scaled_bound_everywhere && row.scaled_bound;
        report.rows.push_back(std::move(row));
    }
    return report;
}

CompletenessReport run_completeness_harness(const MeasureSpace& space, const ModuleSpace& codomain,
                                            const LpExponent& p, std::uint64_t seed, std::size_t n_terms,
                                            const ToleranceConfig& cfg) {
    Rng rng(seed);
    const LFunction u_star = random_lfunction(rng, space, codomain);
    const LFunction w = random_lfunction(rng, space, codomain);
    return completeness_harness(u_star, w, p, n_terms, cfg);
}

}  // namespace lbochner
