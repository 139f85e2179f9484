// Copyright The lbochner Authors
// SPDX-License-Identifier: Apache-2.0

#include "lbochner/lmodule.hpp"

#include <algorithm>
#include <sstream>

#include "lbochner/errors.hpp"
#include "lbochner/random.hpp"

namespace lbochner {

namespace {

void require_shape(std::size_t rank_a, std::size_t d_a, std::size_t rank_b, std::size_t d_b) {
    if (rank_a != rank_b || d_a != d_b) {
        throw DimensionMismatch("shape mismatch: " + std::to_string(rank_a) + "x" + std::to_string(d_a) + " vs " +
                                std::to_string(rank_b) + "x" + std::to_string(d_b));
    }
}

std::size_t entries_dim(std::span<const LElement> entries) {
    if (entries.empty()) throw InvalidArgument("module vectors need rank >= 1");
    const std::size_t d = entries.front().dim();
    for (const auto& e : entries) {
        if (e.dim() != d) throw DimensionMismatch("module entries disagree on d");
    }
    return d;
}

LElement sum_of_squares(std::span<const LElement> entries) {
    LElement s = LElement::zero(entries_dim(entries));
    for (const auto& e : entries) s = s + e * e;
    return s;
}

// Exact SUP/ONE norm.
LElement exact_norm(NormKind kind, std::span<const LElement> entries) {
    LElement out = LElement::zero(entries_dim(entries));
    for (const auto& e : entries) out = kind == NormKind::Sup ? sup(out, abs(e)) : out + abs(e);
    return out;
}

std::string describe(const ApproxElement& a) {
    std::ostringstream os;
    os << '(';
    for (std::size_t i = 0; i < a.dim(); ++i) os << (i ? ", " : "") << a[i];
    os << ')';
    return os.str();
}

}  // namespace

NormKind dual_kind(NormKind kind) {
    switch (kind) {
        case NormKind::Sup: return NormKind::One;
        case NormKind::One: return NormKind::Sup;
        case NormKind::Two: return NormKind::Two;
    }
    return NormKind::Two;
}

std::string_view to_string(NormKind kind) {
    switch (kind) {
        case NormKind::Sup: return "sup";
        case NormKind::One: return "one";
        case NormKind::Two: return "two";
    }
    return "?";
}

NormKind parse_norm_kind(std::string_view text) {
    if (text == "sup") return NormKind::Sup;
    if (text == "one") return NormKind::One;
    if (text == "two") return NormKind::Two;
    throw ParseError("unknown norm kind '" + std::string(text) + "' (expected sup, one or two)");
}

ModuleVector::ModuleVector(std::vector<LElement> entries) : entries_(std::move(entries)) { entries_dim(entries_); }

ModuleVector ModuleVector::zero(std::size_t rank, std::size_t d) {
    return ModuleVector(std::vector<LElement>(rank, LElement::zero(d)));
}

ModuleVector ModuleVector::basis(std::size_t rank, std::size_t i, const LElement& x) {
    std::vector<LElement> entries(rank, LElement::zero(x.dim()));
    entries.at(i) = x;
    return ModuleVector(std::move(entries));
}

bool ModuleVector::is_zero() const {
    return std::all_of(entries_.begin(), entries_.end(), [](const LElement& e) { return e.is_zero(); });
}

ModuleVector operator+(const ModuleVector& a, const ModuleVector& b) {
    require_shape(a.rank(), a.d(), b.rank(), b.d());
    std::vector<LElement> out;
    for (std::size_t i = 0; i < a.rank(); ++i) out.push_back(a[i] + b[i]);
    return ModuleVector(std::move(out));
}

ModuleVector operator-(const ModuleVector& a, const ModuleVector& b) {
    require_shape(a.rank(), a.d(), b.rank(), b.d());
    std::vector<LElement> out;
    for (std::size_t i = 0; i < a.rank(); ++i) out.push_back(a[i] - b[i]);
    return ModuleVector(std::move(out));
}

ModuleVector operator-(const ModuleVector& a) {
    std::vector<LElement> out;
    for (const auto& e : a.entries()) out.push_back(-e);
    return ModuleVector(std::move(out));
}

ModuleVector operator*(const LElement& lambda, const ModuleVector& x) {
    std::vector<LElement> out;
    for (const auto& e : x.entries()) out.push_back(lambda * e);
    return ModuleVector(std::move(out));
}

ModuleVector operator*(const Rational& c, const ModuleVector& x) {
    std::vector<LElement> out;
    for (const auto& e : x.entries()) out.push_back(c * e);
    return ModuleVector(std::move(out));
}

Functional::Functional(const ModuleVector& coeffs)
    : coeffs_(coeffs.entries().begin(), coeffs.entries().end()) {}

Functional Functional::zero(std::size_t rank, std::size_t d) {
    return Functional(std::vector<LElement>(rank, LElement::zero(d)));
}

bool Functional::is_zero() const {
    return std::all_of(coeffs_.begin(), coeffs_.end(), [](const LElement& e) { return e.is_zero(); });
}

Functional operator+(const Functional& a, const Functional& b) {
    return Functional(a.as_vector() + b.as_vector());
}

Functional operator*(const LElement& lambda, const Functional& phi) { return Functional(lambda * phi.as_vector()); }

LElement apply(const Functional& phi, const ModuleVector& x) {
    require_shape(phi.rank(), phi.d(), x.rank(), x.d());
    LElement out = LElement::zero(x.d());
    for (std::size_t i = 0; i < x.rank(); ++i) out = out + phi[i] * x[i];
    return out;
}

ApproxElement norm(NormKind kind, std::span<const LElement> entries, const ToleranceConfig& cfg) {
    if (kind == NormKind::Two) return root(sum_of_squares(entries), Rational(1, 2), cfg);
    return ApproxElement(exact_norm(kind, entries));
}

ApproxElement norm(const ModuleSpace& space, const ModuleVector& x, const ToleranceConfig& cfg) {
    require_shape(space.rank, space.d, x.rank(), x.d());
    return norm(space.kind, x.entries(), cfg);
}

ApproxElement norm_pow(NormKind kind, std::span<const LElement> entries, const Rational& p,
                       const ToleranceConfig& cfg) {
    if (p.sign() <= 0) throw InvalidArgument("norm power must be positive");
    if (kind == NormKind::Two) {
        const LElement s = sum_of_squares(entries);
        return pow_real(ApproxElement(s), p / Rational(2), cfg.root_tol);
    }
    const LElement n = exact_norm(kind, entries);
    if (p.is_integer() && p.num().fits_ulong_p()) return ApproxElement(pow_int(n, p.num().get_ui()));
    return pow_real(ApproxElement(n), p, cfg.root_tol);
}

bool norm_at_least(NormKind kind, std::span<const LElement> entries, std::size_t coord, const Rational& bound) {
    if (bound.sign() <= 0) return true;
    if (kind == NormKind::Two) return sum_of_squares(entries)[coord] >= bound * bound;
    return exact_norm(kind, entries)[coord] >= bound;
}

bool norm_at_most(NormKind kind, std::span<const LElement> entries, const LElement& bound) {
    if (bound.dim() != entries_dim(entries)) throw DimensionMismatch("bound and vector disagree on d");
    if (kind != NormKind::Two) return leq(exact_norm(kind, entries), bound);
    const LElement s = sum_of_squares(entries);
    for (std::size_t j = 0; j < bound.dim(); ++j) {
        if (bound[j].sign() < 0 || s[j] > bound[j] * bound[j]) return false;
    }
    return true;
}

ApproxElement dual_norm(const Functional& phi, NormKind primal, const ToleranceConfig& cfg) {
    return norm(dual_kind(primal), phi.coeffs(), cfg);
}

ModuleVector alignment_vector(const Functional& phi, NormKind primal, const ToleranceConfig& cfg) {
    const std::size_t k = phi.rank();
    const std::size_t d = phi.d();
    switch (primal) {
        case NormKind::Sup: {
            std::vector<LElement> entries;
            for (const auto& c : phi.coeffs()) entries.push_back(sgn(c));
            return ModuleVector(std::move(entries));
        }
        case NormKind::One: {
            std::vector<std::vector<Rational>> cols(k, std::vector<Rational>(d));
            for (std::size_t j = 0; j < d; ++j) {
                std::size_t best = 0;
                for (std::size_t i = 1; i < k; ++i) {
                    if (abs(phi[i][j]) > abs(phi[best][j])) best = i;
                }
                cols[best][j] = Rational(phi[best][j].sign());
            }
            std::vector<LElement> entries;
            for (auto& c : cols) entries.emplace_back(std::move(c));
            return ModuleVector(std::move(entries));
        }
        case NormKind::Two: {
            const LElement bound = norm(NormKind::Two, phi.coeffs(), cfg).upper();
            std::vector<Rational> scale(d);
            for (std::size_t j = 0; j < d; ++j) {
                scale[j] = bound[j].is_zero() ? Rational(0) : Rational(1) / bound[j];
            }
            return LElement(std::move(scale)) * phi.as_vector();
        }
    }
    return ModuleVector::zero(k, d);
}

LElement operator_norm_sample_lower_bound(const Functional& phi, NormKind primal, std::size_t trials,
                                          std::uint64_t seed, bool include_alignment,
                                          const ToleranceConfig& cfg) {
    if (trials == 0) throw InvalidArgument("trials must be >= 1");
    const std::size_t k = phi.rank();
    const std::size_t d = phi.d();
    LElement best = LElement::zero(d);

    // |φ(x)| / upper(‖x‖) per coordinate is a certified lower bound.
    auto consider = [&](const ModuleVector& x) {
        const LElement value = abs(apply(phi, x));
        const LElement bound = norm(primal, x.entries(), cfg).upper();
        std::vector<Rational> candidate(d);
        for (std::size_t j = 0; j < d; ++j) {
            candidate[j] = bound[j].is_zero() ? Rational(0) : value[j] / bound[j];
        }
        best = sup(best, LElement(std::move(candidate)));
    };

    if (include_alignment) consider(alignment_vector(phi, primal, cfg));
    Rng rng(seed);
    for (std::size_t t = 0; t < trials; ++t) {
        std::vector<LElement> entries;
        for (std::size_t i = 0; i < k; ++i) entries.push_back(rng.element(d, -5, 5, 4));
        consider(ModuleVector(std::move(entries)));
    }
    return best;
}

NormAxiomReport check_norm_axioms(const ModuleSpace& space, std::span<const NormSample> samples,
                                  const ToleranceConfig& cfg) {
    NormAxiomReport report;
    auto fail = [](AxiomOutcome& outcome, std::size_t sample, std::optional<std::size_t> coord, std::string detail) {
        if (!outcome.passed) return;
        outcome.passed = false;
        outcome.witness = AxiomWitness{sample, coord, std::move(detail)};
    };

    for (std::size_t s = 0; s < samples.size(); ++s) {
        const auto& [lambda, x, y] = samples[s];
        if (!x.fits(space) || !y.fits(space) || lambda.dim() != space.d) {
            throw DimensionMismatch("norm sample " + std::to_string(s) + " does not fit the module space");
        }
        const ApproxElement nx = norm(space, x, cfg);
        const ApproxElement ny = norm(space, y, cfg);

        for (const auto* v : {&x, &y}) {
            const ApproxElement n = v == &x ? nx : ny;
            const auto exact = n.exact();
            const bool norm_zero = exact && exact->is_zero();
            ++report.definiteness.checked;
            if (norm_zero != v->is_zero()) {
                fail(report.definiteness, s, std::nullopt,
                     norm_zero ? "nonzero vector with zero norm" : "zero vector with nonzero norm " + describe(n));
            }
        }

        const ApproxElement lhs = norm(space, lambda * x, cfg);
        const ApproxElement rhs = ApproxElement(abs(lambda)) * nx;
        const auto homog = compare_equal(lhs, rhs, cfg.compare_tol);
        ++report.homogeneity.checked;
        if (!homog.holds) {
            fail(report.homogeneity, s, homog.first_violation, describe(lhs) + " != |lambda|*" + describe(nx));
        }

        const ApproxElement nsum = norm(space, x + y, cfg);
        const auto tri = compare_leq(nsum, nx + ny, cfg.compare_tol);
        ++report.triangle.checked;
        if (!tri.holds) {
            fail(report.triangle, s, tri.first_violation, describe(nsum) + " > " + describe(nx + ny));
        }
    }
    return report;
}

}  // namespace lbochner
