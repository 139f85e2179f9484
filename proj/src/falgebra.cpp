// Copyright The lbochner Authors
// SPDX-License-Identifier: Apache-2.0

#include "lbochner/falgebra.hpp"

#include <algorithm>
#include <functional>
#include <ostream>

#include "lbochner/errors.hpp"

namespace lbochner {

namespace {

void require_same_dim(std::size_t a, std::size_t b) {
    if (a != b) {
        throw DimensionMismatch("dimension mismatch: " + std::to_string(a) + " vs " + std::to_string(b));
    }
}

template <typename Op>
LElement zip(const LElement& a, const LElement& b, Op op) {
    require_same_dim(a.dim(), b.dim());
    std::vector<Rational> out;
    out.reserve(a.dim());
    for (std::size_t i = 0; i < a.dim(); ++i) out.push_back(op(a[i], b[i]));
    return LElement(std::move(out));
}

template <typename Op>
LElement map(const LElement& a, Op op) {
    std::vector<Rational> out;
    out.reserve(a.dim());
    for (const auto& c : a.coords()) out.push_back(op(c));
    return LElement(std::move(out));
}

template <typename Op>
ApproxElement zip(const ApproxElement& a, const ApproxElement& b, Op op) {
    require_same_dim(a.dim(), b.dim());
    std::vector<ApproxReal> out;
    out.reserve(a.dim());
    for (std::size_t i = 0; i < a.dim(); ++i) out.push_back(op(a[i], b[i]));
    return ApproxElement(std::move(out));
}

void validate_envelope(std::span<const EnvelopeEntry> envelope, std::size_t d) {
    for (std::size_t e = 0; e < envelope.size(); ++e) {
        require_same_dim(envelope[e].epsilon.dim(), d);
        if (!leq(LElement::zero(d), envelope[e].epsilon)) {
            throw InvalidArgument("envelope epsilon " + std::to_string(e) + " is not in L+");
        }
        if (e > 0 && !leq(envelope[e].epsilon, envelope[e - 1].epsilon)) {
            throw InvalidArgument("envelope epsilons are not componentwise nonincreasing at entry " +
                                  std::to_string(e));
        }
    }
}

LElement family_infimum(std::span<const EnvelopeEntry> envelope, std::size_t d) {
    if (envelope.empty()) return LElement::zero(d);
    LElement m = envelope.front().epsilon;
    for (const auto& e : envelope) m = inf(m, e.epsilon);
    return m;
}

}  // namespace

LElement::LElement(std::vector<Rational> coords) : coords_(std::move(coords)) {
    if (coords_.empty()) throw InvalidArgument("L elements need d >= 1");
}

LElement::LElement(std::initializer_list<Rational> coords) : LElement(std::vector<Rational>(coords)) {}

LElement LElement::zero(std::size_t d) { return constant(d, Rational(0)); }
LElement LElement::unit(std::size_t d) { return constant(d, Rational(1)); }
LElement LElement::constant(std::size_t d, const Rational& c) { return LElement(std::vector<Rational>(d, c)); }

bool LElement::is_zero() const {
    return std::all_of(coords_.begin(), coords_.end(), [](const Rational& c) { return c.is_zero(); });
}

LElement operator+(const LElement& a, const LElement& b) { return zip(a, b, std::plus<>{}); }
LElement operator-(const LElement& a, const LElement& b) { return zip(a, b, std::minus<>{}); }
LElement operator*(const LElement& a, const LElement& b) { return zip(a, b, std::multiplies<>{}); }
LElement operator-(const LElement& a) { return map(a, [](const Rational& c) { return -c; }); }
LElement operator*(const Rational& c, const LElement& a) {
    return map(a, [&](const Rational& x) { return c * x; });
}

LElement add(const LElement& a, const LElement& b) { return a + b; }
LElement mul(const LElement& a, const LElement& b) { return a * b; }
LElement neg(const LElement& a) { return -a; }
LElement abs(const LElement& a) { return map(a, [](const Rational& c) { return abs(c); }); }
LElement sup(const LElement& a, const LElement& b) {
    return zip(a, b, [](const Rational& x, const Rational& y) { return max(x, y); });
}
LElement inf(const LElement& a, const LElement& b) {
    return zip(a, b, [](const Rational& x, const Rational& y) { return min(x, y); });
}
LElement sgn(const LElement& a) { return map(a, [](const Rational& c) { return Rational(c.sign()); }); }

bool leq(const LElement& a, const LElement& b) {
    require_same_dim(a.dim(), b.dim());
    for (std::size_t i = 0; i < a.dim(); ++i) {
        if (b[i] < a[i]) return false;
    }
    return true;
}

LElement pow_int(const LElement& a, unsigned long n) {
    return map(a, [n](const Rational& c) { return pow(c, n); });
}

LElement recip(const LElement& a) {
    for (std::size_t i = 0; i < a.dim(); ++i) {
        if (a[i].is_zero()) throw ZeroDivisor(i);
    }
    return map(a, [](const Rational& c) { return Rational(1) / c; });
}

std::ostream& operator<<(std::ostream& os, const LElement& a) {
    os << '(';
    for (std::size_t i = 0; i < a.dim(); ++i) os << (i ? ", " : "") << a[i];
    return os << ')';
}

void ToleranceConfig::validate() const {
    if (root_tol.sign() <= 0 || !(root_tol < compare_tol)) {
        throw InvalidArgument("tolerances must satisfy 0 < root_tol < compare_tol");
    }
}

ApproxElement::ApproxElement(const LElement& exact) {
    coords_.reserve(exact.dim());
    for (const auto& c : exact.coords()) coords_.emplace_back(c);
}

bool ApproxElement::is_exact() const {
    return std::all_of(coords_.begin(), coords_.end(), [](const ApproxReal& c) { return c.is_exact(); });
}

std::optional<LElement> ApproxElement::exact() const {
    if (!is_exact()) return std::nullopt;
    return values();
}

LElement ApproxElement::values() const {
    std::vector<Rational> out;
    out.reserve(coords_.size());
    for (const auto& c : coords_) out.push_back(c.value());
    return LElement(std::move(out));
}

LElement ApproxElement::lower() const {
    std::vector<Rational> out;
    out.reserve(coords_.size());
    for (const auto& c : coords_) out.push_back(c.lower());
    return LElement(std::move(out));
}

LElement ApproxElement::upper() const {
    std::vector<Rational> out;
    out.reserve(coords_.size());
    for (const auto& c : coords_) out.push_back(c.upper());
    return LElement(std::move(out));
}

ApproxElement operator+(const ApproxElement& a, const ApproxElement& b) { return zip(a, b, std::plus<>{}); }
ApproxElement operator-(const ApproxElement& a, const ApproxElement& b) { return zip(a, b, std::minus<>{}); }
ApproxElement operator*(const ApproxElement& a, const ApproxElement& b) {
    return zip(a, b, std::multiplies<>{});
}

ApproxElement abs(const ApproxElement& a) {
    std::vector<ApproxReal> out;
    for (const auto& c : a.coords()) out.push_back(abs(c));
    return ApproxElement(std::move(out));
}

ApproxElement sup(const ApproxElement& a, const ApproxElement& b) {
    return zip(a, b, [](const ApproxReal& x, const ApproxReal& y) {
        if (x.is_exact() && y.is_exact()) return ApproxReal(max(x.value(), y.value()));
        return ApproxReal::from_bounds(max(x.lower(), y.lower()), max(x.upper(), y.upper()));
    });
}

ApproxElement pow_int(const ApproxElement& a, unsigned long n) {
    std::vector<ApproxReal> out;
    for (const auto& c : a.coords()) out.push_back(pow_int(c, n));
    return ApproxElement(std::move(out));
}

ApproxElement pow_real(const ApproxElement& a, const Rational& r, const Rational& tol) {
    std::vector<ApproxReal> out;
    for (const auto& c : a.coords()) out.push_back(pow_real(c, r, tol));
    return ApproxElement(std::move(out));
}

ApproxElement root(const LElement& a, const Rational& r, const ToleranceConfig& cfg) {
    if (r.sign() <= 0) throw InvalidArgument("root exponent must be positive");
    for (std::size_t i = 0; i < a.dim(); ++i) {
        if (a[i].sign() < 0) {
            throw NegativeCoordinate("root of a negative coordinate " + std::to_string(i) + ": " +
                                     a[i].to_string());
        }
    }
    std::vector<ApproxReal> out;
    out.reserve(a.dim());
    for (const auto& c : a.coords()) out.push_back(pow_real(c, r, cfg.root_tol));
    return ApproxElement(std::move(out));
}

OrderComparison compare_leq(const ApproxElement& lhs, const ApproxElement& rhs, const Rational& tol) {
    require_same_dim(lhs.dim(), rhs.dim());
    OrderComparison out;
    for (std::size_t i = 0; i < lhs.dim(); ++i) {
        out.slack.push_back(rhs[i] - lhs[i]);
        if (!leq_within(lhs[i], rhs[i], tol) && !out.first_violation) {
            out.holds = false;
            out.first_violation = i;
        }
    }
    return out;
}

OrderComparison compare_equal(const ApproxElement& lhs, const ApproxElement& rhs, const Rational& tol) {
    require_same_dim(lhs.dim(), rhs.dim());
    OrderComparison out;
    for (std::size_t i = 0; i < lhs.dim(); ++i) {
        out.slack.push_back(rhs[i] - lhs[i]);
        if (!equal_within(lhs[i], rhs[i], tol) && !out.first_violation) {
            out.holds = false;
            out.first_violation = i;
        }
    }
    return out;
}

ConvergenceCertificate check_order_convergence(std::span<const LElement> seq, const LElement& limit,
                                               std::span<const EnvelopeEntry> envelope) {
    if (seq.empty()) throw InvalidArgument("empty sequence");
    const std::size_t d = limit.dim();
    for (const auto& x : seq) require_same_dim(x.dim(), d);
    validate_envelope(envelope, d);

    ConvergenceCertificate cert;
    cert.envelope.assign(envelope.begin(), envelope.end());
    cert.resolution = family_infimum(envelope, d);

    std::vector<LElement> dist;
    dist.reserve(seq.size());
    for (const auto& x : seq) dist.push_back(abs(x - limit));

    for (std::size_t e = 0; e < envelope.size(); ++e) {
        const auto& [eps, start] = envelope[e];
        for (std::size_t n = std::max<std::size_t>(start, 1); n <= seq.size(); ++n) {
            for (std::size_t i = 0; i < d; ++i) {
                if (eps[i] < dist[n - 1][i]) {
                    cert.first_violation = Violation{n, 0, i, e};
                    return cert;
                }
            }
        }
    }
    cert.passed = true;
    return cert;
}

ConvergenceCertificate check_cauchy(std::span<const LElement> seq, std::span<const EnvelopeEntry> envelope) {
    if (seq.empty()) throw InvalidArgument("empty sequence");
    const std::size_t d = seq.front().dim();
    for (const auto& x : seq) require_same_dim(x.dim(), d);
    validate_envelope(envelope, d);

    ConvergenceCertificate cert;
    cert.envelope.assign(envelope.begin(), envelope.end());
    cert.resolution = family_infimum(envelope, d);

    for (std::size_t e = 0; e < envelope.size(); ++e) {
        const auto& [eps, start] = envelope[e];
        const std::size_t first = std::max<std::size_t>(start, 1);
        for (std::size_t n = first; n <= seq.size(); ++n) {
            for (std::size_t m = n + 1; m <= seq.size(); ++m) {
                for (std::size_t i = 0; i < d; ++i) {
                    if (eps[i] < abs(seq[n - 1][i] - seq[m - 1][i])) {
                        cert.first_violation = Violation{n, m, i, e};
                        return cert;
                    }
                }
            }
        }
    }
    cert.passed = true;
    return cert;
}

}  // namespace lbochner
