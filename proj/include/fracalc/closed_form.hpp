#pragma once

#include <optional>

#include "fracalc/function_space.hpp"
#include "fracalc/special_functions.hpp"

namespace fracalc {

enum class RuleKind { monomial, exponential, trig, linearity };

/// Result of attempting a symbolic evaluation: the transformed function when
/// every leaf had a rule, otherwise empty.
struct RuleOutcome {
    std::optional<CausalFunction> result;
    RuleKind rule = RuleKind::linearity;

    bool applicable() const { return result.has_value(); }
};

/// Monomial shift rule:  (x-a)^p  ->  Gamma(p+1)/Gamma(p+s+1) (x-a)^{p+s}.
/// A pole of the denominator zeroes the coefficient (via recip_gamma), which
/// is exactly the vanishing of integer-order derivatives of low powers.
inline CausalFunction monomial_rule(Complex p, Complex s, double a) {
    if (p.real() <= -1.0)
        throw DomainError("monomial rule requires Re(p) > -1");
    if (is_pole(p + s + 1.0)) return CausalFunction::zero(BasePoint::finite(a));
    if (p.real() + s.real() <= -1.0)
        throw DomainError("monomial rule requires Re(p) + Re(s) > -1");
    const Complex coeff = gamma_ratio(p + 1.0, p + s + 1.0);
    return CausalFunction::from_terms(BasePoint::finite(a), {Term{Monomial{coeff, p + s}}});
}

namespace detail {

inline Complex integer_power(Complex base, long long n) {
    Complex acc(1.0, 0.0);
    const bool invert = n < 0;
    for (long long i = 0, m = invert ? -n : n; i < m; ++i) acc *= base;
    return invert ? 1.0 / acc : acc;
}

// k^{-n}; integer orders by repeated multiplication (valid for any k != 0),
// otherwise the principal branch with negative real bases rejected.
inline Complex rate_power(Complex k, Complex n) {
    if (is_real_integer(n)) return integer_power(k, -std::llround(n.real()));
    if (k.imag() == 0.0 && k.real() < 0.0)
        throw DomainError("non-integer order of a negative exponential rate has no principal value");
    return std::exp(-n * std::log(k));
}

}  // namespace detail

/// Liouville eigenvalue rule:  e^{kx} -> k^{-n} e^{kx}, base -infinity only.
inline CausalFunction exponential_rule(Complex k, Complex n, BasePoint base) {
    if (base.is_finite())
        throw BasePointError("exponential rule holds only for base point -infinity");
    if (k == Complex(0.0, 0.0)) throw DomainError("exponential rate must be nonzero");
    return CausalFunction::from_terms(
        base, {Term{Exponential{detail::rate_power(k, n), k}}});
}

enum class TrigKind { sine, cosine };

/// Phase rotation rule: sin(x+phi) -> sin(x+phi - n pi/2), real n only.
inline CausalFunction trig_rule(TrigKind kind, double phase, Complex n, BasePoint base) {
    if (base.is_finite())
        throw BasePointError("trig rotation rule holds only for base point -infinity");
    if (std::abs(n.imag()) > 0.0)
        throw UnsupportedOrder("complex-order trig rotation is not defined here");
    const double shifted = phase - n.real() * kPi / 2.0;
    if (kind == TrigKind::sine)
        return CausalFunction::from_terms(base, {Term{Sinusoid{Complex(1.0, 0.0), shifted}}});
    return CausalFunction::from_terms(base, {Term{Cosinusoid{Complex(1.0, 0.0), shifted}}});
}

namespace detail {

inline std::optional<Term> closed_form_term(const Term& term, Complex s, const BasePoint& base) {
    return std::visit(
        [&](const auto& node) -> std::optional<Term> {
            using T = std::decay_t<decltype(node)>;
            if constexpr (std::is_same_v<T, Constant>) {
                if (!base.is_finite()) return std::nullopt;
                if (!is_pole(s + 1.0) && s.real() <= -1.0) return std::nullopt;
                const Complex coeff = node.value * gamma_ratio(Complex(1.0, 0.0), s + 1.0);
                return Term{Monomial{coeff, s}};
            } else if constexpr (std::is_same_v<T, Monomial>) {
                if (!base.is_finite()) return std::nullopt;
                if (!is_pole(node.power + s + 1.0) &&
                    node.power.real() + s.real() <= -1.0)
                    return std::nullopt;
                const Complex coeff =
                    node.coeff * gamma_ratio(node.power + 1.0, node.power + s + 1.0);
                return Term{Monomial{coeff, node.power + s}};
            } else if constexpr (std::is_same_v<T, Exponential>) {
                if (base.is_finite()) return std::nullopt;
                if (!is_real_integer(s) && node.rate.imag() == 0.0 && node.rate.real() < 0.0)
                    return std::nullopt;
                return Term{Exponential{node.coeff * rate_power(node.rate, s), node.rate}};
            } else if constexpr (std::is_same_v<T, Sinusoid>) {
                if (base.is_finite() || std::abs(s.imag()) > 0.0) return std::nullopt;
                return Term{Sinusoid{node.coeff, node.phase - s.real() * kPi / 2.0}};
            } else {
                if (base.is_finite() || std::abs(s.imag()) > 0.0) return std::nullopt;
                return Term{Cosinusoid{node.coeff, node.phase - s.real() * kPi / 2.0}};
            }
        },
        term);
}

}  // namespace detail

/// Distribute the leaf rules over a sum. Not-applicable as soon as one leaf
/// has no rule under its base point; partial symbolic/numeric mixing would
/// blur the result's provenance.
inline RuleOutcome try_closed_form(const CausalFunction& f, Complex s) {
    std::vector<Term> out;
    RuleKind kind = RuleKind::linearity;
    for (const Term& term : f.terms()) {
        auto mapped = detail::closed_form_term(term, s, f.base());
        if (!mapped) return RuleOutcome{std::nullopt, RuleKind::linearity};
        kind = std::visit(
            [](const auto& node) -> RuleKind {
                using T = std::decay_t<decltype(node)>;
                if constexpr (std::is_same_v<T, Monomial> || std::is_same_v<T, Constant>)
                    return RuleKind::monomial;
                else if constexpr (std::is_same_v<T, Exponential>)
                    return RuleKind::exponential;
                else
                    return RuleKind::trig;
            },
            term);
        out.push_back(*mapped);
    }
    if (f.terms().size() != 1) kind = RuleKind::linearity;
    return RuleOutcome{CausalFunction::from_terms(f.base(), std::move(out)), kind};
}

}  // namespace fracalc
