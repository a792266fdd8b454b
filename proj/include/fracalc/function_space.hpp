#pragma once

#include <cmath>
#include <complex>
#include <cstdio>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "fracalc/errors.hpp"
#include "fracalc/special_functions.hpp"

namespace fracalc {

/// Anchor of the causal cut: a finite real a, or -infinity (Liouville case,
/// reachable only through closed-form rules).
class BasePoint {
public:
    static BasePoint finite(double a) { return BasePoint(true, a); }
    static BasePoint minus_infinity() { return BasePoint(false, 0.0); }

    bool is_finite() const { return finite_; }
    double value() const {
        if (!finite_) throw DomainError("base point is -infinity");
        return a_;
    }

    friend bool operator==(const BasePoint& l, const BasePoint& r) {
        return l.finite_ == r.finite_ && (!l.finite_ || l.a_ == r.a_);
    }

private:
    BasePoint(bool finite, double a) : finite_(finite), a_(a) {}
    bool finite_;
    double a_;
};

struct Constant {
    Complex value;
};

/// coeff * (x - a)^power for a finite base, coeff * x^power under -infinity.
struct Monomial {
    Complex coeff;
    Complex power;
};

/// coeff * e^(rate x)
struct Exponential {
    Complex coeff;
    Complex rate;
};

/// coeff * sin(x + phase)
struct Sinusoid {
    Complex coeff;
    double phase;
};

/// coeff * cos(x + phase)
struct Cosinusoid {
    Complex coeff;
    double phase;
};

using Term = std::variant<Constant, Monomial, Exponential, Sinusoid, Cosinusoid>;

namespace detail {

inline bool is_integer_value(Complex p) { return is_real_integer(p); }

inline Complex eval_power(double t, Complex power) {
    if (std::abs(power.imag()) > 0.0) {
        if (t > 0.0) return std::exp(power * std::log(t));
        if (t == 0.0 && power.real() > 0.0) return Complex(0.0, 0.0);
        throw DomainError("complex power of a non-positive argument");
    }
    const double p = power.real();
    if (t > 0.0) return Complex(std::pow(t, p), 0.0);
    if (is_integer_value(power)) return Complex(std::pow(t, std::round(p)), 0.0);
    if (t == 0.0 && p > 0.0) return Complex(0.0, 0.0);
    throw DomainError("non-integer power of a negative argument");
}

inline Complex falling_product(Complex p, int k) {
    Complex acc(1.0, 0.0);
    for (int j = 0; j < k; ++j) acc *= p - static_cast<double>(j);
    return acc;
}

}  // namespace detail

/// A finite sum of causal terms anchored at one base point. Immutable after
/// construction; eval(x) is identically zero for x <= a when a is finite.
class CausalFunction {
public:
    static CausalFunction constant(BasePoint base, Complex c) {
        return CausalFunction(base, {Term{Constant{c}}});
    }

    /// Validates the integrability bound Re(power) > -1 required of inputs.
    static CausalFunction monomial(BasePoint base, Complex coeff, Complex power) {
        if (power.real() <= -1.0)
            throw DomainError("monomial exponent must satisfy Re(p) > -1");
        return CausalFunction(base, {Term{Monomial{coeff, power}}});
    }

    static CausalFunction exponential(BasePoint base, Complex coeff, Complex rate) {
        if (rate == Complex(0.0, 0.0))
            throw DomainError("exponential rate must be nonzero");
        return CausalFunction(base, {Term{Exponential{coeff, rate}}});
    }

    static CausalFunction sinusoid(BasePoint base, Complex coeff, double phase) {
        return CausalFunction(base, {Term{Sinusoid{coeff, phase}}});
    }

    static CausalFunction cosinusoid(BasePoint base, Complex coeff, double phase) {
        return CausalFunction(base, {Term{Cosinusoid{coeff, phase}}});
    }

    static CausalFunction zero(BasePoint base) { return CausalFunction(base, {}); }

    /// Internal assembly; skips input validation so operator results may
    /// carry exponents outside the integrable input class.
    static CausalFunction from_terms(BasePoint base, std::vector<Term> terms) {
        return CausalFunction(base, std::move(terms));
    }

    const BasePoint& base() const { return base_; }
    const std::vector<Term>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    Complex eval(double x) const {
        if (base_.is_finite() && x <= base_.value()) return Complex(0.0, 0.0);
        const double t = base_.is_finite() ? x - base_.value() : x;
        Complex acc(0.0, 0.0);
        for (const Term& term : terms_) {
            acc += std::visit(
                [&](const auto& node) -> Complex {
                    using T = std::decay_t<decltype(node)>;
                    if constexpr (std::is_same_v<T, Constant>) {
                        return node.value;
                    } else if constexpr (std::is_same_v<T, Monomial>) {
                        return node.coeff * detail::eval_power(t, node.power);
                    } else if constexpr (std::is_same_v<T, Exponential>) {
                        return node.coeff * std::exp(node.rate * x);
                    } else if constexpr (std::is_same_v<T, Sinusoid>) {
                        return node.coeff * std::sin(x + node.phase);
                    } else {
                        return node.coeff * std::cos(x + node.phase);
                    }
                },
                term);
        }
        return acc;
    }

    friend bool operator==(const CausalFunction& l, const CausalFunction& r) {
        if (!(l.base_ == r.base_) || l.terms_.size() != r.terms_.size()) return false;
        for (std::size_t i = 0; i < l.terms_.size(); ++i) {
            const bool same = std::visit(
                [](const auto& a, const auto& b) -> bool {
                    using A = std::decay_t<decltype(a)>;
                    using B = std::decay_t<decltype(b)>;
                    if constexpr (!std::is_same_v<A, B>) {
                        return false;
                    } else if constexpr (std::is_same_v<A, Constant>) {
                        return a.value == b.value;
                    } else if constexpr (std::is_same_v<A, Monomial>) {
                        return a.coeff == b.coeff && a.power == b.power;
                    } else if constexpr (std::is_same_v<A, Exponential>) {
                        return a.coeff == b.coeff && a.rate == b.rate;
                    } else {
                        return a.coeff == b.coeff && a.phase == b.phase;
                    }
                },
                l.terms_[i], r.terms_[i]);
            if (!same) return false;
        }
        return true;
    }

private:
    CausalFunction(BasePoint base, std::vector<Term> terms)
        : base_(base), terms_(std::move(terms)) {
        merge_terms();
    }

    // Flattening-only simplification: merge terms with identical shape,
    // drop exact-zero coefficients.
    void merge_terms() {
        std::vector<Term> merged;
        for (const Term& term : terms_) {
            bool absorbed = false;
            for (Term& have : merged) {
                if (try_merge(have, term)) {
                    absorbed = true;
                    break;
                }
            }
            if (!absorbed) merged.push_back(term);
        }
        std::erase_if(merged, [](const Term& t) {
            return std::visit(
                [](const auto& node) -> bool {
                    using T = std::decay_t<decltype(node)>;
                    if constexpr (std::is_same_v<T, Constant>)
                        return node.value == Complex(0.0, 0.0);
                    else
                        return node.coeff == Complex(0.0, 0.0);
                },
                t);
        });
        terms_ = std::move(merged);
    }

    static bool try_merge(Term& into, const Term& from) {
        return std::visit(
            [](auto& a, const auto& b) -> bool {
                using A = std::decay_t<decltype(a)>;
                using B = std::decay_t<decltype(b)>;
                if constexpr (!std::is_same_v<A, B>) {
                    return false;
                } else if constexpr (std::is_same_v<A, Constant>) {
                    a.value += b.value;
                    return true;
                } else if constexpr (std::is_same_v<A, Monomial>) {
                    if (a.power != b.power) return false;
                    a.coeff += b.coeff;
                    return true;
                } else if constexpr (std::is_same_v<A, Exponential>) {
                    if (a.rate != b.rate) return false;
                    a.coeff += b.coeff;
                    return true;
                } else {
                    if (a.phase != b.phase) return false;
                    a.coeff += b.coeff;
                    return true;
                }
            },
            into, from);
    }

    BasePoint base_;
    std::vector<Term> terms_;
};

namespace detail {

/// Power rule applied without the kernel-integrability check. Used by the
/// integer fast path and by the outer derivative of the left composition,
/// which legitimately leave the integrable input class.
inline CausalFunction differentiate_unchecked(const CausalFunction& f, int k) {
    if (k == 0) return f;
    std::vector<Term> out;
    for (const Term& term : f.terms()) {
        std::visit(
            [&](const auto& node) {
                using T = std::decay_t<decltype(node)>;
                if constexpr (std::is_same_v<T, Constant>) {
                    // drops
                } else if constexpr (std::is_same_v<T, Monomial>) {
                    if (is_integer_value(node.power) && std::round(node.power.real()) < k)
                        return;
                    out.push_back(Term{Monomial{node.coeff * falling_product(node.power, k),
                                                node.power - static_cast<double>(k)}});
                } else if constexpr (std::is_same_v<T, Exponential>) {
                    Complex scale(1.0, 0.0);
                    for (int j = 0; j < k; ++j) scale *= node.rate;
                    out.push_back(Term{Exponential{node.coeff * scale, node.rate}});
                } else if constexpr (std::is_same_v<T, Sinusoid>) {
                    out.push_back(Term{Sinusoid{node.coeff, node.phase + k * kPi / 2.0}});
                } else {
                    out.push_back(Term{Cosinusoid{node.coeff, node.phase + k * kPi / 2.0}});
                }
            },
            term);
    }
    return CausalFunction::from_terms(f.base(), std::move(out));
}

}  // namespace detail

/// Symbolic k-th derivative. Every monomial exponent p must satisfy p >= k,
/// or be an integer below k (the term vanishes); anything else would leave a
/// kernel-non-integrable factor at the base point.
inline CausalFunction differentiate(const CausalFunction& f, int k) {
    if (k < 0) throw DomainError("derivative order must be non-negative");
    if (k == 0) return f;
    for (const Term& term : f.terms()) {
        if (const auto* mono = std::get_if<Monomial>(&term)) {
            if (detail::is_integer_value(mono->power)) continue;
            if (mono->power.real() < static_cast<double>(k))
                throw NonIntegrableDerivative(
                    "k-th derivative of a monomial with non-integer exponent below k");
        }
    }
    return detail::differentiate_unchecked(f, k);
}

/// Weighted sum of functions sharing one base point.
inline CausalFunction linear_combine(std::span<const Complex> coeffs,
                                     std::span<const CausalFunction> fs) {
    if (coeffs.size() != fs.size())
        throw DomainError("linear_combine: one coefficient per function required");
    if (fs.empty()) throw DomainError("linear_combine: empty input");
    const BasePoint base = fs.front().base();
    std::vector<Term> out;
    for (std::size_t i = 0; i < fs.size(); ++i) {
        if (!(fs[i].base() == base))
            throw MixedBasePoints("linear_combine: functions anchor at different base points");
        for (Term term : fs[i].terms()) {
            std::visit(
                [&](auto& node) {
                    using T = std::decay_t<decltype(node)>;
                    if constexpr (std::is_same_v<T, Constant>)
                        node.value *= coeffs[i];
                    else
                        node.coeff *= coeffs[i];
                },
                term);
            out.push_back(term);
        }
    }
    return CausalFunction::from_terms(base, std::move(out));
}

namespace detail {

inline std::string format_number(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

inline std::string format_scalar(Complex c) {
    if (c.imag() == 0.0) return format_number(c.real());
    return "(" + format_number(c.real()) + (c.imag() < 0 ? "" : "+") + format_number(c.imag()) +
           "i)";
}

}  // namespace detail

/// Textual form of a function. Parser-reachable trees (real coefficients,
/// phase-free sinusoids) round-trip through parse(); anything else formats
/// for display only.
inline std::string format(const CausalFunction& f) {
    if (f.is_zero()) return "0";
    std::string out;
    bool first = true;
    for (const Term& term : f.terms()) {
        Complex coeff = std::visit(
            [](const auto& node) -> Complex {
                using T = std::decay_t<decltype(node)>;
                if constexpr (std::is_same_v<T, Constant>)
                    return node.value;
                else
                    return node.coeff;
            },
            term);
        bool negated = coeff.imag() == 0.0 && coeff.real() < 0.0;
        if (first) {
            if (negated) out += "-";
            first = false;
        } else {
            out += negated ? " - " : " + ";
        }
        if (negated) coeff = -coeff;
        const std::string cs = detail::format_scalar(coeff);
        std::visit(
            [&](const auto& node) {
                using T = std::decay_t<decltype(node)>;
                if constexpr (std::is_same_v<T, Constant>) {
                    out += cs;
                } else if constexpr (std::is_same_v<T, Monomial>) {
                    if (cs != "1") out += cs + "*";
                    out += "x";
                    if (node.power != Complex(1.0, 0.0)) {
                        out += "^";
                        out += node.power.imag() == 0.0 ? detail::format_number(node.power.real())
                                                        : detail::format_scalar(node.power);
                    }
                } else if constexpr (std::is_same_v<T, Exponential>) {
                    if (cs != "1") out += cs + "*";
                    out += "exp(" + detail::format_scalar(node.rate) + "*x)";
                } else if constexpr (std::is_same_v<T, Sinusoid>) {
                    if (cs != "1") out += cs + "*";
                    out += node.phase == 0.0
                               ? "sin(x)"
                               : "sin(x+" + detail::format_number(node.phase) + ")";
                } else {
                    if (cs != "1") out += cs + "*";
                    out += node.phase == 0.0
                               ? "cos(x)"
                               : "cos(x+" + detail::format_number(node.phase) + ")";
                }
            },
            term);
    }
    return out;
}

}  // namespace fracalc
