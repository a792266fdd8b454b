#pragma once

#include <optional>
#include <vector>

#include "fracalc/closed_form.hpp"
#include "fracalc/oracle.hpp"
#include "fracalc/quadrature.hpp"

namespace fracalc {

enum class OrderClass { positive_part, negative_part, zero, pure_imaginary };

/// Operator order with its dispatch classification: s-integral for
/// Re(s) > 0, |s|-derivative for Re(s) < 0, identity at zero.
class Order {
public:
    Order(Complex s) : s_(s) {
        if (s == Complex(0.0, 0.0))
            cls_ = OrderClass::zero;
        else if (s.real() > 0.0)
            cls_ = OrderClass::positive_part;
        else if (s.real() < 0.0)
            cls_ = OrderClass::negative_part;
        else
            cls_ = OrderClass::pure_imaginary;
    }
    Order(double s) : Order(Complex(s, 0.0)) {}

    Complex value() const { return s_; }
    OrderClass cls() const { return cls_; }

private:
    Complex s_;
    OrderClass cls_;
};

enum class Method { closed_form, quadrature, composition };
enum class Convention { right, left };
enum class ForcedMethod { automatic, closed, quadrature };

struct OperatorResult {
    Complex value;
    Method method;
    double est_error;
    /// Set when the order sat on the imaginary axis, where the operator is
    /// defined here by the composition R^{1+s} D^1 rather than by a source
    /// formula.
    bool imaginary_extension = false;
};

struct ApplyOptions {
    int nodes = 64;
    ForcedMethod force = ForcedMethod::automatic;
    /// Composition depth override for the derivative paths; defaults to the
    /// smallest k with Re(k - m) > 0.
    std::optional<int> k_override = std::nullopt;
};

inline const char* method_name(Method m) {
    switch (m) {
        case Method::closed_form:
            return "closed_form";
        case Method::quadrature:
            return "quadrature";
        default:
            return "composition";
    }
}

namespace detail {

inline OperatorResult exact_result(Complex value) {
    return OperatorResult{value, Method::closed_form, 0.0};
}

inline OperatorResult numeric_result(Complex value, Method method, double est) {
    const double floor = std::numeric_limits<double>::epsilon() * (1.0 + std::abs(value));
    return OperatorResult{value, method, std::max(est, floor)};
}

inline bool is_zero_power(Complex p) {
    return std::abs(p.imag()) <= kPoleTolerance && std::abs(p.real()) <= kPoleTolerance;
}

// Convention-aware symbolic evaluation. The right derivative annihilates
// constant terms (and (x-a)^0, which is the same function); monomials with
// strictly positive exponent vanish at the base point, so there the shift
// rule gives the right derivative as well as the left one.
inline std::optional<CausalFunction> closed_form_for(const CausalFunction& f, Complex s,
                                                     Convention conv) {
    if (conv == Convention::right && s.real() < 0.0 && f.base().is_finite()) {
        std::vector<Term> keep;
        for (const Term& term : f.terms()) {
            if (std::holds_alternative<Constant>(term)) continue;
            if (const auto* mono = std::get_if<Monomial>(&term)) {
                if (is_zero_power(mono->power)) continue;
                if (mono->power.real() < 0.0) return std::nullopt;
            }
            keep.push_back(term);
        }
        RuleOutcome ro =
            try_closed_form(CausalFunction::from_terms(f.base(), std::move(keep)), s);
        return ro.result;
    }
    return try_closed_form(f, s).result;
}

}  // namespace detail

OperatorResult apply(const CausalFunction& f, Order s, double x,
                     Convention conv = Convention::right, ApplyOptions opts = {});

/// D_R^m = R^{k-m} D^k: differentiate symbolically, then integrate the
/// fractional remainder. Where every term has a shift/eigenvalue rule the
/// composition collapses to an exact symbolic result.
inline OperatorResult right_derivative(const CausalFunction& f, Order m, double x,
                                       ApplyOptions opts = {}) {
    if (m.value().real() <= 0.0)
        throw OrderError("right derivative requires Re(m) > 0");
    const Complex s = -m.value();
    if (opts.force != ForcedMethod::quadrature) {
        if (auto co = detail::closed_form_for(f, s, Convention::right))
            return detail::exact_result(co->eval(x));
        if (opts.force == ForcedMethod::closed)
            throw DomainError("no closed-form rule applies to this input");
    }
    const int k = opts.k_override
                      ? *opts.k_override
                      : static_cast<int>(std::floor(m.value().real())) + 1;
    if (!(static_cast<double>(k) - m.value().real() > 0.0))
        throw OrderError("composition depth k must exceed Re(m)");
    const CausalFunction g = differentiate(f, k);
    if (g.is_zero()) return detail::exact_result(Complex(0.0, 0.0));
    ApplyOptions inner_opts = opts;
    inner_opts.k_override = std::nullopt;
    const OperatorResult inner =
        apply(g, Order(static_cast<double>(k) + s), x, Convention::right, inner_opts);
    if (inner.method == Method::closed_form) return inner;
    return detail::numeric_result(inner.value, Method::composition, inner.est_error);
}

namespace detail {

struct DifferenceStencil {
    int reach;
    int offsets[5];
    double coeffs[5];
    int taps;
};

// Central differences, truncation O(h^2).
inline DifferenceStencil central_stencil(int k) {
    switch (k) {
        case 1:
            return {1, {-1, 1}, {-0.5, 0.5}, 2};
        case 2:
            return {1, {-1, 0, 1}, {1.0, -2.0, 1.0}, 3};
        case 3:
            return {2, {-2, -1, 1, 2}, {-0.5, 1.0, -1.0, 0.5}, 4};
        case 4:
            return {2, {-2, -1, 0, 1, 2}, {1.0, -4.0, 6.0, -4.0, 1.0}, 5};
        default:
            throw DomainError("difference stencils implemented for k in 1..4");
    }
}

}  // namespace detail

/// D_L^m = D^k R^{k-m}: integrate first, differentiate after. Symbolic when
/// the inner integral has a closed form; otherwise the outer derivative acts
/// on quadrature values by central differences. For Re(m) < 1 the reduced
/// one-derivative form D^1 R^{1-m} is used regardless of k.
inline OperatorResult left_derivative(const CausalFunction& f, Order m, double x,
                                      ApplyOptions opts = {}) {
    if (m.value().real() <= 0.0)
        throw OrderError("left derivative requires Re(m) > 0");
    const Complex s = -m.value();
    const int k = opts.k_override
                      ? *opts.k_override
                      : static_cast<int>(std::floor(m.value().real())) + 1;
    if (!(static_cast<double>(k) - m.value().real() > 0.0))
        throw OrderError("composition depth k must exceed Re(m)");

    if (opts.force != ForcedMethod::quadrature) {
        RuleOutcome inner = try_closed_form(f, static_cast<double>(k) + s);
        if (inner.applicable())
            return detail::exact_result(
                detail::differentiate_unchecked(*inner.result, k).eval(x));
        if (opts.force == ForcedMethod::closed)
            throw DomainError("no closed-form rule applies to this input");
    }

    if (!f.base().is_finite())
        throw BasePointError("numeric left derivative requires a finite base point");
    const double a = f.base().value();
    const int k_fd = m.value().real() < 1.0 ? 1 : k;
    const Complex inner_order = static_cast<double>(k_fd) + s;
    const auto stencil = detail::central_stencil(k_fd);
    const double h =
        k_fd == 1 ? std::max(1e-5, 1e-5 * std::abs(x - a))
                  : std::pow(std::numeric_limits<double>::epsilon(), 1.0 / (k_fd + 2)) *
                        std::max(1.0, std::abs(x - a));
    if (!(x - stencil.reach * h > a))
        throw DomainError("evaluation too close to the base point for the difference stencil");

    Complex acc(0.0, 0.0);
    double inner_est = 0.0;
    for (int t = 0; t < stencil.taps; ++t) {
        const QuadResult q =
            frac_integral(f, inner_order, x + stencil.offsets[t] * h, a, opts.nodes);
        acc += stencil.coeffs[t] * q.value;
        inner_est = std::max(inner_est, q.est_error);
    }
    const Complex value = acc / std::pow(h, k_fd);
    const double est =
        inner_est * stencil.taps / std::pow(h, k_fd) + h * h * (1.0 + std::abs(value));
    return detail::numeric_result(value, Method::composition, est);
}

/// The unified operator. Dispatch: identity at s = 0, closed form or
/// Gauss-Jacobi quadrature for Re(s) > 0, derivative compositions for
/// Re(s) < 0 (exact symbolic differentiation at negative integers), and the
/// right composition R^{1+s} D^1 on the imaginary axis.
inline OperatorResult apply(const CausalFunction& f, Order s, double x, Convention conv,
                            ApplyOptions opts) {
    if (f.base().is_finite() && x <= f.base().value())
        return detail::exact_result(Complex(0.0, 0.0));
    if (f.is_zero()) return detail::exact_result(Complex(0.0, 0.0));

    switch (s.cls()) {
        case OrderClass::zero:
            return detail::exact_result(f.eval(x));

        case OrderClass::positive_part: {
            if (opts.force != ForcedMethod::quadrature) {
                if (auto co = detail::closed_form_for(f, s.value(), conv))
                    return detail::exact_result(co->eval(x));
                if (opts.force == ForcedMethod::closed)
                    throw DomainError("no closed-form rule applies to this input");
            }
            if (!f.base().is_finite())
                throw BasePointError(
                    "no closed form applies and quadrature needs a finite base point");
            const QuadResult q =
                frac_integral(f, s.value(), x, f.base().value(), opts.nodes);
            return detail::numeric_result(q.value, Method::quadrature, q.est_error);
        }

        case OrderClass::negative_part: {
            const Complex m = -s.value();
            if (opts.force != ForcedMethod::quadrature && !opts.k_override &&
                is_real_integer(m)) {
                const auto n = static_cast<int>(std::llround(m.real()));
                return detail::exact_result(detail::differentiate_unchecked(f, n).eval(x));
            }
            return conv == Convention::right ? right_derivative(f, Order(m), x, opts)
                                             : left_derivative(f, Order(m), x, opts);
        }

        case OrderClass::pure_imaginary:
        default: {
            const CausalFunction g = differentiate(f, 1);
            OperatorResult r = apply(g, Order(s.value() + 1.0), x, Convention::right, opts);
            if (r.method != Method::closed_form) r.method = Method::composition;
            r.imaginary_extension = true;
            return r;
        }
    }
}

/// |R^{s1}(R^{s2} f)(x) - R^{s1+s2}(f)(x)|, composed and direct legs at
/// matching accuracy settings.
inline double semigroup_residual(const CausalFunction& f, Order s1, Order s2, double x,
                                 ApplyOptions opts = {}) {
    const Complex direct = apply(f, Order(s1.value() + s2.value()), x, Convention::right, opts).value;
    Complex composed;
    if (auto inner = detail::closed_form_for(f, s2.value(), Convention::right)) {
        composed = apply(*inner, s1, x, Convention::right, opts).value;
    } else if (s1.value().real() > 0.0 && s2.value().real() > 0.0 && f.base().is_finite()) {
        const double a = f.base().value();
        auto inner_value = [&](double y) {
            return frac_integral(f, s2.value(), y, a, opts.nodes).value;
        };
        composed = frac_integral_fn(inner_value, s1.value(), x, a, opts.nodes).value;
    } else {
        throw DomainError("semigroup composition is not evaluable for these orders");
    }
    return std::abs(composed - direct);
}

/// Integer-order consistency probes: R^n against the nested integral,
/// R^{-n} against central differences, and the continuity of s -> R^s f
/// across the integer.
inline std::vector<PropertyReport> correspondence_check(const CausalFunction& f, int n,
                                                        double x, ApplyOptions opts = {},
                                                        int mesh = 32,
                                                        double tolerance_scale = 1.0) {
    if (n < 1) throw DomainError("correspondence check needs n >= 1");
    const double a = f.base().value();
    const std::string ctx =
        "f=" + format(f) + " n=" + std::to_string(n) + " x=" + detail::format_number(x);

    std::vector<PropertyReport> reports;

    const Complex integral = apply(f, Order(static_cast<double>(n)), x, Convention::right, opts).value;
    const Complex nested = iterated_integral(f, n, x, a, mesh);
    reports.push_back(PropertyReport::make("correspondence_integral",
                                           std::abs(integral - nested),
                                           1e-8 * tolerance_scale, ctx));

    const Complex deriv = apply(f, Order(-static_cast<double>(n)), x, Convention::right, opts).value;
    static constexpr double kStepByOrder[5] = {0.0, 1e-5, 1e-4, 2e-3, 5e-3};
    const double h = (n <= 4 ? kStepByOrder[n] : 5e-3) * std::max(1.0, std::abs(x));
    const Complex difference = finite_difference(f, n, x, h);
    reports.push_back(PropertyReport::make("correspondence_derivative",
                                           std::abs(deriv - difference),
                                           1e-6 * tolerance_scale, ctx));

    const double eps = 1e-4;
    for (const double probe : {static_cast<double>(n) + eps, static_cast<double>(n) - eps}) {
        const Complex near = apply(f, Order(probe), x, Convention::right, opts).value;
        reports.push_back(PropertyReport::make(
            probe > n ? "correspondence_limit_up" : "correspondence_limit_down",
            std::abs(near - integral), 1e-3 * tolerance_scale, ctx));
    }
    return reports;
}

}  // namespace fracalc
