#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <span>
#include <vector>

#include "fracalc/errors.hpp"
#include "fracalc/function_space.hpp"
#include "fracalc/special_functions.hpp"

namespace fracalc {

/// Nodes and weights integrating  int_0^1 u^alpha p(u) du  exactly for
/// polynomials p of degree <= 2n-1.
struct QuadratureRule {
    double alpha;
    std::vector<double> nodes;
    std::vector<double> weights;
    int n;

    template <typename F>
    auto integrate(F&& f) const {
        using R = decltype(f(0.5));
        R acc{};
        for (int i = 0; i < n; ++i) acc += weights[i] * f(nodes[i]);
        return acc;
    }
};

struct QuadResult {
    Complex value;
    double est_error;
    int n_used;
};

namespace detail {

// Symmetric tridiagonal QL with implicit shifts, rotating a single row
// vector z along (all that Golub-Welsch needs for the weights).
inline void tridiagonal_eigen(std::vector<double>& d, std::vector<double>& e,
                              std::vector<double>& z) {
    const int n = static_cast<int>(d.size());
    const double eps = std::numeric_limits<double>::epsilon();
    for (int l = 0; l < n; ++l) {
        int iter = 0;
        int m;
        do {
            for (m = l; m < n - 1; ++m) {
                const double dd = std::abs(d[m]) + std::abs(d[m + 1]);
                if (std::abs(e[m]) <= eps * dd) break;
            }
            if (m != l) {
                if (iter++ == 60)
                    throw DomainError("tridiagonal eigensolver failed to converge");
                double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
                double r = std::hypot(g, 1.0);
                g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
                double s = 1.0, c = 1.0, p = 0.0;
                int i = m - 1;
                for (; i >= l; --i) {
                    double f = s * e[i];
                    const double b = c * e[i];
                    r = std::hypot(f, g);
                    e[i + 1] = r;
                    if (r == 0.0) {
                        d[i + 1] -= p;
                        e[m] = 0.0;
                        break;
                    }
                    s = f / r;
                    c = g / r;
                    g = d[i + 1] - p;
                    r = (d[i] - g) * s + 2.0 * c * b;
                    p = s * r;
                    d[i + 1] = g + p;
                    g = c * r - b;
                    f = z[i + 1];
                    z[i + 1] = s * z[i] + c * f;
                    z[i] = c * z[i] - s * f;
                }
                if (r == 0.0 && i >= l) continue;
                d[l] -= p;
                e[l] = g;
                e[m] = 0.0;
            }
        } while (m != l);
    }
}

}  // namespace detail

/// n-point Gauss-Jacobi rule for the weight u^alpha on (0,1), built from the
/// Jacobi three-term recurrence via the Golub-Welsch eigenproblem.
inline QuadratureRule gauss_jacobi_rule(double alpha, int n) {
    if (alpha <= -1.0) throw InvalidWeight("Jacobi weight exponent must exceed -1");
    if (n < 1) throw DomainError("rule needs at least one node");

    // Monic Jacobi recurrence on [-1,1] with weight (1+t)^alpha.
    std::vector<double> diag(n), offdiag(n, 0.0);
    diag[0] = alpha / (alpha + 2.0);
    for (int k = 1; k < n; ++k) {
        const double two_k = 2.0 * k + alpha;
        diag[k] = alpha * alpha / (two_k * (two_k + 2.0));
        const double num = 4.0 * k * k * (k + alpha) * (k + alpha);
        const double den = two_k * two_k * (two_k * two_k - 1.0);
        offdiag[k - 1] = std::sqrt(num / den);
    }
    const double mu0 = std::pow(2.0, alpha + 1.0) / (alpha + 1.0);

    std::vector<double> z(n, 0.0);
    z[0] = 1.0;
    detail::tridiagonal_eigen(diag, offdiag, z);

    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int i, int j) { return diag[i] < diag[j]; });

    QuadratureRule rule;
    rule.alpha = alpha;
    rule.n = n;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    const double half_measure = std::pow(2.0, -(alpha + 1.0));
    for (int i = 0; i < n; ++i) {
        rule.nodes[i] = 0.5 * (1.0 + diag[order[i]]);
        rule.weights[i] = mu0 * z[order[i]] * z[order[i]] * half_measure;
    }
    return rule;
}

namespace detail {

// int_0^1 u^{s-1} g(u) du: the Jacobi weight absorbs u^{Re(s)-1}, the
// oscillatory remainder u^{i Im(s)} rides inside the integrand.
template <typename G>
Complex u_weighted_pass(G&& g, Complex s, int n) {
    const QuadratureRule rule = gauss_jacobi_rule(s.real() - 1.0, n);
    const double im = s.imag();
    Complex acc(0.0, 0.0);
    for (int i = 0; i < rule.n; ++i) {
        const double u = rule.nodes[i];
        Complex v = g(u);
        if (im != 0.0) v *= std::exp(Complex(0.0, im * std::log(u)));
        acc += rule.weights[i] * v;
    }
    return acc;
}

template <typename F>
Complex frac_integral_pass(F&& f, Complex s, double x, double a, int n) {
    const Complex inner =
        u_weighted_pass([&](double u) { return f(x - u * (x - a)); }, s, n);
    return std::exp(s * std::log(x - a)) * recip_gamma(s) * inner;
}

// Taylor coefficients of u -> f(x - u(x-a)) at u = 0, from symbolic
// derivatives of f evaluated at the interior point x.
inline std::vector<Complex> integrand_taylor(const CausalFunction& f, double x, double a,
                                             int terms) {
    std::vector<Complex> t(terms);
    CausalFunction d = f;
    double factorial = 1.0;
    double scale_pow = 1.0;
    for (int j = 0; j < terms; ++j) {
        if (j > 0) {
            d = differentiate_unchecked(d, 1);
            factorial *= j;
            scale_pow *= -(x - a);
        }
        t[j] = d.eval(x) * scale_pow / factorial;
    }
    return t;
}

// Complex orders oscillate as exp(i Im(s) ln u) near u = 0, which the real
// Jacobi weight cannot absorb. Splitting off the integrand's Taylor jet at
// u = 0 and integrating those powers against u^{s-1} in closed form leaves a
// remainder that vanishes like u^k there, restoring fast convergence.
inline Complex frac_integral_subtracted_pass(const CausalFunction& f,
                                             std::span<const Complex> taylor, Complex s,
                                             double x, double a, int n) {
    const Complex inner = u_weighted_pass(
        [&](double u) {
            Complex poly(0.0, 0.0);
            for (std::size_t j = taylor.size(); j-- > 0;)
                poly = poly * u + taylor[j];
            return f.eval(x - u * (x - a)) - poly;
        },
        s, n);
    Complex analytic(0.0, 0.0);
    for (std::size_t j = 0; j < taylor.size(); ++j)
        analytic += taylor[j] / (s + static_cast<double>(j));
    return std::exp(s * std::log(x - a)) * recip_gamma(s) * (inner + analytic);
}

}  // namespace detail

/// (x-a)^s/Gamma(s) * int_0^1 u^{s-1} f(x - u(x-a)) du  for an arbitrary
/// integrand callable. The Jacobi weight absorbs u^{Re(s)-1}; the oscillatory
/// remainder u^{i Im(s)} rides inside the integrand. Error estimated by
/// comparing the n- and 2n-point results.
template <typename F>
QuadResult frac_integral_fn(F&& f, Complex s, double x, double a, int n = 64) {
    if (s.real() <= 0.0) throw OrderError("fractional integral requires Re(s) > 0");
    if (std::abs(s.imag()) > 20.0)
        throw UnsupportedOrder("orders with |Im(s)| > 20 oscillate beyond this rule's reach");
    if (!(x > a)) throw DomainError("evaluation point must lie above the base point");
    if (n < 1) throw DomainError("node count must be positive");
    const Complex coarse = detail::frac_integral_pass(f, s, x, a, n);
    const Complex fine = detail::frac_integral_pass(f, s, x, a, 2 * n);
    return QuadResult{fine, std::abs(fine - coarse), 2 * n};
}

/// Direct numerical evaluation of the operator at positive-real-part order.
inline QuadResult frac_integral(const CausalFunction& f, Complex s, double x, double a,
                                int n = 64) {
    if (!f.base().is_finite())
        throw DomainError("quadrature requires a finite base point");
    if (f.base().value() != a)
        throw DomainError("integration base must match the function's base point");
    if (s.imag() == 0.0)
        return frac_integral_fn([&](double y) { return f.eval(y); }, s, x, a, n);

    if (s.real() <= 0.0) throw OrderError("fractional integral requires Re(s) > 0");
    if (std::abs(s.imag()) > 20.0)
        throw UnsupportedOrder("orders with |Im(s)| > 20 oscillate beyond this rule's reach");
    if (!(x > a)) throw DomainError("evaluation point must lie above the base point");
    if (n < 1) throw DomainError("node count must be positive");
    const auto taylor = detail::integrand_taylor(f, x, a, 6);
    const Complex coarse = detail::frac_integral_subtracted_pass(f, taylor, s, x, a, n);
    const Complex fine = detail::frac_integral_subtracted_pass(f, taylor, s, x, a, 2 * n);
    return QuadResult{fine, std::abs(fine - coarse), 2 * n};
}

namespace detail {

// 4-point Gauss-Legendre on [0,1].
inline constexpr double kGL4Nodes[4] = {0.06943184420297371239, 0.33000947820757186760,
                                        0.66999052179242813240, 0.93056815579702628761};
inline constexpr double kGL4Weights[4] = {0.17392742256872692869, 0.32607257743127307131,
                                          0.32607257743127307131, 0.17392742256872692869};

template <typename G>
Complex panel_integrate(G&& g, double lo, double hi, int mesh) {
    const double h = (hi - lo) / mesh;
    Complex acc(0.0, 0.0);
    for (int p = 0; p < mesh; ++p) {
        const double left = lo + p * h;
        for (int q = 0; q < 4; ++q) acc += kGL4Weights[q] * g(left + kGL4Nodes[q] * h);
    }
    return h * acc;
}

inline Complex nested_integral(const CausalFunction& f, int level, double upper, double a,
                               int mesh) {
    if (level == 1) return panel_integrate([&](double y) { return f.eval(y); }, a, upper, mesh);
    return panel_integrate([&](double t) { return nested_integral(f, level - 1, t, a, mesh); },
                           a, upper, mesh);
}

}  // namespace detail

/// n-fold nested integral int_a^x int_a^{t_1} ... f(t_n) dt_n ... dt_1 by
/// composed one-dimensional panel quadrature; the integer-order oracle.
inline Complex iterated_integral(const CausalFunction& f, int n, double x, double a,
                                 int mesh = 32) {
    if (n < 1) throw DomainError("iterated integral needs n >= 1");
    if (!(x > a)) throw DomainError("evaluation point must lie above the base point");
    if (mesh < 1) throw DomainError("mesh must be positive");
    return detail::nested_integral(f, n, x, a, mesh);
}

}  // namespace fracalc
