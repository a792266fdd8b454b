#pragma once

#include <cmath>
#include <string>

#include "fracalc/function_space.hpp"
#include "fracalc/special_functions.hpp"

namespace fracalc {

/// One verified invariant instance.
struct PropertyReport {
    std::string name;
    double residual;
    double tolerance;
    bool passed;
    std::string context;

    static PropertyReport make(std::string name, double residual, double tolerance,
                               std::string context) {
        PropertyReport r;
        r.name = std::move(name);
        r.residual = residual;
        r.tolerance = tolerance;
        r.passed = residual <= tolerance;
        r.context = std::move(context);
        return r;
    }
};

/// Default step of the difference oracle.
inline double finite_difference_step(double x) { return 1e-4 * std::max(1.0, std::abs(x)); }

/// Central n-th difference, n in 1..4, truncation O(h^2). The stencil must
/// stay above the base point.
inline Complex finite_difference(const CausalFunction& f, int n, double x, double h) {
    if (n < 1 || n > 4) throw DomainError("finite differences support orders 1..4 only");
    if (h <= 0.0) throw DomainError("step must be positive");
    if (f.base().is_finite() && !(x - n * h > f.base().value()))
        throw DomainError("difference stencil crosses the base point");
    switch (n) {
        case 1:
            return (f.eval(x + h) - f.eval(x - h)) / (2.0 * h);
        case 2:
            return (f.eval(x + h) - 2.0 * f.eval(x) + f.eval(x - h)) / (h * h);
        case 3:
            return (f.eval(x + 2 * h) - 2.0 * f.eval(x + h) + 2.0 * f.eval(x - h) -
                    f.eval(x - 2 * h)) /
                   (2.0 * h * h * h);
        default:
            return (f.eval(x + 2 * h) - 4.0 * f.eval(x + h) + 6.0 * f.eval(x) -
                    4.0 * f.eval(x - h) + f.eval(x - 2 * h)) /
                   (h * h * h * h);
    }
}

inline Complex finite_difference(const CausalFunction& f, int n, double x) {
    return finite_difference(f, n, x, finite_difference_step(x));
}

/// Deliberately naive reference for the fractional integral: a graded-mesh
/// midpoint sum with points clustered toward the kernel singularity at y = x.
/// Shares nothing with the Gauss-Jacobi path.
inline Complex riemann_sum_fractional(const CausalFunction& f, Complex s, double x, double a,
                                      int panels) {
    if (s.real() < 0.2) throw OrderError("riemann_sum_fractional requires Re(s) >= 0.2");
    if (panels < 100) throw DomainError("riemann_sum_fractional needs at least 100 panels");
    if (!(x > a)) throw DomainError("evaluation point must lie above the base point");

    // Panels tracked as distances below x so the clustering near the kernel
    // singularity never cancels against x itself.
    const double grading = 2.0 / s.real();
    const double span = x - a;
    Complex acc(0.0, 0.0);
    double dist_prev = 0.0;
    for (int j = 1; j <= panels; ++j) {
        const double frac = static_cast<double>(j) / panels;
        const double dist = span * std::pow(frac, grading);
        const double width = dist - dist_prev;
        const double mid = 0.5 * (dist_prev + dist);
        dist_prev = dist;
        if (!(width > 0.0)) continue;
        const Complex kernel = std::exp((s - 1.0) * std::log(mid));
        acc += kernel * f.eval(x - mid) * width;
    }
    return acc * recip_gamma(s);
}

}  // namespace fracalc
