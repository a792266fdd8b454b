#pragma once

#include <cmath>
#include <complex>

#include "fracalc/errors.hpp"

namespace fracalc {

using Complex = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846264338327950288;

/// Absolute distance below which an argument counts as sitting on a gamma
/// pole (a non-positive integer). Chosen below quadrature accuracy and above
/// double rounding.
inline constexpr double kPoleTolerance = 1e-12;

/// True iff z is a real non-positive integer within kPoleTolerance.
inline bool is_pole(Complex z) {
    if (std::abs(z.imag()) > kPoleTolerance) return false;
    const double re = z.real();
    const double nearest = std::round(re);
    return nearest <= 0.5 && std::abs(re - nearest) <= kPoleTolerance;
}

inline bool is_pole(double x) { return is_pole(Complex(x, 0.0)); }

/// True iff z is real and integral within kPoleTolerance.
inline bool is_real_integer(Complex z) {
    return std::abs(z.imag()) <= kPoleTolerance &&
           std::abs(z.real() - std::round(z.real())) <= kPoleTolerance;
}

namespace detail {

// Lanczos series for ln Gamma, g + 1/2 = 671/128. The 14-term coefficient
// set reaches full double accuracy for Re(z) > 0.
inline constexpr double kLanczosShift = 5.24218750000000000;
inline constexpr double kLanczosSer0 = 0.999999999999997092;
inline constexpr double kSqrtTwoPi = 2.5066282746310005;
inline constexpr double kLanczosCoeff[14] = {
    57.1562356658629235,     -59.5979603554754912,    14.1360979747417471,
    -0.491913816097620199,   0.339946499848118887e-4, 0.465236289270485756e-4,
    -0.983744753048795646e-4, 0.158088703224912494e-3, -0.210264441724104883e-3,
    0.217439618115212643e-3, -0.164318106536763890e-3, 0.844182239838527433e-4,
    -0.261908384015814087e-4, 0.368991826595316234e-5};

inline double log_gamma_series(double x) {
    const double t = x + kLanczosShift;
    double ser = kLanczosSer0;
    for (int j = 0; j < 14; ++j) ser += kLanczosCoeff[j] / (x + j + 1);
    return (x + 0.5) * std::log(t) - t + std::log(kSqrtTwoPi * ser / x);
}

inline Complex log_gamma_series(Complex z) {
    const Complex t = z + kLanczosShift;
    Complex ser = kLanczosSer0;
    for (int j = 0; j < 14; ++j) ser += kLanczosCoeff[j] / (z + Complex(j + 1, 0.0));
    return (z + 0.5) * std::log(t) - t + std::log(kSqrtTwoPi * ser / z);
}

// sin(pi*x) with argument reduction so the result stays accurate near
// integer x, where the naive product pi*x loses the small residual.
inline double sin_pi(double x) {
    const double m = std::round(x);
    const double r = x - m;
    const double s = std::sin(kPi * r);
    return (std::fmod(std::abs(m), 2.0) < 0.5) ? s : -s;
}

inline Complex sin_pi(Complex z) {
    const double m = std::round(z.real());
    const Complex w = z - m;
    const Complex s = std::sin(kPi * w);
    return (std::fmod(std::abs(m), 2.0) < 0.5) ? s : -s;
}

[[noreturn]] inline void throw_pole(double re) {
    throw PoleError("gamma pole at non-positive integer " +
                    std::to_string(static_cast<long long>(std::llround(re))));
}

}  // namespace detail

/// ln Gamma(x) for real x > 0.
inline double log_gamma(double x) {
    if (is_pole(x)) detail::throw_pole(x);
    if (x <= 0.0)
        throw DomainError("log_gamma: real argument must be positive; use the complex overload");
    return detail::log_gamma_series(x);
}

/// ln Gamma(z), principal branch. Continuous for Re(z) >= 0.5; elsewhere the
/// principal logarithm of Gamma(z) via reflection.
inline Complex log_gamma(Complex z) {
    if (is_pole(z)) detail::throw_pole(z.real());
    if (z.real() >= 0.5) return detail::log_gamma_series(z);
    // log(pi / (sin(pi z) Gamma(1 - z)))
    return std::log(kPi) - std::log(detail::sin_pi(z) * std::exp(detail::log_gamma_series(1.0 - z)));
}

/// Gamma(x) for real x, poles excluded.
inline double gamma(double x) {
    if (is_pole(x)) detail::throw_pole(x);
    if (x >= 0.5) return std::exp(detail::log_gamma_series(x));
    return kPi / (detail::sin_pi(x) * std::exp(detail::log_gamma_series(1.0 - x)));
}

inline Complex gamma(Complex z) {
    if (is_pole(z)) detail::throw_pole(z.real());
    if (z.real() >= 0.5) return std::exp(detail::log_gamma_series(z));
    return kPi / (detail::sin_pi(z) * std::exp(detail::log_gamma_series(1.0 - z)));
}

/// 1/Gamma(x): entire, exactly zero at the poles of Gamma.
inline double recip_gamma(double x) {
    if (is_pole(x)) return 0.0;
    if (x >= 0.5) return std::exp(-detail::log_gamma_series(x));
    return detail::sin_pi(x) * std::exp(detail::log_gamma_series(1.0 - x)) / kPi;
}

inline Complex recip_gamma(Complex z) {
    if (is_pole(z)) return Complex(0.0, 0.0);
    if (z.real() >= 0.5) return std::exp(-detail::log_gamma_series(z));
    return detail::sin_pi(z) * std::exp(detail::log_gamma_series(1.0 - z)) / kPi;
}

/// Euler beta  B(s1, s2) = Gamma(s1) Gamma(s2) / Gamma(s1 + s2).
inline double beta(double s1, double s2) {
    if (is_pole(s1) || is_pole(s2)) detail::throw_pole(is_pole(s1) ? s1 : s2);
    if (is_pole(s1 + s2)) detail::throw_pole(s1 + s2);
    if (s1 > 0.0 && s2 > 0.0)
        return std::exp(detail::log_gamma_series(s1) + detail::log_gamma_series(s2) -
                        detail::log_gamma_series(s1 + s2));
    return gamma(s1) * gamma(s2) * recip_gamma(s1 + s2);
}

inline Complex beta(Complex s1, Complex s2) {
    if (is_pole(s1) || is_pole(s2)) detail::throw_pole(is_pole(s1) ? s1.real() : s2.real());
    if (is_pole(s1 + s2)) detail::throw_pole((s1 + s2).real());
    return gamma(s1) * gamma(s2) * recip_gamma(s1 + s2);
}

/// Gamma(p + 1) / Gamma(p + s + 1), the coefficient of the monomial shift
/// rule. Integer arguments reduce to an exact factorial quotient, a pole of
/// the denominator yields an exact zero, and large arguments go through
/// log-gamma differences to dodge overflow.
inline Complex gamma_ratio(Complex p_plus_1, Complex q_plus_1) {
    if (is_pole(q_plus_1)) return Complex(0.0, 0.0);
    if (is_real_integer(p_plus_1) && is_real_integer(q_plus_1)) {
        const auto lo = std::llround(p_plus_1.real());
        const auto hi = std::llround(q_plus_1.real());
        if (lo >= 1 && hi >= 1 && std::abs(hi - lo) <= 170) {
            double prod = 1.0;
            for (long long k = std::min(lo, hi); k < std::max(lo, hi); ++k) prod *= k;
            return Complex(lo <= hi ? 1.0 / prod : prod, 0.0);
        }
    }
    if (p_plus_1.real() > 140.0 && q_plus_1.real() > 140.0)
        return std::exp(detail::log_gamma_series(p_plus_1) - detail::log_gamma_series(q_plus_1));
    return gamma(p_plus_1) * recip_gamma(q_plus_1);
}

}  // namespace fracalc
