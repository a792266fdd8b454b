#include <catch2/catch_amalgamated.hpp>

#include "fracalc/closed_form.hpp"
#include "fracalc/quadrature.hpp"
#include "test_util.hpp"

using namespace fracalc;
using testutil::rel_err;

namespace {
const BasePoint a0 = BasePoint::finite(0.0);
const Complex one(1.0, 0.0);
const double kE = 2.71828182845904523536;
}  // namespace

TEST_CASE("gauss-jacobi rule reference cases", "[quadrature]") {
    const auto legendre2 = gauss_jacobi_rule(0.0, 2);
    CHECK(std::abs(legendre2.nodes[0] - 0.21132486540518712) < 1e-12);
    CHECK(std::abs(legendre2.nodes[1] - 0.78867513459481288) < 1e-12);
    CHECK(std::abs(legendre2.weights[0] - 0.5) < 1e-12);
    CHECK(std::abs(legendre2.weights[1] - 0.5) < 1e-12);

    const auto midpoint = gauss_jacobi_rule(0.0, 1);
    CHECK(std::abs(midpoint.nodes[0] - 0.5) < 1e-14);
    CHECK(std::abs(midpoint.weights[0] - 1.0) < 1e-14);

    const auto singular = gauss_jacobi_rule(-0.5, 4);
    double wsum = 0.0;
    for (double w : singular.weights) wsum += w;
    CHECK(rel_err(wsum, 2.0) < 1e-12);
}

TEST_CASE("rule structure invariants", "[quadrature][property]") {
    for (double alpha : {-0.7, -0.5, 0.0, 0.7, 2.3}) {
        for (int n : {1, 3, 8, 20, 64}) {
            const auto rule = gauss_jacobi_rule(alpha, n);
            REQUIRE(rule.n == n);
            for (int i = 0; i < n; ++i) {
                CHECK(rule.nodes[i] > 0.0);
                CHECK(rule.nodes[i] < 1.0);
                CHECK(rule.weights[i] > 0.0);
                if (i) CHECK(rule.nodes[i] > rule.nodes[i - 1]);
            }
            double wsum = 0.0;
            for (double w : rule.weights) wsum += w;
            CHECK(rel_err(wsum, 1.0 / (alpha + 1.0)) < 1e-12);
        }
    }
}

TEST_CASE("rule is exact to polynomial degree 2n-1", "[quadrature][property]") {
    for (double alpha : {-0.5, 0.0, 1.3}) {
        for (int n : {2, 5, 12}) {
            const auto rule = gauss_jacobi_rule(alpha, n);
            for (int j = 0; j <= 2 * n - 1; ++j) {
                const double got =
                    rule.integrate([&](double u) { return std::pow(u, j); });
                const double want = 1.0 / (alpha + j + 1.0);
                CHECK(rel_err(got, want) < 1e-12);
            }
        }
    }
}

TEST_CASE("rule construction rejects bad input", "[quadrature]") {
    CHECK_THROWS_AS(gauss_jacobi_rule(-1.0, 4), InvalidWeight);
    CHECK_THROWS_AS(gauss_jacobi_rule(-1.5, 4), InvalidWeight);
    CHECK_THROWS_AS(gauss_jacobi_rule(0.0, 0), DomainError);
}

TEST_CASE("fractional integral reference values", "[quadrature]") {
    const auto fx2 = CausalFunction::monomial(a0, one, 2.0);
    const auto q1 = frac_integral(fx2, Complex(1.0, 0.0), 1.0, 0.0);
    CHECK(std::abs(q1.value - Complex(1.0 / 3.0, 0.0)) < 1e-12);

    const auto fx = CausalFunction::monomial(a0, one, 1.0);
    const auto q2 = frac_integral(fx, Complex(0.5, 0.0), 1.0, 0.0);
    CHECK(std::abs(q2.value - Complex(0.75225277806367505, 0.0)) <
          std::max(1e-10, q2.est_error));

    const auto fe = CausalFunction::monomial(a0, one, kE);
    const auto q3 = frac_integral(fe, Complex(kPi, 0.0), 1.0, 0.0);
    CHECK(std::abs(q3.value - Complex(0.0076819416502711052, 0.0)) < 1e-8);
}

TEST_CASE("ordinary integrals of polynomials are exact", "[quadrature][property]") {
    // s = 1, degree <= 5: matches the antiderivative difference
    for (int deg = 0; deg <= 5; ++deg) {
        const auto f = CausalFunction::monomial(a0, one, static_cast<double>(deg));
        for (double x : {0.4, 1.0, 2.3}) {
            const double want = std::pow(x, deg + 1) / (deg + 1);
            const auto q = frac_integral(f, Complex(1.0, 0.0), x, 0.0);
            CHECK(std::abs(q.value - Complex(want, 0.0)) <= 1e-12 * (1.0 + want));
        }
    }
}

TEST_CASE("doubling nodes contracts the error", "[quadrature][property]") {
    for (double p : {0.5, 1.0, kE, kPi}) {
        const auto f = CausalFunction::monomial(a0, one, p);
        for (double s : {0.3, 0.5, 1.5, kPi}) {
            const Complex exact = monomial_rule(p, s, 0.0).eval(1.0);
            double prev = -1.0;
            for (int n : {8, 16, 32, 64}) {
                const double err =
                    std::abs(frac_integral(f, Complex(s, 0.0), 1.0, 0.0, n).value - exact);
                if (prev >= 0.0 && prev > 1e-10) {
                    CHECK(err <= prev / 4.0 + 1e-15);
                }
                prev = err;
            }
        }
    }
}

TEST_CASE("integer-order quadrature agrees with the nested oracle", "[quadrature][property]") {
    const std::vector<double> powers = {1.0, 2.0, kE, kPi};
    for (double p : powers) {
        const auto f = CausalFunction::monomial(a0, one, p);
        for (int n : {1, 2}) {
            for (double x : {0.8, 1.4}) {
                const auto q = frac_integral(f, Complex(static_cast<double>(n), 0.0), x, 0.0);
                const Complex oracle = iterated_integral(f, n, x, 0.0, 256);
                CHECK(std::abs(q.value - oracle) <= std::max(1e-8, q.est_error));
            }
        }
    }
    for (double p : {1.0, 2.0, 3.0}) {
        const auto f = CausalFunction::monomial(a0, one, p);
        const auto q = frac_integral(f, Complex(3.0, 0.0), 1.2, 0.0);
        const Complex oracle = iterated_integral(f, 3, 1.2, 0.0, 24);
        CHECK(std::abs(q.value - oracle) <= std::max(1e-8, q.est_error));
    }
}

TEST_CASE("complex order conjugation symmetry", "[quadrature][property]") {
    const auto f = CausalFunction::monomial(a0, one, kE);
    for (Complex s : {Complex(1.0, 0.5), Complex(0.7, -0.2), Complex(2.0, 3.0)}) {
        const Complex direct = frac_integral(f, std::conj(s), 1.3, 0.0).value;
        const Complex mirrored = std::conj(frac_integral(f, s, 1.3, 0.0).value);
        CHECK(std::abs(direct - mirrored) < 1e-12 * (1.0 + std::abs(direct)));
    }
}

TEST_CASE("fractional integral rejects out-of-domain requests", "[quadrature]") {
    const auto f = CausalFunction::monomial(a0, one, 1.0);
    CHECK_THROWS_AS(frac_integral(f, Complex(-0.5, 0.0), 1.0, 0.0), OrderError);
    CHECK_THROWS_AS(frac_integral(f, Complex(0.0, 0.0), 1.0, 0.0), OrderError);
    CHECK_THROWS_AS(frac_integral(f, Complex(1.0, 0.0), 0.0, 0.0), DomainError);
    CHECK_THROWS_AS(frac_integral(f, Complex(1.0, 0.0), -2.0, 0.0), DomainError);
    CHECK_THROWS_AS(frac_integral(f, Complex(1.0, 25.0), 1.0, 0.0), UnsupportedOrder);

    const auto liouville = CausalFunction::exponential(BasePoint::minus_infinity(), one, 1.0);
    CHECK_THROWS_AS(frac_integral(liouville, Complex(1.0, 0.0), 1.0, 0.0), DomainError);
}

TEST_CASE("iterated integral reference values", "[quadrature]") {
    const auto c1 = CausalFunction::constant(a0, one);
    CHECK(std::abs(iterated_integral(c1, 2, 1.0, 0.0) - Complex(0.5, 0.0)) < 1e-14);

    const auto fx = CausalFunction::monomial(a0, one, 1.0);
    CHECK(std::abs(iterated_integral(fx, 1, 2.0, 0.0) - Complex(2.0, 0.0)) < 1e-14);

    const auto fx2 = CausalFunction::monomial(a0, one, 2.0);
    CHECK(std::abs(iterated_integral(fx2, 3, 1.0, 0.0) - Complex(1.0 / 60.0, 0.0)) < 1e-15);

    CHECK_THROWS_AS(iterated_integral(fx, 0, 1.0, 0.0), DomainError);
    CHECK_THROWS_AS(iterated_integral(fx, 1, 0.0, 0.0), DomainError);
}
