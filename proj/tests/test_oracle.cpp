#include <catch2/catch_amalgamated.hpp>

#include "fracalc/oracle.hpp"
#include "fracalc/property_suite.hpp"
#include "fracalc/quadrature.hpp"
#include "test_util.hpp"

using namespace fracalc;
using testutil::rel_err;

namespace {
const BasePoint a0 = BasePoint::finite(0.0);
const Complex one(1.0, 0.0);
const double kE = 2.71828182845904523536;
}  // namespace

TEST_CASE("finite differences", "[oracle]") {
    const auto fx2 = CausalFunction::monomial(a0, one, 2.0);
    CHECK(std::abs(finite_difference(fx2, 1, 1.0, 1e-4) - Complex(2.0, 0.0)) < 1e-7);
    CHECK(std::abs(finite_difference(fx2, 2, 5.0, 1e-3) - Complex(2.0, 0.0)) < 1e-5);

    const auto fpi = CausalFunction::monomial(a0, one, kPi);
    CHECK(std::abs(finite_difference(fpi, 1, 1.0, 1e-4) - Complex(kPi, 0.0)) < 1e-6);

    // default step
    CHECK(std::abs(finite_difference(fx2, 1, 1.0) - Complex(2.0, 0.0)) < 1e-7);

    CHECK_THROWS_AS(finite_difference(fx2, 5, 1.0, 1e-4), DomainError);
    CHECK_THROWS_AS(finite_difference(fx2, 1, 1e-6, 1e-4), DomainError);
    CHECK_THROWS_AS(finite_difference(fx2, 1, 1.0, 0.0), DomainError);
}

TEST_CASE("graded riemann sum reference values", "[oracle]") {
    const auto c1 = CausalFunction::constant(a0, one);
    CHECK(std::abs(riemann_sum_fractional(c1, Complex(1.0, 0.0), 1.0, 0.0, 1000) -
                   Complex(1.0, 0.0)) < 1e-3);

    const auto fx = CausalFunction::monomial(a0, one, 1.0);
    CHECK(std::abs(riemann_sum_fractional(fx, Complex(0.5, 0.0), 1.0, 0.0, 100000) -
                   Complex(0.75225277806367505, 0.0)) < 1e-3);

    const auto fx2 = CausalFunction::monomial(a0, one, 2.0);
    CHECK(std::abs(riemann_sum_fractional(fx2, Complex(2.0, 0.0), 1.0, 0.0, 10000) -
                   Complex(1.0 / 12.0, 0.0)) < 1e-4);

    CHECK_THROWS_AS(riemann_sum_fractional(fx, Complex(0.1, 0.0), 1.0, 0.0, 1000), OrderError);
    CHECK_THROWS_AS(riemann_sum_fractional(fx, Complex(1.0, 0.0), 1.0, 0.0, 50), DomainError);
}

TEST_CASE("gauss-jacobi and riemann references agree", "[oracle][property]") {
    const std::vector<CausalFunction> corpus = {
        CausalFunction::monomial(a0, one, 0.5), CausalFunction::monomial(a0, one, 1.0),
        CausalFunction::monomial(a0, one, kE), CausalFunction::sinusoid(a0, one, 0.0),
        CausalFunction::constant(a0, one)};
    for (const auto& f : corpus) {
        for (double s : {0.3, 0.5, 1.5}) {
            for (double x : {0.8, 1.5}) {
                const auto gj = frac_integral(f, Complex(s, 0.0), x, 0.0);
                const Complex rs = riemann_sum_fractional(f, Complex(s, 0.0), x, 0.0, 100000);
                CHECK(std::abs(gj.value - rs) <= 1e-3);
            }
        }
    }
}

TEST_CASE("property suite passes with defaults", "[oracle][suite]") {
    const auto reports = run_property_suite();
    CHECK(reports.size() >= 40);

    int failed = 0;
    for (const auto& r : reports) {
        INFO(r.name << " " << r.context << " residual=" << r.residual
                    << " tol=" << r.tolerance);
        CHECK(r.passed);
        CHECK(r.passed == (r.residual <= r.tolerance));
        if (!r.passed) ++failed;
    }
    CHECK(failed == 0);

    // deterministic ordering
    for (std::size_t i = 1; i < reports.size(); ++i) {
        const bool ordered = reports[i - 1].name < reports[i].name ||
                             (reports[i - 1].name == reports[i].name &&
                              reports[i - 1].context <= reports[i].context);
        CHECK(ordered);
    }

    // every family shows up
    for (const char* family :
         {"linearity", "semigroup", "semigroup_commutation", "correspondence_integral",
          "correspondence_derivative", "constant_annihilation", "constant_left_value",
          "k_independence", "closedform_vs_quadrature", "oracle_agreement"}) {
        const bool seen = std::any_of(reports.begin(), reports.end(),
                                      [&](const PropertyReport& r) { return r.name == family; });
        INFO(family);
        CHECK(seen);
    }

    // the right derivative of constants is exactly zero, not merely small
    for (const auto& r : reports) {
        if (r.name == "constant_annihilation") {
            CHECK(r.residual == 0.0);
            CHECK(r.tolerance == 0.0);
        }
    }
}

TEST_CASE("absurdly tight tolerance scale fails the suite", "[oracle][suite]") {
    SuiteConfig cfg;
    cfg.tolerance_scale = 1e-6;
    const auto reports = run_property_suite(cfg);
    const bool any_failed =
        std::any_of(reports.begin(), reports.end(),
                    [](const PropertyReport& r) { return !r.passed; });
    CHECK(any_failed);
}
