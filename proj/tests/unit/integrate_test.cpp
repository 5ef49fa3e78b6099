#include <cstdlib>

#include "doctest.h"
#include "fixtures.hpp"
#include "localize/integrate.hpp"
#include "localize/models.hpp"
#include "localize/scalar_field.hpp"
#include "oracles.hpp"

using namespace localize;

namespace {

ComplexField constant(double c) {
    return [c](std::size_t, const Point&) { return Complex(c); };
}

ComplexField cos_theta() {
    return [](std::size_t, const Point& x) { return Complex(std::cos(x[0])); };
}

}  // namespace

TEST_SUITE("integrate") {

TEST_CASE("Gauss-Legendre rule integrates polynomials of degree 2n-1 exactly") {
    for (int n : {2, 5, 12, 20}) {
        const GaussLegendreRule rule = gauss_legendre(n);
        REQUIRE(rule.nodes.size() == static_cast<std::size_t>(n));
        double wsum = 0.0;
        for (double w : rule.weights) wsum += w;
        CHECK(wsum == doctest::Approx(2.0).epsilon(1e-14));
        for (int k = 0; k <= 2 * n - 1; ++k) {
            double q = 0.0;
            for (int i = 0; i < n; ++i) q += rule.weights[i] * std::pow(rule.nodes[i], k);
            const double exact = (k % 2 == 1) ? 0.0 : 2.0 / (k + 1);
            CHECK(std::abs(q - exact) < 1e-13);
        }
        CHECK(std::is_sorted(rule.nodes.begin(), rule.nodes.end()));
    }
}

TEST_CASE("area and odd integrands") {
    const ManifoldModel s2 = make_sphere(1.0);
    const IntegralResult area = integrate_density(s2, constant(1.0), Measure::Metric, {});
    CHECK(area.converged);
    CHECK(area.value.real() == doctest::Approx(4 * oracle::pi).epsilon(1e-12));
    CHECK(area.abs_error_estimate >= 0.0);
    CHECK(std::abs(integrate_density(s2, cos_theta(), Measure::Metric, {}).value) < 1e-12);
    CHECK(integrate_density(make_flat_torus(), constant(1.0), Measure::Metric, {}).value.real() ==
          doctest::Approx(4 * oracle::pi * oracle::pi).epsilon(1e-12));
    CHECK(integrate_density(make_sphere(2.0), constant(1.0), Measure::Metric, {}).value.real() ==
          doctest::Approx(16 * oracle::pi).epsilon(1e-12));
}

TEST_CASE("linearity on a fixed rule") {
    const ManifoldModel s2 = make_sphere(1.0);
    QuadratureSpec fixed;
    fixed.max_refinements = 1;
    const ComplexField f = [](std::size_t, const Point& x) { return Complex(std::exp(std::sin(x[0]) * std::cos(x[1]))); };
    const ComplexField g = [](std::size_t, const Point& x) { return Complex(x[0] * x[0], std::cos(3 * x[1])); };
    const double alpha = -1.7;
    const Complex combined =
        integrate_density(s2, [&](std::size_t c, const Point& x) { return alpha * f(c, x) + g(c, x); },
                          Measure::Metric, fixed)
            .value;
    const Complex separate = alpha * integrate_density(s2, f, Measure::Metric, fixed).value +
                             integrate_density(s2, g, Measure::Metric, fixed).value;
    CHECK(std::abs(combined - separate) <= 1e-12 * std::abs(separate));
}

TEST_CASE("Liouville and metric measures coincide on the built-in models") {
    for (const std::string name : {"s2", "s2:r=0.5", "t2"}) {
        const ManifoldModel m = resolve_model(name);
        const Complex metric = integrate_density(m, cos_theta(), Measure::Metric, {}).value +
                               integrate_density(m, constant(1.0), Measure::Metric, {}).value;
        const Complex liouville = integrate_density(m, cos_theta(), Measure::Liouville, {}).value +
                                  integrate_density(m, constant(1.0), Measure::Liouville, {}).value;
        CHECK(std::abs(metric - liouville) <= 1e-10 * std::abs(metric));
    }
    const ManifoldModel circle = fixture::circle();
    CHECK(fixture::error_code_of([&] { integrate_density(circle, constant(1.0), Measure::Liouville, {}); }) ==
          ErrorCode::NoSymplecticForm);
}

TEST_CASE("exponential integrals against the one-dimensional antiderivative") {
    const ManifoldModel s2 = make_sphere(1.0);
    const ScalarField h = resolve_function(s2, "height");
    const Complex i(0.0, 1.0);
    for (Complex t : {Complex(1.0), Complex(-2.0), i, 5.0 * i, Complex(0.5, 3.0), Complex(1e-3)}) {
        const IntegralResult r = integrate_exponential(s2, h, t, {});
        CHECK(r.converged);
        CHECK(std::abs(r.value - oracle::sphere_exponential(t)) <= 1e-10 * std::abs(oracle::sphere_exponential(t)));
    }
    CHECK(integrate_exponential(s2, h, 1.0, {}).value.real() == doctest::Approx(14.7680137457652907).epsilon(1e-12));
    CHECK(integrate_exponential(s2, h, i, {}).value.real() == doctest::Approx(10.5742362563258247).epsilon(1e-12));
    const ManifoldModel s2r = make_sphere(2.0);
    CHECK(std::abs(integrate_exponential(s2r, resolve_function(s2r, "height"), i, {}).value -
                   oracle::sphere_exponential(i, 2.0)) < 1e-9);
    CHECK(fixture::error_code_of([&] {
              const ManifoldModel c = fixture::circle();
              ScalarField f{"zero", [](std::size_t, const Point&) { return 0.0; }, {}, {}};
              integrate_exponential(c, f, 1.0, {});
          }) == ErrorCode::NoSymplecticForm);
}

TEST_CASE("phase resolution grows with the frequency") {
    const ManifoldModel s2 = make_sphere(1.0);
    const ScalarField h = resolve_function(s2, "height");
    const int slow = phase_resolution_nodes(s2, h, Complex(0.0, 1.0));
    const int fast = phase_resolution_nodes(s2, h, Complex(0.0, 40.0));
    CHECK(fast > slow);
    // 8 nodes per oscillation: theta in (0, pi), |d cos/d theta| <= 1, t = 40 -> 40 pi / 2 pi * 8 = 160
    CHECK(fast >= 150);
    CHECK(phase_resolution_nodes(s2, h, Complex(3.0, 0.0)) == 0);
}

TEST_CASE("error estimates shrink with refinement and flag non-convergence") {
    const auto f = [](double x) { return std::exp(std::sin(3.0 * x)); };
    QuadratureSpec spec;
    spec.order = 4;
    spec.cells = 1;
    spec.target_rel_tol = 1e-300;
    double previous = INFINITY;
    for (int levels = 1; levels <= 5; ++levels) {
        spec.max_refinements = levels;
        const IntegralResult r = integrate_interval(f, 0.0, 2.0, spec);
        CHECK_FALSE(r.converged);
        CHECK(r.abs_error_estimate <= previous);
        previous = r.abs_error_estimate;
    }
    CHECK(fixture::error_code_of([&] { require_converged(integrate_interval(f, 0.0, 2.0, spec)); }) ==
          ErrorCode::NotConverged);
    QuadratureSpec good;
    const IntegralResult ok = integrate_interval([](double x) { return x * x; }, 0.0, 3.0, good);
    CHECK(require_converged(ok).value.real() == doctest::Approx(9.0).epsilon(1e-14));
}

TEST_CASE("results do not depend on the thread count") {
    const ManifoldModel s2 = make_sphere(1.0);
    const ScalarField h = resolve_function(s2, "tilted");
    const char* saved = std::getenv("LOCALIZE_THREADS");
    const std::string restore = saved ? saved : "";
    setenv("LOCALIZE_THREADS", "1", 1);
    const Complex one = integrate_exponential(s2, h, Complex(0.3, 2.0), {}).value;
    setenv("LOCALIZE_THREADS", "3", 1);
    const Complex three = integrate_exponential(s2, h, Complex(0.3, 2.0), {}).value;
    if (saved) setenv("LOCALIZE_THREADS", restore.c_str(), 1);
    else unsetenv("LOCALIZE_THREADS");
    CHECK(one.real() == three.real());
    CHECK(one.imag() == three.imag());
}

TEST_CASE("quadrature spec validation") {
    QuadratureSpec bad;
    bad.order = 1;
    CHECK(fixture::error_code_of([&] { bad.validate(); }) == ErrorCode::InvalidArgument);
    bad = {};
    bad.cells = 0;
    CHECK(fixture::error_code_of([&] { bad.validate(); }) == ErrorCode::InvalidArgument);
    bad = {};
    bad.target_rel_tol = 0.0;
    CHECK(fixture::error_code_of([&] { bad.validate(); }) == ErrorCode::InvalidArgument);
}

}
