#include <random>

#include "doctest.h"
#include "fixtures.hpp"
#include "localize/dh.hpp"
#include "localize/models.hpp"
#include "oracles.hpp"

using namespace localize;

namespace {

MorseOptions product_seeds() {
    MorseOptions o;
    o.seeds_per_axis = 8;
    return o;
}

double rel(Complex a, Complex b) { return std::abs(a - b) / std::abs(b); }

}  // namespace

TEST_SUITE("dh") {

TEST_CASE("stationary sum matches the closed form on the sphere") {
    for (double r : {1.0, 2.0}) {
        const ManifoldModel s2 = make_sphere(r);
        const ScalarField h = resolve_function(s2, "height");
        for (Complex t : {Complex(1.0), Complex(-2.0), Complex(0.0, 1.0), Complex(0.0, 5.0), Complex(0.5, 3.0),
                          Complex(0.0, 40.0)}) {
            const StationarySum s = dh_stationary_sum(s2, h, t);
            CHECK(s.terms.size() == 2);
            CHECK(rel(s.sum, oracle::sphere_exponential(t, r)) <= 1e-12);
        }
    }
}

TEST_CASE("stationary sum near t = 0 approaches the area") {
    const ManifoldModel s2 = make_sphere(1.0);
    const StationarySum s = dh_stationary_sum(s2, resolve_function(s2, "height"), Complex(1e-3));
    CHECK(std::abs(s.sum - 4.0 * oracle::pi) <= 1e-5 * 4.0 * oracle::pi);
}

TEST_CASE("quadrature and stationary sum agree") {
    const ManifoldModel s2 = make_sphere(1.0);
    const ScalarField h = resolve_function(s2, "height");
    for (Complex t : {Complex(1.0), Complex(0.0, 5.0)}) {
        const DHReport rep = dh_residual(s2, h, t, {});
        CHECK(rep.rel_residual <= 1e-10);
        CHECK(rel(rep.exact, oracle::sphere_exponential(t)) <= 1e-10);
    }
}

TEST_CASE("adding a constant multiplies the sum by e^{tc}") {
    const ManifoldModel s2 = make_sphere(1.0);
    const ScalarField h = resolve_function(s2, "height");
    const Complex t(0.3, 2.0);
    const double c = 0.75;
    const Complex base = dh_stationary_sum(s2, h, t).sum;
    const Complex shifted = dh_stationary_sum(s2, add_constant(h, c), t).sum;
    CHECK(rel(shifted, std::exp(t * c) * base) <= 1e-12);
}

TEST_CASE("real t gives a real sum") {
    const ManifoldModel s2 = make_sphere(1.0);
    for (double t : {0.5, 3.0, -1.5}) {
        const Complex s = dh_stationary_sum(s2, resolve_function(s2, "height"), Complex(t)).sum;
        CHECK(std::abs(s.imag()) <= 1e-13 * std::abs(s.real()));
    }
}

TEST_CASE("product of spheres") {
    const ManifoldModel m = resolve_model("s2xs2");
    const Complex t(0.0, 1.0);
    const StationarySum s = dh_stationary_sum(m, resolve_function(m, "generic"), t, product_seeds());
    CHECK(s.terms.size() == 4);
    const Complex expected = oracle::sphere_exponential(t) * oracle::sphere_exponential(std::sqrt(2.0) * t);
    CHECK(rel(s.sum, expected) <= 1e-12);
    CHECK(std::abs(expected.real() - 92.8106736837831157) <= 1e-11);

    for (auto [a, b] : {std::pair{1.0, 2.0}, std::pair{0.5, 1.5}, std::pair{2.0, -1.0}}) {
        const std::string name = "lin:" + std::to_string(a) + "," + std::to_string(b);
        for (Complex tt : {Complex(0.7), Complex(0.0, 1.0), Complex(0.2, -3.0)}) {
            const Complex sum = dh_stationary_sum(m, resolve_function(m, name), tt, product_seeds()).sum;
            CHECK(rel(sum, oracle::sphere_exponential(a * tt) * oracle::sphere_exponential(b * tt)) <= 1e-11);
        }
    }
}

TEST_CASE("Darboux frame") {
    std::mt19937_64 rng(5);
    for (Eigen::Index n : {2, 4, 6}) {
        const Matrix omega = oracle::random_antisymmetric(n, rng);
        const Matrix b = darboux_frame(omega);
        Matrix j = Matrix::Zero(n, n);
        for (Eigen::Index k = 0; k < n; k += 2) {
            j(k, k + 1) = 1.0;
            j(k + 1, k) = -1.0;
        }
        CHECK((b.transpose() * omega * b - j).cwiseAbs().maxCoeff() <= 1e-10);
    }
    CHECK(fixture::error_code_of([] { darboux_frame(Matrix::Zero(2, 2)); }) == ErrorCode::DegenerateSymplecticForm);
    CHECK(fixture::error_code_of([] { darboux_frame(Matrix::Zero(3, 3)); }) == ErrorCode::OddDimension);
}

TEST_CASE("error paths") {
    const ManifoldModel s2 = make_sphere(1.0);
    const ScalarField h = resolve_function(s2, "height");
    const auto points = find_critical_points(s2, h);
    CHECK(fixture::error_code_of([&] { stationary_term(s2, h, points.front(), Complex(0.0)); }) ==
          ErrorCode::InvalidArgument);
    CriticalPoint flat = points.front();
    flat.nondegenerate = false;
    CHECK(fixture::error_code_of([&] { stationary_term(s2, h, flat, Complex(1.0)); }) ==
          ErrorCode::DegenerateCriticalPoint);
    const ManifoldModel circle = fixture::circle();
    CHECK(fixture::error_code_of([&] { dh_stationary_sum(circle, resolve_function(circle, "const"), Complex(1.0)); }) ==
          ErrorCode::NoSymplecticForm);
}

TEST_CASE("tilted height breaks exactness") {
    const ManifoldModel s2 = make_sphere(1.0);
    const DHReport rep = dh_residual(s2, resolve_function(s2, "tilted"), Complex(0.0, 1.0), {});
    CHECK(rep.rel_residual > 1e-2);
}

}
