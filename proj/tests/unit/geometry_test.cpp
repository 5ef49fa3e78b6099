#include <random>

#include "doctest.h"
#include "fixtures.hpp"
#include "localize/models.hpp"
#include "localize/scalar_field.hpp"
#include "oracles.hpp"

using namespace localize;
using fixture::point;

namespace {

std::vector<Point> interior_points(const ManifoldModel& m, std::size_t chart, int n, unsigned seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const Chart& ch = m.chart(chart).chart;
    std::vector<Point> pts;
    while (static_cast<int>(pts.size()) < n) {
        Point x(static_cast<Eigen::Index>(m.dim));
        for (std::size_t a = 0; a < m.dim; ++a) {
            const double margin = ch.periodic[a] ? 0.0 : 0.05 * ch.box_size(a);
            x[static_cast<Eigen::Index>(a)] = ch.lower[a] + margin + (ch.box_size(a) - 2 * margin) * u(rng);
        }
        if (!ch.in_excised_set || !ch.in_excised_set(x)) pts.push_back(x);
    }
    return pts;
}

}  // namespace

TEST_SUITE("geometry") {

TEST_CASE("flat torus has vanishing connection and curvature") {
    const ManifoldModel t2 = make_flat_torus();
    const Point x = point({0.3, 4.0});
    CHECK(max_abs(christoffel_at(t2, "angles", x)) == 0.0);
    CHECK(max_abs(riemann_at(t2, "angles", x)) == 0.0);
    CHECK(scalar_curvature_at(t2, "angles", x) == 0.0);
    CHECK(euler_density_at(t2, "angles", x) == 0.0);
}

TEST_CASE("sphere Christoffel symbols at named points") {
    const ManifoldModel s2 = make_sphere(1.0);
    const Tensor3 equator = christoffel_at(s2, "polar", point({oracle::pi / 2, 0.0}));
    CHECK(std::abs(equator(0, 1, 1)) < 1e-15);  // -sin cos

    const Point x = point({oracle::pi / 4, 0.0});
    const Tensor3 g = christoffel_at(s2, "polar", x);
    CHECK(g(1, 0, 1) == doctest::Approx(1.0).epsilon(1e-12));  // cot(pi/4)
    const Tensor3 fd = christoffel_fd(s2, s2.chart_index("polar"), x);
    CHECK(std::abs(fd(1, 0, 1) - 1.0) < 1e-8);
}

TEST_CASE("finite-difference Christoffel symbols follow the metric oracle") {
    // Gamma^phi_{theta phi} = (1/2) g^{phi phi} d_theta g_{phi phi}, differenced from the closed-form metric.
    const ManifoldModel s2 = make_sphere(1.0);
    for (double theta : {0.4, 1.1, 2.5}) {
        const double gpp = oracle::sphere_metric(theta)(1, 1);
        const double dgpp = oracle::derivative([](double t) { return oracle::sphere_metric(t)(1, 1); }, theta);
        const Tensor3 fd = christoffel_fd(s2, s2.chart_index("polar"), point({theta, 1.0}));
        CHECK(fd(1, 0, 1) == doctest::Approx(0.5 * dgpp / gpp).epsilon(1e-8));
    }
}

TEST_CASE("sphere Riemann tensor and curvature scalars") {
    const ManifoldModel s2 = make_sphere(1.0);
    const Tensor4 r = riemann_at(s2, "polar", point({oracle::pi / 2, 0.0}));
    CHECK(r(0, 1, 0, 1) == doctest::Approx(1.0).epsilon(1e-12));
    const Tensor4 rfd = riemann_fd(s2, s2.chart_index("polar"), point({oracle::pi / 2, 0.0}));
    CHECK(std::abs(rfd(0, 1, 0, 1) - 1.0) < 1e-6);

    for (double radius : {0.5, 1.0, 2.0}) {
        const ManifoldModel m = make_sphere(radius);
        for (std::size_t chart = 0; chart < m.charts.size(); ++chart) {
            for (const Point& x : interior_points(m, chart, 20, 3)) {
                CHECK(std::abs(scalar_curvature_at(m, chart, x) - 2.0 / (radius * radius)) < 1e-8);
            }
        }
    }
    CHECK(scalar_curvature_at(make_sphere(2.0), "polar", point({1.0, 1.0})) == doctest::Approx(0.5));
}

TEST_CASE("Euler density reduces to K sqrt(g) / 2 pi") {
    const Point equator = point({oracle::pi / 2, 0.0});
    CHECK(euler_density_at(make_sphere(1.0), "polar", equator) == doctest::Approx(1.0 / (2 * oracle::pi)).epsilon(1e-12));
    CHECK(euler_density_at(make_sphere(2.0), "polar", equator) ==
          doctest::Approx(0.25 * 4.0 / (2 * oracle::pi)).epsilon(1e-12));
    const double theta = 0.7;
    CHECK(euler_density_at(make_sphere(1.0), "polar", point({theta, 2.0})) ==
          doctest::Approx(std::sin(theta) / (2 * oracle::pi)).epsilon(1e-12));
}

TEST_CASE("symplectic forms are closed") {
    CHECK(symplectic_closedness_residual(make_sphere(1.0), "polar", point({1.0, 2.0})) <= 1e-8);
    CHECK(symplectic_closedness_residual(make_flat_torus(), "angles", point({1.0, 2.0})) <= 1e-12);
    const ManifoldModel p = resolve_model("s2xs2");
    CHECK(symplectic_closedness_residual(p, "polar*polar", point({1.0, 2.0, 0.5, 4.0})) <= 1e-8);
}

TEST_CASE("metric, connection and curvature symmetries at random points") {
    for (const std::string name : {"s2", "s2:r=2", "t2", "s2xs2"}) {
        const ManifoldModel m = resolve_model(name);
        const std::size_t d = m.dim;
        for (std::size_t chart = 0; chart < m.charts.size(); ++chart) {
            for (const Point& x : interior_points(m, chart, 10, 11)) {
                const Matrix g = metric_at(m, chart, x);
                CHECK((g - g.transpose()).cwiseAbs().maxCoeff() == 0.0);
                CHECK(Eigen::SelfAdjointEigenSolver<Matrix>(g).eigenvalues().minCoeff() > 0.0);
                const Tensor3 gamma = christoffel_at(m, chart, x);
                const Tensor4 r = riemann_at(m, chart, x);
                const Tensor4 low = lower_first_index(r, g);
                double lower_sym = 0.0, antisym = 0.0, pair = 0.0;
                for (std::size_t a = 0; a < d; ++a)
                    for (std::size_t b = 0; b < d; ++b)
                        for (std::size_t c = 0; c < d; ++c) {
                            lower_sym = std::max(lower_sym, std::abs(gamma(a, b, c) - gamma(a, c, b)));
                            for (std::size_t e = 0; e < d; ++e) {
                                antisym = std::max(antisym, std::abs(r(a, b, c, e) + r(a, b, e, c)));
                                pair = std::max(pair, std::abs(low(a, b, c, e) - low(c, e, a, b)));
                            }
                        }
                CHECK(lower_sym == 0.0);
                CHECK(antisym == 0.0);
                CHECK(pair <= 1e-8);
                CHECK(first_bianchi_residual(r) <= 1e-6);
                CHECK(max_abs_diff(gamma, christoffel_fd(m, chart, x)) / std::max(1.0, max_abs(gamma)) <= 1e-6);
            }
        }
    }
}

TEST_CASE("orthonormal frame diagonalizes the metric") {
    Matrix g(2, 2);
    g << 2.0, 0.3, 0.3, 0.5;
    const Matrix e = orthonormal_frame(g);
    CHECK((e.transpose() * g * e - Matrix::Identity(2, 2)).cwiseAbs().maxCoeff() < 1e-14);
    CHECK(e.determinant() > 0.0);
}

TEST_CASE("scalar field derivatives match central differences") {
    for (const std::string name : {"s2", "t2", "s2xs2"}) {
        const ManifoldModel m = resolve_model(name);
        for (const std::string& fname : registered_functions(m)) {
            const ScalarField f = resolve_function(m, fname == "lin:<a>,<b>" ? "lin:0.7,1.3" : fname);
            for (std::size_t chart = 0; chart < m.charts.size(); ++chart) {
                for (const Point& x : interior_points(m, chart, 5, 5)) {
                    const Vector g = field_gradient(m, f, chart, x);
                    const Vector gfd = field_gradient_fd(m, f, chart, x);
                    CHECK((g - gfd).cwiseAbs().maxCoeff() <= 1e-6 * std::max(1.0, g.cwiseAbs().maxCoeff()));
                    const Matrix h = field_hessian(m, f, chart, x);
                    const Matrix hfd = field_hessian_fd(m, f, chart, x);
                    CHECK((h - hfd).cwiseAbs().maxCoeff() <= 1e-6 * std::max(1.0, h.cwiseAbs().maxCoeff()));
                }
            }
        }
    }
}

TEST_CASE("periodic wrapping and chart membership") {
    const ManifoldModel s2 = make_sphere(1.0);
    const Chart& polar = s2.chart(s2.chart_index("polar")).chart;
    const Point w = wrap_periodic(polar, point({1.0, 2 * oracle::pi + 0.25}));
    CHECK(w[1] == doctest::Approx(0.25));
    CHECK(w[0] == 1.0);
    CHECK(fd_step(polar, 0) == doctest::Approx(1e-5 * oracle::pi));
}

TEST_CASE("geometry error paths") {
    const ManifoldModel s2 = make_sphere(1.0);
    CHECK(fixture::error_code_of([&] { christoffel_at(s2, "polar", point({-0.1, 0.0})); }) ==
          ErrorCode::PointOutsideChart);
    CHECK(fixture::error_code_of([&] { riemann_at(s2, "polar", point({0.0, 1.0})); }) == ErrorCode::PointOutsideChart);
    CHECK(fixture::error_code_of([&] { christoffel_at(s2, "nowhere", point({1.0, 1.0})); }) ==
          ErrorCode::PointOutsideChart);
    Matrix singular(2, 2);
    singular << 1.0, 1.0, 1.0, 1.0;
    CHECK(fixture::error_code_of([&] { inverse_metric(singular); }) == ErrorCode::MetricSingular);

    const ManifoldModel circle = fixture::circle();
    CHECK(fixture::error_code_of([&] { euler_density_at(circle, "angle", point({1.0})); }) == ErrorCode::OddDimension);
    CHECK(fixture::error_code_of([&] { symplectic_closedness_residual(circle, "angle", point({1.0})); }) ==
          ErrorCode::NoSymplecticForm);
    CHECK(scalar_curvature_at(circle, "angle", point({1.0})) == 0.0);
}

TEST_CASE("model registry") {
    CHECK(resolve_model("s2:r=2").charts.size() == make_sphere(2.0).charts.size());
    CHECK(resolve_model("s2xs2").dim == 4);
    CHECK(fixture::error_code_of([] { resolve_model("klein"); }) == ErrorCode::UnknownModel);
    CHECK(fixture::error_code_of([] { resolve_model("s2:r=abc"); }) == ErrorCode::UnknownModel);
    CHECK(fixture::error_code_of([] { resolve_function(make_sphere(1.0), "nope"); }) == ErrorCode::UnknownFunction);
    CHECK(registered_models().size() >= 4);
}

}
