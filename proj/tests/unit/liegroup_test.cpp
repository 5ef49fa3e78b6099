#include "doctest.h"
#include "fixtures.hpp"
#include "localize/liegroup.hpp"
#include "oracles.hpp"

using namespace localize;

namespace {

// sum_n e^{-beta n^2} cos(n theta) / 2 pi
double u1_kernel(double theta, double beta) {
    double s = 1.0;
    for (int n = 1; n < 1000; ++n) s += 2.0 * std::exp(-beta * n * n) * std::cos(n * theta);
    return s / (2.0 * oracle::pi);
}

// sum_j (2j+1) sin((2j+1) theta/2) / sin(theta/2) e^{-beta j(j+1)}
double su2_kernel(double theta, double beta, bool integer_only) {
    double s = 0.0;
    for (int k = 0; k < 400; k += integer_only ? 2 : 1) {
        const double j = 0.5 * k;
        s += (2 * j + 1) * std::sin((2 * j + 1) * theta / 2) / std::sin(theta / 2) * std::exp(-beta * j * (j + 1));
    }
    return s;
}

double measure_total(const CompactGroupModel& g) {
    const int n = 20000;
    const double a = g.class_lower(), b = g.class_upper(), h = (b - a) / n;
    double s = 0.5 * (g.class_measure(a) + g.class_measure(b));
    for (int i = 1; i < n; ++i) s += g.class_measure(a + i * h);
    return s * h;
}

}  // namespace

TEST_SUITE("liegroup") {

TEST_CASE("spectral values against direct summation") {
    const auto u1 = resolve_group("u1");
    const auto su2 = resolve_group("su2");
    const auto so3 = resolve_group("so3");
    CHECK(spectral_kernel(u1, 0.0, 1.0) == doctest::Approx(0.28212397345676224).epsilon(1e-14));
    CHECK(spectral_kernel(u1, 0.0, 1.0) == doctest::Approx(oracle::theta_series(1.0) / (2 * oracle::pi)).epsilon(1e-14));
    CHECK(spectral_trace(su2, 1.0) == doctest::Approx(4.55175158893748939).epsilon(1e-14));
    CHECK(spectral_trace(so3, 1.0) == doctest::Approx(2.28028758691625251).epsilon(1e-14));
    for (double beta : {0.05, 0.3, 2.0}) {
        CHECK(spectral_trace(su2, beta) == doctest::Approx(oracle::su2_trace(beta)).epsilon(1e-13));
        CHECK(spectral_trace(so3, beta) == doctest::Approx(oracle::su2_trace(beta, true)).epsilon(1e-13));
        CHECK(spectral_trace(u1, beta) == doctest::Approx(oracle::theta_series(beta)).epsilon(1e-13));
        for (double theta : {0.5, 2.0, 3.0}) {
            CHECK(spectral_kernel(u1, theta, beta) == doctest::Approx(u1_kernel(theta, beta)).epsilon(1e-12));
            CHECK(spectral_kernel(su2, theta, beta) == doctest::Approx(su2_kernel(theta, beta, false)).epsilon(1e-11));
            CHECK(spectral_kernel(so3, theta, beta) == doctest::Approx(su2_kernel(theta, beta, true)).epsilon(1e-11));
        }
    }
}

TEST_CASE("large beta keeps only the trivial representation") {
    for (const char* name : {"u1", "su2", "so3"}) CHECK(spectral_trace(resolve_group(name), 60.0) == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("heat trace decreases with beta") {
    for (const char* name : {"u1", "su2", "so3"}) {
        const auto g = resolve_group(name);
        double prev = spectral_trace(g, 0.05);
        for (double beta = 0.1; beta < 5.0; beta *= 1.5) {
            const double cur = spectral_trace(g, beta);
            CHECK(cur < prev);
            prev = cur;
        }
    }
}

TEST_CASE("characters and measure") {
    for (const char* name : {"u1", "su2", "so3"}) {
        const auto g = resolve_group(name);
        CHECK(measure_total(g) == doctest::Approx(1.0).epsilon(1e-8));
        for (std::size_t k = 0; k < 5; ++k) {
            for (const Irrep& r : g.level(k)) {
                CHECK(std::abs(g.character(r, 0.0) - Complex(r.dim)) <= 1e-12);
                CHECK(std::abs(g.character(r, 1e-9) - Complex(r.dim)) <= 1e-6);
            }
        }
    }
    const auto su2 = resolve_group("su2");
    for (std::size_t k = 0; k < 6; ++k) {
        for (const Irrep& r : su2.level(k)) {
            const double theta = 1.1;
            CHECK(su2.character(r, theta).real() ==
                  doctest::Approx(std::sin((2 * r.label + 1) * theta / 2) / std::sin(theta / 2)).epsilon(1e-12));
        }
    }
}

TEST_CASE("u1 kernel equals its winding sum") {
    const auto u1 = resolve_group("u1");
    for (int k = 0; k <= 6; ++k) {
        const double beta = 0.05 * std::pow(10.0, k / 3.0);
        for (double theta : {0.0, 1.0, 2.0, 3.0}) {
            const double spec = spectral_kernel(u1, theta, beta);
            const double geo = geodesic_kernel(u1, theta, beta, 0.0, 1.0);
            CHECK(std::abs(spec - geo) <= 1e-12 * spectral_kernel(u1, 0.0, beta));
        }
    }
}

TEST_CASE("calibration") {
    const ShiftFit u1 = calibrate_shift(resolve_group("u1"), {0.5, 1.0, 2.0});
    CHECK(std::abs(u1.amplitude - 1.0) <= 1e-10);
    CHECK(std::abs(u1.shift) <= 1e-10);

    const ShiftFit su2 = calibrate_shift(resolve_group("su2"), {0.5, 1.0});
    CHECK(su2.shift == doctest::Approx(0.25).epsilon(1e-8));
    CHECK(su2.amplitude == doctest::Approx(16 * oracle::pi * oracle::pi).epsilon(1e-8));
    const ShiftFit so3 = calibrate_shift(resolve_group("so3"), {0.5, 1.0});
    CHECK(so3.shift == doctest::Approx(0.25).epsilon(1e-8));
    CHECK(so3.amplitude == doctest::Approx(8 * oracle::pi * oracle::pi).epsilon(1e-8));

    const auto g = resolve_group("su2");
    for (double beta : {0.2, 1.0, 4.0}) {
        CHECK(compare_trace(g, beta, su2).rel_diff <= 1e-9);
        for (double theta : {0.5, 1.5, 3.0}) CHECK(compare_kernel(g, theta, beta, su2).rel_diff <= 1e-9);
    }
}

TEST_CASE("shift constancy and the wrong-length control") {
    const std::vector<double> betas{0.2, 0.5, 1.0, 2.0, 4.0};
    const DeWittReport good = dewitt_constancy_report(resolve_group("su2"), betas);
    CHECK(good.pass);
    CHECK(good.leave_one_out_shifts.size() == betas.size());
    const DeWittReport bad = dewitt_constancy_report(resolve_group("su2", GeodesicRule::WrongLengths), betas);
    CHECK_FALSE(bad.pass);
}

TEST_CASE("small-time limit") {
    const auto g = resolve_group("su2");
    const SmallTimeReport r = smalltime_report(g, {0.01, 0.02}, 0.25);
    CHECK(r.rescaled.size() == 2);
    CHECK(r.drift <= 1e-3);
    CHECK(r.limit_estimate > 0.0);
}

TEST_CASE("amplitude times root measure stays bounded") {
    for (const char* name : {"su2", "so3"}) {
        const auto g = resolve_group(name);
        double worst = 0.0;
        for (double theta = 1e-12; theta < 1.0; theta *= 10.0) {
            const double v = g.amplitude_sqrt_measure(0, theta);
            CHECK(std::isfinite(v));
            worst = std::max(worst, std::abs(v));
        }
        CHECK(worst <= std::abs(g.amplitude_sqrt_measure(0, 1.0)));
        CHECK(fixture::error_code_of([&] { g.geodesic_amplitude(0, 0.0); }) == ErrorCode::ConjugacyClassSingular);
    }
}

TEST_CASE("error paths") {
    const auto g = resolve_group("su2");
    CHECK(fixture::error_code_of([&] { spectral_trace(g, 0.0); }) == ErrorCode::BetaNonpositive);
    CHECK(fixture::error_code_of([&] { spectral_kernel(g, 1.0, -1.0); }) == ErrorCode::BetaNonpositive);
    CHECK(fixture::error_code_of([&] { calibrate_shift(g, {1.0}); }) == ErrorCode::SingularFit);
    CHECK(fixture::error_code_of([&] { calibrate_shift(g, {1.0, 1.0}); }) == ErrorCode::SingularFit);
    CHECK(fixture::error_code_of([&] { dewitt_constancy_report(g, {0.5, 1.0, 2.0}); }) == ErrorCode::InvalidArgument);
    CHECK(fixture::error_code_of([&] { smalltime_report(g, {0.1}, 0.25); }) == ErrorCode::InvalidArgument);
    CHECK(fixture::error_code_of([] { resolve_group("sp4"); }) == ErrorCode::UnknownModel);
}

}
