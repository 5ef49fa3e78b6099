#include <benchmark/benchmark.h>

#include "localize/dh.hpp"
#include "localize/grassmann.hpp"
#include "localize/integrate.hpp"
#include "localize/liegroup.hpp"
#include "localize/mathai_quillen.hpp"
#include "localize/models.hpp"

using namespace localize;

static void BM_GrassmannExp(benchmark::State& state) {
    const auto d = static_cast<std::size_t>(state.range(0));
    const auto alg = GrassmannAlgebra::paired(d);
    GrassmannElement x(alg);
    for (std::size_t a = 0; a < d; ++a)
        for (std::size_t b = 0; b < d; ++b)
            x += GrassmannElement::monomial(alg, {alg.psi(a), alg.psibar(b)}, 1.0 / (1.0 + a + 2.0 * b));
    for (auto _ : state) benchmark::DoNotOptimize(grassmann_exp(x));
}
BENCHMARK(BM_GrassmannExp)->Arg(2)->Arg(4);

static void BM_MQDensity(benchmark::State& state) {
    const ManifoldModel m = state.range(0) == 2 ? make_sphere(1.0) : resolve_model("s2xs2");
    const ScalarField f = resolve_function(m, "height");
    const std::size_t chart = m.integration_chart();
    Point x = Point::Constant(static_cast<Eigen::Index>(m.dim), 1.0);
    for (auto _ : state) benchmark::DoNotOptimize(mq_density_at(m, f, {1.0, 1.0}, chart, x));
}
BENCHMARK(BM_MQDensity)->Arg(2)->Arg(4);

static void BM_SpectralTrace(benchmark::State& state) {
    const auto g = resolve_group("su2");
    const double beta = 1.0 / static_cast<double>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(spectral_trace(g, beta));
}
BENCHMARK(BM_SpectralTrace)->Arg(1)->Arg(100);

static void BM_GeodesicTrace(benchmark::State& state) {
    const auto g = resolve_group("su2");
    for (auto _ : state) benchmark::DoNotOptimize(geodesic_trace(g, 1.0, 0.25, 1.0));
}
BENCHMARK(BM_GeodesicTrace);

static void BM_IntegrateExponential(benchmark::State& state) {
    const ManifoldModel m = make_sphere(1.0);
    const ScalarField h = resolve_function(m, "height");
    QuadratureSpec spec;
    spec.cells = static_cast<int>(state.range(0));
    spec.max_refinements = 1;
    for (auto _ : state) benchmark::DoNotOptimize(integrate_exponential(m, h, Complex(0.0, 5.0), spec));
}
BENCHMARK(BM_IntegrateExponential)->Arg(4)->Arg(16);

static void BM_StationarySum(benchmark::State& state) {
    const ManifoldModel m = make_sphere(1.0);
    const ScalarField h = resolve_function(m, "height");
    for (auto _ : state) benchmark::DoNotOptimize(dh_stationary_sum(m, h, Complex(0.0, 1.0)));
}
BENCHMARK(BM_StationarySum);

BENCHMARK_MAIN();
