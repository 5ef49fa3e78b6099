#include "experiments/criteria.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <random>

#include <Eigen/LU>

#include "experiments/experiments.hpp"
#include "localize/dh.hpp"
#include "localize/grassmann.hpp"
#include "localize/liegroup.hpp"
#include "localize/mathai_quillen.hpp"
#include "localize/models.hpp"
#include "localize/morse.hpp"
#include "localize/pfaffian.hpp"

namespace localize::tools {

namespace {

constexpr double kPi = std::numbers::pi;

struct Checks {
    std::vector<CriterionCheck> list;
    void at_most(std::string name, double value, double tol) {
        list.push_back({std::move(name), value, tol, value <= tol});
    }
    void holds(std::string name, bool ok) { list.push_back({std::move(name), ok ? 0.0 : 1.0, 0.0, ok}); }
};

double rel(Complex a, Complex b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

QuadratureSpec light_4d_rule() {
    QuadratureSpec q;
    q.order = 12;
    q.cells = 1;
    return q;
}

MorseOptions light_4d_morse() {
    MorseOptions o;
    o.seeds_per_axis = 8;
    return o;
}

void gauss_bonnet_criterion(Checks& c) {
    for (double r : {0.5, 1.0, 2.0}) {
        char name[64];
        std::snprintf(name, sizeof name, "S2(r=%g) Euler integral vs 2", r);
        const ManifoldModel m = make_sphere(r);
        c.at_most(name, std::abs(gauss_bonnet(m, {}).value.real() - 2.0), 1e-6);
    }
    c.at_most("T2 Euler integral vs 0", std::abs(gauss_bonnet(make_flat_torus(), {}).value.real()), 1e-9);
    const ManifoldModel p = resolve_model("s2xs2");
    c.at_most("S2xS2 Euler integral vs 4", std::abs(gauss_bonnet(p, light_4d_rule()).value.real() - 4.0), 1e-4);
}

void poincare_hopf_criterion(Checks& c) {
    const ManifoldModel s2 = resolve_model("s2");
    const ManifoldModel t2 = resolve_model("t2");
    const ManifoldModel p = resolve_model("s2xs2");
    const auto s2_points = find_critical_points(s2, resolve_function(s2, "height"));
    const auto t2_points = find_critical_points(t2, resolve_function(t2, "double-cosine"));
    const auto p_points = find_critical_points(p, resolve_function(p, "generic"), light_4d_morse());
    c.at_most("S2 height index sum vs 2", std::abs(poincare_hopf_sum(s2_points) - 2), 0.0);
    c.at_most("T2 double-cosine index sum vs 0", std::abs(poincare_hopf_sum(t2_points)), 0.0);
    c.at_most("S2xS2 generic index sum vs 4", std::abs(poincare_hopf_sum(p_points) - 4), 0.0);
    c.at_most("S2 height point count vs 2", std::abs(static_cast<double>(s2_points.size()) - 2.0), 0.0);
    c.at_most("T2 point count vs 4", std::abs(static_cast<double>(t2_points.size()) - 4.0), 0.0);
    c.at_most("S2xS2 point count vs 4", std::abs(static_cast<double>(p_points.size()) - 4.0), 0.0);
}

void flatness_criterion(Checks& c) {
    const ManifoldModel s2 = resolve_model("s2");
    const ScalarField f = resolve_function(s2, "height");
    double lo = INFINITY, hi = -INFINITY;
    double at_zero = 0.0, at_eight = 0.0;
    for (double s : {0.0, 0.25, 0.5, 1.0, 2.0, 4.0, 8.0}) {
        for (double beta : {0.5, 1.0, 2.0}) {
            const double v = mq_integral(s2, f, MQParams{s, beta}, {}).value.real();
            lo = std::min(lo, v);
            hi = std::max(hi, v);
            if (s == 0.0 && beta == 1.0) at_zero = v;
            if (s == 8.0 && beta == 1.0) at_eight = v;
        }
    }
    c.at_most("relative spread over s x beta", (hi - lo) / std::abs(0.5 * (hi + lo)), 1e-4);
    const double gb = gauss_bonnet(s2, {}).value.real();
    const int ph = poincare_hopf_sum(find_critical_points(s2, f));
    c.at_most("s=0 endpoint vs Gauss-Bonnet", std::abs(at_zero - gb), 1e-4);
    c.at_most("s=8 endpoint vs Poincare-Hopf", std::abs(at_eight - ph), 1e-4);
}

void dh_criterion(Checks& c) {
    const ManifoldModel s2 = resolve_model("s2");
    const ScalarField h = resolve_function(s2, "height");
    const Complex i(0.0, 1.0);
    for (Complex t : {Complex(1.0), Complex(-1.0), i, 2.0 * i, 5.0 * i}) {
        char name[64];
        std::snprintf(name, sizeof name, "S2 height residual t=(%g,%g)", t.real(), t.imag());
        c.at_most(name, dh_residual(s2, h, t, {}).rel_residual, 1e-8);
    }
    const ManifoldModel p = resolve_model("s2xs2");
    const ScalarField hp = resolve_function(p, "generic");
    for (Complex t : {i, 2.0 * i}) {
        char name[64];
        std::snprintf(name, sizeof name, "S2xS2 generic residual t=(%g,%g)", t.real(), t.imag());
        c.at_most(name, dh_residual(p, hp, t, light_4d_rule(), light_4d_morse()).rel_residual, 1e-8);
    }
    c.at_most("stationary sum t=1 vs 4 pi sinh 1", rel(dh_stationary_sum(s2, h, 1.0).sum, 4.0 * kPi * std::sinh(1.0)),
              1e-12);
    c.at_most("stationary sum t=i vs 4 pi sin 1", rel(dh_stationary_sum(s2, h, i).sum, 4.0 * kPi * std::sin(1.0)),
              1e-12);
    c.at_most("quadrature t=1 vs 4 pi sinh 1",
              rel(integrate_exponential(s2, h, 1.0, {}).value, 4.0 * kPi * std::sinh(1.0)), 1e-10);
    c.at_most("quadrature t=i vs 4 pi sin 1", rel(integrate_exponential(s2, h, i, {}).value, 4.0 * kPi * std::sin(1.0)),
              1e-10);
}

void theta_criterion(Checks& c) {
    const CompactGroupModel u1 = resolve_group("u1");
    double worst = 0.0;
    for (int k = 0; k < 7; ++k) {
        const double beta = 0.05 * std::pow(10.0, k / 3.0);
        const double peak = spectral_kernel(u1, 0.0, beta);
        for (double theta : {0.0, 1.0, 2.0}) {
            const double diff = std::abs(geodesic_kernel(u1, theta, beta, 0.0, 1.0) - spectral_kernel(u1, theta, beta));
            worst = std::max(worst, diff / peak);
        }
    }
    c.at_most("max difference / K(0, beta) over 7 beta x 3 theta", worst, 1e-12);
}

void semiclassical_criterion(Checks& c) {
    std::vector<double> shifts;
    for (const char* name : {"su2", "so3"}) {
        const CompactGroupModel g = resolve_group(name);
        const ShiftFit fit = calibrate_shift(g, {0.5, 1.0});
        shifts.push_back(fit.shift);
        double worst_trace = 0.0, worst_kernel = 0.0;
        const double thetas[] = {kPi / 4.0, kPi / 2.0, 3.0 * kPi / 4.0};
        for (double beta : {0.2, 2.0, 4.0}) {
            worst_trace = std::max(worst_trace, compare_trace(g, beta, fit).rel_diff);
            for (double theta : thetas) worst_kernel = std::max(worst_kernel, compare_kernel(g, theta, beta, fit).rel_diff);
        }
        const std::string n(name);
        c.at_most(n + " held-out trace rel diff", worst_trace, 1e-6);
        c.at_most(n + " held-out kernel rel diff", worst_kernel, 1e-6);
        const DeWittReport d = dewitt_constancy_report(g, {0.2, 0.5, 1.0, 2.0, 4.0});
        c.at_most(n + " leave-one-out shift spread", d.shift_spread, 1e-4);
    }
    c.at_most("su2 vs so3 shift", std::abs(shifts[0] - shifts[1]), 1e-6);
    const CompactGroupModel wrong(GroupKind::SU2, GeodesicRule::WrongLengths);
    const DeWittReport d = dewitt_constancy_report(wrong, {0.2, 0.5, 1.0, 2.0, 4.0});
    c.holds("wrong-lengths control is rejected", !d.pass);
    c.holds("wrong-lengths fit residual exceeds 100x tolerance", d.full_fit.fit_residual > 100.0 * d.residual_tolerance);
}

GrassmannElement random_element(const GrassmannAlgebra& alg, std::mt19937_64& rng, bool odd_only) {
    std::uniform_int_distribution<int> coef(-3, 3);
    std::bernoulli_distribution keep(0.3);
    GrassmannElement e(alg);
    for (std::uint32_t mask = 0; mask <= alg.top_mask(); ++mask) {
        if (odd_only && std::popcount(mask) % 2 == 0) continue;
        if (keep(rng)) e.add_term(mask, Complex(coef(rng), coef(rng)));
    }
    return e;
}

void structure_criterion(Checks& c) {
    std::mt19937_64 rng(7);
    double worst_christoffel = 0.0, worst_riemann = 0.0;
    for (const char* name : {"s2", "s2:r=0.5", "s2:r=2", "t2", "s2xs2"}) {
        const ManifoldModel m = resolve_model(name);
        for (std::size_t chart = 0; chart < m.charts.size(); ++chart) {
            for (const Point& x : sample_chart_points(m, chart, 100, rng)) {
                const CurvatureSample s = curvature_sample(m, chart, x);
                worst_christoffel = std::max(worst_christoffel, s.christoffel_diff);
                worst_riemann = std::max(worst_riemann, s.riemann_diff);
            }
        }
    }
    c.at_most("Christoffel analytic vs finite difference", worst_christoffel, 1e-6);
    c.at_most("Riemann analytic vs finite difference", worst_riemann, 1e-6);

    int assoc_failures = 0, anticommute_failures = 0, nilpotent_failures = 0;
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t d = 1 + static_cast<std::size_t>(trial % 3);
        const GrassmannAlgebra alg = GrassmannAlgebra::paired(d);
        const auto a = random_element(alg, rng, false);
        const auto b = random_element(alg, rng, false);
        const auto e = random_element(alg, rng, false);
        if (!((a * b) * e - a * (b * e)).is_zero()) ++assoc_failures;
        const auto oa = random_element(alg, rng, true);
        const auto ob = random_element(alg, rng, true);
        if (!(oa * ob + ob * oa).is_zero()) ++anticommute_failures;
        for (std::size_t g = 0; g < alg.generators(); ++g) {
            const auto x = GrassmannElement::generator(alg, g);
            if (!(x * x).is_zero()) ++nilpotent_failures;
        }
    }
    c.at_most("associativity failures (200 triples)", assoc_failures, 0.0);
    c.at_most("odd anticommutativity failures", anticommute_failures, 0.0);
    c.at_most("generator square failures", nilpotent_failures, 0.0);

    std::uniform_real_distribution<double> u(-1.0, 1.0);
    double worst_pf = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
        const Eigen::Index n = 2 * (1 + trial % 4);
        Matrix a(n, n);
        for (Eigen::Index i = 0; i < n; ++i) {
            a(i, i) = 0.0;
            for (Eigen::Index j = i + 1; j < n; ++j) {
                a(i, j) = u(rng);
                a(j, i) = -a(i, j);
            }
        }
        const double pf = pfaffian(a);
        const double det = a.determinant();
        worst_pf = std::max(worst_pf, std::abs(pf * pf - det) / std::max(1.0, std::abs(det)));
    }
    c.at_most("Pf^2 vs det on random antisymmetric matrices", worst_pf, 1e-10);
}

void smalltime_criterion(Checks& c) {
    for (const char* name : {"u1", "su2"}) {
        const CompactGroupModel g = resolve_group(name);
        const double shift = calibrate_shift(g, {0.5, 1.0}).shift;
        const SmallTimeReport r = smalltime_report(g, {0.01, 0.02}, shift);
        c.at_most(std::string(name) + " rescaled trace drift 0.01 -> 0.02", r.drift, 0.02);
        c.holds(std::string(name) + " finite positive limit", std::isfinite(r.limit_estimate) && r.limit_estimate > 0.0);
    }
}

struct Definition {
    const char* title;
    double time_limit;
    void (*run)(Checks&);
};

const Definition kDefinitions[kCriterionCount] = {
    {"Gauss-Bonnet", 30.0, gauss_bonnet_criterion},
    {"Poincare-Hopf", 5.0, poincare_hopf_criterion},
    {"Mathai-Quillen flatness", 120.0, flatness_criterion},
    {"Duistermaat-Heckman exactness", 60.0, dh_criterion},
    {"Theta identity (u1)", 1.0, theta_criterion},
    {"Semiclassical exactness with DeWitt shift", 10.0, semiclassical_criterion},
    {"Geometry and algebra cross-checks", 10.0, structure_criterion},
    {"Small-beta Weyl behavior", 5.0, smalltime_criterion},
};

}  // namespace

CriterionResult run_criterion(int id) {
    const Definition& def = kDefinitions[id - 1];
    CriterionResult result;
    result.id = id;
    result.title = def.title;
    result.time_limit_seconds = def.time_limit;
    Checks checks;
    const auto start = std::chrono::steady_clock::now();
    try {
        def.run(checks);
    } catch (const std::exception& e) {
        checks.holds(std::string("completed without error: ") + e.what(), false);
    }
    result.elapsed_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    result.checks = std::move(checks.list);
    result.pass = !result.checks.empty();
    for (const auto& ch : result.checks) result.pass = result.pass && ch.pass;
    result.within_time = result.elapsed_seconds < result.time_limit_seconds;
    return result;
}

std::vector<CriterionResult> run_acceptance() {
    std::vector<CriterionResult> out;
    for (int id = 1; id <= kCriterionCount; ++id) out.push_back(run_criterion(id));
    return out;
}

std::string verdict_line(const CriterionResult& r) {
    char buf[256];
    const bool ok = r.pass && r.within_time;
    std::snprintf(buf, sizeof buf, "%s  %d  %-44s (%zu %s, %.2f s / %g s)", ok ? "PASS" : "FAIL", r.id,
                  r.title.c_str(), r.checks.size(), r.checks.size() == 1 ? "check" : "checks", r.elapsed_seconds,
                  r.time_limit_seconds);
    return buf;
}

}  // namespace localize::tools
