#include "experiments/experiments.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numbers>

#include <Eigen/Eigenvalues>

#include "experiments/criteria.hpp"
#include "localize/dh.hpp"
#include "localize/error.hpp"
#include "localize/liegroup.hpp"
#include "localize/mathai_quillen.hpp"
#include "localize/models.hpp"
#include "localize/morse.hpp"

namespace localize::tools {

namespace {

double tolerance_or(const ExperimentConfig& c, double fallback) { return c.assert_tol.value_or(fallback); }

void put_point(Json& record, const Point& x) {
    for (Eigen::Index i = 0; i < x.size(); ++i) record["x" + std::to_string(i)] = x[i];
}

Json run_curvature(const ExperimentConfig& c) {
    Json report = new_report(c);
    const ManifoldModel m = resolve_model(c.model);
    const double tol = tolerance_or(c, 1e-6);
    std::mt19937_64 rng(c.seed);
    double worst_christoffel = 0.0, worst_riemann = 0.0, worst_bianchi = 0.0, worst_pair = 0.0;
    double worst_closed = 0.0, min_eig = INFINITY;
    double r_min = INFINITY, r_max = -INFINITY;
    for (std::size_t chart = 0; chart < m.charts.size(); ++chart) {
        for (const Point& x : sample_chart_points(m, chart, c.points, rng)) {
            const CurvatureSample s = curvature_sample(m, chart, x);
            Json r;
            r["chart"] = m.chart(chart).chart.id;
            put_point(r, x);
            r["scalar_curvature"] = s.scalar_curvature;
            r["euler_density"] = s.euler_density;
            r["christoffel_diff"] = s.christoffel_diff;
            r["riemann_diff"] = s.riemann_diff;
            r["bianchi"] = s.bianchi;
            r["pair_symmetry"] = s.pair_symmetry;
            r["metric_min_eigenvalue"] = s.metric_min_eigenvalue;
            if (m.has_symplectic()) {
                const double closed = symplectic_closedness_residual(m, chart, x);
                r["closedness"] = closed;
                worst_closed = std::max(worst_closed, closed);
            }
            worst_christoffel = std::max(worst_christoffel, s.christoffel_diff);
            worst_riemann = std::max(worst_riemann, s.riemann_diff);
            worst_bianchi = std::max(worst_bianchi, s.bianchi);
            worst_pair = std::max(worst_pair, s.pair_symmetry);
            min_eig = std::min(min_eig, s.metric_min_eigenvalue);
            r_min = std::min(r_min, s.scalar_curvature);
            r_max = std::max(r_max, s.scalar_curvature);
            report["records"].push_back(r);
        }
    }
    add_check(report, "christoffel analytic vs finite difference", worst_christoffel, tol);
    add_check(report, "riemann analytic vs finite difference", worst_riemann, tol);
    add_check(report, "first Bianchi residual", worst_bianchi, tol);
    add_check(report, "pair symmetry of lowered Riemann", worst_pair, 1e-8);
    add_check(report, "scalar curvature spread", r_max - r_min, 1e-8);
    add_verdict(report, "metric positive definite", min_eig > 0.0, "min eigenvalue " + std::to_string(min_eig));
    if (m.has_symplectic()) add_check(report, "symplectic closedness", worst_closed, 1e-8);
    return report;
}

int index_sum_of(const ManifoldModel& m, const ScalarField& f, const MorseOptions& options) {
    const auto points = find_critical_points(m, f, options);
    return poincare_hopf_sum(points);
}

Json run_gauss_bonnet(const ExperimentConfig& c) {
    Json report = new_report(c);
    const ManifoldModel m = resolve_model(c.model);
    const QuadratureSpec q = effective_quadrature(c, m);
    const IntegralResult gb = gauss_bonnet(m, q);
    const IntegralResult area =
        integrate_density(m, [](std::size_t, const Point&) { return Complex(1.0); }, Measure::Metric, q);
    const int chi = index_sum_of(m, resolve_function(m, c.function), effective_morse(c, m));
    Json r;
    r["model"] = m.name;
    r["value"] = gb.value.real();
    r["abs_error_estimate"] = gb.abs_error_estimate;
    r["levels_used"] = gb.levels_used;
    r["nodes"] = gb.nodes;
    r["converged"] = gb.converged;
    r["metric_volume"] = area.value.real();
    if (m.has_symplectic()) {
        const IntegralResult liouville =
            integrate_density(m, [](std::size_t, const Point&) { return Complex(1.0); }, Measure::Liouville, q);
        r["liouville_volume"] = liouville.value.real();
        add_check(report, "Liouville vs metric volume", std::abs(liouville.value.real() - area.value.real()) /
                                                              std::abs(area.value.real()),
                  1e-10);
    }
    r["index_sum"] = chi;
    r["index_function"] = c.function;
    report["records"].push_back(r);
    add_check(report, "|gauss_bonnet - index sum|", std::abs(gb.value.real() - chi), tolerance_or(c, 1e-6));
    add_verdict(report, "quadrature converged", gb.converged, "levels " + std::to_string(gb.levels_used));
    return report;
}

Json run_morse(const ExperimentConfig& c) {
    Json report = new_report(c);
    const ManifoldModel m = resolve_model(c.model);
    const ScalarField f = resolve_function(m, c.function);
    const MorseOptions options = effective_morse(c, m);
    const auto points = find_critical_points(m, f, options);
    double worst_grad = 0.0;
    for (const auto& p : points) {
        const double g = field_gradient(m, f, p.chart_index, p.x).norm();
        worst_grad = std::max(worst_grad, g);
        Json r;
        r["chart"] = p.chart;
        put_point(r, p.x);
        r["value"] = p.value;
        r["index"] = p.index;
        r["nondegenerate"] = p.nondegenerate;
        r["grad_norm"] = g;
        report["records"].push_back(r);
    }
    report["point_count"] = points.size();
    if (any_degenerate(points)) {
        report["index_sum"] = nullptr;
        add_verdict(report, "nondegenerate critical points", false, "DegenerateCriticalPoint reported");
    } else {
        report["index_sum"] = poincare_hopf_sum(points);
        add_verdict(report, "nondegenerate critical points", true, std::to_string(points.size()) + " points");
    }
    add_check(report, "max |grad H| at returned points", worst_grad, options.grad_tol);
    return report;
}

Json run_dh(const ExperimentConfig& c) {
    Json report = new_report(c);
    const ManifoldModel m = resolve_model(c.model);
    const ScalarField h = resolve_function(m, c.function);
    const QuadratureSpec q = effective_quadrature(c, m);
    const MorseOptions options = effective_morse(c, m);
    double worst = 0.0;
    for (const Complex t : c.t) {
        if (t == Complex(0.0)) throw Error(ErrorCode::ConfigError, "t must be nonzero");
        const DHReport dh = dh_residual(m, h, t, q, options);
        Json r;
        r["t_re"] = t.real();
        r["t_im"] = t.imag();
        r["exact_re"] = dh.exact.real();
        r["exact_im"] = dh.exact.imag();
        r["sum_re"] = dh.sum.real();
        r["sum_im"] = dh.sum.imag();
        r["rel_residual"] = dh.rel_residual;
        r["quadrature_nodes"] = dh.quadrature.nodes;
        r["quadrature_converged"] = dh.quadrature.converged;
        Json terms = Json::array();
        for (const auto& term : dh.terms) {
            Json tj;
            tj["chart"] = term.point.chart;
            tj["x"] = std::vector<double>(term.point.x.data(), term.point.x.data() + term.point.x.size());
            tj["index"] = term.point.index;
            tj["phase_factor"] = complex_json(term.phase_factor);
            tj["amplitude"] = complex_json(term.amplitude);
            tj["contribution"] = complex_json(term.contribution);
            terms.push_back(tj);
        }
        r["terms"] = terms;
        worst = std::max(worst, dh.rel_residual);
        report["records"].push_back(r);
    }
    add_check(report, "max DH relative residual", worst, tolerance_or(c, 1e-8));
    return report;
}

Json run_mq_sweep(const ExperimentConfig& c) {
    Json report = new_report(c);
    const ManifoldModel m = resolve_model(c.model);
    const ScalarField f = resolve_function(m, c.function);
    const QuadratureSpec q = effective_quadrature(c, m);
    const int chi = index_sum_of(m, f, effective_morse(c, m));
    const double gb = gauss_bonnet(m, q).value.real();
    double lo = INFINITY, hi = -INFINITY, sum = 0.0;
    double at_zero = NAN, at_max = NAN;
    const double s_max = *std::max_element(c.s.begin(), c.s.end());
    bool converged = true;
    for (double s : c.s) {
        for (double beta : c.beta) {
            const IntegralResult mq = mq_integral(m, f, MQParams{s, beta}, q);
            const double v = mq.value.real();
            Json r;
            r["s"] = s;
            r["beta"] = beta;
            r["value"] = v;
            r["deviation"] = v - chi;
            r["abs_error_estimate"] = mq.abs_error_estimate;
            r["converged"] = mq.converged;
            report["records"].push_back(r);
            converged = converged && mq.converged;
            lo = std::min(lo, v);
            hi = std::max(hi, v);
            sum += v;
            if (s == 0.0 && std::isnan(at_zero)) at_zero = v;
            if (s == s_max) at_max = v;
        }
    }
    const double mean = sum / static_cast<double>(c.s.size() * c.beta.size());
    const double scale = std::max(std::abs(mean), 1.0);
    report["index_sum"] = chi;
    report["gauss_bonnet"] = gb;
    add_check(report, "relative spread over (s, beta)", (hi - lo) / scale, tolerance_or(c, 1e-4));
    if (!std::isnan(at_zero)) add_check(report, "|mq(s=0) - gauss_bonnet|", std::abs(at_zero - gb), 1e-4);
    add_check(report, "|mq(s=max) - index sum|", std::abs(at_max - chi), 1e-4);
    add_verdict(report, "quadrature converged", converged, "all grid points");
    return report;
}

Json heat_json(const HeatComparison& h, const char* kind) {
    Json r;
    r["kind"] = kind;
    r["theta"] = std::isnan(h.theta) ? Json(nullptr) : Json(h.theta);
    r["beta"] = h.beta;
    r["spectral"] = h.spectral;
    r["geodesic"] = h.geodesic;
    r["shift_used"] = h.shift_used;
    r["amplitude_used"] = h.amplitude_used;
    r["spectral_terms"] = h.spectral_terms;
    r["geodesic_terms"] = h.geodesic_terms;
    r["rel_diff"] = h.rel_diff;
    return r;
}

Json fit_json(const ShiftFit& f) {
    return Json{{"amplitude", f.amplitude}, {"shift", f.shift}, {"fit_residual", f.fit_residual}};
}

GeodesicRule rule_of(const ExperimentConfig& c) {
    return c.wrong_lengths ? GeodesicRule::WrongLengths : GeodesicRule::Native;
}

Json run_heat(const ExperimentConfig& c) {
    Json report = new_report(c);
    const CompactGroupModel g = resolve_group(c.group, rule_of(c));
    const ShiftFit fit = calibrate_shift(g, c.calibration_beta);
    report["calibration"] = fit_json(fit);
    double worst = 0.0;
    for (double beta : c.beta) {
        const HeatComparison tr = compare_trace(g, beta, fit);
        worst = std::max(worst, tr.rel_diff);
        report["records"].push_back(heat_json(tr, "trace"));
        for (double theta : c.theta) {
            const HeatComparison k = compare_kernel(g, theta, beta, fit);
            worst = std::max(worst, k.rel_diff);
            report["records"].push_back(heat_json(k, "kernel"));
        }
    }
    add_check(report, "max relative difference spectral vs geodesic", worst, tolerance_or(c, 1e-6));
    return report;
}

Json run_dewitt(const ExperimentConfig& c) {
    Json report = new_report(c);
    const CompactGroupModel g = resolve_group(c.group, rule_of(c));
    const DeWittReport d = dewitt_constancy_report(g, c.beta);
    report["calibration"] = fit_json(d.full_fit);
    report["shift_spread"] = d.shift_spread;
    for (std::size_t i = 0; i < d.betas.size(); ++i) {
        Json r;
        r["left_out_beta"] = d.betas[i];
        r["shift"] = d.leave_one_out_shifts[i];
        r["spectral_trace"] = spectral_trace(g, d.betas[i]);
        r["geodesic_trace"] = geodesic_trace(g, d.betas[i], d.full_fit.shift, d.full_fit.amplitude);
        report["records"].push_back(r);
    }
    add_check(report, "leave-one-out shift spread", d.shift_spread, tolerance_or(c, d.tolerance));
    add_check(report, "calibration fit residual", d.full_fit.fit_residual, d.residual_tolerance);
    return report;
}

Json run_smalltime(const ExperimentConfig& c) {
    Json report = new_report(c);
    const CompactGroupModel g = resolve_group(c.group, rule_of(c));
    const double shift = c.shift ? *c.shift : calibrate_shift(g, c.calibration_beta).shift;
    const SmallTimeReport s = smalltime_report(g, c.beta, shift);
    report["shift"] = s.shift;
    report["limit_estimate"] = s.limit_estimate;
    report["drift"] = s.drift;
    for (std::size_t i = 0; i < s.betas.size(); ++i) {
        report["records"].push_back(Json{{"beta", s.betas[i]}, {"rescaled_trace", s.rescaled[i]}});
    }
    add_check(report, "drift between the two smallest beta", s.drift, tolerance_or(c, 0.02));
    add_verdict(report, "finite positive limit", std::isfinite(s.limit_estimate) && s.limit_estimate > 0.0,
                std::to_string(s.limit_estimate));
    return report;
}

Json run_full_suite(const ExperimentConfig& c) {
    Json report = new_report(c);
    Json timing = Json::object();
    double total = 0.0;
    for (const CriterionResult& r : run_acceptance()) {
        Json rec;
        rec["id"] = r.id;
        rec["criterion"] = r.title;
        rec["pass"] = r.pass;
        rec["time_limit_seconds"] = r.time_limit_seconds;
        Json checks = Json::array();
        for (const auto& ch : r.checks) {
            checks.push_back(Json{{"name", ch.name}, {"value", ch.value}, {"tolerance", ch.tolerance}, {"pass", ch.pass}});
        }
        rec["checks"] = checks;
        report["records"].push_back(rec);
        add_verdict(report, std::to_string(r.id) + " " + r.title, r.pass,
                    std::to_string(r.checks.size()) + " checks");
        timing[std::to_string(r.id)] = r.elapsed_seconds;
        total += r.elapsed_seconds;
    }
    timing["total"] = total;
    report["wall_clock"] = timing;
    return report;
}

Json run_list(const ExperimentConfig& c) {
    Json report = new_report(c);
    std::vector<std::string> missing;
    for (const auto& op : library_operations()) {
        bool found = false;
        for (const auto& cov : operation_coverage()) {
            if (std::find(cov.operations.begin(), cov.operations.end(), op) != cov.operations.end()) found = true;
        }
        if (!found) missing.push_back(op);
    }
    for (const auto& cov : operation_coverage()) {
        std::string joined;
        for (const auto& op : cov.operations) joined += (joined.empty() ? "" : " ") + op;
        report["records"].push_back(Json{{"experiment", cov.experiment}, {"operations", joined}});
    }
    report["models"] = registered_models();
    report["groups"] = std::vector<std::string>{"u1", "su2", "so3"};
    std::string detail = missing.empty() ? "all operations reachable" : "unreached:";
    for (const auto& op : missing) detail += " " + op;
    add_verdict(report, "operation coverage", missing.empty(), detail);
    return report;
}

}  // namespace

QuadratureSpec effective_quadrature(const ExperimentConfig& c, const ManifoldModel& m) {
    if (c.quadrature_overridden || m.dim < 4) return c.quadrature;
    QuadratureSpec q = c.quadrature;
    q.order = 12;
    q.cells = 1;
    return q;
}

MorseOptions effective_morse(const ExperimentConfig& c, const ManifoldModel& m) {
    if (c.morse_overridden || m.dim < 4) return c.morse;
    MorseOptions o = c.morse;
    o.seeds_per_axis = 8;
    return o;
}

std::vector<Point> sample_chart_points(const ManifoldModel& m, std::size_t chart, int count, std::mt19937_64& rng) {
    const Chart& ch = m.chart(chart).chart;
    std::vector<Point> out;
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    while (static_cast<int>(out.size()) < count) {
        Point x(static_cast<Eigen::Index>(m.dim));
        for (std::size_t a = 0; a < m.dim; ++a) {
            const double margin = ch.periodic[a] ? 0.0 : 0.05 * ch.box_size(a);
            x[static_cast<Eigen::Index>(a)] = ch.lower[a] + margin + (ch.box_size(a) - 2.0 * margin) * unit(rng);
        }
        if (ch.in_excised_set && ch.in_excised_set(x)) continue;
        out.push_back(x);
    }
    return out;
}

CurvatureSample curvature_sample(const ManifoldModel& m, std::size_t chart, const Point& x) {
    CurvatureSample s;
    const Tensor3 ga = christoffel_at(m, chart, x);
    const Tensor3 gf = christoffel_fd(m, chart, x);
    s.christoffel_diff = max_abs_diff(ga, gf) / std::max(1.0, max_abs(ga));
    const Tensor4 ra = riemann_at(m, chart, x);
    const Tensor4 rf = riemann_fd(m, chart, x);
    s.riemann_diff = max_abs_diff(ra, rf) / std::max(1.0, max_abs(ra));
    s.bianchi = first_bianchi_residual(ra);
    const Matrix g = metric_at(m, chart, x);
    const Tensor4 low = lower_first_index(ra, g);
    const std::size_t d = m.dim;
    for (std::size_t a = 0; a < d; ++a)
        for (std::size_t b = 0; b < d; ++b)
            for (std::size_t c = 0; c < d; ++c)
                for (std::size_t e = 0; e < d; ++e)
                    s.pair_symmetry = std::max(s.pair_symmetry, std::abs(low(a, b, c, e) - low(c, e, a, b)));
    s.scalar_curvature = scalar_curvature_at(m, chart, x);
    s.euler_density = m.dim % 2 == 0 ? euler_density_at(m, chart, x) : NAN;
    s.metric_min_eigenvalue = Eigen::SelfAdjointEigenSolver<Matrix>(g).eigenvalues().minCoeff();
    return s;
}

const std::vector<std::string>& library_operations() {
    static const std::vector<std::string> ops = {
        "christoffel_at",    "riemann_at",          "scalar_curvature_at", "euler_density_at",
        "symplectic_closedness_residual", "integrate_density", "integrate_exponential", "find_critical_points",
        "poincare_hopf_sum", "grassmann_mul",       "grassmann_exp",       "berezin_integrate",
        "pfaffian",          "mq_density_at",       "mq_integral",         "gauss_bonnet",
        "dh_stationary_sum", "dh_residual",         "spectral_kernel",     "spectral_trace",
        "geodesic_kernel",   "geodesic_trace",      "calibrate_shift",     "dewitt_constancy_report",
        "smalltime_report",  "run_experiment"};
    return ops;
}

const std::vector<OperationCoverage>& operation_coverage() {
    static const std::vector<OperationCoverage> table = {
        {"curvature",
         {"christoffel_at", "riemann_at", "scalar_curvature_at", "euler_density_at", "symplectic_closedness_residual"}},
        {"gauss-bonnet",
         {"gauss_bonnet", "euler_density_at", "integrate_density", "pfaffian", "find_critical_points",
          "poincare_hopf_sum"}},
        {"morse", {"find_critical_points", "poincare_hopf_sum"}},
        {"dh", {"find_critical_points", "dh_stationary_sum", "dh_residual", "integrate_exponential"}},
        {"mq-sweep",
         {"mq_integral", "mq_density_at", "grassmann_mul", "grassmann_exp", "berezin_integrate", "gauss_bonnet",
          "poincare_hopf_sum"}},
        {"heat", {"calibrate_shift", "spectral_kernel", "spectral_trace", "geodesic_kernel", "geodesic_trace"}},
        {"dewitt", {"dewitt_constancy_report", "calibrate_shift", "spectral_trace", "geodesic_trace"}},
        {"smalltime", {"smalltime_report", "spectral_trace", "calibrate_shift"}},
        {"full-suite",
         {"gauss_bonnet", "find_critical_points", "poincare_hopf_sum", "mq_integral", "dh_residual",
          "spectral_kernel", "geodesic_kernel", "dewitt_constancy_report", "christoffel_at", "riemann_at",
          "grassmann_mul", "grassmann_exp", "berezin_integrate", "pfaffian", "smalltime_report"}},
        {"list", {"run_experiment"}},
    };
    return table;
}

Json run_experiment(const ExperimentConfig& c) {
    const auto start = std::chrono::steady_clock::now();
    Json report;
    if (c.experiment == "curvature") report = run_curvature(c);
    else if (c.experiment == "gauss-bonnet") report = run_gauss_bonnet(c);
    else if (c.experiment == "morse") report = run_morse(c);
    else if (c.experiment == "dh") report = run_dh(c);
    else if (c.experiment == "mq-sweep") report = run_mq_sweep(c);
    else if (c.experiment == "heat") report = run_heat(c);
    else if (c.experiment == "dewitt") report = run_dewitt(c);
    else if (c.experiment == "smalltime") report = run_smalltime(c);
    else if (c.experiment == "full-suite") report = run_full_suite(c);
    else if (c.experiment == "list") report = run_list(c);
    else throw Error(ErrorCode::ConfigError, "unknown experiment '" + c.experiment + "'");
    finalize_report(report);
    const double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (!report.contains("wall_clock")) report["wall_clock"] = Json::object();
    report["wall_clock"]["elapsed_seconds"] = elapsed;
    return report;
}

int exit_code_for(const ExperimentConfig& c, const Json& report) {
    const bool asserted = c.assert_tol.has_value() || c.experiment == "full-suite" || c.experiment == "list";
    if (!asserted) return 0;
    return report["pass"].get<bool>() ? 0 : 1;
}

}  // namespace localize::tools
