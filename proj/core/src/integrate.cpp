#include "localize/integrate.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "localize/error.hpp"
#include "localize/parallel.hpp"
#include "localize/pfaffian.hpp"

namespace localize {

namespace {

struct LevelSum {
    Complex value;
    double abs = 0.0;
};

std::size_t ipow(std::size_t base, std::size_t exp) {
    std::size_t r = 1;
    for (std::size_t i = 0; i < exp; ++i) r *= base;
    return r;
}

// Cells are visited in lexicographic order (axis 0 slowest); nodes inside a cell likewise.
LevelSum evaluate_level(const Chart& chart, const ChartIntegrand& integrand, const GaussLegendreRule& rule,
                        std::size_t cells) {
    const std::size_t d = chart.dim();
    const std::size_t order = rule.nodes.size();
    const std::size_t n_cells = ipow(cells, d);
    const std::size_t n_inner = ipow(order, d);

    std::vector<std::vector<double>> coord(d), weight(d);
    for (std::size_t a = 0; a < d; ++a) {
        const double h = chart.box_size(a) / static_cast<double>(cells);
        coord[a].resize(cells * order);
        weight[a].resize(cells * order);
        for (std::size_t c = 0; c < cells; ++c) {
            const double left = chart.lower[a] + h * static_cast<double>(c);
            for (std::size_t q = 0; q < order; ++q) {
                coord[a][c * order + q] = left + 0.5 * h * (rule.nodes[q] + 1.0);
                weight[a][c * order + q] = 0.5 * h * rule.weights[q];
            }
        }
    }

    std::vector<Complex> cell_value(n_cells);
    std::vector<double> cell_abs(n_cells);
    parallel_for(n_cells, [&](std::size_t cell) {
        std::vector<std::size_t> cidx(d);
        std::size_t rem = cell;
        for (std::size_t a = d; a-- > 0;) {
            cidx[a] = rem % cells;
            rem /= cells;
        }
        CompensatedSum<Complex> sum;
        CompensatedSum<double> abs_sum;
        Point x(static_cast<Eigen::Index>(d));
        for (std::size_t inner = 0; inner < n_inner; ++inner) {
            std::size_t r = inner;
            double w = 1.0;
            for (std::size_t a = d; a-- > 0;) {
                const std::size_t q = r % order;
                r /= order;
                const std::size_t k = cidx[a] * order + q;
                x[static_cast<Eigen::Index>(a)] = coord[a][k];
                w *= weight[a][k];
            }
            const Complex v = integrand(x);
            sum.add(w * v);
            abs_sum.add(w * std::abs(v));
        }
        cell_value[cell] = sum.value();
        cell_abs[cell] = abs_sum.value();
    });

    CompensatedSum<Complex> total;
    CompensatedSum<double> total_abs;
    for (std::size_t c = 0; c < n_cells; ++c) {
        total.add(cell_value[c]);
        total_abs.add(cell_abs[c]);
    }
    return {total.value(), total_abs.value()};
}

}  // namespace

void QuadratureSpec::validate() const {
    if (order < 2) throw Error(ErrorCode::InvalidArgument, "quadrature order must be >= 2");
    if (cells < 1) throw Error(ErrorCode::InvalidArgument, "quadrature cells must be >= 1");
    if (max_refinements < 1) throw Error(ErrorCode::InvalidArgument, "max refinements must be >= 1");
    if (!(target_rel_tol > 0.0)) throw Error(ErrorCode::InvalidArgument, "target tolerance must be > 0");
}

GaussLegendreRule gauss_legendre(int order) {
    if (order < 1) throw Error(ErrorCode::InvalidArgument, "Gauss-Legendre order must be positive");
    const auto n = static_cast<std::size_t>(order);
    GaussLegendreRule rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    for (std::size_t i = 0; i < (n + 1) / 2; ++i) {
        double x = std::cos(std::numbers::pi * (static_cast<double>(i) + 0.75) / (static_cast<double>(n) + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = x;
            for (std::size_t k = 2; k <= n; ++k) {
                const double p2 = ((2.0 * static_cast<double>(k) - 1.0) * x * p1 - (static_cast<double>(k) - 1.0) * p0) /
                                  static_cast<double>(k);
                p0 = p1;
                p1 = p2;
            }
            if (n == 1) p0 = 1.0;
            dp = static_cast<double>(n) * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16) break;
        }
        double p0 = 1.0, p1 = x;
        for (std::size_t k = 2; k <= n; ++k) {
            const double p2 = ((2.0 * static_cast<double>(k) - 1.0) * x * p1 - (static_cast<double>(k) - 1.0) * p0) /
                              static_cast<double>(k);
            p0 = p1;
            p1 = p2;
        }
        if (n == 1) p0 = 1.0;
        dp = static_cast<double>(n) * (x * p1 - p0) / (x * x - 1.0);
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        rule.nodes[i] = -x;
        rule.nodes[n - 1 - i] = x;
        rule.weights[i] = w;
        rule.weights[n - 1 - i] = w;
    }
    if (n % 2 == 1) rule.nodes[n / 2] = 0.0;
    return rule;
}

IntegralResult integrate_chart(const ManifoldModel& model, const ChartIntegrand& integrand,
                               const QuadratureSpec& spec, int min_nodes_per_axis) {
    spec.validate();
    const Chart& chart = model.chart(model.integration_chart()).chart;
    const GaussLegendreRule rule = gauss_legendre(spec.order);

    std::size_t cells = static_cast<std::size_t>(spec.cells);
    while (static_cast<int>(cells) * spec.order < min_nodes_per_axis) cells *= 2;

    IntegralResult result;
    LevelSum previous;
    for (int level = 0; level <= spec.max_refinements; ++level) {
        const LevelSum current = evaluate_level(chart, integrand, rule, cells);
        if (!std::isfinite(current.value.real()) || !std::isfinite(current.value.imag())) {
            throw Error(ErrorCode::NotConverged, "non-finite quadrature estimate");
        }
        result.value = current.value;
        result.abs_integral = current.abs;
        result.levels_used = level + 1;
        result.nodes = ipow(cells * rule.nodes.size(), chart.dim());
        if (level > 0) {
            result.abs_error_estimate = std::abs(current.value - previous.value);
            const double scale = std::max(std::abs(current.value), current.abs);
            if (result.abs_error_estimate <= spec.target_rel_tol * scale) {
                result.converged = true;
                return result;
            }
        }
        previous = current;
        cells *= 2;
    }
    return result;
}

double volume_density(const ManifoldModel& model, std::size_t chart, const Point& x, Measure measure) {
    if (measure == Measure::Liouville) {
        // omega^{d/2}/(d/2)! = Pf(omega) dx^1...dx^d
        return pfaffian(symplectic_at(model, chart, x));
    }
    const Matrix g = model.chart(chart).metric(x);
    inverse_metric(g);
    return std::sqrt(g.determinant());
}

IntegralResult integrate_density(const ManifoldModel& model, const ComplexField& f, Measure measure,
                                 const QuadratureSpec& spec) {
    if (measure == Measure::Liouville && !model.has_symplectic()) {
        throw Error(ErrorCode::NoSymplecticForm, "Liouville measure requested on '" + model.name + "'");
    }
    const std::size_t chart = model.integration_chart();
    return integrate_chart(
        model, [&](const Point& x) { return f(chart, x) * volume_density(model, chart, x, measure); }, spec);
}

int phase_resolution_nodes(const ManifoldModel& model, const ScalarField& h, Complex t) {
    const double omega = std::abs(t.imag());
    if (omega == 0.0) return 0;
    const std::size_t chart_index = model.integration_chart();
    const Chart& chart = model.chart(chart_index).chart;
    const std::size_t d = chart.dim();
    constexpr std::size_t kSamples = 8;
    std::vector<double> max_slope(d, 0.0);
    const std::size_t total = ipow(kSamples, d);
    for (std::size_t s = 0; s < total; ++s) {
        Point x(static_cast<Eigen::Index>(d));
        std::size_t r = s;
        for (std::size_t a = d; a-- > 0;) {
            x[static_cast<Eigen::Index>(a)] =
                chart.lower[a] + chart.box_size(a) * (static_cast<double>(r % kSamples) + 0.5) / kSamples;
            r /= kSamples;
        }
        const Vector g = field_gradient(model, h, chart_index, x);
        for (std::size_t a = 0; a < d; ++a) max_slope[a] = std::max(max_slope[a], std::abs(g[static_cast<Eigen::Index>(a)]));
    }
    double needed = 0.0;
    for (std::size_t a = 0; a < d; ++a) {
        const double oscillations = omega * max_slope[a] * chart.box_size(a) / (2.0 * std::numbers::pi);
        needed = std::max(needed, 8.0 * oscillations);
    }
    return static_cast<int>(std::ceil(needed));
}

IntegralResult integrate_exponential(const ManifoldModel& model, const ScalarField& h, Complex t,
                                     const QuadratureSpec& spec) {
    if (!model.has_symplectic()) {
        throw Error(ErrorCode::NoSymplecticForm, "exponential integral needs a symplectic model");
    }
    const std::size_t chart = model.integration_chart();
    const int min_nodes = phase_resolution_nodes(model, h, t);
    return integrate_chart(
        model,
        [&](const Point& x) {
            return std::exp(t * h.value(chart, x)) * volume_density(model, chart, x, Measure::Liouville);
        },
        spec, min_nodes);
}

const IntegralResult& require_converged(const IntegralResult& result) {
    if (!result.converged) {
        throw Error(ErrorCode::NotConverged, "quadrature did not reach the target tolerance (error estimate " +
                                                 std::to_string(result.abs_error_estimate) + ")");
    }
    return result;
}

IntegralResult integrate_interval(const std::function<double(double)>& f, double a, double b,
                                  const QuadratureSpec& spec) {
    spec.validate();
    const GaussLegendreRule rule = gauss_legendre(spec.order);
    IntegralResult result;
    double previous = 0.0;
    std::size_t cells = static_cast<std::size_t>(spec.cells);
    for (int level = 0; level <= spec.max_refinements; ++level) {
        const double h = (b - a) / static_cast<double>(cells);
        CompensatedSum<double> sum, abs_sum;
        for (std::size_t c = 0; c < cells; ++c) {
            const double left = a + h * static_cast<double>(c);
            for (std::size_t q = 0; q < rule.nodes.size(); ++q) {
                const double w = 0.5 * h * rule.weights[q];
                const double v = f(left + 0.5 * h * (rule.nodes[q] + 1.0));
                sum.add(w * v);
                abs_sum.add(w * std::abs(v));
            }
        }
        const double current = sum.value();
        if (!std::isfinite(current)) throw Error(ErrorCode::NotConverged, "non-finite quadrature estimate");
        result.value = current;
        result.abs_integral = abs_sum.value();
        result.levels_used = level + 1;
        result.nodes = cells * rule.nodes.size();
        if (level > 0) {
            result.abs_error_estimate = std::abs(current - previous);
            if (result.abs_error_estimate <= spec.target_rel_tol * std::max(std::abs(current), result.abs_integral)) {
                result.converged = true;
                return result;
            }
        }
        previous = current;
        cells *= 2;
    }
    return result;
}

}  // namespace localize
