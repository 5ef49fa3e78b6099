#pragma once

#include <functional>
#include <vector>

#include "localize/geometry.hpp"
#include "localize/scalar_field.hpp"

namespace localize {

struct QuadratureSpec {
    int order = 12;            // Gauss-Legendre points per axis per cell
    int cells = 8;             // cells per axis at the first level
    int max_refinements = 4;   // each refinement doubles the cells per axis
    double target_rel_tol = 1e-10;

    void validate() const;
};

struct IntegralResult {
    Complex value{};
    double abs_error_estimate = 0.0;  // |I_k - I_{k-1}| over the last two levels
    int levels_used = 0;
    std::size_t nodes = 0;            // nodes of the finest level
    bool converged = false;
    double abs_integral = 0.0;        // integral of |integrand|, used as the scale for zero-valued integrals
};

enum class Measure { Metric, Liouville };

struct GaussLegendreRule {
    std::vector<double> nodes;    // on [-1, 1], ascending
    std::vector<double> weights;
};
GaussLegendreRule gauss_legendre(int order);

// Integrand in integration-chart coordinates, density already included.
using ChartIntegrand = std::function<Complex(const Point&)>;
using ComplexField = std::function<Complex(std::size_t chart, const Point&)>;

// Composite tensor Gauss-Legendre over the integration chart with level doubling.
// min_nodes_per_axis raises the starting level until every axis has that many nodes.
IntegralResult integrate_chart(const ManifoldModel& model, const ChartIntegrand& integrand,
                               const QuadratureSpec& spec, int min_nodes_per_axis = 0);

double volume_density(const ManifoldModel& model, std::size_t chart, const Point& x, Measure measure);

IntegralResult integrate_density(const ManifoldModel& model, const ComplexField& f, Measure measure,
                                 const QuadratureSpec& spec);

// int e^{tH} omega^{d/2}/(d/2)!
IntegralResult integrate_exponential(const ManifoldModel& model, const ScalarField& h, Complex t,
                                     const QuadratureSpec& spec);

// Nodes per axis needed for 8 nodes per oscillation of e^{tH}.
int phase_resolution_nodes(const ManifoldModel& model, const ScalarField& h, Complex t);

// Throws NotConverged when the result carries the not-converged flag.
const IntegralResult& require_converged(const IntegralResult& result);

// 1-D composite Gauss-Legendre with doubling on [a, b]; same convergence rule as integrate_chart.
IntegralResult integrate_interval(const std::function<double(double)>& f, double a, double b,
                                  const QuadratureSpec& spec);

}  // namespace localize
