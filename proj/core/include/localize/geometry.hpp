#pragma once

#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "localize/tensor.hpp"

namespace localize {

// Axis-aligned coordinate box with measure-zero excisions.
struct Chart {
    std::string id;
    std::vector<double> lower;
    std::vector<double> upper;
    std::vector<bool> periodic;
    std::vector<std::string> excised_sets;
    // True when the chart covers the manifold up to a null set; quadrature runs there.
    bool covers_almost_everywhere = false;
    // Numerical membership test for the excised sets (includes a small safety margin).
    std::function<bool(const Point&)> in_excised_set;

    std::size_t dim() const noexcept { return lower.size(); }
    double box_size(std::size_t axis) const { return upper[axis] - lower[axis]; }
};

// Embedding of a chart into R^N with analytic first and second derivatives.
struct Embedding {
    std::function<Vector(const Point&)> value;
    std::function<Matrix(const Point&)> jacobian;               // N x d
    std::function<std::vector<Matrix>(const Point&)> hessians;  // N matrices, d x d
};

using MatrixField = std::function<Matrix(const Point&)>;
using ChristoffelField = std::function<Tensor3(const Point&)>;
using RiemannField = std::function<Tensor4(const Point&)>;

struct ChartGeometry {
    Chart chart;
    Embedding embedding;
    MatrixField metric;
    MatrixField symplectic;              // empty when the model declares no symplectic form
    ChristoffelField christoffel;        // optional analytic closure
    RiemannField riemann;                // optional analytic closure
};

struct ManifoldModel {
    std::string name;
    std::size_t dim = 0;
    std::size_t ambient_dim = 0;
    std::vector<ChartGeometry> charts;

    bool has_symplectic() const noexcept {
        return !charts.empty() && static_cast<bool>(charts.front().symplectic);
    }
    std::size_t chart_index(std::string_view id) const;
    std::size_t integration_chart() const;
    const ChartGeometry& chart(std::size_t index) const { return charts.at(index); }
};

// Throws PointOutsideChart when x leaves the box (non-periodic axes) or hits an excised set.
void check_point(const ManifoldModel& model, std::size_t chart, const Point& x);
// Wraps periodic coordinates into [lower, upper).
Point wrap_periodic(const Chart& chart, Point x);
// Finite-difference step per axis: 1e-5 of the box size.
double fd_step(const Chart& chart, std::size_t axis);

Matrix metric_at(const ManifoldModel& model, std::size_t chart, const Point& x);
Matrix symplectic_at(const ManifoldModel& model, std::size_t chart, const Point& x);
// Inverse metric; MetricSingular when the eigenvalue ratio falls below 1e-12.
Matrix inverse_metric(const Matrix& g);
// Orthonormal frame E (columns) with E^T g E = I and positive orientation.
Matrix orthonormal_frame(const Matrix& g);

Tensor3 christoffel_at(const ManifoldModel& model, std::size_t chart, const Point& x);
Tensor3 christoffel_fd(const ManifoldModel& model, std::size_t chart, const Point& x);
Tensor3 christoffel_at(const ManifoldModel& model, std::string_view chart, const Point& x);

Tensor4 riemann_at(const ManifoldModel& model, std::size_t chart, const Point& x);
// Five-point differences (step 1e-4 of the box) of the finite-difference Christoffel
// symbols; ignores all closures.
Tensor4 riemann_fd(const ManifoldModel& model, std::size_t chart, const Point& x);
Tensor4 riemann_at(const ManifoldModel& model, std::string_view chart, const Point& x);
// R^mu_{nu kappa lambda} from Gamma and its derivatives.
Tensor4 riemann_from_christoffel(const Tensor3& gamma, const std::vector<Tensor3>& dgamma);

// R_{mu nu kappa lambda} = g_{mu alpha} R^alpha_{nu kappa lambda}
Tensor4 lower_first_index(const Tensor4& riemann, const Matrix& g);
// Components in an orthonormal frame, all indices down.
Tensor4 frame_riemann(const Tensor4& riemann, const Matrix& g);

double scalar_curvature_at(const ManifoldModel& model, std::size_t chart, const Point& x);
double scalar_curvature_at(const ManifoldModel& model, std::string_view chart, const Point& x);

// Pf(Omega / 2pi) as a density in chart coordinates. OddDimension for odd d.
double euler_density_at(const ManifoldModel& model, std::size_t chart, const Point& x);
double euler_density_at(const ManifoldModel& model, std::string_view chart, const Point& x);
// Pfaffian-of-curvature-form coefficient on the frame volume, via the permutation expansion.
double curvature_pfaffian(const Tensor4& frame_riemann);

double symplectic_closedness_residual(const ManifoldModel& model, std::size_t chart, const Point& x);
double symplectic_closedness_residual(const ManifoldModel& model, std::string_view chart, const Point& x);

// max |R^mu_{nu kappa lambda} + R^mu_{kappa lambda nu} + R^mu_{lambda nu kappa}|
double first_bianchi_residual(const Tensor4& riemann);

}  // namespace localize
