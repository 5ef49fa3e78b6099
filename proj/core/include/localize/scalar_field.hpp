#pragma once

#include <functional>
#include <string>

#include "localize/geometry.hpp"

namespace localize {

// Smooth real function on a model, evaluable in every chart.
struct ScalarField {
    using ValueFn = std::function<double(std::size_t chart, const Point&)>;
    using GradientFn = std::function<Vector(std::size_t chart, const Point&)>;
    using HessianFn = std::function<Matrix(std::size_t chart, const Point&)>;

    std::string name;
    ValueFn value;
    GradientFn analytic_gradient;  // optional
    HessianFn analytic_hessian;    // optional
};

// Function on the ambient space R^N of a model's embedding.
struct AmbientFunction {
    std::function<double(const Vector&)> value;
    std::function<Vector(const Vector&)> gradient;
    std::function<Matrix(const Vector&)> hessian;
};

// Pulls an ambient function back through every chart embedding (chain rule for derivatives).
ScalarField pullback_field(const ManifoldModel& model, std::string name, AmbientFunction f);

double field_value(const ManifoldModel& model, const ScalarField& f, std::size_t chart, const Point& x);
// Analytic closure when present, otherwise central differences.
Vector field_gradient(const ManifoldModel& model, const ScalarField& f, std::size_t chart, const Point& x);
Matrix field_hessian(const ManifoldModel& model, const ScalarField& f, std::size_t chart, const Point& x);
Vector field_gradient_fd(const ManifoldModel& model, const ScalarField& f, std::size_t chart, const Point& x);
Matrix field_hessian_fd(const ManifoldModel& model, const ScalarField& f, std::size_t chart, const Point& x);

// Coordinate Hessian minus Gamma^k_{ij} d_k f.
Matrix covariant_hessian(const ManifoldModel& model, const ScalarField& f, std::size_t chart, const Point& x);

// Returns a + b, c * a, with analytic derivatives kept when both sides have them.
ScalarField add_constant(const ScalarField& f, double c);
ScalarField scale(const ScalarField& f, double c);

}  // namespace localize
