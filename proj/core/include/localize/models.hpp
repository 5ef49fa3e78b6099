#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "localize/geometry.hpp"
#include "localize/scalar_field.hpp"

namespace localize {

// Round sphere of radius r. Charts: "polar" (theta, phi) with the poles excised,
// and Cartesian caps "north"/"south" (unit-sphere x, y) used for critical-point search.
ManifoldModel make_sphere(double radius = 1.0);
// Flat torus, coordinates (theta1, theta2), both of period 2 pi.
ManifoldModel make_flat_torus();
// Riemannian (and symplectic, when both factors are) product. Chart ids are "a*b".
ManifoldModel make_product(const ManifoldModel& a, const ManifoldModel& b);

// "s2", "s2:r=<float>", "t2", "s2xs2"
ManifoldModel resolve_model(std::string_view spec);
std::vector<std::string> registered_models();

// Named scalar fields per model:
//   s2:    height (cos theta), tilted (cos theta + 0.3 sin^2 theta cos phi), const
//   t2:    double-cosine (cos t1 + cos t2), lin:<a>,<b>, const
//   s2xs2: height / generic (cos t1 + sqrt2 cos t2), lin:<a>,<b>, const
ScalarField resolve_function(const ManifoldModel& model, std::string_view name);
std::vector<std::string> registered_functions(const ManifoldModel& model);

}  // namespace localize
