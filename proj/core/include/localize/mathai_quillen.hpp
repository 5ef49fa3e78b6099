#pragma once

#include "localize/grassmann.hpp"
#include "localize/integrate.hpp"
#include "localize/scalar_field.hpp"

namespace localize {

// Deformation parameters of the Mathai-Quillen density.
struct MQParams {
    double s = 0.0;     // Morse deformation strength, >= 0
    double beta = 1.0;  // > 0

    void validate() const;
};

// N(d) = (2 pi)^{-d/2}: the value that makes the s = 0 density equal Pf(Omega/2pi).
double mq_normalization(std::size_t d);

// Grassmann exponent -beta (1/4 R_abcd psibar_a psibar_b psi^c psi^d + s psibar_a H_ab psi^b)
// in an orthonormal frame; H is the covariant Hessian of f.
GrassmannElement mq_exponent(const Tensor4& frame_riemann, const Matrix& frame_hessian, const MQParams& params);

// N(d) beta^{-d/2} int dpsi dpsibar e^{exponent} * e^{-beta s^2 |df|^2 / 2} * sqrt(g)
double mq_density_at(const ManifoldModel& model, const ScalarField& f, const MQParams& params, std::size_t chart,
                     const Point& x);

IntegralResult mq_integral(const ManifoldModel& model, const ScalarField& f, const MQParams& params,
                           const QuadratureSpec& spec);

// int of the Euler density; equals chi(M).
IntegralResult gauss_bonnet(const ManifoldModel& model, const QuadratureSpec& spec);

}  // namespace localize
