#pragma once

#include "localize/tensor.hpp"

namespace localize {

// Pfaffian by skew-symmetric Gaussian elimination with pivoting (Parlett-Reid).
// NotAntisymmetric if M + M^T exceeds 1e-12 (relative to max |M|); OddDimension for odd size.
double pfaffian(const Matrix& m);
Complex pfaffian(const ComplexMatrix& m);

}  // namespace localize
