#pragma once

#include <vector>

#include "localize/integrate.hpp"
#include "localize/morse.hpp"

namespace localize {

struct StationaryTerm {
    CriticalPoint point;
    Complex phase_factor;               // e^{t H(p)}
    Complex amplitude;                  // (2 pi)^{d/2} / prod_k sqrt(lambda_k)
    Complex contribution;               // phase_factor * amplitude
    std::vector<Complex> eigenvalues;   // lambda_k of -t Hess in a Darboux frame
};

struct StationarySum {
    Complex sum;
    std::vector<StationaryTerm> terms;
};

struct DHReport {
    Complex exact;
    Complex sum;
    std::vector<StationaryTerm> terms;
    double rel_residual = 0.0;  // |exact - sum| / max(|exact|, eps)
    IntegralResult quadrature;
};

// Columns e_1, f_1, e_2, f_2, ... with B^T omega B = blockdiag([[0, 1], [-1, 0]]).
// DegenerateSymplecticForm if no pivot exceeds pivot_tol.
Matrix darboux_frame(const Matrix& omega, double pivot_tol = 1e-12);

// Stationary term of one critical point; t must be nonzero.
StationaryTerm stationary_term(const ManifoldModel& model, const ScalarField& h, const CriticalPoint& p, Complex t);

// Sum of stationary terms over the critical points of H (principal-branch square roots).
StationarySum dh_stationary_sum(const ManifoldModel& model, const ScalarField& h, Complex t,
                                const MorseOptions& options = {});
StationarySum dh_stationary_sum(const ManifoldModel& model, const ScalarField& h, Complex t,
                                const std::vector<CriticalPoint>& points);

DHReport dh_residual(const ManifoldModel& model, const ScalarField& h, Complex t, const QuadratureSpec& spec,
                     const MorseOptions& options = {});

}  // namespace localize
