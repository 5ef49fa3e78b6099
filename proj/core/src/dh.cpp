#include "localize/dh.hpp"

#include <cmath>
#include <numbers>

#include "localize/error.hpp"

namespace localize {

Matrix darboux_frame(const Matrix& omega, double pivot_tol) {
    const Eigen::Index d = omega.rows();
    if (d % 2 != 0 || omega.cols() != d) throw Error(ErrorCode::OddDimension, "symplectic form must be even-dimensional");
    auto w = [&](const Vector& u, const Vector& v) { return u.dot(omega * v); };

    std::vector<Vector> remaining;
    for (Eigen::Index i = 0; i < d; ++i) remaining.push_back(Vector::Unit(d, i));

    Matrix frame(d, d);
    for (Eigen::Index k = 0; k < d / 2; ++k) {
        // Pivot on the largest pairing among the remaining vectors.
        std::size_t bi = 0, bj = 1;
        double best = -1.0;
        for (std::size_t i = 0; i < remaining.size(); ++i)
            for (std::size_t j = i + 1; j < remaining.size(); ++j) {
                const double v = std::abs(w(remaining[i], remaining[j]));
                if (v > best) {
                    best = v;
                    bi = i;
                    bj = j;
                }
            }
        if (!(best > pivot_tol)) throw Error(ErrorCode::DegenerateSymplecticForm, "symplectic form is degenerate");
        const Vector e = remaining[bi];
        const Vector f = remaining[bj] / w(remaining[bi], remaining[bj]);
        frame.col(2 * k) = e;
        frame.col(2 * k + 1) = f;
        std::vector<Vector> next;
        for (std::size_t i = 0; i < remaining.size(); ++i) {
            if (i == bi || i == bj) continue;
            const Vector& v = remaining[i];
            next.push_back(v - w(v, f) * e + w(v, e) * f);
        }
        remaining = std::move(next);
    }
    return frame;
}

StationaryTerm stationary_term(const ManifoldModel& model, const ScalarField& h, const CriticalPoint& p, Complex t) {
    if (t == Complex(0.0)) throw Error(ErrorCode::InvalidArgument, "stationary terms need t != 0");
    if (!p.nondegenerate) throw Error(ErrorCode::DegenerateCriticalPoint, "degenerate critical point in chart " + p.chart);
    const Matrix omega = symplectic_at(model, p.chart_index, p.x);
    const Matrix frame = darboux_frame(omega);
    const Matrix hd = frame.transpose() * p.hessian * frame;
    const ComplexMatrix m = -t * hd.cast<Complex>();
    Eigen::ComplexEigenSolver<ComplexMatrix> solver(m, false);

    StationaryTerm term;
    term.point = p;
    Complex root_product(1.0);
    for (Eigen::Index k = 0; k < solver.eigenvalues().size(); ++k) {
        const Complex lambda = solver.eigenvalues()[k];
        term.eigenvalues.push_back(lambda);
        root_product *= std::sqrt(lambda);  // principal branch
    }
    term.phase_factor = std::exp(t * h.value(p.chart_index, p.x));
    term.amplitude = std::pow(2.0 * std::numbers::pi, static_cast<double>(model.dim) / 2.0) / root_product;
    term.contribution = term.phase_factor * term.amplitude;
    return term;
}

StationarySum dh_stationary_sum(const ManifoldModel& model, const ScalarField& h, Complex t,
                                const std::vector<CriticalPoint>& points) {
    if (!model.has_symplectic()) throw Error(ErrorCode::NoSymplecticForm, "stationary sum needs a symplectic model");
    StationarySum out;
    CompensatedSum<Complex> acc;
    for (const auto& p : points) {
        out.terms.push_back(stationary_term(model, h, p, t));
        acc.add(out.terms.back().contribution);
    }
    out.sum = acc.value();
    return out;
}

StationarySum dh_stationary_sum(const ManifoldModel& model, const ScalarField& h, Complex t,
                                const MorseOptions& options) {
    if (!model.has_symplectic()) throw Error(ErrorCode::NoSymplecticForm, "stationary sum needs a symplectic model");
    return dh_stationary_sum(model, h, t, find_critical_points(model, h, options));
}

DHReport dh_residual(const ManifoldModel& model, const ScalarField& h, Complex t, const QuadratureSpec& spec,
                     const MorseOptions& options) {
    const StationarySum stationary = dh_stationary_sum(model, h, t, options);
    DHReport report;
    report.quadrature = integrate_exponential(model, h, t, spec);
    report.exact = report.quadrature.value;
    report.sum = stationary.sum;
    report.terms = stationary.terms;
    report.rel_residual = std::abs(report.exact - report.sum) / std::max(std::abs(report.exact), 1e-300);
    return report;
}

}  // namespace localize
