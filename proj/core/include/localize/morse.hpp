#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "localize/geometry.hpp"
#include "localize/scalar_field.hpp"

namespace localize {

struct MorseOptions {
    int seeds_per_axis = 16;
    double grad_tol = 1e-10;
    double dedupe_radius = 1e-4;
    double degeneracy_tol = 1e-8;
    int max_iterations = 60;
    double damping = 0.5;

    void validate() const;
};

struct CriticalPoint {
    std::string chart;
    std::size_t chart_index = 0;
    Point x;
    double value = 0.0;
    Matrix hessian;        // coordinate Hessian at x
    int index = 0;         // number of negative Hessian eigenvalues
    bool nondegenerate = false;
    double merge_radius_used = 0.0;
};

// Newton on grad H = 0 from a seed grid in every chart, deduplicated by ambient
// distance, sorted by (chart, coordinates). Degenerate points are returned with
// nondegenerate = false rather than thrown.
std::vector<CriticalPoint> find_critical_points(const ManifoldModel& model, const ScalarField& h,
                                                const MorseOptions& options = {});

// Newton from one seed; empty when the iteration diverges or leaves the chart.
std::optional<Point> newton_critical_point(const ManifoldModel& model, const ScalarField& h, std::size_t chart,
                                           Point seed, const MorseOptions& options);

// Sum of (-1)^index. DegenerateInput if any point is degenerate.
int poincare_hopf_sum(std::span<const CriticalPoint> points);

bool any_degenerate(std::span<const CriticalPoint> points);

}  // namespace localize
