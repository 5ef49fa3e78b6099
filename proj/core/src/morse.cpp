#include "localize/morse.hpp"

#include <algorithm>
#include <cmath>
#include <optional>

#include "localize/error.hpp"
#include "localize/parallel.hpp"

namespace localize {

namespace {

bool inside(const ManifoldModel& model, std::size_t chart, const Point& x) {
    try {
        check_point(model, chart, x);
        return true;
    } catch (const Error&) {
        return false;
    }
}

CriticalPoint classify(const ManifoldModel& model, const ScalarField& h, std::size_t chart, const Point& x,
                       const MorseOptions& options) {
    CriticalPoint p;
    p.chart_index = chart;
    p.chart = model.chart(chart).chart.id;
    p.x = x;
    p.value = h.value(chart, x);
    p.hessian = field_hessian(model, h, chart, x);
    const Vector ev = Eigen::SelfAdjointEigenSolver<Matrix>(p.hessian, Eigen::EigenvaluesOnly).eigenvalues();
    p.index = static_cast<int>((ev.array() < 0.0).count());
    p.nondegenerate = ev.cwiseAbs().minCoeff() > options.degeneracy_tol;
    p.merge_radius_used = options.dedupe_radius;
    return p;
}

}  // namespace

void MorseOptions::validate() const {
    if (seeds_per_axis < 4) throw Error(ErrorCode::InvalidArgument, "seeds_per_axis must be >= 4");
    if (!(grad_tol > 0.0) || !(dedupe_radius > 0.0) || !(degeneracy_tol > 0.0)) {
        throw Error(ErrorCode::InvalidArgument, "Morse tolerances must be positive");
    }
    if (max_iterations < 1) throw Error(ErrorCode::InvalidArgument, "max_iterations must be positive");
}

std::optional<Point> newton_critical_point(const ManifoldModel& model, const ScalarField& h, std::size_t chart,
                                           Point x, const MorseOptions& options) {
    const Chart& c = model.chart(chart).chart;
    if (!inside(model, chart, x)) return std::nullopt;
    Vector g = field_gradient(model, h, chart, x);
    double gnorm = g.norm();
    for (int iter = 0; iter < options.max_iterations; ++iter) {
        if (gnorm <= options.grad_tol) return x;
        const Matrix hess = field_hessian(model, h, chart, x);
        Eigen::FullPivLU<Matrix> lu(hess);
        if (!lu.isInvertible()) return std::nullopt;
        Vector step = -lu.solve(g);
        if (!step.allFinite()) return std::nullopt;

        // Halve the step while |grad H| fails to decrease.
        bool accepted = false;
        for (int k = 0; k < 30; ++k) {
            Point trial = wrap_periodic(c, x + step);
            if (inside(model, chart, trial)) {
                const Vector gt = field_gradient(model, h, chart, trial);
                const double tn = gt.norm();
                if (tn < gnorm || k == 29) {
                    x = trial;
                    g = gt;
                    gnorm = tn;
                    accepted = true;
                    break;
                }
            }
            step *= options.damping;
        }
        if (!accepted) return std::nullopt;
    }
    if (gnorm <= options.grad_tol) return x;
    return std::nullopt;
}

std::vector<CriticalPoint> find_critical_points(const ManifoldModel& model, const ScalarField& h,
                                                const MorseOptions& options) {
    options.validate();
    struct Seed {
        std::size_t chart;
        Point x;
    };
    std::vector<Seed> seeds;
    const auto per_axis = static_cast<std::size_t>(options.seeds_per_axis);
    for (std::size_t ci = 0; ci < model.charts.size(); ++ci) {
        const Chart& c = model.chart(ci).chart;
        const std::size_t d = c.dim();
        std::size_t total = 1;
        for (std::size_t a = 0; a < d; ++a) total *= per_axis;
        for (std::size_t s = 0; s < total; ++s) {
            Point x(static_cast<Eigen::Index>(d));
            std::size_t r = s;
            for (std::size_t a = d; a-- > 0;) {
                const double frac = (static_cast<double>(r % per_axis) + 0.5) / static_cast<double>(per_axis);
                x[static_cast<Eigen::Index>(a)] = c.lower[a] + frac * c.box_size(a);
                r /= per_axis;
            }
            seeds.push_back({ci, std::move(x)});
        }
    }

    std::vector<std::optional<Point>> found(seeds.size());
    parallel_for(seeds.size(), [&](std::size_t i) {
        found[i] = newton_critical_point(model, h, seeds[i].chart, seeds[i].x, options);
    });

    // Deterministic merge in seed order: first chart wins.
    std::vector<CriticalPoint> points;
    std::vector<Vector> ambient;
    for (std::size_t i = 0; i < seeds.size(); ++i) {
        if (!found[i]) continue;
        const std::size_t ci = seeds[i].chart;
        const Vector y = model.chart(ci).embedding.value(*found[i]);
        const bool duplicate = std::any_of(ambient.begin(), ambient.end(), [&](const Vector& other) {
            return (other - y).norm() <= options.dedupe_radius;
        });
        if (duplicate) continue;
        ambient.push_back(y);
        points.push_back(classify(model, h, ci, *found[i], options));
    }

    std::sort(points.begin(), points.end(), [](const CriticalPoint& a, const CriticalPoint& b) {
        if (a.chart_index != b.chart_index) return a.chart_index < b.chart_index;
        return std::lexicographical_compare(a.x.begin(), a.x.end(), b.x.begin(), b.x.end());
    });
    return points;
}

bool any_degenerate(std::span<const CriticalPoint> points) {
    return std::any_of(points.begin(), points.end(), [](const CriticalPoint& p) { return !p.nondegenerate; });
}

int poincare_hopf_sum(std::span<const CriticalPoint> points) {
    if (any_degenerate(points)) {
        throw Error(ErrorCode::DegenerateInput, "Poincare-Hopf sum needs nondegenerate critical points");
    }
    int sum = 0;
    for (const auto& p : points) sum += (p.index % 2 == 0) ? 1 : -1;
    return sum;
}

}  // namespace localize
