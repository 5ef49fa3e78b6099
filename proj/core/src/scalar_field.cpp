#include "localize/scalar_field.hpp"

#include <memory>
#include <utility>

#include "localize/error.hpp"

namespace localize {

ScalarField pullback_field(const ManifoldModel& model, std::string name, AmbientFunction f) {
    std::vector<Embedding> embeddings;
    embeddings.reserve(model.charts.size());
    for (const auto& c : model.charts) embeddings.push_back(c.embedding);
    auto shared_f = std::make_shared<const AmbientFunction>(std::move(f));
    auto shared_e = std::make_shared<const std::vector<Embedding>>(std::move(embeddings));

    ScalarField field;
    field.name = std::move(name);
    field.value = [shared_f, shared_e](std::size_t chart, const Point& x) {
        return shared_f->value((*shared_e)[chart].value(x));
    };
    field.analytic_gradient = [shared_f, shared_e](std::size_t chart, const Point& x) -> Vector {
        const Embedding& e = (*shared_e)[chart];
        return e.jacobian(x).transpose() * shared_f->gradient(e.value(x));
    };
    field.analytic_hessian = [shared_f, shared_e](std::size_t chart, const Point& x) -> Matrix {
        const Embedding& e = (*shared_e)[chart];
        const Vector y = e.value(x);
        const Matrix j = e.jacobian(x);
        const Vector grad = shared_f->gradient(y);
        Matrix h = j.transpose() * shared_f->hessian(y) * j;
        const std::vector<Matrix> second = e.hessians(x);
        for (std::size_t i = 0; i < second.size(); ++i) h += grad[static_cast<Eigen::Index>(i)] * second[i];
        return 0.5 * (h + h.transpose());
    };
    return field;
}

double field_value(const ManifoldModel& model, const ScalarField& f, std::size_t chart, const Point& x) {
    check_point(model, chart, x);
    return f.value(chart, x);
}

Vector field_gradient_fd(const ManifoldModel& model, const ScalarField& f, std::size_t chart, const Point& x) {
    check_point(model, chart, x);
    const Chart& c = model.chart(chart).chart;
    Vector g(x.size());
    for (Eigen::Index a = 0; a < x.size(); ++a) {
        const double h = fd_step(c, static_cast<std::size_t>(a));
        Point xp = x, xm = x;
        xp[a] += h;
        xm[a] -= h;
        g[a] = (f.value(chart, xp) - f.value(chart, xm)) / (2.0 * h);
    }
    return g;
}

Matrix field_hessian_fd(const ManifoldModel& model, const ScalarField& f, std::size_t chart, const Point& x) {
    check_point(model, chart, x);
    const Chart& c = model.chart(chart).chart;
    const Eigen::Index d = x.size();
    Matrix h(d, d);
    // Second differences need a larger step than first differences to stay above round-off.
    auto step = [&](Eigen::Index a) { return 1e-4 * c.box_size(static_cast<std::size_t>(a)); };
    const double f0 = f.value(chart, x);
    for (Eigen::Index a = 0; a < d; ++a) {
        const double ha = step(a);
        Point xp = x, xm = x;
        xp[a] += ha;
        xm[a] -= ha;
        h(a, a) = (f.value(chart, xp) - 2.0 * f0 + f.value(chart, xm)) / (ha * ha);
        for (Eigen::Index b = a + 1; b < d; ++b) {
            const double hb = step(b);
            Point pp = x, pm = x, mp = x, mm = x;
            pp[a] += ha; pp[b] += hb;
            pm[a] += ha; pm[b] -= hb;
            mp[a] -= ha; mp[b] += hb;
            mm[a] -= ha; mm[b] -= hb;
            const double v = (f.value(chart, pp) - f.value(chart, pm) - f.value(chart, mp) + f.value(chart, mm)) /
                             (4.0 * ha * hb);
            h(a, b) = v;
            h(b, a) = v;
        }
    }
    return h;
}

Vector field_gradient(const ManifoldModel& model, const ScalarField& f, std::size_t chart, const Point& x) {
    if (!f.analytic_gradient) return field_gradient_fd(model, f, chart, x);
    check_point(model, chart, x);
    return f.analytic_gradient(chart, x);
}

Matrix field_hessian(const ManifoldModel& model, const ScalarField& f, std::size_t chart, const Point& x) {
    if (!f.analytic_hessian) return field_hessian_fd(model, f, chart, x);
    check_point(model, chart, x);
    return f.analytic_hessian(chart, x);
}

Matrix covariant_hessian(const ManifoldModel& model, const ScalarField& f, std::size_t chart, const Point& x) {
    const Vector grad = field_gradient(model, f, chart, x);
    Matrix h = field_hessian(model, f, chart, x);
    const Tensor3 gamma = christoffel_at(model, chart, x);
    const std::size_t d = model.dim;
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j)
            for (std::size_t k = 0; k < d; ++k)
                h(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) -=
                    gamma(k, i, j) * grad[static_cast<Eigen::Index>(k)];
    return h;
}

ScalarField add_constant(const ScalarField& f, double c) {
    ScalarField out = f;
    out.name = f.name + "+const";
    out.value = [v = f.value, c](std::size_t chart, const Point& x) { return v(chart, x) + c; };
    return out;
}

ScalarField scale(const ScalarField& f, double c) {
    ScalarField out;
    out.name = f.name + "*scaled";
    out.value = [v = f.value, c](std::size_t chart, const Point& x) { return c * v(chart, x); };
    if (f.analytic_gradient) {
        out.analytic_gradient = [g = f.analytic_gradient, c](std::size_t chart, const Point& x) -> Vector {
            return c * g(chart, x);
        };
    }
    if (f.analytic_hessian) {
        out.analytic_hessian = [h = f.analytic_hessian, c](std::size_t chart, const Point& x) -> Matrix {
            return c * h(chart, x);
        };
    }
    return out;
}

}  // namespace localize
