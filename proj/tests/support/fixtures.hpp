#pragma once

#include <cmath>
#include <numbers>

#include "localize/error.hpp"
#include "localize/geometry.hpp"

namespace fixture {

// Unit circle as a one-dimensional model without a symplectic form.
inline localize::ManifoldModel circle() {
    using namespace localize;
    ManifoldModel m;
    m.name = "circle";
    m.dim = 1;
    m.ambient_dim = 2;
    ChartGeometry cg;
    cg.chart.id = "angle";
    cg.chart.lower = {0.0};
    cg.chart.upper = {2.0 * std::numbers::pi};
    cg.chart.periodic = {true};
    cg.chart.covers_almost_everywhere = true;
    cg.embedding.value = [](const Point& x) {
        Vector v(2);
        v << std::cos(x[0]), std::sin(x[0]);
        return v;
    };
    cg.embedding.jacobian = [](const Point& x) {
        Matrix j(2, 1);
        j << -std::sin(x[0]), std::cos(x[0]);
        return j;
    };
    cg.embedding.hessians = [](const Point& x) {
        return std::vector<Matrix>{Matrix::Constant(1, 1, -std::cos(x[0])), Matrix::Constant(1, 1, -std::sin(x[0]))};
    };
    cg.metric = [](const Point&) { return Matrix::Identity(1, 1); };
    m.charts.push_back(cg);
    return m;
}

inline localize::Point point(std::initializer_list<double> v) {
    localize::Point p(static_cast<Eigen::Index>(v.size()));
    Eigen::Index i = 0;
    for (double x : v) p[i++] = x;
    return p;
}

template <typename F>
localize::ErrorCode error_code_of(F&& f) {
    try {
        f();
    } catch (const localize::Error& e) {
        return e.code();
    }
    return static_cast<localize::ErrorCode>(-1);
}

}  // namespace fixture
