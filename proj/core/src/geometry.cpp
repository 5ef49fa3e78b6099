#include "localize/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "localize/error.hpp"

namespace localize {

namespace {

constexpr double kSingularRatio = 1e-12;

int permutation_sign(const std::vector<int>& p) {
    int sign = 1;
    std::vector<bool> seen(p.size(), false);
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (seen[i]) continue;
        std::size_t len = 0;
        for (std::size_t j = i; !seen[j]; j = static_cast<std::size_t>(p[j])) {
            seen[j] = true;
            ++len;
        }
        if (len % 2 == 0) sign = -sign;
    }
    return sign;
}

Point shifted(const Point& x, std::size_t axis, double h) {
    Point y = x;
    y[static_cast<Eigen::Index>(axis)] += h;
    return y;
}

}  // namespace

std::size_t ManifoldModel::chart_index(std::string_view id) const {
    for (std::size_t i = 0; i < charts.size(); ++i) {
        if (charts[i].chart.id == id) return i;
    }
    throw Error(ErrorCode::PointOutsideChart, "model '" + name + "' has no chart '" + std::string(id) + "'");
}

std::size_t ManifoldModel::integration_chart() const {
    for (std::size_t i = 0; i < charts.size(); ++i) {
        if (charts[i].chart.covers_almost_everywhere) return i;
    }
    throw Error(ErrorCode::InvalidArgument, "model '" + name + "' declares no integration chart");
}

void check_point(const ManifoldModel& model, std::size_t chart_index, const Point& x) {
    const Chart& chart = model.chart(chart_index).chart;
    if (static_cast<std::size_t>(x.size()) != chart.dim()) {
        throw Error(ErrorCode::PointOutsideChart, "point dimension does not match chart '" + chart.id + "'");
    }
    for (std::size_t a = 0; a < chart.dim(); ++a) {
        const double v = x[static_cast<Eigen::Index>(a)];
        if (!std::isfinite(v)) throw Error(ErrorCode::PointOutsideChart, "non-finite coordinate");
        if (chart.periodic[a]) continue;
        if (v <= chart.lower[a] || v >= chart.upper[a]) {
            throw Error(ErrorCode::PointOutsideChart, "coordinate " + std::to_string(a) + " outside chart '" + chart.id + "'");
        }
    }
    if (chart.in_excised_set && chart.in_excised_set(x)) {
        throw Error(ErrorCode::PointOutsideChart, "point lies on an excised set of chart '" + chart.id + "'");
    }
}

Point wrap_periodic(const Chart& chart, Point x) {
    for (std::size_t a = 0; a < chart.dim(); ++a) {
        if (!chart.periodic[a]) continue;
        const auto i = static_cast<Eigen::Index>(a);
        const double period = chart.box_size(a);
        double v = x[i] - period * std::floor((x[i] - chart.lower[a]) / period);
        if (v >= chart.upper[a]) v = chart.lower[a];
        x[i] = v;
    }
    return x;
}

double fd_step(const Chart& chart, std::size_t axis) { return 1e-5 * chart.box_size(axis); }

Matrix metric_at(const ManifoldModel& model, std::size_t chart, const Point& x) {
    check_point(model, chart, x);
    return model.chart(chart).metric(x);
}

Matrix symplectic_at(const ManifoldModel& model, std::size_t chart, const Point& x) {
    if (!model.has_symplectic()) {
        throw Error(ErrorCode::NoSymplecticForm, "model '" + model.name + "' declares no symplectic form");
    }
    check_point(model, chart, x);
    return model.chart(chart).symplectic(x);
}

Matrix inverse_metric(const Matrix& g) {
    Eigen::SelfAdjointEigenSolver<Matrix> eig(g);
    const Vector ev = eig.eigenvalues();
    const double top = ev.cwiseAbs().maxCoeff();
    if (!(top > 0.0) || ev.minCoeff() <= kSingularRatio * top) {
        throw Error(ErrorCode::MetricSingular, "metric is singular or not positive definite");
    }
    return eig.eigenvectors() * ev.cwiseInverse().asDiagonal() * eig.eigenvectors().transpose();
}

Matrix orthonormal_frame(const Matrix& g) {
    inverse_metric(g);  // singularity check
    Eigen::LLT<Matrix> llt(g);
    if (llt.info() != Eigen::Success) throw Error(ErrorCode::MetricSingular, "Cholesky factorization failed");
    const Matrix l = llt.matrixL();
    // E = L^{-T}: upper triangular with positive diagonal, so orientation is preserved.
    return l.transpose().triangularView<Eigen::Upper>().solve(Matrix::Identity(g.rows(), g.cols()));
}

Tensor3 christoffel_fd(const ManifoldModel& model, std::size_t chart_index, const Point& x) {
    check_point(model, chart_index, x);
    const ChartGeometry& cg = model.chart(chart_index);
    const std::size_t d = model.dim;
    const Matrix ginv = inverse_metric(cg.metric(x));
    std::vector<Matrix> dg(d);
    for (std::size_t k = 0; k < d; ++k) {
        const double h = fd_step(cg.chart, k);
        dg[k] = (cg.metric(shifted(x, k, h)) - cg.metric(shifted(x, k, -h))) / (2.0 * h);
    }
    Tensor3 gamma(d);
    for (std::size_t m = 0; m < d; ++m) {
        for (std::size_t n = 0; n < d; ++n) {
            for (std::size_t k = n; k < d; ++k) {
                double acc = 0.0;
                for (std::size_t l = 0; l < d; ++l) {
                    const auto li = static_cast<Eigen::Index>(l);
                    const auto ni = static_cast<Eigen::Index>(n);
                    const auto ki = static_cast<Eigen::Index>(k);
                    acc += ginv(static_cast<Eigen::Index>(m), li) * (dg[n](li, ki) + dg[k](li, ni) - dg[l](ni, ki));
                }
                gamma(m, n, k) = 0.5 * acc;
                gamma(m, k, n) = 0.5 * acc;
            }
        }
    }
    return gamma;
}

Tensor3 christoffel_at(const ManifoldModel& model, std::size_t chart_index, const Point& x) {
    const ChartGeometry& cg = model.chart(chart_index);
    if (!cg.christoffel) return christoffel_fd(model, chart_index, x);
    check_point(model, chart_index, x);
    inverse_metric(cg.metric(x));
    return cg.christoffel(x);
}

Tensor3 christoffel_at(const ManifoldModel& model, std::string_view chart, const Point& x) {
    return christoffel_at(model, model.chart_index(chart), x);
}

Tensor4 riemann_from_christoffel(const Tensor3& gamma, const std::vector<Tensor3>& dgamma) {
    const std::size_t d = gamma.dim();
    Tensor4 r(d);
    // R^r_{s m n} = d_m G^r_{n s} - d_n G^r_{m s} + G^r_{m l} G^l_{n s} - G^r_{n l} G^l_{m s}
    for (std::size_t rr = 0; rr < d; ++rr) {
        for (std::size_t s = 0; s < d; ++s) {
            for (std::size_t m = 0; m < d; ++m) {
                for (std::size_t n = m + 1; n < d; ++n) {
                    double v = dgamma[m](rr, n, s) - dgamma[n](rr, m, s);
                    for (std::size_t l = 0; l < d; ++l) {
                        v += gamma(rr, m, l) * gamma(l, n, s) - gamma(rr, n, l) * gamma(l, m, s);
                    }
                    r(rr, s, m, n) = v;
                    r(rr, s, n, m) = -v;
                }
            }
        }
    }
    return r;
}

Tensor4 riemann_fd(const ManifoldModel& model, std::size_t chart_index, const Point& x) {
    check_point(model, chart_index, x);
    const ChartGeometry& cg = model.chart(chart_index);
    const std::size_t d = model.dim;
    const Tensor3 gamma = christoffel_fd(model, chart_index, x);
    std::vector<Tensor3> dgamma(d, Tensor3(d));
    // Outer derivative: five-point stencil on a wider step so that the inner
    // differencing noise is not amplified by 1/h^2.
    for (std::size_t k = 0; k < d; ++k) {
        const double h = 10.0 * fd_step(cg.chart, k);
        const Tensor3 p1 = christoffel_fd(model, chart_index, shifted(x, k, h));
        const Tensor3 m1 = christoffel_fd(model, chart_index, shifted(x, k, -h));
        const Tensor3 p2 = christoffel_fd(model, chart_index, shifted(x, k, 2.0 * h));
        const Tensor3 m2 = christoffel_fd(model, chart_index, shifted(x, k, -2.0 * h));
        for (std::size_t i = 0; i < p1.data().size(); ++i) {
            dgamma[k].data()[i] =
                (8.0 * (p1.data()[i] - m1.data()[i]) - (p2.data()[i] - m2.data()[i])) / (12.0 * h);
        }
    }
    return riemann_from_christoffel(gamma, dgamma);
}

Tensor4 riemann_at(const ManifoldModel& model, std::size_t chart_index, const Point& x) {
    const ChartGeometry& cg = model.chart(chart_index);
    if (cg.riemann) {
        check_point(model, chart_index, x);
        inverse_metric(cg.metric(x));
        return cg.riemann(x);
    }
    if (!cg.christoffel) return riemann_fd(model, chart_index, x);
    // Analytic Christoffel symbols, differentiated with a five-point stencil.
    check_point(model, chart_index, x);
    const std::size_t d = model.dim;
    const Tensor3 gamma = cg.christoffel(x);
    std::vector<Tensor3> dgamma(d, Tensor3(d));
    for (std::size_t k = 0; k < d; ++k) {
        const double h = 10.0 * fd_step(cg.chart, k);
        const Tensor3 p1 = cg.christoffel(shifted(x, k, h));
        const Tensor3 m1 = cg.christoffel(shifted(x, k, -h));
        const Tensor3 p2 = cg.christoffel(shifted(x, k, 2.0 * h));
        const Tensor3 m2 = cg.christoffel(shifted(x, k, -2.0 * h));
        for (std::size_t i = 0; i < p1.data().size(); ++i) {
            dgamma[k].data()[i] =
                (8.0 * (p1.data()[i] - m1.data()[i]) - (p2.data()[i] - m2.data()[i])) / (12.0 * h);
        }
    }
    return riemann_from_christoffel(gamma, dgamma);
}

Tensor4 riemann_at(const ManifoldModel& model, std::string_view chart, const Point& x) {
    return riemann_at(model, model.chart_index(chart), x);
}

Tensor4 lower_first_index(const Tensor4& riemann, const Matrix& g) {
    const std::size_t d = riemann.dim();
    Tensor4 out(d);
    for (std::size_t m = 0; m < d; ++m)
        for (std::size_t n = 0; n < d; ++n)
            for (std::size_t k = 0; k < d; ++k)
                for (std::size_t l = 0; l < d; ++l) {
                    double v = 0.0;
                    for (std::size_t a = 0; a < d; ++a) {
                        v += g(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(a)) * riemann(a, n, k, l);
                    }
                    out(m, n, k, l) = v;
                }
    return out;
}

Tensor4 frame_riemann(const Tensor4& riemann, const Matrix& g) {
    const std::size_t d = riemann.dim();
    const Matrix e = orthonormal_frame(g);
    Tensor4 cur = lower_first_index(riemann, g);
    // Contract one slot at a time with the frame.
    for (std::size_t slot = 0; slot < 4; ++slot) {
        Tensor4 next(d);
        for (std::size_t i0 = 0; i0 < d; ++i0)
            for (std::size_t i1 = 0; i1 < d; ++i1)
                for (std::size_t i2 = 0; i2 < d; ++i2)
                    for (std::size_t i3 = 0; i3 < d; ++i3) {
                        std::size_t idx[4] = {i0, i1, i2, i3};
                        const std::size_t a = idx[slot];
                        double v = 0.0;
                        for (std::size_t mu = 0; mu < d; ++mu) {
                            idx[slot] = mu;
                            v += e(static_cast<Eigen::Index>(mu), static_cast<Eigen::Index>(a)) *
                                 cur(idx[0], idx[1], idx[2], idx[3]);
                        }
                        next(i0, i1, i2, i3) = v;
                    }
        cur = std::move(next);
    }
    return cur;
}

double scalar_curvature_at(const ManifoldModel& model, std::size_t chart, const Point& x) {
    const Tensor4 r = riemann_at(model, chart, x);
    const Matrix ginv = inverse_metric(model.chart(chart).metric(x));
    const std::size_t d = model.dim;
    double acc = 0.0;
    for (std::size_t m = 0; m < d; ++m)
        for (std::size_t n = 0; n < d; ++n)
            for (std::size_t l = 0; l < d; ++l)
                acc += ginv(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(l)) * r(m, n, m, l);
    return acc;
}

double scalar_curvature_at(const ManifoldModel& model, std::string_view chart, const Point& x) {
    return scalar_curvature_at(model, model.chart_index(chart), x);
}

double curvature_pfaffian(const Tensor4& fr) {
    const std::size_t d = fr.dim();
    if (d % 2 != 0) throw Error(ErrorCode::OddDimension, "Pfaffian of curvature needs even dimension");
    const std::size_t n = d / 2;
    std::vector<int> perm(d);
    for (std::size_t i = 0; i < d; ++i) perm[i] = static_cast<int>(i);
    std::vector<std::vector<int>> perms;
    std::vector<int> signs;
    do {
        perms.push_back(perm);
        signs.push_back(permutation_sign(perm));
    } while (std::next_permutation(perm.begin(), perm.end()));

    double acc = 0.0;
    for (std::size_t p = 0; p < perms.size(); ++p) {
        for (std::size_t q = 0; q < perms.size(); ++q) {
            double term = signs[p] * signs[q];
            for (std::size_t k = 0; k < n && term != 0.0; ++k) {
                const auto& a = perms[p];
                const auto& b = perms[q];
                term *= fr(static_cast<std::size_t>(a[2 * k]), static_cast<std::size_t>(a[2 * k + 1]),
                           static_cast<std::size_t>(b[2 * k]), static_cast<std::size_t>(b[2 * k + 1]));
            }
            acc += term;
        }
    }
    double factorial = 1.0;
    for (std::size_t k = 2; k <= n; ++k) factorial *= static_cast<double>(k);
    return acc / (std::pow(4.0, static_cast<double>(n)) * factorial);
}

double euler_density_at(const ManifoldModel& model, std::size_t chart, const Point& x) {
    if (model.dim % 2 != 0) throw Error(ErrorCode::OddDimension, "Euler density needs even dimension");
    const Tensor4 r = riemann_at(model, chart, x);
    const Matrix g = model.chart(chart).metric(x);
    const double pf = curvature_pfaffian(frame_riemann(r, g));
    const double sqrt_g = std::sqrt(g.determinant());
    return pf * sqrt_g / std::pow(2.0 * std::numbers::pi, static_cast<double>(model.dim / 2));
}

double euler_density_at(const ManifoldModel& model, std::string_view chart, const Point& x) {
    return euler_density_at(model, model.chart_index(chart), x);
}

double symplectic_closedness_residual(const ManifoldModel& model, std::size_t chart, const Point& x) {
    symplectic_at(model, chart, x);  // NoSymplecticForm / PointOutsideChart
    const ChartGeometry& cg = model.chart(chart);
    const std::size_t d = model.dim;
    std::vector<Matrix> dw(d);
    for (std::size_t k = 0; k < d; ++k) {
        const double h = fd_step(cg.chart, k);
        dw[k] = (cg.symplectic(shifted(x, k, h)) - cg.symplectic(shifted(x, k, -h))) / (2.0 * h);
    }
    double worst = 0.0;
    for (std::size_t m = 0; m < d; ++m)
        for (std::size_t n = m + 1; n < d; ++n)
            for (std::size_t l = n + 1; l < d; ++l) {
                const auto mi = static_cast<Eigen::Index>(m);
                const auto ni = static_cast<Eigen::Index>(n);
                const auto li = static_cast<Eigen::Index>(l);
                worst = std::max(worst, std::abs(dw[m](ni, li) + dw[n](li, mi) + dw[l](mi, ni)));
            }
    return worst;
}

double symplectic_closedness_residual(const ManifoldModel& model, std::string_view chart, const Point& x) {
    return symplectic_closedness_residual(model, model.chart_index(chart), x);
}

double first_bianchi_residual(const Tensor4& r) {
    const std::size_t d = r.dim();
    double worst = 0.0;
    for (std::size_t m = 0; m < d; ++m)
        for (std::size_t n = 0; n < d; ++n)
            for (std::size_t k = 0; k < d; ++k)
                for (std::size_t l = 0; l < d; ++l)
                    worst = std::max(worst, std::abs(r(m, n, k, l) + r(m, k, l, n) + r(m, l, n, k)));
    return worst;
}

}  // namespace localize
