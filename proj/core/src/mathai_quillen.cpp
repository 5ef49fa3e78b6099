#include "localize/mathai_quillen.hpp"

#include <cmath>
#include <numbers>

#include "localize/error.hpp"

namespace localize {

namespace {

// Adds c * g_{i0} g_{i1} ... (in the given order) to e.
void add_ordered_monomial(GrassmannElement& e, std::initializer_list<std::size_t> order, Complex c) {
    std::uint32_t mask = 0u;
    int sign = 1;
    for (std::size_t g : order) {
        const std::uint32_t bit = 1u << g;
        sign *= monomial_product_sign(mask, bit);
        if (sign == 0) return;
        mask |= bit;
    }
    e.add_term(mask, static_cast<double>(sign) * c);
}

}  // namespace

void MQParams::validate() const {
    if (!std::isfinite(s) || s < 0.0) throw Error(ErrorCode::InvalidArgument, "MQ parameter s must be finite and >= 0");
    if (!std::isfinite(beta) || !(beta > 0.0)) throw Error(ErrorCode::InvalidArgument, "MQ parameter beta must be > 0");
}

double mq_normalization(std::size_t d) {
    if (d % 2 != 0) throw Error(ErrorCode::OddDimension, "MQ normalization needs even dimension");
    return std::pow(2.0 * std::numbers::pi, -static_cast<double>(d) / 2.0);
}

GrassmannElement mq_exponent(const Tensor4& fr, const Matrix& fh, const MQParams& params) {
    const std::size_t d = fr.dim();
    const GrassmannAlgebra alg = GrassmannAlgebra::paired(d);
    GrassmannElement e(alg);
    const double curvature_coeff = -0.25 * params.beta;
    for (std::size_t a = 0; a < d; ++a)
        for (std::size_t b = 0; b < d; ++b) {
            if (a == b) continue;
            for (std::size_t c = 0; c < d; ++c)
                for (std::size_t k = 0; k < d; ++k) {
                    if (c == k) continue;
                    const double r = fr(a, b, c, k);
                    if (r == 0.0) continue;
                    add_ordered_monomial(e, {alg.psibar(a), alg.psibar(b), alg.psi(c), alg.psi(k)}, curvature_coeff * r);
                }
        }
    const double hessian_coeff = -params.beta * params.s;
    if (hessian_coeff != 0.0) {
        for (std::size_t a = 0; a < d; ++a)
            for (std::size_t b = 0; b < d; ++b) {
                const double h = fh(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b));
                if (h == 0.0) continue;
                add_ordered_monomial(e, {alg.psibar(a), alg.psi(b)}, hessian_coeff * h);
            }
    }
    return e;
}

double mq_density_at(const ManifoldModel& model, const ScalarField& f, const MQParams& params, std::size_t chart,
                     const Point& x) {
    params.validate();
    const std::size_t d = model.dim;
    if (d % 2 != 0) throw Error(ErrorCode::OddDimension, "MQ density needs even dimension");
    check_point(model, chart, x);

    const Matrix g = model.chart(chart).metric(x);
    const Matrix ginv = inverse_metric(g);
    const Matrix frame = orthonormal_frame(g);
    const Tensor4 fr = frame_riemann(riemann_at(model, chart, x), g);

    Matrix fh = Matrix::Zero(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
    double gaussian = 1.0;
    if (params.s != 0.0) {
        const Vector grad = field_gradient(model, f, chart, x);
        fh = frame.transpose() * covariant_hessian(model, f, chart, x) * frame;
        const double df2 = grad.dot(ginv * grad);
        gaussian = std::exp(-0.5 * params.beta * params.s * params.s * df2);
    }
    if (gaussian == 0.0) return 0.0;

    const Complex fermionic = berezin_integrate(grassmann_exp(mq_exponent(fr, fh, params)));
    const double sqrt_g = std::sqrt(g.determinant());
    return mq_normalization(d) * std::pow(params.beta, -static_cast<double>(d) / 2.0) * fermionic.real() * gaussian *
           sqrt_g;
}

IntegralResult mq_integral(const ManifoldModel& model, const ScalarField& f, const MQParams& params,
                           const QuadratureSpec& spec) {
    params.validate();
    const std::size_t chart = model.integration_chart();
    return integrate_chart(
        model, [&](const Point& x) { return Complex(mq_density_at(model, f, params, chart, x)); }, spec);
}

IntegralResult gauss_bonnet(const ManifoldModel& model, const QuadratureSpec& spec) {
    if (model.dim % 2 != 0) throw Error(ErrorCode::OddDimension, "Gauss-Bonnet needs even dimension");
    const std::size_t chart = model.integration_chart();
    return integrate_chart(
        model, [&](const Point& x) { return Complex(euler_density_at(model, chart, x)); }, spec);
}

}  // namespace localize
