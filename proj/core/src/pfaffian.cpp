#include "localize/pfaffian.hpp"

#include <algorithm>

#include "localize/error.hpp"

namespace localize {

namespace {

template <typename Mat>
typename Mat::Scalar pfaffian_impl(Mat a) {
    using Scalar = typename Mat::Scalar;
    const Eigen::Index n = a.rows();
    if (a.cols() != n) throw Error(ErrorCode::NotAntisymmetric, "matrix is not square");
    if (n % 2 != 0) throw Error(ErrorCode::OddDimension, "Pfaffian of odd-dimensional matrix");
    if (n == 0) return Scalar(1.0);
    const double scale = std::max(1.0, a.cwiseAbs().maxCoeff());
    if ((a + a.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale) {
        throw Error(ErrorCode::NotAntisymmetric, "matrix is not antisymmetric within 1e-12");
    }

    Scalar result(1.0);
    for (Eigen::Index k = 0; k + 1 < n; k += 2) {
        Eigen::Index pivot = k + 1;
        double best = std::abs(a(k + 1, k));
        for (Eigen::Index i = k + 2; i < n; ++i) {
            if (std::abs(a(i, k)) > best) {
                best = std::abs(a(i, k));
                pivot = i;
            }
        }
        if (pivot != k + 1) {
            a.row(k + 1).swap(a.row(pivot));
            a.col(k + 1).swap(a.col(pivot));
            result = -result;
        }
        if (a(k + 1, k) == Scalar(0.0)) return Scalar(0.0);
        result *= a(k, k + 1);
        if (k + 2 < n) {
            const Eigen::Index rest = n - k - 2;
            using Vec = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
            const Vec tau = a.row(k).tail(rest).transpose() / a(k, k + 1);
            const Vec col = a.col(k + 1).tail(rest);
            a.bottomRightCorner(rest, rest) += tau * col.transpose() - col * tau.transpose();
        }
    }
    return result;
}

}  // namespace

double pfaffian(const Matrix& m) { return pfaffian_impl(m); }
Complex pfaffian(const ComplexMatrix& m) { return pfaffian_impl(m); }

}  // namespace localize
