#pragma once

#include <complex>
#include <cmath>
#include <cstddef>
#include <type_traits>
#include <vector>

#include <Eigen/Dense>

namespace localize {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using Point = Eigen::VectorXd;
using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;

// Dense rank-3 array, used for Christoffel symbols Gamma^mu_{nu kappa}.
class Tensor3 {
public:
    Tensor3() = default;
    explicit Tensor3(std::size_t d) : d_(d), data_(d * d * d, 0.0) {}

    std::size_t dim() const noexcept { return d_; }
    double& operator()(std::size_t i, std::size_t j, std::size_t k) { return data_[(i * d_ + j) * d_ + k]; }
    double operator()(std::size_t i, std::size_t j, std::size_t k) const { return data_[(i * d_ + j) * d_ + k]; }
    const std::vector<double>& data() const noexcept { return data_; }
    std::vector<double>& data() noexcept { return data_; }

private:
    std::size_t d_ = 0;
    std::vector<double> data_;
};

// Dense rank-4 array, used for R^mu_{nu kappa lambda} and its lowered forms.
class Tensor4 {
public:
    Tensor4() = default;
    explicit Tensor4(std::size_t d) : d_(d), data_(d * d * d * d, 0.0) {}

    std::size_t dim() const noexcept { return d_; }
    double& operator()(std::size_t i, std::size_t j, std::size_t k, std::size_t l) {
        return data_[((i * d_ + j) * d_ + k) * d_ + l];
    }
    double operator()(std::size_t i, std::size_t j, std::size_t k, std::size_t l) const {
        return data_[((i * d_ + j) * d_ + k) * d_ + l];
    }
    const std::vector<double>& data() const noexcept { return data_; }
    std::vector<double>& data() noexcept { return data_; }

private:
    std::size_t d_ = 0;
    std::vector<double> data_;
};

double max_abs(const Tensor3& t) noexcept;
double max_abs(const Tensor4& t) noexcept;
double max_abs_diff(const Tensor3& a, const Tensor3& b) noexcept;
double max_abs_diff(const Tensor4& a, const Tensor4& b) noexcept;

// Neumaier-compensated accumulator. Order of add() calls fully determines the result.
template <typename T>
class CompensatedSum {
public:
    void add(T x) noexcept {
        if constexpr (std::is_same_v<T, Complex>) {
            re_.add(x.real());
            im_.add(x.imag());
        } else {
            const T t = sum_ + x;
            if (std::abs(sum_) >= std::abs(x)) {
                comp_ += (sum_ - t) + x;
            } else {
                comp_ += (x - t) + sum_;
            }
            sum_ = t;
        }
    }
    T value() const noexcept {
        if constexpr (std::is_same_v<T, Complex>) {
            return {re_.value(), im_.value()};
        } else {
            return sum_ + comp_;
        }
    }

private:
    struct Empty {};
    T sum_{};
    T comp_{};
    // only used for the complex specialization
    std::conditional_t<std::is_same_v<T, Complex>, CompensatedSum<double>, Empty> re_{}, im_{};
};

}  // namespace localize
