#include "localize/tensor.hpp"

#include <algorithm>

namespace localize {

namespace {
double max_abs_of(const std::vector<double>& v) noexcept {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}
double max_abs_diff_of(const std::vector<double>& a, const std::vector<double>& b) noexcept {
    double m = 0.0;
    for (std::size_t i = 0; i < std::min(a.size(), b.size()); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}
}  // namespace

double max_abs(const Tensor3& t) noexcept { return max_abs_of(t.data()); }
double max_abs(const Tensor4& t) noexcept { return max_abs_of(t.data()); }
double max_abs_diff(const Tensor3& a, const Tensor3& b) noexcept { return max_abs_diff_of(a.data(), b.data()); }
double max_abs_diff(const Tensor4& a, const Tensor4& b) noexcept { return max_abs_diff_of(a.data(), b.data()); }

}  // namespace localize
