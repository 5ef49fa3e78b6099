#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "localize/integrate.hpp"

namespace localize {

enum class GroupKind { U1, SU2, SO3 };

// Which geodesic family the semiclassical side sums over. WrongLengths uses
// l_n = theta + 2 pi n with the SU(2) amplitude and no image sign; it exists as a negative control.
enum class GeodesicRule { Native, WrongLengths };

struct Irrep {
    double label = 0.0;     // n for u1, j for su2/so3
    int dim = 1;
    double casimir = 0.0;
};

// Rank-one compact group. Irreps are enumerated by level: level k holds every irrep
// with the k-th smallest Casimir (u1 level k>0 holds n = +k and n = -k).
class CompactGroupModel {
public:
    explicit CompactGroupModel(GroupKind kind, GeodesicRule rule = GeodesicRule::Native);

    GroupKind kind() const noexcept { return kind_; }
    GeodesicRule rule() const noexcept { return rule_; }
    const std::string& name() const noexcept { return name_; }
    int dim() const noexcept { return kind_ == GroupKind::U1 ? 1 : 3; }

    std::vector<Irrep> level(std::size_t k) const;
    Complex character(const Irrep& irrep, double theta) const;

    double class_lower() const noexcept;
    double class_upper() const noexcept;
    // Weyl density of the normalized Haar measure in the class angle.
    double class_measure(double theta) const;
    // Total volume w.r.t. which the kernel is a density: 2 pi for u1, 1 (mass-one Haar) otherwise.
    double kernel_volume() const noexcept;

    double geodesic_length(int n, double theta) const;
    // A_n(theta); ConjugacyClassSingular where sin(theta/2) = 0 on su2/so3.
    double geodesic_amplitude(int n, double theta) const;
    // A_n(theta) * sqrt(mu(theta)): bounded on the whole class domain.
    double amplitude_sqrt_measure(int n, double theta) const;

private:
    GroupKind kind_;
    GeodesicRule rule_;
    std::string name_;
};

// "u1", "su2", "so3"
CompactGroupModel resolve_group(std::string_view name, GeodesicRule rule = GeodesicRule::Native);

// 1-D rule used for class-angle integrals.
QuadratureSpec default_class_quadrature();

struct SeriesValue {
    double value = 0.0;
    std::size_t terms = 0;       // levels (spectral) or windings |n| <= terms (geodesic)
    double tail_bound = 0.0;
};

// sum_j dim_j chi_j(theta) e^{-beta c_j} / V, truncated once the certified tail <= tail_tol * |partial|.
SeriesValue spectral_kernel_series(const CompactGroupModel& g, double theta, double beta, double tail_tol = 1e-14);
double spectral_kernel(const CompactGroupModel& g, double theta, double beta, double tail_tol = 1e-14);

// sum_j dim_j^2 e^{-beta c_j}
SeriesValue spectral_trace_series(const CompactGroupModel& g, double beta, double tail_tol = 1e-14);
double spectral_trace(const CompactGroupModel& g, double beta, double tail_tol = 1e-14);

// a e^{c beta} (4 pi beta)^{-d/2} sum_{|n| <= n_max} A_n(theta) e^{-l_n^2 / 4 beta}; n_max chosen
// automatically when passed as a negative value.
SeriesValue geodesic_kernel_series(const CompactGroupModel& g, double theta, double beta, double shift,
                                   double amplitude, int n_max = -1);
double geodesic_kernel(const CompactGroupModel& g, double theta, double beta, double shift, double amplitude,
                       int n_max = -1);

// V^2 int K_{beta/2}(theta)^2 mu(theta) dtheta, which equals the heat trace by the semigroup
// property and character orthogonality. Amplitude enters squared.
IntegralResult geodesic_trace_result(const CompactGroupModel& g, double beta, double shift, double amplitude,
                                     const QuadratureSpec& spec = default_class_quadrature());
double geodesic_trace(const CompactGroupModel& g, double beta, double shift, double amplitude,
                      const QuadratureSpec& spec = default_class_quadrature());

struct ShiftFit {
    double amplitude = 1.0;      // kernel-level a
    double shift = 0.0;          // c
    double fit_residual = 0.0;   // max |log ratio - fitted line|
};

// Least squares of log(spectral_trace / bare geodesic trace) against (1, beta):
// intercept = 2 log a, slope = c. SingularFit for fewer than two distinct betas.
ShiftFit calibrate_shift(const CompactGroupModel& g, const std::vector<double>& betas);

struct HeatComparison {
    double theta = 0.0;
    double beta = 0.0;
    double spectral = 0.0;
    double geodesic = 0.0;
    double shift_used = 0.0;
    double amplitude_used = 1.0;
    std::size_t spectral_terms = 0;
    std::size_t geodesic_terms = 0;
    double rel_diff = 0.0;
};

HeatComparison compare_kernel(const CompactGroupModel& g, double theta, double beta, const ShiftFit& fit);
HeatComparison compare_trace(const CompactGroupModel& g, double beta, const ShiftFit& fit);

struct DeWittReport {
    ShiftFit full_fit;
    std::vector<double> betas;
    std::vector<double> leave_one_out_shifts;
    double shift_spread = 0.0;
    double tolerance = 1e-4;
    double residual_tolerance = 1e-6;
    bool pass = false;   // spread <= tolerance and fit residual <= residual_tolerance
};

// Refit on every leave-one-out subset; needs at least 4 betas.
DeWittReport dewitt_constancy_report(const CompactGroupModel& g, const std::vector<double>& betas);

struct SmallTimeReport {
    std::vector<double> betas;
    std::vector<double> rescaled;   // spectral_trace * (4 pi beta)^{d/2} * e^{-c beta}
    double shift = 0.0;
    double limit_estimate = 0.0;    // intercept of a linear fit in beta
    double drift = 0.0;             // relative change between the two smallest betas
};

// Betas must lie in (0, 0.05].
SmallTimeReport smalltime_report(const CompactGroupModel& g, const std::vector<double>& betas, double shift);

}  // namespace localize
