#include "localize/liegroup.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "localize/error.hpp"

namespace localize {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr std::size_t kMaxLevels = 1'000'000;
constexpr int kMaxWindings = 100'000;

void check_beta(double beta) {
    if (!(beta > 0.0) || !std::isfinite(beta)) throw Error(ErrorCode::BetaNonpositive, "beta must be positive and finite");
}

double level_bound(const std::vector<Irrep>& level, double beta) {
    double b = 0.0;
    for (const auto& irrep : level) b += static_cast<double>(irrep.dim) * irrep.dim * std::exp(-beta * irrep.casimir);
    return b;
}

// Generic level summation. term(level) returns the level contribution; the certified tail uses
// dim^2 e^{-beta c} >= |dim chi e^{-beta c}| and the ratio of consecutive level bounds, which is
// decreasing past the peak for all three families.
template <typename Term>
SeriesValue sum_levels(const CompactGroupModel& g, double beta, double tail_tol, double scale, Term term) {
    CompensatedSum<double> acc;
    SeriesValue out;
    double bound = level_bound(g.level(0), beta);
    for (std::size_t k = 0; k < kMaxLevels; ++k) {
        acc.add(term(g.level(k)));
        out.terms = k + 1;
        const double next = level_bound(g.level(k + 1), beta);
        if (next == 0.0) {
            out.tail_bound = 0.0;
            break;
        }
        if (k >= 1 && next < bound) {
            const double ratio = next / bound;
            const double tail = next / (1.0 - ratio) / scale;
            if (tail <= tail_tol * std::abs(acc.value())) {
                out.tail_bound = tail;
                break;
            }
        }
        bound = next;
    }
    out.value = acc.value();
    return out;
}

double fit_line(const std::vector<double>& x, const std::vector<double>& y, double& intercept, double& slope) {
    const double n = static_cast<double>(x.size());
    double sx = 0.0, sy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
    }
    const double mx = sx / n, my = sy / n;
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
    }
    if (!(sxx > 1e-300)) throw Error(ErrorCode::SingularFit, "fit needs at least two distinct beta values");
    slope = sxy / sxx;
    intercept = my - slope * mx;
    double worst = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) worst = std::max(worst, std::abs(y[i] - intercept - slope * x[i]));
    return worst;
}

}  // namespace

CompactGroupModel::CompactGroupModel(GroupKind kind, GeodesicRule rule) : kind_(kind), rule_(rule) {
    switch (kind) {
        case GroupKind::U1: name_ = "u1"; break;
        case GroupKind::SU2: name_ = "su2"; break;
        case GroupKind::SO3: name_ = "so3"; break;
    }
    if (rule == GeodesicRule::WrongLengths) name_ += "[wrong-lengths]";
}

CompactGroupModel resolve_group(std::string_view name, GeodesicRule rule) {
    if (name == "u1") return CompactGroupModel(GroupKind::U1, rule);
    if (name == "su2") return CompactGroupModel(GroupKind::SU2, rule);
    if (name == "so3") return CompactGroupModel(GroupKind::SO3, rule);
    throw Error(ErrorCode::UnknownModel, "unknown group '" + std::string(name) + "'");
}

std::vector<Irrep> CompactGroupModel::level(std::size_t k) const {
    const double kd = static_cast<double>(k);
    switch (kind_) {
        case GroupKind::U1:
            if (k == 0) return {Irrep{0.0, 1, 0.0}};
            return {Irrep{kd, 1, kd * kd}, Irrep{-kd, 1, kd * kd}};
        case GroupKind::SU2: {
            const double j = 0.5 * kd;
            return {Irrep{j, static_cast<int>(k) + 1, j * (j + 1.0)}};
        }
        case GroupKind::SO3:
            return {Irrep{kd, 2 * static_cast<int>(k) + 1, kd * (kd + 1.0)}};
    }
    return {};
}

Complex CompactGroupModel::character(const Irrep& irrep, double theta) const {
    if (kind_ == GroupKind::U1) return std::exp(Complex(0.0, irrep.label * theta));
    const double s = std::sin(0.5 * theta);
    if (std::abs(s) < 1e-6) {
        // weights m = -j..j
        double acc = 0.0;
        for (int k = 0; k < irrep.dim; ++k) acc += std::cos((-irrep.label + k) * theta);
        return acc;
    }
    return std::sin(0.5 * irrep.dim * theta) / s;
}

double CompactGroupModel::class_lower() const noexcept { return 0.0; }
double CompactGroupModel::class_upper() const noexcept { return kind_ == GroupKind::SO3 ? kPi : 2.0 * kPi; }

double CompactGroupModel::class_measure(double theta) const {
    const double s = std::sin(0.5 * theta);
    switch (kind_) {
        case GroupKind::U1: return 1.0 / (2.0 * kPi);
        case GroupKind::SU2: return s * s / kPi;
        case GroupKind::SO3: return 2.0 * s * s / kPi;
    }
    return 0.0;
}

double CompactGroupModel::kernel_volume() const noexcept { return kind_ == GroupKind::U1 ? 2.0 * kPi : 1.0; }

double CompactGroupModel::geodesic_length(int n, double theta) const {
    const double period = (kind_ == GroupKind::SU2 && rule_ == GeodesicRule::Native) ? 4.0 * kPi : 2.0 * kPi;
    return theta + period * n;
}

double CompactGroupModel::geodesic_amplitude(int n, double theta) const {
    if (kind_ == GroupKind::U1) return 1.0;
    const double s = std::sin(0.5 * theta);
    if (std::abs(s) < 1e-12) {
        throw Error(ErrorCode::ConjugacyClassSingular, "geodesic amplitude degenerates where sin(theta/2) = 0");
    }
    const double a = geodesic_length(n, theta) / (2.0 * s);
    // SO(3) image windings pass through -1 in SU(2), which flips the sign of 1/sin(theta/2).
    if (kind_ == GroupKind::SO3 && rule_ == GeodesicRule::Native && (n % 2 != 0)) return -a;
    return a;
}

double CompactGroupModel::amplitude_sqrt_measure(int n, double theta) const {
    if (kind_ == GroupKind::U1) return 1.0 / std::sqrt(2.0 * kPi);
    const double l = geodesic_length(n, theta);
    // ell/(2 sin) * sqrt(C) |sin| with sin(theta/2) >= 0 on the class domain
    const double c = kind_ == GroupKind::SU2 ? 1.0 / kPi : 2.0 / kPi;
    double v = 0.5 * l * std::sqrt(c);
    if (kind_ == GroupKind::SO3 && rule_ == GeodesicRule::Native && (n % 2 != 0)) v = -v;
    return v;
}

SeriesValue spectral_kernel_series(const CompactGroupModel& g, double theta, double beta, double tail_tol) {
    check_beta(beta);
    const double volume = g.kernel_volume();
    SeriesValue out = sum_levels(g, beta, tail_tol, volume, [&](const std::vector<Irrep>& level) {
        double v = 0.0;
        for (const auto& irrep : level) v += irrep.dim * g.character(irrep, theta).real() * std::exp(-beta * irrep.casimir);
        return v / volume;
    });
    return out;
}

double spectral_kernel(const CompactGroupModel& g, double theta, double beta, double tail_tol) {
    return spectral_kernel_series(g, theta, beta, tail_tol).value;
}

SeriesValue spectral_trace_series(const CompactGroupModel& g, double beta, double tail_tol) {
    check_beta(beta);
    return sum_levels(g, beta, tail_tol, 1.0, [&](const std::vector<Irrep>& level) { return level_bound(level, beta); });
}

double spectral_trace(const CompactGroupModel& g, double beta, double tail_tol) {
    return spectral_trace_series(g, beta, tail_tol).value;
}

namespace {

// sum_{|n| <= n_max} weight(n) e^{-l_n^2 / 4 beta}, auto-truncated when n_max < 0.
template <typename Weight>
SeriesValue winding_sum(const CompactGroupModel& g, double theta, double beta, int n_max, Weight weight) {
    auto term = [&](int n) {
        const double l = g.geodesic_length(n, theta);
        return weight(n) * std::exp(-l * l / (4.0 * beta));
    };
    CompensatedSum<double> acc;
    acc.add(term(0));
    SeriesValue out;
    const int limit = n_max >= 0 ? n_max : kMaxWindings;
    int n = 1;
    for (; n <= limit; ++n) {
        const double plus = term(n);
        const double minus = term(-n);
        acc.add(plus);
        acc.add(minus);
        if (n_max < 0) {
            const double largest = std::max(std::abs(plus), std::abs(minus));
            const bool receding = std::abs(g.geodesic_length(n, theta)) > std::abs(g.geodesic_length(n - 1, theta)) &&
                                  std::abs(g.geodesic_length(-n, theta)) > std::abs(g.geodesic_length(-n + 1, theta));
            if (receding && largest < 1e-16 * std::abs(acc.value())) break;
        }
    }
    out.terms = static_cast<std::size_t>(std::min(n, limit));
    out.value = acc.value();
    return out;
}

}  // namespace

SeriesValue geodesic_kernel_series(const CompactGroupModel& g, double theta, double beta, double shift,
                                   double amplitude, int n_max) {
    check_beta(beta);
    if (g.kind() != GroupKind::U1) g.geodesic_amplitude(0, theta);  // singular-class check
    SeriesValue s = winding_sum(g, theta, beta, n_max, [&](int n) { return g.geodesic_amplitude(n, theta); });
    const double prefactor = amplitude * std::exp(shift * beta) * std::pow(4.0 * kPi * beta, -0.5 * g.dim());
    s.value *= prefactor;
    return s;
}

double geodesic_kernel(const CompactGroupModel& g, double theta, double beta, double shift, double amplitude,
                       int n_max) {
    return geodesic_kernel_series(g, theta, beta, shift, amplitude, n_max).value;
}

QuadratureSpec default_class_quadrature() {
    QuadratureSpec spec;
    spec.order = 20;
    spec.cells = 8;
    spec.max_refinements = 8;
    spec.target_rel_tol = 1e-13;
    return spec;
}

IntegralResult geodesic_trace_result(const CompactGroupModel& g, double beta, double shift, double amplitude,
                                     const QuadratureSpec& spec) {
    check_beta(beta);
    const double half = 0.5 * beta;
    const double prefactor = amplitude * std::exp(shift * half) * std::pow(4.0 * kPi * half, -0.5 * g.dim());
    const double volume = g.kernel_volume();
    auto integrand = [&](double theta) {
        const double s = winding_sum(g, theta, half, -1, [&](int n) { return g.amplitude_sqrt_measure(n, theta); }).value;
        return volume * volume * prefactor * prefactor * s * s;
    };
    return integrate_interval(integrand, g.class_lower(), g.class_upper(), spec);
}

double geodesic_trace(const CompactGroupModel& g, double beta, double shift, double amplitude,
                      const QuadratureSpec& spec) {
    return require_converged(geodesic_trace_result(g, beta, shift, amplitude, spec)).value.real();
}

ShiftFit calibrate_shift(const CompactGroupModel& g, const std::vector<double>& betas) {
    if (betas.size() < 2) throw Error(ErrorCode::SingularFit, "calibration needs at least two beta values");
    std::vector<double> y;
    for (double b : betas) y.push_back(std::log(spectral_trace(g, b) / geodesic_trace(g, b, 0.0, 1.0)));
    double intercept = 0.0, slope = 0.0;
    ShiftFit fit;
    fit.fit_residual = fit_line(betas, y, intercept, slope);
    fit.amplitude = std::exp(0.5 * intercept);
    fit.shift = slope;
    return fit;
}

HeatComparison compare_kernel(const CompactGroupModel& g, double theta, double beta, const ShiftFit& fit) {
    HeatComparison c;
    c.theta = theta;
    c.beta = beta;
    const SeriesValue s = spectral_kernel_series(g, theta, beta);
    const SeriesValue q = geodesic_kernel_series(g, theta, beta, fit.shift, fit.amplitude);
    c.spectral = s.value;
    c.geodesic = q.value;
    c.spectral_terms = s.terms;
    c.geodesic_terms = q.terms;
    c.shift_used = fit.shift;
    c.amplitude_used = fit.amplitude;
    c.rel_diff = std::abs(c.spectral - c.geodesic) / std::abs(c.spectral);
    return c;
}

HeatComparison compare_trace(const CompactGroupModel& g, double beta, const ShiftFit& fit) {
    HeatComparison c;
    c.theta = std::nan("");
    c.beta = beta;
    const SeriesValue s = spectral_trace_series(g, beta);
    const IntegralResult q = require_converged(geodesic_trace_result(g, beta, fit.shift, fit.amplitude));
    c.spectral = s.value;
    c.geodesic = q.value.real();
    c.spectral_terms = s.terms;
    c.geodesic_terms = q.nodes;
    c.shift_used = fit.shift;
    c.amplitude_used = fit.amplitude;
    c.rel_diff = std::abs(c.spectral - c.geodesic) / std::abs(c.spectral);
    return c;
}

DeWittReport dewitt_constancy_report(const CompactGroupModel& g, const std::vector<double>& betas) {
    if (betas.size() < 4) throw Error(ErrorCode::InvalidArgument, "DeWitt constancy report needs at least 4 betas");
    DeWittReport report;
    report.betas = betas;
    report.full_fit = calibrate_shift(g, betas);
    for (std::size_t skip = 0; skip < betas.size(); ++skip) {
        std::vector<double> subset;
        for (std::size_t i = 0; i < betas.size(); ++i) {
            if (i != skip) subset.push_back(betas[i]);
        }
        report.leave_one_out_shifts.push_back(calibrate_shift(g, subset).shift);
    }
    const auto [lo, hi] = std::minmax_element(report.leave_one_out_shifts.begin(), report.leave_one_out_shifts.end());
    report.shift_spread = *hi - *lo;
    report.pass = report.shift_spread <= report.tolerance && report.full_fit.fit_residual <= report.residual_tolerance;
    return report;
}

SmallTimeReport smalltime_report(const CompactGroupModel& g, const std::vector<double>& betas, double shift) {
    if (betas.empty()) throw Error(ErrorCode::InvalidArgument, "small-time report needs beta values");
    for (double b : betas) {
        check_beta(b);
        if (b > 0.05) throw Error(ErrorCode::InvalidArgument, "small-time betas must lie in (0, 0.05]");
    }
    SmallTimeReport r;
    r.betas = betas;
    r.shift = shift;
    for (double b : betas) {
        r.rescaled.push_back(spectral_trace(g, b) * std::pow(4.0 * kPi * b, 0.5 * g.dim()) * std::exp(-shift * b));
    }
    std::vector<std::size_t> order(betas.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return betas[a] < betas[b]; });
    if (betas.size() >= 2) {
        const double r0 = r.rescaled[order[0]];
        const double r1 = r.rescaled[order[1]];
        r.drift = std::abs(r1 - r0) / std::abs(r0);
        double intercept = 0.0, slope = 0.0;
        fit_line(betas, r.rescaled, intercept, slope);
        r.limit_estimate = intercept;
    } else {
        r.limit_estimate = r.rescaled.front();
    }
    return r;
}

}  // namespace localize
