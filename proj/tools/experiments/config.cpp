#include "experiments/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numbers>

#include "localize/error.hpp"
#include "localize/liegroup.hpp"
#include "localize/models.hpp"

namespace localize::tools {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
    return s;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
    std::vector<std::string_view> parts;
    std::size_t start = 0;
    while (true) {
        const std::size_t pos = s.find(sep, start);
        parts.push_back(trim(s.substr(start, pos - start)));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return parts;
}

double parse_number(std::string_view text) {
    text = trim(text);
    double v = 0.0;
    const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (text.empty() || ec != std::errc() || end != text.data() + text.size() || !std::isfinite(v)) {
        throw Error(ErrorCode::ConfigError, "malformed number '" + std::string(text) + "'");
    }
    return v;
}

bool is_model_experiment(std::string_view e) {
    return e == "curvature" || e == "gauss-bonnet" || e == "morse" || e == "dh" || e == "mq-sweep";
}

bool is_group_experiment(std::string_view e) { return e == "heat" || e == "dewitt" || e == "smalltime"; }

}  // namespace

std::vector<double> parse_grid(std::string_view text) {
    text = trim(text);
    if (text.empty()) throw Error(ErrorCode::ConfigError, "empty grid");
    if (text.find(':') != std::string_view::npos) {
        const auto parts = split(text, ':');
        if (parts.size() != 3) throw Error(ErrorCode::ConfigError, "grid must be a:b:n, got '" + std::string(text) + "'");
        const double a = parse_number(parts[0]);
        const double b = parse_number(parts[1]);
        const double n = parse_number(parts[2]);
        if (n < 1.0 || n != std::floor(n) || n > 1e6) {
            throw Error(ErrorCode::ConfigError, "grid count must be a positive integer, got '" + std::string(parts[2]) + "'");
        }
        const auto count = static_cast<std::size_t>(n);
        if (count == 1) return {a};
        std::vector<double> grid(count);
        for (std::size_t i = 0; i < count; ++i) {
            grid[i] = a + (b - a) * static_cast<double>(i) / static_cast<double>(count - 1);
        }
        grid.back() = b;
        return grid;
    }
    std::vector<double> grid;
    for (auto part : split(text, ',')) grid.push_back(parse_number(part));
    return grid;
}

std::vector<Complex> parse_complex_list(std::string_view text) {
    text = trim(text);
    if (text.empty()) throw Error(ErrorCode::ConfigError, "empty t list");
    std::vector<Complex> out;
    for (auto item : split(text, ';')) {
        const auto parts = split(item, ',');
        if (parts.size() == 1) {
            out.emplace_back(parse_number(parts[0]), 0.0);
        } else if (parts.size() == 2) {
            out.emplace_back(parse_number(parts[0]), parse_number(parts[1]));
        } else {
            throw Error(ErrorCode::ConfigError, "complex value must be re or re,im, got '" + std::string(item) + "'");
        }
    }
    return out;
}

ReportFormat parse_format(std::string_view text) {
    if (text == "json") return ReportFormat::Json;
    if (text == "csv") return ReportFormat::Csv;
    if (text == "dat") return ReportFormat::Dat;
    throw Error(ErrorCode::ConfigError, "unknown format '" + std::string(text) + "' (json, csv, dat)");
}

std::string to_string(ReportFormat format) {
    switch (format) {
        case ReportFormat::Json: return "json";
        case ReportFormat::Csv: return "csv";
        case ReportFormat::Dat: return "dat";
    }
    return "json";
}

const std::vector<std::string>& experiment_names() {
    static const std::vector<std::string> names = {"curvature", "gauss-bonnet", "morse",     "dh",
                                                   "mq-sweep",  "heat",         "dewitt",    "smalltime",
                                                   "full-suite", "list"};
    return names;
}

void resolve_defaults(ExperimentConfig& c) {
    const auto& names = experiment_names();
    if (std::find(names.begin(), names.end(), c.experiment) == names.end()) {
        throw Error(ErrorCode::ConfigError, "unknown experiment '" + c.experiment + "'");
    }
    if (c.points < 1) throw Error(ErrorCode::ConfigError, "points must be positive");
    if (c.assert_tol && !(*c.assert_tol > 0.0)) throw Error(ErrorCode::ConfigError, "assert-tol must be positive");
    try {
        c.quadrature.validate();
        c.morse.validate();
    } catch (const Error& e) {
        throw Error(ErrorCode::ConfigError, e.what());
    }

    if (is_model_experiment(c.experiment)) {
        if (c.model.empty()) c.model = "s2";
        try {
            const ManifoldModel m = resolve_model(c.model);
            if (c.function.empty()) {
                if (m.name == "t2") c.function = "double-cosine";
                else if (m.name.find('x') != std::string::npos) c.function = "generic";
                else c.function = "height";
            }
            resolve_function(m, c.function);
        } catch (const Error& e) {
            throw Error(ErrorCode::ConfigError, e.what());
        }
    }
    if (c.experiment == "dh" && c.t.empty()) c.t = {Complex(1.0, 0.0), Complex(0.0, 1.0)};
    if (c.experiment == "mq-sweep") {
        if (c.s.empty()) c.s = {0.0, 0.25, 0.5, 1.0, 2.0, 4.0, 8.0};
        if (c.beta.empty()) c.beta = {0.5, 1.0, 2.0};
    }
    if (is_group_experiment(c.experiment)) {
        if (c.group.empty()) c.group = "su2";
        try {
            resolve_group(c.group);
        } catch (const Error& e) {
            throw Error(ErrorCode::ConfigError, e.what());
        }
        if (c.calibration_beta.empty()) c.calibration_beta = {0.5, 1.0};
        if (c.experiment == "heat") {
            if (c.beta.empty()) c.beta = {0.2, 0.5, 1.0, 2.0, 4.0};
            if (c.theta.empty()) {
                const double pi = std::numbers::pi;
                c.theta = {pi / 4.0, pi / 2.0, 3.0 * pi / 4.0};
            }
        }
        if (c.experiment == "dewitt" && c.beta.empty()) c.beta = {0.2, 0.5, 1.0, 2.0, 4.0};
        if (c.experiment == "smalltime" && c.beta.empty()) c.beta = {0.01, 0.02};
    }
    for (double b : c.beta) {
        if (!(b > 0.0)) throw Error(ErrorCode::ConfigError, "beta values must be positive");
    }
    for (double s : c.s) {
        if (!(s >= 0.0)) throw Error(ErrorCode::ConfigError, "s values must be nonnegative");
    }
}

}  // namespace localize::tools
