#include "experiments/report.hpp"

#include <algorithm>
#include <cinttypes>
#include <cstdio>
#include <sstream>

#include "localize/version.hpp"

namespace localize::tools {

namespace {

Json quadrature_json(const QuadratureSpec& q) {
    return Json{{"order", q.order}, {"cells", q.cells}, {"max_refinements", q.max_refinements},
                {"target_rel_tol", q.target_rel_tol}};
}

std::string number_text(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string cell_text(const Json& v, bool csv) {
    if (v.is_null()) return csv ? "" : "nan";
    if (v.is_boolean()) return v.get<bool>() ? "1" : "0";
    if (v.is_number_integer()) return std::to_string(v.get<long long>());
    if (v.is_number_unsigned()) return std::to_string(v.get<unsigned long long>());
    if (v.is_number()) return number_text(v.get<double>());
    std::string s = v.is_string() ? v.get<std::string>() : v.dump();
    if (csv) {
        if (s.find_first_of(",\"\n") != std::string::npos) {
            std::string quoted = "\"";
            for (char ch : s) {
                if (ch == '"') quoted += '"';
                quoted += ch;
            }
            return quoted + "\"";
        }
        return s;
    }
    for (char& ch : s) {
        if (ch == ' ' || ch == '\t') ch = '_';
    }
    return s.empty() ? "-" : s;
}

std::vector<std::string> record_columns(const Json& records) {
    std::vector<std::string> columns;
    for (const auto& r : records) {
        for (const auto& [key, value] : r.items()) {
            if (value.is_object() || value.is_array()) continue;
            if (std::find(columns.begin(), columns.end(), key) == columns.end()) columns.push_back(key);
        }
    }
    return columns;
}

}  // namespace

Json new_report(const ExperimentConfig& c) {
    Json cfg;
    cfg["experiment"] = c.experiment;
    if (!c.model.empty()) cfg["model"] = c.model;
    if (!c.function.empty()) cfg["function"] = c.function;
    if (!c.group.empty()) cfg["group"] = c.group;
    if (!c.theta.empty()) cfg["theta"] = c.theta;
    if (!c.beta.empty()) cfg["beta"] = c.beta;
    if (!c.calibration_beta.empty()) cfg["calibration_beta"] = c.calibration_beta;
    if (!c.s.empty()) cfg["s"] = c.s;
    if (!c.t.empty()) {
        Json ts = Json::array();
        for (const auto& t : c.t) ts.push_back(complex_json(t));
        cfg["t"] = ts;
    }
    if (c.shift) cfg["shift"] = *c.shift;
    if (c.wrong_lengths) cfg["wrong_lengths"] = true;
    cfg["points"] = c.points;
    cfg["seed"] = c.seed;
    cfg["quadrature"] = quadrature_json(c.quadrature);
    cfg["morse"] = Json{{"seeds_per_axis", c.morse.seeds_per_axis}, {"grad_tol", c.morse.grad_tol},
                        {"dedupe_radius", c.morse.dedupe_radius}, {"degeneracy_tol", c.morse.degeneracy_tol}};
    cfg["assert_tol"] = c.assert_tol ? Json(*c.assert_tol) : Json(nullptr);
    cfg["format"] = to_string(c.format);

    Json report;
    report["experiment"] = c.experiment;
    report["library_version"] = kVersion;
    report["config"] = cfg;
    report["records"] = Json::array();
    report["verdicts"] = Json::array();
    return report;
}

bool add_check(Json& report, const std::string& name, double value, double tolerance) {
    const bool pass = value <= tolerance;
    report["verdicts"].push_back(Json{{"name", name}, {"value", value}, {"tolerance", tolerance}, {"pass", pass}});
    return pass;
}

bool add_verdict(Json& report, const std::string& name, bool pass, const std::string& detail) {
    report["verdicts"].push_back(Json{{"name", name}, {"detail", detail}, {"pass", pass}});
    return pass;
}

void finalize_report(Json& report) {
    bool pass = true;
    for (const auto& v : report["verdicts"]) pass = pass && v["pass"].get<bool>();
    report["pass"] = pass;
    report["summation"] = "fixed canonical order, Neumaier-compensated";
    report["fingerprint"] = fingerprint(report["records"]);
}

std::string fingerprint(const Json& records) {
    const std::string text = records.dump();
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char ch : text) {
        h ^= ch;
        h *= 1099511628211ULL;
    }
    char buf[32];
    std::snprintf(buf, sizeof buf, "fnv1a64:%016" PRIx64, h);
    return buf;
}

std::string render(const Json& report, ReportFormat format) {
    if (format == ReportFormat::Json) return report.dump(2) + "\n";
    const Json& records = report["records"];
    const auto columns = record_columns(records);
    const bool csv = format == ReportFormat::Csv;
    std::ostringstream out;
    if (!csv) {
        out << "# experiment " << report["experiment"].get<std::string>() << "\n";
        for (const auto& v : report["verdicts"]) {
            out << "# verdict " << v["name"].get<std::string>() << " " << (v["pass"].get<bool>() ? "pass" : "fail")
                << "\n";
        }
        out << "#";
    }
    for (std::size_t i = 0; i < columns.size(); ++i) {
        if (i > 0) out << (csv ? "," : " ");
        out << (csv ? "" : (i == 0 ? " " : "")) << columns[i];
    }
    out << "\n";
    for (const auto& r : records) {
        for (std::size_t i = 0; i < columns.size(); ++i) {
            if (i > 0) out << (csv ? "," : " ");
            out << cell_text(r.contains(columns[i]) ? r[columns[i]] : Json(nullptr), csv);
        }
        out << "\n";
    }
    return out.str();
}

Json complex_json(Complex z) { return Json{{"re", z.real()}, {"im", z.imag()}}; }

}  // namespace localize::tools
