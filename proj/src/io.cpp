#include "fockzero/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace fockzero
{

using nlohmann::json;

namespace
{

json complex_json(cplx z) { return json::array({z.real(), z.imag()}); }

cplx complex_from(const json &j)
{
    if (!j.is_array() || j.size() != 2) throw std::invalid_argument("expected a [re, im] pair");
    return {j.at(0).get<double>(), j.at(1).get<double>()};
}

// JSON has no infinity; an unbounded window is written as null.
json radius_json(double r) { return std::isfinite(r) ? json(r) : json(nullptr); }
double radius_from(const json &j, const char *key)
{
    if (!j.contains(key) || j.at(key).is_null()) return inf;
    return j.at(key).get<double>();
}

json number_or_null(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }

double number_from(const json &j)
{
    if (j.is_null()) return std::numeric_limits<double>::quiet_NaN();
    if (j.is_string()) {
        const auto s = j.get<std::string>();
        if (s == "inf") return inf;
        if (s == "-inf") return neg_inf;
    }
    return j.get<double>();
}

// Thresholds may carry infinite bounds; those are written as strings.
json sanitize(const json &j)
{
    if (j.is_number_float()) {
        const double x = j.get<double>();
        if (std::isnan(x)) return nullptr;
        if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
        return j;
    }
    if (j.is_object() || j.is_array()) {
        json out = j;
        for (auto &v : out) v = sanitize(v);
        return out;
    }
    return j;
}

} // namespace

std::string format_double(double x)
{
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, x);
    return {buf, res.ptr};
}

void require_keys(const json &j, const std::vector<std::string> &allowed, const std::string &what)
{
    if (!j.is_object()) throw std::invalid_argument(what + ": expected a JSON object");
    for (const auto &item : j.items())
        if (std::find(allowed.begin(), allowed.end(), item.key()) == allowed.end())
            throw std::invalid_argument(what + ": unknown key '" + item.key() + "'");
}

json to_json(const PointSet &set)
{
    json pts = json::array();
    for (const auto &p : set.points()) pts.push_back({{"z", complex_json(p.z)}, {"m", p.multiplicity}});
    return {{"schema_version", schema_version},
            {"family", to_string(set.family())},
            {"nu", set.nu()},
            {"R", radius_json(set.radius())},
            {"count", set.total_multiplicity()},
            {"points", std::move(pts)}};
}

json to_json(const PerturbedSet &set)
{
    json entries = json::array();
    for (const auto &e : set.entries())
        entries.push_back({{"base", complex_json(e.base)}, {"delta", e.delta}, {"theta", e.theta}, {"lambda", complex_json(e.lambda)}});
    return {{"schema_version", schema_version},
            {"family", to_string(set.family())},
            {"nu", set.nu()},
            {"R", radius_json(set.radius())},
            {"count", set.size()},
            {"entries", std::move(entries)}};
}

PointSet point_set_from_json(const json &j)
{
    require_keys(j, {"schema_version", "family", "nu", "R", "count", "points"}, "point set");
    std::vector<Point> pts;
    for (const auto &p : j.at("points")) {
        require_keys(p, {"z", "m"}, "point");
        pts.push_back({complex_from(p.at("z")), p.value("m", 1)});
    }
    return PointSet(std::move(pts), family_from_string(j.value("family", "custom")), j.value("nu", 0.0), radius_from(j, "R"));
}

PerturbedSet perturbed_set_from_json(const json &j)
{
    require_keys(j, {"schema_version", "family", "nu", "R", "count", "entries"}, "perturbed set");
    std::vector<PerturbedEntry> entries;
    for (const auto &e : j.at("entries")) {
        require_keys(e, {"base", "delta", "theta", "lambda"}, "entry");
        entries.push_back({complex_from(e.at("base")), e.at("delta").get<double>(), e.at("theta").get<double>(),
                           complex_from(e.at("lambda"))});
    }
    return PerturbedSet(std::move(entries), family_from_string(j.value("family", "custom")), j.value("nu", 0.0),
                        radius_from(j, "R"));
}

PointSet zeros_from_json(const json &j)
{
    if (j.contains("entries")) return perturbed_set_from_json(j).zeros();
    return point_set_from_json(j);
}

json to_json(const LadderSpec &ladder)
{
    return {{"r0", ladder.r0}, {"r_max", ladder.r_max}, {"tau", ladder.tau}, {"stop_when_negligible", ladder.stop_when_negligible}};
}

json to_json(const QuadratureSpec &spec)
{
    return {{"order", spec.order},
            {"radial_tol", spec.radial_tol},
            {"angular_tol", spec.angular_tol},
            {"panel_width", spec.panel_width},
            {"min_angles", spec.min_angles},
            {"max_angles", spec.max_angles},
            {"max_depth", spec.max_depth},
            {"angular", spec.angular == AngularRule::trapezoid ? "trapezoid" : "diagonal-arcs"}};
}

LadderSpec ladder_from_json(const json &j)
{
    require_keys(j, {"r0", "r_max", "tau", "stop_when_negligible"}, "ladder");
    LadderSpec out;
    out.r0 = j.value("r0", out.r0);
    out.r_max = j.value("r_max", out.r_max);
    out.tau = j.value("tau", out.tau);
    out.stop_when_negligible = j.value("stop_when_negligible", out.stop_when_negligible);
    return out;
}

QuadratureSpec quadrature_from_json(const json &j)
{
    require_keys(j, {"order", "radial_tol", "angular_tol", "panel_width", "min_angles", "max_angles", "max_depth", "angular"},
                 "quadrature");
    QuadratureSpec out;
    out.order = j.value("order", out.order);
    out.radial_tol = j.value("radial_tol", out.radial_tol);
    out.angular_tol = j.value("angular_tol", out.angular_tol);
    out.panel_width = j.value("panel_width", out.panel_width);
    out.min_angles = j.value("min_angles", out.min_angles);
    out.max_angles = j.value("max_angles", out.max_angles);
    out.max_depth = j.value("max_depth", out.max_depth);
    const auto rule = j.value("angular", std::string("trapezoid"));
    if (rule == "trapezoid")
        out.angular = AngularRule::trapezoid;
    else if (rule == "diagonal-arcs")
        out.angular = AngularRule::diagonal_arcs;
    else
        throw std::invalid_argument("quadrature: unknown angular rule '" + rule + "'");
    return out;
}

json to_json(const NormEstimate &est)
{
    json partials = json::array();
    for (const auto &pt : est.ladder)
        partials.push_back({{"R", pt.radius}, {"log_I", number_or_null(pt.log_partial)}, {"log_increment", number_or_null(pt.log_increment)}});
    json out = {{"partials", std::move(partials)},
                {"verdict", to_string(est.verdict)},
                {"exponent", number_or_null(est.exponent)},
                {"exponent_residual", number_or_null(est.exponent_residual)},
                {"power", est.power},
                {"stopped_early", est.stopped_early}};
    if (est.value) out["value"] = *est.value;
    if (est.tail_bound) out["tail_bound"] = *est.tail_bound;
    return out;
}

json to_json(const EnvelopeFit &fit)
{
    return {{"diagonal_slope", number_or_null(fit.diagonal_slope)},
            {"expected_slope", number_or_null(fit.expected_slope)},
            {"diagonal_residual", number_or_null(fit.diagonal_residual)},
            {"M", fit.m},
            {"lower_constant", number_or_null(fit.lower_constant)},
            {"upper_constant", number_or_null(fit.upper_constant)},
            {"lower_residual", fit.lower_residual},
            {"upper_residual", fit.upper_residual},
            {"ratio_min", fit.ratio_min},
            {"ratio_max", number_or_null(fit.ratio_max)},
            {"measured_min", fit.measured_min},
            {"measured_max", number_or_null(fit.measured_max)},
            {"ls_coefficients", fit.ls_coefficients},
            {"excluded_radius", fit.excluded_radius},
            {"admissible_points", fit.admissible_points},
            {"pass", fit.pass}};
}

json to_json(const Condition &c)
{
    json value = std::isfinite(c.value) ? json(c.value) : sanitize(json(c.value));
    return {{"name", c.name},
            {"value", value},
            {"threshold", sanitize(c.threshold)},
            {"pass", c.pass},
            {"required", c.required},
            {"op", c.op},
            {"config", sanitize(c.config)},
            {"note", c.note}};
}

json to_json(const TheoremReport &report)
{
    json conditions = json::array();
    for (const auto &c : report.conditions) conditions.push_back(to_json(c));
    return {{"schema_version", schema_version},
            {"theorem", report.theorem},
            {"conditions", std::move(conditions)},
            {"verdict", report.verdict ? "pass" : "fail"},
            {"configs", sanitize(report.configs)},
            {"notes", report.notes}};
}

TheoremReport report_from_json(const json &j)
{
    require_keys(j, {"schema_version", "theorem", "conditions", "verdict", "configs", "notes"}, "report");
    TheoremReport out;
    out.theorem = j.at("theorem").get<std::string>();
    for (const auto &c : j.at("conditions")) {
        require_keys(c, {"name", "value", "threshold", "pass", "required", "op", "config", "note"}, "condition");
        Condition cond;
        cond.name = c.at("name").get<std::string>();
        cond.value = number_from(c.at("value"));
        cond.threshold = c.value("threshold", json());
        cond.pass = c.at("pass").get<bool>();
        cond.required = c.value("required", true);
        cond.op = c.value("op", std::string());
        cond.config = c.value("config", json());
        cond.note = c.value("note", std::string());
        out.conditions.push_back(std::move(cond));
    }
    out.configs = j.value("configs", json::object());
    out.notes = j.value("notes", std::vector<std::string>{});
    const auto verdict = j.at("verdict").get<std::string>();
    if (verdict != "pass" && verdict != "fail") throw std::invalid_argument("report: verdict must be pass or fail");
    out.verdict = verdict == "pass";
    return out;
}

std::string render_table(const TheoremReport &report)
{
    auto threshold_text = [](const json &t) -> std::string {
        if (!t.is_object() || !t.contains("op")) return "";
        const auto op = t.at("op").get<std::string>();
        auto num = [](const json &v) {
            if (v.is_number()) return format_double(v.get<double>());
            return v.is_string() ? v.get<std::string>() : v.dump();
        };
        if (op == "in") return "in (" + num(t.at("lower")) + ", " + num(t.at("upper")) + ")";
        if (op == "report") return "-";
        return op + " " + num(t.at("bound"));
    };
    std::size_t name_w = 9, value_w = 5, thr_w = 9;
    for (const auto &c : report.conditions) {
        name_w = std::max(name_w, c.name.size());
        value_w = std::max(value_w, format_double(c.value).size());
        thr_w = std::max(thr_w, threshold_text(sanitize(c.threshold)).size());
    }
    std::ostringstream out;
    out << report.theorem << "\n";
    out << std::left << std::setw(static_cast<int>(name_w)) << "condition" << "  " << std::setw(static_cast<int>(value_w))
        << "value" << "  " << std::setw(static_cast<int>(thr_w)) << "threshold" << "  result\n";
    for (const auto &c : report.conditions) {
        const char *result = !c.required ? "info" : (c.pass ? "pass" : "FAIL");
        out << std::setw(static_cast<int>(name_w)) << c.name << "  " << std::setw(static_cast<int>(value_w))
            << format_double(c.value) << "  " << std::setw(static_cast<int>(thr_w)) << threshold_text(sanitize(c.threshold))
            << "  " << result << "\n";
    }
    out << "verdict: " << (report.verdict ? "pass" : "fail") << "\n";
    return out.str();
}

void write_grid_csv(std::ostream &out, const std::vector<GridRow> &rows)
{
    out << "z_re,z_im,log_mag,arg,weighted_log_mag,dist\n";
    for (const auto &r : rows)
        out << format_double(r.z.real()) << ',' << format_double(r.z.imag()) << ',' << format_double(r.value.log_mag) << ','
            << format_double(r.value.arg) << ',' << format_double(r.weighted_log_mag) << ',' << format_double(r.dist) << '\n';
}

void write_ladder_csv(std::ostream &out, const NormEstimate &est)
{
    out << "r,value\n";
    for (const auto &pt : est.ladder) out << format_double(pt.radius) << ',' << format_double(pt.log_partial) << '\n';
}

json read_json_file(const std::string &path)
{
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open " + path);
    try {
        return json::parse(in);
    } catch (const json::parse_error &e) {
        throw std::invalid_argument(path + ": " + e.what());
    }
}

void write_text_file(const std::string &path, const std::string &text)
{
    const auto parent = std::filesystem::path(path).parent_path();
    std::error_code ec;
    if (!parent.empty()) std::filesystem::create_directories(parent, ec);
    std::ofstream out(path);
    if (!out) throw std::invalid_argument("cannot write " + path);
    out << text;
}

} // namespace fockzero
