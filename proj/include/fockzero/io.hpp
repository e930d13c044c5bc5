#pragma once

// Serialization: point sets and perturbed sets as JSON, grids and ladders as
// CSV, norm estimates and theorem reports as JSON. Doubles are written in
// shortest round-trip form, so reading an output back reproduces the
// in-memory values exactly.

#include "fockzero/verify.hpp"

#include <json.hpp>

#include <iosfwd>
#include <string>
#include <vector>

namespace fockzero
{

inline constexpr int schema_version = 1;

/// Shortest decimal string that parses back to the same double.
std::string format_double(double x);

nlohmann::json to_json(const PointSet &set);
nlohmann::json to_json(const PerturbedSet &set);
PointSet point_set_from_json(const nlohmann::json &j);
PerturbedSet perturbed_set_from_json(const nlohmann::json &j);
/// Reads either form; a perturbed set contributes its zeros.
PointSet zeros_from_json(const nlohmann::json &j);

nlohmann::json to_json(const LadderSpec &ladder);
nlohmann::json to_json(const QuadratureSpec &spec);
/// Unknown keys are rejected.
LadderSpec ladder_from_json(const nlohmann::json &j);
QuadratureSpec quadrature_from_json(const nlohmann::json &j);

nlohmann::json to_json(const NormEstimate &est);
nlohmann::json to_json(const EnvelopeFit &fit);
nlohmann::json to_json(const Condition &c);
nlohmann::json to_json(const TheoremReport &report);
TheoremReport report_from_json(const nlohmann::json &j);

/// Plain-text table of a report.
std::string render_table(const TheoremReport &report);

struct GridRow
{
    cplx z;
    LogComplex value;
    double weighted_log_mag = 0.0;
    double dist = 0.0;
};

void write_grid_csv(std::ostream &out, const std::vector<GridRow> &rows);
void write_ladder_csv(std::ostream &out, const NormEstimate &est);

nlohmann::json read_json_file(const std::string &path);
void write_text_file(const std::string &path, const std::string &text);

/// Rejects keys of `j` outside `allowed`.
void require_keys(const nlohmann::json &j, const std::vector<std::string> &allowed, const std::string &what);

} // namespace fockzero
