#pragma once

// Report serialization and the plain-text scenario file format.
//
// Reports contain only integers and "p/q" rational strings, so a parsed report
// re-serializes to the same bytes.

#include "galtor/galois_model.hpp"

#include "json.hpp"

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace galtor {

using IntRows = std::vector<std::vector<Int>>;

std::string format_rational(const Rational& r);
Rational parse_rational(const std::string& s);

nlohmann::json to_json(const DegreeReport& r);
DegreeReport report_from_json(const nlohmann::json& j);

struct SweepSummary {
    Rational max_ratio;
    Rational min_ratio;
    /// Ratios strictly increase along the ell list.
    bool monotone = false;
};

SweepSummary summarize(const std::vector<DegreeReport>& reports);

/// {"reports": [...], "summary": {...}?}
nlohmann::json report_document(const std::vector<DegreeReport>& reports,
                               const std::optional<SweepSummary>& summary = std::nullopt);
/// Canonical text form: sorted keys, two-space indent, trailing newline.
std::string serialize(const nlohmann::json& doc);

std::string format_table(const std::vector<DegreeReport>& reports,
                         const std::optional<SweepSummary>& summary = std::nullopt);

/// Parses "[[1,0],[0,1]]": one row per generator.
IntRows parse_int_rows(const std::string& text);

/// Contents of a key = value scenario file.
struct ScenarioFile {
    std::optional<std::string> scenario;
    std::vector<Int> ells;
    std::optional<int> level;
    std::optional<int> g;
    std::optional<std::vector<IntRows>> generators;
    std::optional<IntRows> subgroup;
};

/// Lines `key = value`; `#` starts a comment. Keys: scenario, ell, level, g, generators, H.
ScenarioFile parse_scenario_file(std::istream& in);

} // namespace galtor
