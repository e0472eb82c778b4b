#include "galtor/report.hpp"

#include <iomanip>
#include <istream>
#include <sstream>

namespace galtor {

using nlohmann::json;

std::string format_rational(const Rational& r)
{
    return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

Rational parse_rational(const std::string& s)
{
    try {
        const auto slash = s.find('/');
        if (slash == std::string::npos)
            return Rational(std::stoll(s));
        return Rational(std::stoll(s.substr(0, slash)), std::stoll(s.substr(slash + 1)));
    } catch (const std::exception&) {
        throw ParseError("not a rational: '" + s + "'");
    }
}

json to_json(const DegreeReport& r)
{
    json j;
    j["scenario"] = r.scenario;
    j["ell"] = r.ell;
    j["level"] = r.level;
    j["m1"] = r.m1;
    j["deg_KH"] = r.deg_KH;
    j["deg_cyclo_intersection"] = r.deg_cyclo_intersection;
    j["deg_cyclo_at_m1"] = r.deg_cyclo_at_m1;
    j["ratio"] = format_rational(r.ratio);
    j["mu_w_witness_n"] = r.mu_w_witness_n ? json(*r.mu_w_witness_n) : json(nullptr);
    if (r.stabilizer_size)
        j["stabilizer_size"] = *r.stabilizer_size;
    if (r.stabilizer_elements)
        j["stabilizer_elements"] = *r.stabilizer_elements;
    if (r.image_order)
        j["image_order"] = *r.image_order;
    return j;
}

DegreeReport report_from_json(const json& j)
{
    try {
        DegreeReport r;
        r.scenario = j.at("scenario").get<std::string>();
        r.ell = j.at("ell").get<Int>();
        r.level = j.at("level").get<int>();
        r.m1 = j.at("m1").get<int>();
        r.deg_KH = j.at("deg_KH").get<Int>();
        r.deg_cyclo_intersection = j.at("deg_cyclo_intersection").get<Int>();
        r.deg_cyclo_at_m1 = j.at("deg_cyclo_at_m1").get<Int>();
        r.ratio = parse_rational(j.at("ratio").get<std::string>());
        if (!j.at("mu_w_witness_n").is_null())
            r.mu_w_witness_n = j.at("mu_w_witness_n").get<int>();
        if (j.contains("stabilizer_size"))
            r.stabilizer_size = j.at("stabilizer_size").get<Int>();
        if (j.contains("stabilizer_elements"))
            r.stabilizer_elements = j.at("stabilizer_elements").get<IntRows>();
        if (j.contains("image_order"))
            r.image_order = j.at("image_order").get<Int>();
        return r;
    } catch (const json::exception& e) {
        throw ParseError(std::string("malformed report: ") + e.what());
    }
}

SweepSummary summarize(const std::vector<DegreeReport>& reports)
{
    if (reports.empty())
        throw Error("cannot summarize an empty sweep");
    SweepSummary s{reports.front().ratio, reports.front().ratio, true};
    for (std::size_t i = 1; i < reports.size(); ++i) {
        s.max_ratio = std::max(s.max_ratio, reports[i].ratio);
        s.min_ratio = std::min(s.min_ratio, reports[i].ratio);
        if (!(reports[i - 1].ratio < reports[i].ratio))
            s.monotone = false;
    }
    return s;
}

json report_document(const std::vector<DegreeReport>& reports, const std::optional<SweepSummary>& summary)
{
    json doc;
    doc["reports"] = json::array();
    for (const auto& r : reports)
        doc["reports"].push_back(to_json(r));
    if (summary) {
        doc["summary"] = {{"max_ratio", format_rational(summary->max_ratio)},
                          {"min_ratio", format_rational(summary->min_ratio)},
                          {"monotone", summary->monotone}};
    }
    return doc;
}

std::string serialize(const json& doc) { return doc.dump(2) + "\n"; }

std::string format_table(const std::vector<DegreeReport>& reports, const std::optional<SweepSummary>& summary)
{
    std::ostringstream os;
    os << std::left << std::setw(12) << "scenario" << std::setw(6) << "ell" << std::setw(7) << "level"
       << std::setw(5) << "m1" << std::setw(14) << "deg_KH" << std::setw(14) << "deg_cap_cyclo" << std::setw(14)
       << "deg_cyclo_m1" << std::setw(10) << "ratio"
       << "mu_w_n\n";
    for (const auto& r : reports) {
        os << std::setw(12) << r.scenario << std::setw(6) << r.ell << std::setw(7) << r.level << std::setw(5) << r.m1
           << std::setw(14) << r.deg_KH << std::setw(14) << r.deg_cyclo_intersection << std::setw(14)
           << r.deg_cyclo_at_m1 << std::setw(10) << format_rational(r.ratio)
           << (r.mu_w_witness_n ? std::to_string(*r.mu_w_witness_n) : "-") << "\n";
        if (r.stabilizer_size)
            os << "  stabilizer_size = " << *r.stabilizer_size << ", image_order = " << r.image_order.value_or(0)
               << " (stabilizer within the enumerated image)\n";
    }
    if (summary)
        os << "summary: min_ratio = " << format_rational(summary->min_ratio)
           << ", max_ratio = " << format_rational(summary->max_ratio)
           << ", monotone = " << (summary->monotone ? "true" : "false") << "\n";
    return os.str();
}

IntRows parse_int_rows(const std::string& text)
{
    try {
        const auto j = json::parse(text);
        return j.get<IntRows>();
    } catch (const json::exception& e) {
        throw ParseError("expected integer rows like [[1,0],[0,1]]: " + std::string(e.what()));
    }
}

namespace {

std::string trim(const std::string& s)
{
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos)
        return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::vector<Int> parse_int_list(const std::string& v)
{
    std::vector<Int> out;
    std::stringstream ss(v);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (item.empty())
            continue;
        try {
            out.push_back(std::stoll(item));
        } catch (const std::exception&) {
            throw ParseError("not an integer: '" + item + "'");
        }
    }
    return out;
}

int parse_int(const std::string& key, const std::string& v)
{
    const auto xs = parse_int_list(v);
    if (xs.size() != 1)
        throw ParseError("key '" + key + "' expects one integer");
    return static_cast<int>(xs.front());
}

} // namespace

ScenarioFile parse_scenario_file(std::istream& in)
{
    ScenarioFile f;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (const auto hash = line.find('#'); hash != std::string::npos)
            line.resize(hash);
        line = trim(line);
        if (line.empty())
            continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ParseError("line " + std::to_string(lineno) + ": expected key = value");
        const auto key = trim(line.substr(0, eq));
        const auto value = trim(line.substr(eq + 1));
        if (key == "scenario")
            f.scenario = value;
        else if (key == "ell")
            f.ells = parse_int_list(value);
        else if (key == "level")
            f.level = parse_int(key, value);
        else if (key == "g")
            f.g = parse_int(key, value);
        else if (key == "H")
            f.subgroup = parse_int_rows(value);
        else if (key == "generators") {
            try {
                f.generators = json::parse(value).get<std::vector<IntRows>>();
            } catch (const json::exception& e) {
                throw ParseError("line " + std::to_string(lineno) + ": bad generators: " + e.what());
            }
        } else
            throw ParseError("line " + std::to_string(lineno) + ": unknown key '" + key + "'");
    }
    return f;
}

} // namespace galtor
