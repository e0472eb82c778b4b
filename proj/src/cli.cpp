#include "galtor/cli.hpp"

#include "galtor/mumford.hpp"
#include "galtor/report.hpp"

#include <fstream>
#include <ostream>
#include <sstream>

namespace galtor {

using nlohmann::json;

std::optional<Command> parse_command(const std::string& name)
{
    if (name == "m1")
        return Command::m1;
    if (name == "stabilizer")
        return Command::stabilizer;
    if (name == "degrees")
        return Command::degrees;
    if (name == "scenario")
        return Command::scenario;
    if (name == "verify-mumford")
        return Command::verify_mumford;
    if (name == "sweep")
        return Command::sweep;
    return std::nullopt;
}

void validate(const RunConfig& c)
{
    if (c.ell_list.empty())
        throw UsageError("--ell needs at least one prime");
    for (Int ell : c.ell_list)
        if (!is_prime(ell))
            throw UsageError("--ell: " + std::to_string(ell) + " is not prime");
    if (c.cap < 1)
        throw UsageError("--cap must be at least 1");
    if (c.threads < 1)
        throw UsageError("--threads must be at least 1");
    if (c.level < 1)
        throw UsageError("--level must be at least 1");
    if (c.g < 1)
        throw UsageError("--g must be at least 1");
    if (c.mu_w_constant < Rational(1))
        throw UsageError("the mu_w constant must be at least 1");
    if (c.scenario != "cm" && c.scenario != "selfproduct" && c.scenario != "mumford" && c.scenario != "custom")
        throw UsageError("unknown scenario '" + c.scenario + "'");
    if (c.command == Command::m1 && !c.subgroup)
        throw UsageError("m1 needs --H");
    if (c.scenario == "custom" && c.command != Command::m1 && (!c.generators || !c.subgroup))
        throw UsageError("a custom scenario needs generators and H");
}

namespace {

void merge_scenario_file(RunConfig& c)
{
    std::ifstream in(*c.input_path);
    if (!in)
        throw UsageError("cannot open scenario file " + *c.input_path);
    const auto f = parse_scenario_file(in);
    if (f.scenario)
        c.scenario = *f.scenario;
    if (!f.ells.empty())
        c.ell_list = f.ells;
    if (f.level)
        c.level = *f.level;
    if (f.g)
        c.g = *f.g;
    if (f.generators)
        c.generators = *f.generators;
    if (f.subgroup)
        c.subgroup = json(*f.subgroup).dump();
}

TorsionSubgroup parse_subgroup(const std::string& text, const ResidueRing& ring, Index dim)
{
    std::vector<Vec> gens;
    for (const auto& row : parse_int_rows(text)) {
        if (static_cast<Index>(row.size()) != dim)
            throw UsageError("--H row of length " + std::to_string(row.size()) + ", expected " + std::to_string(dim));
        Vec v(dim);
        for (Index i = 0; i < dim; ++i)
            v(i) = row[static_cast<std::size_t>(i)];
        gens.push_back(reduce(ring, v));
    }
    return subgroup_from_generators(gens, ring, dim);
}

Scenario build_scenario(const RunConfig& c, Int ell)
{
    if (c.scenario == "cm" || c.scenario == "selfproduct") {
        auto s = c.scenario == "cm" ? scenario_cm(c.g, ell, c.level, c.cap) : scenario_selfproduct(ell, c.level, c.cap);
        if (c.subgroup)
            s.subgroup = parse_subgroup(*c.subgroup, s.group.ring(), s.group.space().dim());
        return s;
    }
    // custom
    const ResidueRing ring(ell, c.level);
    std::vector<MatrixMod> gens;
    for (const auto& rows : *c.generators)
        gens.push_back(MatrixMod::from_rows(ring, rows));
    if (gens.empty() || !gens.front().is_square() || gens.front().rows() % 2 != 0)
        throw UsageError("custom generators must be square matrices of even size");
    const auto dim = gens.front().rows();
    auto space = standard_form(static_cast<int>(dim / 2), ring);
    auto group = close(space, std::move(gens), c.cap);
    auto h = parse_subgroup(*c.subgroup, ring, dim);
    return {"custom", std::move(group), std::move(h)};
}

// Expectations for the built-in subgroups of the CM and self-product scenarios.
std::vector<std::string> scenario_violations(const Scenario& s, const DegreeReport& r)
{
    std::vector<std::string> v;
    const auto tag = s.name + " ell=" + std::to_string(r.ell) + ": ";
    if (r.m1 != 0)
        v.push_back(tag + "m1 of a cyclic subgroup is " + std::to_string(r.m1));
    if (r.deg_KH != s.group.order())
        v.push_back(tag + "stabilizer of H is not trivial");
    if (r.deg_cyclo_intersection != cyclo_degree(s.group, r.level))
        v.push_back(tag + "K(H) does not contain the full cyclotomic layer");
    return v;
}

struct Outcome {
    std::vector<DegreeReport> reports;
    std::vector<std::string> violations;
};

Outcome collect_reports(const RunConfig& c)
{
    Outcome o;
    if (c.scenario == "mumford") {
        auto v = verify_mu_s_failure(c.ell_list, {c.threads}, c.mu_w_constant);
        o.reports = std::move(v.reports);
        o.violations = std::move(v.violations);
        return o;
    }
    for (Int ell : c.ell_list) {
        const auto s = build_scenario(c, ell);
        auto r = degree_report(s, c.mu_w_constant);
        if (!c.subgroup && c.scenario != "custom")
            for (auto& msg : scenario_violations(s, r))
                o.violations.push_back(std::move(msg));
        o.reports.push_back(std::move(r));
    }
    return o;
}

int run_m1(const RunConfig& c, std::ostream& os)
{
    json results = json::array();
    std::ostringstream table;
    for (Int ell : c.ell_list) {
        const ResidueRing ring(ell, c.level);
        const auto space = standard_form(c.g, ring);
        const auto h = parse_subgroup(*c.subgroup, ring, space.dim());
        const int k = m1(h, space);
        results.push_back({{"ell", ell}, {"level", c.level}, {"m1", k}});
        if (c.ell_list.size() > 1)
            table << "ell = " << ell << ": ";
        table << "m1 = " << k << "\n";
    }
    if (c.format == Format::json)
        os << serialize(json{{"m1", results}});
    else
        os << table.str();
    return exit_ok;
}

int run_stabilizer(const RunConfig& c, std::ostream& os, std::ostream& err)
{
    json results = json::array();
    std::ostringstream table;
    int status = exit_ok;
    for (Int ell : c.ell_list) {
        std::vector<MatrixMod> elems;
        std::string name = c.scenario;
        if (c.scenario == "mumford") {
            elems = pointwise_stabilizer_in_image(ell, {c.threads});
            const std::size_t expected = ell == 2 ? 1 : 2;
            if (elems.size() != expected) {
                err << "mumford ell=" << ell << ": stabilizer has " << elems.size() << " elements\n";
                status = exit_expectation_failed;
            }
        } else {
            const auto s = build_scenario(c, ell);
            elems = stabilizer(s.group, s.subgroup).elements();
        }
        IntRows flat;
        for (const auto& m : elems)
            flat.push_back(m.flat());
        results.push_back({{"scenario", name}, {"ell", ell}, {"size", elems.size()}, {"elements", flat}});
        table << name << " ell=" << ell << ": stabilizer of order " << elems.size() << "\n";
        for (const auto& row : flat) {
            table << "  [";
            for (std::size_t i = 0; i < row.size(); ++i)
                table << (i ? "," : "") << row[i];
            table << "]\n";
        }
    }
    if (c.format == Format::json)
        os << serialize(json{{"stabilizers", results}});
    else
        os << table.str();
    return status;
}

int dispatch(const RunConfig& c, std::ostream& os, std::ostream& err)
{
    switch (c.command) {
    case Command::m1:
        return run_m1(c, os);
    case Command::stabilizer:
        return run_stabilizer(c, os, err);
    case Command::degrees:
    case Command::scenario:
    case Command::verify_mumford:
    case Command::sweep: {
        RunConfig cc = c;
        if (c.command == Command::verify_mumford)
            cc.scenario = "mumford";
        const auto outcome = collect_reports(cc);
        std::optional<SweepSummary> summary;
        if (c.command == Command::sweep)
            summary = summarize(outcome.reports);
        if (c.format == Format::json)
            os << serialize(report_document(outcome.reports, summary));
        else
            os << format_table(outcome.reports, summary);
        for (const auto& v : outcome.violations)
            err << "expectation failed: " << v << "\n";
        return outcome.violations.empty() ? exit_ok : exit_expectation_failed;
    }
    }
    return exit_usage;
}

} // namespace

int run(RunConfig config, std::ostream& out, std::ostream& err)
{
    try {
        if (config.input_path)
            merge_scenario_file(config);
        validate(config);
        std::ostringstream buffer;
        const int status = dispatch(config, buffer, err);
        if (config.output_path) {
            std::ofstream file(*config.output_path);
            if (!file)
                throw UsageError("cannot write " + *config.output_path);
            file << buffer.str();
        } else {
            out << buffer.str();
        }
        return status;
    } catch (const CapExceeded& e) {
        err << "error: " << e.what() << " (scenario " << config.scenario << ", level " << config.level
            << "; raise --cap or lower the parameters)\n";
        return exit_usage;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return exit_usage;
    }
}

} // namespace galtor
