#include "galtor/cli.hpp"
#include "galtor/report.hpp"

#include "CLI11.hpp"

#include <iostream>
#include <sstream>

namespace {

std::vector<galtor::Int> parse_ell_list(const std::string& text)
{
    std::vector<galtor::Int> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t used = 0;
            out.push_back(std::stoll(item, &used));
            if (used != item.size())
                throw std::invalid_argument(item);
        } catch (const std::exception&) {
            throw galtor::UsageError("--ell: '" + item + "' is not an integer");
        }
    }
    return out;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Galois-image models of abelian-variety torsion over Z/ell^n"};
    app.require_subcommand(1);

    std::string ell_text;
    galtor::RunConfig config;
    std::string scenario_name;
    std::string H, scenario_file, out_path, format = "table", constant = "1";

    auto add_common = [&](CLI::App* sub, bool takes_scenario) {
        sub->add_option("--ell", ell_text, "Comma-separated primes");
        sub->add_option("--level", config.level, "Exponent n of the ring Z/ell^n");
        sub->add_option("--g", config.g, "Half-dimension of the symplectic space");
        sub->add_option("--H", H, "Generator rows of the subgroup, e.g. [[1,0],[0,1]]");
        sub->add_option("--scenario-file", scenario_file, "Key = value scenario description");
        sub->add_option("--format", format, "table or json")->check(CLI::IsMember({"table", "json"}));
        sub->add_option("--out", out_path, "Write the report to this file");
        sub->add_option("--cap", config.cap, "Largest group to materialize");
        sub->add_option("--threads", config.threads, "Worker threads for enumeration");
        sub->add_option("--C", constant, "Constant for the weak-property witness, as p/q");
        if (takes_scenario)
            sub->add_option("name", scenario_name, "cm, selfproduct, mumford or custom");
    };

    const std::vector<std::pair<std::string, std::string>> commands{
        {"m1", "Compute m_1(H) for the standard form"},
        {"stabilizer", "Pointwise stabilizer of H in a scenario group"},
        {"degrees", "Degree report for a scenario with an optional custom H"},
        {"scenario", "Degree reports for a built-in scenario"},
        {"verify-mumford", "Check the tensor-cube counterexample for each ell"},
        {"sweep", "Run a scenario over the ell list and summarize the ratios"}};
    for (const auto& [name, help] : commands)
        add_common(app.add_subcommand(name, help), name != "m1" && name != "verify-mumford");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : galtor::exit_usage;
    }

    try {
        config.command = *galtor::parse_command(app.get_subcommands().front()->get_name());
        if (!ell_text.empty())
            config.ell_list = parse_ell_list(ell_text);
        if (!scenario_name.empty())
            config.scenario = scenario_name;
        if (!H.empty())
            config.subgroup = H;
        if (!scenario_file.empty())
            config.input_path = scenario_file;
        if (!out_path.empty())
            config.output_path = out_path;
        config.format = format == "json" ? galtor::Format::json : galtor::Format::table;
        config.mu_w_constant = galtor::parse_rational(constant);
    } catch (const galtor::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return galtor::exit_usage;
    }
    return galtor::run(config, std::cout, std::cerr);
}
