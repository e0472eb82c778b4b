#pragma once

#include "galtor/galois_model.hpp"

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace galtor {

enum class Command { m1, stabilizer, degrees, scenario, verify_mumford, sweep };
enum class Format { table, json };

/// Exit statuses of run().
inline constexpr int exit_ok = 0;
inline constexpr int exit_usage = 1;
inline constexpr int exit_expectation_failed = 2;

class UsageError : public Error {
public:
    using Error::Error;
};

struct RunConfig {
    Command command = Command::scenario;
    /// cm, selfproduct, mumford or custom.
    std::string scenario = "cm";
    std::vector<Int> ell_list;
    int level = 1;
    int g = 2;
    /// Generator rows of H, "[[...],...]".
    std::optional<std::string> subgroup;
    /// Matrices generating the group of a custom scenario.
    std::optional<std::vector<std::vector<std::vector<Int>>>> generators;
    std::optional<std::string> input_path;
    std::optional<std::string> output_path;
    Format format = Format::table;
    Int cap = default_cap;
    int threads = 1;
    /// Constant of the weak inequality used for mu_w_witness_n.
    Rational mu_w_constant{1};
};

std::optional<Command> parse_command(const std::string& name);

/// Throws UsageError for an empty or non-prime ell list, cap < 1, threads < 1,
/// or an unknown scenario.
void validate(const RunConfig& config);

/// Executes one command. Reports go to the output file or `out`; diagnostics to `err`.
int run(RunConfig config, std::ostream& out, std::ostream& err);

} // namespace galtor
