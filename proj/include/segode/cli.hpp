#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "segode/bbsolver.hpp"
#include "segode/json_io.hpp"

namespace segode::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitSchema = 2;
inline constexpr int kExitPrecondition = 3;

struct RunConfig {
    std::string subcommand;
    std::string input; // file path, "-" for stdin, or inline JSON text
    std::vector<std::string> examples;
    int order = kDefaultOrder;
    double tol_ord = kOrdTolerance;
    double tol_res = kKernelTolerance;
    double loop_radius = 0.5;
    double turns = 1.0;
    std::string format = "json";
    int jobs = 1;
};

const std::vector<std::string>& subcommands();

/// Report for one input document or one named example. Throws segode::Error.
Json execute(const RunConfig& config, const Json& input);
Json execute_example(const RunConfig& config, const std::string& example);

/// Runs the configured subcommand, writes the report to `out` on success and a
/// one-line JSON error to `err` otherwise. Nothing reaches `out` on failure.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Two-column rendering of a report.
std::string render_table(const Json& report);

} // namespace segode::cli
