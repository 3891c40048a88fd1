#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace descent::cli {

enum ExitCode { kOk = 0, kViolation = 1, kUsage = 2 };

struct RunConfig {
    std::string command;
    std::string spec;
    std::string op;        // operator name in the spec, or an inline JSON expression
    std::string function;  // function name in the spec
    std::string start;     // vertex label
    std::string generator = "L";
    std::optional<unsigned> grid;  // values 0..G-1
    std::uint64_t cap = 10'000'000;
    std::uint64_t seed = 1;
    std::string out_dir;
    std::string format = "json";  // json | csv
    std::vector<std::string> axioms;
    double horizon = 30;
    std::uint64_t runs = 1;
    std::uint64_t samples = 1'000'000;
    std::vector<double> point;
    std::vector<double> vector;
    std::string orientation = "both";  // both | plain | oriented
    std::size_t radii = 6;
};

// Executes one subcommand. Reports go to `out` (and to out_dir when set),
// diagnostics to `err`.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

// Parses argv (subcommand first) and runs it.
int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace descent::cli
