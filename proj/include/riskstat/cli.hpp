#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>

namespace riskstat {

inline constexpr std::string_view kToolName = "riskstat";
inline constexpr std::string_view kToolVersion = "0.1.0";

enum class Command { eval, check, penalty, reconstruct, lift_check };
std::string_view command_name(Command command);

struct RunConfig {
    Command command = Command::eval;
    std::filesystem::path spec_path;
    std::filesystem::path data_path;
    std::uint64_t trials = 10000;
    double tol = 1e-9;
    double box = 10.0;
    double grid_step = 0.05;
    /// "acceptance" or "conjugate" ("paper" is accepted as an alias for
    /// the acceptance-set formula).
    std::string mode = "acceptance";
    std::uint64_t seed = 0;
    /// Report destination; empty writes the report to the output stream.
    std::filesystem::path out_path;
};

/// Executes one command. Exit codes: 0 all checks passed, 1 completed with
/// an axiom violation or a gap beyond tolerance, 2 usage or format error.
/// Reports are byte-stable for a fixed config apart from the timestamp.
int run(const RunConfig& cfg, std::ostream& out, std::ostream& err);

}  // namespace riskstat
