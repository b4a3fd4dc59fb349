#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "riskstat/axioms.hpp"
#include "riskstat/catalog.hpp"
#include "riskstat/duality.hpp"
#include "riskstat/types.hpp"

namespace riskstat {

/// Shortest decimal form that parses back to the same double.
std::string format_double(double v);

/// Scenario data: header `s1,...,sN`, then one row of N values per
/// position. Errors carry 1-based file line numbers.
std::vector<ScenarioVector> parse_scenarios(std::string_view text);
std::vector<ScenarioVector> load_scenarios(const std::filesystem::path& path);

/// Statistic specs as JSON: {"kind": ..., "params": {...},
/// "claimed_axioms": [...]} with "base" nesting for discounted statistics
/// (depth capped). Missing claimed_axioms falls back to the kind's
/// honest defaults.
RiskStatisticSpec spec_from_json(const nlohmann::json& j);
nlohmann::ordered_json spec_to_json(const RiskStatisticSpec& spec);
RiskStatisticSpec load_spec(const std::filesystem::path& path);
void save_spec(const RiskStatisticSpec& spec,
               const std::filesystem::path& path);

/// Penalty surface table: header p1,...,pN,value,boundary,mode; values in
/// round-trip decimal form. Import recovers what reconstruct needs (the
/// grid entries and mode); step and box metadata are not part of the table.
std::string penalty_table_csv(const PenaltySurface& surface);
PenaltySurface parse_penalty_table(std::string_view text);
void save_penalty_table(const PenaltySurface& surface,
                        const std::filesystem::path& path);
PenaltySurface load_penalty_table(const std::filesystem::path& path);

nlohmann::ordered_json counterexample_json(const Counterexample& ce);
nlohmann::ordered_json axiom_report_json(const AxiomReport& report);

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path,
                     std::string_view content);

}  // namespace riskstat
