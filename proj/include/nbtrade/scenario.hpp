#pragma once

#include "nbtrade/config.hpp"
#include "nbtrade/pipeline.hpp"

#include <string>
#include <vector>

namespace nbtrade {

enum class EngineMode { analytic, sim, both };

// One evaluated configuration of a sweep, tagged with the swept value.
struct SweepPoint {
    double value = 0.0;
    ScenarioConfig config;
};

// A named run: the point list plus output routing.  channel_table switches
// the output to the coverage table (delivery probability over distance),
// which has no per-protocol dimension.
struct Scenario {
    std::string name = "default";
    EngineMode engine = EngineMode::analytic;
    std::string output_dir = "out";
    std::vector<SweepPoint> points;
    bool channel_table = false;
};

struct ScenarioReport {
    std::vector<std::string> files;
    int trade_rows = 0;
};

// Bundled presets.  Unknown names raise ConfigError listing the known set.
std::vector<std::string> scenario_names();
std::string scenario_description(const std::string& name);
Scenario make_scenario(const std::string& name, const ScenarioConfig& base);

// Expands "section.field=v1,v2,..." over the base config.  The dotted path
// must land on a numeric field of the config schema.
std::vector<SweepPoint> sweep_points(const ScenarioConfig& base,
                                     const std::string& sweep_spec);

// Evaluates every point and writes the metric-family tables under
// scenario.output_dir: trades.csv, access.csv, dlt.csv (or channel.csv).
ScenarioReport run_scenario(const Scenario& scenario);

// Analytic-versus-simulation table for every selected protocol.
struct EngineComparison {
    std::string protocol;
    std::vector<ComparisonRow> rows;
};

std::vector<EngineComparison> compare_engines(const ScenarioConfig& cfg);
std::string write_comparison(const std::string& output_dir,
                             const std::vector<EngineComparison>& comparisons);

// Published smart-contract deployment costs of the three protocols; shipped
// as documentation data, no chain execution involved.
struct ReferenceCost {
    std::string protocol;
    double deploy_ether = 0.0;
    long gas_units = 0;
    double usd = 0.0;
};

const std::vector<ReferenceCost>& reference_costs();
std::string write_reference_costs(const std::string& output_dir);

// Non-fatal configuration observations worth echoing before a run.
std::vector<std::string> config_warnings(const ScenarioConfig& cfg);

} // namespace nbtrade
