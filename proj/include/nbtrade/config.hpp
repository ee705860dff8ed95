#pragma once

#include "nbtrade/access.hpp"
#include "nbtrade/channel.hpp"
#include "nbtrade/dlt.hpp"
#include "nbtrade/energy.hpp"
#include "nbtrade/link.hpp"
#include "nbtrade/montecarlo.hpp"
#include "nbtrade/trading.hpp"

#include <json.hpp>

#include <map>
#include <string>
#include <vector>

namespace nbtrade {

// Which protocols a run evaluates, plus the leg-shaping knobs shared by the
// built-in sequences.  A custom sequence can be given inline.
struct ProtocolConfig {
    std::string selection = "all"; // all | GT | BoD | SoD | custom
    double default_payload_bits = 2000.0;
    std::map<std::string, double> payload_overrides; // leg name -> bits
    std::map<std::string, int> rounds_overrides;     // protocol label -> rounds
    double data_gathering_delay_s = 0.0;             // SoD seller-side delay
    bool session_mode = false;
    std::vector<MessageLeg> custom_legs;
    int custom_rounds = 1;
};

// One scenario point: every model section plus run controls.  Mirrors the
// config file section for section.
struct ScenarioConfig {
    int version = 1;
    RadioEnvironment radio;
    PdMode p_d_mode = PdMode::cell_average;
    double p_d_distance_m = 117.0;
    PopulationModel population;
    AccessParams access;
    RaEnergyMode energy_mode = RaEnergyMode::verbatim;
    TrafficModel traffic; // arrival rates derived at run time, not configured
    EnergyProfile energy;
    DltParams dlt;
    ProtocolConfig protocol;
    SimSettings sim;
};

// The shipped baseline: defaults of every section.
ScenarioConfig default_config();

// Strict parse: unknown keys, wrong types, and out-of-range values raise
// ConfigError listing each offending field path.
ScenarioConfig parse_config(const nlohmann::json& j);
ScenarioConfig load_config(const std::string& path);

nlohmann::json to_json(const ScenarioConfig& cfg);

// The protocols selected by cfg.protocol, with payload and round overrides
// applied.
std::vector<ProtocolSpec> selected_protocols(const ScenarioConfig& cfg);

} // namespace nbtrade
