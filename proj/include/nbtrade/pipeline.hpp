#pragma once

#include "nbtrade/config.hpp"
#include "nbtrade/montecarlo.hpp"

#include <vector>

namespace nbtrade {

// Per-protocol analytic results for one scenario point.
struct ProtocolAnalysis {
    ProtocolSpec spec;
    TradeOutcome outcome;
    // Device-average per-trade radio energy, split by direction; the mean of
    // the buyer and seller roles, used for the battery projection.
    double e_up_per_trade_j = 0.0;
    double e_down_per_trade_j = 0.0;
    double battery_days = 0.0;
};

// Full analytic evaluation of one configuration.
struct ScenarioAnalysis {
    double p_d = 1.0;
    ArrivalRates rates;            // per day
    double trades_per_day = 0.0;   // matched buyer/seller pairs
    double offered_load_per_period = 0.0;
    ContentionSolution contention;
    TrafficModel traffic;          // arrival rates resolved, per second
    DltRoundCost dlt_round;
    std::vector<ProtocolAnalysis> protocols;
};

// Runs the analytic chain: delivery probability, arrival rates, contention
// fixed point, leg costs, protocol trade costs, and battery lifetimes.
ScenarioAnalysis analyze(const ScenarioConfig& cfg);

// Simulation input equivalent to cfg, evaluating the given protocol.
SimConfig to_sim_config(const ScenarioConfig& cfg, const ProtocolSpec& spec);

// Analytic values the simulation campaign is compared against.
AnalyticReference reference_for(const ScenarioAnalysis& analysis,
                                const ProtocolAnalysis& protocol);

} // namespace nbtrade
