#pragma once

#include "nbtrade/access.hpp"
#include "nbtrade/channel.hpp"
#include "nbtrade/dlt.hpp"
#include "nbtrade/energy.hpp"
#include "nbtrade/link.hpp"
#include "nbtrade/stats.hpp"
#include "nbtrade/trading.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace nbtrade {

// Run-control knobs of the simulation engine.
struct SimSettings {
    std::uint64_t seed = 12022;
    int n_replications = 1000;
    std::int64_t n_prach_periods = 100000;
    double horizon_days = 1.0;
    // Deterministically placed extra trades, for near-zero-rate experiments.
    int injected_trades = 0;
    // Background preamble retries re-enter after 1..window periods.  A few
    // periods of spread keeps successive attempts decorrelated, which is what
    // the drift approximation assumes; 1 would retry in lockstep.
    int backoff_window_periods = 4;
    int threads = 0; // 0 = hardware concurrency
    bool collect_samples = false;
};

// Complete input of one simulation campaign: every model section plus the
// run controls.  Identical SimConfig (seed included) gives identical output
// regardless of thread count.
struct SimConfig {
    RadioEnvironment radio;
    PdMode p_d_mode = PdMode::cell_average;
    double p_d_distance_m = 117.0;
    PopulationModel population;
    AccessParams access;
    TrafficModel traffic; // arrival rates resolved, per second
    EnergyProfile energy;
    DltParams dlt;
    ProtocolSpec protocol;
    RaEnergyMode energy_mode = RaEnergyMode::verbatim;
    SimSettings sim;
};

// Standalone PRACH contention simulation controls.
struct PrachOptions {
    // When >= 0, every period receives exactly this many fresh contenders
    // instead of a Poisson draw (degenerate-case tests).
    int fixed_new_contenders = -1;
    int backoff_window_periods = 4;
    // Periods excluded from statistics while the retry backlog fills;
    // -1 picks min(periods/10, 1000).
    std::int64_t warmup_periods = -1;
};

struct PrachResult {
    SampleStats per_attempt_success; // empirical p_rr over all attempts
    std::vector<double> mean_contenders_by_attempt; // per period, attempt l=1..N
    std::uint64_t attempts = 0;
    std::uint64_t successes = 0;
    std::uint64_t drops = 0; // contenders that exhausted max_attempts
    std::int64_t measured_periods = 0;
};

// Slotted preamble contention with per-contender retries.  Fresh arrivals
// are Poisson(offered_load) per period; a contender succeeds when its
// preamble is unshared and an independent p_d link draw passes.
PrachResult simulate_prach(double p_d, double offered_load,
                           const AccessParams& params, std::int64_t periods,
                           std::uint64_t seed,
                           const PrachOptions& options = PrachOptions{});

// Mean of the fastest of M exponential(lambda_c) completion times.
SampleStats simulate_mining_race(const DltParams& params, std::int64_t samples,
                                 std::uint64_t seed);

// Aggregates of one replication (one simulated horizon of the population).
struct ReplicationResult {
    SampleStats latency;
    SampleStats buyer_energy;
    SampleStats seller_energy;
    SampleStats dlt_energy;
    SampleStats mining; // per verification round
    std::uint64_t ra_attempts = 0;
    std::uint64_t ra_successes = 0;
    std::uint64_t trades_started = 0;
    std::uint64_t trades_completed = 0;
    std::uint64_t trades_aborted = 0;
    std::vector<TradeOutcome> samples; // filled when sim.collect_samples

    void merge(const ReplicationResult& other);
};

// One event-driven pass over sim.horizon_days: trade, background-traffic,
// and PRACH processes interleaved on a shared event queue.  Deterministic
// given (cfg.sim.seed, replication_index).
ReplicationResult run_replication(const SimConfig& cfg, int replication_index);

// Analytic values a campaign is compared against.
struct AnalyticReference {
    double latency_s = 0.0;
    double energy_buyer_j = 0.0;
    double energy_seller_j = 0.0;
    double energy_dlt_j = 0.0;
    double mining_latency_s = 0.0;
    double p_rr = 0.0;
};

struct ComparisonRow {
    std::string metric;
    double analytic = 0.0;
    double sim_mean = 0.0;
    double sim_ci_halfwidth = 0.0;
    double rel_error = 0.0;
    bool within_ci = false;
};

struct CampaignResult {
    ReplicationResult totals;        // merged over replications, in order
    SampleStats empirical_p_rr;      // binomial over all RA attempts
    SampleStats mining_reference;    // dedicated race run, 1e5 samples
    std::vector<ComparisonRow> comparison; // empty without a reference
};

// Runs n_replications replications, in parallel when sim.threads != 1,
// merging results in replication order.  With a reference, emits the
// analytic-vs-simulation table including a dedicated mining-race run.
CampaignResult run_campaign(const SimConfig& cfg,
                            const AnalyticReference* reference = nullptr);

} // namespace nbtrade
