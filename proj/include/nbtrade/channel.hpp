#pragma once

#include <utility>

namespace nbtrade {

// Log-distance propagation environment with log-normal shadowing.
// Shadowing is never sampled here: delivery_probability folds it in
// statistically, and the simulation engine draws it per link attempt.
struct RadioEnvironment {
    double tx_power_w = 0.2;        // P_t
    double carrier_hz = 900.0e6;    // f; not stated in the source material, see README
    double gain_tx = 1.0;           // G_t
    double gain_rx = 1.0;           // G_r
    double path_loss_exp = 2.7;     // beta
    double shadow_sigma_db = 6.0;   // sigma of the shadowing term, dB
    double sensitivity_w = 3.65e-10; // gamma, receiver sensitivity
    double cell_radius_m = 50.0;
};

// Device population served by one cell.  Counts are kept as doubles so
// sweeps can move them continuously; only their products enter the model.
struct PopulationModel {
    double n_sellers = 10000.0;
    double n_buyers = 10000.0;
    double sessions_per_day = 1.0;  // T
    double p_sell = 1.0e-4;         // per-session probability of a sell request
    double p_buy = 1.0e-4;          // per-session probability of a buy request
};

// Mean received power in dBW at the given distance, shadowing excluded.
double received_power_db(const RadioEnvironment& env, double distance_m);

// Probability that the shadowed received power clears the sensitivity
// threshold.  Monotone nonincreasing in distance.  With shadow_sigma_db = 0
// this degenerates to a step function at the coverage edge.
double delivery_probability(const RadioEnvironment& env, double distance_m);

// Distance at which the mean received power equals the sensitivity; the
// 50% delivery point when shadowing is symmetric.
double coverage_edge_distance_m(const RadioEnvironment& env);

// Population-average delivery probability over devices placed area-uniformly
// on the disk of cell_radius_m, by adaptive quadrature of p_d(r)*2r/R^2.
double mean_delivery_probability(const RadioEnvironment& env);

// How the population-level delivery probability is obtained: averaged over
// the cell disk, or evaluated at one representative distance.
enum class PdMode { cell_average, at_distance };

double resolved_delivery_probability(const RadioEnvironment& env, PdMode mode,
                                     double representative_distance_m);

struct ArrivalRates {
    double sellers_per_day = 0.0; // lambda_s
    double buyers_per_day = 0.0;  // lambda_b
};

// Poisson request rates actually reaching the eNB: population size times
// per-session request probability times sessions per day, thinned by p_d.
ArrivalRates arrival_rates(const PopulationModel& pop, double p_d);

} // namespace nbtrade
