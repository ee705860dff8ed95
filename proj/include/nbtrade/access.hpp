#pragma once

#include "nbtrade/energy.hpp"

#include <vector>

namespace nbtrade {

// NPRACH contention parameters.  Durations are the control-plane timing
// constants entering the reservation latency; none of them are standardized
// in the source model, so all are configurable (see README for defaults).
struct AccessParams {
    int n_preambles = 48;           // K, orthogonal preamble pool
    int max_attempts = 10;          // N_r_max
    double nprach_period_s = 0.01;  // tau, preamble transmission slot
    double npdcch_interval_s = 0.05; // d, RAR window granularity
    double ra_msg_offset_s = 0.04;  // t, wait before the preamble slot
    double rar_unit_s = 0.01;       // u, RAR message unit time
    double backlog_q = 0.0;         // Q, pending-schedule backlog
    double sched_fraction = 1.0;    // f, share of NPDCCH capacity granted
    double solver_tol = 1e-9;       // fixed-point residual target
};

// Fixed point of the drift approximation for one PRACH load level.
struct ContentionSolution {
    double p_rr = 0.0;                    // per-attempt reservation success
    double lambda_tot = 0.0;              // total contenders per period
    std::vector<double> lambda_by_attempt; // offered rate at attempt l = 1..N
    double p_access_failure = 1.0;        // (1 - p_rr)^N, all attempts exhausted
};

// Preamble collision probability under the exponential drift form
// 1 - exp(-lambda_tot / K).
double collision_probability(double lambda_tot, int n_preambles);

// Solves lambda_tot = lambda_a * (1 - (1-P)^N) / P with
// P = p_d * exp(-lambda_tot/K) by bisection on [lambda_a, N*lambda_a].
// offered_load is the fresh arrival rate per PRACH period (lambda_a).
ContentionSolution solve_contention(double p_d, double offered_load,
                                    const AccessParams& params);

// L_ra: mean wait for the next preamble slot plus the slot itself.
double ra_control_latency(const AccessParams& params);

// L_rar: mean RAR wait, including the backlog share of the NPDCCH budget.
double rar_latency(const AccessParams& params);

// Success-weighted reservation latency over up to N attempts,
// sum_l (1-P)^(l-1) * P * l * (L_ra + L_rar).  The failure tail carries no
// latency here; it is reported through p_access_failure instead.
double resource_reservation_latency(const ContentionSolution& sol,
                                    const AccessParams& params);

// E_ra: idle wait before the slot plus transmit power over the slot.
double ra_energy(const AccessParams& params, const EnergyProfile& prof);

// E_rar: listening power over the RAR wait.
double rar_energy(const AccessParams& params, const EnergyProfile& prof);

// The source model's reservation-energy sum omits the attempt-count factor
// that its latency counterpart carries.  Verbatim reproduces that; weighted
// restores the factor so energy and latency use the same expectation.
enum class RaEnergyMode { verbatim, weighted };

double resource_reservation_energy(const ContentionSolution& sol,
                                   const AccessParams& params,
                                   const EnergyProfile& prof,
                                   RaEnergyMode mode = RaEnergyMode::verbatim);

} // namespace nbtrade
