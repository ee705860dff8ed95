#pragma once

#include "nbtrade/access.hpp"
#include "nbtrade/energy.hpp"
#include "nbtrade/link.hpp"

namespace nbtrade {

// Proof-of-work verification parameters.  A miner's computing speed is
// lambda_c = scale_factor * miner_power_w, treated as a rate in 1/s.
struct DltParams {
    int n_miners = 20;              // M
    double scale_factor = 0.05;     // lambda_0, 1/(W*s)
    double miner_power_w = 6.0;     // P_c of a miner, distinct from circuit power
    double block_hash_bits = 512.0;    // newB announcement payload
    double block_request_bits = 512.0; // getB request payload
    double block_body_bits = 2000.0;   // transB block transfer payload
    bool fleet_energy = false;      // charge all M miners for the race, not just the winner
    bool flood_propagation = false; // charge M parallel announcement paths

    double computing_rate() const { return scale_factor * miner_power_w; }
};

// Cost of one verification round: the mining race plus propagating the
// winning block over the radio legs.
struct DltRoundCost {
    double mining_latency_s = 0.0;     // L_W
    double propagation_latency_s = 0.0; // L_tM
    double total_latency_s = 0.0;      // L_DLT
    double energy_j = 0.0;             // E_DLT per configured energy options
    double fleet_energy_j = 0.0;       // all-miners race energy, always reported
};

// Everything needed to cost one radio leg of a given payload.  The dlt and
// trading layers carry this bundle instead of five loose arguments.
struct LegContext {
    ContentionSolution sol;
    AccessParams access;
    TrafficModel traffic;
    EnergyProfile energy;
    RaEnergyMode energy_mode = RaEnergyMode::verbatim;

    LegCost leg(Direction direction, double payload_bits) const
    {
        TrafficModel tm = direction == Direction::uplink
                              ? traffic.with_ul_payload(payload_bits)
                              : traffic.with_dl_payload(payload_bits);
        return leg_cost(direction, sol, access, tm, energy, energy_mode);
    }
};

// Mean time for the fastest of M exponential miners, 1/(lambda_c*M).
double mining_latency(const DltParams& params);

// newB uplink + getB downlink + transB uplink, each a full radio leg.
double block_propagation_latency(const DltParams& params, const LegContext& ctx);

// One round: mining race, then propagation.  Round energy charges the
// winning miner's computation plus transmit power over the propagation path;
// the fleet and flooding options widen those charges.
DltRoundCost dlt_round_cost(const DltParams& params, const LegContext& ctx);

} // namespace nbtrade
