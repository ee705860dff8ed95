#include "nbtrade/dlt.hpp"

#include <stdexcept>

namespace nbtrade {

namespace {

void check_params(const DltParams& params)
{
    if (params.n_miners < 1)
        throw std::domain_error("n_miners must be >= 1");
    if (!(params.computing_rate() > 0.0))
        throw std::domain_error("computing rate lambda_0 * P_c must be positive");
}

} // namespace

double mining_latency(const DltParams& params)
{
    check_params(params);
    return 1.0 / (params.computing_rate() * static_cast<double>(params.n_miners));
}

double block_propagation_latency(const DltParams& params, const LegContext& ctx)
{
    check_params(params);
    double new_block = ctx.leg(Direction::uplink, params.block_hash_bits).latency_s;
    double get_block = ctx.leg(Direction::downlink, params.block_request_bits).latency_s;
    double trans_block = ctx.leg(Direction::uplink, params.block_body_bits).latency_s;
    return new_block + get_block + trans_block;
}

DltRoundCost dlt_round_cost(const DltParams& params, const LegContext& ctx)
{
    DltRoundCost cost;
    cost.mining_latency_s = mining_latency(params);
    cost.propagation_latency_s = block_propagation_latency(params, ctx);
    cost.total_latency_s = cost.mining_latency_s + cost.propagation_latency_s;
    cost.fleet_energy_j = static_cast<double>(params.n_miners) *
                          params.miner_power_w * cost.mining_latency_s;
    double race_energy = params.fleet_energy
                             ? cost.fleet_energy_j
                             : params.miner_power_w * cost.mining_latency_s;
    double paths = params.flood_propagation ? static_cast<double>(params.n_miners) : 1.0;
    cost.energy_j = race_energy +
                    ctx.energy.p_tx_w * cost.propagation_latency_s * paths;
    return cost;
}

} // namespace nbtrade
