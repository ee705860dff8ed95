#include "nbtrade/pipeline.hpp"

#include "nbtrade/mathutil.hpp"

#include <algorithm>

namespace nbtrade {

namespace {

// Both directions trigger random access (downlink via paging), so the
// per-period PRACH load is the combined message rate over one period.
TrafficModel resolve_traffic(const ScenarioConfig& cfg, const ArrivalRates& rates)
{
    TrafficModel tm = cfg.traffic;
    double per_second = (rates.sellers_per_day + rates.buyers_per_day) / kSecondsPerDay;
    tm.ul_arrival_rate = per_second;
    tm.dl_arrival_rate = per_second;
    return tm;
}

} // namespace

ScenarioAnalysis analyze(const ScenarioConfig& cfg)
{
    ScenarioAnalysis out;
    out.p_d = resolved_delivery_probability(cfg.radio, cfg.p_d_mode, cfg.p_d_distance_m);
    out.rates = arrival_rates(cfg.population, out.p_d);
    out.trades_per_day = std::min(out.rates.sellers_per_day, out.rates.buyers_per_day);
    out.traffic = resolve_traffic(cfg, out.rates);
    out.offered_load_per_period =
        (out.traffic.ul_arrival_rate + out.traffic.dl_arrival_rate) *
        cfg.access.nprach_period_s;
    out.contention = solve_contention(out.p_d, out.offered_load_per_period, cfg.access);

    LegContext leg_ctx{out.contention, cfg.access, out.traffic, cfg.energy,
                       cfg.energy_mode};
    out.dlt_round = dlt_round_cost(cfg.dlt, leg_ctx);

    TradeContext trade_ctx;
    trade_ctx.sol = out.contention;
    trade_ctx.access = cfg.access;
    trade_ctx.traffic = out.traffic;
    trade_ctx.energy = cfg.energy;
    trade_ctx.dlt = cfg.dlt;
    trade_ctx.energy_mode = cfg.energy_mode;

    for (const ProtocolSpec& spec : selected_protocols(cfg)) {
        ProtocolAnalysis pa;
        pa.spec = spec;
        pa.outcome = trade_cost(spec, trade_ctx);
        // Direction split of the device energy; halved because a trade spends
        // it across two devices and the battery projection tracks one.
        double up = 0.0;
        double down = 0.0;
        for (size_t i = 0; i < spec.legs.size(); ++i) {
            const LegCost& leg = pa.outcome.leg_breakdown[i].second;
            if (spec.legs[i].direction == Direction::uplink)
                up += leg.energy_j;
            else
                down += leg.energy_j;
        }
        pa.e_up_per_trade_j = 0.5 * up;
        pa.e_down_per_trade_j = 0.5 * down;
        pa.battery_days =
            battery_lifetime(cfg.energy, cfg.population.sessions_per_day,
                             pa.e_up_per_trade_j, pa.e_down_per_trade_j, 1.0, 1.0);
        out.protocols.push_back(std::move(pa));
    }
    return out;
}

SimConfig to_sim_config(const ScenarioConfig& cfg, const ProtocolSpec& spec)
{
    SimConfig sim;
    sim.radio = cfg.radio;
    sim.p_d_mode = cfg.p_d_mode;
    sim.p_d_distance_m = cfg.p_d_distance_m;
    sim.population = cfg.population;
    sim.access = cfg.access;
    double p_d = resolved_delivery_probability(cfg.radio, cfg.p_d_mode, cfg.p_d_distance_m);
    sim.traffic = resolve_traffic(cfg, arrival_rates(cfg.population, p_d));
    sim.energy = cfg.energy;
    sim.dlt = cfg.dlt;
    sim.protocol = spec;
    sim.energy_mode = cfg.energy_mode;
    sim.sim = cfg.sim;
    return sim;
}

AnalyticReference reference_for(const ScenarioAnalysis& analysis,
                                const ProtocolAnalysis& protocol)
{
    AnalyticReference ref;
    ref.latency_s = protocol.outcome.latency_s;
    ref.energy_buyer_j = protocol.outcome.energy_buyer_j;
    ref.energy_seller_j = protocol.outcome.energy_seller_j;
    ref.energy_dlt_j = protocol.outcome.energy_dlt_j;
    ref.mining_latency_s = analysis.dlt_round.mining_latency_s;
    ref.p_rr = analysis.contention.p_rr;
    return ref;
}

} // namespace nbtrade
