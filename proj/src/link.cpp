#include "nbtrade/link.hpp"

#include "nbtrade/errors.hpp"

#include <stdexcept>

namespace nbtrade {

namespace {

void check_traffic(const TrafficModel& tm)
{
    // Zero moments are a valid degenerate limit (an empty payload leg);
    // negatives and NaN are not.
    if (!(tm.ul_pkt_moment1 >= 0.0) || !(tm.dl_pkt_moment1 >= 0.0))
        throw std::domain_error("packet first moments must be >= 0");
    if (tm.ul_pkt_moment2 < tm.ul_pkt_moment1 * tm.ul_pkt_moment1 ||
        tm.dl_pkt_moment2 < tm.dl_pkt_moment1 * tm.dl_pkt_moment1)
        throw std::domain_error("packet second moment below squared mean");
    if (!(tm.ul_rate_bps > 0.0) || !(tm.dl_rate_bps > 0.0))
        throw std::domain_error("link rates must be positive");
    if (!(tm.ul_subcarriers > 0.0) || !(tm.dl_subcarriers > 0.0))
        throw std::domain_error("subcarrier counts must be positive");
    if (!(tm.sched_fraction > 0.0 && tm.sched_fraction <= 1.0))
        throw std::domain_error("sched_fraction must lie in (0,1]");
    if (tm.ul_arrival_rate < 0.0 || tm.dl_arrival_rate < 0.0)
        throw std::domain_error("arrival rates must be >= 0");
}

// Mean sojourn of the shared single-server queue: two waiting terms built
// from the service moments plus the service time itself.
double queue_sojourn(const char* name, double arrival_rate, double f,
                     double moment1_s, double moment2_s2, double service_s)
{
    double rho = f * arrival_rate * moment1_s;
    if (rho >= 1.0)
        throw UnstableQueueError(name, rho);
    double denom = 2.0 * (1.0 - rho);
    return f * arrival_rate * moment2_s2 / denom +
           f * arrival_rate * moment1_s * moment1_s / denom + service_s;
}

} // namespace

double uplink_tx_latency(const TrafficModel& tm)
{
    check_traffic(tm);
    double s1 = tm.sched_fraction * tm.ul_pkt_moment1 /
                (tm.ul_rate_bps * tm.ul_subcarriers);
    double s2 = tm.sched_fraction * tm.ul_pkt_moment2 /
                (tm.ul_rate_bps * tm.ul_rate_bps * tm.ul_subcarriers * tm.ul_subcarriers);
    double service = tm.ul_pkt_moment1 / (tm.ul_rate_bps * tm.ul_subcarriers);
    return queue_sojourn("uplink", tm.ul_arrival_rate, tm.sched_fraction, s1, s2,
                         service);
}

double downlink_rx_latency(const TrafficModel& tm)
{
    check_traffic(tm);
    double h1 = tm.sched_fraction * tm.dl_pkt_moment1 /
                (tm.dl_rate_bps * tm.dl_subcarriers);
    double h2 = tm.sched_fraction * tm.dl_pkt_moment2 /
                (tm.dl_rate_bps * tm.dl_rate_bps * tm.dl_subcarriers * tm.dl_subcarriers);
    double service = tm.dl_pkt_moment1 / (tm.dl_rate_bps * tm.dl_subcarriers);
    return queue_sojourn("downlink", tm.dl_arrival_rate, tm.sched_fraction, h1, h2,
                         service);
}

LegCost leg_cost(Direction direction, const ContentionSolution& sol,
                 const AccessParams& params, const TrafficModel& tm,
                 const EnergyProfile& prof, RaEnergyMode mode)
{
    LegCost leg;
    leg.sync.latency_s = prof.sync_latency_s;
    leg.sync.energy_j = prof.p_listen_w * prof.sync_latency_s;
    leg.rr.latency_s = resource_reservation_latency(sol, params);
    leg.rr.energy_j = resource_reservation_energy(sol, params, prof, mode);
    if (direction == Direction::uplink) {
        double latency = uplink_tx_latency(tm);
        double service = tm.ul_pkt_moment1 / (tm.ul_rate_bps * tm.ul_subcarriers);
        leg.txrx.latency_s = latency;
        leg.txrx.energy_j =
            (latency - service) * prof.p_idle_w +
            (prof.p_circuit_w + prof.amp_efficiency * prof.p_tx_w) * service;
    } else {
        double latency = downlink_rx_latency(tm);
        double service = tm.dl_pkt_moment1 / (tm.dl_rate_bps * tm.dl_subcarriers);
        leg.txrx.latency_s = latency;
        leg.txrx.energy_j =
            (latency - service) * prof.p_idle_w + prof.p_listen_w * service;
    }
    leg.latency_s = leg.sync.latency_s + leg.rr.latency_s + leg.txrx.latency_s;
    leg.energy_j = leg.sync.energy_j + leg.rr.energy_j + leg.txrx.energy_j;
    return leg;
}

} // namespace nbtrade
