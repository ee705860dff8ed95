#pragma once

#include "nbtrade/access.hpp"
#include "nbtrade/energy.hpp"

namespace nbtrade {

// Aggregate traffic seen by the shared uplink and downlink servers.
// Packet sizes enter through their first two moments so deterministic and
// dispersed size distributions use the same formulas.
struct TrafficModel {
    double ul_pkt_moment1 = 2000.0;   // l1, bits
    double ul_pkt_moment2 = 4.0e6;    // l2, bits^2
    double dl_pkt_moment1 = 2000.0;   // m1, bits
    double dl_pkt_moment2 = 4.0e6;    // m2, bits^2
    double ul_rate_bps = 15000.0;     // R^u
    double dl_rate_bps = 15000.0;     // R^d
    double ul_subcarriers = 1.0;      // w
    double dl_subcarriers = 1.0;      // y
    double sched_fraction = 1.0;      // f
    double ul_arrival_rate = 0.0;     // lambda^u, 1/s
    double dl_arrival_rate = 0.0;     // lambda^d, 1/s
    double npdcch_period_s = 0.1;     // scheduling period; cancels in the mean

    double ul_service_s() const
    {
        return sched_fraction * ul_pkt_moment1 / (ul_rate_bps * ul_subcarriers);
    }
    double dl_service_s() const
    {
        return sched_fraction * dl_pkt_moment1 / (dl_rate_bps * dl_subcarriers);
    }

    // Copy with the uplink payload replaced by a deterministic size.
    TrafficModel with_ul_payload(double bits) const
    {
        TrafficModel tm = *this;
        tm.ul_pkt_moment1 = bits;
        tm.ul_pkt_moment2 = bits * bits;
        return tm;
    }
    TrafficModel with_dl_payload(double bits) const
    {
        TrafficModel tm = *this;
        tm.dl_pkt_moment1 = bits;
        tm.dl_pkt_moment2 = bits * bits;
        return tm;
    }
};

struct PhaseCost {
    double latency_s = 0.0;
    double energy_j = 0.0;
};

// One application message fully costed: sync, reservation, transfer.
struct LegCost {
    double latency_s = 0.0;
    double energy_j = 0.0;
    PhaseCost sync;
    PhaseCost rr;
    PhaseCost txrx;
};

enum class Direction { uplink, downlink };

// Mean uplink sojourn (waiting + service) of the shared NPUSCH queue.
// Throws UnstableQueueError when the utilization reaches 1.
double uplink_tx_latency(const TrafficModel& tm);

// Downlink mirror over NPDSCH, same queueing form on the downlink moments.
double downlink_rx_latency(const TrafficModel& tm);

// Full leg: latency = L_sync + L_rr + L_tx|rx, energy likewise.  Uplink
// transfer charges idle power while queued and transmit power during
// service; downlink charges listening power during service.
LegCost leg_cost(Direction direction, const ContentionSolution& sol,
                 const AccessParams& params, const TrafficModel& tm,
                 const EnergyProfile& prof,
                 RaEnergyMode mode = RaEnergyMode::verbatim);

} // namespace nbtrade
