#pragma once

#include "nbtrade/dlt.hpp"
#include "nbtrade/energy.hpp"
#include "nbtrade/link.hpp"

#include <functional>
#include <string>
#include <utility>
#include <vector>

namespace nbtrade {

enum class ProtocolKind { GT, BoD, SoD };

enum class Party { buyer, seller };

// One application message of a trade.  Uplink legs are transmissions by the
// named party; downlink legs are receptions (settlement notices, offers).
struct MessageLeg {
    std::string name;        // e.g. "buyer.add", "seller.settle_rx"
    Party party = Party::buyer;
    Direction direction = Direction::uplink;
    double payload_bits = 2000.0;
};

struct ProtocolSpec {
    ProtocolKind kind = ProtocolKind::GT;
    std::string label = "GT";
    std::vector<MessageLeg> legs;
    int dlt_rounds = 1;
    // Extra seller-side delay before data can be served (SoD); additive.
    double data_gathering_delay_s = 0.0;
    // When set, consecutive legs of the same party skip re-synchronization.
    bool session_mode = false;
};

struct TradeOutcome {
    double latency_s = 0.0;
    double energy_buyer_j = 0.0;
    double energy_seller_j = 0.0;
    double energy_dlt_j = 0.0;
    double failure_prob = 0.0;
    std::vector<std::pair<std::string, LegCost>> leg_breakdown;

    double device_energy_j() const { return energy_buyer_j + energy_seller_j; }
    double total_energy_j() const { return device_energy_j() + energy_dlt_j; }
};

// Canonical message sequences.  The flows give the add/commit/settle/confirm
// backbone; BoD prepends the seller-initiated offer push and SoD inserts the
// ask-for-data exchange plus the payment request.  Payloads default to one
// transaction (2000 bits) per leg and are overridable via config.
ProtocolSpec protocol_sequence(ProtocolKind kind);

// Costing context for a whole trade.  The leg and dlt hooks default to the
// analytic models; tests substitute stubs through them.
struct TradeContext {
    ContentionSolution sol;
    AccessParams access;
    TrafficModel traffic;
    EnergyProfile energy;
    DltParams dlt;
    RaEnergyMode energy_mode = RaEnergyMode::verbatim;
    std::function<LegCost(Direction, double)> leg_hook;
    std::function<DltRoundCost()> dlt_hook;

    LegContext leg_context() const
    {
        return LegContext{sol, access, traffic, energy, energy_mode};
    }
};

// Mean per-trade cost: legs in sequence plus dlt_rounds verification rounds.
TradeOutcome trade_cost(const ProtocolSpec& spec, const TradeContext& ctx);

// Battery lifetime in days: stored energy over mean daily draw
// T * (p_u * e_up + p_d_frac * e_down).  Returns +infinity when the daily
// draw is exactly zero.
double battery_lifetime(const EnergyProfile& prof, double trades_per_day,
                        double e_up_per_trade, double e_down_per_trade,
                        double p_u, double p_d_frac);

} // namespace nbtrade
