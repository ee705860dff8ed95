#include "nbtrade/trading.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace nbtrade {

namespace {

constexpr double kLegPayloadBits = 2000.0; // one fixed-size transaction

MessageLeg ul(const char* name, Party party)
{
    return MessageLeg{name, party, Direction::uplink, kLegPayloadBits};
}

MessageLeg dl(const char* name, Party party)
{
    return MessageLeg{name, party, Direction::downlink, kLegPayloadBits};
}

} // namespace

ProtocolSpec protocol_sequence(ProtocolKind kind)
{
    ProtocolSpec spec;
    spec.kind = kind;
    switch (kind) {
    case ProtocolKind::GT:
        spec.label = "GT";
        spec.dlt_rounds = 1;
        spec.legs = {
            ul("buyer.add", Party::buyer),
            ul("seller.add", Party::seller),
            ul("buyer.commit", Party::buyer),
            dl("buyer.settle_rx", Party::buyer),
            dl("seller.settle_rx", Party::seller),
            ul("buyer.confirm", Party::buyer),
            ul("seller.confirm", Party::seller),
        };
        break;
    case ProtocolKind::BoD:
        // Seller initiates: the offer is pushed to the buyer, who accepts;
        // the recorded offer adds a verification round.
        spec.label = "BoD";
        spec.dlt_rounds = 2;
        spec.legs = {
            ul("seller.add", Party::seller),
            dl("buyer.offer_rx", Party::buyer),
            ul("buyer.accept", Party::buyer),
            ul("buyer.commit", Party::buyer),
            dl("buyer.settle_rx", Party::buyer),
            dl("seller.settle_rx", Party::seller),
            ul("buyer.confirm", Party::buyer),
            ul("seller.confirm", Party::seller),
        };
        break;
    case ProtocolKind::SoD:
        // Buyer initiates without a standing offer: the seller is asked for
        // data, responds, and lists it; the buyer then pays on request.
        spec.label = "SoD";
        spec.dlt_rounds = 3;
        spec.legs = {
            ul("buyer.add", Party::buyer),
            dl("seller.ask_rx", Party::seller),
            ul("seller.respond", Party::seller),
            ul("seller.add", Party::seller),
            dl("buyer.payment_req_rx", Party::buyer),
            ul("buyer.commit", Party::buyer),
            dl("buyer.settle_rx", Party::buyer),
            dl("seller.settle_rx", Party::seller),
            ul("buyer.confirm", Party::buyer),
            ul("seller.confirm", Party::seller),
        };
        break;
    }
    return spec;
}

TradeOutcome trade_cost(const ProtocolSpec& spec, const TradeContext& ctx)
{
    auto cost_leg = [&](Direction direction, double payload) {
        if (ctx.leg_hook)
            return ctx.leg_hook(direction, payload);
        return ctx.leg_context().leg(direction, payload);
    };

    TradeOutcome outcome;
    outcome.leg_breakdown.reserve(spec.legs.size());
    const MessageLeg* previous = nullptr;
    for (const MessageLeg& leg : spec.legs) {
        LegCost cost = cost_leg(leg.direction, leg.payload_bits);
        if (spec.session_mode && previous != nullptr && previous->party == leg.party) {
            // Device stayed connected since its last message; no re-sync.
            cost.latency_s -= cost.sync.latency_s;
            cost.energy_j -= cost.sync.energy_j;
            cost.sync = PhaseCost{};
        }
        outcome.latency_s += cost.latency_s;
        if (leg.party == Party::buyer)
            outcome.energy_buyer_j += cost.energy_j;
        else
            outcome.energy_seller_j += cost.energy_j;
        outcome.leg_breakdown.emplace_back(leg.name, cost);
        previous = &leg;
    }

    if (spec.dlt_rounds > 0) {
        DltRoundCost round = ctx.dlt_hook ? ctx.dlt_hook()
                                          : dlt_round_cost(ctx.dlt, ctx.leg_context());
        outcome.latency_s += static_cast<double>(spec.dlt_rounds) * round.total_latency_s;
        outcome.energy_dlt_j = static_cast<double>(spec.dlt_rounds) * round.energy_j;
    }

    outcome.latency_s += spec.data_gathering_delay_s;

    // 1 - (1 - q)^legs through expm1/log1p; the direct form underflows to 0
    // once q drops below machine epsilon.
    double legs = static_cast<double>(spec.legs.size());
    double q = ctx.sol.p_access_failure;
    outcome.failure_prob = q >= 1.0 ? 1.0 : -std::expm1(legs * std::log1p(-q));
    return outcome;
}

double battery_lifetime(const EnergyProfile& prof, double trades_per_day,
                        double e_up_per_trade, double e_down_per_trade,
                        double p_u, double p_d_frac)
{
    if (!(trades_per_day >= 0.0))
        throw std::domain_error("trades_per_day must be >= 0");
    if (e_up_per_trade < 0.0 || e_down_per_trade < 0.0)
        throw std::domain_error("per-trade energies must be >= 0");
    if (!(p_u >= 0.0 && p_u <= 1.0) || !(p_d_frac >= 0.0 && p_d_frac <= 1.0))
        throw std::domain_error("probabilities must lie in [0,1]");
    double daily_j = trades_per_day * (p_u * e_up_per_trade + p_d_frac * e_down_per_trade);
    if (daily_j == 0.0)
        return std::numeric_limits<double>::infinity();
    return prof.battery_j / daily_j;
}

} // namespace nbtrade
