#include "nbtrade/trading.hpp"

#include <doctest.h>

#include <cmath>
#include <limits>
#include <set>
#include <stdexcept>

using namespace nbtrade;

namespace {

int count_direction(const ProtocolSpec& spec, Direction dir)
{
    int n = 0;
    for (const MessageLeg& leg : spec.legs)
        if (leg.direction == dir)
            ++n;
    return n;
}

// Context whose leg and round costs are fixed stubs, so trade totals reduce
// to counting legs.
TradeContext stub_context(double ul_latency, double dl_latency, double round_latency)
{
    TradeContext ctx;
    ctx.leg_hook = [=](Direction dir, double) {
        LegCost cost;
        cost.latency_s = dir == Direction::uplink ? ul_latency : dl_latency;
        cost.energy_j = dir == Direction::uplink ? 0.01 : 0.001;
        cost.txrx.latency_s = cost.latency_s;
        cost.txrx.energy_j = cost.energy_j;
        return cost;
    };
    ctx.dlt_hook = [=]() {
        DltRoundCost round;
        round.mining_latency_s = round_latency;
        round.total_latency_s = round_latency;
        round.energy_j = 0.5;
        return round;
    };
    return ctx;
}

} // namespace

TEST_CASE("the three message sequences")
{
    ProtocolSpec gt = protocol_sequence(ProtocolKind::GT);
    ProtocolSpec bod = protocol_sequence(ProtocolKind::BoD);
    ProtocolSpec sod = protocol_sequence(ProtocolKind::SoD);

    CHECK(gt.legs.size() == 7);
    CHECK(gt.dlt_rounds == 1);
    CHECK(bod.legs.size() == 8);
    CHECK(bod.dlt_rounds == 2);
    CHECK(sod.legs.size() == 10);
    CHECK(sod.dlt_rounds == 3);
    CHECK(gt.legs.size() < bod.legs.size());
    CHECK(bod.legs.size() < sod.legs.size());

    CHECK(count_direction(gt, Direction::uplink) == 5);
    CHECK(count_direction(gt, Direction::downlink) == 2);
    CHECK(count_direction(bod, Direction::uplink) == 5);
    CHECK(count_direction(bod, Direction::downlink) == 3);
    CHECK(count_direction(sod, Direction::uplink) == 6);
    CHECK(count_direction(sod, Direction::downlink) == 4);

    for (const ProtocolSpec* spec : {&gt, &bod, &sod}) {
        std::set<std::string> names;
        for (const MessageLeg& leg : spec->legs) {
            CHECK(leg.payload_bits == 2000.0);
            names.insert(leg.name);
        }
        CHECK(names.size() == spec->legs.size());
    }

    // Settlement reaches both parties in every flow.
    for (const ProtocolSpec* spec : {&gt, &bod, &sod}) {
        int settle = 0;
        for (const MessageLeg& leg : spec->legs)
            if (leg.name.find("settle") != std::string::npos) {
                CHECK(leg.direction == Direction::downlink);
                ++settle;
            }
        CHECK(settle == 2);
    }
}

TEST_CASE("trade cost with stub legs")
{
    TradeContext ctx = stub_context(0.50, 0.51, 1.0);

    SUBCASE("the direct-trade flow sums to 4.52 s")
    {
        TradeOutcome outcome = trade_cost(protocol_sequence(ProtocolKind::GT), ctx);
        CHECK(outcome.latency_s ==
              doctest::Approx(5 * 0.50 + 2 * 0.51 + 1.0).epsilon(1e-12));
        CHECK(outcome.leg_breakdown.size() == 7);
        CHECK(outcome.energy_dlt_j == doctest::Approx(0.5).epsilon(1e-12));
    }

    SUBCASE("zero legs leave only the verification rounds")
    {
        ProtocolSpec bare;
        bare.legs.clear();
        bare.dlt_rounds = 3;
        TradeOutcome outcome = trade_cost(bare, ctx);
        CHECK(outcome.latency_s == doctest::Approx(3.0).epsilon(1e-12));
        CHECK(outcome.energy_buyer_j == 0.0);
        CHECK(outcome.energy_seller_j == 0.0);
    }

    SUBCASE("longer flows cost more")
    {
        TradeOutcome gt = trade_cost(protocol_sequence(ProtocolKind::GT), ctx);
        TradeOutcome sod = trade_cost(protocol_sequence(ProtocolKind::SoD), ctx);
        CHECK(gt.latency_s < sod.latency_s);
        CHECK(gt.total_energy_j() < sod.total_energy_j());
    }

    SUBCASE("per-party split covers the whole device energy")
    {
        TradeOutcome outcome = trade_cost(protocol_sequence(ProtocolKind::SoD), ctx);
        double total = 0.0;
        for (const auto& [name, leg] : outcome.leg_breakdown)
            total += leg.energy_j;
        CHECK(outcome.device_energy_j() == doctest::Approx(total).epsilon(1e-12));
    }

    SUBCASE("data gathering delay is additive")
    {
        ProtocolSpec spec = protocol_sequence(ProtocolKind::SoD);
        TradeOutcome plain = trade_cost(spec, ctx);
        spec.data_gathering_delay_s = 2.5;
        TradeOutcome delayed = trade_cost(spec, ctx);
        CHECK(delayed.latency_s ==
              doctest::Approx(plain.latency_s + 2.5).epsilon(1e-12));
    }

    SUBCASE("access failure compounds over the legs")
    {
        ctx.sol.p_access_failure = 0.1;
        TradeOutcome outcome = trade_cost(protocol_sequence(ProtocolKind::GT), ctx);
        double survive = 1.0;
        for (int i = 0; i < 7; ++i)
            survive *= 0.9;
        CHECK(outcome.failure_prob == doctest::Approx(1.0 - survive).epsilon(1e-9));
    }
}

TEST_CASE("session mode drops repeated synchronization")
{
    // Real leg model, idle network: the only difference between modes is one
    // sync phase per repeated-party boundary.
    TradeContext ctx;
    ctx.sol.p_rr = 1.0;
    ctx.traffic.ul_arrival_rate = 0.0;
    ctx.traffic.dl_arrival_rate = 0.0;

    ProtocolSpec spec;
    spec.label = "pair";
    spec.dlt_rounds = 0;
    spec.legs = {
        {"a.first", Party::buyer, Direction::uplink, 2000.0},
        {"a.second", Party::buyer, Direction::uplink, 2000.0},
        {"b.reply", Party::seller, Direction::uplink, 2000.0},
    };

    TradeOutcome separate = trade_cost(spec, ctx);
    spec.session_mode = true;
    TradeOutcome chained = trade_cost(spec, ctx);

    CHECK(separate.latency_s - chained.latency_s ==
          doctest::Approx(ctx.energy.sync_latency_s).epsilon(1e-12));
    CHECK(separate.energy_buyer_j - chained.energy_buyer_j ==
          doctest::Approx(ctx.energy.p_listen_w * ctx.energy.sync_latency_s)
              .epsilon(1e-12));
    CHECK(separate.energy_seller_j == chained.energy_seller_j);
}

TEST_CASE("battery lifetime projection")
{
    EnergyProfile prof; // 1000 J cell

    // 0.25 J per day: eleven-ish years.
    double days = battery_lifetime(prof, 1.0, 0.25, 0.0, 1.0, 1.0);
    CHECK(days == doctest::Approx(4000.0).epsilon(1e-12));
    CHECK(days / 365.25 == doctest::Approx(10.95).epsilon(1e-3));

    // Linear in the daily trade count.
    CHECK(battery_lifetime(prof, 2.0, 0.25, 0.0, 1.0, 1.0) == days / 2.0);

    // Eight trades of a quarter joule each: about 1.4 years.
    double heavy = battery_lifetime(prof, 8.0, 0.25, 0.0, 1.0, 1.0);
    CHECK(heavy == doctest::Approx(500.0).epsilon(1e-12));

    // Direction mix enters through the two probabilities.
    CHECK(battery_lifetime(prof, 1.0, 0.3, 0.1, 0.5, 0.5) ==
          doctest::Approx(1000.0 / 0.2).epsilon(1e-12));

    CHECK(battery_lifetime(prof, 0.0, 0.25, 0.25, 1.0, 1.0) ==
          std::numeric_limits<double>::infinity());
    CHECK(battery_lifetime(prof, 1.0, 0.0, 0.0, 1.0, 1.0) ==
          std::numeric_limits<double>::infinity());

    CHECK_THROWS_AS(battery_lifetime(prof, -1.0, 0.25, 0.0, 1.0, 1.0),
                    std::domain_error);
    CHECK_THROWS_AS(battery_lifetime(prof, 1.0, -0.25, 0.0, 1.0, 1.0),
                    std::domain_error);
    CHECK_THROWS_AS(battery_lifetime(prof, 1.0, 0.25, 0.0, 1.5, 1.0),
                    std::domain_error);
}
