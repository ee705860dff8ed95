#include "nbtrade/link.hpp"

#include "nbtrade/errors.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <cmath>

using namespace nbtrade;

namespace {

TrafficModel example_traffic()
{
    TrafficModel tm;
    tm.ul_pkt_moment1 = 1000.0;
    tm.ul_pkt_moment2 = 1.0e6;
    tm.dl_pkt_moment1 = 1000.0;
    tm.dl_pkt_moment2 = 1.0e6;
    return tm;
}

} // namespace

TEST_CASE("uplink sojourn, term-by-term")
{
    TrafficModel tm = example_traffic();

    SUBCASE("empty queue leaves the service time")
    {
        tm.ul_arrival_rate = 0.0;
        CHECK(uplink_tx_latency(tm) ==
              doctest::Approx(1000.0 / 15000.0).epsilon(1e-12));
    }

    SUBCASE("reference point at one packet per second")
    {
        tm.ul_arrival_rate = 1.0;
        double s1 = 1000.0 / 15000.0;
        double s2 = 1.0e6 / (15000.0 * 15000.0);
        double rho = 1.0 * s1;
        double expected = 1.0 * s2 / (2.0 * (1.0 - rho)) +
                          1.0 * s1 * s1 / (2.0 * (1.0 - rho)) + s1;
        CHECK(uplink_tx_latency(tm) == doctest::Approx(expected).epsilon(1e-12));
        CHECK(expected == doctest::Approx(0.0714286).epsilon(1e-5));
    }

    SUBCASE("utilization one is rejected at the exact boundary")
    {
        tm.ul_rate_bps = 16000.0;  // service 0.0625 s, exactly representable
        tm.ul_arrival_rate = 16.0; // rho = 16 * 0.0625 = 1
        CHECK_THROWS_AS(uplink_tx_latency(tm), UnstableQueueError);
        try {
            uplink_tx_latency(tm);
        } catch (const UnstableQueueError& e) {
            CHECK(e.queue() == "uplink");
            CHECK(e.utilization() == 1.0);
            CHECK(std::string(e.what()).find("utilization") != std::string::npos);
        }
    }
}

TEST_CASE("downlink sojourn against a discrete-event queue")
{
    TrafficModel tm = example_traffic();

    SUBCASE("empty queue")
    {
        tm.dl_arrival_rate = 0.0;
        CHECK(downlink_rx_latency(tm) ==
              doctest::Approx(1000.0 / 15000.0).epsilon(1e-12));
    }

    SUBCASE("formula tracks the simulated FIFO queue within 5%")
    {
        tm.dl_arrival_rate = 1.0;
        double analytic = downlink_rx_latency(tm);
        CHECK(analytic >= 1000.0 / 15000.0);
        // Deterministic 1000-bit service at 15 kbps, Poisson unit arrivals.
        double simulated =
            oracle::queue_sojourn_des(1.0, 1000.0 / 15000.0, 200000, 8181);
        CHECK(std::fabs(analytic - simulated) / simulated < 0.05);
    }

    SUBCASE("faster link, shorter sojourn")
    {
        tm.dl_arrival_rate = 1.0;
        double slow = downlink_rx_latency(tm);
        tm.dl_rate_bps = 30000.0;
        CHECK(downlink_rx_latency(tm) < slow);
    }

    SUBCASE("downlink instability names the downlink")
    {
        tm.dl_arrival_rate = 16.0;
        CHECK_THROWS_AS(downlink_rx_latency(tm), UnstableQueueError);
        try {
            downlink_rx_latency(tm);
        } catch (const UnstableQueueError& e) {
            CHECK(e.queue() == "downlink");
            CHECK(e.utilization() > 1.0);
        }
    }
}

TEST_CASE("leg cost composes sync, reservation, and transfer")
{
    AccessParams ap;
    EnergyProfile prof;
    TrafficModel tm = example_traffic();
    tm.ul_arrival_rate = 0.0;
    tm.dl_arrival_rate = 0.0;

    ContentionSolution sure;
    sure.p_rr = 1.0;

    SUBCASE("degenerate uplink leg is the exact phase sum")
    {
        LegCost cost = leg_cost(Direction::uplink, sure, ap, tm, prof);
        double expected = prof.sync_latency_s +
                          (ra_control_latency(ap) + rar_latency(ap)) +
                          1000.0 / 15000.0;
        CHECK(cost.latency_s == doctest::Approx(expected).epsilon(1e-12));
        CHECK(cost.sync.latency_s == prof.sync_latency_s);
        CHECK(cost.sync.energy_j == doctest::Approx(0.033).epsilon(1e-12));
    }

    SUBCASE("breakdown sums to the totals, bit for bit")
    {
        ContentionSolution part;
        part.p_rr = 0.8;
        TrafficModel busy = tm;
        busy.ul_arrival_rate = 2.0;
        busy.dl_arrival_rate = 2.0;
        for (Direction dir : {Direction::uplink, Direction::downlink}) {
            LegCost cost = leg_cost(dir, part, ap, busy, prof);
            CHECK(cost.latency_s == cost.sync.latency_s + cost.rr.latency_s +
                                        cost.txrx.latency_s);
            CHECK(cost.energy_j ==
                  cost.sync.energy_j + cost.rr.energy_j + cost.txrx.energy_j);
        }
    }

    SUBCASE("uplink transfer energy splits idle wait from powered service")
    {
        TrafficModel busy = tm;
        busy.ul_arrival_rate = 2.0;
        LegCost cost = leg_cost(Direction::uplink, sure, ap, busy, prof);
        double service = busy.ul_service_s();
        double queue_latency = cost.txrx.latency_s;
        double expected = (queue_latency - service) * prof.p_idle_w +
                          (prof.p_circuit_w +
                           prof.amp_efficiency * prof.p_tx_w) *
                              service;
        CHECK(cost.txrx.energy_j == doctest::Approx(expected).epsilon(1e-12));
    }

    SUBCASE("downlink service listens instead of transmitting")
    {
        TrafficModel busy = tm;
        busy.dl_arrival_rate = 2.0;
        LegCost cost = leg_cost(Direction::downlink, sure, ap, busy, prof);
        double service = busy.dl_service_s();
        double expected = (cost.txrx.latency_s - service) * prof.p_idle_w +
                          prof.p_listen_w * service;
        CHECK(cost.txrx.energy_j == doctest::Approx(expected).epsilon(1e-12));
    }
}
