#include "nbtrade/montecarlo.hpp"

#include "nbtrade/errors.hpp"
#include "nbtrade/pipeline.hpp"
#include "nbtrade/scenario.hpp"

#include <doctest.h>

#include <cmath>

using namespace nbtrade;

namespace {

SimConfig quiet_sim_config(int replications, int injected)
{
    ScenarioConfig cfg = default_config();
    cfg.population.p_sell = 0.0;
    cfg.population.p_buy = 0.0;
    cfg.sim.n_replications = replications;
    cfg.sim.horizon_days = 0.01;
    cfg.sim.injected_trades = injected;
    return to_sim_config(cfg, protocol_sequence(ProtocolKind::GT));
}

} // namespace

TEST_CASE("standalone preamble contention")
{
    AccessParams ap;

    SUBCASE("no offered load, no events")
    {
        PrachResult r = simulate_prach(1.0, 0.0, ap, 1000, 1);
        CHECK(r.attempts == 0);
        CHECK(r.successes == 0);
        CHECK(r.per_attempt_success.count == 0);
        CHECK(r.measured_periods > 0);
    }

    SUBCASE("guaranteed collision on a single preamble")
    {
        AccessParams tight = ap;
        tight.n_preambles = 1;
        PrachOptions opt;
        opt.fixed_new_contenders = 2;
        PrachResult r = simulate_prach(1.0, 2.0, tight, 2000, 7, opt);
        CHECK(r.attempts > 0);
        CHECK(r.successes == 0);
        CHECK(r.per_attempt_success.mean == 0.0);
        CHECK(r.drops > 0);
    }

    SUBCASE("the drift fixed point predicts the simulated success rate")
    {
        ContentionSolution sol = solve_contention(1.0, 4.8, ap);
        PrachResult r = simulate_prach(1.0, 4.8, ap, 100000, 20260822);
        CHECK(std::fabs(r.per_attempt_success.mean - sol.p_rr) / sol.p_rr < 0.02);
    }
}

TEST_CASE("mining race sampling")
{
    DltParams params;
    params.n_miners = 1;
    SampleStats lone = simulate_mining_race(params, 100000, 5);
    CHECK(std::fabs(lone.mean - 10.0 / 3.0) / (10.0 / 3.0) < 0.01);

    params.n_miners = 20;
    SampleStats crowd = simulate_mining_race(params, 100000, 5);
    CHECK(std::fabs(crowd.mean - 1.0 / 6.0) / (1.0 / 6.0) < 0.01);
    CHECK(crowd.mean > 0.0);
    CHECK(crowd.mean < lone.mean);
}

TEST_CASE("replications are a pure function of seed and index")
{
    SimConfig cfg = quiet_sim_config(1, 1);
    ReplicationResult a = run_replication(cfg, 3);
    ReplicationResult b = run_replication(cfg, 3);
    CHECK(a.latency.count == b.latency.count);
    CHECK(a.latency.mean == b.latency.mean);
    CHECK(a.buyer_energy.mean == b.buyer_energy.mean);
    CHECK(a.seller_energy.mean == b.seller_energy.mean);
    CHECK(a.ra_attempts == b.ra_attempts);

    ReplicationResult c = run_replication(cfg, 4);
    CHECK((a.latency.mean != c.latency.mean || a.ra_attempts != c.ra_attempts));
}

TEST_CASE("campaign results do not depend on the thread count")
{
    SimConfig cfg = quiet_sim_config(64, 1);
    cfg.sim.threads = 1;
    CampaignResult serial = run_campaign(cfg);
    cfg.sim.threads = 4;
    CampaignResult parallel = run_campaign(cfg);
    CHECK(serial.totals.latency.count == parallel.totals.latency.count);
    CHECK(serial.totals.latency.mean == parallel.totals.latency.mean);
    CHECK(serial.totals.latency.m2 == parallel.totals.latency.m2);
    CHECK(serial.totals.buyer_energy.mean == parallel.totals.buyer_energy.mean);
    CHECK(serial.totals.dlt_energy.mean == parallel.totals.dlt_energy.mean);
    CHECK(serial.empirical_p_rr.count == parallel.empirical_p_rr.count);
}

TEST_CASE("an injected trade on an idle network reproduces the analytic floor")
{
    ScenarioConfig cfg = default_config();
    cfg.population.p_sell = 0.0;
    cfg.population.p_buy = 0.0;
    cfg.sim.n_replications = 600;
    cfg.sim.horizon_days = 0.01;
    cfg.sim.injected_trades = 1;

    ScenarioAnalysis analysis = analyze(cfg);
    const ProtocolAnalysis& gt = analysis.protocols.front();
    REQUIRE(gt.spec.label == "GT");
    AnalyticReference ref = reference_for(analysis, gt);

    CampaignResult campaign = run_campaign(to_sim_config(cfg, gt.spec), &ref);
    CHECK(campaign.totals.trades_completed == 600);

    REQUIRE(!campaign.comparison.empty());
    const ComparisonRow& latency = campaign.comparison.front();
    REQUIRE(latency.metric == "trade_latency_s");
    CHECK(latency.rel_error < 0.02);
    CHECK(std::fabs(latency.sim_mean - latency.analytic) <=
          3.0 * latency.sim_ci_halfwidth);

    for (const ComparisonRow& row : campaign.comparison) {
        if (row.metric == "p_rr")
            CHECK(row.rel_error < 0.02);
        if (row.metric == "mining_latency_s")
            CHECK(row.rel_error < 0.01);
    }
}

TEST_CASE("protocol ordering survives the simulation")
{
    ScenarioConfig cfg = default_config();
    cfg.sim.n_replications = 1000;

    CampaignResult gt =
        run_campaign(to_sim_config(cfg, protocol_sequence(ProtocolKind::GT)));
    CampaignResult sod =
        run_campaign(to_sim_config(cfg, protocol_sequence(ProtocolKind::SoD)));
    CHECK(gt.totals.latency.count > 0);
    CHECK(sod.totals.latency.count > 0);
    CHECK(gt.totals.latency.mean < sod.totals.latency.mean);
}

TEST_CASE("degenerate campaigns")
{
    SUBCASE("an empty protocol never blocks")
    {
        SimConfig cfg = quiet_sim_config(8, 2);
        cfg.protocol.legs.clear();
        cfg.protocol.dlt_rounds = 0;
        CampaignResult r = run_campaign(cfg);
        CHECK(r.totals.trades_started == 16);
        CHECK(r.totals.trades_completed == 16);
        CHECK(r.totals.latency.mean == 0.0);
    }

    SUBCASE("zero replications are rejected")
    {
        SimConfig cfg = quiet_sim_config(1, 1);
        cfg.sim.n_replications = 0;
        CHECK_THROWS_AS(run_campaign(cfg), ConfigError);
    }

    SUBCASE("the stability guard fires before the event loop")
    {
        ScenarioConfig cfg = default_config();
        cfg.population.sessions_per_day = 1.0e6;
        SimConfig sim = to_sim_config(cfg, protocol_sequence(ProtocolKind::GT));
        CHECK_THROWS_AS(run_campaign(sim), UnstableQueueError);
    }
}
