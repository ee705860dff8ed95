#include "nbtrade/montecarlo.hpp"

#include "nbtrade/errors.hpp"
#include "nbtrade/mathutil.hpp"
#include "nbtrade/rng.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstddef>
#include <deque>
#include <exception>
#include <mutex>
#include <queue>
#include <stdexcept>
#include <thread>
#include <unordered_map>
#include <vector>

namespace nbtrade {

namespace {

constexpr std::uint64_t kStreamPrachStandalone = stream_id("prach-standalone");
constexpr std::uint64_t kStreamMiningRace = stream_id("mining-race");
constexpr std::uint64_t kStreamTradeArrivals = stream_id("trade-arrivals");
constexpr std::uint64_t kStreamBgUplink = stream_id("bg-uplink");
constexpr std::uint64_t kStreamBgDownlink = stream_id("bg-downlink");
constexpr std::uint64_t kStreamBgPrach = stream_id("bg-prach");
constexpr std::uint64_t kStreamPrachDraws = stream_id("prach-draws");
constexpr std::uint64_t kStreamLegTiming = stream_id("leg-timing");
constexpr std::uint64_t kStreamMining = stream_id("mining");
constexpr std::uint64_t kStreamDevices = stream_id("device-placement");

double min_exponential(Rng& rng, int m, double rate)
{
    double best = rng.exponential(rate);
    for (int i = 1; i < m; ++i)
        best = std::min(best, rng.exponential(rate));
    return best;
}

} // namespace

PrachResult simulate_prach(double p_d, double offered_load,
                           const AccessParams& params, std::int64_t periods,
                           std::uint64_t seed, const PrachOptions& options)
{
    if (periods < 1)
        throw std::domain_error("periods must be >= 1");
    if (!(p_d >= 0.0 && p_d <= 1.0))
        throw std::domain_error("p_d must lie in [0,1]");
    if (!(offered_load >= 0.0))
        throw std::domain_error("offered_load must be >= 0");

    Rng rng(seed, kStreamPrachStandalone);
    int n_attempts = params.max_attempts;
    auto k = static_cast<std::uint64_t>(params.n_preambles);
    int window = std::max(1, options.backoff_window_periods);
    std::int64_t warmup = options.warmup_periods >= 0
                              ? options.warmup_periods
                              : std::min<std::int64_t>(periods / 10, 1000);
    warmup = std::min<std::int64_t>(warmup, periods - 1);

    // backlog[j] holds the retry attempt numbers entering period p + 1 + j.
    std::deque<std::vector<int>> backlog(static_cast<std::size_t>(window));

    PrachResult result;
    std::vector<std::uint64_t> contenders_by_attempt(
        static_cast<std::size_t>(n_attempts), 0);
    std::vector<int> cohort;
    std::vector<std::uint32_t> picks;
    std::vector<std::uint32_t> occupancy(static_cast<std::size_t>(k), 0);

    for (std::int64_t period = 0; period < periods; ++period) {
        cohort.clear();
        cohort.swap(backlog.front());
        backlog.pop_front();
        backlog.emplace_back();

        std::uint64_t fresh = options.fixed_new_contenders >= 0
                                  ? static_cast<std::uint64_t>(options.fixed_new_contenders)
                                  : rng.poisson(offered_load);
        for (std::uint64_t i = 0; i < fresh; ++i)
            cohort.push_back(1);

        if (cohort.empty())
            continue;

        picks.clear();
        std::fill(occupancy.begin(), occupancy.end(), 0);
        for (std::size_t i = 0; i < cohort.size(); ++i) {
            auto pick = static_cast<std::uint32_t>(rng.uniform_int(k));
            picks.push_back(pick);
            ++occupancy[pick];
        }

        bool measured = period >= warmup;
        for (std::size_t i = 0; i < cohort.size(); ++i) {
            bool solo = occupancy[picks[i]] == 1;
            bool delivered = p_d >= 1.0 || (p_d > 0.0 && rng.bernoulli(p_d));
            bool success = solo && delivered;
            if (measured) {
                ++result.attempts;
                ++contenders_by_attempt[static_cast<std::size_t>(cohort[i] - 1)];
                if (success)
                    ++result.successes;
            }
            if (success)
                continue;
            if (cohort[i] >= n_attempts) {
                if (measured)
                    ++result.drops;
                continue;
            }
            std::size_t slot = window > 1
                                   ? static_cast<std::size_t>(rng.uniform_int(
                                         static_cast<std::uint64_t>(window)))
                                   : 0;
            backlog[slot].push_back(cohort[i] + 1);
        }
    }

    result.measured_periods = periods - warmup;
    result.per_attempt_success =
        SampleStats::from_bernoulli(result.successes, result.attempts);
    result.mean_contenders_by_attempt.resize(static_cast<std::size_t>(n_attempts));
    for (int l = 0; l < n_attempts; ++l)
        result.mean_contenders_by_attempt[static_cast<std::size_t>(l)] =
            static_cast<double>(contenders_by_attempt[static_cast<std::size_t>(l)]) /
            static_cast<double>(result.measured_periods);
    return result;
}

SampleStats simulate_mining_race(const DltParams& params, std::int64_t samples,
                                 std::uint64_t seed)
{
    if (samples < 1)
        throw std::domain_error("samples must be >= 1");
    if (params.n_miners < 1 || !(params.computing_rate() > 0.0))
        throw std::domain_error("invalid mining parameters");
    Rng rng(seed, kStreamMiningRace);
    SampleStats stats;
    for (std::int64_t i = 0; i < samples; ++i)
        stats.add(min_exponential(rng, params.n_miners, params.computing_rate()));
    return stats;
}

void ReplicationResult::merge(const ReplicationResult& other)
{
    latency.merge(other.latency);
    buyer_energy.merge(other.buyer_energy);
    seller_energy.merge(other.seller_energy);
    dlt_energy.merge(other.dlt_energy);
    mining.merge(other.mining);
    ra_attempts += other.ra_attempts;
    ra_successes += other.ra_successes;
    trades_started += other.trades_started;
    trades_completed += other.trades_completed;
    trades_aborted += other.trades_aborted;
    samples.insert(samples.end(), other.samples.begin(), other.samples.end());
}

namespace {

// Virtual-workload view of a FIFO single-server queue: the backlog drains at
// unit rate, and an arrival's waiting time is the backlog it finds.
struct QueueState {
    double workload = 0.0;
    double last_time = 0.0;

    double enqueue(double now, double service)
    {
        workload = std::max(0.0, workload - (now - last_time));
        last_time = now;
        double wait = workload;
        workload += service;
        return wait;
    }
};

enum class EventKind : int {
    bg_uplink,
    bg_downlink,
    bg_prach,
    prach_resolve,
    trade_start,
    begin_leg,
    ra_outcome,
    leg_done,
};

struct Event {
    double time;
    std::uint64_t seq;
    EventKind kind;
    int trade = -1;
    std::int64_t period = 0;
    bool flag = false;

    bool operator>(const Event& other) const
    {
        if (time != other.time)
            return time > other.time;
        return seq > other.seq;
    }
};

struct PrachMember {
    double p_d = 1.0;
    int attempt = 1;
    int trade = -1;           // -1: background contender
    double outcome_time = 0.0; // tagged only
};

struct PrachBucket {
    std::vector<PrachMember> members;
    bool scheduled = false;
};

struct TradeRun {
    double start = 0.0;
    int leg = 0;
    bool in_round = false;
    int round = 0;
    int prop_leg = 0;
    int attempt = 1;
    double leg_begin = 0.0;
    double round_leg_latency = 0.0;
    double buyer_p_d = 1.0;
    double seller_p_d = 1.0;
    double current_p_d = 1.0;
    double current_payload = 0.0;
    Direction current_direction = Direction::uplink;
    Party current_party = Party::buyer;
    bool charge_device = true; // false for miner propagation legs
    double buyer_e = 0.0;
    double seller_e = 0.0;
    double dlt_e = 0.0;
    bool done = false;
};

// Single-replication simulator.  All state is local; a replication is fully
// determined by (cfg, replication_index).
class Replication {
public:
    Replication(const SimConfig& cfg, int index)
        : cfg_(cfg),
          arrivals_rng_(cfg.sim.seed, kStreamTradeArrivals, hash_index(index)),
          bg_ul_rng_(cfg.sim.seed, kStreamBgUplink, hash_index(index)),
          bg_dl_rng_(cfg.sim.seed, kStreamBgDownlink, hash_index(index)),
          bg_prach_rng_(cfg.sim.seed, kStreamBgPrach, hash_index(index)),
          prach_rng_(cfg.sim.seed, kStreamPrachDraws, hash_index(index)),
          leg_rng_(cfg.sim.seed, kStreamLegTiming, hash_index(index)),
          mining_rng_(cfg.sim.seed, kStreamMining, hash_index(index)),
          device_rng_(cfg.sim.seed, kStreamDevices, hash_index(index))
    {
        horizon_s_ = cfg.sim.horizon_days * kSecondsPerDay;
        period_s_ = cfg.access.nprach_period_s;
        ul_arrival_rate_ = cfg.traffic.ul_arrival_rate;
        dl_arrival_rate_ = cfg.traffic.dl_arrival_rate;
        prach_arrival_rate_ = ul_arrival_rate_ + dl_arrival_rate_;
        trade_rate_ = trade_rate_per_s(cfg);
        check_stability();
    }

    ReplicationResult run()
    {
        seed_initial_events();
        while (!events_.empty()) {
            Event ev = events_.top();
            events_.pop();
            dispatch(ev);
        }
        return std::move(result_);
    }

private:
    static std::uint64_t hash_index(int index)
    {
        // Substream per replication; offset so index 0 is not the raw seed path.
        return static_cast<std::uint64_t>(index) + 0x51ed270b0f4a92b5ULL;
    }

    static double trade_rate_per_s(const SimConfig& cfg)
    {
        double p_d = resolved_delivery_probability(cfg.radio, cfg.p_d_mode,
                                                   cfg.p_d_distance_m);
        ArrivalRates rates = arrival_rates(cfg.population, p_d);
        // A trade needs one matched buyer and seller request.
        return std::min(rates.sellers_per_day, rates.buyers_per_day) / kSecondsPerDay;
    }

    void check_stability()
    {
        const TrafficModel& tm = cfg_.traffic;
        double s1 = tm.sched_fraction * tm.ul_pkt_moment1 /
                    (tm.ul_rate_bps * tm.ul_subcarriers);
        double rho_u = tm.sched_fraction * tm.ul_arrival_rate * s1;
        if (rho_u >= 1.0)
            throw UnstableQueueError("uplink", rho_u);
        double h1 = tm.sched_fraction * tm.dl_pkt_moment1 /
                    (tm.dl_rate_bps * tm.dl_subcarriers);
        double rho_d = tm.sched_fraction * tm.dl_arrival_rate * h1;
        if (rho_d >= 1.0)
            throw UnstableQueueError("downlink", rho_d);
    }

    void schedule(double time, EventKind kind, int trade = -1,
                  std::int64_t period = 0, bool flag = false)
    {
        events_.push(Event{time, next_seq_++, kind, trade, period, flag});
    }

    void seed_initial_events()
    {
        if (trade_rate_ > 0.0) {
            double t = arrivals_rng_.exponential(trade_rate_);
            while (t < horizon_s_) {
                schedule(t, EventKind::trade_start);
                t += arrivals_rng_.exponential(trade_rate_);
            }
        }
        for (int i = 0; i < cfg_.sim.injected_trades; ++i) {
            double t = horizon_s_ * (static_cast<double>(i) + 1.0) /
                       (static_cast<double>(cfg_.sim.injected_trades) + 1.0);
            schedule(t, EventKind::trade_start);
        }
        if (ul_arrival_rate_ > 0.0)
            schedule(bg_ul_rng_.exponential(ul_arrival_rate_), EventKind::bg_uplink);
        if (dl_arrival_rate_ > 0.0)
            schedule(bg_dl_rng_.exponential(dl_arrival_rate_), EventKind::bg_downlink);
        if (prach_arrival_rate_ > 0.0)
            schedule(bg_prach_rng_.exponential(prach_arrival_rate_),
                     EventKind::bg_prach);
    }

    void dispatch(const Event& ev)
    {
        switch (ev.kind) {
        case EventKind::bg_uplink:
            handle_bg_queue(ev.time, Direction::uplink);
            break;
        case EventKind::bg_downlink:
            handle_bg_queue(ev.time, Direction::downlink);
            break;
        case EventKind::bg_prach:
            handle_bg_prach(ev.time);
            break;
        case EventKind::prach_resolve:
            resolve_period(ev.period);
            break;
        case EventKind::trade_start:
            start_trade(ev.time);
            break;
        case EventKind::begin_leg:
            begin_leg(ev.time, trades_[static_cast<std::size_t>(ev.trade)], ev.trade);
            break;
        case EventKind::ra_outcome:
            ra_outcome(ev.time, ev.trade, ev.flag);
            break;
        case EventKind::leg_done:
            leg_done(ev.time, ev.trade);
            break;
        }
    }

    double draw_device_p_d(Rng& rng)
    {
        if (cfg_.p_d_mode == PdMode::at_distance)
            return delivery_probability(cfg_.radio, cfg_.p_d_distance_m);
        // Area-uniform placement on the disk.
        double r = cfg_.radio.cell_radius_m * std::sqrt(rng.next_double());
        if (r <= 0.0)
            return 1.0;
        return delivery_probability(cfg_.radio, r);
    }

    double service_time(Direction direction, double payload_bits) const
    {
        const TrafficModel& tm = cfg_.traffic;
        if (direction == Direction::uplink)
            return tm.sched_fraction * payload_bits / (tm.ul_rate_bps * tm.ul_subcarriers);
        return tm.sched_fraction * payload_bits / (tm.dl_rate_bps * tm.dl_subcarriers);
    }

    // Background packet size; sampled only when the configured moments are
    // dispersed, otherwise the deterministic first moment.
    double bg_payload(Rng& rng, Direction direction)
    {
        const TrafficModel& tm = cfg_.traffic;
        double m1 = direction == Direction::uplink ? tm.ul_pkt_moment1 : tm.dl_pkt_moment1;
        double m2 = direction == Direction::uplink ? tm.ul_pkt_moment2 : tm.dl_pkt_moment2;
        double var = m2 - m1 * m1;
        if (var <= 1e-9 * m1 * m1)
            return m1;
        double shape = m1 * m1 / var;
        double scale = var / m1;
        return rng.gamma(shape, scale);
    }

    void handle_bg_queue(double now, Direction direction)
    {
        if (direction == Direction::uplink) {
            ul_queue_.enqueue(now, service_time(direction, bg_payload(bg_ul_rng_, direction)));
            double next = now + bg_ul_rng_.exponential(ul_arrival_rate_);
            if (next < horizon_s_)
                schedule(next, EventKind::bg_uplink);
        } else {
            dl_queue_.enqueue(now, service_time(direction, bg_payload(bg_dl_rng_, direction)));
            double next = now + bg_dl_rng_.exponential(dl_arrival_rate_);
            if (next < horizon_s_)
                schedule(next, EventKind::bg_downlink);
        }
    }

    void register_contender(std::int64_t period, const PrachMember& member)
    {
        PrachBucket& bucket = buckets_[period];
        bucket.members.push_back(member);
        if (!bucket.scheduled) {
            bucket.scheduled = true;
            schedule(static_cast<double>(period + 1) * period_s_,
                     EventKind::prach_resolve, -1, period);
        }
    }

    void handle_bg_prach(double now)
    {
        PrachMember member;
        member.p_d = draw_device_p_d(bg_prach_rng_);
        member.attempt = 1;
        register_contender(static_cast<std::int64_t>(now / period_s_), member);
        double next = now + bg_prach_rng_.exponential(prach_arrival_rate_);
        if (next < horizon_s_)
            schedule(next, EventKind::bg_prach);
    }

    void resolve_period(std::int64_t period)
    {
        auto it = buckets_.find(period);
        if (it == buckets_.end())
            return;
        std::vector<PrachMember> members = std::move(it->second.members);
        buckets_.erase(it);

        auto k = static_cast<std::uint64_t>(cfg_.access.n_preambles);
        picks_.clear();
        occupancy_.assign(static_cast<std::size_t>(k), 0);
        for (std::size_t i = 0; i < members.size(); ++i) {
            auto pick = static_cast<std::uint32_t>(prach_rng_.uniform_int(k));
            picks_.push_back(pick);
            ++occupancy_[pick];
        }
        int window = std::max(1, cfg_.sim.backoff_window_periods);
        for (std::size_t i = 0; i < members.size(); ++i) {
            const PrachMember& m = members[i];
            bool solo = occupancy_[picks_[i]] == 1;
            bool delivered = m.p_d >= 1.0 || (m.p_d > 0.0 && prach_rng_.bernoulli(m.p_d));
            bool success = solo && delivered;
            ++result_.ra_attempts;
            if (success)
                ++result_.ra_successes;
            if (m.trade >= 0) {
                schedule(m.outcome_time, EventKind::ra_outcome, m.trade, 0, success);
                continue;
            }
            if (success || m.attempt >= cfg_.access.max_attempts)
                continue;
            std::int64_t offset =
                1 + (window > 1
                         ? static_cast<std::int64_t>(prach_rng_.uniform_int(
                               static_cast<std::uint64_t>(window)))
                         : 0);
            PrachMember retry = m;
            ++retry.attempt;
            register_contender(period + offset, retry);
        }
    }

    void start_trade(double now)
    {
        TradeRun trade;
        trade.start = now;
        trade.buyer_p_d = draw_device_p_d(device_rng_);
        trade.seller_p_d = draw_device_p_d(device_rng_);
        trades_.push_back(trade);
        ++result_.trades_started;
        int idx = static_cast<int>(trades_.size()) - 1;
        if (cfg_.protocol.legs.empty()) {
            TradeRun& t = trades_[static_cast<std::size_t>(idx)];
            if (cfg_.protocol.dlt_rounds > 0)
                enter_round(now, t, idx);
            else
                complete_trade(now, t);
            return;
        }
        schedule(now, EventKind::begin_leg, idx);
    }

    // Sets up the current leg of the trade (message leg or propagation leg)
    // and launches its sync + first RA attempt.
    void begin_leg(double now, TradeRun& trade, int idx)
    {
        double t = now;
        bool sync = true;
        if (trade.in_round) {
            // Miner-side propagation: newB uplink, getB downlink, transB uplink.
            switch (trade.prop_leg) {
            case 0:
                trade.current_direction = Direction::uplink;
                trade.current_payload = cfg_.dlt.block_hash_bits;
                break;
            case 1:
                trade.current_direction = Direction::downlink;
                trade.current_payload = cfg_.dlt.block_request_bits;
                break;
            default:
                trade.current_direction = Direction::uplink;
                trade.current_payload = cfg_.dlt.block_body_bits;
                break;
            }
            trade.charge_device = false;
            trade.current_p_d = draw_device_p_d(device_rng_);
        } else {
            const MessageLeg& leg = cfg_.protocol.legs[static_cast<std::size_t>(trade.leg)];
            trade.current_direction = leg.direction;
            trade.current_payload = leg.payload_bits;
            trade.current_party = leg.party;
            trade.charge_device = true;
            trade.current_p_d =
                leg.party == Party::buyer ? trade.buyer_p_d : trade.seller_p_d;
            if (cfg_.protocol.session_mode && trade.leg > 0 &&
                cfg_.protocol.legs[static_cast<std::size_t>(trade.leg - 1)].party ==
                    leg.party)
                sync = false;
        }
        trade.leg_begin = now;
        trade.attempt = 1;
        if (sync) {
            t += cfg_.energy.sync_latency_s;
            charge(trade, cfg_.energy.p_listen_w * cfg_.energy.sync_latency_s);
        }
        launch_ra(t, trade, idx);
    }

    void charge(TradeRun& trade, double energy_j)
    {
        if (!trade.charge_device)
            return; // propagation legs are billed through the round's P_t charge
        if (trade.current_party == Party::buyer)
            trade.buyer_e += energy_j;
        else
            trade.seller_e += energy_j;
    }

    // One RA attempt: uniform wait to the preamble slot, the slot itself,
    // then the RAR listening window.  The contention outcome is decided
    // jointly for all contenders of the slot's period.
    void launch_ra(double now, TradeRun& trade, int idx)
    {
        const AccessParams& ap = cfg_.access;
        double wait = leg_rng_.uniform(0.0, ap.ra_msg_offset_s);
        double rar = leg_rng_.uniform(0.0, ap.npdcch_interval_s) +
                     0.5 * ap.backlog_q * ap.sched_fraction * ap.rar_unit_s +
                     ap.rar_unit_s;
        double attempt_time = now + wait;
        charge(trade, wait * cfg_.energy.p_idle_w +
                          ap.nprach_period_s * (cfg_.energy.p_circuit_w +
                                                cfg_.energy.amp_efficiency *
                                                    cfg_.energy.p_tx_w));
        charge(trade, cfg_.energy.p_listen_w * rar);
        PrachMember member;
        member.p_d = trade.current_p_d;
        member.attempt = trade.attempt;
        member.trade = idx;
        member.outcome_time = attempt_time + ap.nprach_period_s + rar;
        register_contender(static_cast<std::int64_t>(attempt_time / period_s_), member);
    }

    void ra_outcome(double now, int idx, bool success)
    {
        TradeRun& trade = trades_[static_cast<std::size_t>(idx)];
        if (trade.done)
            return;
        if (!success) {
            if (trade.attempt < cfg_.access.max_attempts) {
                ++trade.attempt;
                launch_ra(now, trade, idx);
                return;
            }
            if (trade.in_round) {
                // A block must eventually propagate; the miner starts over.
                trade.attempt = 1;
                launch_ra(now, trade, idx);
                return;
            }
            trade.done = true;
            ++result_.trades_aborted;
            return;
        }
        double service = service_time(trade.current_direction, trade.current_payload);
        QueueState& queue =
            trade.current_direction == Direction::uplink ? ul_queue_ : dl_queue_;
        double wait = queue.enqueue(now, service);
        charge(trade, wait * cfg_.energy.p_idle_w);
        if (trade.current_direction == Direction::uplink)
            charge(trade, service * (cfg_.energy.p_circuit_w +
                                     cfg_.energy.amp_efficiency * cfg_.energy.p_tx_w));
        else
            charge(trade, service * cfg_.energy.p_listen_w);
        schedule(now + wait + service, EventKind::leg_done, idx);
    }

    void leg_done(double now, int idx)
    {
        TradeRun& trade = trades_[static_cast<std::size_t>(idx)];
        if (trade.done)
            return;
        if (trade.in_round) {
            trade.round_leg_latency += now - trade.leg_begin;
            ++trade.prop_leg;
            if (trade.prop_leg < 3) {
                schedule(now, EventKind::begin_leg, idx);
                return;
            }
            double paths = cfg_.dlt.flood_propagation
                               ? static_cast<double>(cfg_.dlt.n_miners)
                               : 1.0;
            trade.dlt_e += cfg_.energy.p_tx_w * trade.round_leg_latency * paths;
            ++trade.round;
            if (trade.round < cfg_.protocol.dlt_rounds) {
                enter_round(now, trade, idx);
                return;
            }
            complete_trade(now, trade);
            return;
        }
        ++trade.leg;
        if (trade.leg < static_cast<int>(cfg_.protocol.legs.size())) {
            schedule(now, EventKind::begin_leg, idx);
            return;
        }
        if (cfg_.protocol.dlt_rounds > 0) {
            enter_round(now, trade, idx);
            return;
        }
        complete_trade(now, trade);
    }

    void enter_round(double now, TradeRun& trade, int idx)
    {
        trade.in_round = true;
        trade.prop_leg = 0;
        trade.round_leg_latency = 0.0;
        double race = min_exponential(mining_rng_, cfg_.dlt.n_miners,
                                      cfg_.dlt.computing_rate());
        result_.mining.add(race);
        double racers = cfg_.dlt.fleet_energy ? static_cast<double>(cfg_.dlt.n_miners)
                                              : 1.0;
        trade.dlt_e += racers * cfg_.dlt.miner_power_w * race;
        schedule(now + race, EventKind::begin_leg, idx);
    }

    void complete_trade(double now, TradeRun& trade)
    {
        trade.done = true;
        ++result_.trades_completed;
        double latency =
            now - trade.start + cfg_.protocol.data_gathering_delay_s;
        result_.latency.add(latency);
        result_.buyer_energy.add(trade.buyer_e);
        result_.seller_energy.add(trade.seller_e);
        result_.dlt_energy.add(trade.dlt_e);
        if (cfg_.sim.collect_samples) {
            TradeOutcome sample;
            sample.latency_s = latency;
            sample.energy_buyer_j = trade.buyer_e;
            sample.energy_seller_j = trade.seller_e;
            sample.energy_dlt_j = trade.dlt_e;
            result_.samples.push_back(std::move(sample));
        }
    }

    const SimConfig& cfg_;
    Rng arrivals_rng_;
    Rng bg_ul_rng_;
    Rng bg_dl_rng_;
    Rng bg_prach_rng_;
    Rng prach_rng_;
    Rng leg_rng_;
    Rng mining_rng_;
    Rng device_rng_;
    double horizon_s_ = 0.0;
    double period_s_ = 0.01;
    double ul_arrival_rate_ = 0.0;
    double dl_arrival_rate_ = 0.0;
    double prach_arrival_rate_ = 0.0;
    double trade_rate_ = 0.0;
    std::priority_queue<Event, std::vector<Event>, std::greater<Event>> events_;
    std::uint64_t next_seq_ = 0;
    std::unordered_map<std::int64_t, PrachBucket> buckets_;
    std::vector<std::uint32_t> picks_;
    std::vector<std::uint32_t> occupancy_;
    QueueState ul_queue_;
    QueueState dl_queue_;
    std::vector<TradeRun> trades_;
    ReplicationResult result_;
};

} // namespace

ReplicationResult run_replication(const SimConfig& cfg, int replication_index)
{
    if (replication_index < 0)
        throw std::domain_error("replication_index must be >= 0");
    Replication rep(cfg, replication_index);
    return rep.run();
}

CampaignResult run_campaign(const SimConfig& cfg, const AnalyticReference* reference)
{
    if (cfg.sim.n_replications < 1)
        throw ConfigError("sim.n_replications must be >= 1");

    int n = cfg.sim.n_replications;
    unsigned hw = std::thread::hardware_concurrency();
    int threads = cfg.sim.threads > 0 ? cfg.sim.threads
                                      : static_cast<int>(hw == 0 ? 1 : hw);
    threads = std::min(threads, n);

    std::vector<ReplicationResult> partials(static_cast<std::size_t>(n));
    if (threads <= 1) {
        for (int i = 0; i < n; ++i)
            partials[static_cast<std::size_t>(i)] = run_replication(cfg, i);
    } else {
        std::atomic<int> next{0};
        std::atomic<bool> failed{false};
        std::exception_ptr error;
        std::mutex error_mutex;
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(threads));
        for (int t = 0; t < threads; ++t) {
            pool.emplace_back([&]() {
                for (;;) {
                    int i = next.fetch_add(1);
                    if (i >= n || failed.load())
                        return;
                    try {
                        partials[static_cast<std::size_t>(i)] = run_replication(cfg, i);
                    } catch (...) {
                        std::lock_guard<std::mutex> lock(error_mutex);
                        if (!error)
                            error = std::current_exception();
                        failed.store(true);
                        return;
                    }
                }
            });
        }
        for (auto& worker : pool)
            worker.join();
        if (error)
            std::rethrow_exception(error);
    }

    CampaignResult result;
    for (int i = 0; i < n; ++i)
        result.totals.merge(partials[static_cast<std::size_t>(i)]);
    result.empirical_p_rr = SampleStats::from_bernoulli(result.totals.ra_successes,
                                                        result.totals.ra_attempts);

    if (reference != nullptr) {
        result.mining_reference = simulate_mining_race(cfg.dlt, 100000, cfg.sim.seed);
        auto row = [](const std::string& metric, double analytic,
                      const SampleStats& stats) {
            ComparisonRow r;
            r.metric = metric;
            r.analytic = analytic;
            r.sim_mean = stats.mean;
            r.sim_ci_halfwidth = stats.ci95_halfwidth();
            r.rel_error = analytic != 0.0
                              ? std::abs(analytic - stats.mean) / std::abs(analytic)
                              : std::abs(stats.mean);
            r.within_ci = std::abs(analytic - stats.mean) <= r.sim_ci_halfwidth;
            return r;
        };
        result.comparison.push_back(
            row("trade_latency_s", reference->latency_s, result.totals.latency));
        result.comparison.push_back(row("energy_buyer_j", reference->energy_buyer_j,
                                        result.totals.buyer_energy));
        result.comparison.push_back(row("energy_seller_j", reference->energy_seller_j,
                                        result.totals.seller_energy));
        result.comparison.push_back(
            row("energy_dlt_j", reference->energy_dlt_j, result.totals.dlt_energy));
        result.comparison.push_back(
            row("mining_latency_s", reference->mining_latency_s, result.mining_reference));
        result.comparison.push_back(row("p_rr", reference->p_rr, result.empirical_p_rr));
    }
    return result;
}

} // namespace nbtrade
