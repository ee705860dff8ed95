#include "nbtrade/config.hpp"

#include "nbtrade/errors.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace nbtrade {

namespace {

using nlohmann::json;

// Collects every violation so one parse reports all field paths at once.
class Section {
public:
    Section(const json* node, std::string path, std::vector<std::string>& errors)
        : node_(node), path_(std::move(path)), errors_(errors)
    {
    }

    bool present() const { return node_ != nullptr; }

    std::string field_path(const char* key) const { return path_ + "." + key; }

    const json* field(const char* key)
    {
        seen_.insert(key);
        if (node_ == nullptr)
            return nullptr;
        auto it = node_->find(key);
        if (it == node_->end()) {
            errors_.push_back("missing required field: " + field_path(key));
            return nullptr;
        }
        return &*it;
    }

    double number(const char* key, double fallback = 0.0)
    {
        const json* f = field(key);
        if (f == nullptr)
            return fallback;
        if (!f->is_number()) {
            errors_.push_back("expected a number: " + field_path(key));
            return fallback;
        }
        return f->get<double>();
    }

    int integer(const char* key, int fallback = 0)
    {
        const json* f = field(key);
        if (f == nullptr)
            return fallback;
        if (!f->is_number_integer()) {
            errors_.push_back("expected an integer: " + field_path(key));
            return fallback;
        }
        return f->get<int>();
    }

    std::int64_t integer64(const char* key, std::int64_t fallback = 0)
    {
        const json* f = field(key);
        if (f == nullptr)
            return fallback;
        if (!f->is_number_integer()) {
            errors_.push_back("expected an integer: " + field_path(key));
            return fallback;
        }
        return f->get<std::int64_t>();
    }

    std::uint64_t unsigned64(const char* key, std::uint64_t fallback = 0)
    {
        const json* f = field(key);
        if (f == nullptr)
            return fallback;
        if (!f->is_number_integer() ||
            (f->is_number_integer() && !f->is_number_unsigned() && f->get<std::int64_t>() < 0)) {
            errors_.push_back("expected a nonnegative integer: " + field_path(key));
            return fallback;
        }
        return f->get<std::uint64_t>();
    }

    bool boolean(const char* key, bool fallback = false)
    {
        const json* f = field(key);
        if (f == nullptr)
            return fallback;
        if (!f->is_boolean()) {
            errors_.push_back("expected a boolean: " + field_path(key));
            return fallback;
        }
        return f->get<bool>();
    }

    std::string text(const char* key, const std::string& fallback = "")
    {
        const json* f = field(key);
        if (f == nullptr)
            return fallback;
        if (!f->is_string()) {
            errors_.push_back("expected a string: " + field_path(key));
            return fallback;
        }
        return f->get<std::string>();
    }

    void check(bool ok, const char* key, const std::string& rule)
    {
        if (!ok)
            errors_.push_back("invalid value: " + field_path(key) + " " + rule);
    }

    // Flags keys that are not part of the schema.
    void finish()
    {
        if (node_ == nullptr)
            return;
        for (auto it = node_->begin(); it != node_->end(); ++it) {
            if (seen_.find(it.key()) == seen_.end())
                errors_.push_back("unknown field: " + path_ + "." + it.key());
        }
    }

private:
    const json* node_;
    std::string path_;
    std::vector<std::string>& errors_;
    std::set<std::string> seen_;
};

const json* subsection(const json& root, const char* key,
                       std::vector<std::string>& errors)
{
    auto it = root.find(key);
    if (it == root.end()) {
        errors.push_back(std::string("missing required section: ") + key);
        return nullptr;
    }
    if (!it->is_object()) {
        errors.push_back(std::string("expected an object: ") + key);
        return nullptr;
    }
    return &*it;
}

void parse_radio(const json* node, ScenarioConfig& cfg,
                 std::vector<std::string>& errors)
{
    Section s(node, "radio", errors);
    cfg.radio.tx_power_w = s.number("tx_power_w", cfg.radio.tx_power_w);
    s.check(cfg.radio.tx_power_w > 0.0, "tx_power_w", "must be > 0");
    cfg.radio.carrier_hz = s.number("carrier_hz", cfg.radio.carrier_hz);
    s.check(cfg.radio.carrier_hz > 0.0, "carrier_hz", "must be > 0");
    cfg.radio.gain_tx = s.number("gain_tx", cfg.radio.gain_tx);
    s.check(cfg.radio.gain_tx > 0.0, "gain_tx", "must be > 0");
    cfg.radio.gain_rx = s.number("gain_rx", cfg.radio.gain_rx);
    s.check(cfg.radio.gain_rx > 0.0, "gain_rx", "must be > 0");
    cfg.radio.path_loss_exp = s.number("path_loss_exp", cfg.radio.path_loss_exp);
    s.check(cfg.radio.path_loss_exp >= 1.5 && cfg.radio.path_loss_exp <= 6.0,
            "path_loss_exp", "must lie in [1.5, 6]");
    cfg.radio.shadow_sigma_db = s.number("shadow_sigma_db", cfg.radio.shadow_sigma_db);
    s.check(cfg.radio.shadow_sigma_db >= 0.0, "shadow_sigma_db", "must be >= 0");
    cfg.radio.sensitivity_w = s.number("sensitivity_w", cfg.radio.sensitivity_w);
    s.check(cfg.radio.sensitivity_w > 0.0, "sensitivity_w", "must be > 0");
    cfg.radio.cell_radius_m = s.number("cell_radius_m", cfg.radio.cell_radius_m);
    s.check(cfg.radio.cell_radius_m > 0.0, "cell_radius_m", "must be > 0");
    std::string mode = s.text("p_d_mode", "cell_average");
    if (mode == "cell_average") {
        cfg.p_d_mode = PdMode::cell_average;
    } else if (mode == "at_distance") {
        cfg.p_d_mode = PdMode::at_distance;
    } else {
        s.check(false, "p_d_mode", "must be \"cell_average\" or \"at_distance\"");
    }
    cfg.p_d_distance_m = s.number("p_d_distance_m", cfg.p_d_distance_m);
    s.check(cfg.p_d_distance_m > 0.0, "p_d_distance_m", "must be > 0");
    s.finish();
}

void parse_population(const json* node, ScenarioConfig& cfg,
                      std::vector<std::string>& errors)
{
    Section s(node, "population", errors);
    cfg.population.n_sellers = s.number("n_sellers", cfg.population.n_sellers);
    s.check(cfg.population.n_sellers >= 0.0, "n_sellers", "must be >= 0");
    cfg.population.n_buyers = s.number("n_buyers", cfg.population.n_buyers);
    s.check(cfg.population.n_buyers >= 0.0, "n_buyers", "must be >= 0");
    cfg.population.sessions_per_day =
        s.number("sessions_per_day", cfg.population.sessions_per_day);
    s.check(cfg.population.sessions_per_day >= 0.0, "sessions_per_day",
            "must be >= 0");
    cfg.population.p_sell = s.number("p_sell", cfg.population.p_sell);
    s.check(cfg.population.p_sell >= 0.0 && cfg.population.p_sell <= 1.0, "p_sell",
            "must lie in [0,1]");
    cfg.population.p_buy = s.number("p_buy", cfg.population.p_buy);
    s.check(cfg.population.p_buy >= 0.0 && cfg.population.p_buy <= 1.0, "p_buy",
            "must lie in [0,1]");
    s.finish();
}

void parse_access(const json* node, ScenarioConfig& cfg,
                  std::vector<std::string>& errors)
{
    Section s(node, "access", errors);
    cfg.access.n_preambles = s.integer("n_preambles", cfg.access.n_preambles);
    s.check(cfg.access.n_preambles >= 1 && cfg.access.n_preambles <= 48,
            "n_preambles", "must lie in [1, 48]");
    cfg.access.max_attempts = s.integer("max_attempts", cfg.access.max_attempts);
    s.check(cfg.access.max_attempts >= 1, "max_attempts", "must be >= 1");
    cfg.access.nprach_period_s = s.number("nprach_period_s", cfg.access.nprach_period_s);
    s.check(cfg.access.nprach_period_s > 0.0, "nprach_period_s", "must be > 0");
    cfg.access.npdcch_interval_s =
        s.number("npdcch_interval_s", cfg.access.npdcch_interval_s);
    s.check(cfg.access.npdcch_interval_s > 0.0, "npdcch_interval_s", "must be > 0");
    cfg.access.ra_msg_offset_s = s.number("ra_msg_offset_s", cfg.access.ra_msg_offset_s);
    s.check(cfg.access.ra_msg_offset_s > 0.0, "ra_msg_offset_s", "must be > 0");
    cfg.access.rar_unit_s = s.number("rar_unit_s", cfg.access.rar_unit_s);
    s.check(cfg.access.rar_unit_s > 0.0, "rar_unit_s", "must be > 0");
    cfg.access.backlog_q = s.number("backlog_q", cfg.access.backlog_q);
    s.check(cfg.access.backlog_q >= 0.0, "backlog_q", "must be >= 0");
    cfg.access.sched_fraction = s.number("sched_fraction", cfg.access.sched_fraction);
    s.check(cfg.access.sched_fraction > 0.0 && cfg.access.sched_fraction <= 1.0,
            "sched_fraction", "must lie in (0,1]");
    cfg.access.solver_tol = s.number("solver_tol", cfg.access.solver_tol);
    s.check(cfg.access.solver_tol > 0.0, "solver_tol", "must be > 0");
    std::string mode = s.text("energy_mode", "verbatim");
    if (mode == "verbatim") {
        cfg.energy_mode = RaEnergyMode::verbatim;
    } else if (mode == "weighted") {
        cfg.energy_mode = RaEnergyMode::weighted;
    } else {
        s.check(false, "energy_mode", "must be \"verbatim\" or \"weighted\"");
    }
    s.finish();
}

void parse_traffic(const json* node, ScenarioConfig& cfg,
                   std::vector<std::string>& errors)
{
    Section s(node, "traffic", errors);
    cfg.traffic.ul_pkt_moment1 = s.number("ul_pkt_moment1", cfg.traffic.ul_pkt_moment1);
    s.check(cfg.traffic.ul_pkt_moment1 > 0.0, "ul_pkt_moment1", "must be > 0");
    cfg.traffic.ul_pkt_moment2 = s.number("ul_pkt_moment2", cfg.traffic.ul_pkt_moment2);
    s.check(cfg.traffic.ul_pkt_moment2 >=
                cfg.traffic.ul_pkt_moment1 * cfg.traffic.ul_pkt_moment1,
            "ul_pkt_moment2", "must be >= ul_pkt_moment1^2");
    cfg.traffic.dl_pkt_moment1 = s.number("dl_pkt_moment1", cfg.traffic.dl_pkt_moment1);
    s.check(cfg.traffic.dl_pkt_moment1 > 0.0, "dl_pkt_moment1", "must be > 0");
    cfg.traffic.dl_pkt_moment2 = s.number("dl_pkt_moment2", cfg.traffic.dl_pkt_moment2);
    s.check(cfg.traffic.dl_pkt_moment2 >=
                cfg.traffic.dl_pkt_moment1 * cfg.traffic.dl_pkt_moment1,
            "dl_pkt_moment2", "must be >= dl_pkt_moment1^2");
    cfg.traffic.ul_rate_bps = s.number("ul_rate_bps", cfg.traffic.ul_rate_bps);
    s.check(cfg.traffic.ul_rate_bps > 0.0, "ul_rate_bps", "must be > 0");
    cfg.traffic.dl_rate_bps = s.number("dl_rate_bps", cfg.traffic.dl_rate_bps);
    s.check(cfg.traffic.dl_rate_bps > 0.0, "dl_rate_bps", "must be > 0");
    cfg.traffic.ul_subcarriers = s.number("ul_subcarriers", cfg.traffic.ul_subcarriers);
    s.check(cfg.traffic.ul_subcarriers > 0.0, "ul_subcarriers", "must be > 0");
    cfg.traffic.dl_subcarriers = s.number("dl_subcarriers", cfg.traffic.dl_subcarriers);
    s.check(cfg.traffic.dl_subcarriers > 0.0, "dl_subcarriers", "must be > 0");
    cfg.traffic.sched_fraction = s.number("sched_fraction", cfg.traffic.sched_fraction);
    s.check(cfg.traffic.sched_fraction > 0.0 && cfg.traffic.sched_fraction <= 1.0,
            "sched_fraction", "must lie in (0,1]");
    cfg.traffic.npdcch_period_s = s.number("npdcch_period_s", cfg.traffic.npdcch_period_s);
    s.check(cfg.traffic.npdcch_period_s > 0.0, "npdcch_period_s", "must be > 0");
    s.finish();
}

void parse_energy(const json* node, ScenarioConfig& cfg,
                  std::vector<std::string>& errors)
{
    Section s(node, "energy", errors);
    cfg.energy.p_listen_w = s.number("p_listen_w", cfg.energy.p_listen_w);
    s.check(cfg.energy.p_listen_w >= 0.0, "p_listen_w", "must be >= 0");
    cfg.energy.p_idle_w = s.number("p_idle_w", cfg.energy.p_idle_w);
    s.check(cfg.energy.p_idle_w >= 0.0, "p_idle_w", "must be >= 0");
    cfg.energy.p_tx_w = s.number("p_tx_w", cfg.energy.p_tx_w);
    s.check(cfg.energy.p_tx_w >= 0.0, "p_tx_w", "must be >= 0");
    cfg.energy.p_circuit_w = s.number("p_circuit_w", cfg.energy.p_circuit_w);
    s.check(cfg.energy.p_circuit_w >= 0.0, "p_circuit_w", "must be >= 0");
    cfg.energy.amp_efficiency = s.number("amp_efficiency", cfg.energy.amp_efficiency);
    s.check(cfg.energy.amp_efficiency > 0.0 && cfg.energy.amp_efficiency <= 1.5,
            "amp_efficiency", "must lie in (0, 1.5]");
    cfg.energy.battery_j = s.number("battery_j", cfg.energy.battery_j);
    s.check(cfg.energy.battery_j > 0.0, "battery_j", "must be > 0");
    cfg.energy.sync_latency_s = s.number("sync_latency_s", cfg.energy.sync_latency_s);
    s.check(cfg.energy.sync_latency_s >= 0.0, "sync_latency_s", "must be >= 0");
    s.finish();
}

void parse_dlt(const json* node, ScenarioConfig& cfg,
               std::vector<std::string>& errors)
{
    Section s(node, "dlt", errors);
    cfg.dlt.n_miners = s.integer("n_miners", cfg.dlt.n_miners);
    s.check(cfg.dlt.n_miners >= 1, "n_miners", "must be >= 1");
    cfg.dlt.scale_factor = s.number("scale_factor", cfg.dlt.scale_factor);
    s.check(cfg.dlt.scale_factor > 0.0, "scale_factor", "must be > 0");
    cfg.dlt.miner_power_w = s.number("miner_power_w", cfg.dlt.miner_power_w);
    s.check(cfg.dlt.miner_power_w > 0.0, "miner_power_w", "must be > 0");
    cfg.dlt.block_hash_bits = s.number("block_hash_bits", cfg.dlt.block_hash_bits);
    s.check(cfg.dlt.block_hash_bits > 0.0, "block_hash_bits", "must be > 0");
    cfg.dlt.block_request_bits = s.number("block_request_bits", cfg.dlt.block_request_bits);
    s.check(cfg.dlt.block_request_bits > 0.0, "block_request_bits", "must be > 0");
    cfg.dlt.block_body_bits = s.number("block_body_bits", cfg.dlt.block_body_bits);
    s.check(cfg.dlt.block_body_bits > 0.0, "block_body_bits", "must be > 0");
    cfg.dlt.fleet_energy = s.boolean("fleet_energy", cfg.dlt.fleet_energy);
    cfg.dlt.flood_propagation = s.boolean("flood_propagation", cfg.dlt.flood_propagation);
    s.finish();
}

void parse_protocol(const json* node, ScenarioConfig& cfg,
                    std::vector<std::string>& errors)
{
    Section s(node, "protocol", errors);
    cfg.protocol.selection = s.text("selection", cfg.protocol.selection);
    if (cfg.protocol.selection != "all" && cfg.protocol.selection != "GT" &&
        cfg.protocol.selection != "BoD" && cfg.protocol.selection != "SoD" &&
        cfg.protocol.selection != "custom")
        s.check(false, "selection", "must be one of all, GT, BoD, SoD, custom");
    cfg.protocol.default_payload_bits =
        s.number("default_payload_bits", cfg.protocol.default_payload_bits);
    s.check(cfg.protocol.default_payload_bits > 0.0, "default_payload_bits",
            "must be > 0");
    const json* overrides = s.field("payload_overrides");
    if (overrides != nullptr) {
        if (!overrides->is_object()) {
            s.check(false, "payload_overrides", "must be an object of name -> bits");
        } else {
            cfg.protocol.payload_overrides.clear();
            for (auto it = overrides->begin(); it != overrides->end(); ++it) {
                if (!it.value().is_number() || !(it.value().get<double>() > 0.0)) {
                    errors.push_back("invalid value: protocol.payload_overrides." +
                                     it.key() + " must be a number > 0");
                    continue;
                }
                cfg.protocol.payload_overrides[it.key()] = it.value().get<double>();
            }
        }
    }
    const json* rounds = s.field("rounds_overrides");
    if (rounds != nullptr) {
        if (!rounds->is_object()) {
            s.check(false, "rounds_overrides", "must be an object of label -> count");
        } else {
            cfg.protocol.rounds_overrides.clear();
            for (auto it = rounds->begin(); it != rounds->end(); ++it) {
                if (!it.value().is_number_integer() || it.value().get<int>() < 0) {
                    errors.push_back("invalid value: protocol.rounds_overrides." +
                                     it.key() + " must be an integer >= 0");
                    continue;
                }
                cfg.protocol.rounds_overrides[it.key()] = it.value().get<int>();
            }
        }
    }
    cfg.protocol.data_gathering_delay_s =
        s.number("data_gathering_delay_s", cfg.protocol.data_gathering_delay_s);
    s.check(cfg.protocol.data_gathering_delay_s >= 0.0, "data_gathering_delay_s",
            "must be >= 0");
    cfg.protocol.session_mode = s.boolean("session_mode", cfg.protocol.session_mode);
    const json* legs = s.field("custom_legs");
    if (legs != nullptr) {
        if (!legs->is_array()) {
            s.check(false, "custom_legs", "must be an array of legs");
        } else {
            cfg.protocol.custom_legs.clear();
            int index = 0;
            for (const json& item : *legs) {
                std::string leg_path =
                    "protocol.custom_legs[" + std::to_string(index) + "]";
                ++index;
                if (!item.is_object()) {
                    errors.push_back("expected an object: " + leg_path);
                    continue;
                }
                MessageLeg leg;
                Section ls(&item, leg_path, errors);
                leg.name = ls.text("name", "");
                ls.check(!leg.name.empty(), "name", "must be nonempty");
                std::string party = ls.text("party", "buyer");
                if (party == "buyer") {
                    leg.party = Party::buyer;
                } else if (party == "seller") {
                    leg.party = Party::seller;
                } else {
                    ls.check(false, "party", "must be \"buyer\" or \"seller\"");
                }
                std::string direction = ls.text("direction", "uplink");
                if (direction == "uplink") {
                    leg.direction = Direction::uplink;
                } else if (direction == "downlink") {
                    leg.direction = Direction::downlink;
                } else {
                    ls.check(false, "direction", "must be \"uplink\" or \"downlink\"");
                }
                leg.payload_bits = ls.number("payload_bits", 2000.0);
                ls.check(leg.payload_bits > 0.0, "payload_bits", "must be > 0");
                ls.finish();
                cfg.protocol.custom_legs.push_back(std::move(leg));
            }
        }
    }
    cfg.protocol.custom_rounds = s.integer("custom_rounds", cfg.protocol.custom_rounds);
    s.check(cfg.protocol.custom_rounds >= 0, "custom_rounds", "must be >= 0");
    if (cfg.protocol.selection == "custom" && cfg.protocol.custom_legs.empty() &&
        cfg.protocol.custom_rounds == 0)
        errors.push_back(
            "invalid value: protocol.selection custom requires custom_legs or rounds");
    s.finish();
}

void parse_sim(const json* node, ScenarioConfig& cfg,
               std::vector<std::string>& errors)
{
    Section s(node, "sim", errors);
    cfg.sim.seed = s.unsigned64("seed", cfg.sim.seed);
    cfg.sim.n_replications = s.integer("n_replications", cfg.sim.n_replications);
    s.check(cfg.sim.n_replications >= 1, "n_replications", "must be >= 1");
    cfg.sim.n_prach_periods =
        s.integer64("n_prach_periods", cfg.sim.n_prach_periods);
    s.check(cfg.sim.n_prach_periods >= 1, "n_prach_periods", "must be >= 1");
    cfg.sim.horizon_days = s.number("horizon_days", cfg.sim.horizon_days);
    s.check(cfg.sim.horizon_days > 0.0, "horizon_days", "must be > 0");
    cfg.sim.injected_trades = s.integer("injected_trades", cfg.sim.injected_trades);
    s.check(cfg.sim.injected_trades >= 0, "injected_trades", "must be >= 0");
    cfg.sim.backoff_window_periods =
        s.integer("backoff_window_periods", cfg.sim.backoff_window_periods);
    s.check(cfg.sim.backoff_window_periods >= 1, "backoff_window_periods",
            "must be >= 1");
    cfg.sim.threads = s.integer("threads", cfg.sim.threads);
    s.check(cfg.sim.threads >= 0, "threads", "must be >= 0 (0 = auto)");
    cfg.sim.collect_samples = s.boolean("collect_samples", cfg.sim.collect_samples);
    s.finish();
}

} // namespace

ScenarioConfig default_config()
{
    return ScenarioConfig{};
}

ScenarioConfig parse_config(const json& j)
{
    std::vector<std::string> errors;
    if (!j.is_object())
        throw ConfigError("config root must be a JSON object");

    ScenarioConfig cfg;
    static const std::set<std::string> known_sections = {
        "version", "radio",  "population", "access", "traffic",
        "energy",  "dlt",    "protocol",   "sim"};
    for (auto it = j.begin(); it != j.end(); ++it) {
        if (known_sections.find(it.key()) == known_sections.end())
            errors.push_back("unknown section: " + it.key());
    }

    auto version = j.find("version");
    if (version == j.end())
        errors.push_back("missing required field: version");
    else if (!version->is_number_integer() || version->get<int>() != 1)
        errors.push_back("invalid value: version must be the integer 1");

    parse_radio(subsection(j, "radio", errors), cfg, errors);
    parse_population(subsection(j, "population", errors), cfg, errors);
    parse_access(subsection(j, "access", errors), cfg, errors);
    parse_traffic(subsection(j, "traffic", errors), cfg, errors);
    parse_energy(subsection(j, "energy", errors), cfg, errors);
    parse_dlt(subsection(j, "dlt", errors), cfg, errors);
    parse_protocol(subsection(j, "protocol", errors), cfg, errors);
    parse_sim(subsection(j, "sim", errors), cfg, errors);

    if (!errors.empty()) {
        std::ostringstream out;
        out << "configuration invalid (" << errors.size() << " problem"
            << (errors.size() == 1 ? "" : "s") << "):";
        for (const std::string& e : errors)
            out << "\n  " << e;
        throw ConfigError(out.str());
    }
    return cfg;
}

ScenarioConfig load_config(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw ConfigError("cannot open config file: " + path);
    json j;
    try {
        j = json::parse(in);
    } catch (const json::parse_error& e) {
        throw ConfigError("config file is not valid JSON: " + path + ": " + e.what());
    }
    return parse_config(j);
}

nlohmann::json to_json(const ScenarioConfig& cfg)
{
    json j;
    j["version"] = 1;
    j["radio"] = {
        {"tx_power_w", cfg.radio.tx_power_w},
        {"carrier_hz", cfg.radio.carrier_hz},
        {"gain_tx", cfg.radio.gain_tx},
        {"gain_rx", cfg.radio.gain_rx},
        {"path_loss_exp", cfg.radio.path_loss_exp},
        {"shadow_sigma_db", cfg.radio.shadow_sigma_db},
        {"sensitivity_w", cfg.radio.sensitivity_w},
        {"cell_radius_m", cfg.radio.cell_radius_m},
        {"p_d_mode", cfg.p_d_mode == PdMode::cell_average ? "cell_average" : "at_distance"},
        {"p_d_distance_m", cfg.p_d_distance_m},
    };
    j["population"] = {
        {"n_sellers", cfg.population.n_sellers},
        {"n_buyers", cfg.population.n_buyers},
        {"sessions_per_day", cfg.population.sessions_per_day},
        {"p_sell", cfg.population.p_sell},
        {"p_buy", cfg.population.p_buy},
    };
    j["access"] = {
        {"n_preambles", cfg.access.n_preambles},
        {"max_attempts", cfg.access.max_attempts},
        {"nprach_period_s", cfg.access.nprach_period_s},
        {"npdcch_interval_s", cfg.access.npdcch_interval_s},
        {"ra_msg_offset_s", cfg.access.ra_msg_offset_s},
        {"rar_unit_s", cfg.access.rar_unit_s},
        {"backlog_q", cfg.access.backlog_q},
        {"sched_fraction", cfg.access.sched_fraction},
        {"solver_tol", cfg.access.solver_tol},
        {"energy_mode", cfg.energy_mode == RaEnergyMode::verbatim ? "verbatim" : "weighted"},
    };
    j["traffic"] = {
        {"ul_pkt_moment1", cfg.traffic.ul_pkt_moment1},
        {"ul_pkt_moment2", cfg.traffic.ul_pkt_moment2},
        {"dl_pkt_moment1", cfg.traffic.dl_pkt_moment1},
        {"dl_pkt_moment2", cfg.traffic.dl_pkt_moment2},
        {"ul_rate_bps", cfg.traffic.ul_rate_bps},
        {"dl_rate_bps", cfg.traffic.dl_rate_bps},
        {"ul_subcarriers", cfg.traffic.ul_subcarriers},
        {"dl_subcarriers", cfg.traffic.dl_subcarriers},
        {"sched_fraction", cfg.traffic.sched_fraction},
        {"npdcch_period_s", cfg.traffic.npdcch_period_s},
    };
    j["energy"] = {
        {"p_listen_w", cfg.energy.p_listen_w},
        {"p_idle_w", cfg.energy.p_idle_w},
        {"p_tx_w", cfg.energy.p_tx_w},
        {"p_circuit_w", cfg.energy.p_circuit_w},
        {"amp_efficiency", cfg.energy.amp_efficiency},
        {"battery_j", cfg.energy.battery_j},
        {"sync_latency_s", cfg.energy.sync_latency_s},
    };
    j["dlt"] = {
        {"n_miners", cfg.dlt.n_miners},
        {"scale_factor", cfg.dlt.scale_factor},
        {"miner_power_w", cfg.dlt.miner_power_w},
        {"block_hash_bits", cfg.dlt.block_hash_bits},
        {"block_request_bits", cfg.dlt.block_request_bits},
        {"block_body_bits", cfg.dlt.block_body_bits},
        {"fleet_energy", cfg.dlt.fleet_energy},
        {"flood_propagation", cfg.dlt.flood_propagation},
    };
    json legs = json::array();
    for (const MessageLeg& leg : cfg.protocol.custom_legs) {
        legs.push_back({
            {"name", leg.name},
            {"party", leg.party == Party::buyer ? "buyer" : "seller"},
            {"direction", leg.direction == Direction::uplink ? "uplink" : "downlink"},
            {"payload_bits", leg.payload_bits},
        });
    }
    j["protocol"] = {
        {"selection", cfg.protocol.selection},
        {"default_payload_bits", cfg.protocol.default_payload_bits},
        {"payload_overrides", json(cfg.protocol.payload_overrides)},
        {"rounds_overrides", json(cfg.protocol.rounds_overrides)},
        {"data_gathering_delay_s", cfg.protocol.data_gathering_delay_s},
        {"session_mode", cfg.protocol.session_mode},
        {"custom_legs", legs},
        {"custom_rounds", cfg.protocol.custom_rounds},
    };
    j["sim"] = {
        {"seed", cfg.sim.seed},
        {"n_replications", cfg.sim.n_replications},
        {"n_prach_periods", cfg.sim.n_prach_periods},
        {"horizon_days", cfg.sim.horizon_days},
        {"injected_trades", cfg.sim.injected_trades},
        {"backoff_window_periods", cfg.sim.backoff_window_periods},
        {"threads", cfg.sim.threads},
        {"collect_samples", cfg.sim.collect_samples},
    };
    return j;
}

std::vector<ProtocolSpec> selected_protocols(const ScenarioConfig& cfg)
{
    auto shape = [&cfg](ProtocolSpec spec) {
        for (MessageLeg& leg : spec.legs) {
            leg.payload_bits = cfg.protocol.default_payload_bits;
            auto it = cfg.protocol.payload_overrides.find(leg.name);
            if (it != cfg.protocol.payload_overrides.end())
                leg.payload_bits = it->second;
        }
        auto rounds = cfg.protocol.rounds_overrides.find(spec.label);
        if (rounds != cfg.protocol.rounds_overrides.end())
            spec.dlt_rounds = rounds->second;
        spec.session_mode = cfg.protocol.session_mode;
        if (spec.kind == ProtocolKind::SoD)
            spec.data_gathering_delay_s = cfg.protocol.data_gathering_delay_s;
        return spec;
    };

    std::vector<ProtocolSpec> out;
    const std::string& sel = cfg.protocol.selection;
    if (sel == "all" || sel == "GT")
        out.push_back(shape(protocol_sequence(ProtocolKind::GT)));
    if (sel == "all" || sel == "BoD")
        out.push_back(shape(protocol_sequence(ProtocolKind::BoD)));
    if (sel == "all" || sel == "SoD")
        out.push_back(shape(protocol_sequence(ProtocolKind::SoD)));
    if (sel == "custom") {
        ProtocolSpec spec;
        spec.kind = ProtocolKind::GT;
        spec.label = "custom";
        spec.legs = cfg.protocol.custom_legs;
        spec.dlt_rounds = cfg.protocol.custom_rounds;
        spec.session_mode = cfg.protocol.session_mode;
        spec.data_gathering_delay_s = cfg.protocol.data_gathering_delay_s;
        for (MessageLeg& leg : spec.legs) {
            auto it = cfg.protocol.payload_overrides.find(leg.name);
            if (it != cfg.protocol.payload_overrides.end())
                leg.payload_bits = it->second;
        }
        auto rounds = cfg.protocol.rounds_overrides.find(spec.label);
        if (rounds != cfg.protocol.rounds_overrides.end())
            spec.dlt_rounds = rounds->second;
        out.push_back(std::move(spec));
    }
    return out;
}

} // namespace nbtrade
