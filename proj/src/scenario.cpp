#include "nbtrade/scenario.hpp"

#include "nbtrade/csv.hpp"
#include "nbtrade/errors.hpp"

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <map>
#include <utility>

namespace nbtrade {

namespace {

const std::map<std::string, std::string>& preset_descriptions()
{
    static const std::map<std::string, std::string> d = {
        {"default", "baseline configuration, single point, all protocols"},
        {"fig3", "delivery probability over distance for four path-loss exponents"},
        {"fig4", "verification round cost versus number of miners (1..20)"},
        {"fig6", "per-protocol trade cost versus number of miners (1..20)"},
        {"fig7", "trade cost versus buyer share of a fixed population"},
        {"fig8", "battery lifetime versus trading sessions per day (1..20)"},
    };
    return d;
}

double parse_number(const std::string& text, const std::string& what)
{
    const char* begin = text.c_str();
    char* end = nullptr;
    double v = std::strtod(begin, &end);
    if (end == begin || *end != '\0' || !std::isfinite(v))
        throw ConfigError("cannot parse number \"" + text + "\" in " + what);
    return v;
}

std::string join_path(const std::string& dir, const char* name)
{
    return (std::filesystem::path(dir) / name).string();
}

std::string flag(bool b) { return b ? "1" : "0"; }

} // namespace

std::vector<std::string> scenario_names()
{
    std::vector<std::string> names;
    for (const auto& [name, desc] : preset_descriptions())
        names.push_back(name);
    return names;
}

std::string scenario_description(const std::string& name)
{
    auto it = preset_descriptions().find(name);
    return it == preset_descriptions().end() ? std::string() : it->second;
}

Scenario make_scenario(const std::string& name, const ScenarioConfig& base)
{
    Scenario sc;
    sc.name = name;
    if (name == "default") {
        sc.points.push_back({0.0, base});
    } else if (name == "fig3") {
        sc.channel_table = true;
        for (double beta : {2.4, 2.7, 3.0, 3.3}) {
            ScenarioConfig cfg = base;
            cfg.radio.path_loss_exp = beta;
            sc.points.push_back({beta, std::move(cfg)});
        }
    } else if (name == "fig4" || name == "fig6") {
        for (int m = 1; m <= 20; ++m) {
            ScenarioConfig cfg = base;
            cfg.dlt.n_miners = m;
            sc.points.push_back({static_cast<double>(m), std::move(cfg)});
        }
    } else if (name == "fig7") {
        const double total = 20000.0;
        for (int i = 1; i <= 9; ++i) {
            ScenarioConfig cfg = base;
            cfg.population.p_buy = 5.0e-4;
            cfg.population.p_sell = 1.0e-4;
            cfg.population.sessions_per_day = 10.0;
            cfg.population.n_buyers = 2000.0 * i;
            cfg.population.n_sellers = total - cfg.population.n_buyers;
            sc.points.push_back({0.1 * i, std::move(cfg)});
        }
    } else if (name == "fig8") {
        for (int t = 1; t <= 20; ++t) {
            ScenarioConfig cfg = base;
            cfg.population.sessions_per_day = t;
            sc.points.push_back({static_cast<double>(t), std::move(cfg)});
        }
    } else {
        std::string known;
        for (const std::string& n : scenario_names())
            known += (known.empty() ? "" : ", ") + n;
        throw ConfigError("unknown scenario \"" + name + "\" (known: " + known + ")");
    }
    return sc;
}

std::vector<SweepPoint> sweep_points(const ScenarioConfig& base,
                                     const std::string& sweep_spec)
{
    auto eq = sweep_spec.find('=');
    if (eq == std::string::npos || eq == 0 || eq + 1 == sweep_spec.size())
        throw ConfigError("sweep must look like section.field=v1,v2,... got \"" +
                          sweep_spec + "\"");
    std::string path = sweep_spec.substr(0, eq);
    std::string values = sweep_spec.substr(eq + 1);

    std::string pointer = "/";
    for (char c : path)
        pointer += c == '.' ? '/' : c;

    nlohmann::json root = to_json(base);
    nlohmann::json::json_pointer ptr(pointer);
    if (!root.contains(ptr) || !root.at(ptr).is_number())
        throw ConfigError("sweep path does not resolve to a numeric config field: " +
                          path);
    const nlohmann::json& target = root.at(ptr);

    std::vector<SweepPoint> points;
    std::size_t start = 0;
    while (start <= values.size()) {
        std::size_t comma = values.find(',', start);
        std::string item = values.substr(
            start, comma == std::string::npos ? std::string::npos : comma - start);
        double v = parse_number(item, "sweep " + path);
        nlohmann::json patched = root;
        // Keep the field's JSON number kind so the strict parser accepts it.
        if (target.is_number_unsigned() && v >= 0.0 && v == std::floor(v)) {
            patched[ptr] = static_cast<std::uint64_t>(v);
        } else if (target.is_number_integer() && v == std::floor(v) &&
                   std::fabs(v) <= 9.0e15) {
            patched[ptr] = static_cast<std::int64_t>(v);
        } else {
            patched[ptr] = v;
        }
        points.push_back({v, parse_config(patched)});
        if (comma == std::string::npos)
            break;
        start = comma + 1;
    }
    if (points.empty())
        throw ConfigError("sweep has no values: " + sweep_spec);
    return points;
}

ScenarioReport run_scenario(const Scenario& scenario)
{
    if (scenario.points.empty())
        throw ConfigError("scenario \"" + scenario.name + "\" has no points");
    std::filesystem::create_directories(scenario.output_dir);

    ScenarioReport report;
    if (scenario.channel_table) {
        CsvFile csv(join_path(scenario.output_dir, "channel.csv"),
                    {"distance_m", "beta", "p_d"});
        for (const SweepPoint& point : scenario.points) {
            for (int d = 10; d <= 500; d += 10) {
                csv.row({format_double(d),
                         format_double(point.config.radio.path_loss_exp),
                         format_double(
                             delivery_probability(point.config.radio, d))});
                ++report.trade_rows;
            }
        }
        report.files.push_back(csv.path());
        return report;
    }

    bool with_sim = scenario.engine != EngineMode::analytic;
    std::vector<std::string> trade_header = {
        "sweep_value", "protocol",      "latency_s",
        "energy_buyer_j", "energy_seller_j", "energy_dlt_j",
        "battery_days", "p_rr",         "failure_prob"};
    if (with_sim) {
        trade_header.push_back("sim_mean");
        trade_header.push_back("sim_ci_halfwidth");
    }
    CsvFile trades(join_path(scenario.output_dir, "trades.csv"), trade_header);
    CsvFile access(join_path(scenario.output_dir, "access.csv"),
                   {"sweep_value", "p_d", "offered_load", "p_rr", "lambda_tot",
                    "p_access_failure", "l_rr_s", "e_rr_j"});
    CsvFile dlt(join_path(scenario.output_dir, "dlt.csv"),
                {"sweep_value", "mining_latency_s", "propagation_latency_s",
                 "total_latency_s", "energy_j", "fleet_energy_j"});

    for (const SweepPoint& point : scenario.points) {
        ScenarioAnalysis analysis = analyze(point.config);
        std::string value_cell = format_double(point.value);
        access.row({value_cell, format_double(analysis.p_d),
                    format_double(analysis.offered_load_per_period),
                    format_double(analysis.contention.p_rr),
                    format_double(analysis.contention.lambda_tot),
                    format_double(analysis.contention.p_access_failure),
                    format_double(resource_reservation_latency(
                        analysis.contention, point.config.access)),
                    format_double(resource_reservation_energy(
                        analysis.contention, point.config.access,
                        point.config.energy, point.config.energy_mode))});
        dlt.row({value_cell, format_double(analysis.dlt_round.mining_latency_s),
                 format_double(analysis.dlt_round.propagation_latency_s),
                 format_double(analysis.dlt_round.total_latency_s),
                 format_double(analysis.dlt_round.energy_j),
                 format_double(analysis.dlt_round.fleet_energy_j)});

        for (const ProtocolAnalysis& pa : analysis.protocols) {
            std::vector<std::string> cells = {
                value_cell,
                pa.spec.label,
                format_double(pa.outcome.latency_s),
                format_double(pa.outcome.energy_buyer_j),
                format_double(pa.outcome.energy_seller_j),
                format_double(pa.outcome.energy_dlt_j),
                format_double(pa.battery_days),
                format_double(analysis.contention.p_rr),
                format_double(pa.outcome.failure_prob)};
            if (with_sim) {
                CampaignResult campaign =
                    run_campaign(to_sim_config(point.config, pa.spec));
                cells.push_back(format_double(campaign.totals.latency.mean));
                cells.push_back(
                    format_double(campaign.totals.latency.ci95_halfwidth()));
            }
            trades.row(cells);
            ++report.trade_rows;
        }
    }
    report.files = {trades.path(), access.path(), dlt.path()};
    return report;
}

std::vector<EngineComparison> compare_engines(const ScenarioConfig& cfg)
{
    ScenarioAnalysis analysis = analyze(cfg);
    std::vector<EngineComparison> out;
    for (const ProtocolAnalysis& pa : analysis.protocols) {
        AnalyticReference ref = reference_for(analysis, pa);
        CampaignResult campaign = run_campaign(to_sim_config(cfg, pa.spec), &ref);
        out.push_back({pa.spec.label, campaign.comparison});
    }
    return out;
}

std::string write_comparison(const std::string& output_dir,
                             const std::vector<EngineComparison>& comparisons)
{
    std::filesystem::create_directories(output_dir);
    CsvFile csv(join_path(output_dir, "comparison.csv"),
                {"protocol", "metric", "analytic", "sim_mean",
                 "sim_ci_halfwidth", "rel_error", "within_ci"});
    for (const EngineComparison& ec : comparisons) {
        for (const ComparisonRow& row : ec.rows) {
            csv.row({ec.protocol, row.metric, format_double(row.analytic),
                     format_double(row.sim_mean),
                     format_double(row.sim_ci_halfwidth),
                     format_double(row.rel_error), flag(row.within_ci)});
        }
    }
    return csv.path();
}

const std::vector<ReferenceCost>& reference_costs()
{
    static const std::vector<ReferenceCost> costs = {
        {"GT", 1.2e-4, 1132443, 0.2862},
        {"BoD", 1.3e-4, 1268369, 0.2879},
        {"SoD", 1.5e-4, 1582349, 0.3783},
    };
    return costs;
}

std::string write_reference_costs(const std::string& output_dir)
{
    std::filesystem::create_directories(output_dir);
    CsvFile csv(join_path(output_dir, "reference_costs.csv"),
                {"protocol", "ether", "gas", "usd"});
    for (const ReferenceCost& c : reference_costs()) {
        csv.row({c.protocol, format_double(c.deploy_ether),
                 std::to_string(c.gas_units), format_double(c.usd)});
    }
    return csv.path();
}

std::vector<std::string> config_warnings(const ScenarioConfig& cfg)
{
    std::vector<std::string> warnings;
    if (cfg.dlt.n_miners > 20)
        warnings.push_back(
            "dlt.n_miners above 20 is outside the range the verification model "
            "was validated on");
    double p_d =
        resolved_delivery_probability(cfg.radio, cfg.p_d_mode, cfg.p_d_distance_m);
    if (p_d <= 0.0)
        warnings.push_back(
            "delivery probability is zero for this geometry; every request is "
            "lost and no trade can complete");
    return warnings;
}

} // namespace nbtrade
