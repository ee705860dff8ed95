#include "nbtrade/cli.hpp"

#include "nbtrade/csv.hpp"
#include "nbtrade/errors.hpp"
#include "nbtrade/scenario.hpp"

#include <CLI11.hpp>

#include <iomanip>
#include <ostream>
#include <string>

namespace nbtrade {

namespace {

EngineMode parse_engine(const std::string& name)
{
    if (name == "analytic")
        return EngineMode::analytic;
    if (name == "sim")
        return EngineMode::sim;
    return EngineMode::both;
}

void print_point_summary(std::ostream& out, const ScenarioConfig& cfg)
{
    ScenarioAnalysis analysis = analyze(cfg);
    out << "p_d " << format_double(analysis.p_d) << ", offered load "
        << format_double(analysis.offered_load_per_period)
        << " per period, p_rr " << format_double(analysis.contention.p_rr)
        << "\n";
    out << "verification round: " << format_double(analysis.dlt_round.total_latency_s)
        << " s, " << format_double(analysis.dlt_round.energy_j) << " J\n";
    for (const ProtocolAnalysis& pa : analysis.protocols) {
        out << "  " << std::left << std::setw(6) << pa.spec.label << std::right
            << " latency " << format_double(pa.outcome.latency_s) << " s"
            << ", device energy " << format_double(pa.outcome.device_energy_j())
            << " J, verification energy "
            << format_double(pa.outcome.energy_dlt_j) << " J, battery "
            << format_double(pa.battery_days) << " days, failure prob "
            << format_double(pa.outcome.failure_prob) << "\n";
    }
}

int do_run(std::ostream& out, std::ostream& err, const std::string& scenario_name,
           const std::string& config_path, const std::string& sweep_spec,
           const std::string& output_dir, bool have_seed, std::uint64_t seed,
           bool have_reps, int replications, bool have_engine,
           const std::string& engine_name)
{
    ScenarioConfig base =
        config_path.empty() ? default_config() : load_config(config_path);
    Scenario scenario = make_scenario(scenario_name, base);
    if (!sweep_spec.empty()) {
        scenario.points = sweep_points(base, sweep_spec);
        scenario.channel_table = false;
    }
    if (have_engine)
        scenario.engine = parse_engine(engine_name);
    scenario.output_dir = output_dir;
    for (SweepPoint& point : scenario.points) {
        if (have_seed)
            point.config.sim.seed = seed;
        if (have_reps)
            point.config.sim.n_replications = replications;
    }

    for (const std::string& w : config_warnings(scenario.points.front().config))
        err << "warning: " << w << "\n";

    ScenarioReport report = run_scenario(scenario);
    out << "scenario " << scenario.name << ": " << scenario.points.size()
        << (scenario.points.size() == 1 ? " point, " : " points, ")
        << report.trade_rows << " rows\n";
    for (const std::string& f : report.files)
        out << "wrote " << f << "\n";
    if (scenario.points.size() == 1 && !scenario.channel_table)
        print_point_summary(out, scenario.points.front().config);
    return 0;
}

int do_compare(std::ostream& out, const std::string& config_path,
               const std::string& output_dir, bool have_seed, std::uint64_t seed,
               bool have_reps, int replications)
{
    ScenarioConfig cfg =
        config_path.empty() ? default_config() : load_config(config_path);
    if (have_seed)
        cfg.sim.seed = seed;
    if (have_reps)
        cfg.sim.n_replications = replications;

    std::vector<EngineComparison> comparisons = compare_engines(cfg);
    out << "analytic vs simulation, " << cfg.sim.n_replications
        << " replications, seed " << cfg.sim.seed << "\n";
    for (const EngineComparison& ec : comparisons) {
        out << ec.protocol << "\n";
        for (const ComparisonRow& row : ec.rows) {
            out << "  " << std::left << std::setw(18) << row.metric << std::right
                << " analytic " << format_double(row.analytic) << ", sim "
                << format_double(row.sim_mean) << " +- "
                << format_double(row.sim_ci_halfwidth) << ", rel err "
                << format_double(row.rel_error)
                << (row.within_ci ? "" : "  [outside 95% CI]") << "\n";
        }
    }
    out << "wrote " << write_comparison(output_dir, comparisons) << "\n";
    return 0;
}

int do_reference_costs(std::ostream& out, const std::string& output_dir)
{
    out << "published smart-contract deployment costs (no chain execution)\n";
    for (const ReferenceCost& c : reference_costs()) {
        out << "  " << std::left << std::setw(6) << c.protocol << std::right
            << " " << format_double(c.deploy_ether) << " Ether, " << c.gas_units
            << " gas, $" << format_double(c.usd) << "\n";
    }
    out << "wrote " << write_reference_costs(output_dir) << "\n";
    return 0;
}

} // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out,
            std::ostream& err)
{
    CLI::App app{
        "Analytic and Monte Carlo evaluation of DLT data-trading protocols "
        "over NB-IoT"};
    app.require_subcommand(0, 1);

    std::string scenario_name = "default";
    std::string config_path;
    std::string sweep_spec;
    std::string output_dir = "out";
    std::string engine_name = "analytic";
    std::uint64_t seed = 0;
    int replications = 0;

    CLI::App* run = app.add_subcommand(
        "run", "evaluate a bundled scenario or a custom sweep");
    run->add_option("scenario", scenario_name,
                    "bundled scenario name (see `scenarios`)");
    run->add_option("--config", config_path, "configuration file (JSON)");
    run->add_option("--seed", seed, "simulation seed override");
    run->add_option("--replications", replications,
                    "simulation replication count override");
    run->add_option("--engine", engine_name, "analytic, sim, or both")
        ->check(CLI::IsMember({"analytic", "sim", "both"}));
    run->add_option("--output", output_dir, "output directory");
    run->add_option("--sweep", sweep_spec,
                    "section.field=v1,v2,... replacing the scenario's points");

    CLI::App* compare = app.add_subcommand(
        "compare", "run both engines on one configuration and tabulate");
    compare->add_option("--config", config_path, "configuration file (JSON)");
    compare->add_option("--seed", seed, "simulation seed override");
    compare->add_option("--replications", replications,
                        "simulation replication count override");
    compare->add_option("--output", output_dir, "output directory");

    CLI::App* costs = app.add_subcommand(
        "reference-costs", "emit the published smart-contract cost table");
    costs->add_option("--output", output_dir, "output directory");

    CLI::App* scenarios =
        app.add_subcommand("scenarios", "list the bundled scenarios");

    CLI::App* defaults = app.add_subcommand(
        "defaults", "print the default configuration as JSON");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            out << app.help();
            return 0;
        }
        err << "usage error: " << e.what() << "\n";
        return 2;
    }

    try {
        if (run->parsed())
            return do_run(out, err, scenario_name, config_path, sweep_spec,
                          output_dir, run->count("--seed") > 0, seed,
                          run->count("--replications") > 0, replications,
                          run->count("--engine") > 0, engine_name);
        if (compare->parsed())
            return do_compare(out, config_path, output_dir,
                              compare->count("--seed") > 0, seed,
                              compare->count("--replications") > 0, replications);
        if (costs->parsed())
            return do_reference_costs(out, output_dir);
        if (scenarios->parsed()) {
            for (const std::string& name : scenario_names())
                out << std::left << std::setw(10) << name << std::right
                    << scenario_description(name) << "\n";
            return 0;
        }
        if (defaults->parsed()) {
            out << to_json(default_config()).dump(2) << "\n";
            return 0;
        }
        out << app.help();
        return 0;
    } catch (const ConfigError& e) {
        err << "config error: " << e.what() << "\n";
        return 2;
    } catch (const UnstableQueueError& e) {
        err << "stability error: " << e.what() << "\n";
        return 3;
    } catch (const NumericError& e) {
        err << "numeric error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
}

} // namespace nbtrade
