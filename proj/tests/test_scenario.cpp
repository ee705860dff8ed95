#include "nbtrade/scenario.hpp"

#include "nbtrade/cli.hpp"
#include "nbtrade/errors.hpp"

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

using namespace nbtrade;

namespace {

namespace fs = std::filesystem;

struct TempDir {
    fs::path path;

    explicit TempDir(const std::string& tag)
        : path(fs::temp_directory_path() / ("nbtrade_test_" + tag))
    {
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }

    std::string str() const { return path.string(); }
    std::string file(const char* name) const { return (path / name).string(); }
};

std::string slurp(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

std::vector<std::vector<std::string>> read_csv(const std::string& path)
{
    std::vector<std::vector<std::string>> rows;
    std::istringstream in(slurp(path));
    std::string line;
    while (std::getline(in, line)) {
        std::vector<std::string> cells;
        std::istringstream ls(line);
        std::string cell;
        while (std::getline(ls, cell, ','))
            cells.push_back(cell);
        rows.push_back(cells);
    }
    return rows;
}

int column(const std::vector<std::string>& header, const std::string& name)
{
    for (std::size_t i = 0; i < header.size(); ++i)
        if (header[i] == name)
            return static_cast<int>(i);
    return -1;
}

int cli(const std::vector<std::string>& args, std::string* out_text = nullptr,
        std::string* err_text = nullptr)
{
    std::vector<const char*> argv;
    argv.push_back("nbtrade");
    for (const std::string& a : args)
        argv.push_back(a.c_str());
    std::ostringstream out;
    std::ostringstream err;
    int rc = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
    if (out_text)
        *out_text = out.str();
    if (err_text)
        *err_text = err.str();
    return rc;
}

} // namespace

TEST_CASE("miner sweep produces the full protocol grid")
{
    TempDir dir("fig6");
    Scenario sc = make_scenario("fig6", default_config());
    CHECK(sc.points.size() == 20);
    sc.output_dir = dir.str();
    ScenarioReport report = run_scenario(sc);
    CHECK(report.trade_rows == 60);
    auto rows = read_csv(dir.file("trades.csv"));
    REQUIRE(rows.size() == 61);
    CHECK(rows.front() ==
          std::vector<std::string>{"sweep_value", "protocol", "latency_s",
                                   "energy_buyer_j", "energy_seller_j",
                                   "energy_dlt_j", "battery_days", "p_rr",
                                   "failure_prob"});

    int lat = column(rows.front(), "latency_s");
    int proto = column(rows.front(), "protocol");
    for (std::size_t i = 1; i < rows.size(); i += 3) {
        CHECK(rows[i][proto] == "GT");
        CHECK(rows[i + 1][proto] == "BoD");
        CHECK(rows[i + 2][proto] == "SoD");
        CHECK(std::stod(rows[i][lat]) < std::stod(rows[i + 1][lat]));
        CHECK(std::stod(rows[i + 1][lat]) < std::stod(rows[i + 2][lat]));
    }
    CHECK(fs::exists(dir.file("access.csv")));
    CHECK(fs::exists(dir.file("dlt.csv")));
}

TEST_CASE("session-rate sweep drains the battery monotonically")
{
    TempDir dir("fig8");
    Scenario sc = make_scenario("fig8", default_config());
    sc.output_dir = dir.str();
    run_scenario(sc);
    auto rows = read_csv(dir.file("trades.csv"));
    REQUIRE(rows.size() == 61);
    int proto = column(rows.front(), "protocol");
    int battery = column(rows.front(), "battery_days");
    std::map<std::string, double> last;
    for (std::size_t i = 1; i < rows.size(); ++i) {
        double days = std::stod(rows[i][battery]);
        auto it = last.find(rows[i][proto]);
        if (it != last.end())
            CHECK(days < it->second);
        last[rows[i][proto]] = days;
    }
}

TEST_CASE("coverage table over distance and path loss")
{
    TempDir dir("fig3");
    Scenario sc = make_scenario("fig3", default_config());
    sc.output_dir = dir.str();
    ScenarioReport report = run_scenario(sc);
    CHECK(report.files.size() == 1);
    auto rows = read_csv(dir.file("channel.csv"));
    REQUIRE(rows.size() == 201);
    CHECK(rows.front() == std::vector<std::string>{"distance_m", "beta", "p_d"});
    double prev = 2.0;
    for (std::size_t i = 1; i < rows.size(); ++i) {
        double p = std::stod(rows[i][2]);
        CHECK(p >= 0.0);
        CHECK(p <= 1.0);
        bool new_beta = rows[i][0] == "10";
        if (!new_beta)
            CHECK(p <= prev);
        prev = p;
    }
}

TEST_CASE("buyer share raises the load and the latency")
{
    TempDir dir("fig7");
    Scenario sc = make_scenario("fig7", default_config());
    sc.output_dir = dir.str();
    run_scenario(sc);
    auto rows = read_csv(dir.file("trades.csv"));
    REQUIRE(rows.size() == 28);
    int lat = column(rows.front(), "latency_s");
    int proto = column(rows.front(), "protocol");
    std::map<std::string, double> last;
    for (std::size_t i = 1; i < rows.size(); ++i) {
        double latency = std::stod(rows[i][lat]);
        auto it = last.find(rows[i][proto]);
        if (it != last.end())
            CHECK(latency > it->second);
        last[rows[i][proto]] = latency;
    }
}

TEST_CASE("custom sweeps patch the configuration")
{
    auto points = sweep_points(default_config(), "dlt.n_miners=5,10");
    REQUIRE(points.size() == 2);
    CHECK(points[0].value == 5.0);
    CHECK(points[0].config.dlt.n_miners == 5);
    CHECK(points[1].config.dlt.n_miners == 10);

    auto rates = sweep_points(default_config(), "traffic.ul_rate_bps=5000,15000");
    CHECK(rates[0].config.traffic.ul_rate_bps == 5000.0);

    CHECK_THROWS_WITH_AS(sweep_points(default_config(), "dlt.bogus=1"),
                         doctest::Contains("does not resolve"), ConfigError);
    CHECK_THROWS_WITH_AS(sweep_points(default_config(), "protocol.selection=1"),
                         doctest::Contains("does not resolve"), ConfigError);
    CHECK_THROWS_AS(sweep_points(default_config(), "dlt.n_miners"), ConfigError);
    CHECK_THROWS_AS(sweep_points(default_config(), "dlt.n_miners=2.5"),
                    ConfigError);
    CHECK_THROWS_AS(sweep_points(default_config(), "dlt.n_miners=abc"),
                    ConfigError);
}

TEST_CASE("simulation columns appear and reruns are byte-identical")
{
    ScenarioConfig base = default_config();
    base.sim.n_replications = 30;

    TempDir first("sim_a");
    Scenario sc = make_scenario("default", base);
    sc.engine = EngineMode::both;
    sc.output_dir = first.str();
    for (SweepPoint& p : sc.points)
        p.config.sim.threads = 1;
    run_scenario(sc);

    auto rows = read_csv(first.file("trades.csv"));
    CHECK(column(rows.front(), "sim_mean") >= 0);
    CHECK(column(rows.front(), "sim_ci_halfwidth") >= 0);

    TempDir second("sim_b");
    Scenario again = make_scenario("default", base);
    again.engine = EngineMode::both;
    again.output_dir = second.str();
    for (SweepPoint& p : again.points)
        p.config.sim.threads = 4;
    run_scenario(again);

    CHECK(slurp(first.file("trades.csv")) == slurp(second.file("trades.csv")));
}

TEST_CASE("reference cost table")
{
    const auto& costs = reference_costs();
    REQUIRE(costs.size() == 3);
    CHECK(costs[0].protocol == "GT");
    CHECK(costs[0].gas_units == 1132443);
    CHECK(costs[0].usd == 0.2862);
    CHECK(costs[1].protocol == "BoD");
    CHECK(costs[1].gas_units == 1268369);
    CHECK(costs[1].usd == 0.2879);
    CHECK(costs[2].protocol == "SoD");
    CHECK(costs[2].gas_units == 1582349);
    CHECK(costs[2].usd == 0.3783);

    TempDir dir("costs");
    std::string path = write_reference_costs(dir.str());
    auto rows = read_csv(path);
    REQUIRE(rows.size() == 4);
    CHECK(rows[0] == std::vector<std::string>{"protocol", "ether", "gas", "usd"});
    CHECK(rows[1][2] == "1132443");
    CHECK(rows[3][3] == "0.3783");
}

TEST_CASE("configuration warnings")
{
    CHECK(config_warnings(default_config()).empty());
    ScenarioConfig cfg = default_config();
    cfg.dlt.n_miners = 25;
    CHECK(!config_warnings(cfg).empty());
}

TEST_CASE("command line contract")
{
    SUBCASE("default run succeeds")
    {
        TempDir dir("cli_run");
        std::string out;
        int rc = cli({"run", "default", "--output", dir.str()}, &out);
        CHECK(rc == 0);
        CHECK(out.find("trades.csv") != std::string::npos);
        CHECK(fs::exists(dir.file("trades.csv")));
    }

    SUBCASE("missing config file")
    {
        std::string err;
        int rc = cli({"run", "default", "--config", "/no/such/file.json"},
                     nullptr, &err);
        CHECK(rc == 2);
        CHECK(err.find("config error") != std::string::npos);
    }

    SUBCASE("a missing field is reported by path with exit 2")
    {
        TempDir dir("cli_bad");
        nlohmann::json j = to_json(default_config());
        j["traffic"].erase("ul_rate_bps");
        std::ofstream(dir.file("bad.json")) << j.dump(2);

        std::string err;
        int rc = cli({"run", "default", "--config", dir.file("bad.json"),
                      "--output", dir.str()},
                     nullptr, &err);
        CHECK(rc == 2);
        CHECK(err.find("traffic.ul_rate_bps") != std::string::npos);
    }

    SUBCASE("an unstable configuration exits 3 naming the utilization")
    {
        TempDir dir("cli_unstable");
        ScenarioConfig cfg = default_config();
        cfg.population.sessions_per_day = 1.0e6;
        std::ofstream(dir.file("hot.json")) << to_json(cfg).dump(2);

        std::string err;
        int rc = cli({"run", "default", "--config", dir.file("hot.json"),
                      "--output", dir.str()},
                     nullptr, &err);
        CHECK(rc == 3);
        CHECK(err.find("utilization") != std::string::npos);
    }

    SUBCASE("unknown scenario and unknown flag exit 2")
    {
        std::string err;
        CHECK(cli({"run", "fig99"}, nullptr, &err) == 2);
        CHECK(err.find("unknown scenario") != std::string::npos);
        CHECK(cli({"run", "default", "--frobnicate"}, nullptr, &err) == 2);
    }

    SUBCASE("sweep flag replaces the point grid")
    {
        TempDir dir("cli_sweep");
        std::string out;
        int rc = cli({"run", "default", "--sweep", "dlt.n_miners=1,2",
                      "--output", dir.str()},
                     &out);
        CHECK(rc == 0);
        CHECK(read_csv(dir.file("trades.csv")).size() == 7);
    }

    SUBCASE("scenario listing and defaults dump")
    {
        std::string out;
        CHECK(cli({"scenarios"}, &out) == 0);
        CHECK(out.find("fig6") != std::string::npos);

        CHECK(cli({"defaults"}, &out) == 0);
        ScenarioConfig parsed = parse_config(nlohmann::json::parse(out));
        CHECK(parsed.traffic.ul_rate_bps == 15000.0);
    }

    SUBCASE("reference costs command")
    {
        TempDir dir("cli_costs");
        std::string out;
        CHECK(cli({"reference-costs", "--output", dir.str()}, &out) == 0);
        CHECK(out.find("1132443") != std::string::npos);
        CHECK(fs::exists(dir.file("reference_costs.csv")));
    }

    SUBCASE("help exits zero")
    {
        std::string out;
        CHECK(cli({"--help"}, &out) == 0);
        CHECK(out.find("run") != std::string::npos);
    }
}
