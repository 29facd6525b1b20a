#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "mfg/app/artifacts.hpp"
#include "mfg/app/pipeline.hpp"
#include "mfg/app/validation.hpp"

using namespace mfg;
using namespace mfg::app;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
    const fs::path p = fs::temp_directory_path() / ("mfg_test_app_" + name);
    fs::remove_all(p);
    return p;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

std::vector<std::string> lines(const fs::path& p) {
    std::vector<std::string> out;
    std::ifstream in(p);
    for (std::string l; std::getline(in, l);) out.push_back(l);
    return out;
}

const CheckResult* find(const std::vector<CheckResult>& rs, const std::string& prefix) {
    for (const auto& r : rs) {
        if (r.name.rfind(prefix, 0) == 0) return &r;
    }
    return nullptr;
}

}  // namespace

TEST_CASE("defaults are the benchmark experiment") {
    const RunConfig c;
    CHECK_NOTHROW(c.validate());
    CHECK(c.population().size() == 25);
    CHECK(c.horizon == 1.0);
    CHECK(c.mu == 0.8);
    CHECK(c.consumption_law == ConsumptionLaw::PaperLiteral);
    CHECK(c.economy().theta_coeff == 1.0);
    CHECK(c.economy().xi_coeff == 0.1);
    CHECK(c.economy().depreciation_rate == 0.5);
}

TEST_CASE("key-value parsing") {
    const auto kv = parse_key_value_text("# comment\n  mu = 0.5 \n\nconsumption_law=legendre # tail\n");
    CHECK(kv.at("mu") == "0.5");
    CHECK(kv.at("consumption_law") == "legendre");
    const RunConfig c = RunConfig::from_key_values(kv);
    CHECK(c.mu == 0.5);
    CHECK(c.consumption_law == ConsumptionLaw::LegendreExact);
    CHECK_THROWS_AS(RunConfig::from_key_values({{"no_such_key", "1"}}), ConfigError);
    CHECK_THROWS_AS(RunConfig::from_key_values({{"mu", "fast"}}), ConfigError);

    RunConfig odd;
    odd.mu = 0.1 + 0.2;
    odd.a_range = {0.25, 1.75};
    const RunConfig back = RunConfig::from_key_values(parse_key_value_text(to_key_value_text(odd)));
    CHECK(back.to_key_values() == odd.to_key_values());
    CHECK(back.mu == odd.mu);
}

TEST_CASE("invalid configurations are rejected") {
    RunConfig c;
    c.depreciation_rate = -0.5;
    CHECK_THROWS_AS(c.validate(), ConfigError);
    CHECK_THROWS_AS(run_validation(c), ConfigError);
    c = {};
    c.n_steps = 200;
    CHECK_THROWS_AS(c.validate(), ConfigError);
    c = {};
    c.agents_side = 0;
    CHECK_THROWS_AS(c.validate(), ConfigError);
}

TEST_CASE("decimal formatting") {
    CHECK(format_decimal(0.0) == "0");
    CHECK(format_decimal(1.0) == "1.00000000000");
    CHECK(format_decimal(-0.5) == "-0.500000000000");
    CHECK(format_decimal(1.0 / 3.0) == "0.333333333333");
    CHECK(format_decimal(123456.0) == "123456.000000");
    CHECK(format_decimal(1e-6) == "0.00000100000000000");
    CHECK(format_decimal(1e15).find('e') == std::string::npos);
}

TEST_CASE("an absurd finite-difference step fails the gradient suite") {
    CHECK_FALSE(check_gradient(Economy::benchmark(), 1.0).passed);
    CHECK(check_gradient(Economy::benchmark(), 1e-6).passed);
}

TEST_CASE("consumption table rows") {
    const auto rows = consumption_table(1.0, 3.0, 3);
    REQUIRE(rows.size() == 3);
    CHECK(rows[1].q_a == 2.0);
    CHECK(rows[1].paper == 0.0);
    CHECK(rows[1].legendre == 0.0);
    CHECK(rows[2].paper == doctest::Approx(-5.0 / 144.0));
    CHECK(rows[2].legendre == doctest::Approx(-0.5));
    for (const auto& r : consumption_table(0.1, 10.0, 100)) CHECK(r.legendre_deviation < 1e-6);
    CHECK_THROWS(consumption_table(0.0, 1.0, 10));
    CHECK_THROWS(consumption_table(2.0, 1.0, 10));
    const std::string text = format_consumption_table(rows);
    CHECK(text.rfind("q_a,paper_c,legendre_c,brute_force_c,paper_deviation,legendre_deviation\n", 0) == 0);
}

TEST_CASE("single-agent run writes the artifacts with stable headers") {
    RunConfig c;
    c.agents_side = 1;
    c.output_dir = scratch("single").string();
    c.emit_plot_data = true;
    const RunOutcome o = run(c);
    CHECK(o.exit_code == 0);
    const fs::path dir(c.output_dir);
    const auto price = lines(dir / "price.csv");
    CHECK(price.front() == kPriceHeader);
    CHECK(price.size() == static_cast<std::size_t>(c.price_samples) + 2);
    const auto traj = lines(dir / "trajectories.csv");
    CHECK(traj.front() == kTrajectoriesHeader);
    CHECK(traj.size() == static_cast<std::size_t>(c.n_steps) + 2);
    const auto av = lines(dir / "averages.csv");
    CHECK(av.front() == kAveragesHeader);
    CHECK(av.size() == static_cast<std::size_t>(c.n_steps) + 2);
    for (const char* f : {"plot_price.csv", "plot_trajectories.csv", "plot_abar.csv", "plot_kbar.csv"}) {
        CHECK(fs::exists(dir / f));
    }
    const auto report = nlohmann::json::parse(slurp(dir / "report.json"));
    CHECK(report["converged"] == true);
    CHECK(report["agents"] == 1);
    CHECK(report["config.agents_side"] == "1");
}

TEST_CASE("zero price budget echoes the initial curve") {
    RunConfig c;
    c.agents_side = 2;
    c.max_price_iters = 0;
    c.output_dir = scratch("zero").string();
    const RunOutcome o = run(c);
    CHECK(o.exit_code == 1);
    CHECK(o.report["converged"] == false);
    CHECK(o.report["iterations"] == 0);
    const auto price = lines(fs::path(c.output_dir) / "price.csv");
    for (std::size_t i = 1; i < price.size(); ++i) {
        CHECK(price[i].substr(price[i].find(',') + 1) == "1.00000000000");
    }
}

TEST_CASE("agent failure still writes a diagnostic report") {
    RunConfig c;
    c.agents_side = 1;
    c.shooting.max_newton_iters = 1;
    c.shooting.residual_tol = 1e-15;
    c.output_dir = scratch("fail").string();
    const RunOutcome o = run(c);
    CHECK(o.exit_code == 2);
    CHECK(o.report.contains("error"));
    CHECK(fs::exists(fs::path(c.output_dir) / "report.json"));
    CHECK(fs::exists(fs::path(c.output_dir) / "price.csv"));
}

TEST_CASE("re-running from report.json reproduces the CSVs byte for byte") {
    RunConfig c;
    c.agents_side = 2;
    c.mu = 0.7;
    c.output_dir = scratch("first").string();
    REQUIRE(run(c).exit_code == 0);

    RunConfig again = load_config_file((fs::path(c.output_dir) / "report.json").string());
    CHECK(again.to_key_values() == c.to_key_values());
    again.output_dir = scratch("second").string();
    REQUIRE(run(again).exit_code == 0);
    for (const char* f : {"price.csv", "trajectories.csv", "averages.csv"}) {
        CHECK(slurp(fs::path(c.output_dir) / f) == slurp(fs::path(again.output_dir) / f));
    }
}

TEST_CASE("validation suites pass on the defaults") {
    const auto results = run_validation(RunConfig{});
    for (const auto& r : results) {
        INFO(r.name << ": " << r.value << " vs " << r.threshold << " " << r.detail);
        CHECK(r.passed);
    }
    CHECK(find(results, "gradient") != nullptr);
    CHECK(find(results, "transport") != nullptr);
}
