#include <doctest.h>

#include <fstream>
#include <sstream>
#include <string>

#include "stakesim/config.hpp"

using namespace stakesim;

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

const char* kMinimal =
    "total_supply = 1.2e8\n"
    "investor_share = 0.1\n"
    "mu_r = 0.05\n"
    "sigma_r = 0.30\n"
    "c = 150\n"
    "gamma = 2e6\n";

}  // namespace

TEST_CASE("shipped table1.cfg parses to the calibration") {
    const RunConfig cfg = parse_config(read_file(std::string(STAKESIM_SOURCE_DIR) + "/table1.cfg"));
    CHECK(cfg.total_supply == 1.2e8);
    CHECK(cfg.investor_share == 0.1);
    CHECK(cfg.mu_r == 0.05);
    CHECK(cfg.sigma_r == 0.30);
    CHECK(cfg.c == 150.0);
    CHECK(cfg.gamma == 2e6);
    CHECK(cfg.horizon == 10000);
    CHECK(cfg.seed == 42);
    CHECK(cfg.return_model == ReturnModel::Kind::Normal);
    CHECK(cfg.record_every == 1);

    const HeterogeneousParams p = cfg.het_params();
    CHECK(p.W_i == 1.2e7);
    CHECK(p.W_c == 1.08e8);
    CHECK(p.sigma_r_sq == doctest::Approx(0.09).epsilon(1e-14));
}

TEST_CASE("defaults apply only to non-economic keys") {
    const RunConfig cfg = parse_config(kMinimal);
    CHECK(cfg.horizon == 10000);
    CHECK(cfg.seed == 42);
    CHECK(cfg.record_every == 1);
    CHECK(!cfg.tol.has_value());
    CHECK(cfg.eps_critical == 1e-12);
    CHECK(cfg.format == OutputFormat::Csv);
    CHECK(cfg.path == "-");
    CHECK(cfg.precision == 0);
    CHECK(cfg.mu_F == 0.0);
    CHECK(cfg.sigma_F == 0.0);
}

TEST_CASE("empty input lists every missing economic key") {
    try {
        parse_config("");
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        const std::string msg = e.what();
        for (const char* key :
             {"total_supply", "investor_share", "mu_r", "sigma_r", "c", "gamma"}) {
            CHECK(msg.find(key) != std::string::npos);
        }
    }
}

TEST_CASE("range violations name the key and line") {
    const char* negative_sigma =
        "total_supply = 1.2e8\n"
        "investor_share = 0.1\n"
        "mu_r = 0.05\n"
        "sigma_r = -0.1\n"
        "c = 150\n"
        "gamma = 2e6\n";
    try {
        parse_config(negative_sigma);
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        const std::string msg = e.what();
        CHECK(msg.find("sigma_r") != std::string::npos);
        CHECK(msg.find("line 4") != std::string::npos);
    }
}

TEST_CASE("unknown and duplicate keys are rejected") {
    CHECK_THROWS_WITH_AS(parse_config(std::string(kMinimal) + "sigma = 0.3\n"),
                         doctest::Contains("unknown key 'sigma'"), ConfigError);
    CHECK_THROWS_WITH_AS(parse_config(std::string(kMinimal) + "c = 151\n"),
                         doctest::Contains("duplicate key 'c'"), ConfigError);
}

TEST_CASE("malformed lines and values are rejected") {
    CHECK_THROWS_AS(parse_config(std::string(kMinimal) + "horizon\n"), ConfigError);
    CHECK_THROWS_AS(parse_config(std::string(kMinimal) + "horizon = soon\n"), ConfigError);
    CHECK_THROWS_AS(parse_config(std::string(kMinimal) + "horizon = 0\n"), ConfigError);
    CHECK_THROWS_AS(parse_config(std::string(kMinimal) + "return_model = brownian\n"),
                    ConfigError);
    CHECK_THROWS_AS(parse_config(std::string(kMinimal) + "format = xml\n"), ConfigError);
    CHECK_THROWS_AS(parse_config(std::string(kMinimal) + "precision = 99\n"), ConfigError);
    CHECK_THROWS_AS(parse_config(std::string(kMinimal) + "investor_share = 1.5\n"),
                    ConfigError);
}

TEST_CASE("comments and spacing are tolerated") {
    const RunConfig cfg = parse_config(
        "# leading comment\n"
        "\n"
        "total_supply = 1.2e8   # trailing comment\n"
        "investor_share=0.1\n"
        "mu_r\t=\t0.05\n"
        "sigma_r = 0.30\n"
        "c = 150\n"
        "gamma = 2e6\n"
        "seed = 123456789012345\n"
        "tol = 1e-9\n");
    CHECK(cfg.total_supply == 1.2e8);
    CHECK(cfg.seed == 123456789012345ULL);
    REQUIRE(cfg.tol.has_value());
    CHECK(*cfg.tol == 1e-9);
}

TEST_CASE("config maps onto simulation input") {
    RunConfig cfg = parse_config(std::string(kMinimal) + "return_model = deterministic\n");
    const SimConfig sim = cfg.sim_config();
    CHECK(sim.params.W_i == 1.2e7);
    CHECK(sim.return_model.kind == ReturnModel::Kind::Deterministic);
    CHECK(sim.return_model.mu_r == 0.05);
    CHECK(sim.tol == 1e-10);

    const MarketParams market = cfg.market_params();
    CHECK(market.sigma_r_sq == doctest::Approx(0.09).epsilon(1e-14));
    CHECK(market.mu_F == 0.0);
}
