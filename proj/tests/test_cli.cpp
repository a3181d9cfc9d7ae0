#include <doctest.h>

#include <cstdio>
#include <unistd.h>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "stakesim/cli.hpp"
#include "stakesim/heterogeneous.hpp"
#include "stakesim/output.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

int run(std::vector<std::string> args) {
    args.insert(args.begin(), "stakesim");
    std::vector<const char*> argv;
    argv.reserve(args.size());
    for (const std::string& a : args) argv.push_back(a.c_str());
    return stakesim::run_command(static_cast<int>(argv.size()), argv.data());
}

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() / ("stakesim_test_" + std::to_string(::getpid()));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    std::string file(const std::string& name) const { return (path / name).string(); }
};

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    REQUIRE(out.good());
    out << content;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

std::string table1_path() { return std::string(STAKESIM_SOURCE_DIR) + "/table1.cfg"; }

}  // namespace

TEST_CASE("format_double round-trips and honors precision") {
    using stakesim::format_double;
    for (double v : {0.1, 1.0 / 3.0, 6025.727862408281, 1.08e8, -4e7}) {
        CHECK(std::stod(format_double(v)) == v);
    }
    CHECK(format_double(0.123456789, 3) == "0.123");
    CHECK(format_double(std::numeric_limits<double>::quiet_NaN()) == "nan");
    CHECK(stakesim::csv_escape("a,b") == "\"a,b\"");
    CHECK(stakesim::csv_escape("plain") == "plain");
}

TEST_CASE("solve-heterogeneous JSON matches the library") {
    TempDir tmp;
    const std::string out_path = tmp.file("het.json");
    CHECK(run({"solve-heterogeneous", "--config", table1_path(), "--format", "json",
               "--output", out_path}) == 0);
    const json j = json::parse(read_file(out_path));
    REQUIRE(j.contains("meta"));
    REQUIRE(j.contains("result"));

    const auto eq =
        stakesim::solve_heterogeneous(stakesim::from_supply(1.2e8, 0.1, 2e6, 150.0, 0.05, 0.09));
    CHECK(j["result"]["S"].get<double>() == eq.S);
    CHECK(j["result"]["S_c"].get<double>() == eq.S_c);
    CHECK(j["result"]["y"].get<double>() == eq.y);
    CHECK(j["result"]["corner"].get<bool>() == eq.corner);
    CHECK(j["meta"]["command"] == "solve-heterogeneous");
    CHECK(j["meta"]["artifact"].get<std::string>().find("stakesim") != std::string::npos);
}

TEST_CASE("solve-homogeneous reports equilibrium and regime") {
    TempDir tmp;
    const std::string out_path = tmp.file("hom.json");
    CHECK(run({"solve-homogeneous", "--config", table1_path(), "--wealth", "1e12",
               "--format", "json", "--output", out_path}) == 0);
    const json j = json::parse(read_file(out_path));
    CHECK(j["result"]["S_star"].get<double>() ==
          doctest::Approx(446937462192.4429).epsilon(1e-10));
    CHECK(j["result"]["regime"] == "variance-dominated");
    CHECK(j["result"]["delta"].get<double>() == doctest::Approx(-0.04).epsilon(1e-12));
    CHECK(j["result"]["boundary"].get<bool>() == false);
}

TEST_CASE("critical sweep reports the two-thirds exponent") {
    TempDir tmp;
    const std::string cfg = tmp.file("critical.cfg");
    write_file(cfg,
               "total_supply = 1.2e8\ninvestor_share = 0.1\nmu_r = 0.09\n"
               "sigma_r = 0.30\nc = 150\ngamma = 2e6\n");
    const std::string out_path = tmp.file("sweep.json");
    CHECK(run({"sweep-wealth", "--config", cfg, "--format", "json", "--output", out_path}) ==
          0);
    const json j = json::parse(read_file(out_path));
    CHECK(j["fitted_exponent"].get<double>() == doctest::Approx(0.667).epsilon(0.01));
}

TEST_CASE("simulate CSV: fixed column order, quiet stream is pure data") {
    TempDir tmp;
    const std::string out_path = tmp.file("run.csv");
    CHECK(run({"simulate", "--config", table1_path(), "--deterministic", "--steps", "50",
               "--quiet", "--output", out_path}) == 0);
    const std::string data = read_file(out_path);

    std::istringstream lines(data);
    std::string header;
    std::getline(lines, header);
    CHECK(header == "t,W_i,W_c,S,S_i,S_c,L_c,y,alpha,R_t,corner");

    int rows = 0;
    std::string line;
    const long expected_commas = std::count(header.begin(), header.end(), ',');
    while (std::getline(lines, line)) {
        REQUIRE(!line.empty());
        CHECK(line[0] != '#');
        CHECK(std::count(line.begin(), line.end(), ',') == expected_commas);
        ++rows;
    }
    CHECK(rows == 51);
}

TEST_CASE("simulate output is byte-identical across runs") {
    TempDir tmp;
    const std::string a = tmp.file("a.csv");
    const std::string b = tmp.file("b.csv");
    for (const std::string& path : {a, b}) {
        CHECK(run({"simulate", "--config", table1_path(), "--steps", "400", "--seed", "99",
                   "--output", path}) == 0);
    }
    CHECK(read_file(a) == read_file(b));
}

TEST_CASE("seed and return-model overrides change the data") {
    TempDir tmp;
    const std::string a = tmp.file("a.csv");
    const std::string b = tmp.file("b.csv");
    CHECK(run({"simulate", "--config", table1_path(), "--steps", "100", "--seed", "1",
               "--quiet", "--output", a}) == 0);
    CHECK(run({"simulate", "--config", table1_path(), "--steps", "100", "--seed", "2",
               "--quiet", "--output", b}) == 0);
    CHECK(read_file(a) != read_file(b));

    const std::string det1 = tmp.file("det1.csv");
    const std::string det2 = tmp.file("det2.csv");
    CHECK(run({"simulate", "--config", table1_path(), "--steps", "100", "--seed", "1",
               "--deterministic", "--quiet", "--output", det1}) == 0);
    CHECK(run({"simulate", "--config", table1_path(), "--steps", "100", "--seed", "2",
               "--deterministic", "--quiet", "--output", det2}) == 0);
    CHECK(read_file(det1) == read_file(det2));  // seed is irrelevant without noise
}

TEST_CASE("simulate JSON carries column arrays and diagnostics") {
    TempDir tmp;
    const std::string out_path = tmp.file("run.json");
    CHECK(run({"simulate", "--config", table1_path(), "--deterministic", "--steps", "300",
               "--format", "json", "--output", out_path}) == 0);
    const json j = json::parse(read_file(out_path));
    for (const char* col : {"t", "W_i", "W_c", "S", "S_i", "S_c", "L_c", "y", "alpha", "R_t",
                            "corner"}) {
        REQUIRE(j["columns"].contains(col));
        CHECK(j["columns"][col].size() == 301);
    }
    CHECK(j["diagnostics"]["extinction_time"].get<long>() == 104);
    CHECK(j["columns"]["R_t"].back().is_null());  // no draw after the final state
    CHECK(j["meta"]["rng"] == "mt19937_64+box-muller");
}

TEST_CASE("sweep subcommands emit their schemas") {
    TempDir tmp;
    const std::string w_path = tmp.file("w.csv");
    CHECK(run({"sweep-wealth", "--config", table1_path(), "--quiet", "--output", w_path}) ==
          0);
    std::istringstream lines(read_file(w_path));
    std::string header;
    std::getline(lines, header);
    CHECK(header == "W,S_star,ratio,w_star,y_star,boundary,regime,residual,ok,error");

    const std::string d_path = tmp.file("d.json");
    CHECK(run({"sweep-delta", "--config", table1_path(), "--format", "json", "--wealth",
               "1e10", "--delta-steps", "5", "--output", d_path}) == 0);
    const json j = json::parse(read_file(d_path));
    REQUIRE(j["rows"].size() == 5);
    CHECK(j["rows"][0].contains("dS_dDelta_closed"));
    CHECK(j["rows"][0].contains("dS_dDelta_fd"));
}

TEST_CASE("ensemble summary serializes") {
    TempDir tmp;
    const std::string path = tmp.file("ens.json");
    CHECK(run({"ensemble", "--config", table1_path(), "--seeds", "4", "--steps", "300",
               "--format", "json", "--output", path}) == 0);
    const json j = json::parse(read_file(path));
    CHECK(j["summary"]["n_seeds"] == 4);
    CHECK(j["summary"]["ci_method"].get<std::string>().find("1.96") != std::string::npos);
    CHECK(j["meta"]["seed_split"].get<std::string>().find("splitmix64") !=
          std::string::npos);
}

TEST_CASE("exit codes distinguish config, solver, and I/O failures") {
    TempDir tmp;

    // 1: invalid config content (range violation).
    const std::string bad_cfg = tmp.file("bad.cfg");
    write_file(bad_cfg,
               "total_supply = 1.2e8\ninvestor_share = 0.1\nmu_r = 0.05\n"
               "sigma_r = -0.1\nc = 150\ngamma = 2e6\n");
    CHECK(run({"solve-heterogeneous", "--config", bad_cfg}) == 1);

    // 1: missing config file (flag validation).
    CHECK(run({"solve-heterogeneous", "--config", tmp.file("absent.cfg")}) == 1);

    // 2: solver domain error (fee regime violated at tiny wealth).
    const std::string fee_cfg = tmp.file("fee.cfg");
    write_file(fee_cfg,
               "total_supply = 1.2e8\ninvestor_share = 0.1\nmu_r = 0.05\n"
               "sigma_r = 0.30\nc = 150\ngamma = 2e6\nmu_F = 1e-6\nsigma_F = 10\n");
    CHECK(run({"solve-homogeneous", "--config", fee_cfg, "--wealth", "1"}) == 2);

    // 3: unwritable output target.
    CHECK(run({"solve-heterogeneous", "--config", table1_path(), "--output",
               tmp.file("no/such/dir/out.csv")}) == 3);

    // 0 with help-style parse exit is CLI11's business; plain bad flag is 1.
    CHECK(run({"simulate", "--config", table1_path(), "--steps", "0"}) == 1);
    CHECK(run({"no-such-command"}) == 1);
}

TEST_CASE("precision key rounds serialized values") {
    TempDir tmp;
    const std::string cfg = tmp.file("prec.cfg");
    write_file(cfg,
               "total_supply = 1.2e8\ninvestor_share = 0.1\nmu_r = 0.05\n"
               "sigma_r = 0.30\nc = 150\ngamma = 2e6\nprecision = 4\n");
    const std::string path = tmp.file("out.csv");
    CHECK(run({"solve-heterogeneous", "--config", cfg, "--quiet", "--output", path}) == 0);
    std::istringstream lines(read_file(path));
    std::string header, row;
    std::getline(lines, header);
    std::getline(lines, row);
    CHECK(row.substr(0, row.find(',')) == "3.631e+07");
}
