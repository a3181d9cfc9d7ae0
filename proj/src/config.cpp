#include "stakesim/config.hpp"

#include <charconv>
#include <cmath>
#include <map>
#include <set>
#include <vector>

namespace stakesim {

HeterogeneousParams RunConfig::het_params() const {
    return from_supply(total_supply, investor_share, gamma, c, mu_r, sigma_r * sigma_r);
}

MarketParams RunConfig::market_params() const {
    MarketParams p{mu_r, sigma_r * sigma_r, c, mu_F, sigma_F * sigma_F};
    p.validate();
    return p;
}

SimConfig RunConfig::sim_config() const {
    SimConfig cfg;
    cfg.params = het_params();
    cfg.horizon = horizon;
    cfg.seed = seed;
    cfg.return_model = return_model == ReturnModel::Kind::Normal
                           ? ReturnModel::normal(mu_r, sigma_r)
                           : ReturnModel::deterministic(mu_r);
    cfg.record_every = record_every;
    cfg.tol = tol.value_or(1e-10);
    return cfg;
}

namespace {

struct RawEntry {
    std::string value;
    int line;
};

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) {
        s.remove_prefix(1);
    }
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
        s.remove_suffix(1);
    }
    return s;
}

[[noreturn]] void fail(const std::string& key, int line, const std::string& what) {
    throw ConfigError("config: key '" + key + "' (line " + std::to_string(line) + "): " + what);
}

double parse_double(const std::string& key, const RawEntry& e) {
    double v = 0.0;
    const char* begin = e.value.data();
    const char* end = begin + e.value.size();
    auto [ptr, ec] = std::from_chars(begin, end, v);
    if (ec != std::errc{} || ptr != end || !std::isfinite(v)) {
        fail(key, e.line, "expected a finite number, got '" + e.value + "'");
    }
    return v;
}

long parse_long(const std::string& key, const RawEntry& e) {
    long v = 0;
    const char* begin = e.value.data();
    const char* end = begin + e.value.size();
    auto [ptr, ec] = std::from_chars(begin, end, v);
    if (ec != std::errc{} || ptr != end) {
        fail(key, e.line, "expected an integer, got '" + e.value + "'");
    }
    return v;
}

std::uint64_t parse_u64(const std::string& key, const RawEntry& e) {
    std::uint64_t v = 0;
    const char* begin = e.value.data();
    const char* end = begin + e.value.size();
    auto [ptr, ec] = std::from_chars(begin, end, v);
    if (ec != std::errc{} || ptr != end) {
        fail(key, e.line, "expected an unsigned 64-bit integer, got '" + e.value + "'");
    }
    return v;
}

const std::set<std::string> kKnownKeys = {
    "total_supply", "investor_share", "mu_r", "sigma_r", "c", "gamma",
    "mu_F", "sigma_F",
    "horizon", "seed", "return_model", "record_every",
    "tol", "eps_critical",
    "format", "path", "precision",
};

const std::vector<std::string> kRequiredEconomic = {
    "total_supply", "investor_share", "mu_r", "sigma_r", "c", "gamma",
};

}  // namespace

RunConfig parse_config(std::string_view text) {
    std::map<std::string, RawEntry> entries;
    int line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t nl = text.find('\n', pos);
        std::string_view line =
            text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
        pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
        ++line_no;

        const std::size_t hash = line.find('#');
        if (hash != std::string_view::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;

        const std::size_t eq = line.find('=');
        if (eq == std::string_view::npos) {
            throw ConfigError("config: line " + std::to_string(line_no) +
                              ": expected 'key = value'");
        }
        const std::string key{trim(line.substr(0, eq))};
        const std::string value{trim(line.substr(eq + 1))};
        if (key.empty() || value.empty()) {
            throw ConfigError("config: line " + std::to_string(line_no) +
                              ": expected 'key = value'");
        }
        if (!kKnownKeys.contains(key)) {
            throw ConfigError("config: unknown key '" + key + "' (line " +
                              std::to_string(line_no) + ")");
        }
        if (entries.contains(key)) {
            throw ConfigError("config: duplicate key '" + key + "' (line " +
                              std::to_string(line_no) + ", first on line " +
                              std::to_string(entries[key].line) + ")");
        }
        entries.emplace(key, RawEntry{value, line_no});
    }

    std::string missing;
    for (const std::string& key : kRequiredEconomic) {
        if (!entries.contains(key)) {
            if (!missing.empty()) missing += ", ";
            missing += key;
        }
    }
    if (!missing.empty()) {
        throw ConfigError("config: missing required economic parameter(s): " + missing);
    }

    RunConfig cfg;
    const auto get = [&](const char* key) -> const RawEntry& { return entries.at(key); };
    const auto has = [&](const char* key) { return entries.contains(key); };

    cfg.total_supply = parse_double("total_supply", get("total_supply"));
    if (!(cfg.total_supply > 0.0)) {
        fail("total_supply", get("total_supply").line, "must be > 0");
    }
    cfg.investor_share = parse_double("investor_share", get("investor_share"));
    if (!(cfg.investor_share >= 0.0 && cfg.investor_share <= 1.0)) {
        fail("investor_share", get("investor_share").line, "must lie in [0, 1]");
    }
    cfg.mu_r = parse_double("mu_r", get("mu_r"));
    cfg.sigma_r = parse_double("sigma_r", get("sigma_r"));
    if (!(cfg.sigma_r > 0.0)) fail("sigma_r", get("sigma_r").line, "must be > 0");
    cfg.c = parse_double("c", get("c"));
    if (!(cfg.c > 0.0)) fail("c", get("c").line, "must be > 0");
    cfg.gamma = parse_double("gamma", get("gamma"));
    if (!(cfg.gamma > 0.0)) fail("gamma", get("gamma").line, "must be > 0");

    if (has("mu_F")) {
        cfg.mu_F = parse_double("mu_F", get("mu_F"));
        if (cfg.mu_F < 0.0) fail("mu_F", get("mu_F").line, "must be >= 0");
    }
    if (has("sigma_F")) {
        cfg.sigma_F = parse_double("sigma_F", get("sigma_F"));
        if (cfg.sigma_F < 0.0) fail("sigma_F", get("sigma_F").line, "must be >= 0");
    }

    if (has("horizon")) {
        cfg.horizon = parse_long("horizon", get("horizon"));
        if (cfg.horizon < 1) fail("horizon", get("horizon").line, "must be >= 1");
    }
    if (has("seed")) cfg.seed = parse_u64("seed", get("seed"));
    if (has("return_model")) {
        const std::string& v = get("return_model").value;
        if (v == "normal") {
            cfg.return_model = ReturnModel::Kind::Normal;
        } else if (v == "deterministic") {
            cfg.return_model = ReturnModel::Kind::Deterministic;
        } else {
            fail("return_model", get("return_model").line,
                 "expected 'normal' or 'deterministic', got '" + v + "'");
        }
    }
    if (has("record_every")) {
        cfg.record_every = parse_long("record_every", get("record_every"));
        if (cfg.record_every < 1) fail("record_every", get("record_every").line, "must be >= 1");
    }

    if (has("tol")) {
        const double v = parse_double("tol", get("tol"));
        if (!(v > 0.0)) fail("tol", get("tol").line, "must be > 0");
        cfg.tol = v;
    }
    if (has("eps_critical")) {
        cfg.eps_critical = parse_double("eps_critical", get("eps_critical"));
        if (cfg.eps_critical < 0.0) fail("eps_critical", get("eps_critical").line, "must be >= 0");
    }

    if (has("format")) {
        const std::string& v = get("format").value;
        if (v == "csv") {
            cfg.format = OutputFormat::Csv;
        } else if (v == "json") {
            cfg.format = OutputFormat::Json;
        } else {
            fail("format", get("format").line, "expected 'csv' or 'json', got '" + v + "'");
        }
    }
    if (has("path")) cfg.path = get("path").value;
    if (has("precision")) {
        const long v = parse_long("precision", get("precision"));
        if (v < 0 || v > 17) fail("precision", get("precision").line, "must lie in [0, 17]");
        cfg.precision = static_cast<int>(v);
    }
    return cfg;
}

}  // namespace stakesim
