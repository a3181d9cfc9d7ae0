#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "stakesim/dynamics.hpp"
#include "stakesim/homogeneous.hpp"

namespace stakesim {

class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class OutputFormat { Csv, Json };

// Run configuration from a flat `key = value` file with `#` comments.
// Economic parameters have no defaults and must all be present; solver,
// simulation and output keys fall back to the values below. Unknown keys
// are an error.
struct RunConfig {
    // economic (required)
    double total_supply = 0.0;   // M, tokens
    double investor_share = 0.0; // alpha in [0, 1]
    double mu_r = 0.0;
    double sigma_r = 0.0;        // std dev; squared on dispatch
    double c = 0.0;
    double gamma = 0.0;
    // economic (optional, homogeneous runs)
    double mu_F = 0.0;
    double sigma_F = 0.0;
    // simulation
    long horizon = 10000;
    std::uint64_t seed = 42;
    ReturnModel::Kind return_model = ReturnModel::Kind::Normal;
    long record_every = 1;
    // solver
    std::optional<double> tol;   // unset: module defaults
    double eps_critical = 1e-12;
    // output
    OutputFormat format = OutputFormat::Csv;
    std::string path = "-";      // "-" is standard output
    int precision = 0;           // 0: shortest round-trip representation

    HeterogeneousParams het_params() const;
    MarketParams market_params() const;
    SimConfig sim_config() const;
};

// Parses and fully validates the documented key set. Errors name the
// offending key and line; a missing-parameter error lists every absent
// economic key at once.
RunConfig parse_config(std::string_view text);

}  // namespace stakesim
