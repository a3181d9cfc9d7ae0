#pragma once

#include <span>
#include <string>
#include <vector>

#include "stakesim/dynamics.hpp"
#include "stakesim/homogeneous.hpp"

namespace stakesim {

struct SweepRow {
    double input = 0.0;       // swept value: W or Delta
    bool ok = false;
    std::string error;        // diagnostic when !ok
    double S_star = 0.0;
    double w_star = 0.0;
    double y_star = 0.0;
    double residual = 0.0;
    bool boundary = false;
    RegimeKind regime = RegimeKind::Critical;
    double dS_dDelta_closed = 0.0;  // delta sweeps only, NaN otherwise
    double dS_dDelta_fd = 0.0;
};

struct SweepResult {
    std::string axis;          // "W" or "delta"
    std::vector<double> grid;  // strictly increasing
    std::vector<SweepRow> rows;
};

// Homogeneous equilibrium at each wealth level. Per-point solver failures
// are recorded in the row and the sweep continues.
SweepResult wealth_sweep(const MarketParams& params, std::span<const double> W_grid);

// OLS slope of log S* vs log W over the last tail_points successful rows.
double fit_scaling_exponent(const SweepResult& sweep, int tail_points);

// Equilibrium plus closed-form and central-difference dS*/dDelta across a
// Delta grid at fixed W; Delta moves mu_r with sigma_r^2 held fixed.
SweepResult delta_sweep(const MarketParams& params_base, double W,
                        std::span<const double> delta_grid);

struct EnsembleSummary {
    int n_seeds = 0;
    int n_failed = 0;             // runs excluded after solver failure
    bool high_failure_rate = false;  // > 1% of runs failed
    int n_extinct = 0;
    double fraction_extinct = 0.0;
    double extinction_min = 0.0;  // NaN when no path went extinct
    double extinction_median = 0.0;
    double extinction_max = 0.0;
    double mean_log_growth = 0.0;
    double log_growth_ci_lo = 0.0;  // 95% normal-approximation interval
    double log_growth_ci_hi = 0.0;
    double terminal_alpha_min = 0.0;
    double terminal_alpha_mean = 0.0;
    double terminal_alpha_max = 0.0;
    int n_yield_tail_negative = 0;   // paths whose ln y slope over the tail window is < 0
    double yield_tail_window = 0.0;  // trailing fraction used for that slope
    long truncation_events = 0;
    std::string ci_method;  // documented in serialized output
};

// Independent simulations under child seeds derived from config.seed
// (Rng::child_seed), reduced in input order so the summary is identical
// regardless of scheduling. Requires n_seeds >= 2.
EnsembleSummary monte_carlo_ensemble(const SimConfig& config, int n_seeds);

}  // namespace stakesim
