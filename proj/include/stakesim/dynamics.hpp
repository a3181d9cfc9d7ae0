#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "stakesim/heterogeneous.hpp"
#include "stakesim/rng.hpp"

namespace stakesim {

struct ReturnModel {
    enum class Kind { Normal, Deterministic };
    Kind kind = Kind::Deterministic;
    double mu_r = 0.0;
    double sigma_r = 0.0;  // Normal only, > 0

    static ReturnModel normal(double mu_r, double sigma_r);
    static ReturnModel deterministic(double mu_r);
    void validate() const;
};

// Normal draws are clamped here so 1 + R_t stays positive; clamp events
// are counted on the trajectory.
inline constexpr double kReturnFloor = -0.999;

struct SimConfig {
    HeterogeneousParams params;  // initial wealths plus environment
    long horizon = 1;
    std::uint64_t seed = 0;
    ReturnModel return_model;
    long record_every = 1;       // output thinning stride
    double tol = 1e-10;          // per-step equilibrium tolerance
    void validate() const;
};

struct EconomyState {
    long t = 0;
    double W_i = 0.0;
    double W_c = 0.0;
    double S = 0.0;
    double S_i = 0.0;
    double S_c = 0.0;
    double L_c = 0.0;
    double y = 0.0;
    double R_t = 0.0;  // return realized during period t; NaN on the final state
    bool corner = false;
};

struct Trajectory {
    std::vector<EconomyState> states;     // thinned by record_every; final state always kept
    std::optional<long> extinction_time;  // first recorded t with S_c = 0
    std::vector<double> alpha_path;       // W_i/(W_i+W_c) per recorded state
    double log_growth_estimate = 0.0;     // ln W_i slope over the trailing 25%; NaN if < 10 points
    double consumer_bound = 0.0;          // W_max estimate; NaN outside the variance-dominated regime
    long truncation_events = 0;
};

// One period of the recursion: consumers accrue staking yield, investors
// compound the mixed portfolio, then the market relaxes to the new
// equilibrium. The yield applied is the beginning-of-period equilibrium
// yield carried by `state`.
EconomyState step(const EconomyState& state, const HeterogeneousParams& env, double R_t,
                  double tol = 1e-10);

// One return draw. Normal consumes exactly two uniforms and clamps at
// kReturnFloor (sets *truncated); Deterministic consumes none.
double draw_return(Rng& rng, const ReturnModel& model, bool* truncated = nullptr);

// Run the recursion from the t = 0 equilibrium of the initial wealths.
Trajectory simulate(const SimConfig& config);

// Smallest recorded t with S_c = 0 (the corner branch produces exact
// zeros), or nullopt.
std::optional<long> detect_extinction(const Trajectory& traj);

// Upper bound on consumer wealth from the yield-decay envelope:
// W_c^0 * prod_k (1 + C_0 q^k) with C_0 = c sqrt(sigma_r^2 / (-Delta W_i^0))
// and q = exp(-mu_r^2 / (4 sigma_r^2)), truncated when a factor drops
// below 1 + 1e-15. Variance-dominated regime with W_i^0 > 0 only.
double consumer_wealth_bound(const SimConfig& config);

// Least-squares slope of ln W_i vs t over the trailing `window` fraction
// of recorded states. Throws if the window holds fewer than 10 points.
double estimate_log_growth(const Trajectory& traj, double window = 0.25);

}  // namespace stakesim
