#pragma once

#include <optional>

#include "stakesim/poly.hpp"

namespace stakesim {

// Two-class economy: investors rebalance between staking and the outside
// market, consumers trade staking yield against transactional liquidity.
// The network pays no fees here; gamma is the aggregate transactional
// preference (per-consumer preferences are absorbed into it).
struct HeterogeneousParams {
    double W_i = 0.0;         // investor wealth, tokens
    double W_c = 0.0;         // consumer wealth, tokens
    double gamma = 0.0;       // aggregate transactional preference, tokens
    double c = 0.0;           // issuance constant
    double mu_r = 0.0;        // external mean return
    double sigma_r_sq = 0.0;  // external return variance, > 0

    double delta() const { return mu_r - sigma_r_sq; }
    void validate() const;
};

// Split the circulating supply M into investor share alpha and consumer
// share 1 - alpha.
HeterogeneousParams from_supply(double M, double alpha, double gamma, double c,
                                double mu_r, double sigma_r_sq);

// Consumer stake implied by the MRS condition at total stake S:
// W_c - (gamma/c) sqrt(S). Unclamped; a negative value is the corner signal.
double consumer_stake_map(double S, const HeterogeneousParams& p);

// Investor staking demand (W_i/sigma_r^2)(c/sqrt(S) - Delta), floored at 0
// since stakes cannot be shorted.
double investor_demand(double S, const HeterogeneousParams& p);

// Equilibrium cubic in x = sqrt(S), ascending coefficients
// [-W_i c / sigma_r^2, -(W_c - W_i Delta / sigma_r^2), gamma/c, 1].
Polynomial build_master_cubic(const HeterogeneousParams& p);

struct HeterogeneousEquilibrium {
    double S = 0.0;    // total stake; S = S_i + S_c exactly
    double S_i = 0.0;  // investor stake
    double S_c = 0.0;  // consumer stake
    double L_c = 0.0;  // consumer liquid holdings; L_c = W_c - S_c exactly
    double y = 0.0;    // yield c/sqrt(S)
    bool corner = false;  // consumer constraint S_c = 0 binds
    std::optional<double> residual_mrs;  // |gamma/(W_c - S_c) - y|, unset at corner
    double residual_clearance = 0.0;     // |S_i - investor demand at S|
};

// Coupled equilibrium. Solves the master cubic; if the implied consumer
// stake is negative, re-solves the consumer corner where only investors
// stake (sigma_r^2 x^3 + W_i Delta x - W_i c = 0). If instead the implied
// investor stake is negative (Delta > 0 with the yield below the outside
// premium), investors stay out and the consumer-only MRS quadratic gives
// the equilibrium; the same closed form handles W_i = 0.
HeterogeneousEquilibrium solve_heterogeneous(const HeterogeneousParams& p,
                                             double tol = 1e-10);

struct AsymptoticHeterogeneous {
    double S_approx;
    double S_i_approx;
    double S_c_approx;  // may be negative: predicted corner
};

// Massive-financialization limits, variance-dominated regime only:
// S ~ (-Delta/sigma_r^2) W_i, investors hold their hedging ratio, and
// S_c ~ W_c - (gamma/c) sqrt(S).
AsymptoticHeterogeneous asymptotic_heterogeneous(const HeterogeneousParams& p);

}  // namespace stakesim
