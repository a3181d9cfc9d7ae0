#pragma once

#include "stakesim/poly.hpp"

namespace stakesim {

// Exogenous market environment for the pure-investor economy. Fee moments
// default to zero, the configuration used by the heterogeneous model and
// the dynamic runs. Staking and outside returns are uncorrelated.
struct MarketParams {
    double mu_r = 0.0;        // expected external return per period
    double sigma_r_sq = 0.0;  // external return variance per period, > 0
    double c = 0.0;           // issuance constant, token^(1/2) per period
    double mu_F = 0.0;        // expected fee revenue per period, tokens
    double sigma_F_sq = 0.0;  // fee variance, tokens^2
    static constexpr double rho = 0.0;

    double delta() const { return mu_r - sigma_r_sq; }
    void validate() const;  // throws std::invalid_argument on violation
};

enum class RegimeKind { VarianceDominated, Critical, YieldDominated };

struct Regime {
    RegimeKind kind;
    double delta;
};

const char* to_string(RegimeKind kind);

struct HomogeneousEquilibrium {
    double S_star = 0.0;    // equilibrium total stake, tokens
    double x_star = 0.0;    // sqrt(S_star)
    double w_star = 0.0;    // staking fraction in [0, 1]
    double y_star = 0.0;    // c/sqrt(S*) + mu_F/S*
    double residual = 0.0;  // |S* - W w(S*)|; 0 at the boundary, where S* = W binds exactly
    bool boundary = false;  // w = 1 corner
};

// Log-optimal staking share (mu_s - mu_r + sigma_r^2) / (sigma_s^2 + sigma_r^2),
// unclamped; the equilibrium solver owns the [0, 1] restriction.
double kelly_fraction(double mu_s, double mu_r, double sigma_s_sq, double sigma_r_sq);

struct StakingMoments {
    double mu_s;
    double sigma_s_sq;
};

// Protocol return moments at stake level S: mu_s = c/sqrt(S) + mu_F/S,
// sigma_s^2 = sigma_F^2 / S^2.
StakingMoments staking_moments(double S, const MarketParams& params);

// Equilibrium quartic in x = sqrt(S*), ascending coefficients
// [sigma_F^2 - W mu_F, -W c, W (mu_r - sigma_r^2), 0, sigma_r^2].
Polynomial build_quartic(const MarketParams& params, double W);

// Clearance equilibrium S* = W w(S*). Solves the quartic (or, when both fee
// moments vanish, the cubic left after dividing out the spurious x = 0 root)
// for its unique positive root; returns the boundary state S* = W, w* = 1
// when the interior staking fraction would exceed 1.
HomogeneousEquilibrium solve_equilibrium(const MarketParams& params, double W,
                                         double tol = 1e-12);

// Sign of Delta = mu_r - sigma_r^2 under a classification tolerance.
Regime classify_regime(const MarketParams& params, double eps = 1e-12);

struct AsymptoticStake {
    double S_approx;
    Regime regime;
};

// Large-W closed form for the regime of params:
//   Delta < 0: (1 - mu_r/sigma_r^2) W
//   Delta = 0: (c W / sigma_r^2)^(2/3)
//   Delta > 0: x_inf^2 with x_inf = (c + sqrt(c^2 + 4 Delta mu_F)) / (2 Delta)
AsymptoticStake asymptotic_stake(const MarketParams& params, double W);

// dS*/dDelta = -W / (sigma_r^2 + W c / (2 S*^(3/2)) + W mu_F / S*^2),
// strictly negative. Interior equilibria only; throws std::domain_error at
// the w = 1 boundary.
double sensitivity_closed_form(const MarketParams& params, double W, double S_star);

// Central difference (S*(Delta+h) - S*(Delta-h)) / (2h), perturbing mu_r at
// fixed sigma_r^2. Throws std::domain_error if either perturbed problem
// leaves the interior.
double sensitivity_fd(const MarketParams& params, double W, double h);

}  // namespace stakesim
