#include "stakesim/homogeneous.hpp"

#include <cmath>
#include <stdexcept>

namespace stakesim {

void MarketParams::validate() const {
    if (!(std::isfinite(mu_r) && std::isfinite(sigma_r_sq) && std::isfinite(c) &&
          std::isfinite(mu_F) && std::isfinite(sigma_F_sq))) {
        throw std::invalid_argument("MarketParams: all fields must be finite");
    }
    if (sigma_r_sq <= 0.0) throw std::invalid_argument("MarketParams: sigma_r_sq must be > 0");
    if (c <= 0.0) throw std::invalid_argument("MarketParams: c must be > 0");
    if (mu_F < 0.0) throw std::invalid_argument("MarketParams: mu_F must be >= 0");
    if (sigma_F_sq < 0.0) throw std::invalid_argument("MarketParams: sigma_F_sq must be >= 0");
}

const char* to_string(RegimeKind kind) {
    switch (kind) {
        case RegimeKind::VarianceDominated: return "variance-dominated";
        case RegimeKind::Critical: return "critical";
        case RegimeKind::YieldDominated: return "yield-dominated";
    }
    return "unknown";
}

double kelly_fraction(double mu_s, double mu_r, double sigma_s_sq, double sigma_r_sq) {
    const double total_var = sigma_s_sq + sigma_r_sq;
    if (total_var <= 0.0) {
        throw std::domain_error("kelly_fraction: total variance must be > 0");
    }
    return (mu_s - mu_r + sigma_r_sq) / total_var;
}

StakingMoments staking_moments(double S, const MarketParams& params) {
    if (!(S > 0.0)) {
        throw std::domain_error("staking_moments: S must be > 0");
    }
    const double sqrt_s = std::sqrt(S);
    return StakingMoments{params.c / sqrt_s + params.mu_F / S,
                          params.sigma_F_sq / (S * S)};
}

Polynomial build_quartic(const MarketParams& params, double W) {
    params.validate();
    if (!(W > 0.0)) throw std::domain_error("build_quartic: W must be > 0");
    return Polynomial({params.sigma_F_sq - W * params.mu_F, -W * params.c,
                       W * params.delta(), 0.0, params.sigma_r_sq});
}

namespace {

// Staking fraction implied at stake level S.
double kelly_at(double S, const MarketParams& params) {
    const StakingMoments m = staking_moments(S, params);
    return kelly_fraction(m.mu_s, params.mu_r, m.sigma_s_sq, params.sigma_r_sq);
}

}  // namespace

HomogeneousEquilibrium solve_equilibrium(const MarketParams& params, double W, double tol) {
    params.validate();
    if (!(W > 0.0)) throw std::domain_error("solve_equilibrium: W must be > 0");
    if (!(tol > 0.0)) throw std::invalid_argument("solve_equilibrium: tol must be > 0");

    const bool no_fees = params.mu_F == 0.0 && params.sigma_F_sq == 0.0;
    if (!no_fees && !(W * params.mu_F > params.sigma_F_sq)) {
        throw std::domain_error(
            "solve_equilibrium: fee regime requires W * mu_F > sigma_F_sq");
    }

    // With both fee moments zero the quartic's constant term vanishes and
    // x = 0 becomes a spurious root; divide it out and solve the cubic
    // sigma_r^2 x^3 + W Delta x - W c = 0 instead.
    const Polynomial poly =
        no_fees ? Polynomial({-W * params.c, W * params.delta(), 0.0, params.sigma_r_sq})
                : build_quartic(params, W);

    // Two orders tighter than the clearance contract so the polynomial
    // residual never dominates the reported clearance residual.
    const RootResult r = unique_positive_root(poly, tol * 1e-2);
    const double S_int = r.root * r.root;
    const double w_int = S_int / W;

    if (w_int > 1.0) {
        // No-shorting corner: demand exceeds wealth, the whole endowment is
        // staked and S* = W binds exactly.
        const StakingMoments m = staking_moments(W, params);
        return HomogeneousEquilibrium{W, std::sqrt(W), 1.0, m.mu_s, 0.0, true};
    }

    const double w_kelly = kelly_at(S_int, params);
    if (w_kelly < 0.0) {
        throw std::logic_error("solve_equilibrium: equilibrium staking fraction is negative");
    }
    // Clearance error S - W w(S) equals p(x) / (sigma_F^2/S + sigma_r^2 S)
    // for the quartic (one extra factor of x for the divided-out cubic).
    // Evaluating it through the polynomial avoids the cancellation that the
    // Kelly numerator suffers when w* -> 0 at large W.
    const double denom = params.sigma_F_sq / S_int + params.sigma_r_sq * S_int;
    const double residual =
        std::abs(r.residual) * (no_fees ? r.root : 1.0) / denom;
    if (residual > tol * std::max(1.0, S_int)) {
        throw ConvergenceError("solve_equilibrium: clearance residual above tolerance",
                               r.bracket_lo, r.bracket_hi, r.iterations);
    }
    const StakingMoments m = staking_moments(S_int, params);
    return HomogeneousEquilibrium{S_int, r.root, w_int, m.mu_s, residual, false};
}

Regime classify_regime(const MarketParams& params, double eps) {
    const double delta = params.delta();
    if (std::abs(delta) <= eps) return Regime{RegimeKind::Critical, delta};
    if (delta < 0.0) return Regime{RegimeKind::VarianceDominated, delta};
    return Regime{RegimeKind::YieldDominated, delta};
}

AsymptoticStake asymptotic_stake(const MarketParams& params, double W) {
    params.validate();
    if (!(W > 0.0)) throw std::domain_error("asymptotic_stake: W must be > 0");
    const Regime regime = classify_regime(params);
    switch (regime.kind) {
        case RegimeKind::VarianceDominated:
            return AsymptoticStake{(1.0 - params.mu_r / params.sigma_r_sq) * W, regime};
        case RegimeKind::Critical:
            return AsymptoticStake{std::pow(params.c * W / params.sigma_r_sq, 2.0 / 3.0),
                                   regime};
        case RegimeKind::YieldDominated: {
            const double d = regime.delta;
            const double x_inf =
                (params.c + std::sqrt(params.c * params.c + 4.0 * d * params.mu_F)) /
                (2.0 * d);
            return AsymptoticStake{x_inf * x_inf, regime};
        }
    }
    throw std::logic_error("asymptotic_stake: unreachable");
}

double sensitivity_closed_form(const MarketParams& params, double W, double S_star) {
    params.validate();
    if (!(W > 0.0)) throw std::domain_error("sensitivity_closed_form: W must be > 0");
    if (!(S_star > 0.0)) throw std::domain_error("sensitivity_closed_form: S_star must be > 0");
    if (S_star >= W) {
        throw std::domain_error(
            "sensitivity_closed_form: boundary equilibrium, interior solutions only");
    }
    const double denom = params.sigma_r_sq + W * params.c / (2.0 * std::pow(S_star, 1.5)) +
                         W * params.mu_F / (S_star * S_star);
    return -W / denom;
}

double sensitivity_fd(const MarketParams& params, double W, double h) {
    params.validate();
    if (!(h > 0.0)) throw std::domain_error("sensitivity_fd: h must be > 0");
    MarketParams up = params;
    MarketParams down = params;
    up.mu_r += h;    // Delta moves with mu_r, sigma_r^2 held fixed
    down.mu_r -= h;
    const HomogeneousEquilibrium plus = solve_equilibrium(up, W);
    const HomogeneousEquilibrium minus = solve_equilibrium(down, W);
    if (plus.boundary || minus.boundary) {
        throw std::domain_error(
            "sensitivity_fd: perturbed problem left the interior; comparison undefined");
    }
    return (plus.S_star - minus.S_star) / (2.0 * h);
}

}  // namespace stakesim
