#include "stakesim/heterogeneous.hpp"

#include <cmath>
#include <stdexcept>

namespace stakesim {

void HeterogeneousParams::validate() const {
    if (!(std::isfinite(W_i) && std::isfinite(W_c) && std::isfinite(gamma) &&
          std::isfinite(c) && std::isfinite(mu_r) && std::isfinite(sigma_r_sq))) {
        throw std::invalid_argument("HeterogeneousParams: all fields must be finite");
    }
    if (W_i < 0.0) throw std::invalid_argument("HeterogeneousParams: W_i must be >= 0");
    if (W_c < 0.0) throw std::invalid_argument("HeterogeneousParams: W_c must be >= 0");
    if (!(W_i + W_c > 0.0)) {
        throw std::invalid_argument("HeterogeneousParams: W_i + W_c must be > 0");
    }
    if (gamma <= 0.0) throw std::invalid_argument("HeterogeneousParams: gamma must be > 0");
    if (c <= 0.0) throw std::invalid_argument("HeterogeneousParams: c must be > 0");
    if (sigma_r_sq <= 0.0) {
        throw std::invalid_argument("HeterogeneousParams: sigma_r_sq must be > 0");
    }
}

HeterogeneousParams from_supply(double M, double alpha, double gamma, double c,
                                double mu_r, double sigma_r_sq) {
    if (!(M > 0.0)) throw std::domain_error("from_supply: M must be > 0");
    if (!(alpha >= 0.0 && alpha <= 1.0)) {
        throw std::domain_error("from_supply: alpha must lie in [0, 1]");
    }
    HeterogeneousParams p{alpha * M, (1.0 - alpha) * M, gamma, c, mu_r, sigma_r_sq};
    p.validate();
    return p;
}

double consumer_stake_map(double S, const HeterogeneousParams& p) {
    if (!(S > 0.0)) throw std::domain_error("consumer_stake_map: S must be > 0");
    return p.W_c - (p.gamma / p.c) * std::sqrt(S);
}

double investor_demand(double S, const HeterogeneousParams& p) {
    if (!(S > 0.0)) throw std::domain_error("investor_demand: S must be > 0");
    const double unclamped = (p.W_i / p.sigma_r_sq) * (p.c / std::sqrt(S) - p.delta());
    return std::max(0.0, unclamped);
}

Polynomial build_master_cubic(const HeterogeneousParams& p) {
    p.validate();
    if (!(p.W_i > 0.0)) {
        throw std::domain_error("build_master_cubic: W_i must be > 0");
    }
    return Polynomial({-p.W_i * p.c / p.sigma_r_sq,
                       -(p.W_c - p.W_i * p.delta() / p.sigma_r_sq), p.gamma / p.c, 1.0});
}

namespace {

// Consumer-only equilibrium: the MRS condition with S = S_c reduces to
// c x^2 + gamma x - c W_c = 0 in x = sqrt(S).
HeterogeneousEquilibrium solve_consumer_only(const HeterogeneousParams& p) {
    const double x = (-p.gamma + std::sqrt(p.gamma * p.gamma + 4.0 * p.c * p.c * p.W_c)) /
                     (2.0 * p.c);
    const double S = x * x;
    const double S_c = S;
    const double y = p.c / x;
    const double mrs = std::abs(p.gamma / (p.W_c - S_c) - y);
    const double clearance = p.W_i > 0.0 ? investor_demand(S, p) : 0.0;
    return HeterogeneousEquilibrium{S, 0.0, S_c, p.W_c - S_c, y, false, mrs, clearance};
}

}  // namespace

HeterogeneousEquilibrium solve_heterogeneous(const HeterogeneousParams& p, double tol) {
    p.validate();
    if (!(tol > 0.0)) throw std::invalid_argument("solve_heterogeneous: tol must be > 0");

    if (p.W_i == 0.0) {
        return solve_consumer_only(p);
    }

    // Polynomial residuals translate into clearance residuals through a
    // division by x, so solve well below the reporting tolerance.
    const double poly_tol = tol * 1e-4;

    const RootResult r = unique_positive_root(build_master_cubic(p), poly_tol);
    const double x = r.root;
    const double S = x * x;
    const double S_c = consumer_stake_map(S, p);

    if (S_c < 0.0) {
        // Consumer corner: S_c = 0 binds, investors clear the market alone.
        const RootResult rc = unique_positive_root(
            Polynomial({-p.W_i * p.c, p.W_i * p.delta(), 0.0, p.sigma_r_sq}), poly_tol);
        const double S_corner = rc.root * rc.root;
        const double y = p.c / rc.root;
        const double clearance = std::abs(S_corner - investor_demand(S_corner, p));
        return HeterogeneousEquilibrium{S_corner,    S_corner, 0.0, p.W_c, y,
                                        true,        std::nullopt, clearance};
    }

    const double S_i = S - S_c;
    if (S_i < 0.0) {
        // Yield below the outside premium: unclamped investor demand is a
        // short position, so investors hold none and consumers set S alone.
        return solve_consumer_only(p);
    }

    const double y = p.c / x;
    const double mrs = std::abs(p.gamma / (p.W_c - S_c) - y);
    if (mrs > tol * y) {
        throw ConvergenceError("solve_heterogeneous: MRS residual above tolerance",
                               r.bracket_lo, r.bracket_hi, r.iterations);
    }
    const double clearance = std::abs(S_i - investor_demand(S, p));
    return HeterogeneousEquilibrium{S, S_i, S_c, p.W_c - S_c, y, false, mrs, clearance};
}

AsymptoticHeterogeneous asymptotic_heterogeneous(const HeterogeneousParams& p) {
    p.validate();
    const double delta = p.delta();
    if (!(delta < 0.0)) {
        throw std::domain_error(
            "asymptotic_heterogeneous: defined for the variance-dominated regime only");
    }
    const double S = -delta / p.sigma_r_sq * p.W_i;
    return AsymptoticHeterogeneous{S, S, p.W_c - (p.gamma / p.c) * std::sqrt(S)};
}

}  // namespace stakesim
