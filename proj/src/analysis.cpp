#include "stakesim/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "stakesim/stats.hpp"

namespace stakesim {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
// Trailing fraction of the horizon used for the per-path yield-decay slope.
constexpr double kYieldTailWindow = 0.5;

void check_grid(std::span<const double> grid, bool require_positive) {
    if (grid.empty()) throw std::invalid_argument("sweep: empty grid");
    for (std::size_t i = 0; i < grid.size(); ++i) {
        if (require_positive && !(grid[i] > 0.0)) {
            throw std::invalid_argument("sweep: grid values must be > 0");
        }
        if (i > 0 && !(grid[i] > grid[i - 1])) {
            throw std::invalid_argument("sweep: grid must be strictly increasing");
        }
    }
}

}  // namespace

SweepResult wealth_sweep(const MarketParams& params, std::span<const double> W_grid) {
    params.validate();
    check_grid(W_grid, true);
    SweepResult result;
    result.axis = "W";
    result.grid.assign(W_grid.begin(), W_grid.end());
    result.rows.reserve(W_grid.size());
    for (double W : W_grid) {
        SweepRow row;
        row.input = W;
        row.dS_dDelta_closed = kNaN;
        row.dS_dDelta_fd = kNaN;
        row.regime = classify_regime(params).kind;
        try {
            const HomogeneousEquilibrium eq = solve_equilibrium(params, W);
            row.ok = true;
            row.S_star = eq.S_star;
            row.w_star = eq.w_star;
            row.y_star = eq.y_star;
            row.residual = eq.residual;
            row.boundary = eq.boundary;
        } catch (const std::exception& e) {
            row.error = e.what();
        }
        result.rows.push_back(std::move(row));
    }
    return result;
}

double fit_scaling_exponent(const SweepResult& sweep, int tail_points) {
    if (tail_points < 2) {
        throw std::invalid_argument("fit_scaling_exponent: tail_points must be >= 2");
    }
    std::vector<double> lx, ly;
    for (auto it = sweep.rows.rbegin();
         it != sweep.rows.rend() && static_cast<int>(lx.size()) < tail_points; ++it) {
        if (!it->ok) continue;
        lx.push_back(std::log(it->input));
        ly.push_back(std::log(it->S_star));
    }
    if (static_cast<int>(lx.size()) < tail_points) {
        throw std::invalid_argument("fit_scaling_exponent: not enough successful rows");
    }
    return ols_slope(lx, ly);
}

SweepResult delta_sweep(const MarketParams& params_base, double W,
                        std::span<const double> delta_grid) {
    params_base.validate();
    if (!(W > 0.0)) throw std::domain_error("delta_sweep: W must be > 0");
    check_grid(delta_grid, false);
    constexpr double fd_step = 1e-7;

    SweepResult result;
    result.axis = "delta";
    result.grid.assign(delta_grid.begin(), delta_grid.end());
    result.rows.reserve(delta_grid.size());
    for (double delta : delta_grid) {
        MarketParams p = params_base;
        p.mu_r = params_base.sigma_r_sq + delta;  // Delta rides on mu_r
        SweepRow row;
        row.input = delta;
        row.regime = classify_regime(p).kind;
        try {
            const HomogeneousEquilibrium eq = solve_equilibrium(p, W);
            if (eq.boundary) {
                throw std::domain_error("delta_sweep: boundary equilibrium, point not interior");
            }
            row.ok = true;
            row.S_star = eq.S_star;
            row.w_star = eq.w_star;
            row.y_star = eq.y_star;
            row.residual = eq.residual;
            row.dS_dDelta_closed = sensitivity_closed_form(p, W, eq.S_star);
            row.dS_dDelta_fd = sensitivity_fd(p, W, fd_step);
        } catch (const std::exception& e) {
            row.error = e.what();
            row.dS_dDelta_closed = kNaN;
            row.dS_dDelta_fd = kNaN;
        }
        result.rows.push_back(std::move(row));
    }
    return result;
}

EnsembleSummary monte_carlo_ensemble(const SimConfig& config, int n_seeds) {
    config.validate();
    if (n_seeds < 2) {
        throw std::invalid_argument("monte_carlo_ensemble: n_seeds must be >= 2");
    }

    EnsembleSummary summary;
    summary.n_seeds = n_seeds;
    summary.yield_tail_window = kYieldTailWindow;
    summary.ci_method = "normal approximation, mean +/- 1.96 se";

    std::vector<double> extinctions;
    std::vector<double> growths;
    std::vector<double> terminal_alphas;

    for (int i = 0; i < n_seeds; ++i) {
        SimConfig run_config = config;
        run_config.seed = Rng::child_seed(config.seed, static_cast<std::uint64_t>(i));
        try {
            const Trajectory traj = simulate(run_config);
            if (traj.extinction_time) {
                extinctions.push_back(static_cast<double>(*traj.extinction_time));
            }
            growths.push_back(traj.log_growth_estimate);
            terminal_alphas.push_back(traj.alpha_path.back());
            summary.truncation_events += traj.truncation_events;

            const std::size_t n = traj.states.size();
            const std::size_t count =
                static_cast<std::size_t>(std::llround(kYieldTailWindow * static_cast<double>(n)));
            if (count >= 2) {
                std::vector<double> ts, lys;
                ts.reserve(count);
                lys.reserve(count);
                for (std::size_t k = n - count; k < n; ++k) {
                    ts.push_back(static_cast<double>(traj.states[k].t));
                    lys.push_back(std::log(traj.states[k].y));
                }
                if (ols_slope(ts, lys) < 0.0) ++summary.n_yield_tail_negative;
            }
        } catch (const std::exception&) {
            ++summary.n_failed;
        }
    }

    const int n_ok = n_seeds - summary.n_failed;
    summary.high_failure_rate = summary.n_failed > n_seeds / 100;
    summary.n_extinct = static_cast<int>(extinctions.size());
    summary.fraction_extinct =
        n_ok > 0 ? static_cast<double>(summary.n_extinct) / n_ok : kNaN;

    if (!extinctions.empty()) {
        std::sort(extinctions.begin(), extinctions.end());
        summary.extinction_min = extinctions.front();
        summary.extinction_max = extinctions.back();
        const std::size_t m = extinctions.size();
        summary.extinction_median = m % 2 == 1
                                        ? extinctions[m / 2]
                                        : 0.5 * (extinctions[m / 2 - 1] + extinctions[m / 2]);
    } else {
        summary.extinction_min = kNaN;
        summary.extinction_median = kNaN;
        summary.extinction_max = kNaN;
    }

    if (!growths.empty()) {
        double mean = 0.0;
        for (double g : growths) mean += g;
        mean /= static_cast<double>(growths.size());
        double var = 0.0;
        for (double g : growths) var += (g - mean) * (g - mean);
        var = growths.size() > 1 ? var / static_cast<double>(growths.size() - 1) : 0.0;
        const double se = std::sqrt(var / static_cast<double>(growths.size()));
        summary.mean_log_growth = mean;
        summary.log_growth_ci_lo = mean - 1.96 * se;
        summary.log_growth_ci_hi = mean + 1.96 * se;
    } else {
        summary.mean_log_growth = kNaN;
        summary.log_growth_ci_lo = kNaN;
        summary.log_growth_ci_hi = kNaN;
    }

    if (!terminal_alphas.empty()) {
        const auto [lo, hi] = std::minmax_element(terminal_alphas.begin(), terminal_alphas.end());
        double mean = 0.0;
        for (double a : terminal_alphas) mean += a;
        summary.terminal_alpha_min = *lo;
        summary.terminal_alpha_mean = mean / static_cast<double>(terminal_alphas.size());
        summary.terminal_alpha_max = *hi;
    } else {
        summary.terminal_alpha_min = kNaN;
        summary.terminal_alpha_mean = kNaN;
        summary.terminal_alpha_max = kNaN;
    }
    return summary;
}

}  // namespace stakesim
