#include "stakesim/dynamics.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "stakesim/stats.hpp"

namespace stakesim {

ReturnModel ReturnModel::normal(double mu_r, double sigma_r) {
    ReturnModel m{Kind::Normal, mu_r, sigma_r};
    m.validate();
    return m;
}

ReturnModel ReturnModel::deterministic(double mu_r) {
    ReturnModel m{Kind::Deterministic, mu_r, 0.0};
    m.validate();
    return m;
}

void ReturnModel::validate() const {
    if (!std::isfinite(mu_r)) throw std::invalid_argument("ReturnModel: mu_r must be finite");
    if (kind == Kind::Normal && !(sigma_r > 0.0)) {
        throw std::invalid_argument("ReturnModel: Normal requires sigma_r > 0");
    }
}

void SimConfig::validate() const {
    params.validate();
    return_model.validate();
    if (horizon < 1) throw std::invalid_argument("SimConfig: horizon must be >= 1");
    if (record_every < 1) throw std::invalid_argument("SimConfig: record_every must be >= 1");
    if (!(tol > 0.0)) throw std::invalid_argument("SimConfig: tol must be > 0");
}

EconomyState step(const EconomyState& state, const HeterogeneousParams& env, double R_t,
                  double tol) {
    if (!(R_t > -1.0)) {
        throw std::domain_error("step: R_t <= -1 would wipe out wealth");
    }
    const double W_c_next = state.W_c + state.S_c * state.y;
    const double W_i_next =
        state.S_i * (1.0 + state.y) + (state.W_i - state.S_i) * (1.0 + R_t);

    HeterogeneousParams p = env;
    p.W_i = W_i_next;
    p.W_c = W_c_next;
    try {
        const HeterogeneousEquilibrium eq = solve_heterogeneous(p, tol);
        return EconomyState{state.t + 1,
                            W_i_next,
                            W_c_next,
                            eq.S,
                            eq.S_i,
                            eq.S_c,
                            eq.L_c,
                            eq.y,
                            std::numeric_limits<double>::quiet_NaN(),
                            eq.corner};
    } catch (const std::exception& e) {
        throw std::runtime_error("step: period " + std::to_string(state.t + 1) + ": " +
                                 e.what());
    }
}

double draw_return(Rng& rng, const ReturnModel& model, bool* truncated) {
    if (truncated) *truncated = false;
    if (model.kind == ReturnModel::Kind::Deterministic) {
        return model.mu_r;
    }
    double r = rng.normal(model.mu_r, model.sigma_r);
    if (r < kReturnFloor) {
        r = kReturnFloor;
        if (truncated) *truncated = true;
    }
    return r;
}

Trajectory simulate(const SimConfig& config) {
    config.validate();

    Trajectory traj;
    traj.states.reserve(static_cast<std::size_t>(config.horizon / config.record_every) + 2);

    const HeterogeneousEquilibrium eq0 = solve_heterogeneous(config.params, config.tol);
    EconomyState current{0,
                         config.params.W_i,
                         config.params.W_c,
                         eq0.S,
                         eq0.S_i,
                         eq0.S_c,
                         eq0.L_c,
                         eq0.y,
                         std::numeric_limits<double>::quiet_NaN(),
                         eq0.corner};

    Rng rng(config.seed);
    const auto record = [&](const EconomyState& s) {
        traj.states.push_back(s);
        traj.alpha_path.push_back(s.W_i / (s.W_i + s.W_c));
        if (!traj.extinction_time && s.S_c == 0.0) {
            traj.extinction_time = s.t;
        }
    };

    for (long t = 0; t < config.horizon; ++t) {
        bool truncated = false;
        const double R_t = draw_return(rng, config.return_model, &truncated);
        if (truncated) ++traj.truncation_events;
        current.R_t = R_t;
        if (t % config.record_every == 0) record(current);
        current = step(current, config.params, R_t, config.tol);
    }
    record(current);  // final state always kept

    const bool bounded = config.params.delta() < 0.0 && config.params.W_i > 0.0;
    traj.consumer_bound =
        bounded ? consumer_wealth_bound(config) : std::numeric_limits<double>::quiet_NaN();

    const std::size_t tail =
        static_cast<std::size_t>(std::llround(0.25 * static_cast<double>(traj.states.size())));
    traj.log_growth_estimate = tail >= 10 ? estimate_log_growth(traj, 0.25)
                                          : std::numeric_limits<double>::quiet_NaN();
    return traj;
}

std::optional<long> detect_extinction(const Trajectory& traj) {
    for (const EconomyState& s : traj.states) {
        if (s.S_c == 0.0) return s.t;
    }
    return std::nullopt;
}

double consumer_wealth_bound(const SimConfig& config) {
    config.params.validate();
    const double delta = config.params.delta();
    if (!(delta < 0.0)) {
        throw std::domain_error("consumer_wealth_bound: requires the variance-dominated regime");
    }
    if (!(config.params.W_i > 0.0)) {
        throw std::domain_error("consumer_wealth_bound: requires W_i > 0");
    }
    if (config.params.mu_r == 0.0) {
        throw std::domain_error("consumer_wealth_bound: mu_r = 0 gives no yield decay");
    }
    const double c0 =
        config.params.c * std::sqrt(config.params.sigma_r_sq / (-delta * config.params.W_i));
    const double q = std::exp(-config.params.mu_r * config.params.mu_r /
                              (4.0 * config.params.sigma_r_sq));
    double product = 1.0;
    double qk = q;
    for (long k = 0;; ++k) {
        const double factor = 1.0 + c0 * qk;
        product *= factor;
        if (factor < 1.0 + 1e-15) break;
        if (k > 100000000L) {
            throw std::runtime_error("consumer_wealth_bound: product truncation not reached");
        }
        qk *= q;
    }
    return config.params.W_c * product;
}

double estimate_log_growth(const Trajectory& traj, double window) {
    if (!(window > 0.0 && window <= 1.0)) {
        throw std::invalid_argument("estimate_log_growth: window must be in (0, 1]");
    }
    const std::size_t n = traj.states.size();
    const std::size_t count =
        static_cast<std::size_t>(std::llround(window * static_cast<double>(n)));
    if (count < 10) {
        throw std::invalid_argument("estimate_log_growth: window holds fewer than 10 points");
    }
    std::vector<double> ts, logs;
    ts.reserve(count);
    logs.reserve(count);
    for (std::size_t i = n - count; i < n; ++i) {
        ts.push_back(static_cast<double>(traj.states[i].t));
        logs.push_back(std::log(traj.states[i].W_i));
    }
    return ols_slope(ts, logs);
}

}  // namespace stakesim
