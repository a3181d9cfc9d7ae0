#include "stakesim/cli.hpp"

#include <cmath>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "stakesim/analysis.hpp"
#include "stakesim/config.hpp"
#include "stakesim/dynamics.hpp"
#include "stakesim/heterogeneous.hpp"
#include "stakesim/homogeneous.hpp"
#include "stakesim/output.hpp"

namespace stakesim {

namespace {

using nlohmann::json;

using Meta = std::vector<std::pair<std::string, std::string>>;

struct CommonOpts {
    std::string config_path;
    std::string output_path;  // empty: fall back to the config's path key
    std::string format;       // empty: fall back to the config's format key
    std::optional<std::uint64_t> seed;
    std::optional<long> steps;
    bool deterministic = false;
    bool quiet = false;
};

void add_common_flags(CLI::App* cmd, CommonOpts& opts) {
    cmd->add_option("--config", opts.config_path, "Run configuration file")
        ->required()
        ->check(CLI::ExistingFile);
    cmd->add_option("--output", opts.output_path, "Output path ('-' for standard output)");
    cmd->add_option("--format", opts.format, "Output format")
        ->check(CLI::IsMember({"csv", "json"}));
    cmd->add_option("--seed", opts.seed, "Override the configured seed");
    cmd->add_option("--steps", opts.steps, "Override the configured horizon");
    cmd->add_flag("--deterministic", opts.deterministic,
                  "Force the deterministic return model");
    cmd->add_flag("--quiet", opts.quiet,
                  "Suppress diagnostics and CSV metadata; emit bare data only");
}

RunConfig load_config(const CommonOpts& opts) {
    std::ifstream in(opts.config_path, std::ios::binary);
    if (!in) throw IoError("cannot open config file: " + opts.config_path);
    std::ostringstream buf;
    buf << in.rdbuf();
    if (in.bad()) throw IoError("cannot read config file: " + opts.config_path);

    RunConfig cfg = parse_config(buf.str());
    if (!opts.output_path.empty()) cfg.path = opts.output_path;
    if (!opts.format.empty()) {
        cfg.format = opts.format == "json" ? OutputFormat::Json : OutputFormat::Csv;
    }
    if (opts.seed) cfg.seed = *opts.seed;
    if (opts.steps) {
        if (*opts.steps < 1) throw ConfigError("--steps must be >= 1");
        cfg.horizon = *opts.steps;
    }
    if (opts.deterministic) cfg.return_model = ReturnModel::Kind::Deterministic;
    return cfg;
}

void write_sink(const std::string& path, const std::string& data) {
    if (path == "-") {
        std::cout << data;
        if (!std::cout.good()) throw IoError("write to standard output failed");
        return;
    }
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open output file: " + path);
    out << data;
    out.flush();
    if (!out.good()) throw IoError("write to output file failed: " + path);
}

Meta base_meta(const char* command, const RunConfig& cfg) {
    Meta m;
    m.emplace_back("artifact", std::string("stakesim ") + kVersion);
    m.emplace_back("command", command);
    m.emplace_back("total_supply", format_double(cfg.total_supply));
    m.emplace_back("investor_share", format_double(cfg.investor_share));
    m.emplace_back("mu_r", format_double(cfg.mu_r));
    m.emplace_back("sigma_r", format_double(cfg.sigma_r));
    m.emplace_back("c", format_double(cfg.c));
    m.emplace_back("gamma", format_double(cfg.gamma));
    m.emplace_back("mu_F", format_double(cfg.mu_F));
    m.emplace_back("sigma_F", format_double(cfg.sigma_F));
    m.emplace_back("tol", cfg.tol ? format_double(*cfg.tol) : std::string("default"));
    m.emplace_back("eps_critical", format_double(cfg.eps_critical));
    m.emplace_back("precision",
                   cfg.precision == 0 ? std::string("round-trip") : std::to_string(cfg.precision));
    return m;
}

void append_sim_meta(Meta& m, const SimConfig& sim, long record_every) {
    m.emplace_back("horizon", std::to_string(sim.horizon));
    m.emplace_back("seed", std::to_string(sim.seed));
    m.emplace_back("return_model", sim.return_model.kind == ReturnModel::Kind::Normal
                                       ? "normal"
                                       : "deterministic");
    m.emplace_back("record_every", std::to_string(record_every));
    m.emplace_back("rng", Rng::name());
    m.emplace_back("return_floor", format_double(kReturnFloor));
}

json meta_json(const Meta& meta) {
    json j = json::object();
    for (const auto& [k, v] : meta) j[k] = v;
    return j;
}

std::string csv_meta(const Meta& meta) {
    std::string out;
    for (const auto& [k, v] : meta) {
        out += "# " + k + " = " + v + "\n";
    }
    return out;
}

std::string bool_field(bool v) { return v ? "1" : "0"; }

// ---------------------------------------------------------------- solve --

std::string emit_solve_homogeneous(const RunConfig& cfg, double W, bool quiet) {
    const MarketParams params = cfg.market_params();
    const double tol = cfg.tol.value_or(1e-12);
    const HomogeneousEquilibrium eq = solve_equilibrium(params, W, tol);
    const Regime regime = classify_regime(params, cfg.eps_critical);
    const int p = cfg.precision;

    Meta meta = base_meta("solve-homogeneous", cfg);
    meta.emplace_back("wealth", format_double(W));

    if (cfg.format == OutputFormat::Json) {
        json j;
        j["meta"] = meta_json(meta);
        json r;
        r["S_star"] = apply_precision(eq.S_star, p);
        r["x_star"] = apply_precision(eq.x_star, p);
        r["w_star"] = apply_precision(eq.w_star, p);
        r["y_star"] = apply_precision(eq.y_star, p);
        r["residual"] = apply_precision(eq.residual, p);
        r["boundary"] = eq.boundary;
        r["regime"] = to_string(regime.kind);
        r["delta"] = apply_precision(regime.delta, p);
        j["result"] = r;
        return j.dump(2) + "\n";
    }
    std::string out;
    if (!quiet) out += csv_meta(meta);
    out += "S_star,x_star,w_star,y_star,residual,boundary,regime,delta\n";
    out += format_double(eq.S_star, p) + "," + format_double(eq.x_star, p) + "," +
           format_double(eq.w_star, p) + "," + format_double(eq.y_star, p) + "," +
           format_double(eq.residual, p) + "," + bool_field(eq.boundary) + "," +
           to_string(regime.kind) + "," + format_double(regime.delta, p) + "\n";
    return out;
}

std::string emit_solve_heterogeneous(const RunConfig& cfg, bool quiet) {
    const HeterogeneousParams params = cfg.het_params();
    const double tol = cfg.tol.value_or(1e-10);
    const HeterogeneousEquilibrium eq = solve_heterogeneous(params, tol);
    const int p = cfg.precision;
    const double mrs = eq.residual_mrs ? *eq.residual_mrs
                                       : std::numeric_limits<double>::quiet_NaN();

    Meta meta = base_meta("solve-heterogeneous", cfg);

    if (cfg.format == OutputFormat::Json) {
        json j;
        j["meta"] = meta_json(meta);
        json r;
        r["S"] = apply_precision(eq.S, p);
        r["S_i"] = apply_precision(eq.S_i, p);
        r["S_c"] = apply_precision(eq.S_c, p);
        r["L_c"] = apply_precision(eq.L_c, p);
        r["y"] = apply_precision(eq.y, p);
        r["corner"] = eq.corner;
        r["residual_mrs"] = apply_precision(mrs, p);  // null at the corner
        r["residual_clearance"] = apply_precision(eq.residual_clearance, p);
        j["result"] = r;
        return j.dump(2) + "\n";
    }
    std::string out;
    if (!quiet) out += csv_meta(meta);
    out += "S,S_i,S_c,L_c,y,corner,residual_mrs,residual_clearance\n";
    out += format_double(eq.S, p) + "," + format_double(eq.S_i, p) + "," +
           format_double(eq.S_c, p) + "," + format_double(eq.L_c, p) + "," +
           format_double(eq.y, p) + "," + bool_field(eq.corner) + "," +
           format_double(mrs, p) + "," + format_double(eq.residual_clearance, p) + "\n";
    return out;
}

// ------------------------------------------------------------- simulate --

std::string emit_simulate(const RunConfig& cfg, bool quiet, std::ostream& diag) {
    SimConfig sim = cfg.sim_config();
    const Trajectory traj = simulate(sim);
    const int p = cfg.precision;

    Meta meta = base_meta("simulate", cfg);
    append_sim_meta(meta, sim, cfg.record_every);

    if (!quiet) {
        diag << "simulate: " << traj.states.size() << " states recorded";
        if (traj.extinction_time) diag << ", extinction at t = " << *traj.extinction_time;
        diag << "\n";
    }

    if (cfg.format == OutputFormat::Json) {
        json cols;
        json t = json::array(), W_i = json::array(), W_c = json::array(), S = json::array(),
             S_i = json::array(), S_c = json::array(), L_c = json::array(), y = json::array(),
             alpha = json::array(), R_t = json::array(), corner = json::array();
        for (std::size_t i = 0; i < traj.states.size(); ++i) {
            const EconomyState& s = traj.states[i];
            t.push_back(s.t);
            W_i.push_back(apply_precision(s.W_i, p));
            W_c.push_back(apply_precision(s.W_c, p));
            S.push_back(apply_precision(s.S, p));
            S_i.push_back(apply_precision(s.S_i, p));
            S_c.push_back(apply_precision(s.S_c, p));
            L_c.push_back(apply_precision(s.L_c, p));
            y.push_back(apply_precision(s.y, p));
            alpha.push_back(apply_precision(traj.alpha_path[i], p));
            R_t.push_back(apply_precision(s.R_t, p));  // final state: null
            corner.push_back(s.corner);
        }
        cols["t"] = std::move(t);
        cols["W_i"] = std::move(W_i);
        cols["W_c"] = std::move(W_c);
        cols["S"] = std::move(S);
        cols["S_i"] = std::move(S_i);
        cols["S_c"] = std::move(S_c);
        cols["L_c"] = std::move(L_c);
        cols["y"] = std::move(y);
        cols["alpha"] = std::move(alpha);
        cols["R_t"] = std::move(R_t);
        cols["corner"] = std::move(corner);

        json diag_obj;
        if (traj.extinction_time) {
            diag_obj["extinction_time"] = *traj.extinction_time;
        } else {
            diag_obj["extinction_time"] = nullptr;
        }
        diag_obj["log_growth_estimate"] = apply_precision(traj.log_growth_estimate, p);
        diag_obj["consumer_bound"] = apply_precision(traj.consumer_bound, p);
        diag_obj["truncation_events"] = traj.truncation_events;

        json j;
        j["meta"] = meta_json(meta);
        j["columns"] = std::move(cols);
        j["diagnostics"] = std::move(diag_obj);
        return j.dump(2) + "\n";
    }

    std::string out;
    if (!quiet) out += csv_meta(meta);
    out += "t,W_i,W_c,S,S_i,S_c,L_c,y,alpha,R_t,corner\n";
    for (std::size_t i = 0; i < traj.states.size(); ++i) {
        const EconomyState& s = traj.states[i];
        out += std::to_string(s.t) + "," + format_double(s.W_i, p) + "," +
               format_double(s.W_c, p) + "," + format_double(s.S, p) + "," +
               format_double(s.S_i, p) + "," + format_double(s.S_c, p) + "," +
               format_double(s.L_c, p) + "," + format_double(s.y, p) + "," +
               format_double(traj.alpha_path[i], p) + "," + format_double(s.R_t, p) + "," +
               bool_field(s.corner) + "\n";
    }
    if (!quiet) {
        out += "# extinction_time = " +
               (traj.extinction_time ? std::to_string(*traj.extinction_time)
                                     : std::string("none")) +
               "\n";
        out += "# log_growth_estimate = " + format_double(traj.log_growth_estimate) + "\n";
        out += "# consumer_bound = " + format_double(traj.consumer_bound) + "\n";
        out += "# truncation_events = " + std::to_string(traj.truncation_events) + "\n";
    }
    return out;
}

// --------------------------------------------------------------- sweeps --

std::string emit_wealth_sweep(const RunConfig& cfg, double w_min, double w_max,
                              int per_decade, int tail_points, bool quiet,
                              std::ostream& diag) {
    if (!(w_min > 0.0) || !(w_max > w_min)) {
        throw ConfigError("sweep-wealth: need 0 < w-min < w-max");
    }
    if (per_decade < 1) throw ConfigError("sweep-wealth: per-decade must be >= 1");

    std::vector<double> grid;
    const double decades = std::log10(w_max / w_min);
    const long n_points = std::lround(decades * per_decade);
    for (long k = 0; k <= n_points; ++k) {
        grid.push_back(w_min * std::pow(10.0, static_cast<double>(k) / per_decade));
    }

    const MarketParams params = cfg.market_params();
    const SweepResult sweep = wealth_sweep(params, grid);

    double exponent = std::numeric_limits<double>::quiet_NaN();
    std::string fit_error;
    try {
        exponent = fit_scaling_exponent(sweep, tail_points);
    } catch (const std::exception& e) {
        fit_error = e.what();
    }
    if (!quiet) {
        if (fit_error.empty()) {
            diag << "sweep-wealth: fitted exponent over last " << tail_points
                 << " points = " << format_double(exponent) << "\n";
        } else {
            diag << "sweep-wealth: exponent fit failed: " << fit_error << "\n";
        }
    }

    const int p = cfg.precision;
    Meta meta = base_meta("sweep-wealth", cfg);
    meta.emplace_back("w_min", format_double(w_min));
    meta.emplace_back("w_max", format_double(w_max));
    meta.emplace_back("per_decade", std::to_string(per_decade));
    meta.emplace_back("tail_points", std::to_string(tail_points));

    if (cfg.format == OutputFormat::Json) {
        json rows = json::array();
        for (const SweepRow& row : sweep.rows) {
            json r;
            r["W"] = apply_precision(row.input, p);
            r["ok"] = row.ok;
            if (row.ok) {
                r["S_star"] = apply_precision(row.S_star, p);
                r["ratio"] = apply_precision(row.S_star / row.input, p);
                r["w_star"] = apply_precision(row.w_star, p);
                r["y_star"] = apply_precision(row.y_star, p);
                r["boundary"] = row.boundary;
                r["residual"] = apply_precision(row.residual, p);
            } else {
                r["error"] = row.error;
            }
            rows.push_back(std::move(r));
        }
        json j;
        j["meta"] = meta_json(meta);
        j["axis"] = sweep.axis;
        j["regime"] = to_string(classify_regime(params, cfg.eps_critical).kind);
        j["rows"] = std::move(rows);
        j["fitted_exponent"] = exponent;  // null if the fit failed
        return j.dump(2) + "\n";
    }

    std::string out;
    if (!quiet) out += csv_meta(meta);
    out += "W,S_star,ratio,w_star,y_star,boundary,regime,residual,ok,error\n";
    for (const SweepRow& row : sweep.rows) {
        out += format_double(row.input, p) + "," + format_double(row.S_star, p) + "," +
               format_double(row.ok ? row.S_star / row.input : 0.0, p) + "," +
               format_double(row.w_star, p) + "," + format_double(row.y_star, p) + "," +
               bool_field(row.boundary) + "," + to_string(row.regime) + "," +
               format_double(row.residual, p) + "," + bool_field(row.ok) + "," +
               csv_escape(row.error) + "\n";
    }
    if (!quiet) out += "# fitted_exponent = " + format_double(exponent) + "\n";
    return out;
}

std::string emit_delta_sweep(const RunConfig& cfg, double d_min, double d_max, int steps,
                             double W, bool quiet, std::ostream& diag) {
    if (!(d_max > d_min)) throw ConfigError("sweep-delta: need delta-min < delta-max");
    if (steps < 2) throw ConfigError("sweep-delta: delta-steps must be >= 2");
    std::vector<double> grid;
    for (int i = 0; i < steps; ++i) {
        grid.push_back(d_min + (d_max - d_min) * static_cast<double>(i) /
                                   static_cast<double>(steps - 1));
    }
    const SweepResult sweep = delta_sweep(cfg.market_params(), W, grid);
    int failures = 0;
    for (const SweepRow& r : sweep.rows) failures += r.ok ? 0 : 1;
    if (!quiet) {
        diag << "sweep-delta: " << sweep.rows.size() << " points, " << failures
             << " failed\n";
    }

    const int p = cfg.precision;
    Meta meta = base_meta("sweep-delta", cfg);
    meta.emplace_back("delta_min", format_double(d_min));
    meta.emplace_back("delta_max", format_double(d_max));
    meta.emplace_back("delta_steps", std::to_string(steps));
    meta.emplace_back("wealth", format_double(W));

    if (cfg.format == OutputFormat::Json) {
        json rows = json::array();
        for (const SweepRow& row : sweep.rows) {
            json r;
            r["delta"] = apply_precision(row.input, p);
            r["ok"] = row.ok;
            if (row.ok) {
                r["S_star"] = apply_precision(row.S_star, p);
                r["dS_dDelta_closed"] = apply_precision(row.dS_dDelta_closed, p);
                r["dS_dDelta_fd"] = apply_precision(row.dS_dDelta_fd, p);
            } else {
                r["error"] = row.error;
            }
            rows.push_back(std::move(r));
        }
        json j;
        j["meta"] = meta_json(meta);
        j["axis"] = sweep.axis;
        j["rows"] = std::move(rows);
        return j.dump(2) + "\n";
    }

    std::string out;
    if (!quiet) out += csv_meta(meta);
    out += "delta,S_star,dS_dDelta_closed,dS_dDelta_fd,ok,error\n";
    for (const SweepRow& row : sweep.rows) {
        out += format_double(row.input, p) + "," + format_double(row.S_star, p) + "," +
               format_double(row.dS_dDelta_closed, p) + "," +
               format_double(row.dS_dDelta_fd, p) + "," + bool_field(row.ok) + "," +
               csv_escape(row.error) + "\n";
    }
    return out;
}

// ------------------------------------------------------------- ensemble --

std::string emit_ensemble(const RunConfig& cfg, int n_seeds, bool quiet,
                          std::ostream& diag) {
    SimConfig sim = cfg.sim_config();
    const EnsembleSummary summary = monte_carlo_ensemble(sim, n_seeds);
    const int p = cfg.precision;

    if (!quiet) {
        diag << "ensemble: " << summary.n_seeds << " runs, " << summary.n_failed
             << " failed, fraction extinct = " << format_double(summary.fraction_extinct)
             << "\n";
    }

    Meta meta = base_meta("ensemble", cfg);
    append_sim_meta(meta, sim, cfg.record_every);
    meta.emplace_back("n_seeds", std::to_string(n_seeds));
    meta.emplace_back("seed_split", "child = splitmix64(master ^ splitmix64(index))");

    if (cfg.format == OutputFormat::Json) {
        json s;
        s["n_seeds"] = summary.n_seeds;
        s["n_failed"] = summary.n_failed;
        s["high_failure_rate"] = summary.high_failure_rate;
        s["n_extinct"] = summary.n_extinct;
        s["fraction_extinct"] = apply_precision(summary.fraction_extinct, p);
        s["extinction_min"] = apply_precision(summary.extinction_min, p);
        s["extinction_median"] = apply_precision(summary.extinction_median, p);
        s["extinction_max"] = apply_precision(summary.extinction_max, p);
        s["mean_log_growth"] = apply_precision(summary.mean_log_growth, p);
        s["log_growth_ci_lo"] = apply_precision(summary.log_growth_ci_lo, p);
        s["log_growth_ci_hi"] = apply_precision(summary.log_growth_ci_hi, p);
        s["terminal_alpha_min"] = apply_precision(summary.terminal_alpha_min, p);
        s["terminal_alpha_mean"] = apply_precision(summary.terminal_alpha_mean, p);
        s["terminal_alpha_max"] = apply_precision(summary.terminal_alpha_max, p);
        s["n_yield_tail_negative"] = summary.n_yield_tail_negative;
        s["yield_tail_window"] = summary.yield_tail_window;
        s["truncation_events"] = summary.truncation_events;
        s["ci_method"] = summary.ci_method;
        json j;
        j["meta"] = meta_json(meta);
        j["summary"] = std::move(s);
        return j.dump(2) + "\n";
    }

    std::string out;
    if (!quiet) out += csv_meta(meta);
    out +=
        "n_seeds,n_failed,high_failure_rate,n_extinct,fraction_extinct,extinction_min,"
        "extinction_median,extinction_max,mean_log_growth,log_growth_ci_lo,log_growth_ci_hi,"
        "terminal_alpha_min,terminal_alpha_mean,terminal_alpha_max,n_yield_tail_negative,"
        "yield_tail_window,truncation_events,ci_method\n";
    out += std::to_string(summary.n_seeds) + "," + std::to_string(summary.n_failed) + "," +
           bool_field(summary.high_failure_rate) + "," + std::to_string(summary.n_extinct) +
           "," + format_double(summary.fraction_extinct, p) + "," +
           format_double(summary.extinction_min, p) + "," +
           format_double(summary.extinction_median, p) + "," +
           format_double(summary.extinction_max, p) + "," +
           format_double(summary.mean_log_growth, p) + "," +
           format_double(summary.log_growth_ci_lo, p) + "," +
           format_double(summary.log_growth_ci_hi, p) + "," +
           format_double(summary.terminal_alpha_min, p) + "," +
           format_double(summary.terminal_alpha_mean, p) + "," +
           format_double(summary.terminal_alpha_max, p) + "," +
           std::to_string(summary.n_yield_tail_negative) + "," +
           format_double(summary.yield_tail_window, p) + "," +
           std::to_string(summary.truncation_events) + "," + csv_escape(summary.ci_method) +
           "\n";
    return out;
}

}  // namespace

int run_command(int argc, const char* const* argv) {
    CLI::App app{"stakesim: equilibria, scaling regimes, and long-run dynamics of a "
                 "proof-of-stake staking economy"};
    app.require_subcommand(1);

    CommonOpts opts;
    double wealth = 0.0;  // 0: default to total_supply
    double w_min = 1e8, w_max = 1e14;
    int per_decade = 1;
    int tail_points = 3;
    double d_min = -0.05, d_max = 0.05;
    int delta_steps = 21;
    double delta_wealth = 1e10;
    int n_seeds = 200;

    CLI::App* solve_h = app.add_subcommand(
        "solve-homogeneous", "Pure-investor clearance equilibrium at a wealth level");
    add_common_flags(solve_h, opts);
    solve_h->add_option("--wealth", wealth, "Total wealth W (default: total_supply)");

    CLI::App* solve_het = app.add_subcommand(
        "solve-heterogeneous", "Two-class equilibrium for the configured economy");
    add_common_flags(solve_het, opts);

    CLI::App* simulate_cmd =
        app.add_subcommand("simulate", "Run the discrete-time recursion");
    add_common_flags(simulate_cmd, opts);

    CLI::App* sweep_w = app.add_subcommand(
        "sweep-wealth", "Homogeneous equilibria across a logarithmic wealth grid");
    add_common_flags(sweep_w, opts);
    sweep_w->add_option("--w-min", w_min, "Grid start (default 1e8)");
    sweep_w->add_option("--w-max", w_max, "Grid end (default 1e14)");
    sweep_w->add_option("--per-decade", per_decade, "Grid points per decade (default 1)");
    sweep_w->add_option("--tail-points", tail_points,
                        "Points in the scaling-exponent fit (default 3)");

    CLI::App* sweep_d = app.add_subcommand(
        "sweep-delta", "Equilibrium and sensitivity across a Delta grid at fixed wealth");
    add_common_flags(sweep_d, opts);
    sweep_d->add_option("--delta-min", d_min, "Grid start (default -0.05)");
    sweep_d->add_option("--delta-max", d_max, "Grid end (default 0.05)");
    sweep_d->add_option("--delta-steps", delta_steps, "Grid size (default 21)");
    sweep_d->add_option("--wealth", delta_wealth, "Wealth level W (default 1e10)");

    CLI::App* ensemble_cmd = app.add_subcommand(
        "ensemble", "Monte Carlo ensemble over deterministically split seeds");
    add_common_flags(ensemble_cmd, opts);
    ensemble_cmd->add_option("--seeds", n_seeds, "Number of ensemble members (default 200)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        const RunConfig cfg = load_config(opts);
        std::ostream& diag = std::cerr;
        std::string data;
        if (solve_h->parsed()) {
            data = emit_solve_homogeneous(cfg, wealth > 0.0 ? wealth : cfg.total_supply,
                                          opts.quiet);
        } else if (solve_het->parsed()) {
            data = emit_solve_heterogeneous(cfg, opts.quiet);
        } else if (simulate_cmd->parsed()) {
            data = emit_simulate(cfg, opts.quiet, diag);
        } else if (sweep_w->parsed()) {
            data = emit_wealth_sweep(cfg, w_min, w_max, per_decade, tail_points, opts.quiet,
                                     diag);
        } else if (sweep_d->parsed()) {
            data = emit_delta_sweep(cfg, d_min, d_max, delta_steps, delta_wealth, opts.quiet,
                                    diag);
        } else if (ensemble_cmd->parsed()) {
            data = emit_ensemble(cfg, n_seeds, opts.quiet, diag);
        }
        write_sink(cfg.path, data);
        return 0;
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}

}  // namespace stakesim
