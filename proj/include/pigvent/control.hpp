#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "pigvent/plant.hpp"

// The two ventilation controllers: a proportional-band rule and a
// receding-horizon optimizer over the plant model with a self-contained
// box-constrained solver.

namespace pigvent::control {

struct ComfortBands {
    double temp_low_c = 21.0;
    double temp_high_c = 25.0;
    double rh_low_pct = 30.0;
    double rh_high_pct = 80.0;
};

struct MpcConfig {
    double weight_temp = 100.0;
    double weight_humidity = 100.0;
    double weight_energy = 50.0;
    double prediction_horizon_s = 3600.0;
    double control_interval_s = 600.0;
    double u_min = 4.0;    // m^3/h per animal
    double u_max = 120.0;
    int max_iterations = 200;
    double tolerance = 1e-6;  // relative cost change

    int horizon_steps() const
    {
        return static_cast<int>(std::lround(prediction_horizon_s / control_interval_s));
    }
};

struct RuleConfig {
    double setpoint_c = 20.0;
    double bandwidth_c = 4.0;
    double u_min = 4.0;
    double u_max = 120.0;
};

enum class ForecastMode { perfect, persistence };

// Distance to the nearest band edge, zero inside.
inline double band_distance(double value, double low, double high)
{
    if (low >= high)
        throw std::invalid_argument("band_distance: low must be below high");
    return std::max({0.0, low - value, value - high});
}

// Quadratic penalty on comfort-band violation plus a normalized energy term.
inline double stage_cost(double temp_c, double rh_pct, double u, const MpcConfig& cfg,
                         const ComfortBands& bands)
{
    const double dev_t = band_distance(temp_c, bands.temp_low_c, bands.temp_high_c);
    const double dev_rh = band_distance(rh_pct, bands.rh_low_pct, bands.rh_high_pct);
    const double u_norm = u / cfg.u_max;
    return cfg.weight_temp * dev_t * dev_t + cfg.weight_humidity * dev_rh * dev_rh +
           cfg.weight_energy * u_norm * u_norm;
}

// Minimum below the setpoint, linear ramp across the bandwidth, maximum
// beyond. Continuous and nondecreasing.
inline double rule_based(double indoor_temp_c, const RuleConfig& cfg)
{
    if (cfg.bandwidth_c <= 0.0)
        throw std::invalid_argument("rule_based: bandwidth must be positive");
    if (indoor_temp_c <= cfg.setpoint_c)
        return cfg.u_min;
    if (indoor_temp_c >= cfg.setpoint_c + cfg.bandwidth_c)
        return cfg.u_max;
    const double frac = (indoor_temp_c - cfg.setpoint_c) / cfg.bandwidth_c;
    return cfg.u_min + (cfg.u_max - cfg.u_min) * frac;
}

// Rolls the plant forward under a candidate control sequence and sums the
// stage costs of the visited states. Infeasible candidates cost +inf.
inline double predict_cost(const std::vector<double>& u_sequence,
                           const plant::HouseState& initial,
                           const std::vector<plant::Exogenous>& exo_forecast,
                           const plant::PlantParams& params, const MpcConfig& cfg,
                           const ComfortBands& bands)
{
    if (exo_forecast.size() < u_sequence.size())
        throw std::invalid_argument("predict_cost: forecast shorter than control sequence");
    double total = 0.0;
    plant::HouseState state = initial;
    for (std::size_t k = 0; k < u_sequence.size(); ++k) {
        try {
            state = plant::step(state, u_sequence[k], exo_forecast[k], params,
                                cfg.control_interval_s).state;
        } catch (const std::exception&) {
            return std::numeric_limits<double>::infinity();
        }
        total += stage_cost(state.indoor_temperature_c, state.indoor_rh_pct, u_sequence[k],
                            cfg, bands);
    }
    return total;
}

struct MpcSolution {
    std::vector<double> sequence;
    double first_move = 0.0;
    double cost = 0.0;
    bool converged = true;
};

namespace detail {

inline constexpr int kGridLevels = 9;

inline double grid_level(const MpcConfig& cfg, int level)
{
    return cfg.u_min + (cfg.u_max - cfg.u_min) * level / (kGridLevels - 1);
}

}  // namespace detail

// Box-constrained minimization of predict_cost: best of {warm start,
// constant u_min, constant u_max}, a coordinate-descent pass over a 9-level
// grid, then projected gradient descent with central finite differences and
// Armijo backtracking. Deterministic given identical inputs.
inline MpcSolution mpc_solve(const plant::HouseState& initial,
                             const std::vector<plant::Exogenous>& exo_forecast,
                             const plant::PlantParams& params, const MpcConfig& cfg,
                             const ComfortBands& bands,
                             const std::vector<double>& warm_start = {})
{
    const int n = cfg.horizon_steps();
    if (static_cast<int>(exo_forecast.size()) < n)
        throw std::invalid_argument("mpc_solve: forecast covers " +
                                    std::to_string(exo_forecast.size()) + " of " +
                                    std::to_string(n) + " horizon steps");

    const auto eval = [&](const std::vector<double>& u) {
        return predict_cost(u, initial, exo_forecast, params, cfg, bands);
    };
    const auto clamp_u = [&](double u) { return std::clamp(u, cfg.u_min, cfg.u_max); };

    std::vector<double> best(static_cast<std::size_t>(n), cfg.u_min);
    double best_cost = eval(best);

    const auto consider = [&](std::vector<double> u) {
        const double c = eval(u);
        if (c < best_cost) {
            best_cost = c;
            best = std::move(u);
        }
    };
    consider(std::vector<double>(static_cast<std::size_t>(n), cfg.u_max));
    if (static_cast<int>(warm_start.size()) == n) {
        std::vector<double> ws = warm_start;
        for (double& u : ws)
            u = clamp_u(u);
        consider(std::move(ws));
    }

    // Short horizons are cheap enough to enumerate the grid outright, which
    // sidesteps the local minima of the coordinate pass.
    if (n <= 3) {
        std::vector<int> idx(static_cast<std::size_t>(n), 0);
        for (;;) {
            std::vector<double> u(static_cast<std::size_t>(n));
            for (int k = 0; k < n; ++k)
                u[static_cast<std::size_t>(k)] = detail::grid_level(cfg, idx[static_cast<std::size_t>(k)]);
            consider(std::move(u));
            int k = 0;
            while (k < n && ++idx[static_cast<std::size_t>(k)] == detail::kGridLevels) {
                idx[static_cast<std::size_t>(k)] = 0;
                ++k;
            }
            if (k == n)
                break;
        }
    }

    // Coordinate descent on the grid until a full sweep stops improving.
    for (int sweep = 0; sweep < 4; ++sweep) {
        bool improved = false;
        for (int k = 0; k < n; ++k) {
            std::vector<double> trial = best;
            for (int level = 0; level < detail::kGridLevels; ++level) {
                trial[static_cast<std::size_t>(k)] = detail::grid_level(cfg, level);
                const double c = eval(trial);
                if (c < best_cost - 1e-12) {
                    best_cost = c;
                    best = trial;
                    improved = true;
                }
            }
        }
        if (!improved)
            break;
    }

    // Projected gradient refinement.
    const double fd_step = 0.5;  // m^3/h
    bool converged = false;
    double alpha = 1.0;
    std::vector<double> grad(static_cast<std::size_t>(n));
    for (int iter = 0; iter < cfg.max_iterations; ++iter) {
        for (int k = 0; k < n; ++k) {
            std::vector<double> up = best;
            std::vector<double> dn = best;
            up[static_cast<std::size_t>(k)] = clamp_u(best[static_cast<std::size_t>(k)] + fd_step);
            dn[static_cast<std::size_t>(k)] = clamp_u(best[static_cast<std::size_t>(k)] - fd_step);
            const double span = up[static_cast<std::size_t>(k)] - dn[static_cast<std::size_t>(k)];
            grad[static_cast<std::size_t>(k)] =
                span > 0.0 ? (eval(up) - eval(dn)) / span : 0.0;
        }
        const double grad_norm =
            std::sqrt(std::inner_product(grad.begin(), grad.end(), grad.begin(), 0.0));
        if (grad_norm == 0.0) {
            converged = true;
            break;
        }

        // Armijo backtracking on the projected step.
        bool accepted = false;
        for (int bt = 0; bt < 30; ++bt) {
            std::vector<double> trial(static_cast<std::size_t>(n));
            for (int k = 0; k < n; ++k)
                trial[static_cast<std::size_t>(k)] =
                    clamp_u(best[static_cast<std::size_t>(k)] -
                            alpha * grad[static_cast<std::size_t>(k)]);
            const double c = eval(trial);
            double decrease = 0.0;
            for (int k = 0; k < n; ++k)
                decrease += grad[static_cast<std::size_t>(k)] *
                            (best[static_cast<std::size_t>(k)] - trial[static_cast<std::size_t>(k)]);
            if (c <= best_cost - 1e-4 * decrease && c < best_cost) {
                const double rel = (best_cost - c) / std::max(std::abs(best_cost), 1e-12);
                best = std::move(trial);
                best_cost = c;
                accepted = true;
                alpha *= 2.0;
                if (rel < cfg.tolerance)
                    converged = true;
                break;
            }
            alpha *= 0.5;
        }
        if (!accepted) {
            converged = true;  // no descent direction left at this resolution
            break;
        }
        if (converged)
            break;
    }

    MpcSolution sol;
    sol.sequence = std::move(best);
    sol.first_move = sol.sequence.front();
    sol.cost = best_cost;
    sol.converged = converged;
    return sol;
}

namespace detail {

// Forecast for a solve starting at plant-step index i: exogenous records
// sampled every control interval, perfect foresight or persistence.
inline std::vector<plant::Exogenous> make_forecast(const std::vector<plant::Exogenous>& exo,
                                                   std::size_t start_index,
                                                   std::size_t stride, int horizon_steps,
                                                   ForecastMode mode)
{
    std::vector<plant::Exogenous> fc;
    fc.reserve(static_cast<std::size_t>(horizon_steps));
    for (int k = 0; k < horizon_steps; ++k) {
        if (mode == ForecastMode::persistence) {
            fc.push_back(exo[start_index]);
            continue;
        }
        const std::size_t idx = start_index + static_cast<std::size_t>(k) * stride;
        if (idx >= exo.size())
            throw std::invalid_argument(
                "receding horizon: exogenous series ends at step " + std::to_string(exo.size()) +
                " but the horizon from step " + std::to_string(start_index) + " needs step " +
                std::to_string(idx));
        fc.push_back(exo[idx]);
    }
    return fc;
}

}  // namespace detail

inline plant::TrajectoryLog run_rule_based(const plant::HouseState& initial,
                                           const std::vector<plant::Exogenous>& exo_series,
                                           std::size_t n_steps,
                                           const plant::PlantParams& params, double dt_s,
                                           const RuleConfig& rule,
                                           std::int64_t start_epoch_s = 0)
{
    if (exo_series.size() < n_steps)
        throw std::invalid_argument("run_rule_based: exogenous series shorter than run");
    plant::TrajectoryLog log;
    log.start_epoch_s = start_epoch_s;
    log.dt_s = dt_s;
    log.steps.reserve(n_steps);
    plant::HouseState state = initial;
    for (std::size_t i = 0; i < n_steps; ++i) {
        const double u = rule_based(state.indoor_temperature_c, rule);
        const auto r = plant::step(state, u, exo_series[i], params, dt_s);
        state = r.state;
        log.steps.push_back({u, r.state, r.heat, r.inlet_enthalpy, r.indoor_enthalpy,
                             r.condensation, std::numeric_limits<double>::quiet_NaN()});
    }
    return log;
}

// Rolling optimization: solve at every control interval, apply the first
// move across the interval, warm-start the next solve from the shifted
// solution padded with its last move.
inline plant::TrajectoryLog run_mpc(const plant::HouseState& initial,
                                    const std::vector<plant::Exogenous>& exo_series,
                                    std::size_t n_steps, const plant::PlantParams& params,
                                    double dt_s, const MpcConfig& cfg,
                                    const ComfortBands& bands,
                                    ForecastMode forecast = ForecastMode::perfect,
                                    std::int64_t start_epoch_s = 0)
{
    if (exo_series.size() < n_steps)
        throw std::invalid_argument("run_mpc: exogenous series shorter than run");
    const std::size_t stride =
        static_cast<std::size_t>(std::lround(cfg.control_interval_s / dt_s));
    if (stride == 0 || std::abs(stride * dt_s - cfg.control_interval_s) > 1e-9)
        throw std::invalid_argument("run_mpc: dt must divide the control interval");

    plant::TrajectoryLog log;
    log.start_epoch_s = start_epoch_s;
    log.dt_s = dt_s;
    log.steps.reserve(n_steps);
    plant::HouseState state = initial;
    std::vector<double> warm;
    double applied = cfg.u_min;
    double last_cost = std::numeric_limits<double>::quiet_NaN();
    for (std::size_t i = 0; i < n_steps; ++i) {
        if (i % stride == 0) {
            const auto forecast_series =
                detail::make_forecast(exo_series, i, stride, cfg.horizon_steps(), forecast);
            MpcSolution sol;
            try {
                sol = mpc_solve(state, forecast_series, params, cfg, bands, warm);
            } catch (const std::exception& e) {
                throw std::runtime_error("run_mpc: step " + std::to_string(i) + ": " + e.what());
            }
            applied = sol.first_move;
            last_cost = sol.cost;
            warm = std::move(sol.sequence);
            if (warm.size() > 1) {
                std::rotate(warm.begin(), warm.begin() + 1, warm.end());
                warm.back() = warm[warm.size() - 2];
            }
        }
        const auto r = plant::step(state, applied, exo_series[i], params, dt_s);
        state = r.state;
        log.steps.push_back({applied, r.state, r.heat, r.inlet_enthalpy, r.indoor_enthalpy,
                             r.condensation, last_cost});
    }
    return log;
}

}  // namespace pigvent::control
