#pragma once

#include <cmath>
#include <cstddef>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "pigvent/control.hpp"
#include "pigvent/plant.hpp"

// Validation statistics for predicted-vs-observed series and the
// controller-comparison summary (comfort-zone time percentages, fan energy).

namespace pigvent::metrics {

struct SeriesPair {
    std::vector<double> observed;
    std::vector<double> predicted;
};

class ZeroObserved : public std::runtime_error {
public:
    explicit ZeroObserved(std::size_t index)
        : std::runtime_error("mape: observed value at index " + std::to_string(index) +
                             " is zero"),
          index(index)
    {
    }
    std::size_t index;
};

namespace detail {

inline void require_pair(const SeriesPair& pair, const char* op)
{
    if (pair.observed.empty())
        throw std::invalid_argument(std::string(op) + ": empty series");
    if (pair.observed.size() != pair.predicted.size())
        throw std::invalid_argument(std::string(op) + ": series length mismatch (" +
                                    std::to_string(pair.observed.size()) + " vs " +
                                    std::to_string(pair.predicted.size()) + ")");
}

inline double observed_mean(const SeriesPair& pair)
{
    return std::accumulate(pair.observed.begin(), pair.observed.end(), 0.0) /
           static_cast<double>(pair.observed.size());
}

}  // namespace detail

inline double rmse(const SeriesPair& pair)
{
    detail::require_pair(pair, "rmse");
    double sum = 0.0;
    for (std::size_t i = 0; i < pair.observed.size(); ++i) {
        const double e = pair.observed[i] - pair.predicted[i];
        sum += e * e;
    }
    return std::sqrt(sum / static_cast<double>(pair.observed.size()));
}

inline double mape(const SeriesPair& pair)
{
    detail::require_pair(pair, "mape");
    double sum = 0.0;
    for (std::size_t i = 0; i < pair.observed.size(); ++i) {
        if (pair.observed[i] == 0.0)
            throw ZeroObserved(i);
        sum += std::abs(pair.predicted[i] - pair.observed[i]) / std::abs(pair.observed[i]);
    }
    return sum / static_cast<double>(pair.observed.size()) * 100.0;
}

// Dispersion of the predictions around the observed mean. Not the textbook
// standard deviation; see sd_standard.
inline double sd(const SeriesPair& pair)
{
    detail::require_pair(pair, "sd");
    const double mean = detail::observed_mean(pair);
    double sum = 0.0;
    for (const double p : pair.predicted)
        sum += (p - mean) * (p - mean);
    return std::sqrt(sum / static_cast<double>(pair.predicted.size()));
}

// Prediction variance over observed variance plus squared error. Equals 1
// for a perfect fit but is not the textbook coefficient of determination;
// see r2_standard.
inline double r2(const SeriesPair& pair)
{
    detail::require_pair(pair, "r2");
    const double mean = detail::observed_mean(pair);
    double num = 0.0, var_obs = 0.0, sse = 0.0;
    for (std::size_t i = 0; i < pair.observed.size(); ++i) {
        num += (pair.predicted[i] - mean) * (pair.predicted[i] - mean);
        var_obs += (pair.observed[i] - mean) * (pair.observed[i] - mean);
        sse += (pair.observed[i] - pair.predicted[i]) * (pair.observed[i] - pair.predicted[i]);
    }
    if (var_obs == 0.0)
        throw std::invalid_argument("r2: constant observed series");
    return num / (var_obs + sse);
}

// Textbook population standard deviation of the observed series.
inline double sd_standard(const SeriesPair& pair)
{
    detail::require_pair(pair, "sd_standard");
    const double mean = detail::observed_mean(pair);
    double sum = 0.0;
    for (const double o : pair.observed)
        sum += (o - mean) * (o - mean);
    return std::sqrt(sum / static_cast<double>(pair.observed.size()));
}

// Textbook coefficient of determination, 1 - SSres/SStot.
inline double r2_standard(const SeriesPair& pair)
{
    detail::require_pair(pair, "r2_standard");
    const double mean = detail::observed_mean(pair);
    double ss_tot = 0.0, ss_res = 0.0;
    for (std::size_t i = 0; i < pair.observed.size(); ++i) {
        ss_tot += (pair.observed[i] - mean) * (pair.observed[i] - mean);
        ss_res += (pair.observed[i] - pair.predicted[i]) * (pair.observed[i] - pair.predicted[i]);
    }
    if (ss_tot == 0.0)
        throw std::invalid_argument("r2_standard: constant observed series");
    return 1.0 - ss_res / ss_tot;
}

// Fraction of samples inside [low, high], inclusive at both edges.
inline double comfort_time_percentage(const std::vector<double>& series, double low, double high)
{
    if (series.empty())
        throw std::invalid_argument("comfort_time_percentage: empty series");
    std::size_t inside = 0;
    for (const double x : series)
        if (x >= low && x <= high)
            ++inside;
    return 100.0 * static_cast<double>(inside) / static_cast<double>(series.size());
}

enum class FanLaw { linear, cubic };

struct FanModel {
    double specific_fan_power = 0.4;  // W per (m^3/h) of total flow, at rated flow for cubic
    FanLaw law = FanLaw::linear;
    double rated_flow_m3h = 60000.0;  // cubic-law normalization point
};

inline double fan_power_w(const FanModel& fan, double total_flow_m3h)
{
    if (fan.law == FanLaw::linear)
        return fan.specific_fan_power * total_flow_m3h;
    const double frac = total_flow_m3h / fan.rated_flow_m3h;
    return fan.specific_fan_power * fan.rated_flow_m3h * frac * frac * frac;
}

inline double energy_consumption(const std::vector<double>& control_series_per_animal,
                                 double n_animals, const FanModel& fan, double dt_s)
{
    double kwh = 0.0;
    for (const double u : control_series_per_animal) {
        if (u < 0.0)
            throw std::invalid_argument("energy_consumption: negative ventilation rate");
        kwh += fan_power_w(fan, u * n_animals) * dt_s / 3.6e6;
    }
    return kwh;
}

struct MetricsReport {
    double rmse = 0.0;
    double mape_pct = 0.0;
    double sd = 0.0;
    double r2 = 0.0;
    double comfort_temp_pct = 0.0;
    double comfort_rh_pct = 0.0;
    double energy_kwh = 0.0;
};

inline MetricsReport summarize(const plant::TrajectoryLog& log, const control::ComfortBands& bands,
                               const FanModel& fan, double n_animals)
{
    if (log.steps.empty())
        throw std::invalid_argument("summarize: empty trajectory");
    std::vector<double> temps, rhs, controls;
    temps.reserve(log.steps.size());
    rhs.reserve(log.steps.size());
    controls.reserve(log.steps.size());
    for (const auto& s : log.steps) {
        temps.push_back(s.state.indoor_temperature_c);
        rhs.push_back(s.state.indoor_rh_pct);
        controls.push_back(s.u_per_animal);
    }
    MetricsReport rep;
    rep.comfort_temp_pct = comfort_time_percentage(temps, bands.temp_low_c, bands.temp_high_c);
    rep.comfort_rh_pct = comfort_time_percentage(rhs, bands.rh_low_pct, bands.rh_high_pct);
    rep.energy_kwh = energy_consumption(controls, n_animals, fan, log.dt_s);
    return rep;
}

struct ComparisonReport {
    MetricsReport a;
    MetricsReport b;
    double delta_comfort_temp_pct = 0.0;
    double delta_comfort_rh_pct = 0.0;
    double delta_energy_kwh = 0.0;
};

inline ComparisonReport compare_report(const plant::TrajectoryLog& log_a,
                                       const plant::TrajectoryLog& log_b,
                                       const control::ComfortBands& bands, const FanModel& fan,
                                       double n_animals)
{
    if (log_a.steps.size() != log_b.steps.size() || log_a.dt_s != log_b.dt_s ||
        log_a.start_epoch_s != log_b.start_epoch_s)
        throw std::invalid_argument("compare_report: logs cover different scenarios");
    ComparisonReport cmp;
    cmp.a = summarize(log_a, bands, fan, n_animals);
    cmp.b = summarize(log_b, bands, fan, n_animals);
    cmp.delta_comfort_temp_pct = cmp.a.comfort_temp_pct - cmp.b.comfort_temp_pct;
    cmp.delta_comfort_rh_pct = cmp.a.comfort_rh_pct - cmp.b.comfort_rh_pct;
    cmp.delta_energy_kwh = cmp.a.energy_kwh - cmp.b.energy_kwh;
    return cmp;
}

}  // namespace pigvent::metrics
