#pragma once

#include <filesystem>
#include <fstream>
#include <mutex>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "pigvent/control.hpp"
#include "pigvent/metrics.hpp"
#include "pigvent/scenario.hpp"
#include "pigvent/svg.hpp"

// End-to-end runs over a loaded scenario: simulate one controller, validate
// the plant against observed series, compare the two controllers, and sweep
// a parameter. The CLI is a thin shell around these.

namespace pigvent::runner {

enum class Controller { rule, mpc };

namespace detail {

inline std::vector<plant::Exogenous> scenario_exogenous(const scenario::Scenario& sc,
                                                        const std::vector<scenario::WeatherRecord>& recs)
{
    // Align the series with the simulation window.
    std::vector<plant::Exogenous> exo;
    const auto all = scenario::to_exogenous(recs);
    for (std::size_t i = 0; i < recs.size(); ++i)
        if (recs[i].epoch_s >= sc.start_epoch_s)
            exo.push_back(all[i]);
    return exo;
}

inline std::size_t window_offset(const scenario::Scenario& sc,
                                 const std::vector<scenario::WeatherRecord>& recs)
{
    for (std::size_t i = 0; i < recs.size(); ++i)
        if (recs[i].epoch_s >= sc.start_epoch_s)
            return i;
    return recs.size();
}

inline void write_trajectory_charts(const plant::TrajectoryLog& log,
                                    const control::ComfortBands& bands,
                                    const std::filesystem::path& path)
{
    svg::Chart temp{"Indoor temperature (degC)", "degC", {{"T_in", "#d62728", {}}},
                    {{bands.temp_low_c, bands.temp_high_c}}};
    svg::Chart rh{"Indoor relative humidity (%)", "%", {{"RH_in", "#1f77b4", {}}},
                  {{bands.rh_low_pct, bands.rh_high_pct}}};
    svg::Chart vent{"Ventilation (m3/h per animal)", "m3/h", {{"u", "#2ca02c", {}}}, {}};
    for (const auto& s : log.steps) {
        temp.series[0].values.push_back(s.state.indoor_temperature_c);
        rh.series[0].values.push_back(s.state.indoor_rh_pct);
        vent.series[0].values.push_back(s.u_per_animal);
    }
    svg::write_charts({temp, rh, vent}, path);
}

}  // namespace detail

struct SimulateResult {
    plant::TrajectoryLog log;
    metrics::MetricsReport report;
};

inline plant::TrajectoryLog run_controller(const scenario::Scenario& sc, Controller which,
                                           const std::vector<plant::Exogenous>& exo)
{
    const std::size_t n = sc.run_steps();
    if (which == Controller::rule)
        return control::run_rule_based(sc.initial, exo, n, sc.params, sc.dt_s, sc.rule,
                                       sc.start_epoch_s);
    return control::run_mpc(sc.initial, exo, n, sc.params, sc.dt_s, sc.mpc, sc.bands,
                            sc.forecast, sc.start_epoch_s);
}

inline SimulateResult simulate(const scenario::Scenario& sc, Controller which,
                               const std::filesystem::path& out_dir, bool charts)
{
    const auto records = scenario::load_timeseries(sc.weather_path, sc.dt_s);
    const auto exo = detail::scenario_exogenous(sc, records);
    SimulateResult res;
    res.log = run_controller(sc, which, exo);
    res.report = metrics::summarize(res.log, sc.bands, sc.fan,
                                    sc.params.ventilation_scale());
    std::filesystem::create_directories(out_dir);
    const std::string tag = which == Controller::rule ? "rule" : "mpc";
    scenario::write_results(res.log, out_dir / ("trajectory_" + tag + ".csv"));
    scenario::write_summary_report(res.report, sc, tag, out_dir / ("report_" + tag + ".txt"));
    if (charts)
        detail::write_trajectory_charts(res.log, sc.bands, out_dir / ("chart_" + tag + ".svg"));
    return res;
}

struct ValidateResult {
    plant::TrajectoryLog log;
    metrics::MetricsReport temperature;
    metrics::MetricsReport humidity;
};

// Replays the observed ventilation series through the plant and scores the
// predicted indoor series against the observed ones.
inline ValidateResult validate(const scenario::Scenario& sc,
                               const std::filesystem::path& out_dir, bool charts)
{
    const auto records = scenario::load_timeseries(sc.weather_path, sc.dt_s);
    const std::size_t off = detail::window_offset(sc, records);
    const std::size_t n = std::min(sc.run_steps(), records.size() - off);
    if (n == 0)
        throw std::invalid_argument("validate: weather series does not cover the window");

    std::vector<double> control_series;
    metrics::SeriesPair temp_pair, rh_pair;
    for (std::size_t i = off; i < off + n; ++i) {
        const auto& r = records[i];
        std::vector<std::string> missing;
        if (!r.observed_ventilation)
            missing.emplace_back("observed_ventilation");
        if (!r.observed_indoor_temperature_c)
            missing.emplace_back("observed_indoor_temperature");
        if (!r.observed_indoor_rh)
            missing.emplace_back("observed_indoor_rh");
        if (!missing.empty()) {
            std::string what = "validate: missing observed column(s) at " +
                               scenario::format_timestamp(r.epoch_s) + ":";
            for (const auto& m : missing)
                what += " " + m;
            throw std::invalid_argument(what);
        }
        control_series.push_back(*r.observed_ventilation);
        temp_pair.observed.push_back(*r.observed_indoor_temperature_c);
        rh_pair.observed.push_back(*r.observed_indoor_rh);
    }

    const auto exo = detail::scenario_exogenous(sc, records);
    std::vector<plant::Exogenous> window_exo(exo.begin(), exo.begin() + static_cast<long>(n));

    ValidateResult res;
    res.log = plant::simulate(sc.initial, control_series, window_exo, sc.params, sc.dt_s,
                              sc.start_epoch_s);
    for (const auto& s : res.log.steps) {
        temp_pair.predicted.push_back(s.state.indoor_temperature_c);
        rh_pair.predicted.push_back(s.state.indoor_rh_pct);
    }
    res.temperature.rmse = metrics::rmse(temp_pair);
    res.temperature.mape_pct = metrics::mape(temp_pair);
    res.temperature.sd = metrics::sd(temp_pair);
    res.temperature.r2 = metrics::r2(temp_pair);
    res.humidity.rmse = metrics::rmse(rh_pair);
    res.humidity.mape_pct = metrics::mape(rh_pair);
    res.humidity.sd = metrics::sd(rh_pair);
    res.humidity.r2 = metrics::r2(rh_pair);

    std::filesystem::create_directories(out_dir);
    scenario::write_results(res.log, out_dir / "trajectory_validate.csv");
    scenario::write_validation_report(res.temperature, res.humidity, sc,
                                      out_dir / "report_validate.txt");
    if (charts) {
        svg::Chart temp{"Indoor temperature: predicted vs observed (degC)",
                        "degC",
                        {{"predicted", "#d62728", temp_pair.predicted},
                         {"observed", "#7f7f7f", temp_pair.observed}},
                        {}};
        svg::Chart rh{"Indoor RH: predicted vs observed (%)",
                      "%",
                      {{"predicted", "#1f77b4", rh_pair.predicted},
                       {"observed", "#7f7f7f", rh_pair.observed}},
                      {}};
        svg::write_charts({temp, rh}, out_dir / "chart_validate.svg");
    }
    return res;
}

struct CompareResult {
    plant::TrajectoryLog mpc_log;
    plant::TrajectoryLog rule_log;
    metrics::ComparisonReport report;
};

inline CompareResult compare(const scenario::Scenario& sc, const std::filesystem::path& out_dir,
                             bool charts)
{
    const auto records = scenario::load_timeseries(sc.weather_path, sc.dt_s);
    const auto exo = detail::scenario_exogenous(sc, records);
    CompareResult res;
    res.mpc_log = run_controller(sc, Controller::mpc, exo);
    res.rule_log = run_controller(sc, Controller::rule, exo);
    res.report = metrics::compare_report(res.mpc_log, res.rule_log, sc.bands, sc.fan,
                                         sc.params.ventilation_scale());
    std::filesystem::create_directories(out_dir);
    scenario::write_results(res.mpc_log, out_dir / "trajectory_mpc.csv");
    scenario::write_results(res.rule_log, out_dir / "trajectory_rule.csv");
    scenario::write_comparison_report(res.report, sc, out_dir / "report_compare.txt");
    if (charts) {
        svg::Chart temp{"Indoor temperature (degC)",
                        "degC",
                        {{"MPC", "#d62728", {}}, {"rule-based", "#7f7f7f", {}}},
                        {{sc.bands.temp_low_c, sc.bands.temp_high_c}}};
        svg::Chart rh{"Indoor relative humidity (%)",
                      "%",
                      {{"MPC", "#1f77b4", {}}, {"rule-based", "#7f7f7f", {}}},
                      {{sc.bands.rh_low_pct, sc.bands.rh_high_pct}}};
        svg::Chart vent{"Ventilation (m3/h per animal)",
                        "m3/h",
                        {{"MPC", "#2ca02c", {}}, {"rule-based", "#7f7f7f", {}}},
                        {}};
        for (std::size_t i = 0; i < res.mpc_log.steps.size(); ++i) {
            temp.series[0].values.push_back(res.mpc_log.steps[i].state.indoor_temperature_c);
            temp.series[1].values.push_back(res.rule_log.steps[i].state.indoor_temperature_c);
            rh.series[0].values.push_back(res.mpc_log.steps[i].state.indoor_rh_pct);
            rh.series[1].values.push_back(res.rule_log.steps[i].state.indoor_rh_pct);
            vent.series[0].values.push_back(res.mpc_log.steps[i].u_per_animal);
            vent.series[1].values.push_back(res.rule_log.steps[i].u_per_animal);
        }
        svg::write_charts({temp, rh, vent}, out_dir / "chart_compare.svg");
    }
    return res;
}

struct SweepRow {
    double value = 0.0;
    metrics::ComparisonReport report;
};

// Runs compare once per parameter value, in parallel up to `workers`. Rows
// come back in the order the values were given.
inline std::vector<SweepRow> sweep(const scenario::Scenario& base, const std::string& parameter,
                                   const std::vector<double>& values,
                                   const std::filesystem::path& out_dir, int workers = 1)
{
    if (values.empty())
        throw std::invalid_argument("sweep: empty value list");
    {
        // Probe that the parameter names a numeric field.
        scenario::Scenario probe = base;
        if (const auto err = scenario::set_field(probe, parameter,
                                                 scenario::format_number(values.front())))
            throw std::invalid_argument("sweep: " + *err);
    }

    std::vector<SweepRow> rows(values.size());
    std::vector<std::string> failures(values.size());
    std::size_t next = 0;
    std::mutex mu;
    const auto worker = [&]() {
        for (;;) {
            std::size_t i;
            {
                std::lock_guard<std::mutex> lock(mu);
                if (next >= values.size())
                    return;
                i = next++;
            }
            try {
                scenario::Scenario sc = base;
                scenario::set_field(sc, parameter, scenario::format_number(values[i]));
                for (auto& e : scenario::validate_scenario(sc))
                    throw std::invalid_argument(e);
                const auto point_dir =
                    out_dir / ("sweep_" + std::to_string(i) + "_" +
                               scenario::format_number(values[i]));
                const auto res = compare(sc, point_dir, false);
                rows[i] = {values[i], res.report};
            } catch (const std::exception& e) {
                failures[i] = e.what();
            }
        }
    };

    std::filesystem::create_directories(out_dir);
    const int n_threads = std::max(1, std::min<int>(workers, static_cast<int>(values.size())));
    std::vector<std::thread> pool;
    for (int t = 0; t < n_threads; ++t)
        pool.emplace_back(worker);
    for (auto& t : pool)
        t.join();
    for (std::size_t i = 0; i < failures.size(); ++i)
        if (!failures[i].empty())
            throw std::runtime_error("sweep point " + parameter + "=" +
                                     scenario::format_number(values[i]) + ": " + failures[i]);

    std::ofstream out(out_dir / "sweep.csv");
    out << parameter
        << ",mpc_comfort_temp_pct,mpc_comfort_rh_pct,mpc_energy_kwh,"
           "rule_comfort_temp_pct,rule_comfort_rh_pct,rule_energy_kwh\n";
    for (const auto& row : rows) {
        out << scenario::format_number(row.value) << ','
            << scenario::format_number(row.report.a.comfort_temp_pct) << ','
            << scenario::format_number(row.report.a.comfort_rh_pct) << ','
            << scenario::format_number(row.report.a.energy_kwh) << ','
            << scenario::format_number(row.report.b.comfort_temp_pct) << ','
            << scenario::format_number(row.report.b.comfort_rh_pct) << ','
            << scenario::format_number(row.report.b.energy_kwh) << "\n";
    }
    return rows;
}

}  // namespace pigvent::runner
