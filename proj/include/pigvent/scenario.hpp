#pragma once

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "pigvent/control.hpp"
#include "pigvent/metrics.hpp"
#include "pigvent/plant.hpp"

// Scenario configuration files, weather CSV ingestion, and trajectory /
// report persistence. File grammars are documented in docs/formats.md.

namespace pigvent::scenario {

inline constexpr const char* kVersion = "1.0.0";

// ---------------------------------------------------------------- errors

// Carries every validation failure found in an input, not just the first.
class LoadError : public std::runtime_error {
public:
    explicit LoadError(std::vector<std::string> failures)
        : std::runtime_error(join(failures)), failures(std::move(failures))
    {
    }
    std::vector<std::string> failures;

private:
    static std::string join(const std::vector<std::string>& msgs)
    {
        std::string out;
        for (const auto& m : msgs) {
            if (!out.empty())
                out += "\n";
            out += m;
        }
        return out;
    }
};

// ------------------------------------------------------------ timestamps

// Timezone-naive ISO-8601, seconds resolution: 2024-07-20T00:10:00.
inline std::optional<std::int64_t> parse_timestamp(const std::string& text)
{
    std::tm tm{};
    int y, mo, d, h, mi, s;
    char sep;
    if (std::sscanf(text.c_str(), "%d-%d-%d%c%d:%d:%d", &y, &mo, &d, &sep, &h, &mi, &s) != 7)
        return std::nullopt;
    if (sep != 'T' && sep != ' ')
        return std::nullopt;
    if (mo < 1 || mo > 12 || d < 1 || d > 31 || h < 0 || h > 23 || mi < 0 || mi > 59 || s < 0 ||
        s > 60)
        return std::nullopt;
    tm.tm_year = y - 1900;
    tm.tm_mon = mo - 1;
    tm.tm_mday = d;
    tm.tm_hour = h;
    tm.tm_min = mi;
    tm.tm_sec = s;
    return static_cast<std::int64_t>(timegm(&tm));
}

inline std::string format_timestamp(std::int64_t epoch_s)
{
    const std::time_t t = static_cast<std::time_t>(epoch_s);
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[40];
    std::snprintf(buf, sizeof buf, "%04d-%02d-%02dT%02d:%02d:%02d", tm.tm_year + 1900,
                  tm.tm_mon + 1, tm.tm_mday, tm.tm_hour, tm.tm_min, tm.tm_sec);
    return buf;
}

// ---------------------------------------------------------- number format

// 9 significant digits; round-trips through re-parse within 1e-9.
inline std::string format_number(double v)
{
    if (std::isnan(v))
        return "";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.9g", v);
    return buf;
}

// -------------------------------------------------------------- scenario

struct Scenario {
    std::string name;
    plant::PlantParams params;
    control::ComfortBands bands;
    control::RuleConfig rule;
    control::MpcConfig mpc;
    control::ForecastMode forecast = control::ForecastMode::perfect;
    metrics::FanModel fan;
    std::int64_t start_epoch_s = 0;
    std::int64_t end_epoch_s = 0;
    double dt_s = 600.0;
    std::filesystem::path weather_path;
    plant::HouseState initial;

    std::size_t run_steps() const
    {
        return static_cast<std::size_t>((end_epoch_s - start_epoch_s) /
                                        static_cast<std::int64_t>(dt_s));
    }
};

namespace detail {

inline std::string lower(std::string s)
{
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return s;
}

inline std::string trim(const std::string& s)
{
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos)
        return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

inline std::optional<double> parse_double(const std::string& text)
{
    try {
        std::size_t pos = 0;
        const double v = std::stod(text, &pos);
        if (pos != text.size())
            return std::nullopt;
        return v;
    } catch (const std::exception&) {
        return std::nullopt;
    }
}

inline std::optional<bool> parse_bool(const std::string& text)
{
    const std::string t = lower(text);
    if (t == "true" || t == "on" || t == "1")
        return true;
    if (t == "false" || t == "off" || t == "0")
        return false;
    return std::nullopt;
}

}  // namespace detail

// Assigns one scenario field addressed as "section.key". Returns an error
// message on unknown fields or unparseable values; used by both the file
// loader and the CLI --override mechanism.
inline std::optional<std::string> set_field(Scenario& sc, const std::string& dotted_key,
                                            const std::string& value)
{
    const auto dot = dotted_key.find('.');
    const std::string section = dot == std::string::npos ? "" : dotted_key.substr(0, dot);
    const std::string key = dot == std::string::npos ? dotted_key : dotted_key.substr(dot + 1);

    const auto num = [&]() { return detail::parse_double(value); };
    const auto bad_number = [&]() {
        return "field '" + dotted_key + "': cannot parse '" + value + "' as a number";
    };

    const auto set_num = [&](double& target) -> std::optional<std::string> {
        if (const auto v = num()) {
            target = *v;
            return std::nullopt;
        }
        return bad_number();
    };
    const auto set_time = [&](std::int64_t& target) -> std::optional<std::string> {
        if (const auto t = parse_timestamp(value)) {
            target = *t;
            return std::nullopt;
        }
        return "field '" + dotted_key + "': cannot parse '" + value + "' as a timestamp";
    };

    if (section.empty()) {
        if (key == "name") {
            sc.name = value;
            return std::nullopt;
        }
    } else if (section == "house") {
        if (key == "room_volume") return set_num(sc.params.room_volume_m3);
        if (key == "air_density") return set_num(sc.params.air_density);
        if (key == "pressure") return set_num(sc.params.pressure_kpa);
        if (key == "devices_heat") return set_num(sc.params.q_devices_w);
        if (key == "moisture_production") return set_num(sc.params.moisture_production);
        if (key == "first_order_mixing") {
            if (const auto b = detail::parse_bool(value)) {
                sc.params.first_order_mixing = *b;
                return std::nullopt;
            }
            return "field '" + dotted_key + "': cannot parse '" + value + "' as a boolean";
        }
    } else if (section == "pigs") {
        if (key == "count") {
            if (const auto v = num()) {
                sc.params.pigs.count = static_cast<int>(*v);
                return std::nullopt;
            }
            return bad_number();
        }
        if (key == "weight") return set_num(sc.params.pigs.weight_kg);
        if (key == "air_speed") return set_num(sc.params.pigs.air_speed_ms);
        if (key == "skin_temperature") return set_num(sc.params.pigs.skin_temperature_c);
        if (key == "emissivity") return set_num(sc.params.pigs.emissivity);
    } else if (section == "envelope") {
        if (key == "conductivity") return set_num(sc.params.envelope.conductivity);
        if (key == "area") return set_num(sc.params.envelope.area_m2);
        if (key == "thickness") return set_num(sc.params.envelope.thickness_m);
    } else if (section == "comfort") {
        if (key == "temp_low") return set_num(sc.bands.temp_low_c);
        if (key == "temp_high") return set_num(sc.bands.temp_high_c);
        if (key == "rh_low") return set_num(sc.bands.rh_low_pct);
        if (key == "rh_high") return set_num(sc.bands.rh_high_pct);
    } else if (section == "rule") {
        if (key == "setpoint") return set_num(sc.rule.setpoint_c);
        if (key == "bandwidth") return set_num(sc.rule.bandwidth_c);
        if (key == "u_min") return set_num(sc.rule.u_min);
        if (key == "u_max") return set_num(sc.rule.u_max);
    } else if (section == "mpc") {
        if (key == "weight_temp") return set_num(sc.mpc.weight_temp);
        if (key == "weight_humidity") return set_num(sc.mpc.weight_humidity);
        if (key == "weight_energy") return set_num(sc.mpc.weight_energy);
        if (key == "prediction_horizon") return set_num(sc.mpc.prediction_horizon_s);
        if (key == "control_interval") return set_num(sc.mpc.control_interval_s);
        if (key == "u_min") return set_num(sc.mpc.u_min);
        if (key == "u_max") return set_num(sc.mpc.u_max);
        if (key == "max_iterations") {
            if (const auto v = num()) {
                sc.mpc.max_iterations = static_cast<int>(*v);
                return std::nullopt;
            }
            return bad_number();
        }
        if (key == "tolerance") return set_num(sc.mpc.tolerance);
        if (key == "forecast") {
            const std::string v = detail::lower(value);
            if (v == "perfect") {
                sc.forecast = control::ForecastMode::perfect;
                return std::nullopt;
            }
            if (v == "persistence") {
                sc.forecast = control::ForecastMode::persistence;
                return std::nullopt;
            }
            return "field 'mpc.forecast': expected 'perfect' or 'persistence', got '" + value +
                   "'";
        }
    } else if (section == "fan") {
        if (key == "specific_fan_power") return set_num(sc.fan.specific_fan_power);
        if (key == "rated_flow") return set_num(sc.fan.rated_flow_m3h);
        if (key == "law") {
            const std::string v = detail::lower(value);
            if (v == "linear") {
                sc.fan.law = metrics::FanLaw::linear;
                return std::nullopt;
            }
            if (v == "cubic") {
                sc.fan.law = metrics::FanLaw::cubic;
                return std::nullopt;
            }
            return "field 'fan.law': expected 'linear' or 'cubic', got '" + value + "'";
        }
    } else if (section == "simulation") {
        if (key == "start") return set_time(sc.start_epoch_s);
        if (key == "end") return set_time(sc.end_epoch_s);
        if (key == "dt") return set_num(sc.dt_s);
        if (key == "weather") {
            sc.weather_path = value;
            return std::nullopt;
        }
        if (key == "initial_temperature") return set_num(sc.initial.indoor_temperature_c);
        if (key == "initial_rh") return set_num(sc.initial.indoor_rh_pct);
    }
    return "unknown field '" + dotted_key + "'";
}

// Cross-field checks run after all assignments.
inline std::vector<std::string> validate_scenario(const Scenario& sc)
{
    std::vector<std::string> errs;
    const auto require = [&](bool ok, const std::string& msg) {
        if (!ok)
            errs.push_back(msg);
    };
    require(sc.params.room_volume_m3 > 0, "house.room_volume must be positive");
    require(sc.params.air_density > 0, "house.air_density must be positive");
    require(sc.params.pressure_kpa > 0, "house.pressure must be positive");
    require(sc.params.moisture_production >= 0, "house.moisture_production must be nonnegative");
    require(sc.params.pigs.count >= 0, "pigs.count must be nonnegative");
    require(sc.params.pigs.count == 0 || sc.params.pigs.weight_kg > 0,
            "pigs.weight must be positive");
    require(sc.params.pigs.air_speed_ms >= 0, "pigs.air_speed must be nonnegative");
    require(sc.params.pigs.emissivity >= 0 && sc.params.pigs.emissivity <= 1,
            "pigs.emissivity must be in [0, 1]");
    require(sc.params.envelope.conductivity > 0, "envelope.conductivity must be positive");
    require(sc.params.envelope.area_m2 > 0, "envelope.area must be positive");
    require(sc.params.envelope.thickness_m > 0, "envelope.thickness must be positive");
    require(sc.bands.temp_low_c < sc.bands.temp_high_c,
            "comfort temperature band: temp_low must be below temp_high");
    require(sc.bands.rh_low_pct < sc.bands.rh_high_pct,
            "comfort humidity band: rh_low must be below rh_high");
    require(sc.rule.bandwidth_c > 0, "rule.bandwidth must be positive");
    require(sc.rule.u_min < sc.rule.u_max, "rule ventilation limits: u_min must be below u_max");
    require(sc.mpc.u_min < sc.mpc.u_max, "mpc ventilation limits: u_min must be below u_max");
    require(sc.mpc.weight_temp >= 0 && sc.mpc.weight_humidity >= 0 && sc.mpc.weight_energy >= 0,
            "mpc weights must be nonnegative");
    require(sc.dt_s > 0, "simulation.dt must be positive");
    if (sc.dt_s > 0 && sc.mpc.control_interval_s > 0) {
        const double ratio = sc.mpc.control_interval_s / sc.dt_s;
        require(std::abs(ratio - std::round(ratio)) < 1e-9,
                "simulation.dt must divide mpc.control_interval");
        const double hsteps = sc.mpc.prediction_horizon_s / sc.mpc.control_interval_s;
        require(std::abs(hsteps - std::round(hsteps)) < 1e-9 && hsteps >= 1,
                "mpc.prediction_horizon must be a positive multiple of mpc.control_interval");
    }
    require(sc.end_epoch_s > sc.start_epoch_s, "simulation window is empty");
    require(!sc.weather_path.empty(), "simulation.weather is required");
    return errs;
}

// Parses the key-value scenario grammar. Reports every parse and semantic
// failure at once; resolves the weather path against the scenario file
// directory and checks it exists.
inline Scenario load_scenario(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in)
        throw LoadError({"cannot open scenario file: " + path.string()});

    Scenario sc;
    std::vector<std::string> errs;
    std::string line;
    std::string section;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string t = detail::trim(line);
        if (t.empty() || t[0] == '#')
            continue;
        const std::string at = path.filename().string() + ":" + std::to_string(lineno);
        if (t.front() == '[') {
            if (t.back() != ']') {
                errs.push_back(at + ":" + std::to_string(line.find('[') + 1) +
                               ": unterminated section header");
                continue;
            }
            section = detail::trim(t.substr(1, t.size() - 2));
            continue;
        }
        const auto eq = t.find('=');
        if (eq == std::string::npos) {
            errs.push_back(at + ":1: expected 'key = value', got '" + t + "'");
            continue;
        }
        const std::string key = detail::trim(t.substr(0, eq));
        const std::string value = detail::trim(t.substr(eq + 1));
        const std::string dotted = section.empty() ? key : section + "." + key;
        if (const auto err = set_field(sc, dotted, value))
            errs.push_back(at + ": " + *err);
    }

    for (auto& e : validate_scenario(sc))
        errs.push_back(path.filename().string() + ": " + std::move(e));

    if (!sc.weather_path.empty()) {
        if (sc.weather_path.is_relative())
            sc.weather_path = path.parent_path() / sc.weather_path;
        if (!std::filesystem::exists(sc.weather_path))
            errs.push_back("weather file not found: " + sc.weather_path.string());
    }
    if (!errs.empty())
        throw LoadError(std::move(errs));
    return sc;
}

// ---------------------------------------------------------- weather CSV

struct WeatherRecord {
    std::int64_t epoch_s = 0;
    double outdoor_real_temperature_c = 0.0;
    double inlet_temperature_c = 0.0;
    double inlet_rh_pct = 0.0;
    double extra_gain_w = 0.0;
    std::optional<double> observed_indoor_temperature_c;
    std::optional<double> observed_indoor_rh;
    std::optional<double> observed_ventilation;  // m^3/h per animal
};

namespace detail {

inline std::vector<std::string> split_csv_line(const std::string& line)
{
    std::vector<std::string> out;
    std::string cell;
    std::stringstream ss(line);
    while (std::getline(ss, cell, ','))
        out.push_back(trim(cell));
    if (!line.empty() && line.back() == ',')
        out.emplace_back();
    return out;
}

}  // namespace detail

// Columns matched by name, case-insensitive. Required: timestamp,
// outdoor_real_temperature, inlet_temperature, inlet_relative_humidity.
// Optional: extra_gain, observed_indoor_temperature, observed_indoor_rh,
// observed_ventilation.
inline std::vector<WeatherRecord> load_timeseries(const std::filesystem::path& path,
                                                  double expected_dt_s)
{
    std::ifstream in(path);
    if (!in)
        throw LoadError({"cannot open weather file: " + path.string()});
    const std::string fname = path.filename().string();

    std::string line;
    if (!std::getline(in, line))
        throw LoadError({fname + ": empty file, expected a header row"});

    const auto header = detail::split_csv_line(line);
    const auto col = [&](const std::string& name) -> std::optional<std::size_t> {
        for (std::size_t i = 0; i < header.size(); ++i)
            if (detail::lower(header[i]) == name)
                return i;
        return std::nullopt;
    };
    std::vector<std::string> errs;
    const auto required = [&](const std::string& name) {
        const auto c = col(name);
        if (!c)
            errs.push_back(fname + ": missing required column '" + name + "'");
        return c.value_or(0);
    };
    const std::size_t c_ts = required("timestamp");
    const std::size_t c_tout = required("outdoor_real_temperature");
    const std::size_t c_tin = required("inlet_temperature");
    const std::size_t c_rh = required("inlet_relative_humidity");
    const auto c_gain = col("extra_gain");
    const auto c_obs_t = col("observed_indoor_temperature");
    const auto c_obs_rh = col("observed_indoor_rh");
    const auto c_obs_u = col("observed_ventilation");
    if (!errs.empty())
        throw LoadError(std::move(errs));

    std::vector<WeatherRecord> out;
    int row = 1;
    while (std::getline(in, line)) {
        ++row;
        if (detail::trim(line).empty())
            continue;
        const auto cells = detail::split_csv_line(line);
        const auto at = [&](const std::string& colname) {
            return fname + " row " + std::to_string(row) + ", column '" + colname + "'";
        };
        const auto cell_num = [&](std::size_t c, const std::string& colname) -> double {
            if (c >= cells.size()) {
                errs.push_back(at(colname) + ": missing cell");
                return 0.0;
            }
            if (const auto v = detail::parse_double(cells[c]))
                return *v;
            errs.push_back(at(colname) + ": cannot parse '" + cells[c] + "' as a number");
            return 0.0;
        };

        WeatherRecord rec;
        if (c_ts >= cells.size()) {
            errs.push_back(at("timestamp") + ": missing cell");
            continue;
        }
        if (const auto ts = parse_timestamp(cells[c_ts]))
            rec.epoch_s = *ts;
        else {
            errs.push_back(at("timestamp") + ": cannot parse '" + cells[c_ts] + "'");
            continue;
        }
        rec.outdoor_real_temperature_c = cell_num(c_tout, "outdoor_real_temperature");
        rec.inlet_temperature_c = cell_num(c_tin, "inlet_temperature");
        rec.inlet_rh_pct = cell_num(c_rh, "inlet_relative_humidity");
        if (rec.inlet_rh_pct < 0.0 || rec.inlet_rh_pct > 100.0)
            errs.push_back(at("inlet_relative_humidity") + ": value " +
                           format_number(rec.inlet_rh_pct) + " outside [0, 100]");
        if (c_gain && *c_gain < cells.size() && !cells[*c_gain].empty())
            rec.extra_gain_w = cell_num(*c_gain, "extra_gain");
        const auto optional_cell = [&](const std::optional<std::size_t>& c,
                                       const std::string& colname) -> std::optional<double> {
            if (!c || *c >= cells.size() || cells[*c].empty())
                return std::nullopt;
            return cell_num(*c, colname);
        };
        rec.observed_indoor_temperature_c = optional_cell(c_obs_t, "observed_indoor_temperature");
        rec.observed_indoor_rh = optional_cell(c_obs_rh, "observed_indoor_rh");
        if (rec.observed_indoor_rh && (*rec.observed_indoor_rh < 0.0 || *rec.observed_indoor_rh > 100.0))
            errs.push_back(at("observed_indoor_rh") + ": value " +
                           format_number(*rec.observed_indoor_rh) + " outside [0, 100]");
        rec.observed_ventilation = optional_cell(c_obs_u, "observed_ventilation");

        if (!out.empty()) {
            const auto prev = out.back().epoch_s;
            if (rec.epoch_s <= prev)
                errs.push_back(fname + " row " + std::to_string(row) +
                               ": timestamp not strictly increasing (" +
                               format_timestamp(prev) + " then " + format_timestamp(rec.epoch_s) +
                               ")");
            else if (static_cast<double>(rec.epoch_s - prev) != expected_dt_s)
                errs.push_back(fname + " row " + std::to_string(row) + ": gap between " +
                               format_timestamp(prev) + " and " + format_timestamp(rec.epoch_s) +
                               " is " + std::to_string(rec.epoch_s - prev) + " s, expected " +
                               format_number(expected_dt_s));
        }
        out.push_back(rec);
    }
    if (!errs.empty())
        throw LoadError(std::move(errs));
    return out;
}

inline std::vector<plant::Exogenous> to_exogenous(const std::vector<WeatherRecord>& records)
{
    std::vector<plant::Exogenous> out;
    out.reserve(records.size());
    for (const auto& r : records)
        out.push_back({r.inlet_temperature_c, r.inlet_rh_pct, r.outdoor_real_temperature_c,
                       r.extra_gain_w});
    return out;
}

// ------------------------------------------------------- trajectory CSV

inline constexpr const char* kTrajectoryHeader =
    "timestamp,indoor_temperature,indoor_rh,ventilation_per_animal,q_pig,q_envelope,q_devices,"
    "inlet_enthalpy,indoor_enthalpy,solver_cost,flags";

inline void write_results(const plant::TrajectoryLog& log, const std::filesystem::path& path)
{
    std::ofstream out(path);
    if (!out)
        throw std::runtime_error("cannot write trajectory file: " + path.string());
    out << kTrajectoryHeader << "\n";
    for (std::size_t i = 0; i < log.steps.size(); ++i) {
        const auto& s = log.steps[i];
        const std::int64_t ts =
            log.start_epoch_s + static_cast<std::int64_t>(log.dt_s * static_cast<double>(i));
        out << format_timestamp(ts) << ',' << format_number(s.state.indoor_temperature_c) << ','
            << format_number(s.state.indoor_rh_pct) << ',' << format_number(s.u_per_animal) << ','
            << format_number(s.heat.q_pig_w) << ',' << format_number(s.heat.q_envelope_w) << ','
            << format_number(s.heat.q_devices_w) << ',' << format_number(s.inlet_enthalpy) << ','
            << format_number(s.indoor_enthalpy) << ',' << format_number(s.solver_cost) << ','
            << (s.condensation ? "condensation" : "") << "\n";
    }
    if (!out)
        throw std::runtime_error("write failed: " + path.string());
}

inline plant::TrajectoryLog read_results(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in)
        throw LoadError({"cannot open trajectory file: " + path.string()});
    std::string line;
    if (!std::getline(in, line) || detail::trim(line) != kTrajectoryHeader)
        throw LoadError({path.string() + ": not a trajectory file (bad header)"});
    plant::TrajectoryLog log;
    std::vector<std::string> errs;
    int row = 1;
    while (std::getline(in, line)) {
        ++row;
        if (detail::trim(line).empty())
            continue;
        const auto cells = detail::split_csv_line(line);
        if (cells.size() != 11) {
            errs.push_back(path.filename().string() + " row " + std::to_string(row) +
                           ": expected 11 cells, got " + std::to_string(cells.size()));
            continue;
        }
        const auto ts = parse_timestamp(cells[0]);
        if (!ts) {
            errs.push_back(path.filename().string() + " row " + std::to_string(row) +
                           ": bad timestamp '" + cells[0] + "'");
            continue;
        }
        const auto num = [&](std::size_t i) {
            if (cells[i].empty())
                return std::numeric_limits<double>::quiet_NaN();
            if (const auto v = detail::parse_double(cells[i]))
                return *v;
            errs.push_back(path.filename().string() + " row " + std::to_string(row) +
                           ": bad number '" + cells[i] + "'");
            return 0.0;
        };
        plant::LogStep s;
        s.state.indoor_temperature_c = num(1);
        s.state.indoor_rh_pct = num(2);
        s.u_per_animal = num(3);
        s.heat.q_pig_w = num(4);
        s.heat.q_envelope_w = num(5);
        s.heat.q_devices_w = num(6);
        s.heat.q_total_w = s.heat.q_pig_w + s.heat.q_envelope_w + s.heat.q_devices_w;
        s.inlet_enthalpy = num(7);
        s.indoor_enthalpy = num(8);
        s.solver_cost = num(9);
        s.condensation = cells[10] == "condensation";
        if (log.steps.empty())
            log.start_epoch_s = *ts;
        else if (log.steps.size() == 1)
            log.dt_s = static_cast<double>(*ts - log.start_epoch_s);
        log.steps.push_back(s);
    }
    if (!errs.empty())
        throw LoadError(std::move(errs));
    return log;
}

// -------------------------------------------------------------- reports

// FNV-1a, for tagging reports with the digest of their input file.
inline std::string file_digest(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        return "unavailable";
    std::uint64_t h = 1469598103934665603ULL;
    char c;
    while (in.get(c)) {
        h ^= static_cast<unsigned char>(c);
        h *= 1099511628211ULL;
    }
    char buf[20];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

inline void write_report_header(std::ostream& out, const Scenario& sc)
{
    out << "software_version = " << kVersion << "\n";
    out << "scenario = " << sc.name << "\n";
    out << "weather_file = " << sc.weather_path.filename().string() << "\n";
    out << "weather_digest = " << file_digest(sc.weather_path) << "\n";
    out << "window = " << format_timestamp(sc.start_epoch_s) << " .. "
        << format_timestamp(sc.end_epoch_s) << "\n";
    out << "dt = " << format_number(sc.dt_s) << "\n";
    out << "pigs.count = " << sc.params.pigs.count << "\n";
    out << "comfort.temp = [" << format_number(sc.bands.temp_low_c) << ", "
        << format_number(sc.bands.temp_high_c) << "]\n";
    out << "comfort.rh = [" << format_number(sc.bands.rh_low_pct) << ", "
        << format_number(sc.bands.rh_high_pct) << "]\n";
    out << "mpc.weights = [" << format_number(sc.mpc.weight_temp) << ", "
        << format_number(sc.mpc.weight_humidity) << ", " << format_number(sc.mpc.weight_energy)
        << "]\n";
}

inline void write_summary_report(const metrics::MetricsReport& rep, const Scenario& sc,
                                 const std::string& controller,
                                 const std::filesystem::path& path)
{
    std::ofstream out(path);
    if (!out)
        throw std::runtime_error("cannot write report file: " + path.string());
    out << "[run]\n";
    write_report_header(out, sc);
    out << "controller = " << controller << "\n\n[summary]\n";
    out << "comfort_temp_pct = " << format_number(rep.comfort_temp_pct) << "\n";
    out << "comfort_rh_pct = " << format_number(rep.comfort_rh_pct) << "\n";
    out << "energy_kwh = " << format_number(rep.energy_kwh) << "\n";
}

inline void write_validation_report(const metrics::MetricsReport& temp,
                                    const metrics::MetricsReport& rh, const Scenario& sc,
                                    const std::filesystem::path& path)
{
    std::ofstream out(path);
    if (!out)
        throw std::runtime_error("cannot write report file: " + path.string());
    out << "[run]\n";
    write_report_header(out, sc);
    out << "\n[temperature]\n";
    out << "rmse = " << format_number(temp.rmse) << "\n";
    out << "mape_pct = " << format_number(temp.mape_pct) << "\n";
    out << "sd = " << format_number(temp.sd) << "\n";
    out << "r2 = " << format_number(temp.r2) << "\n";
    out << "\n[relative_humidity]\n";
    out << "rmse = " << format_number(rh.rmse) << "\n";
    out << "mape_pct = " << format_number(rh.mape_pct) << "\n";
    out << "sd = " << format_number(rh.sd) << "\n";
    out << "r2 = " << format_number(rh.r2) << "\n";
}

// Side-by-side comparison in both a machine-readable section and a
// plain-text table.
inline void write_comparison_report(const metrics::ComparisonReport& cmp, const Scenario& sc,
                                    const std::filesystem::path& path)
{
    std::ofstream out(path);
    if (!out)
        throw std::runtime_error("cannot write report file: " + path.string());
    out << "[run]\n";
    write_report_header(out, sc);
    out << "\n[mpc]\n";
    out << "comfort_temp_pct = " << format_number(cmp.a.comfort_temp_pct) << "\n";
    out << "comfort_rh_pct = " << format_number(cmp.a.comfort_rh_pct) << "\n";
    out << "energy_kwh = " << format_number(cmp.a.energy_kwh) << "\n";
    out << "\n[rule_based]\n";
    out << "comfort_temp_pct = " << format_number(cmp.b.comfort_temp_pct) << "\n";
    out << "comfort_rh_pct = " << format_number(cmp.b.comfort_rh_pct) << "\n";
    out << "energy_kwh = " << format_number(cmp.b.energy_kwh) << "\n";
    out << "\n[delta]\n";
    out << "comfort_temp_pct = " << format_number(cmp.delta_comfort_temp_pct) << "\n";
    out << "comfort_rh_pct = " << format_number(cmp.delta_comfort_rh_pct) << "\n";
    out << "energy_kwh = " << format_number(cmp.delta_energy_kwh) << "\n";
    out << "\n# Performance Metric                              MPC        Rule-based\n";
    const auto line = [&](const char* label, double a, double b) {
        char buf[120];
        std::snprintf(buf, sizeof buf, "# %-46s %-10s %-10s\n", label,
                      format_number(a).c_str(), format_number(b).c_str());
        out << buf;
    };
    line("Comfort Temperature Zone (Time Percentage)", cmp.a.comfort_temp_pct,
         cmp.b.comfort_temp_pct);
    line("Comfort Humidity Zone (Time Percentage)", cmp.a.comfort_rh_pct, cmp.b.comfort_rh_pct);
    line("Energy Consumption (kWh)", cmp.a.energy_kwh, cmp.b.energy_kwh);
}

}  // namespace pigvent::scenario
