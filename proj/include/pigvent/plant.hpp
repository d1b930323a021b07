#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "pigvent/heatload.hpp"
#include "pigvent/psychro.hpp"

// The thermal ventilation dynamics: enthalpy balance across the inlet air
// stream, quasi-steady per-timestep state update, and the steady-state
// required-ventilation solver.

namespace pigvent::plant {

struct HouseState {
    double indoor_temperature_c = 20.0;
    double indoor_rh_pct = 50.0;
};

// Per-step boundary conditions. Inlet values are the after-cooling-pad air
// stream; the real outdoor temperature drives envelope conduction.
struct Exogenous {
    double inlet_temperature_c = 20.0;
    double inlet_rh_pct = 50.0;
    double outdoor_real_temperature_c = 20.0;
    double extra_gain_w = 0.0;  // solar / auxiliary, no model of its own
};

struct PlantParams {
    heatload::PigGroup pigs;
    heatload::Envelope envelope;
    double q_devices_w = 0.0;
    double air_density = 1.2;       // kg/m^3
    double room_volume_m3 = 1000.0;
    double moisture_production = 0.0;  // kg water/h per animal
    double pressure_kpa = psychro::kStandardPressureKpa;
    // When true, the state relaxes toward the quasi-steady target with time
    // constant room_volume / volumetric flow instead of jumping to it.
    bool first_order_mixing = false;

    // Control is m^3/h per animal; an empty pen still ventilates, so the
    // scale never drops below one.
    double ventilation_scale() const { return pigs.count > 0 ? pigs.count : 1.0; }
};

class InfeasibleVentilation : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Indoor enthalpy after mixing the heat load into the inlet stream, kJ/kg.
// The 3.6 converts W to kJ/h against a kg/h mass flow.
inline double mixed_enthalpy(double inlet_enthalpy, double q_total_w,
                             double total_ventilation_m3h, double density)
{
    if (total_ventilation_m3h <= 0.0)
        throw InfeasibleVentilation("mixed_enthalpy: ventilation rate must be positive, got " +
                                    std::to_string(total_ventilation_m3h));
    return inlet_enthalpy + 3.6 * q_total_w / (density * total_ventilation_m3h);
}

// Ventilation rate that holds the house at the target enthalpy, m^3/h.
// Exact inverse of mixed_enthalpy in the flow argument.
inline double required_ventilation(double q_total_w, double target_indoor_enthalpy,
                                   double inlet_enthalpy, double density)
{
    if (q_total_w == 0.0)
        return 0.0;
    const double delta_h = target_indoor_enthalpy - inlet_enthalpy;
    if (std::abs(delta_h) < 1e-9)
        throw InfeasibleVentilation(
            "required_ventilation: target and inlet enthalpy coincide, no finite rate exists");
    const double rate = 3.6 * q_total_w / (density * delta_h);
    if (rate < 0.0)
        throw InfeasibleVentilation(
            "required_ventilation: heat load and enthalpy difference have opposite signs");
    return rate;
}

// Quasi-steady indoor specific humidity given a total in-house moisture
// source, kg/kg.
inline double moisture_update(double inlet_specific_humidity, double moisture_production_kgh,
                              double total_ventilation_m3h, double density)
{
    if (total_ventilation_m3h <= 0.0)
        throw InfeasibleVentilation("moisture_update: ventilation rate must be positive");
    return inlet_specific_humidity + moisture_production_kgh / (density * total_ventilation_m3h);
}

struct StepResult {
    HouseState state;
    heatload::HeatBreakdown heat;
    double inlet_enthalpy = 0.0;
    double indoor_enthalpy = 0.0;
    double total_ventilation_m3h = 0.0;
    bool condensation = false;  // RH hit 100 % and was clamped
};

namespace detail {

// Temperature of saturated air (RH = 100 %) holding the given enthalpy;
// bisection on the saturation curve, which is strictly increasing in T.
inline double saturated_temperature_from_enthalpy(double enthalpy_kj, double pressure_kpa)
{
    double hi = 99.0;
    while (psychro::saturation_vapor_pressure(hi) >= 0.99 * pressure_kpa)
        hi -= 5.0;
    double lo = -120.0;
    const auto h_sat = [&](double t) {
        return psychro::enthalpy(t, psychro::saturation_specific_humidity(t, pressure_kpa));
    };
    if (enthalpy_kj <= h_sat(lo) || enthalpy_kj >= h_sat(hi))
        throw InfeasibleVentilation(
            "condensation: enthalpy " + std::to_string(enthalpy_kj) +
            " kJ/kg has no saturated state in the supported temperature range");
    for (int i = 0; i < 100 && hi - lo > 1e-12; ++i) {
        const double mid = 0.5 * (lo + hi);
        (h_sat(mid) < enthalpy_kj ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

// Back out (T, RH) from an (H, D) pair. Supersaturated pairs (or pairs whose
// raw temperature would leave the Tetens domain) condense onto the saturation
// curve: D drops to saturation at the temperature that preserves H.
struct BackOut {
    double temperature_c;
    double spec_humidity;
    double rh_pct;
    bool condensation;
};

inline BackOut back_out_state(double enthalpy_kj, double spec_humidity, double pressure_kpa)
{
    const double t_raw = psychro::temperature_from_enthalpy(enthalpy_kj, spec_humidity);
    if (t_raw > -237.0) {
        const double rh = psychro::relative_humidity_from_specific(t_raw, spec_humidity,
                                                                   pressure_kpa);
        if (rh <= 100.0)
            return {t_raw, spec_humidity, rh, false};
    }
    const double t_sat = saturated_temperature_from_enthalpy(enthalpy_kj, pressure_kpa);
    return {t_sat, psychro::saturation_specific_humidity(t_sat, pressure_kpa), 100.0, true};
}

}  // namespace detail

// One explicit update: heat loads at the pre-step indoor temperature, then
// enthalpy and moisture balances, then the psychrometric back-out.
inline StepResult step(const HouseState& state, double u_per_animal, const Exogenous& exo,
                       const PlantParams& params, double dt_s)
{
    if (dt_s <= 0.0)
        throw std::invalid_argument("plant::step: dt must be positive");

    StepResult out;
    out.heat = heatload::total_heat(params.pigs, params.envelope,
                                    params.q_devices_w + exo.extra_gain_w,
                                    state.indoor_temperature_c,
                                    exo.outdoor_real_temperature_c);
    const double flow = u_per_animal * params.ventilation_scale();
    out.total_ventilation_m3h = flow;

    const double d_inlet = psychro::specific_humidity(exo.inlet_temperature_c, exo.inlet_rh_pct,
                                                      params.pressure_kpa);
    out.inlet_enthalpy = psychro::enthalpy(exo.inlet_temperature_c, d_inlet);
    out.indoor_enthalpy = mixed_enthalpy(out.inlet_enthalpy, out.heat.q_total_w, flow,
                                         params.air_density);
    const double d_indoor = moisture_update(d_inlet,
                                            params.moisture_production * params.pigs.count,
                                            flow, params.air_density);
    auto target = detail::back_out_state(out.indoor_enthalpy, d_indoor, params.pressure_kpa);

    if (params.first_order_mixing) {
        const double tau_s = params.room_volume_m3 / (flow / 3600.0);
        const double alpha = 1.0 - std::exp(-dt_s / tau_s);
        const double d_prev = psychro::specific_humidity(state.indoor_temperature_c,
                                                         state.indoor_rh_pct, params.pressure_kpa);
        const double t_blend = state.indoor_temperature_c +
                               alpha * (target.temperature_c - state.indoor_temperature_c);
        const double d_blend = d_prev + alpha * (target.spec_humidity - d_prev);
        out.indoor_enthalpy = psychro::enthalpy(t_blend, d_blend);
        target = detail::back_out_state(out.indoor_enthalpy, d_blend, params.pressure_kpa);
    }

    out.condensation = target.condensation;
    out.state = {target.temperature_c, target.rh_pct};
    return out;
}

// One logged step of a run. solver_cost is NaN for controllers that do not
// optimize.
struct LogStep {
    double u_per_animal = 0.0;
    HouseState state;
    heatload::HeatBreakdown heat;
    double inlet_enthalpy = 0.0;
    double indoor_enthalpy = 0.0;
    bool condensation = false;
    double solver_cost = std::numeric_limits<double>::quiet_NaN();
};

struct TrajectoryLog {
    std::int64_t start_epoch_s = 0;
    double dt_s = 600.0;
    std::vector<LogStep> steps;
};

inline TrajectoryLog simulate(const HouseState& initial,
                              const std::vector<double>& control_series,
                              const std::vector<Exogenous>& exo_series,
                              const PlantParams& params, double dt_s,
                              std::int64_t start_epoch_s = 0)
{
    if (control_series.size() != exo_series.size())
        throw std::invalid_argument("plant::simulate: control series length " +
                                    std::to_string(control_series.size()) +
                                    " != exogenous series length " +
                                    std::to_string(exo_series.size()));
    TrajectoryLog log;
    log.start_epoch_s = start_epoch_s;
    log.dt_s = dt_s;
    log.steps.reserve(control_series.size());
    HouseState state = initial;
    for (std::size_t i = 0; i < control_series.size(); ++i) {
        StepResult r;
        try {
            r = step(state, control_series[i], exo_series[i], params, dt_s);
        } catch (const std::exception& e) {
            throw std::runtime_error("plant::simulate: step " + std::to_string(i) + ": " +
                                     e.what());
        }
        state = r.state;
        log.steps.push_back({control_series[i], r.state, r.heat, r.inlet_enthalpy,
                             r.indoor_enthalpy, r.condensation,
                             std::numeric_limits<double>::quiet_NaN()});
    }
    return log;
}

}  // namespace pigvent::plant
