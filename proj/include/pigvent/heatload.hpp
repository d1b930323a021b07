#pragma once

#include <cmath>
#include <stdexcept>

// Sensible heat sources of the house: animal radiative + convective
// exchange, envelope conduction, and device dissipation. All results in W,
// oriented as gain into the house (negative = the house is losing heat).

namespace pigvent::heatload {

inline constexpr double kStefanBoltzmann = 5.67e-8;  // W/(m^2 K^4)

struct PigGroup {
    int count = 0;
    double weight_kg = 0.0;          // per animal
    double air_speed_ms = 0.0;       // at animal level
    double skin_temperature_c = 30.0;
    double emissivity = 0.95;
};

struct Envelope {
    double conductivity = 0.025;  // W/(m K), polyurethane
    double area_m2 = 0.0;
    double thickness_m = 0.0;
};

struct HeatBreakdown {
    double q_pig_w = 0.0;
    double q_envelope_w = 0.0;
    double q_devices_w = 0.0;
    double q_total_w = 0.0;
};

// Allometric body surface area, m^2.
inline double pig_surface_area(double weight_kg)
{
    if (weight_kg <= 0.0)
        throw std::invalid_argument("pig_surface_area: weight must be positive");
    return 0.09 * std::pow(weight_kg, 0.66);
}

// Convective film coefficient, W/(m^2 degC). Zero in still air.
inline double convective_coefficient(double air_speed_ms, double weight_kg)
{
    if (weight_kg <= 0.0)
        throw std::invalid_argument("convective_coefficient: weight must be positive");
    if (air_speed_ms < 0.0)
        throw std::invalid_argument("convective_coefficient: negative air speed");
    if (air_speed_ms == 0.0)
        return 0.0;
    return 15.0 * std::pow(air_speed_ms, 0.6) * std::pow(weight_kg, -0.13);
}

// Radiative + convective exchange of the whole group with indoor air, W.
// Crosses zero exactly at indoor temperature == skin temperature.
inline double pig_heat(const PigGroup& group, double indoor_temp_c)
{
    if (group.count == 0)
        return 0.0;
    const double area = pig_surface_area(group.weight_kg);
    const double t_skin_k = group.skin_temperature_c + 273.0;
    const double t_in_k = indoor_temp_c + 273.0;
    const double radiative = area * group.emissivity * kStefanBoltzmann *
                             (std::pow(t_skin_k, 4) - std::pow(t_in_k, 4));
    const double h_c = convective_coefficient(group.air_speed_ms, group.weight_kg);
    const double convective = area * h_c * (group.skin_temperature_c - indoor_temp_c);
    return group.count * (radiative + convective);
}

// Conduction through the insulation layer, W, positive when outdoors is
// hotter (net gain into the house).
inline double envelope_heat(const Envelope& env, double indoor_temp_c, double outdoor_temp_c)
{
    return env.conductivity * env.area_m2 * (outdoor_temp_c - indoor_temp_c) / env.thickness_m;
}

// Summation order is fixed (pig, envelope, devices) so the decomposition
// re-sums bitwise.
inline HeatBreakdown total_heat(const PigGroup& group, const Envelope& env,
                                double q_devices_w, double indoor_temp_c,
                                double outdoor_temp_c)
{
    HeatBreakdown out;
    out.q_pig_w = pig_heat(group, indoor_temp_c);
    out.q_envelope_w = envelope_heat(env, indoor_temp_c, outdoor_temp_c);
    out.q_devices_w = q_devices_w;
    out.q_total_w = out.q_pig_w + out.q_envelope_w + out.q_devices_w;
    return out;
}

}  // namespace pigvent::heatload
