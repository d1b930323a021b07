#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

// Moist-air property functions at a fixed atmospheric pressure.
//
// Conventions used throughout the library:
//   T   dry-bulb temperature, degC
//   RH  relative humidity as a percentage, 0..100
//   D   specific humidity, kg water vapor per kg dry air
//   H   specific enthalpy, kJ per kg dry air
//   P   atmospheric pressure, kPa

namespace pigvent::psychro {

inline constexpr double kStandardPressureKpa = 101.3;

struct Pressure {
    double atmospheric_kpa = kStandardPressureKpa;
};

// Tetens-form saturation vapor pressure, kPa. Valid for T > -237.3 degC.
inline double saturation_vapor_pressure(double temp_c)
{
    if (temp_c <= -237.3)
        throw std::domain_error("saturation_vapor_pressure: temperature " +
                                std::to_string(temp_c) + " degC is at or below -237.3");
    return 0.6108 * std::exp(17.27 * temp_c / (temp_c + 237.3));
}

inline double vapor_pressure(double temp_c, double rh_pct)
{
    if (rh_pct < 0.0 || rh_pct > 100.0)
        throw std::invalid_argument("vapor_pressure: relative humidity " +
                                    std::to_string(rh_pct) + " outside [0, 100] %");
    return saturation_vapor_pressure(temp_c) * rh_pct / 100.0;
}

inline double specific_humidity(double temp_c, double rh_pct,
                                double pressure_kpa = kStandardPressureKpa)
{
    const double p_v = vapor_pressure(temp_c, rh_pct);
    if (p_v >= pressure_kpa)
        throw std::invalid_argument("specific_humidity: vapor pressure " +
                                    std::to_string(p_v) + " kPa exceeds total pressure " +
                                    std::to_string(pressure_kpa) + " kPa");
    return 0.622 * p_v / (pressure_kpa - p_v);
}

// Sensible plus latent heat content, kJ/kg dry air.
inline double enthalpy(double temp_c, double spec_humidity)
{
    if (spec_humidity < 0.0)
        throw std::invalid_argument("enthalpy: negative specific humidity");
    return 1.006 * temp_c + (2501.0 + 1.86 * temp_c) * spec_humidity;
}

// Exact inversion of enthalpy() in T at fixed D.
inline double temperature_from_enthalpy(double enthalpy_kj, double spec_humidity)
{
    if (spec_humidity < 0.0)
        throw std::invalid_argument("temperature_from_enthalpy: negative specific humidity");
    return (enthalpy_kj - 2501.0 * spec_humidity) / (1.006 + 1.86 * spec_humidity);
}

// Inversion of specific_humidity() in RH at fixed T. Not clamped: values
// above 100 % signal supersaturation and are the caller's problem.
inline double relative_humidity_from_specific(double temp_c, double spec_humidity,
                                              double pressure_kpa = kStandardPressureKpa)
{
    if (spec_humidity < 0.0)
        throw std::invalid_argument("relative_humidity_from_specific: negative specific humidity");
    const double p_v = spec_humidity * pressure_kpa / (0.622 + spec_humidity);
    return 100.0 * p_v / saturation_vapor_pressure(temp_c);
}

// Specific humidity of saturated air (RH = 100 %), kg/kg.
inline double saturation_specific_humidity(double temp_c,
                                           double pressure_kpa = kStandardPressureKpa)
{
    const double p_sat = saturation_vapor_pressure(temp_c);
    if (p_sat >= pressure_kpa)
        throw std::invalid_argument("saturation_specific_humidity: saturation pressure " +
                                    std::to_string(p_sat) + " kPa exceeds total pressure " +
                                    std::to_string(pressure_kpa) + " kPa");
    return 0.622 * p_sat / (pressure_kpa - p_sat);
}

// The (T, D) state of an air stream with its derived properties.
struct MoistAir {
    double temperature_c = 0.0;
    double specific_humidity = 0.0;

    static MoistAir from_relative(double temp_c, double rh_pct,
                                  double pressure_kpa = kStandardPressureKpa)
    {
        return {temp_c, psychro::specific_humidity(temp_c, rh_pct, pressure_kpa)};
    }

    double enthalpy() const { return psychro::enthalpy(temperature_c, specific_humidity); }

    double relative_humidity(double pressure_kpa = kStandardPressureKpa) const
    {
        return relative_humidity_from_specific(temperature_c, specific_humidity, pressure_kpa);
    }
};

}  // namespace pigvent::psychro
