#pragma once

#include <numbers>

namespace qcrb {

inline constexpr double kSpeedOfLight = 299792458.0;  // m/s, exact
inline constexpr double kPi = std::numbers::pi;

/// Carrier angular frequency (rad/s) for a vacuum wavelength in meters.
inline constexpr double omega_from_wavelength(double lambda_m) {
    return 2.0 * kPi * kSpeedOfLight / lambda_m;
}

/// Spectroscopic wavenumber 1/lambda in 1/um for a carrier omega0 (rad/s).
inline constexpr double wavenumber_per_um(double omega0) {
    return omega0 / (2.0 * kPi * kSpeedOfLight) * 1e-6;
}

}  // namespace qcrb
