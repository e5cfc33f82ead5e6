#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "qcrb/atmosphere.hpp"
#include "qcrb/spectral.hpp"

namespace qcrb::cli {

/// Malformed or out-of-domain configuration; mapped to process exit code 1.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Flat run configuration. Every key carries its unit in the name; the same
/// keys appear verbatim as the leading CSV/JSON columns so each emitted row
/// is reproducible standalone.
struct RunConfig {
    double lambda0_m = 785e-9;          // carrier wavelength
    double distance_m = 1000.0;         // path length L
    double temperature_c = 24.0;
    double pressure_pa = 101325.0;
    double co2_fraction = 0.0004;
    double water_partial_pa = 3171.4725;
    double photons = 1e16;              // mean photon number before loss
    double noise_db = 0.0;              // signed: Δ²N/N = 10^(dB/10)
    double eta = 1.0;                   // channel transmittance
    std::string shape = "gaussian";     // gaussian | sech2 | skew_normal | symmetric
    double mu2_rel = 0.01;              // μ₂ / ω₀²
    double beta = 3.0;                  // kurtosis, shape = symmetric only
    double shape_a = 0.0;               // skew_normal shape parameter
    std::string centering = "mean";     // mean | mode (skew_normal)
    std::string regime = "full_nuisance";  // full_nuisance | known_nuisance
    std::string output = "csv";         // csv | json

    atmosphere::AmbientConditions ambient() const {
        return {temperature_c, pressure_pa, co2_fraction, water_partial_pa};
    }
};

/// Fixed key order used for CSV columns and JSON objects.
const std::vector<std::string>& config_keys();

/// True when the key holds a number (formatted at 12 significant digits).
bool key_is_numeric(const std::string& key);

/// Formatted value of one key; numbers as %.11e.
std::string get_key(const RunConfig& c, const std::string& key);

/// Parses and assigns one key. Throws ConfigError for unknown keys or
/// unparseable values.
void set_key(RunConfig& c, const std::string& key, const std::string& value);
void set_key(RunConfig& c, const std::string& key, double value);

/// Reads a flat `key = value` file: UTF-8, '#' starts a comment, blank lines
/// ignored. Later lines override earlier ones.
RunConfig load_config_file(const std::string& path);

/// Applies "key=value" strings in order (CLI --set overrides).
void apply_overrides(RunConfig& c, const std::vector<std::string>& overrides);

/// Full domain validation; throws ConfigError with the offending key.
void validate(const RunConfig& c);

/// 12-significant-digit scientific formatting used for all emitted numbers.
std::string format_number(double v);

}  // namespace qcrb::cli
