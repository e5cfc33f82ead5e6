#pragma once

#include <string>

#include "qcrb/config.hpp"
#include "qcrb/fisher.hpp"
#include "qcrb/qstate.hpp"

namespace qcrb::cli {

/// A valid configuration that was rejected numerically (zero-information
/// state, infeasible noise target, rejected information matrix); exit code 2.
struct NumericalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// One evaluated configuration: the echoed inputs plus every derived output
/// column of the report schema.
struct BoundRecord {
    RunConfig config;
    double n_mean = 0.0;
    double n_var = 0.0;
    double f_q = 0.0;
    double sigma_tphi_s = 0.0;
    double sigma_tg_s = 0.0;
    double sigma_tgvd_s = 0.0;
    double sigma_L_m = 0.0;
    double sigma_ratio = 1.0;  // σ_L over the Gaussian-pulse reference (skew sweeps)
    std::string error;         // non-empty when the point was rejected
};

/// Spectral moments implied by the configured shape at the configured
/// carrier (μ₂ = mu2_rel·ω₀²).
spectral::MomentSet moments_for(const RunConfig& c, double omega0);

/// Post-loss state statistics for the configured photon number, noise level
/// and transmittance.
qstate::PhotonStatistics state_statistics_for(const RunConfig& c);

/// Full bound evaluation for one configuration. σ over the dispersion times
/// is always the full-matrix CRB; σ_L honours the configured regime.
/// Throws ConfigError for invalid input and NumericalError for rejections.
BoundRecord evaluate_bound(const RunConfig& c);

/// Quantities reported by the `index` command.
struct IndexReport {
    double x = 0.0;            // density factor
    double n = 1.0;            // phase index at the carrier
    double group_index = 1.0;  // n + ω₀ n′
    double gvd_index = 0.0;    // ω₀ n′ + ω₀² n″ / 2
    atmosphere::PathCoefficients k{};
};
IndexReport evaluate_index(const RunConfig& c);

}  // namespace qcrb::cli
