#pragma once

#include <string>
#include <vector>

#include "qcrb/pipeline.hpp"

namespace qcrb::cli {

/// One sweep axis over a numeric config key, or over the pseudo-key "delta"
/// (skew-normal asymmetry δ = a/√(1+a²), mapped onto shape_a).
struct AxisSpec {
    std::string key;
    double min = 0.0;
    double max = 0.0;
    int count = 0;
    bool log = false;
};

enum class SweepKind { Shape, Skew, Loss, Custom };

SweepKind parse_kind(const std::string& name);
std::string to_string(SweepKind kind);

/// Parses "key=min:max:count[:log|lin]".
AxisSpec parse_axis(const std::string& text);

struct SweepSpec {
    SweepKind kind = SweepKind::Custom;
    std::vector<AxisSpec> axes;  // 1 or 2; row-major grid, first axis outermost

    /// ConfigError unless 1–2 axes, count ≥ 2 each, finite ordered ranges,
    /// log axes strictly positive, keys numeric (or "delta").
    void validate() const;
};

/// Canonical axes for the preset kinds:
///   Shape: mu2_rel (log) × beta, over the symmetric family;
///   Skew:  noise_db × delta, over the skew-normal family;
///   Loss:  eta.
SweepSpec preset_sweep(SweepKind kind);

/// The family a preset kind is defined on (empty = keep configured shape).
std::string preset_shape(SweepKind kind);

/// Grid coordinates of one axis (linear or logarithmic, endpoints included).
std::vector<double> axis_values(const AxisSpec& axis);

/// Evaluates the full grid. Rows are produced in grid order regardless of
/// thread count; rejected points carry their message in `error` instead of
/// aborting the sweep. Skew sweeps fill sigma_ratio with σ_L over the
/// Gaussian-pulse σ_L at identical μ₂, noise and loss.
std::vector<BoundRecord> run_sweep(const RunConfig& base, const SweepSpec& spec, int threads);

}  // namespace qcrb::cli
