#pragma once

#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace qcrb::spectral {

enum class Family { Gaussian, SechSquared, SkewNormal, Tabulated };
enum class Centering { MeanAtCarrier, ModeAtCarrier };

std::string to_string(Family f);

/// One bin of a tabulated spectrum: detuning nu (rad/s) and a non-negative
/// weight. Tabulated spectra are treated as discrete measures; weights are
/// normalized internally.
struct Sample {
    double nu = 0.0;
    double weight = 0.0;
};

/// Normalized spectral intensity |A(nu)|^2 over detuning nu = omega - omega0.
///
/// The continuous families carry exact normalization constants, so the
/// integrated intensity is 1 by construction; tests verify this by
/// quadrature. Construction goes through the factories below, which enforce
/// the type invariants (scale > 0, |delta| < 1 - 1e-9, strictly increasing
/// tabulated support).
class SpectralShape {
  public:
    static SpectralShape gaussian(double scale, double location = 0.0);
    static SpectralShape sech_squared(double scale, double location = 0.0);
    static SpectralShape skew_normal(double scale, double shape_a, double location);
    static SpectralShape tabulated(std::vector<Sample> samples);

    Family family() const { return family_; }
    double scale() const { return scale_; }
    double shape_a() const { return shape_a_; }
    double location() const { return location_; }
    const std::vector<Sample>& samples() const { return samples_; }

    /// delta = a / sqrt(1 + a^2); 0 except for SkewNormal.
    double asymmetry_delta() const;

    /// Normalized intensity density at detuning nu (continuous families only).
    double density(double nu) const;

    /// E[f(nu)] under the normalized intensity measure. Continuous families
    /// use adaptive Gauss-Kronrod on a standardized variable with the cut
    /// chosen from the family's tail decay (truncated mass < 1e-14);
    /// tabulated spectra reduce to the exact weighted sum.
    double expect(const std::function<double(double)>& f) const;

    /// Integration half-width in standardized units (continuous families).
    double standardized_cut() const;

  private:
    SpectralShape() = default;

    Family family_ = Family::Gaussian;
    double scale_ = 1.0;     // rad/s width parameter
    double shape_a_ = 0.0;   // skew-normal shape parameter
    double location_ = 0.0;  // detuning offset xi, rad/s
    std::vector<Sample> samples_;
};

/// First four moments of the intensity distribution about the carrier
/// (nu = 0), plus the derived dimensionless kurtosis and skewness.
struct MomentSet {
    double mu1 = 0.0;  // rad/s
    double mu2 = 0.0;  // (rad/s)^2
    double mu3 = 0.0;  // (rad/s)^3
    double mu4 = 0.0;  // (rad/s)^4
    double beta = 0.0;      // mu4 / mu2^2
    double skewness = 0.0;  // mu3 / mu2^(3/2)

    /// Builds the derived fields and checks mu2 > 0 and the Pearson
    /// inequality beta >= 1 + skewness^2 (up to rounding slack).
    static MomentSet from_raw(double mu1, double mu2, double mu3, double mu4);
};

/// Symmetric pulse specified by its second moment and kurtosis only
/// (mu1 = mu3 = 0, mu4 = beta * mu2^2). This is how kurtosis sweeps are
/// realized without committing to a particular density.
MomentSet symmetric_moments(double mu2, double beta);

/// Solves the family's scale/location so that the second moment about the
/// carrier equals target_mu2, with the requested centering. shape_a is used
/// only by the skew-normal family.
SpectralShape make_shape(Family family, double target_mu2, double shape_a = 0.0,
                         Centering centering = Centering::MeanAtCarrier);

/// Closed-form moments about the carrier. Throws for Tabulated (use the
/// quadrature path).
MomentSet moments_analytic(const SpectralShape& shape);

/// Moments by adaptive quadrature (or the exact discrete sum for tabulated
/// spectra). Independent of the closed forms; used as their oracle.
MomentSet moments_quadrature(const SpectralShape& shape);

/// Dispatcher used by the pipeline: closed forms where they exist, the exact
/// discrete sum for tabulated spectra.
MomentSet moments(const SpectralShape& shape);

/// Standardized mode z0(a) of the unit skew-normal density 2*phi(z)*Phi(a z),
/// solved numerically (no closed form exists).
double skew_normal_standard_mode(double shape_a);

}  // namespace qcrb::spectral
