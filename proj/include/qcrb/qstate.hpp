#pragma once

#include <Eigen/Dense>

#include <complex>

namespace qcrb::qstate {

/// Single-mode Gaussian state in the (x, p) quadratures with x = (a + a†)/√2,
/// so the vacuum covariance is I/2.
struct GaussianState {
    Eigen::Vector2d mean = Eigen::Vector2d::Zero();
    Eigen::Matrix2d covariance = 0.5 * Eigen::Matrix2d::Identity();

    /// 1 / (2 sqrt(det σ)); 1 for pure states.
    double purity() const;

    /// Throws std::invalid_argument unless σ is symmetric and det σ ≥ 1/4
    /// (the single-mode uncertainty relation) up to rounding slack.
    void validate() const;
};

/// Photon-number statistics plus the Fisher factor for the generator a†a.
/// photon_statistics() fills only (n_mean, n_var); full_statistics() also
/// fills f_q, which equals 4·n_var for pure states.
struct PhotonStatistics {
    double n_mean = 0.0;
    double n_var = 0.0;
    double f_q = 0.0;
};

/// Truncated number-basis density matrix with the mass lost to truncation.
struct FockDensity {
    int cutoff = 0;
    Eigen::MatrixXcd matrix;
    double trace_deficit = 0.0;
};

/// D(α)S(r e^{iφ})|0⟩. The covariance is R(θ)·diag(e^{2r}, e^{−2r})/2·R(θ)ᵀ
/// with θ = (squeeze_phase − π)/2, which makes squeeze_phase = π + 2·arg α
/// anti-squeeze the amplitude quadrature (maximal photon-number variance).
GaussianState displaced_squeezed_vacuum(double alpha_mag, double alpha_arg, double r,
                                        double squeeze_phase);

/// π + 2·alpha_arg reduced to [0, 2π).
double optimal_antisqueezing_phase(double alpha_arg);

/// Pure-loss channel: mean → √η·mean, σ → η·σ + (1 − η)/2·I.
GaussianState apply_loss(const GaussianState& state, double eta);

/// n_mean = (tr σ − 1)/2 + |mean|²/2 and the Wick-expanded photon-number
/// variance n_var = tr(σ²)/2 − 1/4 + meanᵀσ·mean. f_q is left at 0.
PhotonStatistics photon_statistics(const GaussianState& state);

/// Quantum Fisher information for the phase family e^{−iθ a†a} evaluated on a
/// (generally mixed) Gaussian state:
///   F = tr[(σ⁻¹σ′)²] / (2(1 + P²)) + d′ᵀσ⁻¹d′,
/// with σ′ = Jσ + σJᵀ, d′ = J·mean, J the symplectic rotation generator and
/// P the purity (rotation-invariant, so no purity-derivative term appears).
/// Equals 4·n_var for pure states.
double qfi_number_gaussian(const GaussianState& state);

/// photon_statistics with f_q filled in from qfi_number_gaussian.
PhotonStatistics full_statistics(const GaussianState& state);

/// Displacement/squeezing pair hitting a target mean photon number and
/// intensity-noise ratio Δ²N/N = 10^{noise_db/10} at the returned squeeze
/// phase. Positive dB anti-squeezes the amplitude quadrature
/// (squeeze_phase = π + 2·alpha_arg); negative dB squeezes it
/// (squeeze_phase = 2·alpha_arg) for sub-Poissonian light.
struct NoiseCalibration {
    double alpha_mag = 0.0;
    double r = 0.0;
    double squeeze_phase = 0.0;
};
NoiseCalibration calibrate_noise_ratio(double n_target, double noise_db, double alpha_arg = 0.0);

/// Exact small-scale oracle: builds D(α)S(r e^{iφ})|0⟩ in the number basis,
/// applies the transmittance-η loss channel via Kraus operators, and returns
/// the truncated density matrix. Throws when the truncated mass exceeds 1e-8
/// (raise the cutoff) or the expected photon number exceeds cutoff/6.
FockDensity fock_oracle_state(std::complex<double> alpha, double r, double squeeze_phase,
                              double eta, int cutoff);

/// (n_mean, n_var) of a Fock-basis density matrix; f_q left at 0.
PhotonStatistics fock_photon_statistics(const FockDensity& rho);

/// Spectral decomposition form of the quantum Fisher information for the
/// number generator: F = 4⟨N²⟩ − 8·Σ_{p_a+p_b>ε} p_a p_b/(p_a+p_b)·|⟨a|N̂|b⟩|².
/// Reduces to 4(⟨N²⟩ − ⟨N⟩²) for pure states.
double fock_oracle_qfi(const FockDensity& rho, double epsilon = 1e-12);

}  // namespace qcrb::qstate
