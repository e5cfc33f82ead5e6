#pragma once

#include <Eigen/Dense>

#include <array>
#include <string>

#include "qcrb/atmosphere.hpp"
#include "qcrb/spectral.hpp"

namespace qcrb::fisher {

/// Modal overlaps of the phase-derivative generators g = (ω₀, ν, ν²/ω₀)
/// under the normalized spectral intensity: first moments ⟨g_k⟩ and the Gram
/// matrix ⟨g_j g_k⟩. Everything in SI angular-frequency units.
struct OverlapSet {
    Eigen::Vector3d g_mean = Eigen::Vector3d::Zero();
    Eigen::Matrix3d g_gram = Eigen::Matrix3d::Zero();
};

/// Symmetric 3×3 information matrix with named parameters. When produced by
/// reparametrize() it also carries the congruence factors (parent matrix and
/// Jacobian), which bound() uses to invert without forming the badly
/// conditioned product explicitly.
struct FisherMatrix {
    Eigen::Matrix3d matrix = Eigen::Matrix3d::Zero();
    std::array<std::string, 3> labels;
    Eigen::Vector3d unit_scale = Eigen::Vector3d::Ones();

    bool has_parent = false;
    Eigen::Matrix3d parent_matrix = Eigen::Matrix3d::Zero();  // F over the time parameters
    Eigen::Matrix3d congruence = Eigen::Matrix3d::Identity(); // B with matrix = B·parent·Bᵀ

    int index_of(const std::string& parameter) const;

    /// Symmetry to 1e-12 relative and smallest eigenvalue ≥ −1e-10·largest.
    void validate() const;
};

enum class Regime { FullNuisance, KnownNuisance };

std::string to_string(Regime r);

/// Cramér–Rao bound on one parameter: σ = √((F⁻¹)_ii) when the other
/// parameters are unknown (FullNuisance) or √(1/F_ii) when they are known.
struct Bound {
    std::string parameter;
    double sigma = 0.0;
    Regime regime = Regime::FullNuisance;
};

inline constexpr std::array<const char*, 3> kTimeLabels = {"t_phi", "t_g", "t_gvd"};
inline constexpr std::array<const char*, 3> kNativeLabels = {"L", "X", "Pw"};

/// Exact overlaps from the first four intensity moments about the carrier.
OverlapSet overlaps_from_moments(const spectral::MomentSet& moments, double omega0);

/// Overlaps by direct quadrature of the modal inner products; independent
/// oracle for overlaps_from_moments (and hence fim_overlap_oracle).
OverlapSet overlaps_by_quadrature(const spectral::SpectralShape& shape, double omega0);

/// F_jk = ⟨g_j⟩⟨g_k⟩·f_q + 4(⟨g_j g_k⟩ − ⟨g_j⟩⟨g_k⟩)·n_mean over
/// (t_phi, t_g, t_gvd). For pure states f_q = 4·Δ²N.
FisherMatrix fim_native(const OverlapSet& overlaps, double n_mean, double f_q);

/// Same matrix, but with every overlap evaluated by quadrature on the shape.
FisherMatrix fim_overlap_oracle(const spectral::SpectralShape& shape, double omega0,
                                double n_mean, double f_q);

/// Closed-form CRB variances for symmetric pulses:
///   Δ²t_phi = (1/4ω₀²)·[1/((β−1)N) + 1/Δ²N],
///   Δ²t_g   = 1/(4μ₂N),
///   Δ²t_gvd = ω₀²/(4μ₂²(β−1)N).
/// Rejects asymmetric inputs (|μ₁|, |μ₃| above 1e-9 of the even-moment
/// scale) and β ≤ 1.
struct ClosedFormVariances {
    double var_t_phi = 0.0;
    double var_t_g = 0.0;
    double var_t_gvd = 0.0;
};
ClosedFormVariances closed_form_variances(const spectral::MomentSet& moments, double omega0,
                                          double n_mean, double n_var);

/// F̃ = B·F·Bᵀ over (L, X, Pw), retaining the factors for stable inversion.
FisherMatrix reparametrize(const FisherMatrix& fim, const atmosphere::JacobianB& jacobian);

/// Extracts the bound for one named parameter. FullNuisance inversion is
/// preconditioned by the diagonal rescaling D⁻¹FD⁻¹ (D = diag(√F_ii)); for
/// reparametrized matrices the diagonal element of the inverse is evaluated
/// through the congruence factors, (F̃⁻¹)_ii = wᵀF⁻¹w with B·w = e_i, which
/// stays accurate where the assembled F̃ is numerically singular. Matrices
/// whose rescaled condition number exceeds 1e12 are rejected via
/// std::domain_error carrying the offending eigenvalue.
Bound bound(const FisherMatrix& fim, const std::string& parameter, Regime regime);

}  // namespace qcrb::fisher
