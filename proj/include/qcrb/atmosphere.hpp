#pragma once

#include <Eigen/Dense>

namespace qcrb::atmosphere {

/// Ambient air state entering the refractive-index model.
struct AmbientConditions {
    double temperature_c = 20.0;    // °C
    double pressure_pa = 101325.0;  // total pressure, Pa
    double co2_fraction = 0.0004;   // CO2 mole fraction
    double water_partial_pa = 0.0;  // water vapor partial pressure, Pa

    /// Throws std::invalid_argument when outside the model's domain
    /// (negative pressures, water exceeding total, CO2 outside [0, 0.01]).
    void validate() const;
};

/// The three dispersion parameters of the propagation phase, all in seconds:
/// phase delay, group delay, and the group-velocity-dispersion time.
struct DispersionTimes {
    double t_phi = 0.0;
    double t_g = 0.0;
    double t_gvd = 0.0;
};

/// Row/column labels for the reparametrization Jacobian.
enum class Native { L = 0, X = 1, Pw = 2 };
enum class Dispersive { TPhi = 0, TG = 1, TGvd = 2 };

/// B_ij = d t_j / d c_i with rows c = (L, X, Pw) and columns
/// t = (t_phi, t_g, t_gvd). Units: s/m, s, s/Pa by row.
struct JacobianB {
    Eigen::Matrix3d b = Eigen::Matrix3d::Zero();

    double at(Native row, Dispersive col) const {
        return b(static_cast<int>(row), static_cast<int>(col));
    }
};

/// Dry-air density factor X(T, P, x): dimensionless, ~1 at standard
/// conditions, exactly 0 at zero pressure, and the CO2 correction is exactly
/// 1 at x = 0.0004.
double parameter_x(const AmbientConditions& cond);

/// Phase refractive index at wavenumber nu_tilde = 1/lambda in 1/um.
/// n - 1 is linear in X and in P_w by construction.
double refractive_index(double nu_tilde, double X, double P_w);

/// (n, omega*dn/domega, omega^2*d^2n/domega^2) at the carrier, using
/// omega*d/domega = nu_tilde*d/dnu_tilde. All three are dimensionless.
struct IndexDerivatives {
    double n = 1.0;
    double omega_n1 = 0.0;  // omega0 * dn/domega
    double omega2_n2 = 0.0; // omega0^2 * d^2n/domega^2
};
IndexDerivatives index_spectral_derivatives(double nu_tilde, double X, double P_w);

/// t_phi = n L/c, t_g = (n + omega0 n') L/c,
/// t_gvd = omega0 (n' + omega0 n''/2) L/c, evaluated at the carrier.
DispersionTimes dispersion_times(double L, double X, double P_w, double omega0);
DispersionTimes dispersion_times(double L, const AmbientConditions& cond, double omega0);

/// Analytic Jacobian of dispersion_times with respect to (L, X, Pw). The X
/// and Pw rows are exactly proportional to L; the L-row entry for t_gvd has
/// no constant (vacuum) term.
JacobianB jacobian_analytic(double L, double X, double P_w, double omega0);

/// Central-difference oracle for jacobian_analytic. rel_step must lie in
/// [1e-8, 1e-3]; absolute steps fall back to unit scale for zero-valued
/// parameters.
JacobianB jacobian_finite_difference(double L, const AmbientConditions& cond, double omega0,
                                     double rel_step);

/// L-row of the Jacobian in ns/m with P_w in Pa, split into affine
/// coefficients of X and Pw:
///   1e9·dt_phi/dL = k0 + k1·X + k2·Pw,
///   1e9·dt_g/dL   = k0 + k3·X + k4·Pw,
///   1e9·dt_gvd/dL =      k5·X + k6·Pw.
struct PathCoefficients {
    double k0, k1, k2, k3, k4, k5, k6;
};
PathCoefficients path_coefficients_ns(double omega0);

}  // namespace qcrb::atmosphere
