#include "qcrb/atmosphere.hpp"

#include <cmath>
#include <stdexcept>

#include "qcrb/constants.hpp"

namespace qcrb::atmosphere {

namespace {

/// Coefficients of the index model split so that
///   n                      = 1 + eps_d X + w_n Pw
///   omega dn/domega        =     a_d   X + w_g Pw           (= nu~ dn/dnu~)
///   omega n' + omega^2 n''/2 =   b_d   X + w_v Pw
/// All depend on nu_tilde only, so the full model stays linear in X and Pw.
struct IndexCoefficients {
    double eps_d, a_d, b_d;  // dry-air terms (per unit X)
    double w_n, w_g, w_v;    // water terms (per Pa)
};

void check_window(double nu_tilde) {
    const double s = nu_tilde * nu_tilde;
    if (!(nu_tilde > 0.0) || !(38.9 - s > 0.0) || !(130.0 - s > 0.0))
        throw std::domain_error("refractive index: wavenumber outside the model validity window");
}

IndexCoefficients index_coefficients(double nu_tilde) {
    check_window(nu_tilde);
    const double s = nu_tilde * nu_tilde;
    const double r1 = 130.0 - s;
    const double r2 = 38.9 - s;

    // Dry-air dispersion term D and its nu~-derivatives.
    const double D = 8091.37 + 2333983.0 / r1 + 15518.0 / r2;
    const double D1 = 2.0 * nu_tilde * (2333983.0 / (r1 * r1) + 15518.0 / (r2 * r2));
    const double D2 = 2.0 * (2333983.0 * (130.0 + 3.0 * s) / (r1 * r1 * r1) +
                             15518.0 * (38.9 + 3.0 * s) / (r2 * r2 * r2));

    // Water term W and its derivatives (W = 3.802 - 0.0384 nu~^2).
    const double W = 3.802 - 0.0384 * s;
    const double W1 = -0.0768 * nu_tilde;
    const double W2 = -0.0768;

    IndexCoefficients c;
    c.eps_d = 1e-8 * D;
    c.a_d = 1e-8 * nu_tilde * D1;
    c.b_d = 1e-8 * (nu_tilde * D1 + 0.5 * s * D2);
    c.w_n = -1e-10 * W;
    c.w_g = -1e-10 * nu_tilde * W1;
    c.w_v = -1e-10 * (nu_tilde * W1 + 0.5 * s * W2);
    return c;
}

}  // namespace

void AmbientConditions::validate() const {
    const bool ok = std::isfinite(temperature_c) && std::isfinite(pressure_pa) &&
                    std::isfinite(co2_fraction) && std::isfinite(water_partial_pa) &&
                    pressure_pa >= 0.0 && water_partial_pa >= 0.0 &&
                    water_partial_pa <= pressure_pa && co2_fraction >= 0.0 &&
                    co2_fraction <= 0.01;
    if (!ok) throw std::invalid_argument("AmbientConditions: out of domain");
}

double parameter_x(const AmbientConditions& cond) {
    cond.validate();
    const double T = cond.temperature_c;
    const double P = cond.pressure_pa;
    const double compress = 1.0 + 1e-8 * (0.5953 - 0.009876 * T) * P;
    const double thermal = 1.0 + 0.0036610 * T;
    const double co2 = 1.0 + 0.5327 * (cond.co2_fraction - 0.0004);
    return (P / 93214.60) * (compress / thermal) * co2;
}

double refractive_index(double nu_tilde, double X, double P_w) {
    const IndexCoefficients c = index_coefficients(nu_tilde);
    return 1.0 + c.eps_d * X + c.w_n * P_w;
}

IndexDerivatives index_spectral_derivatives(double nu_tilde, double X, double P_w) {
    const IndexCoefficients c = index_coefficients(nu_tilde);
    IndexDerivatives d;
    d.n = 1.0 + c.eps_d * X + c.w_n * P_w;
    d.omega_n1 = c.a_d * X + c.w_g * P_w;
    d.omega2_n2 = 2.0 * ((c.b_d - c.a_d) * X + (c.w_v - c.w_g) * P_w);
    return d;
}

DispersionTimes dispersion_times(double L, double X, double P_w, double omega0) {
    if (!(L >= 0.0)) throw std::invalid_argument("dispersion_times: L must be >= 0");
    const IndexCoefficients c = index_coefficients(wavenumber_per_um(omega0));
    DispersionTimes t;
    t.t_phi = (1.0 + c.eps_d * X + c.w_n * P_w) * L / kSpeedOfLight;
    t.t_g = (1.0 + (c.eps_d + c.a_d) * X + (c.w_n + c.w_g) * P_w) * L / kSpeedOfLight;
    t.t_gvd = (c.b_d * X + c.w_v * P_w) * L / kSpeedOfLight;
    return t;
}

DispersionTimes dispersion_times(double L, const AmbientConditions& cond, double omega0) {
    return dispersion_times(L, parameter_x(cond), cond.water_partial_pa, omega0);
}

JacobianB jacobian_analytic(double L, double X, double P_w, double omega0) {
    const IndexCoefficients c = index_coefficients(wavenumber_per_um(omega0));
    const double ic = 1.0 / kSpeedOfLight;
    JacobianB j;
    j.b(0, 0) = (1.0 + c.eps_d * X + c.w_n * P_w) * ic;
    j.b(0, 1) = (1.0 + (c.eps_d + c.a_d) * X + (c.w_n + c.w_g) * P_w) * ic;
    j.b(0, 2) = (c.b_d * X + c.w_v * P_w) * ic;
    j.b(1, 0) = c.eps_d * L * ic;
    j.b(1, 1) = (c.eps_d + c.a_d) * L * ic;
    j.b(1, 2) = c.b_d * L * ic;
    j.b(2, 0) = c.w_n * L * ic;
    j.b(2, 1) = (c.w_n + c.w_g) * L * ic;
    j.b(2, 2) = c.w_v * L * ic;
    return j;
}

PathCoefficients path_coefficients_ns(double omega0) {
    const IndexCoefficients c = index_coefficients(wavenumber_per_um(omega0));
    const double f = 1e9 / kSpeedOfLight;
    PathCoefficients k;
    k.k0 = f;
    k.k1 = f * c.eps_d;
    k.k2 = f * c.w_n;
    k.k3 = f * (c.eps_d + c.a_d);
    k.k4 = f * (c.w_n + c.w_g);
    k.k5 = f * c.b_d;
    k.k6 = f * c.w_v;
    return k;
}

JacobianB jacobian_finite_difference(double L, const AmbientConditions& cond, double omega0,
                                     double rel_step) {
    if (!(rel_step >= 1e-8 && rel_step <= 1e-3))
        throw std::invalid_argument("jacobian_finite_difference: rel_step outside [1e-8, 1e-3]");
    const double X = parameter_x(cond);
    double v[3] = {L, X, cond.water_partial_pa};
    JacobianB j;
    for (int i = 0; i < 3; ++i) {
        const double scale = std::abs(v[i]) > 0.0 ? std::abs(v[i]) : 1.0;
        const double h = rel_step * scale;
        double lo[3] = {v[0], v[1], v[2]};
        double hi[3] = {v[0], v[1], v[2]};
        lo[i] -= h;
        hi[i] += h;
        if (i == 0 && lo[0] < 0.0) lo[0] = 0.0;  // t is linear in L, so a one-sided stencil is exact
        const double span = hi[i] - lo[i];
        if (!(span > 0.0))
            throw std::invalid_argument("jacobian_finite_difference: step underflow");
        const DispersionTimes a = dispersion_times(lo[0], lo[1], lo[2], omega0);
        const DispersionTimes b = dispersion_times(hi[0], hi[1], hi[2], omega0);
        j.b(i, 0) = (b.t_phi - a.t_phi) / span;
        j.b(i, 1) = (b.t_g - a.t_g) / span;
        j.b(i, 2) = (b.t_gvd - a.t_gvd) / span;
    }
    return j;
}

}  // namespace qcrb::atmosphere
