#include "qcrb/pipeline.hpp"

#include <cmath>

#include "qcrb/constants.hpp"

namespace qcrb::cli {

using spectral::Centering;
using spectral::Family;

spectral::MomentSet moments_for(const RunConfig& c, double omega0) {
    const double mu2 = c.mu2_rel * omega0 * omega0;
    if (c.shape == "gaussian")
        return spectral::moments(spectral::make_shape(Family::Gaussian, mu2));
    if (c.shape == "sech2")
        return spectral::moments(spectral::make_shape(Family::SechSquared, mu2));
    if (c.shape == "skew_normal") {
        const Centering cent =
            c.centering == "mode" ? Centering::ModeAtCarrier : Centering::MeanAtCarrier;
        return spectral::moments(spectral::make_shape(Family::SkewNormal, mu2, c.shape_a, cent));
    }
    if (c.shape == "symmetric") return spectral::symmetric_moments(mu2, c.beta);
    throw ConfigError("unknown shape '" + c.shape + "'");
}

qstate::PhotonStatistics state_statistics_for(const RunConfig& c) {
    if (c.eta == 0.0) throw NumericalError("zero-information state: eta = 0");
    try {
        const qstate::NoiseCalibration cal = qstate::calibrate_noise_ratio(c.photons, c.noise_db);
        const qstate::GaussianState input =
            qstate::displaced_squeezed_vacuum(cal.alpha_mag, 0.0, cal.r, cal.squeeze_phase);
        return qstate::full_statistics(qstate::apply_loss(input, c.eta));
    } catch (const std::domain_error& e) {
        throw NumericalError(e.what());
    }
}

BoundRecord evaluate_bound(const RunConfig& c) {
    validate(c);
    const double omega0 = omega_from_wavelength(c.lambda0_m);

    BoundRecord rec;
    rec.config = c;

    const spectral::MomentSet moments = moments_for(c, omega0);
    const qstate::PhotonStatistics stats = state_statistics_for(c);
    rec.n_mean = stats.n_mean;
    rec.n_var = stats.n_var;
    rec.f_q = stats.f_q;

    try {
        const fisher::OverlapSet overlaps = fisher::overlaps_from_moments(moments, omega0);
        const fisher::FisherMatrix fim = fisher::fim_native(overlaps, stats.n_mean, stats.f_q);
        rec.sigma_tphi_s = fisher::bound(fim, "t_phi", fisher::Regime::FullNuisance).sigma;
        rec.sigma_tg_s = fisher::bound(fim, "t_g", fisher::Regime::FullNuisance).sigma;
        rec.sigma_tgvd_s = fisher::bound(fim, "t_gvd", fisher::Regime::FullNuisance).sigma;

        const double x = atmosphere::parameter_x(c.ambient());
        const atmosphere::JacobianB jac =
            atmosphere::jacobian_analytic(c.distance_m, x, c.water_partial_pa, omega0);
        const fisher::FisherMatrix reparam = fisher::reparametrize(fim, jac);
        const fisher::Regime regime = c.regime == "known_nuisance"
                                          ? fisher::Regime::KnownNuisance
                                          : fisher::Regime::FullNuisance;
        rec.sigma_L_m = fisher::bound(reparam, "L", regime).sigma;
    } catch (const std::domain_error& e) {
        throw NumericalError(e.what());
    }
    return rec;
}

IndexReport evaluate_index(const RunConfig& c) {
    validate(c);
    const double omega0 = omega_from_wavelength(c.lambda0_m);
    const double nu_tilde = wavenumber_per_um(omega0);
    IndexReport rep;
    rep.x = atmosphere::parameter_x(c.ambient());
    const atmosphere::IndexDerivatives d =
        atmosphere::index_spectral_derivatives(nu_tilde, rep.x, c.water_partial_pa);
    rep.n = d.n;
    rep.group_index = d.n + d.omega_n1;
    rep.gvd_index = d.omega_n1 + 0.5 * d.omega2_n2;
    rep.k = atmosphere::path_coefficients_ns(omega0);
    return rep;
}

}  // namespace qcrb::cli
