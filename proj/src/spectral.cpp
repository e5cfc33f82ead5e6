#include "qcrb/spectral.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <cmath>
#include <limits>

#include "qcrb/constants.hpp"

namespace qcrb::spectral {

namespace {

double normal_pdf(double z) { return std::exp(-0.5 * z * z) / std::sqrt(2.0 * kPi); }
double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); }

void require(bool ok, const char* what) {
    if (!ok) throw std::invalid_argument(what);
}

/// Standardized density of each continuous family at z = (nu - xi) / scale,
/// already including the 1/scale Jacobian cancellation (integrates to 1 in z).
double standardized_density(const SpectralShape& s, double z) {
    switch (s.family()) {
        case Family::Gaussian:
            return normal_pdf(z);
        case Family::SechSquared: {
            const double c = 1.0 / std::cosh(z);
            return 0.5 * c * c;
        }
        case Family::SkewNormal:
            return 2.0 * normal_pdf(z) * normal_cdf(s.shape_a() * z);
        case Family::Tabulated:
            break;
    }
    throw std::logic_error("standardized_density: discrete spectrum");
}

}  // namespace

std::string to_string(Family f) {
    switch (f) {
        case Family::Gaussian: return "gaussian";
        case Family::SechSquared: return "sech2";
        case Family::SkewNormal: return "skew_normal";
        case Family::Tabulated: return "tabulated";
    }
    return "unknown";
}

SpectralShape SpectralShape::gaussian(double scale, double location) {
    require(std::isfinite(scale) && scale > 0.0, "gaussian: scale must be > 0");
    require(std::isfinite(location), "gaussian: location must be finite");
    SpectralShape s;
    s.family_ = Family::Gaussian;
    s.scale_ = scale;
    s.location_ = location;
    return s;
}

SpectralShape SpectralShape::sech_squared(double scale, double location) {
    require(std::isfinite(scale) && scale > 0.0, "sech_squared: scale must be > 0");
    require(std::isfinite(location), "sech_squared: location must be finite");
    SpectralShape s;
    s.family_ = Family::SechSquared;
    s.scale_ = scale;
    s.location_ = location;
    return s;
}

SpectralShape SpectralShape::skew_normal(double scale, double shape_a, double location) {
    require(std::isfinite(scale) && scale > 0.0, "skew_normal: scale must be > 0");
    require(std::isfinite(shape_a), "skew_normal: shape parameter must be finite");
    require(std::isfinite(location), "skew_normal: location must be finite");
    const double delta = shape_a / std::sqrt(1.0 + shape_a * shape_a);
    require(std::abs(delta) < 1.0 - 1e-9, "skew_normal: |delta| must stay below 1 - 1e-9");
    SpectralShape s;
    s.family_ = Family::SkewNormal;
    s.scale_ = scale;
    s.shape_a_ = shape_a;
    s.location_ = location;
    return s;
}

SpectralShape SpectralShape::tabulated(std::vector<Sample> samples) {
    require(samples.size() >= 2, "tabulated: at least two samples required");
    double total = 0.0;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        require(std::isfinite(samples[i].nu), "tabulated: detunings must be finite");
        require(std::isfinite(samples[i].weight) && samples[i].weight >= 0.0,
                "tabulated: weights must be >= 0");
        if (i > 0) require(samples[i].nu > samples[i - 1].nu,
                           "tabulated: detunings must be strictly increasing");
        total += samples[i].weight;
    }
    require(total > 0.0, "tabulated: total weight must be > 0");
    for (auto& p : samples) p.weight /= total;
    SpectralShape s;
    s.family_ = Family::Tabulated;
    s.samples_ = std::move(samples);
    return s;
}

double SpectralShape::asymmetry_delta() const {
    if (family_ != Family::SkewNormal) return 0.0;
    return shape_a_ / std::sqrt(1.0 + shape_a_ * shape_a_);
}

double SpectralShape::density(double nu) const {
    if (family_ == Family::Tabulated)
        throw std::logic_error("density: tabulated spectra are discrete");
    const double z = (nu - location_) / scale_;
    return standardized_density(*this, z) / scale_;
}

double SpectralShape::standardized_cut() const {
    switch (family_) {
        case Family::Gaussian:
        case Family::SkewNormal:
            // exp(-z^2/2) tails: mass and nu^4-weighted mass < 1e-16 beyond 10.
            return 10.0;
        case Family::SechSquared:
            // exp(-2z) tails need a wider window for the fourth moment.
            return 25.0;
        case Family::Tabulated:
            break;
    }
    throw std::logic_error("standardized_cut: discrete spectrum");
}

double SpectralShape::expect(const std::function<double(double)>& f) const {
    if (family_ == Family::Tabulated) {
        double acc = 0.0;
        for (const auto& p : samples_) acc += p.weight * f(p.nu);
        return acc;
    }
    const double cut = standardized_cut();
    auto integrand = [&](double z) { return f(location_ + scale_ * z) * standardized_density(*this, z); };
    using boost::math::quadrature::gauss_kronrod;
    return gauss_kronrod<double, 61>::integrate(integrand, -cut, cut, 15, 1e-13);
}

MomentSet MomentSet::from_raw(double mu1, double mu2, double mu3, double mu4) {
    require(std::isfinite(mu1) && std::isfinite(mu2) && std::isfinite(mu3) && std::isfinite(mu4),
            "MomentSet: moments must be finite");
    require(mu2 > 0.0, "MomentSet: mu2 must be > 0");
    MomentSet m;
    m.mu1 = mu1;
    m.mu2 = mu2;
    m.mu3 = mu3;
    m.mu4 = mu4;
    m.beta = mu4 / (mu2 * mu2);
    m.skewness = mu3 / (mu2 * std::sqrt(mu2));
    // Pearson inequality, with slack so exact boundary cases (two symmetric
    // bins give beta = 1) survive rounding.
    const double slack = 1e-9 * std::max(1.0, m.beta);
    require(m.beta + slack >= 1.0 + m.skewness * m.skewness,
            "MomentSet: beta >= 1 + skewness^2 violated");
    return m;
}

MomentSet symmetric_moments(double mu2, double beta) {
    require(std::isfinite(mu2) && mu2 > 0.0, "symmetric_moments: mu2 must be > 0");
    require(std::isfinite(beta) && beta >= 1.0, "symmetric_moments: beta must be >= 1");
    return MomentSet::from_raw(0.0, mu2, 0.0, beta * mu2 * mu2);
}

double skew_normal_standard_mode(double shape_a) {
    if (shape_a == 0.0) return 0.0;
    if (shape_a < 0.0) return -skew_normal_standard_mode(-shape_a);
    // Stationarity of 2*phi(z)*Phi(a z): g(z) = a*phi(a z) - z*Phi(a z) = 0.
    // g(0) = a*phi(0) > 0 and g(1) = a*phi(a) - Phi(a) < -1/2 for all a > 0,
    // so [0, 1] always brackets the unique mode.
    const double a = shape_a;
    auto g = [a](double z) { return a * normal_pdf(a * z) - z * normal_cdf(a * z); };
    double lo = 0.0, hi = 1.0;
    for (int i = 0; i < 200 && hi - lo > 1e-17; ++i) {
        const double mid = 0.5 * (lo + hi);
        (g(mid) > 0.0 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

SpectralShape make_shape(Family family, double target_mu2, double shape_a, Centering centering) {
    require(std::isfinite(target_mu2) && target_mu2 > 0.0, "make_shape: target mu2 must be > 0");
    switch (family) {
        case Family::Gaussian:
            return SpectralShape::gaussian(std::sqrt(target_mu2));
        case Family::SechSquared:
            // Second moment of sech^2(z)/2 is pi^2/12, so w = sqrt(12 mu2)/pi.
            return SpectralShape::sech_squared(std::sqrt(12.0 * target_mu2) / kPi);
        case Family::SkewNormal: {
            const double delta = shape_a / std::sqrt(1.0 + shape_a * shape_a);
            const double m = delta * std::sqrt(2.0 / kPi);
            double s = 0.0, xi = 0.0;
            if (centering == Centering::MeanAtCarrier) {
                // Variance s^2 (1 - m^2) must equal the second moment about
                // the carrier when the mean sits at the carrier.
                s = std::sqrt(target_mu2 / (1.0 - m * m));
                xi = -s * m;
            } else {
                // Mode at the carrier: mu2 picks up the squared mean offset
                // s^2 (m - z0)^2 on top of the variance.
                const double z0 = skew_normal_standard_mode(shape_a);
                s = std::sqrt(target_mu2 / ((1.0 - m * m) + (m - z0) * (m - z0)));
                xi = -s * z0;
            }
            return SpectralShape::skew_normal(s, shape_a, xi);
        }
        case Family::Tabulated:
            break;
    }
    throw std::invalid_argument("make_shape: tabulated spectra take explicit samples");
}

MomentSet moments_analytic(const SpectralShape& shape) {
    double mean = 0.0;  // about the carrier
    double c2 = 0.0, c3 = 0.0, c4 = 0.0;  // central moments
    const double s = shape.scale();
    switch (shape.family()) {
        case Family::Gaussian:
            mean = shape.location();
            c2 = s * s;
            c4 = 3.0 * c2 * c2;
            break;
        case Family::SechSquared:
            mean = shape.location();
            c2 = s * s * kPi * kPi / 12.0;
            c4 = 4.2 * c2 * c2;  // logistic kurtosis 21/5
            break;
        case Family::SkewNormal: {
            const double m = shape.asymmetry_delta() * std::sqrt(2.0 / kPi);
            mean = shape.location() + s * m;
            c2 = s * s * (1.0 - m * m);
            const double g1 = 0.5 * (4.0 - kPi) * m * m * m / std::pow(1.0 - m * m, 1.5);
            const double g2 = 2.0 * (kPi - 3.0) * std::pow(m, 4) / ((1.0 - m * m) * (1.0 - m * m));
            c3 = g1 * std::pow(c2, 1.5);
            c4 = (3.0 + g2) * c2 * c2;
            break;
        }
        case Family::Tabulated:
            throw std::logic_error("moments_analytic: tabulated spectra have no closed form");
    }
    // Shift the central moments to moments about the carrier.
    const double mu1 = mean;
    const double mu2 = c2 + mean * mean;
    const double mu3 = c3 + 3.0 * c2 * mean + std::pow(mean, 3);
    const double mu4 = c4 + 4.0 * c3 * mean + 6.0 * c2 * mean * mean + std::pow(mean, 4);
    return MomentSet::from_raw(mu1, mu2, mu3, mu4);
}

MomentSet moments_quadrature(const SpectralShape& shape) {
    const double mu1 = shape.expect([](double nu) { return nu; });
    const double mu2 = shape.expect([](double nu) { return nu * nu; });
    const double mu3 = shape.expect([](double nu) { return nu * nu * nu; });
    const double mu4 = shape.expect([](double nu) { return nu * nu * nu * nu; });
    return MomentSet::from_raw(mu1, mu2, mu3, mu4);
}

MomentSet moments(const SpectralShape& shape) {
    return shape.family() == Family::Tabulated ? moments_quadrature(shape)
                                               : moments_analytic(shape);
}

}  // namespace qcrb::spectral
