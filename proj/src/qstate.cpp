#include "qcrb/qstate.hpp"

#include <cmath>
#include <stdexcept>

#include "qcrb/constants.hpp"

namespace qcrb::qstate {

namespace {

using std::complex;

constexpr double kTwoPi = 2.0 * kPi;

double wrap_2pi(double phase) {
    double w = std::fmod(phase, kTwoPi);
    if (w < 0.0) w += kTwoPi;
    return w;
}

Eigen::Matrix2d rotation(double theta) {
    Eigen::Matrix2d r;
    r << std::cos(theta), -std::sin(theta), std::sin(theta), std::cos(theta);
    return r;
}

/// Photon-number variance of a displaced squeezed vacuum when the squeeze
/// phase is set sign·optimal relative to the displacement:
/// Δ²N = e^{sign·2r}(N − sinh²r) + sinh²(2r)/2 with |α|² = N − sinh²r.
double variance_at_extremal_phase(double n_total, double r, int sign) {
    const double sh = std::sinh(r);
    const double sh2 = std::sinh(2.0 * r);
    return std::exp(sign * 2.0 * r) * (n_total - sh * sh) + 0.5 * sh2 * sh2;
}

}  // namespace

double GaussianState::purity() const {
    return 1.0 / (2.0 * std::sqrt(covariance.determinant()));
}

void GaussianState::validate() const {
    const double scale = covariance.cwiseAbs().maxCoeff();
    if (!(std::abs(covariance(0, 1) - covariance(1, 0)) <= 1e-12 * std::max(scale, 1.0)))
        throw std::invalid_argument("GaussianState: covariance not symmetric");
    if (!(covariance.determinant() >= 0.25 * (1.0 - 1e-9)))
        throw std::invalid_argument("GaussianState: uncertainty relation det(σ) >= 1/4 violated");
}

GaussianState displaced_squeezed_vacuum(double alpha_mag, double alpha_arg, double r,
                                        double squeeze_phase) {
    if (!(r >= 0.0)) throw std::invalid_argument("displaced_squeezed_vacuum: r must be >= 0");
    if (!(alpha_mag >= 0.0))
        throw std::invalid_argument("displaced_squeezed_vacuum: alpha_mag must be >= 0");
    GaussianState s;
    s.mean << std::sqrt(2.0) * alpha_mag * std::cos(alpha_arg),
        std::sqrt(2.0) * alpha_mag * std::sin(alpha_arg);
    const double theta = 0.5 * (squeeze_phase - kPi);
    Eigen::Matrix2d d = Eigen::Matrix2d::Zero();
    d(0, 0) = 0.5 * std::exp(2.0 * r);
    d(1, 1) = 0.5 * std::exp(-2.0 * r);
    const Eigen::Matrix2d rot = rotation(theta);
    s.covariance = rot * d * rot.transpose();
    // Re-symmetrize so rounding in the similarity product cannot trip the
    // symmetry invariant downstream.
    s.covariance = 0.5 * (s.covariance + s.covariance.transpose()).eval();
    return s;
}

double optimal_antisqueezing_phase(double alpha_arg) {
    return wrap_2pi(kPi + 2.0 * alpha_arg);
}

GaussianState apply_loss(const GaussianState& state, double eta) {
    if (!(eta >= 0.0 && eta <= 1.0))
        throw std::invalid_argument("apply_loss: eta must lie in [0, 1]");
    GaussianState out;
    out.mean = std::sqrt(eta) * state.mean;
    out.covariance = eta * state.covariance + (1.0 - eta) * 0.5 * Eigen::Matrix2d::Identity();
    return out;
}

PhotonStatistics photon_statistics(const GaussianState& state) {
    state.validate();
    const Eigen::Matrix2d& s = state.covariance;
    const Eigen::Vector2d& d = state.mean;
    PhotonStatistics p;
    p.n_mean = 0.5 * (s.trace() - 1.0) + 0.5 * d.squaredNorm();
    p.n_var = 0.5 * (s * s).trace() - 0.25 + d.dot(s * d);
    return p;
}

double qfi_number_gaussian(const GaussianState& state) {
    state.validate();
    const Eigen::Matrix2d& s = state.covariance;
    const double det = s.determinant();
    Eigen::Matrix2d sinv;
    sinv << s(1, 1), -s(0, 1), -s(1, 0), s(0, 0);
    sinv /= det;

    Eigen::Matrix2d j;
    j << 0.0, 1.0, -1.0, 0.0;
    const Eigen::Matrix2d sprime = j * s + s * j.transpose();
    const Eigen::Vector2d dprime = j * state.mean;

    const double purity = std::min(1.0, 1.0 / (2.0 * std::sqrt(det)));
    const double cov_term = (sinv * sprime * sinv * sprime).trace() / (2.0 * (1.0 + purity * purity));
    const double mean_term = dprime.dot(sinv * dprime);
    return cov_term + mean_term;
}

PhotonStatistics full_statistics(const GaussianState& state) {
    PhotonStatistics p = photon_statistics(state);
    p.f_q = qfi_number_gaussian(state);
    return p;
}

NoiseCalibration calibrate_noise_ratio(double n_target, double noise_db, double alpha_arg) {
    if (!(n_target > 0.0) || !std::isfinite(n_target))
        throw std::invalid_argument("calibrate_noise_ratio: n_target must be > 0");
    if (!std::isfinite(noise_db))
        throw std::invalid_argument("calibrate_noise_ratio: noise_db must be finite");

    NoiseCalibration cal;
    if (noise_db == 0.0) {
        cal.alpha_mag = std::sqrt(n_target);
        cal.squeeze_phase = optimal_antisqueezing_phase(alpha_arg);
        return cal;
    }

    const int sign = noise_db > 0.0 ? +1 : -1;
    const double ratio = std::pow(10.0, noise_db / 10.0);
    const double target = ratio * n_target;
    const double r_max = std::asinh(std::sqrt(n_target));  // |α|² = 0 endpoint
    auto excess = [&](double r) {
        return variance_at_extremal_phase(n_target, r, sign) - target;
    };

    double lo = 0.0, hi = 0.0;
    if (sign > 0) {
        // Δ²N grows from N at r = 0 to 2N(N+1) at r_max; bracket directly.
        if (!(excess(r_max) >= 0.0))
            throw std::domain_error("calibrate_noise_ratio: requested noise increase infeasible");
        lo = 0.0;
        hi = r_max;
    } else {
        // Sub-Poissonian branch: Δ²N dips below N before the quartic term
        // takes over; take the smallest r that reaches the target.
        const int kScan = 4096;
        int first_below = -1;
        for (int i = 1; i <= kScan; ++i) {
            if (excess(r_max * i / kScan) <= 0.0) {
                first_below = i;
                break;
            }
        }
        if (first_below < 0)
            throw std::domain_error("calibrate_noise_ratio: requested noise reduction infeasible");
        lo = r_max * (first_below - 1) / kScan;
        hi = r_max * first_below / kScan;
    }

    // excess(lo) and excess(hi) have opposite signs; excess(lo) matches the
    // sign opposite to `sign` in both branches.
    for (int i = 0; i < 200 && hi - lo > 1e-17 * std::max(1.0, hi); ++i) {
        const double mid = 0.5 * (lo + hi);
        const bool mid_below = sign > 0 ? excess(mid) < 0.0 : excess(mid) > 0.0;
        (mid_below ? lo : hi) = mid;
    }
    cal.r = 0.5 * (lo + hi);
    const double sh = std::sinh(cal.r);
    cal.alpha_mag = std::sqrt(std::max(0.0, n_target - sh * sh));
    cal.squeeze_phase =
        sign > 0 ? optimal_antisqueezing_phase(alpha_arg) : wrap_2pi(2.0 * alpha_arg);
    return cal;
}

FockDensity fock_oracle_state(std::complex<double> alpha, double r, double squeeze_phase,
                              double eta, int cutoff) {
    if (cutoff < 2) throw std::invalid_argument("fock_oracle_state: cutoff must be >= 2");
    if (!(r >= 0.0)) throw std::invalid_argument("fock_oracle_state: r must be >= 0");
    if (!(eta >= 0.0 && eta <= 1.0))
        throw std::invalid_argument("fock_oracle_state: eta must lie in [0, 1]");
    const double nbar = std::norm(alpha) + std::sinh(r) * std::sinh(r);
    if (!(nbar <= cutoff / 6.0))
        throw std::invalid_argument("fock_oracle_state: expected photon number exceeds cutoff/6");

    // Number-basis amplitudes of D(α)S(r e^{iφ})|0⟩ via the three-term
    // recurrence that follows from annihilating the state with the
    // Bogoliubov-transformed mode operator.
    const complex<double> eiphi = std::polar(1.0, squeeze_phase);
    const double ch = std::cosh(r), sh = std::sinh(r), th = std::tanh(r);
    Eigen::VectorXcd psi(cutoff);
    const complex<double> seed_exponent =
        -0.5 * (complex<double>(std::norm(alpha)) + std::conj(alpha) * std::conj(alpha) * eiphi * th);
    psi(0) = std::exp(seed_exponent) / std::sqrt(ch);
    const complex<double> gamma = alpha * ch + std::conj(alpha) * eiphi * sh;
    for (int n = 0; n + 1 < cutoff; ++n) {
        complex<double> next = gamma * psi(n);
        if (n > 0) next -= eiphi * sh * std::sqrt(double(n)) * psi(n - 1);
        psi(n + 1) = next / (std::sqrt(double(n + 1)) * ch);
    }

    FockDensity rho;
    rho.cutoff = cutoff;
    rho.trace_deficit = std::max(0.0, 1.0 - psi.squaredNorm());
    if (rho.trace_deficit > 1e-8)
        throw std::domain_error("fock_oracle_state: truncated mass exceeds 1e-8; raise cutoff");

    if (eta == 1.0) {
        rho.matrix = psi * psi.adjoint();
        return rho;
    }
    rho.matrix = Eigen::MatrixXcd::Zero(cutoff, cutoff);
    if (eta == 0.0) {
        rho.matrix(0, 0) = psi.squaredNorm();
        return rho;
    }
    // Kraus loss: (K_k ψ)_m = sqrt((1−η)^k / k! · (m+k)!/m!) · η^{m/2} ψ_{m+k},
    // with the factorial ratio evaluated in log space.
    const double log_eta = std::log(eta);
    const double log_keep = std::log1p(-eta);
    for (int k = 0; k < cutoff; ++k) {
        Eigen::VectorXcd branch = Eigen::VectorXcd::Zero(cutoff);
        for (int m = 0; m + k < cutoff; ++m) {
            const double logw = 0.5 * (k * log_keep + m * log_eta + std::lgamma(m + k + 1.0) -
                                       std::lgamma(m + 1.0) - std::lgamma(k + 1.0));
            branch(m) = std::exp(logw) * psi(m + k);
        }
        rho.matrix.noalias() += branch * branch.adjoint();
    }
    return rho;
}

PhotonStatistics fock_photon_statistics(const FockDensity& rho) {
    double tr = 0.0, m1 = 0.0, m2 = 0.0;
    for (int n = 0; n < rho.cutoff; ++n) {
        const double p = rho.matrix(n, n).real();
        tr += p;
        m1 += n * p;
        m2 += double(n) * n * p;
    }
    PhotonStatistics out;
    out.n_mean = m1 / tr;
    out.n_var = m2 / tr - out.n_mean * out.n_mean;
    return out;
}

double fock_oracle_qfi(const FockDensity& rho, double epsilon) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(rho.matrix);
    if (es.info() != Eigen::Success)
        throw std::runtime_error("fock_oracle_qfi: eigendecomposition failed");
    Eigen::VectorXd p = es.eigenvalues();
    if (p.minCoeff() < -1e-9)
        throw std::runtime_error("fock_oracle_qfi: density matrix significantly indefinite");
    const double tr = p.sum();
    for (int i = 0; i < p.size(); ++i) p(i) = std::max(0.0, p(i)) / tr;

    // M_ab = ⟨a|N̂|b⟩ in the eigenbasis.
    const int dim = rho.cutoff;
    Eigen::MatrixXcd scaled = es.eigenvectors();
    for (int n = 0; n < dim; ++n) scaled.row(n) *= double(n);
    const Eigen::MatrixXcd m = es.eigenvectors().adjoint() * scaled;

    double second = 0.0;
    for (int n = 0; n < dim; ++n) second += double(n) * n * rho.matrix(n, n).real();
    second /= tr;

    double pair_sum = 0.0;
    for (int a = 0; a < dim; ++a)
        for (int b = 0; b < dim; ++b) {
            const double denom = p(a) + p(b);
            if (denom > epsilon) pair_sum += p(a) * p(b) / denom * std::norm(m(a, b));
        }
    return 4.0 * second - 8.0 * pair_sum;
}

}  // namespace qcrb::qstate
