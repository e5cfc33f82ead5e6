#include "qcrb/fisher.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace qcrb::fisher {

namespace {

using Matrix3ld = Eigen::Matrix<long double, 3, 3>;
using Vector3ld = Eigen::Matrix<long double, 3, 1>;

/// Cofactor inverse of a 3×3 in extended precision. The reparametrized
/// information matrix is near-singular in double precision, so the inverse
/// diagonal is always assembled through long-double arithmetic.
Matrix3ld inverse3_ld(const Matrix3ld& m) {
    Matrix3ld adj;
    adj(0, 0) = m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1);
    adj(0, 1) = m(0, 2) * m(2, 1) - m(0, 1) * m(2, 2);
    adj(0, 2) = m(0, 1) * m(1, 2) - m(0, 2) * m(1, 1);
    adj(1, 0) = m(1, 2) * m(2, 0) - m(1, 0) * m(2, 2);
    adj(1, 1) = m(0, 0) * m(2, 2) - m(0, 2) * m(2, 0);
    adj(1, 2) = m(0, 2) * m(1, 0) - m(0, 0) * m(1, 2);
    adj(2, 0) = m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0);
    adj(2, 1) = m(0, 1) * m(2, 0) - m(0, 0) * m(2, 1);
    adj(2, 2) = m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
    const long double det =
        m(0, 0) * adj(0, 0) + m(0, 1) * adj(1, 0) + m(0, 2) * adj(2, 0);
    if (det == 0.0L) throw std::domain_error("fisher: singular 3x3 matrix");
    return adj / det;
}

/// Diagonal rescale D = diag(√F_ii); throws when any diagonal entry is not
/// strictly positive (the matrix cannot be inverted for a CRB then).
Eigen::Vector3d diagonal_scale(const Eigen::Matrix3d& f, const char* who) {
    Eigen::Vector3d d;
    for (int i = 0; i < 3; ++i) {
        if (!(f(i, i) > 0.0)) {
            std::ostringstream msg;
            msg << who << ": non-positive diagonal entry F(" << i << "," << i << ") = " << f(i, i);
            throw std::domain_error(msg.str());
        }
        d(i) = std::sqrt(f(i, i));
    }
    return d;
}

/// Correlation-form conditioning check on D⁻¹FD⁻¹; rejects indefinite or
/// numerically singular matrices with the offending eigenvalue attached.
void check_conditioning(const Eigen::Matrix3d& f, const char* who) {
    const Eigen::Vector3d d = diagonal_scale(f, who);
    Eigen::Matrix3d hat;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) hat(i, j) = f(i, j) / (d(i) * d(j));
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> es(hat);
    const double lo = es.eigenvalues().minCoeff();
    const double hi = es.eigenvalues().maxCoeff();
    if (!(lo > 0.0) || hi / lo > 1e12) {
        std::ostringstream msg;
        msg << who << ": information matrix rejected (rescaled eigenvalue " << lo
            << ", condition " << (lo > 0.0 ? hi / lo : std::numeric_limits<double>::infinity())
            << ")";
        throw std::domain_error(msg.str());
    }
}

/// (F⁻¹ w)·w with the inverse taken on the rescaled matrix in long double.
long double inverse_quadratic_form(const Eigen::Matrix3d& f, const Vector3ld& w,
                                   const char* who) {
    const Eigen::Vector3d d = diagonal_scale(f, who);
    Matrix3ld hat;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            hat(i, j) = static_cast<long double>(f(i, j)) /
                        (static_cast<long double>(d(i)) * static_cast<long double>(d(j)));
    const Matrix3ld hat_inv = inverse3_ld(hat);
    Vector3ld u;
    for (int i = 0; i < 3; ++i) u(i) = w(i) / static_cast<long double>(d(i));
    return u.dot(hat_inv * u);
}

}  // namespace

int FisherMatrix::index_of(const std::string& parameter) const {
    for (int i = 0; i < 3; ++i)
        if (labels[i] == parameter) return i;
    throw std::invalid_argument("FisherMatrix: unknown parameter '" + parameter + "'");
}

void FisherMatrix::validate() const {
    const double scale = matrix.cwiseAbs().maxCoeff();
    if (scale == 0.0) return;  // zero matrix is trivially symmetric and PSD
    if ((matrix - matrix.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale)
        throw std::invalid_argument("FisherMatrix: not symmetric");
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> es(matrix);
    const double lo = es.eigenvalues().minCoeff();
    const double hi = es.eigenvalues().maxCoeff();
    if (lo < -1e-10 * hi) throw std::invalid_argument("FisherMatrix: not positive semidefinite");
}

std::string to_string(Regime r) {
    return r == Regime::FullNuisance ? "full_nuisance" : "known_nuisance";
}

OverlapSet overlaps_from_moments(const spectral::MomentSet& m, double omega0) {
    OverlapSet o;
    o.g_mean << omega0, m.mu1, m.mu2 / omega0;
    o.g_gram << omega0 * omega0, omega0 * m.mu1, m.mu2,
                omega0 * m.mu1, m.mu2, m.mu3 / omega0,
                m.mu2, m.mu3 / omega0, m.mu4 / (omega0 * omega0);
    return o;
}

OverlapSet overlaps_by_quadrature(const spectral::SpectralShape& shape, double omega0) {
    auto g = [omega0](int k, double nu) {
        switch (k) {
            case 0: return omega0;
            case 1: return nu;
            default: return nu * nu / omega0;
        }
    };
    OverlapSet o;
    for (int j = 0; j < 3; ++j) {
        o.g_mean(j) = shape.expect([&](double nu) { return g(j, nu); });
        for (int k = j; k < 3; ++k) {
            o.g_gram(j, k) = shape.expect([&](double nu) { return g(j, nu) * g(k, nu); });
            o.g_gram(k, j) = o.g_gram(j, k);
        }
    }
    return o;
}

FisherMatrix fim_native(const OverlapSet& overlaps, double n_mean, double f_q) {
    if (!(n_mean >= 0.0)) throw std::invalid_argument("fim_native: n_mean must be >= 0");
    if (!(f_q >= 0.0)) throw std::invalid_argument("fim_native: f_q must be >= 0");
    const Eigen::Matrix3d outer = overlaps.g_mean * overlaps.g_mean.transpose();
    FisherMatrix f;
    f.matrix = f_q * outer + 4.0 * n_mean * (overlaps.g_gram - outer);
    f.matrix = 0.5 * (f.matrix + f.matrix.transpose()).eval();
    for (int i = 0; i < 3; ++i) {
        f.labels[i] = kTimeLabels[i];
        f.unit_scale(i) = f.matrix(i, i) > 0.0 ? std::sqrt(f.matrix(i, i)) : 1.0;
    }
    return f;
}

FisherMatrix fim_overlap_oracle(const spectral::SpectralShape& shape, double omega0,
                                double n_mean, double f_q) {
    return fim_native(overlaps_by_quadrature(shape, omega0), n_mean, f_q);
}

ClosedFormVariances closed_form_variances(const spectral::MomentSet& m, double omega0,
                                          double n_mean, double n_var) {
    const double even1 = std::sqrt(m.mu2);
    const double even3 = m.mu2 * even1;
    if (std::abs(m.mu1) > 1e-9 * even1 || std::abs(m.mu3) > 1e-9 * even3)
        throw std::domain_error("closed_form_variances: pulse is not symmetric about the carrier");
    if (!(m.beta > 1.0)) throw std::domain_error("closed_form_variances: requires beta > 1");
    if (!(n_mean > 0.0 && n_var > 0.0))
        throw std::domain_error("closed_form_variances: requires N > 0 and Δ²N > 0");
    ClosedFormVariances v;
    const double w2 = omega0 * omega0;
    v.var_t_phi = (1.0 / ((m.beta - 1.0) * n_mean) + 1.0 / n_var) / (4.0 * w2);
    v.var_t_g = 1.0 / (4.0 * m.mu2 * n_mean);
    v.var_t_gvd = w2 / (4.0 * m.mu2 * m.mu2 * (m.beta - 1.0) * n_mean);
    return v;
}

FisherMatrix reparametrize(const FisherMatrix& fim, const atmosphere::JacobianB& jacobian) {
    for (int i = 0; i < 3; ++i)
        if (fim.labels[i] != kTimeLabels[i])
            throw std::invalid_argument(
                "reparametrize: expected a matrix over (t_phi, t_g, t_gvd)");
    FisherMatrix out;
    out.matrix = jacobian.b * fim.matrix * jacobian.b.transpose();
    out.matrix = 0.5 * (out.matrix + out.matrix.transpose()).eval();
    for (int i = 0; i < 3; ++i) {
        out.labels[i] = kNativeLabels[i];
        out.unit_scale(i) = out.matrix(i, i) > 0.0 ? std::sqrt(out.matrix(i, i)) : 1.0;
    }
    out.has_parent = true;
    out.parent_matrix = fim.matrix;
    out.congruence = jacobian.b;
    return out;
}

Bound bound(const FisherMatrix& fim, const std::string& parameter, Regime regime) {
    const int idx = fim.index_of(parameter);
    Bound out;
    out.parameter = parameter;
    out.regime = regime;

    if (regime == Regime::KnownNuisance) {
        if (!(fim.matrix(idx, idx) > 0.0))
            throw std::domain_error("bound: non-positive information for '" + parameter + "'");
        out.sigma = 1.0 / std::sqrt(fim.matrix(idx, idx));
        return out;
    }

    if (!fim.has_parent) {
        check_conditioning(fim.matrix, "bound");
        Vector3ld e = Vector3ld::Zero();
        e(idx) = 1.0L;
        out.sigma = double(std::sqrt(inverse_quadratic_form(fim.matrix, e, "bound")));
        return out;
    }

    // Reparametrized matrix: (F̃⁻¹)_ii = wᵀF⁻¹w with B·w = e_i. The congruence
    // factors are individually well conditioned even when F̃ = BFBᵀ is
    // numerically singular in double precision.
    check_conditioning(fim.parent_matrix, "bound");
    Matrix3ld b;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) b(i, j) = static_cast<long double>(fim.congruence(i, j));
    Vector3ld e = Vector3ld::Zero();
    e(idx) = 1.0L;
    const Vector3ld w = inverse3_ld(b) * e;
    out.sigma = double(std::sqrt(inverse_quadratic_form(fim.parent_matrix, w, "bound")));
    return out;
}

}  // namespace qcrb::fisher
