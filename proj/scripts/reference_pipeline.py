#!/usr/bin/env python3
"""Extended-precision reference pipeline.

Recomputes the full bound chain (air index -> dispersion times -> Jacobian ->
Fisher matrix -> distance uncertainty) with 60-digit arithmetic, independently
of the C++ implementation. The printed constants are frozen into the C++
regression and acceptance tests; rerun this script to regenerate them.

Usage: python3 scripts/reference_pipeline.py
"""

from mpmath import mp, mpf, sqrt, pi, matrix, lu_solve, inverse, norm

mp.dps = 60

C_LIGHT = mpf(299792458)


# --- Boensch-Potulski air index -------------------------------------------

def density_factor_x(temp_c, pressure_pa, co2_fraction):
    t = mpf(temp_c)
    p = mpf(pressure_pa)
    x = mpf(co2_fraction)
    base = p / mpf("93214.60")
    press = (1 + mpf("1e-8") * (mpf("0.5953") - mpf("0.009876") * t) * p) / (
        1 + mpf("0.0036610") * t
    )
    co2 = 1 + mpf("0.5327") * (x - mpf("0.0004"))
    return base * press * co2


def dispersion_term(vt):
    """D(vt): the X-weighted part of 1e8*(n-1)."""
    return (
        mpf("8091.37")
        + mpf("2333983") / (130 - vt**2)
        + mpf("15518") / (mpf("38.9") - vt**2)
    )


def dispersion_term_d1(vt):
    return 2 * vt * (
        mpf("2333983") / (130 - vt**2) ** 2 + mpf("15518") / (mpf("38.9") - vt**2) ** 2
    )


def dispersion_term_d2(vt):
    return 2 * (
        mpf("2333983") * (130 + 3 * vt**2) / (130 - vt**2) ** 3
        + mpf("15518") * (mpf("38.9") + 3 * vt**2) / (mpf("38.9") - vt**2) ** 3
    )


def water_term(vt):
    """W(vt): the P_w-weighted part of -1e10*(n-1)."""
    return mpf("3.802") - mpf("0.0384") * vt**2


def water_term_d1(vt):
    return -mpf("0.0768") * vt


WATER_TERM_D2 = -mpf("0.0768")


def index_coefficients(vt):
    """Returns (eps_d, a_d, b_d, w_n, w_g, w_v):
    n            = 1 + eps_d*X + w_n*P_w
    omega n'     =     a_d*X   + w_g*P_w
    omega n' + omega^2 n''/2 = b_d*X + w_v*P_w
    with omega-derivatives expressed through vt d/dvt.
    """
    eps_d = mpf("1e-8") * dispersion_term(vt)
    a_d = mpf("1e-8") * vt * dispersion_term_d1(vt)
    b_d = mpf("1e-8") * (vt * dispersion_term_d1(vt) + vt**2 * dispersion_term_d2(vt) / 2)
    w_n = -mpf("1e-10") * water_term(vt)
    w_g = -mpf("1e-10") * vt * water_term_d1(vt)
    w_v = -mpf("1e-10") * (vt * water_term_d1(vt) + vt**2 * WATER_TERM_D2 / 2)
    return eps_d, a_d, b_d, w_n, w_g, w_v


def jacobian(length_m, x_par, p_w, vt):
    """B[i][j] = d t_j / d c_i, rows (L, X, P_w), cols (t_phi, t_g, t_gvd), SI."""
    eps_d, a_d, b_d, w_n, w_g, w_v = index_coefficients(vt)
    g_phi = 1 + eps_d * x_par + w_n * p_w
    g_g = 1 + (eps_d + a_d) * x_par + (w_n + w_g) * p_w
    g_v = b_d * x_par + w_v * p_w
    lc = length_m / C_LIGHT
    return matrix(
        [
            [g_phi / C_LIGHT, g_g / C_LIGHT, g_v / C_LIGHT],
            [eps_d * lc, (eps_d + a_d) * lc, b_d * lc],
            [w_n * lc, (w_n + w_g) * lc, w_v * lc],
        ]
    )


# --- Fisher assembly -------------------------------------------------------

def fim_native(omega0, mu, n_mean, f_q):
    """F_jk = <g_j><g_k> f_q + 4(<g_j g_k> - <g_j><g_k>) N  over (t_phi,t_g,t_gvd)."""
    mu1, mu2, mu3, mu4 = mu
    g_mean = [omega0, mu1, mu2 / omega0]
    gram = [
        [omega0**2, omega0 * mu1, mu2],
        [omega0 * mu1, mu2, mu3 / omega0],
        [mu2, mu3 / omega0, mu4 / omega0**2],
    ]
    f = matrix(3, 3)
    for j in range(3):
        for k in range(3):
            f[j, k] = g_mean[j] * g_mean[k] * f_q + 4 * (
                gram[j][k] - g_mean[j] * g_mean[k]
            ) * n_mean
    return f


def main():
    lambda0 = mpf("785e-9")
    omega0 = 2 * pi * C_LIGHT / lambda0
    vt = 1 / (lambda0 * mpf("1e6"))  # 1/um

    temp_c = mpf(24)
    pressure = mpf(101325)
    co2 = mpf("0.0004")
    p_w = mpf("0.0313") * mpf(101325)  # partial pressure, Pa
    length = mpf(1000)
    photons = mpf("1e16")

    x_par = density_factor_x(temp_c, pressure, co2)
    print(f"X(T=24C, P=101325Pa, x=0.0004)       = {mp.nstr(x_par, 20)}")

    eps_d, a_d, b_d, w_n, w_g, w_v = index_coefficients(vt)
    n_phi = 1 + eps_d * x_par + w_n * p_w
    n_phi_spec = 1 + eps_d * x_par + w_n * mpf("3171.4")
    print(f"n(vt=1/0.785, X, Pw=3171.4 Pa)       = {mp.nstr(n_phi_spec, 20)}")
    print(f"n(vt=1/0.785, X, Pw=0.0313 atm)      = {mp.nstr(n_phi, 20)}")
    print(f"dn/dPw per Pa                        = {mp.nstr(w_n, 12)}")
    print(f"omega0*n' X-coefficient (a_d)        = {mp.nstr(a_d, 12)}")
    print(f"omega0*n' Pw-coefficient (w_g)       = {mp.nstr(w_g, 12)}")

    t_phi = n_phi * length / C_LIGHT
    t_g = (n_phi + a_d * x_par + w_g * p_w) * length / C_LIGHT
    t_gvd = (b_d * x_par + w_v * p_w) * length / C_LIGHT
    print(f"t_phi  (L=1km, fig conditions)       = {mp.nstr(t_phi, 20)}")
    print(f"t_g                                  = {mp.nstr(t_g, 20)}")
    print(f"t_gvd                                = {mp.nstr(t_gvd, 20)}")

    # Appendix-style coefficients, ns/m with P_w in Pa.
    ns = mpf("1e9")
    print(f"k0 = {mp.nstr(ns / C_LIGHT, 12)}")
    print(f"k1 = {mp.nstr(ns * eps_d / C_LIGHT, 12)}")
    print(f"k2 = {mp.nstr(ns * w_n / C_LIGHT, 12)}")
    print(f"k3 = {mp.nstr(ns * (eps_d + a_d) / C_LIGHT, 12)}")
    print(f"k4 = {mp.nstr(ns * (w_n + w_g) / C_LIGHT, 12)}")
    print(f"k5 = {mp.nstr(ns * b_d / C_LIGHT, 12)}")
    print(f"k6 = {mp.nstr(ns * w_v / C_LIGHT, 12)}")

    # Gaussian pulse, mu2 = (omega0/10)^2, shot-noise coherent drive.
    mu2 = mpf("0.01") * omega0**2
    mu = (mpf(0), mu2, mpf(0), 3 * mu2**2)
    n_var = photons  # Poissonian
    f_q = 4 * n_var

    f_native = fim_native(omega0, mu, photons, f_q)
    f_inv = inverse(f_native)
    sig_tphi = sqrt(f_inv[0, 0])
    sig_tg = sqrt(f_inv[1, 1])
    sig_tgvd = sqrt(f_inv[2, 2])
    print(f"sigma_tphi (shot)                    = {mp.nstr(sig_tphi, 20)}")
    print(f"sigma_tg   (shot)                    = {mp.nstr(sig_tg, 20)}")
    print(f"sigma_tgvd (shot)                    = {mp.nstr(sig_tgvd, 20)}")

    # Closed forms for the symmetric case.
    beta = mpf(3)
    var_tphi = (1 / (4 * omega0**2)) * (1 / ((beta - 1) * photons) + 1 / n_var)
    var_tg = 1 / (4 * mu2 * photons)
    var_tgvd = omega0**2 / (4 * mu2**2 * (beta - 1) * photons)
    print(f"closed-form sigma_tphi               = {mp.nstr(sqrt(var_tphi), 20)}")
    print(f"closed-form sigma_tg                 = {mp.nstr(sqrt(var_tg), 20)}")
    print(f"closed-form sigma_tgvd               = {mp.nstr(sqrt(var_tgvd), 20)}")

    b = jacobian(length, x_par, p_w, vt)
    f_tilde = b * f_native * b.T
    ft_inv = inverse(f_tilde)
    sigma_l_full = sqrt(ft_inv[0, 0])
    sigma_x_full = sqrt(ft_inv[1, 1])
    sigma_pw_full = sqrt(ft_inv[2, 2])
    sigma_l_known = 1 / sqrt(f_tilde[0, 0])
    print(f"sigma_L  (full nuisance)             = {mp.nstr(sigma_l_full, 20)}")
    print(f"sigma_L  (known nuisance)            = {mp.nstr(sigma_l_known, 20)}")
    print(f"sigma_X  (full nuisance)             = {mp.nstr(sigma_x_full, 20)}")
    print(f"sigma_Pw (full nuisance)             = {mp.nstr(sigma_pw_full, 20)}")

    # Conditioning diagnostics for the double-precision implementation.
    d = matrix(3, 3)
    for i in range(3):
        d[i, i] = 1 / sqrt(f_tilde[i, i])
    m = d * f_tilde * d
    m_inv = inverse(m)
    print(f"corr(F~) =")
    for i in range(3):
        print("   ", [mp.nstr(m[i, j], 12) for j in range(3)])
    # 1-norm condition estimate
    def norm1(a):
        return max(sum(abs(a[i, j]) for i in range(3)) for j in range(3))
    print(f"cond1(corr)                          = {mp.nstr(norm1(m) * norm1(m_inv), 8)}")


if __name__ == "__main__":
    main()
