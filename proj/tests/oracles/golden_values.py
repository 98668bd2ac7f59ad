#!/usr/bin/env python3
"""Independent high-precision evaluation of the closed-form quantities frozen
into the unit tests. Run with: python3 tests/oracles/golden_values.py"""
import mpmath as mp

mp.mp.dps = 50

HBAR = mp.mpf("1.054571817e-34")
KB = mp.mpf("1.380649e-23")
C = mp.mpf("299792458")
EPS0 = mp.mpf("8.8541878128e-12")
TWO_PI = 2 * mp.pi


def bose(omega, T):
    return 1 / mp.expm1(HBAR * omega / (KB * T))


def sigma(omega, T, Tc, gap_ratio, rho):
    gap = gap_ratio * KB * Tc
    x = HBAR * omega / (2 * KB * T)
    sn = 1 / rho
    s1 = sn * 4 * gap / (HBAR * omega) * mp.e ** (-gap / (KB * T)) * mp.sinh(x) * mp.besselk(0, x)
    s2 = sn * mp.pi * gap / (HBAR * omega) * mp.tanh(gap / (2 * KB * T))
    return s1, s2


def main():
    print("# bose_einstein")
    for f, T in [(8e9, "0.01"), (600e9, "1"), (8e9, "1")]:
        print(f, T, mp.nstr(bose(TWO_PI * f, mp.mpf(T)), 17))

    print("# sc_conductivity NbN (Tc=13, rho=2e-6), 8 GHz, 1 K")
    for ratio in ["2.05", "1.76"]:
        s1, s2 = sigma(TWO_PI * 8e9, mp.mpf(1), mp.mpf(13), mp.mpf(ratio), mp.mpf("2e-6"))
        print(ratio, mp.nstr(s1, 17), mp.nstr(s2, 17), mp.nstr(s1 / s2, 17))

    print("# K0 reference points")
    for x in ["1e-6", "0.01", "0.5", "1.9", "2.1", "10", "50", "300"]:
        xv = mp.mpf(x)
        print(x, mp.nstr(mp.besselk(0, xv), 17), mp.nstr(mp.e ** xv * mp.besselk(0, xv), 17))

    print("# eo coupling two-step red dot (w=1um, L=300um, f_i=600GHz, f_po=200THz)")
    w, L = mp.mpf("1e-6"), mp.mpf("300e-6")
    wi = TWO_PI * mp.mpf("600e9")
    wpo = TWO_PI * mp.mpf("200e12")
    wo = wpo + wi
    eps_low = mp.mpf("4.95") ** 2
    eps_opt = mp.mpf("2.3") ** 2
    chi2 = 2 * mp.mpf("27e-12")
    V = w * w * L
    g = mp.sqrt(HBAR * wi * wpo * wo / (8 * EPS0 * eps_low * eps_opt * eps_opt)) * chi2 / mp.sqrt(V)
    print("g_eo", mp.nstr(g, 17))

    print("# ki params NbN (Tc=13, ratio 2.05, N0=2.4e47, rho=2e-6), w=1um, t=20nm, L=300um")
    Tc = mp.mpf(13)
    gap = mp.mpf("2.05") * KB * Tc
    N0 = mp.mpf("2.4e47")
    rho = mp.mpf("2e-6")
    t = mp.mpf("20e-9")
    istar = mp.sqrt(mp.pi * N0 * gap ** 3 / (HBAR * rho)) * w * t
    lk = HBAR * rho / (mp.pi * gap) * L / (w * t)
    print("I_star", mp.nstr(istar, 17))
    print("L_k", mp.nstr(lk, 17))
    wmu = TWO_PI * mp.mpf("8e9")
    wpi = TWO_PI * mp.mpf("296e9")
    gki = mp.mpf(3) / 32 * HBAR * wpi * mp.sqrt(wmu * wi) / (lk * istar ** 2)
    print("g_ki", mp.nstr(gki, 17))

    print("# steady-state dT: p=1e6, f=200THz, kappa=2.52e10, g_th*L=4e-6*3e-4")
    dT = mp.mpf("1e6") * HBAR * wpo * mp.mpf("2.52e10") / (mp.mpf("4e-6") * mp.mpf("3e-4"))
    print("dT", mp.nstr(dT, 17))

    print("# loss rates")
    print("kappa_ext mw", mp.nstr(TWO_PI * mp.mpf("8e9") * (w / L) ** 2, 17))
    print("kappa_int opt", mp.nstr(84 * C, 17))
    print("kappa_ext opt", mp.nstr(C / (mp.mpf("2.3") * L), 17))

    print("# occupancy composition")
    print(mp.nstr(mp.mpf("1e-9") + mp.mpf("1e-8") / mp.mpf("0.93"), 17))


if __name__ == "__main__":
    main()
