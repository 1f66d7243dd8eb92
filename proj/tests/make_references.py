#!/usr/bin/env python3
"""Regenerates tests/reference_values.hpp.

Every frozen constant asserted by the C++ suite is recomputed here with
50-digit arithmetic, independently of the library implementation:
closed-form eigenvalues, boundary-determinant roots, gap-ratio crossings,
and the calibration-energy integrals (via adaptive tanh-sinh quadrature).

Usage: python3 tests/make_references.py > tests/reference_values.hpp
"""

import mpmath as mp

mp.mp.dps = 50

OUT = []


def emit(name, value):
    OUT.append(f"inline constexpr double {name} = {mp.nstr(mp.mpf(value), 22)};")


def abc(l, tau, alpha):
    l, tau, alpha = mp.mpf(l), mp.mpf(tau), mp.mpf(alpha)
    beta = alpha * (1 - alpha)
    a = -2 * l * (l + 2) + 2 * (l + 1) ** 2 * mp.cosh(2 * tau) - 2 * mp.cosh((2 * l + 2) * tau)
    b = 4 * l * (l + 1) * (l + 2) * ((l + 1) * mp.sinh(2 * tau) + mp.sinh((2 * l + 2) * tau)) / beta
    c = (
        -8 * l**2 * (l + 1) ** 2 * (l + 2) ** 2
        * (mp.cosh((2 * l + 2) * tau) - mp.cosh(2 * tau)) / beta
    )
    return a, b, c


def lam_pm(l, tau, alpha):
    a, b, c = abc(l, tau, alpha)
    s = mp.sqrt(b * b - 4 * a * c)
    r1, r2 = (-b + s) / (2 * a), (-b - s) / (2 * a)
    return min(r1, r2), max(r1, r2)


def lam0p(tau, alpha):
    tau, alpha = mp.mpf(tau), mp.mpf(alpha)
    beta = alpha * (1 - alpha)
    return 4 / beta * mp.sinh(2 * tau) / (1 - mp.cosh(2 * tau) + tau * mp.sinh(2 * tau))


def gap_ratio(beta, tau):
    beta, tau = mp.mpf(beta), mp.mpf(tau)
    S = mp.sinh(2 * tau) * (1 + mp.cosh(2 * tau)) / (mp.cosh(2 * tau) - 1) ** 2
    T = (mp.cosh(4 * tau) - mp.cosh(2 * tau)) / (mp.cosh(2 * tau) - 1) ** 2
    lam1m = 6 * (S - mp.sqrt(S * S - 2 * beta * T))
    l0 = 4 * mp.sinh(2 * tau) / (1 - mp.cosh(2 * tau) + tau * mp.sinh(2 * tau))
    return lam1m / l0


def energy_over_period(delta):
    delta = mp.mpf(delta)
    d2 = delta * delta

    def f(phi):
        return 1 / (1 - mp.cos(phi) + d2 * (1 + mp.cos(phi)))

    def g1(phi):
        ff = f(phi)
        br = 3 + 5 * mp.cos(phi) * (1 - d2) * ff - 2 * (1 - d2) ** 2 * ff**2 * mp.sin(phi) ** 2
        return ff**2 * mp.sin(phi) ** 4 * br**2

    def g2(phi):
        ff = f(phi)
        br = 3 * mp.cos(phi) - 2 * mp.sin(phi) ** 2 * (1 - d2) * ff
        return ff**4 * mp.sin(phi) ** 2 * br**2

    i1 = mp.quad(g1, [0, mp.pi / 2, mp.pi])
    i2 = mp.quad(g2, [0, mp.pi / 2, mp.pi])
    return 16 * d2 * mp.pi * i1 + 64 * d2 * d2 * mp.pi * i2


def center_of_mass_4(delta):
    delta = mp.mpf(delta)
    d2 = delta * delta

    def x4(phi):
        den = (1 - mp.cos(phi)) + d2 * (1 + mp.cos(phi))
        return (mp.cos(phi) - 1 + d2 * (1 + mp.cos(phi))) / den

    return 4 * mp.pi * mp.quad(lambda p: x4(p) * mp.sin(p) ** 2, [0, mp.pi])


# annulus quadratic at (l=2, tau=1, alpha=0.5), unscaled and scaled
a, b, c = abc(2, 1, "0.5")
E = mp.e ** (-6)
emit("annulus_a_l2_tau1", a)
emit("annulus_b_l2_tau1", b)
emit("annulus_c_l2_tau1", c)
emit("annulus_a_scaled_l2_tau1", a * E)
emit("annulus_b_scaled_l2_tau1", b * E)
emit("annulus_c_scaled_l2_tau1", c * E)

for (l, tau, alpha, tag) in [(1, 1, "0.5", "l1_tau1_a05"), (2, 1, "0.5", "l2_tau1_a05"),
                             (1, "0.2", "0.3", "l1_tau02_a03")]:
    lm, lp = lam_pm(l, tau, alpha)
    emit(f"lambda_minus_{tag}", lm)
    emit(f"lambda_plus_{tag}", lp)

emit("lambda0_plus_tau1_a05", lam0p(1, "0.5"))
emit("lambda0_plus_tau02_a03", lam0p("0.2", "0.3"))
emit("lambda0_plus_tau3_a08", lam0p(3, "0.8"))

for beta, tag in [("0.05", "005"), ("0.15", "015"), ("0.25", "025")]:
    ts = mp.findroot(lambda t: gap_ratio(beta, t) - 1, mp.mpf("0.8"))
    emit(f"tau_star_beta{tag}", ts)

emit("gap_ratio_beta025_tau1", gap_ratio("0.25", 1))
emit("gap_ratio_beta01_tau05", gap_ratio("0.1", "0.5"))

emit("energy_delta_1", energy_over_period(1))
emit("energy_delta_05", energy_over_period("0.5"))
emit("energy_delta_02", energy_over_period("0.2"))
emit("energy_delta_001", energy_over_period("0.01"))
emit("center_of_mass4_delta05", center_of_mass_4("0.5"))

emit("acosh_2", mp.acosh(2))
emit("wallis_sin4", 3 * mp.pi / 8)
emit("wallis_sin2cos2", mp.pi / 8)

print("#pragma once\n")
print("// Generated by make_references.py (50-digit arithmetic); do not edit by hand.")
print("// Each constant is the nearest double to the high-precision value.\n")
print("namespace refs {\n")
for line in OUT:
    print(line)
print("\n}  // namespace refs")
