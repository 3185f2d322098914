#!/usr/bin/env python3
"""Regenerate the frozen reference values used in the C++ test suite.

Every value is computed with mpmath at 60 significant digits and printed as a
C++ initializer row.  Run from the repository root:

    python3 tools/gen_reference_values.py
"""
import mpmath as mp

mp.mp.dps = 60


def f(x, digits=17):
    return mp.nstr(mp.mpf(x), digits, strip_zeros=False)


def pi_density_const(alpha):
    # Gamma(a+1)/(sqrt(pi) Gamma(a+1/2)); negative for a in (-1,-1/2)
    return mp.gamma(alpha + 1) / (mp.sqrt(mp.pi) * mp.gamma(alpha + mp.mpf("0.5")))


def pi_distribution(alpha, u):
    c = pi_density_const(alpha)
    return c * mp.quad(lambda w: (1 - w * w) ** (alpha - mp.mpf("0.5")), [0, u])


def theta_fn(t, z):
    # (1/2pi) sum_{n in Z} e^{-t n^2} cos(n z)
    s = mp.mpf(1)
    n = 1
    while True:
        term = 2 * mp.e ** (-t * n * n) * mp.cos(n * z)
        s += term
        if mp.e ** (-t * n * n) < mp.mpf("1e-70"):
            break
        n += 1
    return s / (2 * mp.pi)


def theta_hat(t, x):
    # theta as a function of x = cos(phi), Chebyshev form
    s = mp.mpf(1)
    n = 1
    while True:
        c = mp.e ** (-t * n * n)
        s += 2 * c * mp.chebyt(n, x)
        if c < mp.mpf("1e-70"):
            break
        n += 1
    return s / (2 * mp.pi)


def neg_d_pow_theta(N, t, phi):
    # (-D)^N theta_t(phi) = (d/dx)^N theta_hat(x) at x=cos(phi)
    return mp.diff(lambda x: theta_hat(t, x), mp.cos(phi), N)


def jacobi_p(n, a, b, x):
    # degeneracy-safe three-term recurrence; P2 explicit when a+b = -2
    if n == 0:
        return mp.mpf(1)
    P1 = (a + b + 2) * x / 2 + (a - b) / 2
    if n == 1:
        return P1
    if a + b == -2:
        prev, cur, start = P1, (x * x - 1) / 4, 3
        if n == 2:
            return cur
    else:
        prev, cur, start = mp.mpf(1), P1, 2
    for k in range(start, n + 1):
        c0 = 2 * k * (k + a + b) * (2 * k + a + b - 2)
        c1 = (2 * k + a + b - 1) * ((2 * k + a + b) * (2 * k + a + b - 2) * x + a * a - b * b)
        c2 = 2 * (k + a - 1) * (k + b - 1) * (2 * k + a + b)
        prev, cur = cur, (c1 * cur - c2 * prev) / c0
    return cur


def h_norm(n, a, b):
    if n == 0:
        return 2 ** (a + b + 1) * mp.gamma(a + 1) * mp.gamma(b + 1) / mp.gamma(a + b + 2)
    return (2 ** (a + b + 1) * mp.gamma(n + a + 1) * mp.gamma(n + b + 1)
            / ((2 * n + a + b + 1) * mp.gamma(n + a + b + 1) * mp.gamma(n + 1)))


def jacobi_kernel(a, b, t, x, y):
    s = mp.mpf(0)
    for n in range(0, 400):
        lam = n * (n + a + b + 1)
        term = mp.e ** (-t * lam) * jacobi_p(n, a, b, x) * jacobi_p(n, a, b, y) / h_norm(n, a, b)
        s += term
        if n > 10 and abs(term) < mp.mpf("1e-70") * abs(s):
            break
    return s


def h_kernel(lam, t, x):
    s = mp.gamma(lam + mp.mpf("1.5")) / (mp.sqrt(mp.pi) * mp.gamma(lam + 2))
    pref = 1 / (2 ** (2 * lam + 1) * mp.gamma(lam + 2))
    for n in range(1, 400):
        w = mp.e ** (-t * 2 * n * (2 * n + 2 * lam + 1))
        coef = (4 * n + 2 * lam + 1) * mp.gamma(2 * n + 2 * lam + 1) / mp.gamma(2 * n + lam + 1)
        term = pref * w * coef * jacobi_p(2 * n, lam, lam, x)
        s += term
        if n > 5 and abs(term) < mp.mpf("1e-70") * abs(s):
            break
    return s


def exp_pi_integral(alpha, xi):
    # int_[0,1] e^{-xi(1-s)} dPi_alpha(s)
    c = pi_density_const(alpha)
    return c * mp.quad(lambda s: mp.e ** (-xi * (1 - s)) * (1 - s * s) ** (alpha - mp.mpf("0.5")), [0, 1])


def main():
    print("// ---- pi_distribution: {alpha, u, Pi_alpha(u)} ----")
    for a in ["-0.9", "-0.75", "-0.6", "0.3", "1.5", "4.0"]:
        for u in ["0.1", "0.5", "0.9", "0.99"]:
            v = pi_distribution(mp.mpf(a), mp.mpf(u))
            print(f"    {{{a}, {u}, {f(v)}}},")

    print("// ---- bessel K_nu(y): {2nu, y, K} ----")
    for two_nu in [1, 3, 5, 7, 9, 11, 15]:
        for y in ["0.5", "2.0", "10.0"]:
            v = mp.besselk(mp.mpf(two_nu) / 2, mp.mpf(y))
            print(f"    {{{two_nu}, {y}, {f(v)}}},")

    print("// ---- theta: {t, z, theta_t(z)} ----")
    for t in ["0.05", "0.3", "1.0", "3.0"]:
        for z in ["0.0", "0.7", "2.0", "3.1"]:
            v = theta_fn(mp.mpf(t), mp.mpf(z))
            print(f"    {{{t}, {z}, {f(v)}}},")

    print("// ---- neg_d_pow_theta: {N, t, phi, value} ----")
    for N in [1, 2, 3, 4, 6]:
        for (t, phi) in [("0.1", "0.4"), ("0.1", "1.3"), ("0.5", "2.0"),
                         ("0.05", "3.0"), ("0.02", "0.0"), ("1.5", "3.14159265358979312")]:
            v = neg_d_pow_theta(N, mp.mpf(t), mp.mpf(phi))
            print(f"    {{{N}, {t}, {phi}, {f(v)}}},")

    print("// ---- jacobi kernel: {alpha, beta, t, x, y, G} ----")
    for (a, b, t, x, y) in [
        ("0.3", "0.7", "0.25", "0.5", "-0.2"),
        ("0.3", "0.7", "1.0", "0.9", "0.9"),
        ("-0.7", "-0.8", "2.0", "0.5", "-0.9"),
        ("1.0", "0.0", "0.5", "-0.99", "1.0"),
        ("2.5", "1.5", "0.2", "0.3", "1.0"),
        ("-0.4", "-0.35", "0.6", "0.0", "0.77"),
    ]:
        v = jacobi_kernel(mp.mpf(a), mp.mpf(b), mp.mpf(t), mp.mpf(x), mp.mpf(y))
        print(f"    {{{a}, {b}, {t}, {x}, {y}, {f(v)}}},")

    print("// ---- H kernel: {lambda, t, x, H} ----")
    for (lam, t, x) in [("-1.0", "0.3", "0.4"), ("-1.2", "0.5", "0.0"),
                        ("-1.2", "0.5", "0.9"), ("-1.49", "1.0", "-0.6")]:
        v = h_kernel(mp.mpf(lam), mp.mpf(t), mp.mpf(x))
        print(f"    {{{lam}, {t}, {x}, {f(v)}}},")

    print("// ---- exp-moment of dPi: {alpha, xi, I} ----")
    for a in ["0.0", "1.0", "2.5"]:
        for xi in ["0.0", "1.0", "10.0", "100.0"]:
            v = exp_pi_integral(mp.mpf(a), mp.mpf(xi))
            print(f"    {{{a}, {xi}, {f(v)}}},")

    print("// ---- misc scalars ----")
    print(f"    d_minus_half = {f(mp.e ** (-mp.euler))}")
    print(f"    d_one        = {f((3 * mp.sqrt(mp.pi) / 4) ** (mp.mpf(2) / 3))}")
    print(f"    d_three      = {f((105 * mp.sqrt(mp.pi) / 16) ** (mp.mpf(2) / 7))}")
    print(f"    zeta3        = {f(mp.zeta(3))}")
    # Psi(phi) = phi/sin(phi) iterated L at pi/2 for i=0..6, L=(1/z)d/dz
    psi = lambda z: z / mp.sin(z)
    for i in range(0, 7):
        # L^i Psi(pi/2) via series diff: L^i f(z) = sum over even-series; use mp.diff chain
        g = psi
        for _ in range(i):
            g = (lambda gg: (lambda z: mp.diff(gg, z) / z))(g)
        print(f"    LpowPsi[{i}](pi/2) = {f(g(mp.pi / 2))}")


if __name__ == "__main__":
    main()
