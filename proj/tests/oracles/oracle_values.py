"""Reference values frozen into the unit tests.

Everything here is computed with mpmath at 40+ digits, either by direct
series summation or by mpmath's own Laplace inversion, independently of
the C++ code. Run: python3 tests/oracles/oracle_values.py
"""

import mpmath as mp

mp.mp.dps = 60


def gml_series(alpha, beta, gamma, z, terms=500):
    """Prabhakar function by brute-force summation."""
    s = mp.mpf(0)
    for j in range(terms):
        s += mp.rf(gamma, j) * mp.mpf(z) ** j / (mp.factorial(j) * mp.gamma(alpha * j + beta))
    return s


def wright_series(alpha, beta, x, terms=400):
    s = mp.mpf(0)
    for k in range(terms):
        s += mp.mpf(x) ** k * mp.rgamma(alpha * k + beta) / mp.factorial(k)
    return s


def invert(F, t):
    mp.mp.dps = 40
    v = mp.invertlaplace(F, t, method="talbot")
    mp.mp.dps = 60
    return v


def S(p, s):
    nu1, nu2, n1 = p
    return n1 * s ** nu1 + (1 - n1) * s ** nu2


def show(name, v):
    print(f"{name:<48} {mp.nstr(v, 17)}")


def main():
    show("gamma(7.3)", mp.gamma(mp.mpf("7.3")))
    show("ml(0.7, 1, -3)", gml_series(mp.mpf("0.7"), 1, 1, -3))
    show("gml(0.5, 1, 2, -1)", gml_series(mp.mpf("0.5"), 1, 2, -1))
    show("gml(0.5, 1.5, 2, -1)", gml_series(mp.mpf("0.5"), mp.mpf("1.5"), 2, -1))
    show("gml(0.8, 1.8, 3, -2.5)", gml_series(mp.mpf("0.8"), mp.mpf("1.8"), 3, mp.mpf("-2.5")))
    show("ml(0.5, 1, -40) = erfcx(40)", mp.exp(1600) * mp.erfc(40))
    show("ml(0.6, 1, -1)", gml_series(mp.mpf("0.6"), 1, 1, -1))
    show("wright(-0.5, 0.5, -1)", wright_series(mp.mpf("-0.5"), mp.mpf("0.5"), -1))
    show("exp(-1/4)/sqrt(pi)", mp.exp(-mp.mpf(1) / 4) / mp.sqrt(mp.pi))
    show("wright(-0.3, 0.7, -2)", wright_series(mp.mpf("-0.3"), mp.mpf("0.7"), -2))
    show("kummer(3, 1.5, -2)", mp.hyp1f1(3, mp.mpf("1.5"), -2))

    # One-sided stable laws with transform exp(-zeta eta^alpha).
    show("unit stable pdf alpha=0.7 x=2", invert(lambda s: mp.exp(-s ** mp.mpf("0.7")), 2))
    z1 = 1 / mp.cos(mp.pi * mp.mpf("0.5") / 2)
    z2 = 1 / mp.cos(mp.pi * mp.mpf("0.8") / 2)
    for w in (1, 10):
        show(f"convolution a=0.5,0.8 sigma=1 w={w}",
             invert(lambda s: mp.exp(-z1 * s ** mp.mpf("0.5") - z2 * s ** mp.mpf("0.8")), w))
    show("unit stable pdf alpha=0.7 x=0.3", invert(lambda s: mp.exp(-s ** mp.mpf("0.7")), mp.mpf("0.3")))

    # Density of the random time, transform (S / (lambda eta)) exp(-S y / lambda).
    p = (mp.mpf("0.4"), mp.mpf("0.8"), mp.mpf("0.5"))
    for y in ("0.05", "1"):
        yy = mp.mpf(y)
        show(f"q(0.4,0.8,0.5; y={y}, t=1)", invert(lambda s: S(p, s) / s * mp.exp(-S(p, s) * yy), 1))
    p2 = (mp.mpf("0.3"), mp.mpf("0.9"), mp.mpf("0.4"))
    show("q(0.3,0.9,0.4; y=0.5, t=1)",
         invert(lambda s: S(p2, s) / s * mp.exp(-S(p2, s) * mp.mpf("0.5")), 1))

    # pmf, transform lambda^k (S / eta) / (lambda + S)^(k+1).
    show("pmf(0.4,0.8,0.5, lambda=1; k=0, t=1)", invert(lambda s: S(p, s) / s / (1 + S(p, s)), 1))
    show("pmf(0.4,0.8,0.5, lambda=1; k=3, t=2)", invert(lambda s: S(p, s) / s / (1 + S(p, s)) ** 4, 2))
    p3 = (mp.mpf("0.4"), mp.mpf("0.9"), mp.mpf("0.3"))
    show("pmf(0.4,0.9,0.3, lambda=2; k=2, t=1)",
         invert(lambda s: 4 * S(p3, s) / s / (2 + S(p3, s)) ** 3, 1))
    # Mass on k <= 10 at (0.4,0.8,0.5, lambda=1, t=1); the tail beyond is 1.26e-5.
    show("sum pmf(0.4,0.8,0.5, lambda=1; k<=10, t=1)",
         mp.fsum(invert(lambda s, k=k: S(p, s) / s / (1 + S(p, s)) ** (k + 1), 1) for k in range(11)))

    # Interarrival density lambda / (lambda + S) and renewal function lambda / (eta S).
    show("f1(0.4,0.8,0.5, lambda=1.5; t=1)", invert(lambda s: mp.mpf("1.5") / (mp.mpf("1.5") + S(p, s)), 1))
    show("renewal(0.4,0.8,0.5, lambda=1.5; t=1)", invert(lambda s: mp.mpf("1.5") / (s * S(p, s)), 1))

    # Diffusion density, transform sqrt(S) exp(-|x| sqrt(S)) / (2 eta).
    for x in ("0", "1"):
        xx = mp.mpf(x)
        show(f"v(0.4,0.8,0.5; x={x}, t=1)",
             invert(lambda s: mp.sqrt(S(p, s)) * mp.exp(-xx * mp.sqrt(S(p, s))) / (2 * s), 1))


if __name__ == "__main__":
    main()
