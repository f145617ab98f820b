"""Print high-precision reference values used as frozen expectations in the Rust tests.

Run with: python3 python/reference_values.py
"""
import mpmath as mp

mp.mp.dps = 60


def multiplier(n, delta, beta, nu):
    a = mp.mpf(n + 2 - beta) / 2
    b = mp.mpf(n + 2) / 2
    z = -(mp.mpf(nu) * delta / 2) ** 2
    return -mp.mpf(nu) ** 2 * mp.hyp2f3(1, a, 2, b, a + 1, z)


def limit_multiplier(n, delta, nu):
    b = mp.mpf(n + 2) / 2
    z = -(mp.mpf(nu) * delta / 2) ** 2
    return -mp.mpf(nu) ** 2 * mp.hyp1f2(1, 2, b, z)


def show(label, v):
    print(f"{label:48s} {mp.nstr(v, 20)}")


show("gamma(6.3)", mp.gamma(6.3))
show("gamma(-2.5)", mp.gamma(-2.5))
show("gamma(0.1)", mp.gamma(0.1))
show("gamma(170.5)", mp.gamma(170.5))
show("gamma(-150.3)", mp.gamma(mp.mpf("-150.3")))
show("lgamma(1000.5)", mp.loggamma(1000.5))
show("digamma(3.7)", mp.digamma(3.7))
show("digamma(-2.3)", mp.digamma(mp.mpf("-2.3")))
show("digamma(0.01)", mp.digamma(mp.mpf("0.01")))
show("besselj(0,2)", mp.besselj(0, 2))
show("besselj(1,7.5)", mp.besselj(1, mp.mpf("7.5")))
show("besselj(0,30)", mp.besselj(0, 30))
show("besselj(1,1000.3)", mp.besselj(1, mp.mpf("1000.3")))
show("besselj(1.5,3)", mp.besselj(1.5, 3))
show("besselj(0,14.9)", mp.besselj(0, mp.mpf("14.9")))
show("besselj(0,15.1)", mp.besselj(0, mp.mpf("15.1")))
show("hyp2f3([1,1],[2,2,2],-4)", mp.hyp2f3(1, 1, 2, 2, 2, -4))
show("hyp2f3([1,0.25],[2,1.5,1.25],-30)", mp.hyp2f3(1, 0.25, 2, 1.5, 1.25, -30))
show("hyp1f2([1],[2,2],-25)", mp.hyp1f2(1, 2, 2, -25))
for (n, d, b, nu) in [(1, 0.1, 1, 10), (2, 1.0, 1, 20), (1, 1.0, -2, 50), (3, 1.0, 4.9, 50),
                      (1, 0.1, 4, 999.0), (2, 0.1, 2, 500), (3, 0.1, 2, 300), (2, 1.0, 3.5, 7.3),
                      (1, 1.0, 0, 11.0), (2, 0.1, -100, 900), (3, 0.1, -500, 700)]:
    show(f"m(n={n},d={d},b={b},nu={nu})", multiplier(n, d, b, nu))
for (n, d, nu) in [(2, 1.0, 5), (3, 0.1, 700), (2, 0.1, 900)]:
    show(f"m_inf(n={n},d={d},nu={nu})", limit_multiplier(n, d, nu))
