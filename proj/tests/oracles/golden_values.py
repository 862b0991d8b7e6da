"""Independent high-precision oracles for the frozen golden values in the C++ tests.

Run with `python3 tests/oracles/golden_values.py`; every number printed here is
copied verbatim into the corresponding test file. Nothing in this script shares
code with the C++ implementation: gamma values come from mpmath, densities from
mpmath quadrature (with contour rotation where the integrand decays slowly) and
xi(1) from plain bisection.
"""
import mpmath as mp

mp.mp.dps = 40

ALPHA = mp.mpf("1.5")
C = mp.mpf(100)
EPS = mp.mpf("0.2")
C0 = mp.mpf("0.5") / mp.sqrt(mp.pi)
CHAT = 2 * mp.pi * ALPHA / mp.log(C)


def show(name, value):
    if isinstance(value, mp.mpc):
        print(f"{name} = {mp.nstr(value.real, 20)} {mp.nstr(value.imag, 20)}i")
    else:
        print(f"{name} = {mp.nstr(value, 20)}")


def stable_neg_density(x, t, alpha=ALPHA):
    # p(x,t) with Fourier transform exp(t (ik)^alpha)
    f = lambda k: mp.re(mp.exp(-1j * k * x + t * (1j * k) ** alpha))
    return mp.quad(f, [0, 0.5, 1, 2, 4, 8, 16, 32, mp.inf]) / mp.pi


def positive_stable_density(y, gam, lam):
    # density with Fourier transform exp(-lam (-ik)^gam), gam < 1, via a ray
    # rotated into the lower half plane (branch cut on the negative imaginary axis)
    phi = mp.pi / 4 * (1 / gam - 1)
    rot = mp.exp(-1j * phi)
    f = lambda r: rot * mp.exp(-1j * r * rot * y - lam * (-1j * r * rot) ** gam)
    return mp.re(mp.quad(f, [0, 1, 4, 16, 64, mp.inf])) / mp.pi


def omega(n):
    cn = C0 if n == 0 else C0 * EPS / 2
    return -cn * mp.gamma(1j * n * CHAT - ALPHA + 1)


def m_default(y):
    return mp.re(sum(omega(n) * mp.exp(-1j * n * CHAT * y) for n in (-1, 0, 1)))


def xi_bisect(s):
    lo, hi = mp.mpf("1e-6"), mp.mpf(1e6)
    for _ in range(400):
        mid = mp.sqrt(lo * hi)
        val = mid ** ALPHA * m_default(mp.log(mid))
        if val < s:
            lo = mid
        else:
            hi = mid
    return mp.sqrt(lo * hi)


if __name__ == "__main__":
    show("chat", CHAT)
    show("gamma(-0.5+chat i)", mp.gamma(-0.5 + 1j * CHAT))
    for z in ["0.3+0.7j", "-2.5+1.5j", "4.2-3.1j", "-7.3+0.2j", "1.0+30.0j", "-0.5+49.0j"]:
        show(f"gamma({z})", mp.gamma(mp.mpmathify(complex(z))))
    show("gamma(1/3)", mp.gamma(mp.mpf(1) / 3))
    show("1/gamma(1/3)", 1 / mp.gamma(mp.mpf(1) / 3))
    show("omega_0", omega(0))
    show("omega_1", omega(1))
    show("m(0)", m_default(0))
    show("stable p(1,1)", stable_neg_density(1, 1))
    for i in range(9):
        x = mp.mpf(i) / 2
        show(f"stable p({x},3.5)", stable_neg_density(x, mp.mpf("3.5")))
    sig = mp.cos(mp.pi / 3) ** mp.mpf("1.5")
    lam = sig ** (1 / ALPHA) / mp.cos(mp.pi / (2 * ALPHA))
    show("subordinator h(1,1)", ALPHA * positive_stable_density(1, 1 / ALPHA, lam))
    show("xi(1) default", xi_bisect(1))
    show("xi(2) default", xi_bisect(2))
