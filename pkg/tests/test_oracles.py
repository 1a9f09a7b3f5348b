"""Independent numerical and symbolic oracles."""

import mpmath as mp
import pytest
import sympy as sp

from confren import parse_element
from confren.derham import cohomology_dims
from confren.partitions import enumerate_partitions
from confren.probes import random_element
from confren.scalar import Q, PI
from confren.schemes import CANONICAL, Scheme, canonical_anomaly, q_map_2, sphere_moment

A1, A2 = mp.mpf(1) / 3, -mp.mpf(1) / 5


def _anomaly_pairing(K=64, dps=40):
    """-P(u)[d_x f] - P(d_x u)[f] for u = 1/r^2 by polar quadrature."""
    with mp.workdps(dps):
        f = lambda x, y: mp.exp(-(x - A1) ** 2 - (y - A2) ** 2)
        fx = lambda x, y: -2 * (x - A1) * f(x, y)
        f0, gx0, gy0 = f(0, 0), fx(0, 0), 2 * A2 * f(0, 0)
        ang = [(mp.cos(2 * mp.pi * j / K), mp.sin(2 * mp.pi * j / K)) for j in range(K)]

        def circ(h):
            return 2 * mp.pi / K * mp.fsum(h(c, s) for c, s in ang)

        def rad1(r):
            # canonical P(1/r^2): subtract the value inside the unit disc
            sub = gx0 if r < 1 else 0
            return circ(lambda c, s: fx(r * c, r * s) - sub) / r

        def rad2(r):
            # canonical P(-2x/r^4): subtract the first-order jet inside the unit disc
            def h(c, s):
                x, y = r * c, r * s
                sub = (f0 + x * gx0 + y * gy0) if r < 1 else 0
                return -2 * c / r ** 3 * (f(x, y) - sub)
            return circ(h) * r

        quad = lambda g: (mp.quad(g, [0, 1], method="gauss-legendre")
                          + mp.quad(g, [1, 4, 12], method="gauss-legendre"))
        return -quad(rad1) - quad(rad2), gx0


def test_anomaly_quadrature_oracle():
    lhs, gx0 = _anomaly_pairing()
    # engine: [d_x, P](1/r^2) = c delta', and delta'[f] = -f_x(0)
    u = parse_element("1*G[1,2](1/q)", 2, (1, 2))
    c = canonical_anomaly(u, 0).coefficient((1, 0))
    assert c == -PI
    with mp.workdps(40):
        engine = -mp.pi * (-gx0)
        # the commutator applied to f equals -P(u)[d f] - P(d u)[f]
        assert abs(lhs - engine) / abs(engine) < mp.mpf("1e-20")


@pytest.mark.parametrize("k", [2, 4])
def test_sharp_radius_oracle_one_dimension(k):
    rho = mp.mpf(1) / 2
    with mp.workdps(30):
        f = lambda x: mp.exp(-(x - A1) ** 2)
        d = [mp.diff(f, 0, t) for t in range(k + 1)]
        T = lambda x, n: mp.fsum(d[t] * x ** t / mp.factorial(t) for t in range(n + 1))
        crit = k - 1

        gl = lambda g, pts: mp.quad(g, pts, method="gauss-legendre")
        full = lambda x: (f(x) - T(x, crit)) / x ** k
        crit_only = lambda x: (f(x) - d[crit] * x ** crit / mp.factorial(crit)) / x ** k

        # the |x| > 1 tails agree in both schemes and are left out
        def sharp():
            return gl(full, [-rho, 0, rho]) + gl(crit_only, [-1, -rho]) + gl(crit_only, [rho, 1])

        def canonical():
            cont = mp.fsum(d[t] / mp.factorial(t) * (1 + (-1) ** (t - k)) / (t - k + 1)
                           for t in range(crit))
            return gl(full, [-1, 0, 1]) + cont

        diff = sharp() - canonical()
        u = parse_element("1*G[1,2](x^-%d)" % k, 1, (1, 2))
        Qd = q_map_2(u, CANONICAL, Scheme(radius=Q(1, 2)))
        engine = mp.fsum(mp.mpf(int(c.numerator)) / int(c.denominator) * (-1) ** r[0] * d[r[0]]
                         for r, c in Qd.terms.items())
        assert abs(diff - engine) < mp.mpf("1e-20")


def test_sphere_moments_sympy():
    t = sp.symbols("t")
    for a in range(5):
        for b in range(5):
            exact = sp.integrate(sp.cos(t) ** a * sp.sin(t) ** b, (t, 0, 2 * sp.pi)) / sp.pi
            u = parse_element("1*G[1,2](x1^%d*x2^%d)" % (a, b), 2, (1, 2))
            assert sphere_moment(u) == Q(str(exact)) * PI


def test_derivatives_against_sympy():
    x, y = sp.symbols("x y")
    for s in range(20):
        G = random_element(1, (1, 2, 3), seed=s, max_pole=3)
        expr = sp.sympify(_sympy_text(G, x, y))
        for i, v in enumerate((x, y)):
            dG = G.partial(i)
            pt = {x: sp.Rational(2, 7), y: sp.Rational(-5, 3)}
            want = sp.diff(expr, v).subs(pt)
            got = dG.evaluate([Q(2, 7), Q(-5, 3)])
            assert sp.Rational(str(got)) == want


def _sympy_text(G, x, y):
    # difference coordinates: x = x1 - x3, y = x2 - x3
    X = {1: x, 2: y, 3: sp.Integer(0)}
    tot = 0
    for c, fmap in G.terms():
        term = sp.Rational(str(c))
        for (j, k), (a, m) in fmap.items():
            term *= (X[j] - X[k]) ** (a[0] - m)
        tot += term
    return tot


def test_bell_and_orlik_solomon_sympy():
    t = sp.symbols("t")
    for n in range(1, 6):
        assert len(enumerate_partitions(range(1, n + 1))) == sp.bell(n)
    for n in (2, 3):
        poly = sp.Poly(sp.prod([1 + k * t for k in range(1, n)]), t)
        dims = [cohomology_dims(1, n, m, 3).dim_H for m in range(n)]
        assert dims == [int(c) for c in reversed(poly.all_coeffs())]
