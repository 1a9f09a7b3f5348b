"""Acceptance suite: one test per primary criterion, each under its time budget.

Run with ``pytest tests/test_acceptance.py -v`` or ``python tests/test_acceptance.py``;
both print one PASS/FAIL line per criterion.
"""

import os
import random
import subprocess
import sys
import time
from itertools import combinations

import pytest

from confren import ConfigElem, parse_element
from confren.chain1d import chart_check, chenren_check_3
from confren.cocycles import gamma_form, check_cohomological_eq
from confren.config import PropagatorElem
from confren.derham import OForm, d_apply, homotopy_K, euler_weight_parts, cohomology_dims
from confren.distributions import DeltaExpansion
from confren.errors import PreconditionError, ResonanceError, UsageError
from confren.hochschild import generator_ops, check_hochschild
from confren.partitions import enumerate_partitions
from confren.probes import probe_set, random_element, random_rational_point
from confren.scalar import Q, PI, LAMBDA
from confren.schemes import (CANONICAL, Scheme, anomaly_commutator, extend_homogeneous,
                             gamma_functional_2, q_map_2)
from confren.urg import (random_system, check_identity, check_associativity, check_antisymmetry,
                         check_jacobi)

RESULTS = []
SCALE = Scheme(scale_exponent=1, name="scale")
SHARP = Scheme(radius=Q(1, 2), name="sharp")
SHARP3 = Scheme(radius=Q(3), name="sharp3")
HERE = os.path.dirname(os.path.abspath(__file__))


def _criterion(number, title, budget):
    def wrap(fn):
        def run():
            t0 = time.perf_counter()
            ok = False
            try:
                fn()
                ok = True
            finally:
                dt = time.perf_counter() - t0
                within = dt < budget
                line = "criterion %2d %-44s %s  %6.2fs (budget %ds)" % (
                    number, title, "PASS" if ok and within else "FAIL", dt, budget)
                RESULTS.append(line)
            assert within, "took %.1fs, budget %ds" % (dt, budget)
        run.__name__ = fn.__name__
        run.__doc__ = fn.__doc__
        return run
    return wrap


def _cases(D, S, count, seed, **kw):
    rng = random.Random(seed)
    return [random_element(D, S, rng, **kw) for _ in range(count)]


@_criterion(1, "algebra laws", 10)
def test_criterion_01_algebra_laws():
    for D in (1, 2):
        for n in (2, 3):
            S = tuple(range(1, n + 1))
            pool = _cases(D, S, 40, 100 * D + n, max_pole=2)
            rng = random.Random(D * 10 + n)
            N = pool[0].N
            for case in range(100):
                a, b, c = (rng.choice(pool) for _ in range(3))
                assert (a * b) * c == a * (b * c)
                assert a * b == b * a
                assert a * (b + c) == a * b + a * c
                i, j = rng.randrange(N), rng.randrange(N)
                assert (a * b).partial(i) == a.partial(i) * b + a * b.partial(i)
                comm = a.mul_coordinate(j).partial(i) - a.partial(i).mul_coordinate(j)
                assert comm == (a if i == j else ConfigElem.zero(D, S))
                p = random_rational_point(N, case)
                try:
                    va, vb = a.evaluate(p), b.evaluate(p)
                except PreconditionError:
                    continue
                assert (a * b).evaluate(p) == va * vb


@_criterion(2, "filtration and product rule", 10)
def test_criterion_02_filtration():
    for D in (1, 2):
        for n in (2, 3):
            S = tuple(range(1, n + 1))
            rng = random.Random(n)
            for G in _cases(D, S, 100, 7 * D + n, max_pole=3):
                d = G.divergence_degree()
                i = rng.randrange(G.N)
                assert G.mul_coordinate(i).divergence_degree() <= d - 1
                assert G.partial(i).divergence_degree() <= d + 1
                H = random_element(D, S, rng, max_pole=2)
                if not (G * H).is_zero():
                    assert (G * H).divergence_degree() <= d + H.divergence_degree()
        rng = random.Random(D)
        for _ in range(100):
            a = PropagatorElem.monomial(D, tuple(rng.randint(0, 2) for _ in range(D)), rng.randint(0, 3))
            b = PropagatorElem.monomial(D, tuple(rng.randint(0, 2) for _ in range(D)), rng.randint(0, 3))
            A = ConfigElem.propagator(D, (1, 2, 3), 1, 2, a)
            B = ConfigElem.propagator(D, (1, 2, 3), 2, 3, b)
            assert (A * B).divergence_degree() == A.divergence_degree() + B.divergence_degree()


@_criterion(3, "d^2 = 0, Kd + dK = id, resonance", 30)
def test_criterion_03_derham():
    cases = [(1, 2, {}), (1, 3, {}), (2, 2, {}), (2, 3, dict(terms=2, max_pole=1, max_degree=2))]
    for D, n, kw in cases:
        rng = random.Random(D * 7 + n)
        S = tuple(range(1, n + 1))
        N = D * (n - 1)
        for m in range(N + 1):
            for _ in range(100):
                T = OForm(D, S, m, {I: random_element(D, S, rng, **kw)
                                    for I in combinations(range(N), m)})
                assert d_apply(d_apply(T)).is_zero()
                T2 = OForm(D, S, m, {})
                for w, P in euler_weight_parts(T).items():
                    if w != 0:
                        T2 = T2 + P
                tot = OForm(D, S, m, {})
                if m < N:
                    tot = tot + homotopy_K(d_apply(T2))
                if m > 0:
                    tot = tot + d_apply(homotopy_K(T2))
                assert tot == T2
    with pytest.raises(ResonanceError):
        homotopy_K(OForm(1, (1, 2), 1, {(0,): parse_element("1*G[1,2](x^-1)", 1, (1, 2))}))


@_criterion(4, "cohomology dimensions", 120)
def test_criterion_04_cohomology():
    for n, expected in ((2, [1, 1]), (3, [1, 3, 2])):
        for m, e in enumerate(expected):
            dims = [cohomology_dims(1, n, m, b).dim_H for b in (1, 2, 3, 4)]
            assert dims[-1] == e
            stable_from = min(b for b in (1, 2, 3, 4) if dims[b - 1:] == [e] * (5 - b))
            assert stable_from <= 4


@_criterion(5, "two-dimensional anomaly", 60)
def test_criterion_05_anomaly_d2():
    from test_oracles import _anomaly_pairing
    import mpmath as mp
    u = parse_element("1*G[1,2](1/q)", 2, (1, 2))
    for mu in range(2):
        unit = tuple(1 if i == mu else 0 for i in range(2))
        assert anomaly_commutator(u, mu) == DeltaExpansion(2, {unit: -PI})
        for nu, txt in enumerate(("1*G[1,2](x1/q)", "1*G[1,2](x2/q)")):
            assert gamma_functional_2(2, mu)(parse_element(txt, 2, (1, 2))) == (PI if mu == nu else 0)
    lhs, gx0 = _anomaly_pairing()
    with mp.workdps(40):
        assert abs(lhs - mp.pi * gx0) / abs(mp.pi * gx0) < mp.mpf("1e-20")
    probes = probe_set(2, (1, 2))
    for sch in (CANONICAL, SCALE):
        assert d_apply(gamma_form(2, 2, sch)).vanishes_on(probes) is None


@_criterion(6, "one-dimensional chain", 60)
def test_criterion_06_chain_d1():
    F = gamma_functional_2(1, 0)
    for k in range(1, 7):
        u = parse_element("1*G[1,2](x^-%d)" % k, 1, (1, 2))
        assert F(u) == 0 and anomaly_commutator(u, 0).is_zero()
    rng = random.Random(6)
    charts = enumerate_partitions((1, 2, 3), proper_only=True)
    checked = 0
    s = 0
    while checked < 240:
        G = random_element(1, (1, 2, 3), seed=s, max_pole=3)
        s += 1
        for P in charts:
            w = Q(rng.randint(-9, 9), rng.randint(1, 5))
            t = Q(rng.choice([-1, 1]) * rng.randint(1, 9), rng.randint(1, 5))
            try:
                msg = chart_check(G, CANONICAL, P, w, t)
            except UsageError:
                continue
            assert msg is None, msg
            checked += 1
    probes = probe_set(1, (1, 2, 3))
    for sch in (CANONICAL, SHARP):
        g = {2: gamma_form(1, 2, sch), 3: gamma_form(1, 3, sch)}
        w = check_cohomological_eq(g, 3, probes)
        assert w.ok, w.as_dict()


@_criterion(7, "scheme change", 60)
def test_criterion_07_scheme_change():
    u = parse_element("1*G[1,2](1/q)", 2, (1, 2))
    assert q_map_2(u, CANONICAL, SCALE) == DeltaExpansion(2, {(0, 0): 2 * PI * LAMBDA})
    for D, new in ((1, SHARP), (2, SCALE), (2, SHARP)):
        zero = (0,) * D
        for G in probe_set(D, (1, 2)):
            lhs, rhs = extend_homogeneous(G, new), extend_homogeneous(G, CANONICAL)
            assert lhs.u == rhs.u and lhs.delta == rhs.delta + q_map_2(G, CANONICAL, new)
            for xi in range(D):
                diff = gamma_functional_2(D, xi, new)(G) - gamma_functional_2(D, xi)(G)
                assert diff == -q_map_2(G.partial(xi), CANONICAL, new).coefficient(zero)
    for old, new in ((CANONICAL, SHARP), (SHARP, SHARP3)):
        for G in probe_set(1, (1, 2, 3)):
            lhs, rhs = chenren_check_3(G, old, new)
            assert lhs == rhs


@_criterion(8, "renormalization group structure", 60)
def test_criterion_08_urg():
    probes = []
    for n in (2, 3):
        S = tuple(range(1, n + 1))
        probes += [random_element(1, S, seed=10 * n + s, terms=2, max_degree=2, max_pole=3)
                   for s in range(8)]
    systems = [random_system(1, 3, s) for s in range(20)]
    for i, q in enumerate(systems):
        assert q.check_conditions(probes) is None
        assert check_identity(q, probes) is None
        assert check_associativity(q, systems[(i + 1) % 20], systems[(i + 7) % 20], probes) is None
    pr4 = probes + [random_element(1, (1, 2, 3, 4), seed=s, max_pole=2, terms=2) for s in range(3)]
    s4 = [random_system(1, 4, s) for s in range(3)]
    assert check_antisymmetry(s4[0], s4[1], pr4) is None
    assert check_jacobi(s4[0], s4[1], s4[2], pr4) is None


@_criterion(9, "Hochschild identity", 30)
def test_criterion_09_hochschild():
    R = lambda G: extend_homogeneous(G, SCALE)
    probes = [random_element(2, (1, 2), seed=s, max_pole=3) for s in range(50)]
    ops = [A for _, A in generator_ops(2)]
    for A1 in ops[:2] + ops[4:6]:
        for A2 in ops:
            assert check_hochschild(R, A1, A2, probes) is None


GOLDEN = [
    (["cohomology", "--config", "cohomology_d1.cfg"], 0),
    (["cocycle", "--config", "cocycle_d2.cfg"], 0),
    (["check-closure", "--config", "closure_d1.cfg"], 0),
    (["check-closure", "--config", "closure_bad_sign.cfg"], 1),
    (["scheme-change", "--config", "scheme_change_d1.cfg"], 0),
    (["urg", "--config", "urg_d1.cfg"], 0),
    (["cocycle", "--config", "unsupported.cfg"], 2),
    (["degrees", "elements.txt", "--dim", "2", "--points", "3"], 0),
    (["degrees", "--points", "0"], 2),
]


@_criterion(10, "CLI determinism and exit codes", 30)
def test_criterion_10_cli():
    golden = os.path.join(HERE, "golden")
    for argv, code in GOLDEN:
        argv = [os.path.join(golden, a) if a.endswith((".cfg", ".txt")) else a for a in argv]
        runs = []
        for seed in ("1", "2"):
            env = dict(os.environ, PYTHONHASHSEED=seed)
            p = subprocess.run([sys.executable, "-m", "confren.cli"] + argv, env=env,
                               capture_output=True)
            runs.append((p.returncode, p.stdout))
        assert runs[0] == runs[1], argv
        assert runs[0][0] == code, (argv, runs[0][0])


ALL = [v for k, v in sorted(globals().items()) if k.startswith("test_criterion_")]

if __name__ == "__main__":
    sys.path.insert(0, HERE)
    failed = 0
    for fn in ALL:
        try:
            fn()
        except Exception:
            failed += 1
    print("\n".join(RESULTS))
    sys.exit(1 if failed else 0)
