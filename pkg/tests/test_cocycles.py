import random
from itertools import combinations

import pytest

from confren.cocycles import (gamma_form, check_cohomological_eq, wedge_circle, solve_gamma_by_homotopy)
from confren.derham import d_apply
from confren.distributions import Functional, FunctionalForm, point_functional
from confren.errors import PreconditionError, ResonanceError, UnsupportedDomainError
from confren.probes import probe_set, random_element
from confren.scalar import Q
from confren.schemes import CANONICAL, Scheme

SHARP = Scheme(radius=Q(1, 2), name="sharp")
SCALE = Scheme(scale_exponent=1, name="scale")


def _probes3(k=20):
    return [random_element(1, (1, 2, 3), seed=s, max_pole=3) for s in range(k)]


@pytest.mark.parametrize("scheme", [CANONICAL, SHARP])
def test_cohomological_equation_three_points(scheme):
    g = {2: gamma_form(1, 2, scheme), 3: gamma_form(1, 3, scheme)}
    w = check_cohomological_eq(g, 3, _probes3())
    assert w.ok, w.as_dict()
    assert w.checked == 20


def test_perturbed_cocycle_gives_witness():
    g2 = gamma_form(1, 2, SHARP)
    g3 = gamma_form(1, 3, SHARP)
    bump = point_functional(1, (1, 2, 3), [Q(1), Q(3)], {-3: Q(1)}, threshold=0)
    g3p = FunctionalForm(1, (1, 2, 3), 1, {(0,): g3.components[(0,)] + bump,
                                           (1,): g3.components[(1,)]})
    w = check_cohomological_eq({2: g2, 3: g3p}, 3, _probes3())
    assert not w.ok
    assert w.lhs != w.rhs
    assert set(w.as_dict()) >= {"probe", "index", "lhs", "rhs"}


@pytest.mark.parametrize("scheme", [CANONICAL, SCALE])
def test_two_point_cocycle_closed_in_two_dimensions(scheme):
    g = gamma_form(2, 2, scheme)
    assert d_apply(g).vanishes_on(probe_set(2, (1, 2), n_random=50)) is None


def test_gamma_form_domain():
    with pytest.raises(UnsupportedDomainError):
        gamma_form(2, 3)
    with pytest.raises(UnsupportedDomainError):
        gamma_form(1, 4)


def _rand_form(S, k, rng):
    N = len(S) - 1
    comps = {}
    for I in combinations(range(N), k):
        pt = [Q(rng.randint(1, 9), rng.randint(1, 4)) for _ in range(N)]
        comps[I] = point_functional(1, S, pt, {h: rng.randint(-3, 3) for h in (-1, -2, -3)},
                                    threshold=0).symmetrized()
    return FunctionalForm(1, S, k, comps)


def test_graded_leibniz_for_wedge():
    rng = random.Random(5)
    probes = _probes3(12)
    for k1 in (0, 1):
        for k2 in (0, 1):
            if k1 + k2 + 1 > 2:
                continue
            A, B = _rand_form((1, 2), k1, rng), _rand_form((1, 2), k2, rng)
            lhs = d_apply(wedge_circle(A, B))
            r1 = wedge_circle(d_apply(A), B) if k1 < 1 else None
            r2 = wedge_circle(A, d_apply(B)) if k2 < 1 else None
            for G in probes:
                for I in lhs.components:
                    b1 = r1.value(I, G) if r1 else 0
                    b2 = r2.value(I, G) if r2 else 0
                    assert lhs.value(I, G) == b1 + (-1) ** k1 * b2


def test_solve_by_homotopy():
    pr = probe_set(1, (1, 2), n_random=5)
    assert solve_gamma_by_homotopy(FunctionalForm(1, (1, 2), 1, {}), pr).components == {}
    F = FunctionalForm(1, (1, 2), 1, {(0,): point_functional(1, (1, 2), [Q(2)], {-3: Q(2)}, threshold=0)})
    G = solve_gamma_by_homotopy(F, pr)
    assert d_apply(G).equal_on(F, pr) is None
    R = FunctionalForm(1, (1, 2), 1, {(0,): point_functional(1, (1, 2), [Q(2)], {0: 1}, threshold=-1)})
    with pytest.raises(ResonanceError) as e:
        solve_gamma_by_homotopy(R, pr)
    assert e.value.degree == 0


def test_solve_rejects_non_closed():
    pr = _probes3(5)
    F = FunctionalForm(1, (1, 2, 3), 1,
                       {(0,): point_functional(1, (1, 2, 3), [Q(1), Q(3)], {-2: Q(1)}, threshold=0)})
    with pytest.raises(PreconditionError):
        solve_gamma_by_homotopy(F, pr)
