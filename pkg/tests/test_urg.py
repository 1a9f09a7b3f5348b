import pytest

from confren.chain1d import q3_functional
from confren.errors import UsageError
from confren.probes import random_element
from confren.scalar import Q
from confren.schemes import CANONICAL, Scheme, q_functional_2
from confren.urg import (QFunctionalSystem, identity_system, random_system, urg_compose, urg_bracket,
                         check_identity, check_associativity, check_antisymmetry, check_jacobi)


def _probes(n_max, k=6):
    out = []
    for n in range(2, n_max + 1):
        S = tuple(range(1, n + 1))
        out += [random_element(1, S, seed=10 * n + s, terms=2, max_degree=2, max_pole=3) for s in range(k)]
    return out


def test_random_systems_satisfy_conditions():
    pr = _probes(3)
    for s in range(3):
        assert random_system(1, 3, s).check_conditions(pr) is None


def test_identity_and_associativity():
    pr = _probes(3)
    ss = [random_system(1, 3, s) for s in range(4)]
    for q in ss:
        assert check_identity(q, pr) is None
    assert check_associativity(ss[0], ss[1], ss[2], pr) is None
    assert check_associativity(ss[1], ss[3], ss[0], pr) is None


def test_composition_is_not_trivial():
    pr = _probes(3)
    a, b = random_system(1, 3, 0), random_system(1, 3, 1)
    c = urg_compose(a, b)
    naive = [a.q[3](G) + b.q[3](G) for G in pr if len(G.S) == 3]
    assert [c.q[3](G) for G in pr if len(G.S) == 3] != naive


def test_bracket_antisymmetry_and_jacobi():
    pr = _probes(4, k=2)
    ss = [random_system(1, 4, s) for s in range(3)]
    assert check_antisymmetry(ss[0], ss[1], pr) is None
    assert check_jacobi(ss[0], ss[1], ss[2], pr) is None
    b = urg_bracket(ss[0], ss[1])
    pr4 = [random_element(1, (1, 2, 3, 4), seed=s, max_pole=2, terms=2) for s in range(3)]
    assert any(b.q[4](G) != 0 for G in pr4)


def test_scheme_changes_compose():
    sa = CANONICAL
    sb = Scheme(radius=Q(1, 2), name="b")
    sc = Scheme(radius=Q(3), name="c")

    def system(x, y):
        return QFunctionalSystem(1, 3, {2: q_functional_2(1, x, y), 3: q3_functional(x, y)})
    pr = [random_element(1, (1, 2, 3), seed=s, max_pole=3) for s in range(15)]
    pr += [random_element(1, (1, 2), seed=s, max_pole=4) for s in range(5)]
    ab, bc, ac = system(sa, sb), system(sb, sc), system(sa, sc)
    comp = urg_compose(ab, bc)
    for G in pr:
        n = len(G.S)
        assert comp.functional(n)(G) == ac.functional(n)(G)


def test_system_validation():
    with pytest.raises(UsageError):
        identity_system(1, 5)
    with pytest.raises(UsageError):
        urg_compose(random_system(1, 3, 0), random_system(2, 3, 0))
