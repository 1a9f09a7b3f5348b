import pytest

from confren import parse_element
from confren.distributions import (DeltaExpansion, functional_to_map, map_to_functional,
                                   point_functional, table_functional)
from confren.errors import UsageError
from confren.probes import probe_set
from confren.scalar import Q


def test_x_times_delta_prime():
    d1 = DeltaExpansion.delta(1, (1,))
    assert d1.mul_coordinate(0) == DeltaExpansion.delta(1, (0,), -1)
    d2 = DeltaExpansion.delta(2, (2, 1))
    assert d2.mul_coordinate(0) == DeltaExpansion.delta(2, (1, 1), -2)
    assert DeltaExpansion.delta(2).mul_coordinate(1).is_zero()


def test_delta_derivative_and_pairing():
    d = DeltaExpansion.delta(1)
    dd = d.partial(0)
    assert dd == DeltaExpansion.delta(1, (1,))
    # <delta', f> = -f'(0): pairing takes derivative data of f at 0
    assert dd.pair(lambda r: Q(3) if r == (1,) else Q(0)) == Q(-3)


def test_functional_map_roundtrip():
    F = point_functional(2, (1, 2), [Q(1, 3), Q(2)], {-2: Q(1), -3: Q(-2, 5)}, threshold=1)
    probes = probe_set(2, (1, 2), max_degree=3, max_pole=2, n_random=10)
    phi = lambda G: functional_to_map(F, G)
    back = map_to_functional(phi, 2, (1, 2), 1, probes=probes[:20])
    for G in probes:
        assert back(G) == F(G)
        for i in range(2):
            assert phi(G.mul_coordinate(i)) == phi(G).mul_coordinate(i)


def test_functional_map_derivative_correspondence():
    # d o phi - phi o d commutes with x and has leading functional -Phi o d
    F = point_functional(1, (1, 2), [Q(2)], {-1: Q(1), -2: Q(3), -3: Q(-1)}, threshold=0)
    for G in probe_set(1, (1, 2), max_degree=3, max_pole=3, n_random=10):
        comm = functional_to_map(F, G).partial(0) - functional_to_map(F, G.partial(0))
        assert comm == functional_to_map(F.dual_partial(0), G)


def test_threshold_validation():
    with pytest.raises(UsageError):
        point_functional(1, (1, 2), [Q(1)], {0: Q(1)}, threshold=0)
    T = table_functional(1, (1, 2), {-1: Q(1)})
    assert T(parse_element("1*G[1,2](x^-1)", 1, (1, 2))) == 1
    assert T.check_threshold(probe_set(1, (1, 2), n_random=5)) is None
