import pytest

from confren.hochschild import DiffOp, generator_ops, check_hochschild, hochschild_cochain
from confren.probes import random_element, probe_set
from confren.scalar import Q
from confren.schemes import Scheme, extend_homogeneous

SCALE = Scheme(scale_exponent=1, name="scale")


def test_weyl_relations():
    x, d = DiffOp.coordinate(1, 0), DiffOp.partial(1, 0)
    assert d @ x - x @ d == DiffOp.identity(1)
    G = random_element(2, (1, 2), seed=3)
    for _, A in generator_ops(2):
        for _, B in generator_ops(2):
            assert (A @ B).apply(G) == A.apply(B.apply(G))


def test_hochschild_identity():
    R = lambda G: extend_homogeneous(G, SCALE)
    probes = [random_element(2, (1, 2), seed=s, max_pole=3) for s in range(50)]
    ops = generator_ops(2)
    picks = [ops[0], ops[2], ops[4], ops[7]]
    for _, A1 in picks:
        for _, A2 in ops:
            assert check_hochschild(R, A1, A2, probes) is None


def test_cochain_nontrivial_and_x_trivial():
    R = lambda G: extend_homogeneous(G, SCALE)
    probes = probe_set(2, (1, 2), max_degree=2, max_pole=3, n_random=0)
    c_d = hochschild_cochain(R, DiffOp.partial(2, 0))
    c_x = hochschild_cochain(R, DiffOp.coordinate(2, 0))
    assert any(not (c_d(G).delta.is_zero()) for G in probes)
    assert all(c_x(G).delta.is_zero() and c_x(G).u.is_zero() for G in probes)
