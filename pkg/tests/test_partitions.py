import pytest

from confren import parse_element
from confren.errors import UsageError, PreconditionError
from confren.partitions import (Partition, enumerate_partitions, partition_leq, quotient,
                                quotient_by_subset, fp_contains, diagonal_taylor)
from confren.probes import random_element
from confren.scalar import Q


@pytest.mark.parametrize("n,bell", [(1, 1), (2, 2), (3, 5), (4, 15), (5, 52)])
def test_bell_numbers(n, bell):
    P = enumerate_partitions(range(1, n + 1))
    assert len(P) == bell
    assert len(set(P)) == bell
    assert len(enumerate_partitions(range(1, n + 1), proper_only=True)) == bell - 1


def test_partition_order_and_quotient():
    fine = Partition.singletons((1, 2, 3))
    mid = Partition([(1, 2), (3,)])
    top = Partition([(1, 2, 3)])
    assert partition_leq(fine, mid) and partition_leq(mid, top)
    assert not partition_leq(top, mid)
    assert quotient((1, 2, 3), mid) == (1, 3)
    assert quotient_by_subset((1, 2, 3), (2, 3)) == (1, 2)
    assert Partition.from_json(mid.to_json()) == mid
    with pytest.raises(UsageError):
        Partition([(1, 2), (2, 3)])


def test_fp_contains_covers_configuration_space():
    # every point of E_3 lies in F_P for the partition it induces
    pts = [[Q(1), Q(2)], [Q(1), Q(1)], [Q(0), Q(2)], [Q(0), Q(0)], [Q(-1), Q(0)]]
    for p in pts:
        hits = [P for P in enumerate_partitions((1, 2, 3)) if fp_contains(P, p)]
        assert hits
    assert fp_contains(Partition.singletons((1, 2, 3)), [Q(1), Q(2)])
    assert not fp_contains(Partition.singletons((1, 2, 3)), [Q(1), Q(1)])


def test_diagonal_taylor_example():
    G = parse_element("1*G[2,3](x^-1)", 1, (1, 2, 3))
    J = diagonal_taylor(G, (1, 2), 3)
    expect = ["1*G[1,3](x^-1)", "-1*G[1,3](x^-2)", "2*G[1,3](x^-3)", "-6*G[1,3](x^-4)"]
    for k, txt in enumerate(expect):
        assert J.coefficients[(k,)] == parse_element(txt, 1, (1, 3))


def test_diagonal_taylor_reassembles_polynomials():
    for s in range(10):
        G = random_element(2, (1, 2, 3), seed=s, max_pole=0)
        J = diagonal_taylor(G, (1, 2), 4)
        assert J.reassemble(G) == G


def test_diagonal_taylor_rejects_internal_pole():
    G = parse_element("1*G[1,2](x^-1)", 1, (1, 2, 3))
    with pytest.raises(PreconditionError):
        diagonal_taylor(G, (1, 2), 2)
