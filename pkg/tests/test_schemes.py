import pytest

from confren import parse_element
from confren.distributions import DeltaExpansion
from confren.errors import UnsupportedDomainError
from confren.probes import probe_set, random_element
from confren.scalar import Q, PI, LAMBDA
from confren.schemes import (CANONICAL, Scheme, sphere_moment, canonical_anomaly, anomaly_commutator,
                             extend_homogeneous, gamma_functional_2, q_map_2, q_functional_2)

INV_Q = parse_element("1*G[1,2](1/q)", 2, (1, 2))
SCALE = Scheme(scale_exponent=1, name="scale")
SHARP = Scheme(radius=Q(1, 2), name="sharp")


def test_sphere_moments():
    assert sphere_moment(parse_element("1*G[1,2](1)", 2, (1, 2))) == 2 * PI
    assert sphere_moment(parse_element("1*G[1,2](x1^2)", 2, (1, 2))) == PI
    assert sphere_moment(parse_element("1*G[1,2](x1*x2)", 2, (1, 2))) == 0
    assert sphere_moment(parse_element("1*G[1,2](x^-1)", 1, (1, 2))) == 0
    assert sphere_moment(parse_element("1*G[1,2](x^-2)", 1, (1, 2))) == 2


@pytest.mark.parametrize("mu", [0, 1])
def test_anomaly_of_inverse_square(mu):
    unit = tuple(1 if i == mu else 0 for i in range(2))
    assert canonical_anomaly(INV_Q, mu) == DeltaExpansion(2, {unit: -PI})
    for sch in (CANONICAL, SCALE):
        assert anomaly_commutator(INV_Q, mu, sch) == DeltaExpansion(2, {unit: -PI})


@pytest.mark.parametrize("mu", [0, 1])
def test_gamma2_on_vector_propagator(mu):
    F = gamma_functional_2(2, mu)
    for nu, txt in enumerate(["1*G[1,2](x1/q)", "1*G[1,2](x2/q)"]):
        assert F(parse_element(txt, 2, (1, 2))) == (PI if mu == nu else 0)


def test_gamma2_threshold():
    for D in (1, 2):
        for xi in range(D):
            F = gamma_functional_2(D, xi)
            assert F.check_threshold(probe_set(D, (1, 2), n_random=20)) is None


def test_canonical_anomaly_vanishes_in_one_dimension():
    for k in range(1, 7):
        u = parse_element("1*G[1,2](x^-%d)" % k, 1, (1, 2))
        assert canonical_anomaly(u, 0).is_zero()


def test_scale_change_of_inverse_square():
    assert q_map_2(INV_Q, CANONICAL, SCALE) == DeltaExpansion(2, {(0, 0): 2 * PI * LAMBDA})
    assert q_functional_2(2, CANONICAL, SCALE)(INV_Q) == 2 * PI * LAMBDA


def test_extension_is_x_commuting_and_restricts():
    for sch in (CANONICAL, SCALE, SHARP):
        for G in probe_set(2, (1, 2), max_degree=3, max_pole=2, n_random=10):
            E = extend_homogeneous(G, sch)
            assert E.restriction() == G
            for i in range(2):
                assert extend_homogeneous(G.mul_coordinate(i), sch) == E.mul_coordinate(i)


@pytest.mark.parametrize("D", [1, 2])
def test_scheme_change_formula_two_points(D):
    """P' G = P G + Q_2 G and Gamma' - Gamma = -Q_2 o d on leading terms."""
    zero = (0,) * D
    for new in (SCALE, SHARP):
        for G in probe_set(D, (1, 2), max_degree=4, max_pole=3, n_random=20):
            lhs = extend_homogeneous(G, new)
            rhs = extend_homogeneous(G, CANONICAL)
            assert lhs.delta == rhs.delta + q_map_2(G, CANONICAL, new)
            for xi in range(D):
                d = gamma_functional_2(D, xi, new)(G) - gamma_functional_2(D, xi)(G)
                assert d == -q_map_2(G.partial(xi), CANONICAL, new).coefficient(zero)


def test_sharp_scheme_corrects_one_dimension():
    u = parse_element("1*G[1,2](x^-2)", 1, (1, 2))
    assert not q_map_2(u, CANONICAL, SHARP).is_zero()


def test_unsupported_dimension():
    G = random_element(3, (1, 2), seed=1)
    with pytest.raises(UnsupportedDomainError):
        extend_homogeneous(G)
    with pytest.raises(UnsupportedDomainError):
        extend_homogeneous(random_element(1, (1, 2, 3), seed=1))
