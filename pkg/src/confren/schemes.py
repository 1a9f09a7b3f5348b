"""Two-point extension schemes, anomalies and their leading functionals.

The canonical extension ``P`` of a homogeneous u of degree h on R^N minus 0
(critical order k = -h - N) subtracts the order-k Taylor jet of the test
function inside the unit ball and continues the lower orders analytically.
It commutes exactly with coordinate multiplication.  A ``Scheme`` adds a
finite delta correction to ``P``:

* scale exponent c: the critical jet is cut at radius exp(-c L), adding
  ``c L sum_{|r|=k} ((-1)^|r| / r!) M(x^r u) delta^(r)``;
* radius rho: the lower orders are cut sharply at radius rho, adding
  ``-sum_{|r|<k} ((-1)^|r| / r!) M(x^r u) rho^e / e delta^(r)``,
  ``e = h + |r| + N``;
* a correction table: a functional on O_2 turned into its x-commuting map.

``M`` is the unit-sphere moment.  The commutator of the canonical map with
d/dx^xi is ``sum_{|r|=k+1} ((-1)^|r| / r!) M(x^xi x^r u) delta^(r)``.
"""

from dataclasses import dataclass, field
from math import factorial

from .config import ConfigElem, layout
from .distributions import DeltaExpansion, Functional, FunctionalForm, functional_to_map, _rfact
from .errors import UsageError, UnsupportedDomainError, PreconditionError
from .poly import multi_indices
from .scalar import Q, PI, LAMBDA, as_coeff, coeff_str

__all__ = ["sphere_moment", "Scheme", "CANONICAL", "Ext2", "extend_homogeneous",
           "canonical_anomaly", "scheme_correction", "anomaly_commutator",
           "gamma_functional_2", "gamma_form_2", "q_functional_2", "q_map_2"]


def _check_two_point(G):
    if len(G.S) != 2:
        raise UnsupportedDomainError("two-point engine applied to %d points" % len(G.S))
    if G.D not in (1, 2):
        raise UnsupportedDomainError("analytic engine supports D = 1, 2 only (got D=%d)" % G.D)


def _dfact(n):
    out = 1
    while n > 1:
        out *= n
        n -= 2
    return out


def _circle_moment(a, b):
    """Integral over the unit circle of cos^a sin^b, as a multiple of pi."""
    if a % 2 or b % 2:
        return Q(0)
    return Q(2 * _dfact(a - 1) * _dfact(b - 1), _dfact(a + b))


def sphere_moment(u):
    """Integral of u over the unit sphere of E_2 (two points, D = 1 or 2)."""
    _check_two_point(u)
    if u.is_zero():
        return Q(0)
    (m,) = u.poles
    if u.D == 1:
        # |x| = 1 means x = +1 or -1, and the pole factor is x itself
        return u.num.evaluate([Q(1)]) + u.num.evaluate([Q(-1)]) * (-1) ** m
    tot = Q(0)
    for (a, b), c in u.num.terms.items():
        tot += c * _circle_moment(a, b)
    return tot * PI if tot != 0 else Q(0)


def _parts(u):
    N = u.N
    for h, part in u.homogeneous_parts():
        yield h, -h - N, part


@dataclass(frozen=True)
class Scheme:
    """A two-point extension scheme relative to the canonical one.

    Parameters
    ----------
    scale_exponent : rational
        c in the critical cutoff radius exp(-c L); 0 means radius 1.
    radius : rational or None
        Sharp cutoff radius for the sub-critical Taylor orders; None keeps
        the analytic continuation.
    table : Functional or None
        Extra correction given by its leading functional (threshold N - 1).
    name : str
    """

    scale_exponent: object = 0
    radius: object = None
    table: object = None
    name: str = field(default="canonical")

    def __post_init__(self):
        object.__setattr__(self, "scale_exponent", Q(self.scale_exponent))
        if self.radius is not None:
            r = Q(self.radius)
            if r <= 0:
                raise UsageError("radius must be positive")
            object.__setattr__(self, "radius", r)

    @property
    def is_canonical(self):
        return self.scale_exponent == 0 and self.radius is None and self.table is None

    def describe(self):
        out = {"name": self.name, "scale_exponent": coeff_str(self.scale_exponent)}
        out["radius"] = None if self.radius is None else coeff_str(self.radius)
        out["table"] = self.table is not None
        return out

    def validate(self, probes):
        """Check that the table respects the threshold and x-commutation."""
        if self.table is None:
            return None
        bad = self.table.check_threshold(probes)
        if bad is not None:
            raise PreconditionError("correction table is nonzero below its threshold on %s" % bad)
        for G in probes:
            base = functional_to_map(self.table, G)
            for i in range(G.N):
                if functional_to_map(self.table, G.mul_coordinate(i)) != base.mul_coordinate(i):
                    raise PreconditionError("correction table is not x-commuting on %s" % G)
        return None


CANONICAL = Scheme()


def canonical_anomaly(u, xi):
    """[d/dx^xi, P](u) for the canonical map."""
    _check_two_point(u)
    N = u.N
    if not 0 <= xi < N:
        raise UsageError("coordinate index out of range")
    terms = {}
    for h, k, part in _parts(u):
        if k < -1:
            continue
        base = part.mul_coordinate(xi)
        for r in multi_indices(N, k + 1):
            m = sphere_moment(base.mul_monomial(r))
            if m != 0:
                c = m * Q((-1) ** (k + 1), _rfact(r))
                terms[r] = terms[r] + c if r in terms else c
    return DeltaExpansion(N, terms)


def scheme_correction(u, scheme):
    """Delta correction of ``scheme`` relative to the canonical extension."""
    _check_two_point(u)
    N = u.N
    out = DeltaExpansion(N)
    if scheme.is_canonical or u.is_zero():
        return out
    c = scheme.scale_exponent
    rho = scheme.radius
    terms = {}

    def add(r, v):
        if v != 0:
            terms[r] = terms[r] + v if r in terms else v
    for h, k, part in _parts(u):
        if k >= 0 and c != 0:
            for r in multi_indices(N, k):
                m = sphere_moment(part.mul_monomial(r))
                add(r, m * LAMBDA * (c * Q((-1) ** k, _rfact(r))))
        if rho is not None and k >= 1:
            for t in range(k):
                e = h + t + N
                w = Q(1) / (rho ** (-e) * e)
                for r in multi_indices(N, t):
                    m = sphere_moment(part.mul_monomial(r))
                    add(r, m * (-w * Q((-1) ** t, _rfact(r))))
    out = DeltaExpansion(N, terms)
    if scheme.table is not None:
        out = out + functional_to_map(scheme.table, u)
    return out


class Ext2:
    """Extended two-point distribution ``P_canonical(u) + delta``."""

    __slots__ = ("u", "delta")

    def __init__(self, u, delta=None):
        _check_two_point(u)
        self.u = u
        self.delta = delta if delta is not None else DeltaExpansion(u.N)

    @property
    def N(self):
        return self.u.N

    def __eq__(self, other):
        return isinstance(other, Ext2) and self.u == other.u and self.delta == other.delta

    def __add__(self, other):
        return Ext2(self.u + other.u, self.delta + other.delta)

    def __sub__(self, other):
        return Ext2(self.u - other.u, self.delta - other.delta)

    def __mul__(self, c):
        return Ext2(self.u * as_coeff(c), self.delta * c)

    def mul_coordinate(self, i):
        return Ext2(self.u.mul_coordinate(i), self.delta.mul_coordinate(i))

    def partial(self, i):
        return Ext2(self.u.partial(i), self.delta.partial(i) + canonical_anomaly(self.u, i))

    def restriction(self):
        """The function the distribution restricts to away from the origin (p1)."""
        return self.u

    def to_json(self):
        return {"function": str(self.u), "delta": self.delta.to_json()}

    def __repr__(self):
        return "Ext2(%s + %s)" % (self.u, self.delta.to_json())


def extend_homogeneous(u, scheme=CANONICAL):
    """Extension of u in the given scheme (D = 1 or 2, two points)."""
    _check_two_point(u)
    return Ext2(u, scheme_correction(u, scheme))


def anomaly_commutator(u, xi, scheme=CANONICAL):
    """[d/dx^xi, P_scheme](u) as a DeltaExpansion."""
    lhs = extend_homogeneous(u, scheme).partial(xi)
    rhs = extend_homogeneous(u.partial(xi), scheme)
    if lhs.u != rhs.u:  # pragma: no cover - guaranteed by construction
        raise UsageError("restrictions differ")
    return lhs.delta - rhs.delta


def gamma_functional_2(D, xi, scheme=CANONICAL, S=(1, 2)):
    """Leading functional Gamma_{2;xi} of the scheme's cocycle."""
    if D not in (1, 2):
        raise UnsupportedDomainError("analytic engine supports D = 1, 2 only")
    N = D
    zero = (0,) * N
    return Functional(D, S, N - 2, lambda G: anomaly_commutator(G, xi, scheme).coefficient(zero),
                      name="Gamma2[%d]" % xi)


def gamma_form_2(D, scheme=CANONICAL, S=(1, 2)):
    """Gamma_2 as a 1-form of functionals."""
    return FunctionalForm(D, S, 1, {(xi,): gamma_functional_2(D, xi, scheme, S) for xi in range(D)})


def q_map_2(G, scheme, scheme2):
    """Q_2 G = (P' - P) G for the change scheme -> scheme2."""
    return scheme_correction(G, scheme2) - scheme_correction(G, scheme)


def q_functional_2(D, scheme, scheme2, S=(1, 2)):
    """Leading functional of Q_2 for the change scheme -> scheme2."""
    if D not in (1, 2):
        raise UnsupportedDomainError("analytic engine supports D = 1, 2 only")
    zero = (0,) * D
    return Functional(D, S, D - 1, lambda G: q_map_2(G, scheme, scheme2).coefficient(zero),
                      name="Q2")
