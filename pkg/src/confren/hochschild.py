"""Polynomial differential operators and the Hochschild cocycle of R.

An operator is stored normal ordered, ``sum c * x^a d^b`` (derivatives act
first).  It acts on anything exposing ``mul_coordinate`` and ``partial``:
ConfigElem, DeltaExpansion, Ext2 and Dist2D.
"""

from math import comb

from .errors import UsageError
from .poly import _madd
from .scalar import Q, as_coeff

__all__ = ["DiffOp", "hochschild_cochain", "check_hochschild", "generator_ops"]


def _ff(c, k):
    out = 1
    for i in range(k):
        out *= c - i
    return out


class DiffOp:
    """Element of the Weyl algebra in N variables."""

    __slots__ = ("N", "terms")

    def __init__(self, N, terms=None):
        self.N = N
        d = {}
        for (a, b), c in (terms or {}).items():
            a, b = tuple(a), tuple(b)
            if len(a) != N or len(b) != N:
                raise UsageError("multi-index length must be %d" % N)
            _madd(d, (a, b), as_coeff(c))
        self.terms = d

    @classmethod
    def identity(cls, N):
        z = (0,) * N
        return cls(N, {(z, z): 1})

    @classmethod
    def coordinate(cls, N, i):
        return cls(N, {(_unit(N, i), (0,) * N): 1})

    @classmethod
    def partial(cls, N, i):
        return cls(N, {((0,) * N, _unit(N, i)): 1})

    def __eq__(self, other):
        return isinstance(other, DiffOp) and self.N == other.N and self.terms == other.terms

    def __add__(self, other):
        d = dict(self.terms)
        for k, c in other.terms.items():
            _madd(d, k, c)
        out = DiffOp(self.N)
        out.terms = d
        return out

    def __mul__(self, c):
        c = as_coeff(c)
        out = DiffOp(self.N)
        out.terms = {k: v * c for k, v in self.terms.items()} if c != 0 else {}
        return out

    def __sub__(self, other):
        return self + other * -1

    def __matmul__(self, other):
        """Composition self o other, normal ordered by the Leibniz rule."""
        if self.N != other.N:
            raise UsageError("operators in different dimensions")
        N = self.N
        d = {}
        for (a, b), c1 in self.terms.items():
            for (cc, e), c2 in other.terms.items():
                # d^b x^cc = sum_k prod_i C(b_i, k_i) (cc_i)_(k_i) x^(cc-k) d^(b-k)
                for k in _box(b):
                    w = 1
                    for bi, ci, ki in zip(b, cc, k):
                        w *= comb(bi, ki) * _ff(ci, ki)
                    if w == 0:
                        continue
                    xa = tuple(ai + ci - ki for ai, ci, ki in zip(a, cc, k))
                    db = tuple(bi - ki + ei for bi, ki, ei in zip(b, k, e))
                    _madd(d, (xa, db), c1 * c2 * w)
        out = DiffOp(N)
        out.terms = d
        return out

    def apply(self, obj):
        """Apply to an object with mul_coordinate and partial."""
        acc = None
        for (a, b), c in sorted(self.terms.items()):
            t = obj
            for i, k in enumerate(b):
                for _ in range(k):
                    t = t.partial(i)
            for i, k in enumerate(a):
                for _ in range(k):
                    t = t.mul_coordinate(i)
            t = t * c
            acc = t if acc is None else acc + t
        if acc is None:
            return obj * 0
        return acc

    def __repr__(self):
        parts = []
        for (a, b), c in sorted(self.terms.items()):
            parts.append("%s*x^%s*d^%s" % (c, list(a), list(b)))
        return " + ".join(parts) or "0"


def _unit(N, i):
    if not 0 <= i < N:
        raise UsageError("coordinate index out of range")
    return tuple(1 if t == i else 0 for t in range(N))


def _box(b):
    out = [()]
    for bi in b:
        out = [p + (k,) for p in out for k in range(bi + 1)]
    return out


def generator_ops(N):
    """The generators x^xi, d_xi and x^xi d_eta."""
    ops = []
    for i in range(N):
        ops.append(("x%d" % i, DiffOp.coordinate(N, i)))
    for i in range(N):
        ops.append(("d%d" % i, DiffOp.partial(N, i)))
    for i in range(N):
        for j in range(N):
            ops.append(("x%dd%d" % (i, j), DiffOp.coordinate(N, i) @ DiffOp.partial(N, j)))
    return ops


def hochschild_cochain(R, A):
    """c[A] = A o R - R o A as a function of G."""
    return lambda G: A.apply(R(G)) - R(A.apply(G))


def check_hochschild(R, A1, A2, probes):
    """A1 o c[A2] - c[A1 A2] + c[A1] o A2 on probes; first nonzero probe or None."""
    c2 = hochschild_cochain(R, A2)
    c12 = hochschild_cochain(R, A1 @ A2)
    c1 = hochschild_cochain(R, A1)
    for G in probes:
        lhs = A1.apply(c2(G)) + c1(A2.apply(G))
        rhs = c12(G)
        if lhs != rhs:
            return G
    return None
