"""Set partitions of finite index sets, quotients, charts and diagonal jets."""

import json
from itertools import combinations

from .config import ConfigElem, layout
from .errors import UsageError, PreconditionError
from .poly import multi_indices
from .scalar import Q

__all__ = ["Partition", "enumerate_partitions", "partition_leq", "quotient",
           "quotient_by_subset", "fp_contains", "DiagonalJet", "diagonal_taylor",
           "internal_coordinates", "proper_subsets"]


class Partition:
    """A set partition; blocks are sorted tuples ordered by their minima."""

    __slots__ = ("blocks", "S")

    def __init__(self, blocks):
        bl = [tuple(sorted(set(int(x) for x in b))) for b in blocks]
        if any(not b for b in bl):
            raise UsageError("partition blocks must be nonempty")
        seen = set()
        for b in bl:
            for x in b:
                if x in seen:
                    raise UsageError("partition blocks must be disjoint")
                seen.add(x)
        self.blocks = tuple(sorted(bl))
        self.S = tuple(sorted(seen))

    def is_proper(self):
        return len(self.blocks) >= 2

    def block_of(self, j):
        for b in self.blocks:
            if j in b:
                return b
        raise UsageError("%r not in S" % (j,))

    def related(self, j, k):
        return k in self.block_of(j)

    def __eq__(self, other):
        return isinstance(other, Partition) and self.blocks == other.blocks

    def __hash__(self):
        return hash(self.blocks)

    def __repr__(self):
        return "Partition(%s)" % self.to_json()

    def to_json(self):
        return json.dumps([list(b) for b in self.blocks], separators=(",", ":"))

    @classmethod
    def from_json(cls, text):
        return cls(json.loads(text))

    @classmethod
    def singletons(cls, S):
        return cls([(s,) for s in S])


def enumerate_partitions(S, proper_only=False):
    """All partitions of S ordered deterministically."""
    S = tuple(sorted(set(S)))
    if not S:
        raise UsageError("S must be nonempty")

    def rec(items):
        if not items:
            yield []
            return
        first, rest = items[0], items[1:]
        for part in rec(rest):
            yield [(first,)] + part
            for i in range(len(part)):
                yield part[:i] + [(first,) + part[i]] + part[i + 1:]

    out = sorted({Partition(p) for p in rec(list(S))}, key=lambda P: (len(P.blocks), P.blocks))
    if proper_only:
        out = [P for P in out if P.is_proper()]
    return out


def partition_leq(P1, P2):
    """True iff every block of P1 lies inside a block of P2."""
    if P1.S != P2.S:
        raise UsageError("partitions of different sets")
    return all(any(set(b) <= set(c) for c in P2.blocks) for b in P1.blocks)


def quotient(S, P):
    """S/P: the set of block minima."""
    if tuple(sorted(S)) != P.S:
        raise UsageError("partition does not cover S")
    return tuple(sorted(min(b) for b in P.blocks))


def quotient_by_subset(S, Sp):
    """S/S' = (S minus S') together with min S'."""
    S, Sp = set(S), set(Sp)
    if not Sp or not Sp <= S:
        raise UsageError("S' must be a nonempty subset of S")
    return tuple(sorted((S - Sp) | {min(Sp)}))


def proper_subsets(S, size):
    return [tuple(c) for c in combinations(sorted(S), size)]


def fp_contains(P, point, D=1):
    """Membership of a point of E_S (difference coordinates) in F_P."""
    lay = layout(D, P.S)
    point = [Q(x) for x in point]
    if len(point) != lay.N:
        raise UsageError("point must have %d coordinates" % lay.N)

    def pos(j):
        if j == lay.top:
            return (Q(0),) * D
        i = lay.pos[j] * D
        return tuple(point[i:i + D])

    for j, k in lay.pairs:
        if not P.related(j, k) and pos(j) == pos(k):
            return False
    return True


def internal_coordinates(D, Sp):
    """List of (j, alpha) labelling x'_j = x_j - x_{min S'} for j != min S'."""
    Sp = tuple(sorted(Sp))
    return [(j, a) for j in Sp[1:] for a in range(D)]


class DiagonalJet:
    """Taylor data of a function along the partial diagonal of S'."""

    def __init__(self, S, Sp, order, coefficients):
        self.S = tuple(sorted(S))
        self.Sp = tuple(sorted(Sp))
        self.quotient = quotient_by_subset(S, Sp)
        self.order = order
        self.coefficients = coefficients

    @property
    def base(self):
        Np = len(next(iter(self.coefficients))) if self.coefficients else 0
        return self.coefficients.get((0,) * Np)

    def reassemble(self, G_like):
        """Sum_r (1/r!) jet_r * x'^r as an element of O_S."""
        D = G_like.D
        lay = G_like.lay
        out = ConfigElem.zero(D, lay.S)
        coords = internal_coordinates(D, self.Sp)
        mn = self.Sp[0]
        for r, c in self.coefficients.items():
            if c.is_zero():
                continue
            term = c.lift(lay.S)
            fact = 1
            for (j, a), k in zip(coords, r):
                xj = ConfigElem.from_poly(lay, lay.point_component(j, a) - lay.point_component(mn, a))
                for t in range(k):
                    term = term * xj
                    fact *= t + 1
            out = out + term * Q(1, fact)
        return out


def diagonal_taylor(G, Sp, order):
    """Jets of G along x_j = x_{min S'} (j in S') up to the given order."""
    S = G.S
    Sp = tuple(sorted(Sp))
    if not set(Sp) <= set(S) or len(Sp) < 2:
        raise UsageError("S' must be a subset of S with at least two points")
    for (j, k), m in zip(G.lay.pairs, G.poles):
        if m and j in Sp and k in Sp:
            raise PreconditionError("G has a pole along the S'-diagonal (pair %d,%d)" % (j, k))
    D = G.D
    coords = internal_coordinates(D, Sp)
    Q = quotient_by_subset(S, Sp)
    images = {j: (Sp[0] if j in Sp else j) for j in S}
    coeffs = {}
    cache = {(0,) * len(coords): G}
    for total in range(order + 1):
        for r in multi_indices(len(coords), total):
            if r not in cache:
                # differentiate a lower entry once
                i = next(t for t, v in enumerate(r) if v)
                prev = list(r)
                prev[i] -= 1
                j, a = coords[i]
                cache[r] = cache[tuple(prev)].partial_point(j, a)
            coeffs[r] = cache[r].pullback(Q, images)
    return DiagonalJet(S, Sp, order, coeffs)
