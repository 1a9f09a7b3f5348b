"""Distributions supported at the origin and the dual graded module.

A ``DeltaExpansion`` is a finite sum ``sum_r c_r delta^(r)`` on R^N.  A
``Functional`` is a linear form on O_S that vanishes on the filtration
level ``F_threshold``; ``functional_to_map`` turns it into the unique
x-commuting map with that leading coefficient.
"""

import json
import threading
from math import factorial

from .config import NEG_INF, layout
from .errors import UsageError, ConsistencyError, PreconditionError
from .poly import _madd, multi_indices
from .scalar import as_coeff, coeff_str, parse_coeff, Q

__all__ = ["DeltaExpansion", "Functional", "FunctionalForm", "functional_to_map",
           "map_to_functional", "point_functional", "table_functional",
           "zero_functional", "check_x_commuting"]


def _rfact(r):
    out = 1
    for k in r:
        out *= factorial(k)
    return out


class DeltaExpansion:
    """``sum_r c_r delta^(r)`` on R^N; immutable, no zero coefficients."""

    __slots__ = ("N", "terms")

    def __init__(self, N, terms=None):
        self.N = N
        d = {}
        for r, c in (terms or {}).items():
            r = tuple(int(k) for k in r)
            if len(r) != N or min(r, default=0) < 0:
                raise UsageError("bad multi-index %r for N=%d" % (r, N))
            _madd(d, r, as_coeff(c))
        self.terms = d

    @classmethod
    def delta(cls, N, r=None, c=1):
        return cls(N, {tuple(r) if r is not None else (0,) * N: c})

    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, int) and other == 0:
            return self.is_zero()
        return isinstance(other, DeltaExpansion) and self.N == other.N and self.terms == other.terms

    def __hash__(self):
        return hash((self.N, frozenset(self.terms.items())))

    def _check(self, other):
        if not isinstance(other, DeltaExpansion) or other.N != self.N:
            raise UsageError("delta expansions over different dimensions")

    def __add__(self, other):
        if isinstance(other, int) and other == 0:
            return self
        self._check(other)
        d = dict(self.terms)
        for r, c in other.terms.items():
            _madd(d, r, c)
        return _trusted(self.N, d)

    __radd__ = __add__

    def __neg__(self):
        return _trusted(self.N, {r: -c for r, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, c):
        c = as_coeff(c)
        if c == 0:
            return _trusted(self.N, {})
        return _trusted(self.N, {r: v * c for r, v in self.terms.items()})

    __rmul__ = __mul__

    def coefficient(self, r):
        return self.terms.get(tuple(r), Q(0))

    def mul_coordinate(self, i):
        """x^i * delta^(r) = -r_i delta^(r - e_i)."""
        d = {}
        for r, c in self.terms.items():
            if r[i]:
                s = list(r)
                s[i] -= 1
                _madd(d, tuple(s), -r[i] * c)
        return _trusted(self.N, d)

    def mul_monomial(self, a):
        out = self
        for i, k in enumerate(a):
            for _ in range(k):
                out = out.mul_coordinate(i)
        return out

    def partial(self, i):
        d = {}
        for r, c in self.terms.items():
            s = list(r)
            s[i] += 1
            _madd(d, tuple(s), c)
        return _trusted(self.N, d)

    def pair(self, derivs):
        """Pairing with a test function given by its derivatives at 0.

        ``derivs(r)`` returns d^r f(0); delta^(r)[f] = (-1)^|r| d^r f(0).
        """
        tot = Q(0)
        for r, c in self.terms.items():
            v = derivs(r)
            tot = tot + (c * v if sum(r) % 2 == 0 else -(c * v))
        return tot

    def scaling_degree(self):
        if not self.terms:
            return NEG_INF
        return self.N + max(sum(r) for r in self.terms)

    def linear_change(self, A):
        """Rewrite as a generalized function of y = A x (A integer, invertible).

        delta(x) = |det A| delta(y) and d/dx_i = sum_j A_ji d/dy_j.
        """
        A = [[int(v) for v in row] for row in A]
        if len(A) != self.N or any(len(row) != self.N for row in A):
            raise UsageError("matrix shape does not match N")
        det = _det(A)
        if det == 0:
            raise UsageError("singular coordinate change")
        # d/dx_i = sum_j A_ji d/dy_j
        out = DeltaExpansion(self.N)
        for r, c in self.terms.items():
            poly = {(0,) * self.N: Q(1)}
            for i, k in enumerate(r):
                for _ in range(k):
                    nxt = {}
                    for s, v in poly.items():
                        for j in range(self.N):
                            a = A[j][i]
                            if a:
                                t = list(s)
                                t[j] += 1
                                _madd(nxt, tuple(t), v * a)
                    poly = nxt
            out = out + DeltaExpansion(self.N, poly) * c
        return out * abs(det)

    def to_json(self):
        return json.dumps({",".join(str(k) for k in r): coeff_str(c)
                           for r, c in sorted(self.terms.items())}, sort_keys=True)

    @classmethod
    def from_json(cls, N, text):
        raw = json.loads(text)
        return cls(N, {tuple(int(k) for k in key.split(",")) if key else (): parse_coeff(v)
                       for key, v in raw.items()})

    def __repr__(self):
        return "DeltaExpansion(%d, %s)" % (self.N, self.to_json())


def _det(A):
    a = [[Q(v) for v in row] for row in A]
    n = len(a)
    det = Q(1)
    for c in range(n):
        p = next((i for i in range(c, n) if a[i][c] != 0), None)
        if p is None:
            return Q(0)
        if p != c:
            a[p], a[c] = a[c], a[p]
            det = -det
        det *= a[c][c]
        for i in range(c + 1, n):
            f = a[i][c] / a[c][c]
            for j in range(c, n):
                a[i][j] -= f * a[c][j]
    return det


def _trusted(N, d):
    out = DeltaExpansion.__new__(DeltaExpansion)
    out.N = N
    out.terms = d
    return out


class Functional:
    """Linear functional on O_S vanishing on ``F_threshold``.

    ``evaluator`` must be linear.  Values are memoized by the canonical
    form of the argument; the memo is guarded by a lock.
    """

    def __init__(self, D, S, threshold, evaluator, name=None):
        self.D = D
        self.S = tuple(sorted(S))
        self.threshold = threshold
        self._eval = evaluator
        self.name = name
        self._memo = {}
        self._lock = threading.Lock()

    @property
    def N(self):
        return self.D * (len(self.S) - 1)

    def __call__(self, G):
        if G.D != self.D or G.S != self.S:
            raise UsageError("functional on (%d,%r) applied to element of (%d,%r)"
                             % (self.D, self.S, G.D, G.S))
        if G.is_zero():
            return Q(0)
        with self._lock:
            hit = self._memo.get(G)
        if hit is not None:
            return hit
        v = self._eval(G)
        with self._lock:
            self._memo[G] = v
        return v

    def evaluate_raw(self, G):
        return self._eval(G)

    def _same(self, other):
        if not isinstance(other, Functional) or (self.D, self.S) != (other.D, other.S):
            raise UsageError("functionals on different spaces")

    def __add__(self, other):
        if isinstance(other, int) and other == 0:
            return self
        self._same(other)
        return Functional(self.D, self.S, min(self.threshold, other.threshold),
                          lambda G, a=self, b=other: a(G) + b(G))

    __radd__ = __add__

    def __neg__(self):
        return self * -1

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, c):
        c = as_coeff(c)
        return Functional(self.D, self.S, self.threshold, lambda G, a=self: a(G) * c)

    __rmul__ = __mul__

    def after_partial(self, i):
        """Phi o d_i (vanishes one level lower)."""
        return Functional(self.D, self.S, self.threshold - 1,
                          lambda G, a=self: a(G.partial(i)))

    def dual_partial(self, i):
        """The dual action d_i Phi = -Phi o d_i."""
        return self.after_partial(i) * -1

    def after_monomial(self, r):
        """Phi o x^r."""
        if not any(r):
            return self
        return Functional(self.D, self.S, self.threshold + sum(r),
                          lambda G, a=self: a(G.mul_monomial(r)))

    def relabeled(self, sigma):
        """(sigma Phi)(G) = Phi(G relabeled by sigma^-1); sigma maps S onto S."""
        inv = {v: k for k, v in sigma.items()}
        return Functional(self.D, self.S, self.threshold,
                          lambda G, a=self: a(G.relabel(inv)))

    def symmetrized(self):
        from itertools import permutations
        perms = [dict(zip(self.S, p)) for p in permutations(self.S)]
        w = Q(1, len(perms))

        def ev(G, a=self):
            return sum((a(G.relabel(p)) for p in perms), Q(0)) * w
        return Functional(self.D, self.S, self.threshold, ev)

    def transported(self, S_new):
        """The same functional read on an order-isomorphic index set."""
        S_new = tuple(sorted(S_new))
        if len(S_new) != len(self.S):
            raise UsageError("index sets of different size")
        back = dict(zip(S_new, self.S))
        return Functional(self.D, S_new, self.threshold,
                          lambda G, a=self: a(G.relabel(back)))

    def check_threshold(self, probes):
        """Return the first probe of dev.d. <= threshold with nonzero value."""
        for G in probes:
            if G.divergence_degree() <= self.threshold and self._eval(G) != 0:
                return G
        return None


def zero_functional(D, S, threshold=0):
    return Functional(D, S, threshold, lambda G: Q(0), name="0")


def point_functional(D, S, point, weights, threshold=None):
    """G -> sum_h w_h * (degree-h part of G)(point).

    Only degrees h < -threshold may carry weight.
    """
    weights = {int(h): as_coeff(c) for h, c in weights.items() if as_coeff(c) != 0}
    if threshold is None:
        threshold = -max(weights, default=-1) - 1
    if any(h >= -threshold for h in weights):
        raise UsageError("weights on degrees the threshold forbids")
    point = tuple(Q(x) for x in point)

    def ev(G):
        tot = Q(0)
        for h, part in G.homogeneous_parts():
            w = weights.get(h)
            if w is not None:
                tot = tot + w * part.evaluate(point)
        return tot
    return Functional(D, S, threshold, ev)


def _basis_key(G):
    """Canonical monomial keys of an element of O_2 (single pair)."""
    out = {}
    for c, fmap in G.terms():
        if not fmap:
            key = ((0,) * G.D, 0)
        else:
            ((pair, mono),) = fmap.items()
            key = mono
        out[key] = out.get(key, 0) + c
    return out


def table_functional(D, S, table, threshold=None):
    """Functional on O_2 from a coefficient table over canonical monomials.

    ``table`` maps ``(a, m)`` (as in :class:`confren.config.PropagatorElem`)
    to a scalar.  For D = 1 the Laurent exponent ``e`` may be used as key.
    """
    S = tuple(sorted(S))
    if len(S) != 2:
        raise UsageError("table functionals live on two-point algebras")
    tab = {}
    for k, c in table.items():
        if D == 1 and isinstance(k, int):
            k = ((k,), 0) if k >= 0 else ((0,), -k)
        tab[(tuple(k[0]), int(k[1]))] = as_coeff(c)

    def deg(key):
        a, m = key
        return (a[0] - m) if D == 1 else sum(a) - 2 * m
    if threshold is None:
        threshold = -max((deg(k) for k, c in tab.items() if c != 0), default=-1) - 1
    if any(deg(k) >= -threshold for k, c in tab.items() if c != 0):
        raise UsageError("table has entries on degrees the threshold forbids")

    def ev(G):
        tot = Q(0)
        for key, c in _basis_key(G).items():
            v = tab.get(key)
            if v is not None:
                tot = tot + v * c
        return tot
    return Functional(D, S, threshold, ev)


def functional_to_map(Phi, G):
    """sum_r ((-1)^|r| / r!) Phi(x^r G) delta^(r)."""
    N = G.N
    dd = G.divergence_degree()
    if dd == NEG_INF or dd <= Phi.threshold:
        return DeltaExpansion(N)
    top = int(dd - Phi.threshold)
    terms = {}
    for k in range(top):
        for r in multi_indices(N, k):
            v = Phi(G.mul_monomial(r))
            if v != 0:
                terms[r] = Q(1, _rfact(r)) * v * (-1 if k % 2 else 1)
    # the first order past the threshold must vanish
    for r in multi_indices(N, top):
        if Phi(G.mul_monomial(r)) != 0:
            raise ConsistencyError("functional does not vanish below its threshold at x^%r G" % (r,))
    return DeltaExpansion(N, terms)


def check_x_commuting(phi, probes, D, S):
    """Return a probe G with phi(x^i G) != x^i phi(G), or None."""
    lay = layout(D, tuple(sorted(S)))
    for G in probes:
        base = phi(G)
        for i in range(lay.N):
            if phi(G.mul_coordinate(i)) != base.mul_coordinate(i):
                return G, i
    return None


def map_to_functional(phi, D, S, threshold, probes=None):
    """Leading (r = 0) coefficient functional of an x-commuting map."""
    if probes is not None:
        bad = check_x_commuting(phi, probes, D, S)
        if bad is not None:
            raise PreconditionError("map does not commute with coordinate %d on a probe" % bad[1])
    N = layout(D, tuple(sorted(S))).N
    zero = (0,) * N
    return Functional(D, S, threshold, lambda G: phi(G).coefficient(zero))


class FunctionalForm:
    """Antisymmetric m-form of functionals, stored on increasing index tuples."""

    def __init__(self, D, S, m, components=None):
        self.D = D
        self.S = tuple(sorted(S))
        self.m = m
        self.components = {}
        for I, F in (components or {}).items():
            I = tuple(I)
            if len(I) != m:
                raise UsageError("component index of wrong length")
            sign, J = _sort_sign(I)
            if sign == 0:
                continue
            self.components[J] = self.components[J] + F * sign if J in self.components else F * sign

    @property
    def N(self):
        return self.D * (len(self.S) - 1)

    def component(self, I):
        sign, J = _sort_sign(tuple(I))
        if sign == 0 or J not in self.components:
            return None
        F = self.components[J]
        return F if sign > 0 else F * -1

    def evaluate(self, G):
        """Map from increasing index tuples to values on G."""
        return {I: F(G) for I, F in sorted(self.components.items())}

    def value(self, I, G):
        F = self.component(I)
        return Q(0) if F is None else F(G)

    def __add__(self, other):
        if (self.D, self.S, self.m) != (other.D, other.S, other.m):
            raise UsageError("forms of different type")
        comps = dict(self.components)
        for I, F in other.components.items():
            comps[I] = comps[I] + F if I in comps else F
        return FunctionalForm(self.D, self.S, self.m, comps)

    def __mul__(self, c):
        return FunctionalForm(self.D, self.S, self.m, {I: F * c for I, F in self.components.items()})

    __rmul__ = __mul__

    def __sub__(self, other):
        return self + other * -1

    def threshold(self):
        return min((F.threshold for F in self.components.values()), default=0)

    def equal_on(self, other, probes):
        """First (probe, index) where the forms differ, or None."""
        idx = sorted(set(self.components) | set(other.components))
        for G in probes:
            for I in idx:
                if self.value(I, G) != other.value(I, G):
                    return G, I
        return None

    def vanishes_on(self, probes):
        for G in probes:
            for I, F in sorted(self.components.items()):
                if F(G) != 0:
                    return G, I
        return None


def _sort_sign(I):
    if len(set(I)) != len(I):
        return 0, None
    arr = list(I)
    sign = 1
    for i in range(len(arr)):
        for j in range(len(arr) - 1 - i):
            if arr[j] > arr[j + 1]:
                arr[j], arr[j + 1] = arr[j + 1], arr[j]
                sign = -sign
    return sign, tuple(arr)
