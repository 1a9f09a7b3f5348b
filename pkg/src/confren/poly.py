"""Sparse multivariate polynomials with coefficients in Q[pi, L].

Monomials are packed into single integers: the total degree sits in the
top field and exponents follow with variable 0 most significant, so
integer order is graded-lex order and multiplying monomials is integer
addition.
"""

import heapq
from itertools import product as _iproduct

from .scalar import as_coeff, Q, RATIONAL_TYPES

__all__ = ["Poly"]

_BITS = 20
_MASK = (1 << _BITS) - 1


def _pack(e, n):
    k = 0
    d = 0
    for x in e:
        k = (k << _BITS) | x
        d += x
    return (d << (_BITS * n)) | k


def _unpack(k, n):
    out = [0] * n
    for i in range(n - 1, -1, -1):
        out[i] = k & _MASK
        k >>= _BITS
    return tuple(out)


def _deg(k, n):
    return k >> (_BITS * n)


def _madd(d, k, v):
    s = d.get(k)
    if s is None:
        if v != 0:
            d[k] = v
    else:
        s = s + v
        if s == 0:
            del d[k]
        else:
            d[k] = s


def _P(n, t):
    p = Poly.__new__(Poly)
    p.nvars = n
    p._t = t
    p._tt = None
    p._h = None
    return p


class Poly:
    """Polynomial in ``nvars`` variables.

    Built from ``{exponent tuple: coeff}``; ``terms`` returns the same kind
    of map.  Zero coefficients are never stored; instances are immutable.
    """

    __slots__ = ("nvars", "_t", "_tt", "_h")

    def __init__(self, nvars, terms=None, _trusted=False):
        self.nvars = nvars
        self._h = None
        self._tt = None
        d = {}
        if terms:
            for e, c in terms.items():
                if not _trusted:
                    e = tuple(int(x) for x in e)
                    if len(e) != nvars or min(e, default=0) < 0:
                        raise ValueError("bad exponent %r for %d variables" % (e, nvars))
                    c = as_coeff(c)
                _madd(d, _pack(e, nvars), c)
        self._t = d

    @property
    def terms(self):
        if self._tt is None:
            n = self.nvars
            self._tt = {_unpack(k, n): c for k, c in self._t.items()}
        return self._tt

    @classmethod
    def const(cls, nvars, c):
        c = as_coeff(c)
        return _P(nvars, {0: c} if c != 0 else {})

    @classmethod
    def var(cls, nvars, i, power=1):
        e = [0] * nvars
        e[i] = power
        return _P(nvars, {_pack(e, nvars): Q(1)})

    @classmethod
    def monomial(cls, exps, c=1):
        c = as_coeff(c)
        n = len(exps)
        return _P(n, {_pack(exps, n): c} if c != 0 else {})

    def is_zero(self):
        return not self._t

    def __bool__(self):
        return bool(self._t)

    def __len__(self):
        return len(self._t)

    def _coerce(self, other):
        if isinstance(other, Poly):
            if other.nvars != self.nvars:
                raise ValueError("polynomials over different variable sets")
            return other
        return Poly.const(self.nvars, other)

    def __add__(self, other):
        other = self._coerce(other)
        if not other._t:
            return self
        d = dict(self._t)
        for k, v in other._t.items():
            _madd(d, k, v)
        return _P(self.nvars, d)

    __radd__ = __add__

    def __neg__(self):
        return _P(self.nvars, {k: -v for k, v in self._t.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        d = dict(self._t)
        for k, v in other._t.items():
            _madd(d, k, -v)
        return _P(self.nvars, d)

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, Poly):
            c = as_coeff(other)
            if c == 0:
                return _P(self.nvars, {})
            return _P(self.nvars, {k: v * c for k, v in self._t.items()})
        if other.nvars != self.nvars:
            raise ValueError("polynomials over different variable sets")
        a, b = self._t, other._t
        if not a or not b:
            return _P(self.nvars, {})
        if len(a) < len(b):
            a, b = b, a
        bl = list(b.items())
        d = {}
        get = d.get
        for k1, c1 in a.items():
            for k2, c2 in bl:
                k = k1 + k2
                d[k] = get(k, 0) + c1 * c2
        return _P(self.nvars, {k: v for k, v in d.items() if v != 0})

    __rmul__ = __mul__

    def __pow__(self, n):
        out = Poly.const(self.nvars, 1)
        base = self
        while n:
            if n & 1:
                out = out * base
            n >>= 1
            if n:
                base = base * base
        return out

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.nvars == other.nvars and self._t == other._t
        return self == self._coerce(other)

    def __hash__(self):
        if self._h is None:
            self._h = hash((self.nvars, frozenset(self._t.items())))
        return self._h

    def __repr__(self):
        return "Poly(%d, %r)" % (self.nvars, self.terms)

    def degree(self):
        """Maximal total degree; -1 for the zero polynomial."""
        if not self._t:
            return -1
        return _deg(max(self._t), self.nvars)

    def min_degree(self):
        if not self._t:
            return -1
        return _deg(min(self._t), self.nvars)

    def homogeneous_parts(self):
        """Map total degree -> homogeneous component."""
        n = self.nvars
        out = {}
        for k, c in self._t.items():
            out.setdefault(_deg(k, n), {})[k] = c
        return {h: _P(n, v) for h, v in out.items()}

    def diff(self, i):
        n = self.nvars
        sh = _BITS * (n - 1 - i)
        step = (1 << sh) + (1 << (_BITS * n))
        d = {}
        for k, c in self._t.items():
            e = (k >> sh) & _MASK
            if e:
                d[k - step] = c * e
        return _P(n, d)

    def evaluate(self, point):
        """Exact value at a point given as a sequence of rationals."""
        total = Q(0)
        for e, c in self.terms.items():
            t = c
            for x, k in zip(point, e):
                if k:
                    t = t * x ** k
            total = total + t
        return total

    def substitute(self, images, nvars_out):
        """Replace variable ``i`` by the polynomial ``images[i]``."""
        acc = {}
        cache = {}
        for e, c in self.terms.items():
            t = Poly.const(nvars_out, c)
            for i, k in enumerate(e):
                if k:
                    key = (i, k)
                    if key not in cache:
                        cache[key] = images[i] ** k
                    t = t * cache[key]
            for kk, v in t._t.items():
                _madd(acc, kk, v)
        return _P(nvars_out, acc)

    def leading(self):
        k = max(self._t)
        return _unpack(k, self.nvars), self._t[k]

    def divide_exact(self, q):
        """Return ``self / q`` if ``q`` divides ``self`` exactly, else ``None``.

        Leading-term division in graded-lex order; exact divisibility holds
        iff the remainder reaches zero without getting stuck.
        """
        if q.is_zero():
            raise ZeroDivisionError("division by zero polynomial")
        n = self.nvars
        qk = max(q._t)
        qc = q._t[qk]
        qe = _unpack(qk, n)
        qinv = 1 / qc if isinstance(qc, RATIONAL_TYPES) else None
        qterms = list(q._t.items())
        rem = dict(self._t)
        heap = [-k for k in rem]
        heapq.heapify(heap)
        quo = {}
        while rem:
            k = -heapq.heappop(heap)
            c = rem.get(k)
            if c is None:
                continue
            m = k - qk
            if m < 0:
                return None
            kk = k
            for i in range(n - 1, -1, -1):
                if (kk & _MASK) < qe[i]:
                    return None
                kk >>= _BITS
            f = c * qinv if qinv is not None else c / qc
            quo[m] = f
            for k2, c2 in qterms:
                t = m + k2
                old = rem.get(t)
                if old is None:
                    rem[t] = -(f * c2)
                    heapq.heappush(heap, -t)
                else:
                    v = old - f * c2
                    if v == 0:
                        del rem[t]
                    else:
                        rem[t] = v
        return _P(n, quo)

    def coefficient_list(self):
        return sorted(self.terms.items())

    def scalar_multiple_of(self, other):
        """Return c with self == c*other (rational c) or None."""
        if other.is_zero():
            return None
        if self.is_zero():
            return Q(0)
        if set(self._t) != set(other._t):
            return None
        k = next(iter(other._t))
        c = self._t[k] / other._t[k]
        return c if all(self._t[j] == c * other._t[j] for j in other._t) else None


def all_monomials(nvars, degree):
    """Exponent tuples of the given total degree in lex order."""
    if degree < 0:
        return []
    if nvars == 0:
        return [()] if degree == 0 else []
    out = []
    for first in range(degree, -1, -1):
        for rest in all_monomials(nvars - 1, degree - first):
            out.append((first,) + rest)
    return out


def monomials_upto(nvars, degree):
    out = []
    for d in range(degree + 1):
        out.extend(all_monomials(nvars, d))
    return out


def multi_indices(nvars, total):
    """All r in N_0^nvars with |r| == total."""
    return all_monomials(nvars, total)


def box(nvars, bound):
    return list(_iproduct(range(bound + 1), repeat=nvars))
