"""Configuration-space function algebras O_S.

An element of O_S is stored as a reduced fraction ``num / prod_{j<k} b_jk^M_jk``
where ``b_jk`` is the quadric ``(x_j - x_k)^2`` for D >= 2 and the linear form
``x_j - x_k`` for D = 1 (so pole orders for D = 1 count linear factors).
Coordinates on E_S are the differences ``X_j = x_j - x_{max S}``,
``j != max S``, each with D components; variable ``pos(j)*D + alpha``.
Two-point factors (the propagator algebra O) are ``PropagatorElem``.
"""

from functools import lru_cache

from .poly import Poly, _madd
from .scalar import as_coeff, coeff_str, Q, RATIONAL_TYPES
from .errors import UsageError, PreconditionError

__all__ = ["Layout", "layout", "ConfigElem", "PropagatorElem", "NEG_INF"]

NEG_INF = float("-inf")


class Layout:
    """Coordinate bookkeeping for E_S in dimension D."""

    def __init__(self, D, S):
        S = tuple(sorted(set(int(s) for s in S)))
        if D < 1:
            raise UsageError("dimension D must be >= 1")
        if len(S) < 1:
            raise UsageError("index set S must be nonempty")
        self.D = D
        self.S = S
        self.n = len(S)
        self.top = S[-1]
        self.free = S[:-1]
        self.N = D * (self.n - 1)
        self.pos = {j: i for i, j in enumerate(self.free)}
        self.pairs = [(j, k) for a, j in enumerate(S) for k in S[a + 1:]]
        self.pair_index = {p: i for i, p in enumerate(self.pairs)}
        self.bases = [self.pair_base(j, k) for (j, k) in self.pairs]
        self.base_degree = 1 if D == 1 else 2
        self.base_diffs = [[b.diff(i) for b in self.bases] for i in range(self.N)]
        self.pole_cache = {}

    def var(self, j, alpha):
        """Variable index of component alpha of X_j (None for the top point)."""
        if j == self.top:
            return None
        return self.pos[j] * self.D + alpha

    def point_component(self, j, alpha):
        """X_j^alpha as a polynomial (zero for the top point)."""
        if j == self.top:
            return Poly(self.N, {}, _trusted=True)
        return Poly.var(self.N, self.var(j, alpha))

    def difference(self, j, k, alpha):
        return self.point_component(j, alpha) - self.point_component(k, alpha)

    def pair_base(self, j, k):
        if self.D == 1:
            return self.difference(j, k, 0)
        q = Poly(self.N, {}, _trusted=True)
        for a in range(self.D):
            d = self.difference(j, k, a)
            q = q + d * d
        return q

    def coordinate_name(self, i):
        j = self.free[i // self.D]
        a = i % self.D
        return "x%d" % j if self.D == 1 else "x%d_%d" % (j, a + 1)

    def __eq__(self, other):
        return isinstance(other, Layout) and (self.D, self.S) == (other.D, other.S)

    def __hash__(self):
        return hash((self.D, self.S))


@lru_cache(maxsize=None)
def layout(D, S):
    return Layout(D, tuple(S))


def _pole_product(lay, exps):
    exps = tuple(exps)
    hit = lay.pole_cache.get(exps)
    if hit is not None:
        return hit
    out = Poly.const(lay.N, 1)
    for b, e in zip(lay.bases, exps):
        if e:
            out = out * b ** e
    if len(lay.pole_cache) < 4096:
        lay.pole_cache[exps] = out
    return out


class ConfigElem:
    """Element of O_S (immutable, canonical reduced fraction)."""

    __slots__ = ("lay", "num", "poles", "_h", "_hp")

    def __init__(self, lay, num, poles, _reduced=False):
        if not isinstance(lay, Layout):
            raise TypeError("expected a Layout")
        self.lay = lay
        poles = tuple(int(p) for p in poles)
        if len(poles) != len(lay.pairs):
            raise ValueError("pole vector has wrong length")
        if num.nvars != lay.N:
            raise ValueError("numerator has wrong number of variables")
        if not _reduced:
            num, poles = _reduce(lay, num, poles)
        self.num = num
        self.poles = poles
        self._h = None
        self._hp = None

    # construction -------------------------------------------------------
    @classmethod
    def zero(cls, D, S):
        lay = layout(D, tuple(sorted(S)))
        return cls(lay, Poly(lay.N, {}, _trusted=True), (0,) * len(lay.pairs), _reduced=True)

    @classmethod
    def const(cls, D, S, c=1):
        lay = layout(D, tuple(sorted(S)))
        return cls(lay, Poly.const(lay.N, c), (0,) * len(lay.pairs), _reduced=True)

    @classmethod
    def coordinate(cls, D, S, i):
        """The i-th coordinate function of E_S."""
        lay = layout(D, tuple(sorted(S)))
        return cls(lay, Poly.var(lay.N, i), (0,) * len(lay.pairs), _reduced=True)

    @classmethod
    def from_poly(cls, lay, num, poles=None):
        return cls(lay, num, poles if poles is not None else (0,) * len(lay.pairs))

    @classmethod
    def propagator(cls, D, S, j, k, prop):
        """The function G_jk(x_j - x_k) for a PropagatorElem ``prop``."""
        lay = layout(D, tuple(sorted(S)))
        if j == k or j not in lay.S or k not in lay.S:
            raise UsageError("bad pair (%r, %r) for S=%r" % (j, k, lay.S))
        if prop.D != D:
            raise UsageError("propagator dimension mismatch")
        sign = 1
        if j > k:
            j, k = k, j
            sign = -1
        images = [lay.difference(j, k, a) * sign for a in range(D)]
        pi = lay.pair_index[(j, k)]
        out = cls.zero(D, lay.S)
        for (a, m), c in prop.terms.items():
            num = Poly.monomial(a, c).substitute(images, lay.N)
            poles = [0] * len(lay.pairs)
            if D == 1:
                poles[pi] = m
                if m % 2 and sign < 0:
                    num = -num
            else:
                poles[pi] = m
            out = out + cls(lay, num, poles)
        return out

    # basic protocol -----------------------------------------------------
    @property
    def D(self):
        return self.lay.D

    @property
    def S(self):
        return self.lay.S

    @property
    def N(self):
        return self.lay.N

    def is_zero(self):
        return self.num.is_zero()

    def __bool__(self):
        return not self.num.is_zero()

    def __eq__(self, other):
        if not isinstance(other, ConfigElem):
            if isinstance(other, RATIONAL_TYPES):
                return self == ConfigElem.const(self.D, self.S, other)
            return NotImplemented
        return self.lay == other.lay and self.poles == other.poles and self.num == other.num

    def __hash__(self):
        if self._h is None:
            self._h = hash((self.lay, self.poles, self.num))
        return self._h

    def _check(self, other):
        if not isinstance(other, ConfigElem):
            raise UsageError("operand is not a ConfigElem")
        if self.lay != other.lay:
            raise UsageError("operands differ in D or S: (%d,%r) vs (%d,%r)"
                             % (self.D, self.S, other.D, other.S))

    # arithmetic -----------------------------------------------------------
    def __add__(self, other):
        if isinstance(other, RATIONAL_TYPES) or not isinstance(other, ConfigElem) and _is_coeff(other):
            other = ConfigElem.const(self.D, self.S, other)
        self._check(other)
        if other.is_zero():
            return self
        if self.is_zero():
            return other
        M = tuple(max(a, b) for a, b in zip(self.poles, other.poles))
        n1 = self.num * _pole_product(self.lay, [m - a for m, a in zip(M, self.poles)])
        n2 = other.num * _pole_product(self.lay, [m - a for m, a in zip(M, other.poles)])
        check = [a == b and a > 0 for a, b in zip(self.poles, other.poles)]
        num, poles = _reduce(self.lay, n1 + n2, M, check)
        return ConfigElem(self.lay, num, poles, _reduced=True)

    __radd__ = __add__

    def __neg__(self):
        return ConfigElem(self.lay, -self.num, self.poles, _reduced=True)

    def __sub__(self, other):
        if not isinstance(other, ConfigElem):
            other = ConfigElem.const(self.D, self.S, other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, ConfigElem):
            c = as_coeff(other)
            if c == 0:
                return ConfigElem.zero(self.D, self.S)
            return ConfigElem(self.lay, self.num * c, self.poles, _reduced=True)
        self._check(other)
        check = [(a > 0) != (b > 0) for a, b in zip(self.poles, other.poles)]
        num, poles = _reduce(self.lay, self.num * other.num,
                             tuple(a + b for a, b in zip(self.poles, other.poles)), check)
        return ConfigElem(self.lay, num, poles, _reduced=True)

    __rmul__ = __mul__

    def __pow__(self, n):
        out = ConfigElem.const(self.D, self.S, 1)
        for _ in range(n):
            out = out * self
        return out

    def mul_poly(self, p):
        """Multiply by a polynomial given as a Poly in the E_S coordinates."""
        return ConfigElem(self.lay, self.num * p, self.poles)

    def mul_coordinate(self, i, power=1):
        if power == 0:
            return self
        return ConfigElem(self.lay, self.num * Poly.var(self.N, i, power), self.poles)

    def mul_monomial(self, r):
        if not any(r):
            return self
        return ConfigElem(self.lay, self.num * Poly.monomial(tuple(r), 1), self.poles)

    def partial(self, i):
        """Derivative with respect to coordinate i of E_S."""
        lay = self.lay
        if not 0 <= i < lay.N:
            raise UsageError("coordinate index %d out of range" % i)
        # only pole factors that depend on coordinate i change
        active = [t for t, m in enumerate(self.poles) if m and not lay.base_diffs[i][t].is_zero()]
        if not active:
            return ConfigElem(lay, self.num.diff(i), self.poles)
        ind = [0] * len(lay.pairs)
        for t in active:
            ind[t] = 1
        num = self.num.diff(i) * _pole_product(lay, ind)
        for t in active:
            ind[t] = 0
            num = num - self.num * (lay.base_diffs[i][t] * _pole_product(lay, ind) * self.poles[t])
            ind[t] = 1
        if num.is_zero():
            return ConfigElem.zero(self.D, self.S)
        poles = list(self.poles)
        for t in active:
            poles[t] += 1
        # an active factor is prime and divides exactly one of the two terms,
        # so only the untouched factors can cancel
        check = [bool(m) and t not in active for t, m in enumerate(self.poles)]
        num, poles = _reduce(lay, num, poles, check)
        return ConfigElem(lay, num, poles, _reduced=True)

    def partial_multi(self, r):
        out = self
        for i, k in enumerate(r):
            for _ in range(k):
                out = out.partial(i)
        return out

    def partial_point(self, j, alpha):
        """Derivative with respect to the absolute position x_j^alpha."""
        lay = self.lay
        if j != lay.top:
            return self.partial(lay.var(j, alpha))
        out = ConfigElem.zero(self.D, self.S)
        for i in lay.free:
            out = out - self.partial(lay.var(i, alpha))
        return out

    # grading ----------------------------------------------------------------
    def homogeneous_parts(self):
        """List of (degree, part) with strictly increasing degrees."""
        if self._hp is None:
            shift = self.lay.base_degree * sum(self.poles)
            parts = []
            for d, p in sorted(self.num.homogeneous_parts().items()):
                parts.append((d - shift, ConfigElem(self.lay, p, self.poles)))
            self._hp = parts
        return list(self._hp)

    def homogeneous_part(self, h):
        for d, p in self.homogeneous_parts():
            if d == h:
                return p
        return ConfigElem.zero(self.D, self.S)

    def degrees(self):
        return [d for d, _ in self.homogeneous_parts()]

    def is_homogeneous(self):
        return len(self.homogeneous_parts()) <= 1

    def divergence_degree(self):
        """Degree of divergence; NEG_INF for zero."""
        if self.is_zero():
            return NEG_INF
        return -self.homogeneous_parts()[0][0]

    def in_filtration(self, ell):
        return self.divergence_degree() <= ell

    # evaluation ---------------------------------------------------------------
    def evaluate(self, point):
        """Exact value at a rational point of F_S (sequence of N rationals)."""
        point = [Q(x) for x in point]
        if len(point) != self.N:
            raise UsageError("point must have %d coordinates" % self.N)
        den = Q(1)
        for b, m in zip(self.lay.bases, self.poles):
            if m:
                v = b.evaluate(point)
                if v == 0:
                    raise PreconditionError("point is not in F_S")
                den *= v ** m
        return self.num.evaluate(point) / den

    # point maps -----------------------------------------------------------
    def pullback(self, new_S, images):
        """H(y) = G(x_j := y_{images[j]}) as an element of O_{new_S}.

        ``images`` maps every point of S to a point of new_S.  Pairs whose
        endpoints collapse must carry no pole.
        """
        new = layout(self.D, tuple(sorted(new_S)))
        lay = self.lay
        D = self.D
        top_img = images[lay.top]
        subs = []
        for j in lay.free:
            for a in range(D):
                subs.append(new.point_component(images[j], a) - new.point_component(top_img, a))
        num = self.num.substitute(subs, new.N)
        poles = [0] * len(new.pairs)
        sign = 1
        for (j, k), m in zip(lay.pairs, self.poles):
            if not m:
                continue
            t, u = images[j], images[k]
            if t == u:
                raise PreconditionError("factor G[%d,%d] is singular on the collapsed diagonal" % (j, k))
            if t > u:
                t, u = u, t
                if D == 1 and m % 2:
                    sign = -sign
            poles[new.pair_index[(t, u)]] += m
        if sign < 0:
            num = -num
        return ConfigElem(new, num, poles)

    def relabel(self, mapping):
        """Transport along a bijection of point labels (dict old -> new)."""
        new_S = tuple(sorted(mapping[j] for j in self.S))
        return self.pullback(new_S, mapping)

    def to_standard(self):
        """Relabel S order-preservingly onto {1, ..., n}."""
        return self.relabel({j: i + 1 for i, j in enumerate(self.S)})

    def lift(self, new_S):
        """View as a function on a superset of points."""
        return self.pullback(new_S, {j: j for j in self.S})

    # term structure -----------------------------------------------------------
    def terms(self):
        """Canonical product decomposition.

        Returns a sorted list ``(coeff, {pair: (a, m)})`` where each factor is
        a canonical monomial of the propagator algebra in the variable
        ``x_j - x_k`` (``a`` a D-tuple of exponents, ``m`` a pole order; for
        D = 1 a Laurent exponent is encoded with ``a`` or ``m`` zero).
        """
        lay = self.lay
        D = self.D
        out = {}
        for e, c in self.num.terms.items():
            factor_sums = []
            for j in lay.free:
                block = e[lay.pos[j] * D:(lay.pos[j] + 1) * D]
                pair = (j, lay.top)
                m = self.poles[lay.pair_index[pair]]
                factor_sums.append((pair, _canon_monomial(D, block, m)))
            for pair, m in zip(lay.pairs, self.poles):
                if m and pair[1] != lay.top:
                    factor_sums.append((pair, {((0,) * D, m): Q(1)}))
            combos = [((), c)]
            for pair, fs in factor_sums:
                nxt = []
                for key, cc in combos:
                    for mono, fc in fs.items():
                        if _is_unit(D, mono):
                            nxt.append((key, cc * fc))
                        else:
                            nxt.append((key + ((pair, mono),), cc * fc))
                combos = nxt
            for key, cc in combos:
                _madd(out, tuple(sorted(key)), cc)
        return sorted(((c, dict(k)) for k, c in out.items()), key=lambda t: _term_sort_key(t[1]))

    def __repr__(self):
        return "ConfigElem(D=%d, S=%r, %s)" % (self.D, self.S, to_text(self))

    def __str__(self):
        return to_text(self)


def _is_coeff(x):
    try:
        as_coeff(x)
        return True
    except TypeError:
        return False


def _is_unit(D, mono):
    a, m = mono
    return m == 0 and not any(a)


def _term_sort_key(fmap):
    return tuple((p, a, m) for p, (a, m) in sorted(fmap.items()))


def _reduce(lay, num, poles, check=None):
    poles = list(poles)
    if num.is_zero():
        return num, tuple(0 for _ in poles)
    for t, m in enumerate(poles):
        if check is not None and not check[t]:
            continue
        while poles[t] > 0:
            q = num.divide_exact(lay.bases[t])
            if q is None:
                break
            num = q
            poles[t] -= 1
    return num, tuple(poles)


@lru_cache(maxsize=None)
def _canon_monomial(D, a, m):
    """Canonical propagator expansion of x^a / b^m as {(a', m'): coeff}."""
    if D == 1:
        e = a[0] - m
        return {((e,), 0) if e >= 0 else ((0,), -e): Q(1)}
    if m == 0:
        return {(tuple(a), 0): Q(1)}
    # rewrite x_D^2 = q - sum_{i<D} x_i^2, track powers of q
    work = {(tuple(a), 0): Q(1)}
    done = {}
    while work:
        (e, j), c = work.popitem()
        if e[-1] < 2:
            _madd(done, (e, j), c)
            continue
        base = list(e)
        base[-1] -= 2
        _madd(work, (tuple(base), j + 1), c)
        for i in range(D - 1):
            f = list(base)
            f[i] += 2
            _madd(work, (tuple(f), j), -c)
    out = {}
    for (e, j), c in done.items():
        if j >= m:
            # polynomial part: x^e * q^(j-m)
            p = Poly.monomial(e, c)
            qpoly = Poly(D, {tuple(2 if i == t else 0 for i in range(D)): Q(1) for t in range(D)})
            p = p * qpoly ** (j - m)
            for e2, c2 in p.terms.items():
                _madd(out, (e2, 0), c2)
        else:
            _madd(out, (e, m - j), c)
    return out


class PropagatorElem:
    """Element of O = k[x, 1/x^2] in D variables, canonical form.

    ``terms`` maps ``(a, m)`` to a coefficient, meaning ``x^a / (x^2)^m`` for
    D >= 2 (with ``a[-1] <= 1`` when ``m >= 1``) and ``x^(a-m)`` for D = 1
    (where ``m`` counts powers of the linear variable).
    """

    __slots__ = ("D", "terms")

    def __init__(self, D, terms=None):
        self.D = D
        d = {}
        for (a, m), c in (terms or {}).items():
            a = tuple(a)
            if D == 1:
                e = a[0] - m
                key = ((e,), 0) if e >= 0 else ((0,), -e)
                _madd(d, key, as_coeff(c))
            else:
                for k2, c2 in _canon_monomial(D, a, m).items():
                    _madd(d, k2, c2 * as_coeff(c))
        self.terms = d

    @classmethod
    def inverse_quadric(cls, D, power=1):
        """(x^2)^(-power)."""
        if D == 1:
            return cls(1, {((0,), 2 * power): 1})
        return cls(D, {((0,) * D, power): 1})

    @classmethod
    def monomial(cls, D, a, m=0, c=1):
        return cls(D, {(tuple(a), m): c})

    def is_zero(self):
        return not self.terms

    def __eq__(self, other):
        return isinstance(other, PropagatorElem) and self.D == other.D and self.terms == other.terms

    def __hash__(self):
        return hash((self.D, frozenset(self.terms.items())))

    def __add__(self, other):
        d = dict(self.terms)
        for k, v in other.terms.items():
            _madd(d, k, v)
        out = PropagatorElem(self.D)
        out.terms = d
        return out

    def __mul__(self, other):
        if not isinstance(other, PropagatorElem):
            c = as_coeff(other)
            out = PropagatorElem(self.D)
            out.terms = {k: v * c for k, v in self.terms.items() if v * c != 0}
            return out
        acc = {}
        for (a1, m1), c1 in self.terms.items():
            for (a2, m2), c2 in other.terms.items():
                a = tuple(x + y for x, y in zip(a1, a2))
                if self.D == 1:
                    key = ((a[0],), m1 + m2)
                else:
                    key = (a, m1 + m2)
                acc[key] = acc.get(key, 0) + c1 * c2
        return PropagatorElem(self.D, acc)

    def homogeneous_parts(self):
        out = {}
        for (a, m), c in self.terms.items():
            h = _prop_degree(self.D, a, m)
            out.setdefault(h, {})[(a, m)] = c
        res = []
        for h in sorted(out):
            p = PropagatorElem(self.D)
            p.terms = out[h]
            res.append((h, p))
        return res

    def big_scaling_degree(self):
        """Sc.d.: minus the lowest homogeneity degree; NEG_INF for zero."""
        if not self.terms:
            return NEG_INF
        return -self.homogeneous_parts()[0][0]

    def partial(self, i):
        acc = {}
        for (a, m), c in self.terms.items():
            if self.D == 1:
                e = a[0] - m
                if e:
                    acc[((e - 1,), 0) if e - 1 >= 0 else ((0,), 1 - e)] = acc.get(
                        ((e - 1,), 0) if e - 1 >= 0 else ((0,), 1 - e), 0) + c * e
                continue
            if a[i]:
                b = list(a)
                b[i] -= 1
                k = (tuple(b), m)
                acc[k] = acc.get(k, 0) + c * a[i]
            if m:
                b = list(a)
                b[i] += 1
                k = (tuple(b), m + 1)
                acc[k] = acc.get(k, 0) - 2 * m * c
        return PropagatorElem(self.D, acc)

    def evaluate(self, point):
        point = [Q(x) for x in point]
        q = sum(x * x for x in point)
        tot = Q(0)
        for (a, m), c in self.terms.items():
            v = c
            for x, k in zip(point, a):
                v = v * x ** k
            if m:
                if self.D == 1:
                    if point[0] == 0:
                        raise PreconditionError("evaluation at the origin")
                    v = v / point[0] ** m
                else:
                    if q == 0:
                        raise PreconditionError("evaluation at the origin")
                    v = v / q ** m
            tot = tot + v
        return tot

    def __repr__(self):
        return "PropagatorElem(%d, %s)" % (self.D, prop_text(self))


def _prop_degree(D, a, m):
    if D == 1:
        return a[0] - m
    return sum(a) - 2 * m


# ---------------------------------------------------------------------------
# text form:  term := scalar '*' factor ('*' factor)* ;  factor := G[j,k](...)
# ---------------------------------------------------------------------------

def _mono_text(D, a, m):
    if D == 1:
        e = a[0] - m
        return "1" if e == 0 else ("x" if e == 1 else "x^%d" % e)
    parts = []
    for i, k in enumerate(a):
        if k:
            parts.append("x%d" % (i + 1) if k == 1 else "x%d^%d" % (i + 1, k))
    s = "*".join(parts) if parts else "1"
    if m:
        s += "/q" if m == 1 else "/q^%d" % m
    return s


def prop_text(p):
    if not p.terms:
        return "0"
    items = sorted(p.terms.items())
    out = []
    for (a, m), c in items:
        mono = _mono_text(p.D, a, m)
        cs = coeff_str(c)
        out.append(mono if c == 1 else ("%s*%s" % (cs, mono)))
    return " + ".join(out)


def to_text(G):
    """Deterministic text form of a ConfigElem."""
    terms = G.terms()
    if not terms:
        return "0"
    pieces = []
    for c, fmap in terms:
        fs = ["G[%d,%d](%s)" % (j, k, _mono_text(G.D, a, m)) for (j, k), (a, m) in sorted(fmap.items())]
        if not fs:
            j, k = G.lay.pairs[0] if G.lay.pairs else (G.S[0], G.S[0])
            fs = ["G[%d,%d](1)" % (j, k)]
        pieces.append(coeff_str(c) + "*" + "*".join(fs))
    return " + ".join(pieces)
