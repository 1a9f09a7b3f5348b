"""De Rham complexes over O_S and over its dual module.

Forms are stored on increasing index tuples.  ``homotopy_K`` inverts the
Euler operator sector by sector; cohomology is computed on the resonant
slice (coefficients of degree -m) by exact rank computations.
"""

from dataclasses import dataclass, asdict
from itertools import combinations
from math import comb

from .config import ConfigElem, layout, _pole_product
from .distributions import FunctionalForm, _sort_sign
from .errors import UsageError, ResonanceError, ResourceError
from .poly import Poly, all_monomials
from ._rank import rank as _rank
from .scalar import Q

__all__ = ["OForm", "d_apply", "homotopy_K", "cohomology_dims", "CohomologyReport",
           "duality_pair", "euler_weight_parts"]


class OForm:
    """Antisymmetric m-form with coefficients in O_S."""

    def __init__(self, D, S, m, components=None):
        self.D = D
        self.S = tuple(sorted(S))
        self.m = m
        lay = layout(D, self.S)
        if not 0 <= m <= lay.N:
            raise UsageError("form degree %d out of range 0..%d" % (m, lay.N))
        comps = {}
        for I, G in (components or {}).items():
            I = tuple(I)
            if len(I) != m or any(not 0 <= i < lay.N for i in I):
                raise UsageError("bad component index %r" % (I,))
            sign, J = _sort_sign(I)
            if sign == 0:
                continue
            G = G if sign > 0 else -G
            comps[J] = comps[J] + G if J in comps else G
        self.components = {I: G for I, G in comps.items() if not G.is_zero()}

    @property
    def N(self):
        return self.D * (len(self.S) - 1)

    def component(self, I):
        sign, J = _sort_sign(tuple(I))
        if sign == 0 or J not in self.components:
            return ConfigElem.zero(self.D, self.S)
        G = self.components[J]
        return G if sign > 0 else -G

    def is_zero(self):
        return not self.components

    def __eq__(self, other):
        return (isinstance(other, OForm) and (self.D, self.S, self.m) == (other.D, other.S, other.m)
                and self.components == other.components)

    def __add__(self, other):
        if (self.D, self.S, self.m) != (other.D, other.S, other.m):
            raise UsageError("forms of different type")
        comps = dict(self.components)
        for I, G in other.components.items():
            comps[I] = comps[I] + G if I in comps else G
        return OForm(self.D, self.S, self.m, comps)

    def __neg__(self):
        return OForm(self.D, self.S, self.m, {I: -G for I, G in self.components.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, c):
        return OForm(self.D, self.S, self.m, {I: G * c for I, G in self.components.items()})

    __rmul__ = __mul__

    def __repr__(self):
        body = ", ".join("%r: %s" % (I, G) for I, G in sorted(self.components.items()))
        return "OForm(m=%d, {%s})" % (self.m, body)


def _d_indices(N, m):
    """Yield (J, [(sign, i, I)]) describing (dT)_J = sum sign * d_i T_I."""
    for J in combinations(range(N), m + 1):
        parts = []
        for l, i in enumerate(J):
            I = J[:l] + J[l + 1:]
            parts.append((1 if l % 2 == 0 else -1, i, I))
        yield J, parts


def d_apply(T):
    """Exterior differential of an OForm or a FunctionalForm."""
    N = T.N
    if T.m >= N:
        return _zero_like(T)
    if isinstance(T, OForm):
        comps = {}
        for J, parts in _d_indices(N, T.m):
            acc = ConfigElem.zero(T.D, T.S)
            for s, i, I in parts:
                G = T.components.get(I)
                if G is not None:
                    g = G.partial(i)
                    acc = acc + g if s > 0 else acc - g
            if not acc.is_zero():
                comps[J] = acc
        return OForm(T.D, T.S, T.m + 1, comps)
    if isinstance(T, FunctionalForm):
        comps = {}
        for J, parts in _d_indices(N, T.m):
            acc = None
            for s, i, I in parts:
                F = T.components.get(I)
                if F is None:
                    continue
                f = F.dual_partial(i) * s
                acc = f if acc is None else acc + f
            if acc is not None:
                comps[J] = acc
        return FunctionalForm(T.D, T.S, T.m + 1, comps)
    raise UsageError("d_apply expects an OForm or FunctionalForm")


def _zero_like(T):
    # the complex stops at degree N
    if isinstance(T, OForm):
        out = OForm.__new__(OForm)
        out.D, out.S, out.m, out.components = T.D, T.S, T.m + 1, {}
        return out
    out = FunctionalForm.__new__(FunctionalForm)
    out.D, out.S, out.m, out.components = T.D, T.S, T.m + 1, {}
    return out


def euler_weight_parts(T):
    """Split an OForm into sectors of constant Euler weight m + h."""
    out = {}
    for I, G in T.components.items():
        for h, part in G.homogeneous_parts():
            out.setdefault(T.m + h, {})[I] = part
    return {w: OForm(T.D, T.S, T.m, comps) for w, comps in sorted(out.items())}


def homotopy_K(T):
    """K = (Euler weight)^-1 * interior product with the Euler field."""
    if not isinstance(T, OForm):
        raise UsageError("homotopy_K expects an OForm")
    if T.m == 0:
        return None
    N = T.N
    for I, G in sorted(T.components.items()):
        for h, _ in G.homogeneous_parts():
            if T.m + h == 0:
                raise ResonanceError("component %r has homogeneous degree %d = -m; "
                                     "Euler weight vanishes" % (I, h), component=I, degree=h)
    comps = {}
    for I, G in T.components.items():
        for pos, xi in enumerate(I):
            rest = I[:pos] + I[pos + 1:]
            sign = 1 if pos % 2 == 0 else -1
            acc = ConfigElem.zero(T.D, T.S)
            for h, part in G.homogeneous_parts():
                acc = acc + part.mul_coordinate(xi) * Q(sign, T.m + h)
            comps[rest] = comps[rest] + acc if rest in comps else acc
    return OForm(T.D, T.S, T.m - 1, comps)


def duality_pair(Omega, alpha):
    """sum over I of eps(I, I^c) * Omega_I(alpha_{I^c})."""
    if not isinstance(Omega, FunctionalForm) or not isinstance(alpha, OForm):
        raise UsageError("duality_pair expects (FunctionalForm, OForm)")
    N = Omega.N
    if alpha.N != N or Omega.m + alpha.m != N:
        raise UsageError("degrees %d + %d do not add up to N = %d" % (Omega.m, alpha.m, N))
    tot = Q(0)
    for I, F in sorted(Omega.components.items()):
        J = tuple(i for i in range(N) if i not in I)
        G = alpha.components.get(J)
        if G is None:
            continue
        sign, _ = _sort_sign(I + J)
        v = F(G)
        tot = tot + (v if sign > 0 else -v)
    return tot


# ---------------------------------------------------------------------------
# cohomology on the resonant slice
# ---------------------------------------------------------------------------

@dataclass
class CohomologyReport:
    D: int
    n: int
    m: int
    pole_bound: int
    dim_ker: int
    dim_im: int
    dim_H: int
    stabilized: bool

    def as_dict(self):
        return asdict(self)


DEFAULT_CAP = 20000


def _slice(lay, m, b):
    """Basis of C^m_b: (I, exponent) pairs for numerators over prod(b_jk)^b."""
    P = sum(lay.base_degree for _ in lay.pairs)
    deg = P * b - m
    monos = all_monomials(lay.N, deg)
    return [(I, e) for I in combinations(range(lay.N), m) for e in monos], deg


def _d_matrix(lay, m, b, cap):
    """Integer matrix of d: C^m_b -> C^{m+1}_{b+1} plus the basis of the target."""
    src, _ = _slice(lay, m, b)
    tgt, _ = _slice(lay, m + 1, b + 1)
    if len(src) * max(len(tgt), 1) > cap * cap or max(len(src), len(tgt)) > cap:
        raise ResourceError("slice too large (%d x %d)" % (len(tgt), len(src)),
                            size=max(len(src), len(tgt)))
    index = {t: i for i, t in enumerate(tgt)}
    base = _pole_product(lay, [1] * len(lay.pairs))
    cols = []
    for I, e in src:
        num = Poly.monomial(e, 1)
        col = {}
        # d(num / B^b) = (dnum * B - b * num * dB) / B^(b+1)
        for i in range(lay.N):
            if i in I:
                continue
            J = tuple(sorted(I + (i,)))
            sign, _ = _sort_sign((i,) + I)
            g = num.diff(i) * base - num * base.diff(i) * b
            for ex, c in g.terms.items():
                k = index[(J, ex)]
                col[k] = col.get(k, 0) + sign * int(c)
        cols.append(col)
    return cols, len(tgt), tgt


def _embed_matrix(lay, m, b):
    """Integer matrix of the inclusion C^m_b -> C^m_{b+1}."""
    src, _ = _slice(lay, m, b)
    tgt, _ = _slice(lay, m, b + 1)
    index = {t: i for i, t in enumerate(tgt)}
    base = _pole_product(lay, [1] * len(lay.pairs))
    cols = []
    for I, e in src:
        g = Poly.monomial(e, 1) * base
        cols.append({index[(I, ex)]: int(c) for ex, c in g.terms.items()})
    return cols, len(tgt)


def _dense(cols, nrows):
    rows = [[0] * len(cols) for _ in range(nrows)]
    for j, col in enumerate(cols):
        for i, v in col.items():
            rows[i][j] = v
    return rows


def _slice_dims(D, n, m, b, cap):
    lay = layout(D, tuple(range(1, n + 1)))
    N = lay.N
    if not 0 <= m <= N:
        raise UsageError("form degree out of range")
    src, _ = _slice(lay, m, b)
    dim_C = len(src)
    if dim_C > cap:
        raise ResourceError("slice dimension %d exceeds cap %d" % (dim_C, cap), size=dim_C)
    # kernel of d on C^m_b
    if m < N:
        cols, nrows, _ = _d_matrix(lay, m, b, cap)
        rk = _rank(_dense(cols, nrows)) if cols and nrows else 0
    else:
        rk = 0
    dim_ker = dim_C - rk
    # image of d from C^{m-1}_b intersected with C^m_b, inside C^m_{b+1}
    if m > 0:
        dcols, nrows, _ = _d_matrix(lay, m - 1, b, cap)
        ecols, nrows2 = _embed_matrix(lay, m, b)
        r_d = _rank(_dense(dcols, nrows)) if dcols else 0
        r_both = _rank(_dense(dcols + ecols, nrows)) if dcols + ecols else 0
        dim_im = r_d + dim_C - r_both
    else:
        dim_im = 0
    return dim_ker, dim_im


def cohomology_dims(D, n, m, pole_bound, cap=DEFAULT_CAP):
    """H^m of O_n on the resonant slice with per-pair pole order <= pole_bound."""
    if pole_bound < 1:
        raise UsageError("pole_bound must be >= 1")
    if n < 2:
        raise UsageError("need at least two points")
    k, i = _slice_dims(D, n, m, pole_bound, cap)
    if pole_bound > 1:
        k0, i0 = _slice_dims(D, n, m, pole_bound - 1, cap)
        stable = (k0 - i0) == (k - i)
    else:
        stable = False
    return CohomologyReport(D, n, m, pole_bound, k, i, k - i, stable)


def slice_dimension(D, n, m, b):
    lay = layout(D, tuple(range(1, n + 1)))
    P = lay.base_degree * len(lay.pairs)
    return comb(lay.N, m) * comb(P * b - m + lay.N - 1, lay.N - 1) if P * b - m >= 0 else 0
