"""Three-point renormalization for D = 1.

Coordinates on E_3 are x = x1 - x3, y = x2 - x3 and z = x - y = x1 - x2.
Every element of O_3 decomposes uniquely over the basis
``x^a y^b`` (a, b in Z) and ``x^a z^c`` (a in Z, c < 0), obtained by
ordered partial fractions (1/(y z) = (1/x)(1/y + 1/z)).  Distributions in
the image of the renormalization maps are finite sums of the terms

====  ===========================  ============
key   distribution                 coordinates
====  ===========================  ============
T1    A_a(x) (x) A_b(y)            (x, y)
T2    A_a(x) (x) A_c(z), c < 0     (x, z)
LX    delta^(r)(x) (x) A_b(z)      (x, z)
LY    delta^(r)(y) (x) A_b(z)      (y, z)
LZ    delta^(r)(z) (x) A_a(x)      (z, x)
P     delta^(r)(x) delta^(s)(y)    (x, y)
====  ===========================  ============

where ``A_a`` is the monomial t^a for a >= 0 and the canonical extension
L_{-a} of t^a for a < 0.  Each line carries the transverse coordinate
held fixed by the normal form of its two-point block, so the extension of
a line term across the origin is the two-point map in the transverse
variable.  The canonical map R_3 sends a basis element to its tensor of
atoms; it commutes with x, y and both derivatives.
"""

from math import comb

from .config import ConfigElem, PropagatorElem, layout
from .distributions import DeltaExpansion
from .errors import UnsupportedDomainError, UsageError
from .partitions import Partition, diagonal_taylor
from .poly import _madd
from .scalar import Q
from .schemes import CANONICAL, scheme_correction, Ext2

__all__ = ["Dist2D", "basis_decomposition", "rstar_glue", "R3", "gamma3", "gamma3_functional",
           "q3_map", "q3_functional", "lines_normal_form", "chenren_check_3", "chart_check",
           "LINE_OF_PAIR"]

S3 = (1, 2, 3)
LAY = None

# pair block -> (line key, pair index in the layout, quotient set)
LINE_OF_PAIR = {(1, 3): "LX", (2, 3): "LY", (1, 2): "LZ"}
_QUOT = {(1, 3): (1, 2), (2, 3): (1, 2), (1, 2): (1, 3)}
# matrices A with (x, y) = A (w, t) for the line coordinates
_TO_XY = {"LX": [[1, 0], [1, -1]], "LY": [[1, 1], [1, 0]], "LZ": [[0, 1], [-1, 1]]}


def _lay():
    global LAY
    if LAY is None:
        LAY = layout(1, S3)
    return LAY


def _ff(b, s):
    """Falling factorial b (b-1) ... (b-s+1)."""
    out = 1
    for i in range(s):
        out *= b - i
    return out


def _check(G):
    if G.D != 1 or len(G.S) != 3:
        raise UnsupportedDomainError("the gluing engine handles D = 1 with n <= 3 only")
    if G.S != S3:
        raise UsageError("three-point elements must live on S = (1, 2, 3)")


class Dist2D:
    """Finite sum of the term types listed in the module docstring."""

    __slots__ = ("t",)

    def __init__(self, terms=None):
        d = {}
        for k, c in (terms or {}).items():
            _add_term(d, k, c)
        self.t = d

    @classmethod
    def _raw(cls, d):
        out = cls.__new__(cls)
        out.t = d
        return out

    def __eq__(self, other):
        return isinstance(other, Dist2D) and self.t == other.t

    def __add__(self, other):
        d = dict(self.t)
        for k, c in other.t.items():
            _madd(d, k, c)
        return Dist2D._raw(d)

    def __neg__(self):
        return Dist2D._raw({k: -c for k, c in self.t.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, c):
        if c == 0:
            return Dist2D()
        return Dist2D._raw({k: v * c for k, v in self.t.items()})

    def is_zero(self):
        return not self.t

    def part(self, kinds):
        return Dist2D._raw({k: c for k, c in self.t.items() if k[0] in kinds})

    def bulk(self):
        return self.part(("T1", "T2"))

    def lines(self):
        return self.part(("LX", "LY", "LZ"))

    def points(self):
        return self.part(("P",))

    def restriction(self):
        """Drop the terms supported at the origin."""
        return self.part(("T1", "T2", "LX", "LY", "LZ"))

    def point_expansion(self):
        """Point terms as a DeltaExpansion in (x, y)."""
        return DeltaExpansion(2, {(k[1], k[2]): c for k, c in self.t.items() if k[0] == "P"})

    def partial(self, i):
        d = {}
        for k, c in self.t.items():
            for k2, c2 in _partial_term(k, i):
                _add_term(d, k2, c * c2)
        return Dist2D._raw(d)

    def mul_coordinate(self, i):
        d = {}
        for k, c in self.t.items():
            for k2, c2 in _mul_term(k, i):
                _add_term(d, k2, c * c2)
        return Dist2D._raw(d)

    def evaluate_bulk(self, point):
        """Value of the bulk part at a point with x, y, z all nonzero."""
        x, y = Q(point[0]), Q(point[1])
        z = x - y
        tot = Q(0)
        for k, c in self.t.items():
            if k[0] == "T1":
                tot += c * x ** k[1] * y ** k[2] if k[1] >= 0 and k[2] >= 0 else c * _pw(x, k[1]) * _pw(y, k[2])
            elif k[0] == "T2":
                tot += c * _pw(x, k[1]) * _pw(z, k[2])
        return tot

    def to_json(self):
        from .scalar import coeff_str
        return [[list(k), coeff_str(c)] for k, c in sorted(self.t.items(), key=lambda kc: (kc[0][0], kc[0][1:]))]

    def __repr__(self):
        return "Dist2D(%r)" % (self.to_json(),)


def _pw(v, e):
    return v ** e if e >= 0 else Q(1) / v ** (-e)


def _add_term(d, k, c):
    if c == 0:
        return
    if k[0] == "T2" and k[2] >= 0:
        # z^c = (x - y)^c
        a, cc = k[1], k[2]
        for j in range(cc + 1):
            _madd(d, ("T1", a + cc - j, j), c * comb(cc, j) * (-1) ** j)
        return
    if k[0] in ("LX", "LY", "LZ", "P") and (k[1] < 0 or (k[0] == "P" and k[2] < 0)):
        return
    _madd(d, k, c)


def _partial_term(k, i):
    kind = k[0]
    if kind == "T1":
        _, a, b = k
        return [(("T1", a - 1, b), a)] if i == 0 else [(("T1", a, b - 1), b)]
    if kind == "T2":
        _, a, c = k
        if i == 0:
            return [(("T2", a - 1, c), a), (("T2", a, c - 1), c)]
        return [(("T2", a, c - 1), -c)]
    if kind == "LX":
        _, r, b = k
        if i == 0:
            return [(("LX", r + 1, b), 1), (("LX", r, b - 1), b)]
        return [(("LX", r, b - 1), -b)]
    if kind == "LY":
        _, r, b = k
        if i == 0:
            return [(("LY", r, b - 1), b)]
        return [(("LY", r + 1, b), 1), (("LY", r, b - 1), -b)]
    if kind == "LZ":
        _, r, a = k
        if i == 0:
            return [(("LZ", r, a - 1), a), (("LZ", r + 1, a), 1)]
        return [(("LZ", r + 1, a), -1)]
    _, r, s = k
    return [(("P", r + 1, s), 1)] if i == 0 else [(("P", r, s + 1), 1)]


def _mul_term(k, i):
    kind = k[0]
    if kind == "T1":
        _, a, b = k
        return [(("T1", a + 1, b), 1)] if i == 0 else [(("T1", a, b + 1), 1)]
    if kind == "T2":
        _, a, c = k
        if i == 0:
            return [(("T2", a + 1, c), 1)]
        return [(("T2", a + 1, c), 1), (("T2", a, c + 1), -1)]
    if kind == "LX":
        _, r, b = k
        if i == 0:
            return [(("LX", r - 1, b), -r)]
        return [(("LX", r - 1, b), -r), (("LX", r, b + 1), -1)]
    if kind == "LY":
        _, r, b = k
        if i == 0:
            return [(("LY", r - 1, b), -r), (("LY", r, b + 1), 1)]
        return [(("LY", r - 1, b), -r)]
    if kind == "LZ":
        _, r, a = k
        if i == 0:
            return [(("LZ", r, a + 1), 1)]
        return [(("LZ", r, a + 1), 1), (("LZ", r - 1, a), r)]
    _, r, s = k
    return [(("P", r - 1, s), -r)] if i == 0 else [(("P", r, s - 1), -s)]


# ---------------------------------------------------------------------------
# basis decomposition
# ---------------------------------------------------------------------------

_BASIS_MEMO = {}


def _mono_basis(a, b, c):
    """x^a y^b z^c over the basis, as {("T1", a, b) | ("T2", a, c): coeff}."""
    key = (a, b, c)
    hit = _BASIS_MEMO.get(key)
    if hit is not None:
        return hit
    out = {}
    if c >= 0:
        for j in range(c + 1):
            _madd(out, ("T1", a + c - j, b + j), Q(comb(c, j) * (-1) ** j))
    elif b >= 0:
        # y = x - z
        for j in range(b + 1):
            for k2, v in _mono_basis(a + b - j, 0, c + j).items() if c + j >= 0 else [(("T2", a + b - j, c + j), Q(1))]:
                _madd(out, k2, v * comb(b, j) * (-1) ** j)
    else:
        # 1/(y z) = (1/x)(1/y + 1/z)
        for k2, v in _mono_basis(a - 1, b + 1, c).items():
            _madd(out, k2, v)
        for k2, v in _mono_basis(a - 1, b, c + 1).items():
            _madd(out, k2, v)
    _BASIS_MEMO[key] = out
    return out


def basis_decomposition(G):
    """Coefficients of G over the canonical basis (keys as in Dist2D bulk)."""
    _check(G)
    lay = G.lay
    m12, m13, m23 = (G.poles[lay.pair_index[p]] for p in ((1, 2), (1, 3), (2, 3)))
    out = {}
    for (i, j), c in G.num.terms.items():
        for k, v in _mono_basis(i - m13, j - m23, -m12).items():
            _madd(out, k, v * c)
    return out


# ---------------------------------------------------------------------------
# one-dimensional atoms and corrections
# ---------------------------------------------------------------------------

_LAY2 = None
_CORR_MEMO = {}


def _atom_correction(a, scheme):
    """Delta correction q_a = (P_scheme - P)(t^a) as {r: coeff}."""
    if a >= 0 or scheme.is_canonical:
        return {}
    key = (a, scheme)
    hit = _CORR_MEMO.get(key)
    if hit is None:
        u = ConfigElem.propagator(1, (1, 2), 1, 2, PropagatorElem.monomial(1, (0,), -a))
        hit = {r[0]: c for r, c in scheme_correction(u, scheme).terms.items()}
        _CORR_MEMO[key] = hit
    return hit


def _line_from_xy_x(r, b):
    """delta^(r)(x) (x) A_b(y) rewritten with transverse z (off the origin)."""
    return [(("LX", r - s, b - s), comb(r, s) * (-1 if b % 2 else 1) * _ff(b, s)) for s in range(r + 1)]


def _line_from_xy_y(r, a):
    """A_a(x) (x) delta^(r)(y) rewritten with transverse z (off the origin)."""
    return [(("LY", r - s, a - s), comb(r, s) * (-1) ** s * _ff(a, s)) for s in range(r + 1)]


def rstar_glue(G, scheme=CANONICAL):
    """R*_3 G: the distribution on E_3 minus 0 fixed by the two-point maps.

    Returned as a Dist2D without point terms.  For two points this is G
    itself (returned as an Ext2 restriction).
    """
    if G.D != 1:
        raise UnsupportedDomainError("gluing is implemented for D = 1 only")
    if len(G.S) == 2:
        return Ext2(G)
    _check(G)
    d = {}
    for k, c in basis_decomposition(G).items():
        _add_term(d, k, c)
        if scheme.is_canonical:
            continue
        kind, a, b = k
        qa = _atom_correction(a, scheme)
        qb = _atom_correction(b, scheme)
        if kind == "T1":
            for r, v in qa.items():
                for k2, w in _line_from_xy_x(r, b):
                    _add_term(d, k2, c * v * w)
            for r, v in qb.items():
                for k2, w in _line_from_xy_y(r, a):
                    _add_term(d, k2, c * v * w)
        else:
            for r, v in qa.items():
                _add_term(d, ("LX", r, b), c * v)
            for r, v in qb.items():
                _add_term(d, ("LZ", r, a), c * v)
    return Dist2D._raw(d)


def _point_from_line(kind, r, s, c):
    """delta^(r)(w) delta^(s)(t) in line coordinates as point terms in (x, y)."""
    de = DeltaExpansion(2, {(r, s): c}).linear_change(_inverse_int(_TO_XY[kind]))
    return de


def _inverse_int(A):
    # (w, t) = A^-1 (x, y); linear_change wants new = M old with old = (w, t)
    (p, q), (r, s) = A
    det = p * s - q * r
    return [[s * det, -q * det], [-r * det, p * det]] if abs(det) == 1 else None


def extend_lines(Y, scheme):
    """Point terms added when the scheme extends the line terms of Y."""
    if scheme.is_canonical:
        return Dist2D()
    acc = DeltaExpansion(2)
    for k, c in Y.t.items():
        if k[0] in ("LX", "LY", "LZ"):
            for s, v in _atom_correction(k[2], scheme).items():
                acc = acc + _point_from_line(k[0], k[1], s, c * v)
    return Dist2D._raw({("P",) + r: v for r, v in acc.terms.items()})


def P3(Y, scheme=CANONICAL):
    """Primary map on restrictions: bulk by R_3, lines aligned with the scheme."""
    Y = Y.restriction()
    return Y + extend_lines(Y, scheme)


def R3(G, scheme=CANONICAL):
    """R_3 G = P_3 R*_3 G in the given scheme."""
    return P3(rstar_glue(G, scheme), scheme)


def gamma3(G, xi, scheme=CANONICAL):
    """[d/dx^xi, P_3] R*_3 G as a DeltaExpansion in (x, y)."""
    Y = R3(G, scheme).partial(xi)
    return (Y - P3(Y, scheme)).point_expansion()


def gamma3_functional(xi, scheme=CANONICAL):
    from .distributions import Functional
    return Functional(1, S3, 0, lambda G: gamma3(G, xi, scheme).coefficient((0, 0)),
                      name="Gamma3[%d]" % xi)


def q3_map(G, scheme, scheme2):
    """Q_3 G = (P'_3 - P_3) R*'_3 G for the change scheme -> scheme2."""
    Y = rstar_glue(G, scheme2)
    return (extend_lines(Y, scheme2) - extend_lines(Y, scheme)).point_expansion()


def q3_functional(scheme, scheme2):
    from .distributions import Functional
    return Functional(1, S3, 1, lambda G: q3_map(G, scheme, scheme2).coefficient((0, 0)), name="Q3")


# ---------------------------------------------------------------------------
# normal forms and the change formula
# ---------------------------------------------------------------------------

def _split_pair(G, pair):
    """Yield (e, G_P): G = sum (x_j - x_k)^e * G_P with G_P regular on the pair."""
    lay = G.lay
    for coeff, fmap in G.terms():
        e = 0
        rest = ConfigElem.const(1, G.S, coeff)
        for (j, k), (a, m) in fmap.items():
            if (j, k) == pair:
                e = a[0] - m
            else:
                rest = rest * ConfigElem.propagator(1, G.S, j, k, PropagatorElem.monomial(1, a, m))
        yield e, rest


def _laurent_keys(H):
    """Two-point element t^e sums as {e: coeff}."""
    (m,) = H.poles
    return {i[0] - m: c for i, c in H.num.terms.items()}


def lines_normal_form(G, q_of):
    """sum over pair blocks of n.f.(G_P * Q_{S'} G_{S'}) as line terms.

    ``q_of(e)`` returns the delta coefficients {r: c} of Q_2((x_j - x_k)^e).
    """
    _check(G)
    d = {}
    for pair, kind in LINE_OF_PAIR.items():
        for e, GP in _split_pair(G, pair):
            q = q_of(e)
            if not q:
                continue
            jets = diagonal_taylor(GP, pair, max(q)).coefficients
            for r, v in q.items():
                for s in range(r + 1):
                    J = jets[(s,)]
                    # the jets differentiate in x_k - x_j = -w: d_w^s = (-1)^s d^s
                    for b, c in _laurent_keys(J).items():
                        _add_term(d, (kind, r - s, b), v * comb(r, s) * c)
    return Dist2D._raw(d)


def chenren_check_3(G, scheme, scheme2):
    """Both sides of the change formula for three points; returns (lhs, rhs)."""
    lhs = R3(G, scheme2)
    base = R3(G, scheme)
    L = lines_normal_form(G, lambda e: _q2_coeffs(e, scheme, scheme2))
    rhs = base + L + extend_lines(L, scheme)
    rhs = rhs + Dist2D._raw({("P",) + r: c for r, c in q3_map(G, scheme, scheme2).terms.items()})
    return lhs, rhs


def _q2_coeffs(e, scheme, scheme2):
    out = dict(_atom_correction(e, scheme2))
    for r, c in _atom_correction(e, scheme).items():
        _madd(out, r, -c)
    return out


# ---------------------------------------------------------------------------
# chart consistency
# ---------------------------------------------------------------------------

def chart_check(G, scheme, P, w0, t0):
    """Compare the glued R*_3 G with the product formula on the chart of P.

    For a pair block the chart point is given by line coordinates (w0, t0)
    with t0 != 0: the regular values at (w0, t0) and the delta coefficients
    along the line at t = t0 are compared.  For the singleton partition only
    values are compared.  Returns None or a description of the mismatch.
    """
    _check(G)
    if not isinstance(P, Partition):
        P = Partition(P)
    blocks = [b for b in P.blocks if len(b) > 1]
    Y = rstar_glue(G, scheme)
    if not blocks:
        kind = None
        x, y = Q(w0), Q(t0)
    else:
        (pair,) = blocks
        kind = LINE_OF_PAIR[tuple(pair)]
        x, y = _xy_of(kind, Q(w0), Q(t0))
    if x == 0 or y == 0 or x == y:
        raise UsageError("chart point must lie in F_3")
    if Y.evaluate_bulk((x, y)) != G.evaluate((x, y)):
        return "value mismatch at (%s, %s)" % (x, y)
    if kind is None:
        return None
    t0 = Q(t0)
    lhs = {}
    for k, c in Y.t.items():
        if k[0] == kind:
            _madd(lhs, k[1], c * _pw(t0, k[2]))
    rhs = {}
    q_of = lambda e: _atom_correction(e, scheme)
    for e, GP in _split_pair(G, tuple(blocks[0])):
        q = q_of(e)
        if not q:
            continue
        jets = diagonal_taylor(GP, tuple(blocks[0]), max(q)).coefficients
        for r, v in q.items():
            for s in range(r + 1):
                _madd(rhs, r - s, v * comb(r, s) * jets[(s,)].evaluate([t0]))
    if lhs != rhs:
        return "delta coefficients differ along %s at t=%s" % (kind, t0)
    return None


def _xy_of(kind, w, t):
    A = _TO_XY[kind]
    return A[0][0] * w + A[0][1] * t, A[1][0] * w + A[1][1] * t
