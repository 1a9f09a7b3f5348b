"""The product of functional forms and the cohomological equation.

For S' a proper subset of S with |S'| >= 2 the coordinates of E_S split
into x' (E_{S'}, layout of S') and x'' (E_{S/S'}, where the block S' is
represented by its minimal point).  ``Pi'`` and ``Pi''`` are the Jacobians
of this split.  The product

    (T'' o^ T')(G) = sum_{|S'| = m} sum_r (1/r!) Pi''* T''(d^r_{x'} G_P |_{x'=0})
                                               ^ Pi'* T'(x'^r G_{S'})

is evaluated term by term on the canonical product decomposition of G,
with G_P the factors on pairs not inside S' and G_{S'} the rest.
"""

from itertools import combinations

from .config import ConfigElem, PropagatorElem, layout
from .derham import OForm, d_apply, homotopy_K, duality_pair
from .distributions import Functional, FunctionalForm, _sort_sign
from .errors import UsageError, UnsupportedDomainError, ResonanceError, PreconditionError
from .partitions import diagonal_taylor, internal_coordinates, quotient_by_subset
from .poly import multi_indices
from .scalar import Q

__all__ = ["split_jacobians", "lift_form", "wedge_circle", "form_values", "gamma_form",
           "check_cohomological_eq", "solve_gamma_by_homotopy", "CohomologicalWitness"]


def _position(lay, j, a):
    """Row vector of x_j^a - x_top^a in the layout coordinates of ``lay``."""
    row = [0] * lay.N
    if j != lay.top:
        row[lay.var(j, a)] = 1
    return row


def _diff_row(lay, j, k, a):
    p, q = _position(lay, j, a), _position(lay, k, a)
    return [u - v for u, v in zip(p, q)]


def split_jacobians(D, S, Sp):
    """(Pi', Pi'') as integer matrices (rows: target coordinates)."""
    S = tuple(sorted(S))
    Sp = tuple(sorted(Sp))
    lay = layout(D, S)
    lp = layout(D, Sp)
    quo = quotient_by_subset(S, Sp)
    lq = layout(D, quo)
    rep = Sp[0]
    P1 = [None] * lp.N
    for j in lp.free:
        for a in range(D):
            P1[lp.var(j, a)] = _diff_row(lay, j, lp.top, a)
    P2 = [None] * lq.N
    for j in lq.free:
        for a in range(D):
            P2[lq.var(j, a)] = _diff_row(lay, j, lq.top, a)
    # the block S' sits at its minimal point, which keeps its own label
    assert rep in quo
    return P1, P2


def _minor(M, rows, cols):
    """Determinant of the square submatrix M[rows][cols]."""
    k = len(rows)
    if k == 0:
        return 1
    A = [[Q(M[r][c]) for c in cols] for r in rows]
    det = Q(1)
    for i in range(k):
        p = next((t for t in range(i, k) if A[t][i] != 0), None)
        if p is None:
            return Q(0)
        if p != i:
            A[i], A[p] = A[p], A[i]
            det = -det
        det *= A[i][i]
        for t in range(i + 1, k):
            f = A[t][i] / A[i][i]
            if f:
                for c in range(i, k):
                    A[t][c] -= f * A[i][c]
    return det


def _pullback_values(vals, M, N):
    """Pull back an antisymmetric tensor {J: v} along the Jacobian M."""
    if not vals:
        return {}
    m = len(next(iter(vals)))
    out = {}
    for I in combinations(range(N), m):
        tot = 0
        for J, v in vals.items():
            det = _minor(M, J, I)
            if det:
                tot = tot + v * det
        if tot != 0:
            out[I] = tot
    return out


def _wedge_values(a, b):
    out = {}
    for I, u in a.items():
        for J, v in b.items():
            sign, K = _sort_sign(I + J)
            if sign == 0:
                continue
            w = u * v if sign > 0 else -(u * v)
            out[K] = out[K] + w if K in out else w
    return {K: v for K, v in out.items() if v != 0}


def lift_form(T, Sp):
    """The natural lift of a form on {1..m} to the ordered set Sp."""
    Sp = tuple(sorted(Sp))
    if len(Sp) != len(T.S):
        raise UsageError("cannot lift a form on %d points to %d points" % (len(T.S), len(Sp)))
    if Sp == T.S:
        return T
    return FunctionalForm(T.D, Sp, T.m, {I: F.transported(Sp) for I, F in T.components.items()})


def _split_factors(D, S, Sp, fmap):
    """(G_P, G_{S'}) for one product term; G_P carries no coefficient."""
    Sp_set = set(Sp)
    GP = ConfigElem.const(D, S, 1)
    GS = ConfigElem.const(D, Sp, 1)
    for (j, k), (a, m) in fmap.items():
        prop = PropagatorElem.monomial(D, a, m)
        if j in Sp_set and k in Sp_set:
            GS = GS * ConfigElem.propagator(D, Sp, j, k, prop)
        else:
            GP = GP * ConfigElem.propagator(D, S, j, k, prop)
    return GP, GS


def _internal_monomials(D, Sp, order):
    """x'^r / r! as elements of O_{S'} for |r| <= order (x'_j = x_j - x_min)."""
    lp = layout(D, Sp)
    coords = internal_coordinates(D, Sp)
    mn = Sp[0]
    lin = [ConfigElem.from_poly(lp, lp.point_component(j, a) - lp.point_component(mn, a))
           for j, a in coords]
    out = {}
    for t in range(order + 1):
        for r in multi_indices(len(coords), t):
            e = ConfigElem.const(D, Sp, 1)
            fact = 1
            for v, k in zip(lin, r):
                for s in range(k):
                    e = e * v
                    fact *= s + 1
            out[r] = e * Q(1, fact)
    return out


def _max_order(Tp, GS):
    """Largest |r| for which T'(x'^r G_{S'}) can be nonzero."""
    thr = Tp.threshold()
    return max(GS.divergence_degree() - thr - 1, -1)


def form_values(T, G):
    """{I: T_I(G)} without zero entries."""
    return {I: v for I, v in T.evaluate(G).items() if v != 0}


def wedge_values(Tpp, Tp, G, sign=-1):
    """Values of sign * (Pi''* Tpp ^ Pi'* Tp summed over S') on G as {K: value}."""
    D = G.D
    S = G.S
    m = len(Tp.S)
    if not 2 <= m < len(S):
        raise UsageError("inner form must live on 2 <= m < n points")
    if len(Tpp.S) != len(S) - m + 1:
        raise UsageError("outer form must live on n - m + 1 points")
    N = G.N
    out = {}
    for Sp in combinations(S, m):
        inner = lift_form(Tp, Sp)
        quo = quotient_by_subset(S, Sp)
        outer = lift_form(Tpp, quo)
        P1, P2 = split_jacobians(D, S, Sp)
        for coeff, fmap in G.terms():
            GP, GS = _split_factors(D, S, Sp, fmap)
            order = _max_order(inner, GS)
            if order < 0:
                continue
            mons = _internal_monomials(D, Sp, order)
            jets = diagonal_taylor(GP, Sp, order).coefficients
            for r, xr in mons.items():
                vp = form_values(inner, xr * GS)
                if not vp:
                    continue
                vpp = form_values(outer, jets[r])
                if not vpp:
                    continue
                w = _wedge_values(_pullback_values(vpp, P2, N), _pullback_values(vp, P1, N))
                for K, v in w.items():
                    v = v * coeff if sign > 0 else -(v * coeff)
                    out[K] = out[K] + v if K in out else v
    return {K: v for K, v in out.items() if v != 0}


class _Shared:
    """Per-element memo shared by the components of a product form."""

    def __init__(self, fn):
        self.fn = fn
        self.memo = {}

    def get(self, G):
        hit = self.memo.get(G)
        if hit is None:
            hit = self.fn(G)
            self.memo[G] = hit
        return hit


def wedge_circle(Tpp, Tp, S=None, sign=-1):
    """The product Tpp o^ Tp as a FunctionalForm on S (default 1..n).

    ``sign = -1`` (default) is the orientation for which the cocycles of a
    scheme satisfy dGamma_n = sum Gamma o^ Gamma with the dual differential
    ``d Phi = -Phi o d``; ``sign = +1`` is the bare pullback-wedge formula.
    """
    if Tpp.D != Tp.D:
        raise UsageError("forms in different dimensions")
    D = Tp.D
    n = len(Tpp.S) + len(Tp.S) - 1
    S = tuple(range(1, n + 1)) if S is None else tuple(sorted(S))
    N = D * (n - 1)
    k = Tpp.m + Tp.m
    thr = Tpp.threshold() + Tp.threshold()
    shared = _Shared(lambda G: wedge_values(Tpp, Tp, G, sign))
    comps = {}
    for K in combinations(range(N), k):
        comps[K] = Functional(D, S, thr, lambda G, K=K: shared.get(G).get(K, Q(0)),
                              name="wedge%r" % (K,))
    return FunctionalForm(D, S, k, comps)


def gamma_form(D, n, scheme=None):
    """Gamma_n of a scheme as a 1-form (D = 1 with n <= 3, D = 2 with n = 2)."""
    from .schemes import CANONICAL, gamma_form_2
    scheme = CANONICAL if scheme is None else scheme
    if n == 2:
        if D not in (1, 2):
            raise UnsupportedDomainError("cocycles implemented for D = 1, 2 at n = 2")
        return gamma_form_2(D, scheme)
    if n == 3 and D == 1:
        from .chain1d import gamma3_functional
        return FunctionalForm(1, (1, 2, 3), 1, {(xi,): gamma3_functional(xi, scheme) for xi in range(2)})
    raise UnsupportedDomainError("Gamma_n implemented for D = 1, n <= 3 and D = 2, n = 2 only")


class CohomologicalWitness:
    """Outcome of a cohomological-equation check."""

    def __init__(self, n, ok, probe=None, index=None, lhs=None, rhs=None, checked=0):
        self.n = n
        self.ok = ok
        self.probe = probe
        self.index = index
        self.lhs = lhs
        self.rhs = rhs
        self.checked = checked

    def as_dict(self):
        from .scalar import coeff_str
        out = {"n": self.n, "ok": self.ok, "checked": self.checked}
        if not self.ok:
            out.update(probe=str(self.probe), index=list(self.index),
                       lhs=coeff_str(self.lhs), rhs=coeff_str(self.rhs))
        return out


def check_cohomological_eq(gammas, n, probes, sign=-1):
    """Check dGamma_n = sum_{m=2}^{n-1} Gamma_{n-m+1} o^ Gamma_m on probes.

    ``gammas`` maps k to the 1-form Gamma_k on {1..k}; ``sign`` is the
    orientation sign passed to ``wedge_circle``.
    """
    lhs = d_apply(gammas[n])
    rhs = None
    for m in range(2, n):
        w = wedge_circle(gammas[n - m + 1], gammas[m], sign=sign)
        rhs = w if rhs is None else rhs + w
    checked = 0
    for G in probes:
        for I in combinations(range(lhs.N), lhs.m):
            a = lhs.value(I, G)
            b = Q(0) if rhs is None else rhs.value(I, G)
            if a != b:
                return CohomologicalWitness(n, False, G, I, a, b, checked)
        checked += 1
    return CohomologicalWitness(n, True, checked=checked)


def solve_gamma_by_homotopy(F, probes):
    """A functional form Gamma with dGamma = F, built with the homotopy K.

    Gamma is defined through the pairing Gamma^(alpha) = (-1)^m F^(K alpha)
    on (N - m + 1)-forms alpha.  On the resonant sector (Euler weight 0)
    the value is set to zero; if dGamma = F then fails there, a
    ResonanceError names the sector.
    """
    if not isinstance(F, FunctionalForm):
        raise UsageError("solve_gamma_by_homotopy expects a FunctionalForm")
    D, S, m = F.D, F.S, F.m
    if m < 1:
        raise UsageError("right hand side must have degree >= 1")
    N = F.N
    bad = d_apply(F).vanishes_on(probes)
    if bad is not None:
        raise PreconditionError("right hand side is not closed (probe %s, index %r)" % bad)
    if not F.components:
        return FunctionalForm(D, S, m - 1, {})
    sign = 1 if m % 2 == 0 else -1
    comps = {}
    for I in combinations(range(N), m - 1):
        J = tuple(i for i in range(N) if i not in I)
        eps, _ = _sort_sign(I + J)

        def ev(G, J=J, eps=eps):
            alpha = OForm(D, S, N - m + 1, {J: G})
            tot = Q(0)
            for h, part in G.homogeneous_parts():
                if (N - m + 1) + h == 0:
                    continue
                Ka = homotopy_K(OForm(D, S, N - m + 1, {J: part}))
                tot = tot + duality_pair(F, Ka)
            return tot * (sign * eps)
        comps[I] = Functional(D, S, F.threshold(), ev, name="K-solution%r" % (I,))
    out = FunctionalForm(D, S, m - 1, comps)
    for G in probes:
        for I in combinations(range(N), m):
            if d_apply(out).value(I, G) != F.value(I, G):
                sectors = sorted({h for h, _ in G.homogeneous_parts() if (N - m + 1) + h == 0
                                  or (N - m) + h == 0})
                raise ResonanceError("dGamma = F fails on the resonant sector (probe %s)" % G,
                                     component=I, degree=sectors[0] if sectors else None)
    return out
