"""Scheme-change systems, their composition and the Lie bracket.

A system is stored through leading functionals q_n on O_n (n >= 2, the
index set 1..n), each vanishing on F_{N-1}; the maps themselves are
recovered by ``functional_to_map``.  The composition Q'' = Q' * Q sums over
all partitions P of S:

    q''(G) = sum_P sum_{r_B} q'_{S/P}(d^{r} G_P |_0) prod_B q_B(x_B^{r_B} / r_B! G_B),

where q'_{S/P} is evaluation of a constant when S/P is a point and q_B is
1 on singleton blocks.  The bullet product keeps the partitions with a
single block of size 2 <= |S'| <= n - 1.
"""

import random
from itertools import permutations

from .cocycles import _internal_monomials, _split_factors
from .config import ConfigElem, PropagatorElem
from .distributions import Functional, point_functional, functional_to_map
from .errors import UsageError
from .partitions import diagonal_taylor, enumerate_partitions, quotient, quotient_by_subset
from .scalar import Q, coeff_str

__all__ = ["QFunctionalSystem", "identity_system", "random_system", "urg_compose", "bullet",
           "urg_bracket", "check_associativity", "check_identity", "check_jacobi",
           "check_antisymmetry"]


def _S(n):
    return tuple(range(1, n + 1))


class QFunctionalSystem:
    """Leading functionals {n: q_n} for 2 <= n <= n_max (missing entries are 0)."""

    def __init__(self, D, n_max, q=None, name=None):
        if n_max < 2 or n_max > 4:
            raise UsageError("systems are supported for 2 <= n_max <= 4")
        self.D = D
        self.n_max = n_max
        self.q = {}
        for n, F in (q or {}).items():
            if not 2 <= n <= n_max:
                continue
            if F.D != D or F.S != _S(n):
                raise UsageError("q_%d must live on O_%d in dimension %d" % (n, n, D))
            self.q[n] = F
        self.name = name

    def functional(self, n, S=None):
        """q_n transported to S (None when q_n = 0)."""
        F = self.q.get(n)
        if F is None:
            return None
        if S is None or tuple(S) == F.S:
            return F
        return F.transported(S)

    def threshold(self, n):
        return self.D * (n - 1) - 1

    def map(self, G):
        """Q_S G as a DeltaExpansion (leading term reconstruction)."""
        F = self.functional(len(G.S), G.S)
        if F is None:
            from .distributions import DeltaExpansion
            return DeltaExpansion(G.N)
        return functional_to_map(F, G)

    def values(self, probes):
        return [(len(G.S), self.q[len(G.S)](G) if len(G.S) in self.q else Q(0)) for G in probes]

    def check_conditions(self, probes):
        """(c1) symmetry, (c2) threshold, (c3) x-commutation; first failure or None."""
        for n, F in sorted(self.q.items()):
            ps = [G for G in probes if G.S == _S(n)]
            bad = F.check_threshold(ps)
            if bad is not None:
                return "c2", n, bad
            perms = [dict(zip(F.S, p)) for p in permutations(F.S)]
            for G in ps:
                v = F(G)
                for p in perms:
                    if F(G.relabel(p)) != v:
                        return "c1", n, G
                base = functional_to_map(F, G)
                for i in range(G.N):
                    if functional_to_map(F, G.mul_coordinate(i)) != base.mul_coordinate(i):
                        return "c3", n, G
        return None


def identity_system(D, n_max):
    return QFunctionalSystem(D, n_max, {}, name="identity")


def random_system(D, n_max, seed, symmetric=True):
    """Random symmetric system built from point functionals."""
    rng = random.Random(seed)
    q = {}
    for n in range(2, n_max + 1):
        N = D * (n - 1)
        point = [Q(rng.randint(1, 9), rng.randint(1, 5)) * (1 + 2 * i) for i in range(N)]
        weights = {-N - t: Q(rng.randint(-4, 4), rng.randint(1, 3)) for t in range(3)}
        F = point_functional(D, _S(n), point, weights, threshold=N - 1)
        q[n] = F.symmetrized() if symmetric else F
    return QFunctionalSystem(D, n_max, q, name="random%d" % seed)


def _order(F, GS, n):
    # F vanishes on dev.d <= thr, and x'^r lowers dev.d by |r|
    return GS.divergence_degree() - F.threshold - 1


def _block_value(outer, inners, G):
    """sum over product terms of G of outer(jets) * prod inner_B(x^r G_B).

    ``inners`` is a list of (B, functional on B); ``outer`` a functional on
    the quotient, or None when the quotient is a single point.
    """
    D = G.D
    S = G.S
    tot = Q(0)
    blocks = [B for B, _ in inners]
    for coeff, fmap in G.terms():
        # split off every block
        rest = dict(fmap)
        parts = []
        for B, F in inners:
            inside = {p: v for p, v in rest.items() if p[0] in B and p[1] in B}
            for p in inside:
                del rest[p]
            GB = ConfigElem.const(D, B, 1)
            for (j, k), (a, m) in inside.items():
                GB = GB * ConfigElem.propagator(D, B, j, k, PropagatorElem.monomial(D, a, m))
            parts.append((B, F, GB))
        GP = ConfigElem.const(D, S, coeff)
        for (j, k), (a, m) in rest.items():
            GP = GP * ConfigElem.propagator(D, S, j, k, PropagatorElem.monomial(D, a, m))
        states = [(GP, Q(1))]
        for B, F, GB in parts:
            order = GB.divergence_degree() - F.threshold - 1
            if order < 0:
                states = []
                break
            mons = _internal_monomials(D, B, order)
            vals = {}
            for r, xr in mons.items():
                v = F(xr * GB)
                if v != 0:
                    vals[r] = v
            new = []
            for H, w in states:
                if not vals:
                    break
                if H.is_zero():
                    continue
                jets = diagonal_taylor(H, B, order).coefficients
                for r, v in vals.items():
                    J = jets[r]
                    if not J.is_zero():
                        new.append((J, w * v))
            states = new
            if not states:
                break
        for H, w in states:
            if outer is None:
                val = H.evaluate(())
            else:
                val = outer(H)
            if val != 0:
                tot += w * val
    del blocks
    return tot


def _composite(D, n, qp, q):
    """Leading functional of (Q' * Q)_n."""
    S = _S(n)

    def ev(G):
        tot = Q(0)
        F = qp.functional(n)
        if F is not None:
            tot += F(G)
        F = q.functional(n)
        if F is not None:
            tot += F(G)
        for P in enumerate_partitions(S):
            blocks = [tuple(sorted(B)) for B in P.blocks if len(B) > 1]
            if not blocks or len(blocks) == 1 and len(blocks[0]) == n:
                continue
            inners = []
            for B in blocks:
                F = q.functional(len(B), B)
                if F is None:
                    break
                inners.append((B, F))
            else:
                quo = quotient(S, P)
                outer = qp.functional(len(quo), quo) if len(quo) > 1 else None
                if len(quo) > 1 and outer is None:
                    continue
                tot += _block_value(outer, inners, G)
        return tot
    return Functional(D, S, D * (n - 1) - 1, ev, name="compose%d" % n)


def urg_compose(qp, q, n_max=None):
    """The system Q'' = Q' * Q (Q applied first)."""
    if qp.D != q.D:
        raise UsageError("systems in different dimensions")
    n_max = min(qp.n_max, q.n_max) if n_max is None else n_max
    if n_max > min(qp.n_max, q.n_max):
        raise UsageError("n_max exceeds the operands")
    return QFunctionalSystem(q.D, n_max, {n: _composite(q.D, n, qp, q) for n in range(2, n_max + 1)},
                             name="compose")


def bullet(a, b, n_max=None):
    """The product a . b: single inner block S' with 2 <= |S'| <= n - 1."""
    if a.D != b.D:
        raise UsageError("elements in different dimensions")
    D = a.D
    n_max = min(a.n_max, b.n_max) if n_max is None else n_max
    out = {}
    for n in range(3, n_max + 1):
        S = _S(n)

        def ev(G, n=n, S=S):
            tot = Q(0)
            for m in range(2, n):
                from itertools import combinations
                for Sp in combinations(S, m):
                    inner = b.functional(m, Sp)
                    quo = quotient_by_subset(S, Sp)
                    outer = a.functional(len(quo), quo)
                    if inner is None or outer is None:
                        continue
                    tot += _block_value(outer, [(Sp, inner)], G)
            return tot
        out[n] = Functional(D, S, D * (n - 1) - 1, ev, name="bullet%d" % n)
    return QFunctionalSystem(D, n_max, out, name="bullet")


def _combine(a, b, ca, cb):
    n_max = min(a.n_max, b.n_max)
    q = {}
    for n in range(2, n_max + 1):
        Fa, Fb = a.functional(n), b.functional(n)
        parts = [F * c for F, c in ((Fa, ca), (Fb, cb)) if F is not None]
        if parts:
            F = parts[0] if len(parts) == 1 else parts[0] + parts[1]
            F.threshold = a.D * (n - 1) - 1
            q[n] = F
    return QFunctionalSystem(a.D, n_max, q)


def urg_bracket(a, b):
    """[a, b] = a . b - b . a."""
    return _combine(bullet(a, b), bullet(b, a), 1, -1)


def _differ(x, y, probes):
    for G in probes:
        n = len(G.S)
        if n > min(x.n_max, y.n_max):
            continue
        Fx, Fy = x.functional(n), y.functional(n)
        vx = Fx(G) if Fx is not None else Q(0)
        vy = Fy(G) if Fy is not None else Q(0)
        if vx != vy:
            return G, vx, vy
    return None


def check_identity(q, probes):
    """Q * 1 = Q = 1 * Q on probes; first failure or None."""
    one = identity_system(q.D, q.n_max)
    return _differ(urg_compose(q, one), q, probes) or _differ(urg_compose(one, q), q, probes)


def check_associativity(a, b, c, probes):
    """(a * b) * c = a * (b * c) on probes; first failure or None."""
    return _differ(urg_compose(urg_compose(a, b), c), urg_compose(a, urg_compose(b, c)), probes)


def check_antisymmetry(a, b, probes):
    return _differ(urg_bracket(a, b), _combine(urg_bracket(b, a), urg_bracket(b, a), -1, 0), probes)


def check_jacobi(a, b, c, probes):
    """[a,[b,c]] + [b,[c,a]] + [c,[a,b]] = 0 on probes."""
    t1 = urg_bracket(a, urg_bracket(b, c))
    t2 = urg_bracket(b, urg_bracket(c, a))
    t3 = urg_bracket(c, urg_bracket(a, b))
    s = _combine(_combine(t1, t2, 1, 1), t3, 1, 1)
    return _differ(s, identity_system(a.D, s.n_max), probes)


def system_to_json(sys, probes):
    return {"name": sys.name, "D": sys.D, "n_max": sys.n_max,
            "values": [[n, coeff_str(v)] for n, v in sys.values(probes)]}
