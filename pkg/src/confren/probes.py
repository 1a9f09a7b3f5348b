"""Deterministic probe sets and random elements."""

import random
from itertools import product

from .config import ConfigElem, layout
from .poly import Poly, monomials_upto
from .scalar import Q

__all__ = ["random_element", "monomial_probes", "probe_set", "random_rational_point"]


def _rng(seed):
    return seed if isinstance(seed, random.Random) else random.Random(seed)


def random_element(D, S, seed, terms=3, max_degree=3, max_pole=2, coeff_range=5):
    """Random element of O_S: sum of monomials over products of pole factors."""
    rng = _rng(seed)
    lay = layout(D, tuple(sorted(S)))
    out = ConfigElem.zero(D, lay.S)
    for _ in range(terms):
        c = Q(rng.randint(-coeff_range, coeff_range), rng.randint(1, 3))
        if c == 0:
            continue
        deg = rng.randint(0, max_degree)
        e = [0] * lay.N
        for _ in range(deg):
            if lay.N:
                e[rng.randrange(lay.N)] += 1
        poles = [rng.randint(0, max_pole) for _ in lay.pairs]
        out = out + ConfigElem(lay, Poly.monomial(tuple(e), c), poles)
    return out


def monomial_probes(D, S, max_degree=4, max_pole=3):
    """All x^a / prod b_jk^m_jk with |a| <= max_degree and m_jk <= max_pole."""
    lay = layout(D, tuple(sorted(S)))
    seen = set()
    out = []
    for poles in product(range(max_pole + 1), repeat=len(lay.pairs)):
        for a in monomials_upto(lay.N, max_degree):
            G = ConfigElem(lay, Poly.monomial(a, 1), poles)
            if G not in seen:
                seen.add(G)
                out.append(G)
    return out


def probe_set(D, S, max_degree=4, max_pole=3, n_random=50, seed=0):
    """Monomial probes plus ``n_random`` random elements (deterministic in seed)."""
    rng = _rng(seed)
    out = monomial_probes(D, S, max_degree, max_pole)
    for _ in range(n_random):
        out.append(random_element(D, S, rng, terms=3, max_degree=max_degree, max_pole=max_pole))
    return out


def random_rational_point(N, seed, lo=-7, hi=7):
    rng = _rng(seed)
    return [Q(rng.randint(lo, hi), rng.randint(1, 5)) for _ in range(N)]
