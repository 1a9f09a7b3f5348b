"""Coefficient ring Q[pi, L] with pi and L formal commuting symbols.

Purely rational values are kept as plain rationals (``gmpy2.mpq`` when
available, else ``fractions.Fraction``) so that the common case stays
fast; ``Scalar`` only appears when a power of ``pi`` or ``L`` (the log
of a scale ratio) is present.  Every operation returns
the normalized representative, so ``x == 0`` is a valid zero test for
both kinds.
"""

from fractions import Fraction
import re

try:
    from gmpy2 import mpq as Q, mpz as _mpz
    RATIONAL_TYPES = (int, Fraction, type(Q(0)), type(_mpz(0)))
except ImportError:  # pragma: no cover
    Q = Fraction
    RATIONAL_TYPES = (int, Fraction)

__all__ = ["Scalar", "PI", "LAMBDA", "Q", "RATIONAL_TYPES", "as_coeff", "coeff_str",
           "parse_coeff", "is_rational", "coeff_rational_part"]


def _norm(d):
    d = {k: v for k, v in d.items() if v != 0}
    if not d:
        return Q(0)
    if len(d) == 1 and (0, 0) in d:
        return d[(0, 0)]
    s = object.__new__(Scalar)
    s._c = d
    s._h = None
    return s


class Scalar:
    """Element of Q[pi, L] with at least one transcendental monomial.

    Parameters
    ----------
    coeffs : dict
        Map ``(a, b) -> rational`` for the monomial ``pi**a * L**b``.
    """

    __slots__ = ("_c", "_h")

    def __new__(cls, coeffs):
        d = {}
        for (a, b), v in coeffs.items():
            if a < 0 or b < 0:
                raise ValueError("negative exponent in Scalar")
            v = Q(v)
            if v:
                d[(int(a), int(b))] = d.get((int(a), int(b)), 0) + v
        return _norm(d)

    @property
    def coeffs(self):
        return dict(self._c)

    def _items(self):
        return self._c.items()

    def __add__(self, other):
        if isinstance(other, Scalar):
            d = dict(self._c)
            for k, v in other._c.items():
                d[k] = d.get(k, 0) + v
            return _norm(d)
        if isinstance(other, RATIONAL_TYPES):
            if other == 0:
                return self
            d = dict(self._c)
            d[(0, 0)] = d.get((0, 0), 0) + other
            return _norm(d)
        return NotImplemented

    __radd__ = __add__

    def __neg__(self):
        return _norm({k: -v for k, v in self._c.items()})

    def __sub__(self, other):
        if isinstance(other, (Scalar,) + RATIONAL_TYPES):
            return self + (-other)
        return NotImplemented

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, Scalar):
            d = {}
            for (a1, b1), v1 in self._c.items():
                for (a2, b2), v2 in other._c.items():
                    k = (a1 + a2, b1 + b2)
                    d[k] = d.get(k, 0) + v1 * v2
            return _norm(d)
        if isinstance(other, RATIONAL_TYPES):
            return _norm({k: v * other for k, v in self._c.items()})
        return NotImplemented

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, RATIONAL_TYPES):
            if other == 0:
                raise ZeroDivisionError("Scalar division by zero")
            return _norm({k: v / other for k, v in self._c.items()})
        if isinstance(other, Scalar):
            raise ArithmeticError("division by a transcendental Scalar is not supported")
        return NotImplemented

    def __pow__(self, n):
        if not isinstance(n, int) or n < 0:
            raise ValueError("Scalar powers must be non-negative integers")
        out = Q(1)
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, Scalar):
            return self._c == other._c
        if isinstance(other, RATIONAL_TYPES):
            return False
        return NotImplemented

    def __ne__(self, other):
        r = self.__eq__(other)
        return r if r is NotImplemented else not r

    def __hash__(self):
        if self._h is None:
            self._h = hash(frozenset(self._c.items()))
        return self._h

    def __bool__(self):
        return True

    def __repr__(self):
        return "Scalar(%s)" % coeff_str(self)

    def __str__(self):
        return coeff_str(self)

    def evaluate(self, pi_value, lam_value):
        """Numerical value for given numbers substituted for pi and L."""
        return sum(v * pi_value ** a * lam_value ** b for (a, b), v in self._c.items())


PI = Scalar({(1, 0): 1})
LAMBDA = Scalar({(0, 1): 1})


def as_coeff(x):
    """Normalize ints, Fractions, strings and Scalars to a ring element."""
    if isinstance(x, Scalar):
        return x
    if isinstance(x, bool):
        raise TypeError("bool is not a coefficient")
    if isinstance(x, RATIONAL_TYPES):
        return Q(x)
    if isinstance(x, str):
        return parse_coeff(x)
    raise TypeError("cannot use %r as a coefficient" % (x,))


def is_rational(c):
    return not isinstance(c, Scalar)


def coeff_rational_part(c):
    """Coefficient of pi^0 L^0."""
    if isinstance(c, Scalar):
        return c._c.get((0, 0), Q(0))
    return Q(c)


def _mono_str(a, b):
    parts = []
    if a:
        parts.append("pi" if a == 1 else "pi^%d" % a)
    if b:
        parts.append("L" if b == 1 else "L^%d" % b)
    return "*".join(parts)


def _frac_str(v):
    v = Q(v)
    n, d = int(v.numerator), int(v.denominator)
    return str(n) if d == 1 else "%d/%d" % (n, d)


def coeff_str(c):
    """Deterministic text form, e.g. ``-3/2``, ``pi``, ``(1+2*pi*L)``."""
    if not isinstance(c, Scalar):
        return _frac_str(c)
    terms = []
    for (a, b) in sorted(c._c):
        v = c._c[(a, b)]
        m = _mono_str(a, b)
        if not m:
            terms.append(_frac_str(v))
        elif v == 1:
            terms.append(m)
        elif v == -1:
            terms.append("-" + m)
        else:
            terms.append(_frac_str(v) + "*" + m)
    s = terms[0]
    for t in terms[1:]:
        s += t if t.startswith("-") else "+" + t
    return s if len(terms) == 1 else "(" + s + ")"


_TOK = re.compile(r"\s*(?:(\d+)|(pi|L)|(\^)|([-+*/()]))")


def parse_coeff(text):
    """Parse the output of ``coeff_str`` (and simple sums/products of it)."""
    toks = []
    pos = 0
    text = text.strip()
    while pos < len(text):
        m = _TOK.match(text, pos)
        if not m or m.end() == pos:
            raise ValueError("bad scalar %r at column %d" % (text, pos + 1))
        toks.append(m.group(1) or m.group(2) or m.group(3) or m.group(4))
        pos = m.end()
    val, i = _parse_sum(toks, 0, text)
    if i != len(toks):
        raise ValueError("trailing input in scalar %r" % text)
    return val


def _parse_sum(toks, i, text):
    sign = 1
    if i < len(toks) and toks[i] in "+-":
        sign = -1 if toks[i] == "-" else 1
        i += 1
    val, i = _parse_prod(toks, i, text)
    val = val * sign
    while i < len(toks) and toks[i] in ("+", "-"):
        op = toks[i]
        rhs, i = _parse_prod(toks, i + 1, text)
        val = val + rhs if op == "+" else val - rhs
    return val, i


def _parse_prod(toks, i, text):
    val, i = _parse_atom(toks, i, text)
    while i < len(toks) and toks[i] in ("*", "/"):
        op = toks[i]
        rhs, i = _parse_atom(toks, i + 1, text)
        if op == "*":
            val = val * rhs
        else:
            val = val / rhs
    return val, i


def _parse_atom(toks, i, text):
    if i >= len(toks):
        raise ValueError("unexpected end of scalar %r" % text)
    t = toks[i]
    if t == "(":
        val, i = _parse_sum(toks, i + 1, text)
        if i >= len(toks) or toks[i] != ")":
            raise ValueError("unbalanced parenthesis in %r" % text)
        i += 1
    elif t == "-":
        val, i = _parse_atom(toks, i + 1, text)
        return -val, i
    elif t.isdigit():
        val = Q(int(t))
        i += 1
    elif t == "pi":
        val = PI
        i += 1
    elif t == "L":
        val = LAMBDA
        i += 1
    else:
        raise ValueError("unexpected %r in scalar %r" % (t, text))
    if i < len(toks) and toks[i] == "^":
        if i + 1 >= len(toks) or not toks[i + 1].isdigit():
            raise ValueError("bad exponent in %r" % text)
        val = val ** int(toks[i + 1])
        i += 2
    return val, i
