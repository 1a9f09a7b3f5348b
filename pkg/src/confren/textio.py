"""Parser for the ConfigElem text grammar.

    element := '0' | term (('+' | '-') term)*
    term    := scalar '*' factor ('*' factor)*
    factor  := 'G[' j ',' k ']' '(' polyOverQuadric ')'

Inside a factor the variable is ``x`` (D = 1) or ``x1 .. xD`` and ``q``
stands for the quadric x^2.  ``to_text`` in :mod:`confren.config` prints
the canonical form; parsing it back gives an equal element.
"""

import re

from .config import ConfigElem, PropagatorElem, to_text
from .errors import ParseError
from .scalar import parse_coeff, Q

__all__ = ["parse_element", "to_text", "parse_propagator"]

_FACTOR = re.compile(r"G\[\s*(\d+)\s*,\s*(\d+)\s*\]\(")


def _split_top(text, seps, offset):
    """Split at top-level separator characters, keeping signs; yields (piece, col)."""
    depth = 0
    start = 0
    out = []
    for i, ch in enumerate(text):
        if ch in "([":
            depth += 1
        elif ch in ")]":
            depth -= 1
            if depth < 0:
                raise ParseError("unbalanced bracket", 1, offset + i + 1)
        elif depth == 0 and ch in seps and i > start:
            prev = text[:i].rstrip()
            if prev and prev[-1] not in "*/^(+-":
                out.append((text[start:i], offset + start))
                start = i if ch == "-" else i + 1
    if depth != 0:
        raise ParseError("unbalanced bracket", 1, offset + len(text))
    out.append((text[start:], offset + start))
    return out


def parse_element(text, D, S, line=1):
    """Parse text into a ConfigElem on index set S in dimension D."""
    S = tuple(sorted(S))
    stripped = text.strip()
    if not stripped:
        raise ParseError("empty element", line, 1)
    lead = len(text) - len(text.lstrip())
    if stripped == "0":
        return ConfigElem.zero(D, S)
    total = ConfigElem.zero(D, S)
    try:
        pieces = _split_top(stripped, "+-", lead)
    except ParseError as e:
        raise ParseError(str(e).split(" (line")[0], line, e.column)
    for piece, col in pieces:
        total = total + _parse_term(piece, D, S, line, col)
    return total


def _parse_term(piece, D, S, line, col):
    s = piece.strip()
    col += len(piece) - len(piece.lstrip())
    m = re.search(r"\*\s*G\[", s)
    if not m:
        raise ParseError("term must be scalar '*' factor", line, col + 1)
    scal_txt = s[:m.start()].strip()
    if scal_txt.startswith("+"):
        scal_txt = scal_txt[1:]
    try:
        coeff = parse_coeff(scal_txt)
    except ValueError as e:
        raise ParseError("bad scalar: %s" % e, line, col + 1)
    out = ConfigElem.const(D, S, coeff)
    rest = s[m.start() + 1:].lstrip()
    pos = col + (len(s) - len(rest))
    while rest:
        fm = _FACTOR.match(rest)
        if not fm:
            raise ParseError("expected factor G[j,k](...)", line, pos + 1)
        j, k = int(fm.group(1)), int(fm.group(2))
        depth = 1
        i = fm.end()
        while i < len(rest) and depth:
            if rest[i] == "(":
                depth += 1
            elif rest[i] == ")":
                depth -= 1
            i += 1
        if depth:
            raise ParseError("unterminated factor", line, pos + len(rest))
        inner = rest[fm.end():i - 1]
        if j not in S or k not in S or j == k:
            raise ParseError("pair [%d,%d] not valid for S=%r" % (j, k, S), line, pos + 1)
        try:
            prop = parse_propagator(inner, D)
        except ValueError as e:
            raise ParseError("bad factor content: %s" % e, line, pos + fm.end() + 1)
        out = out * ConfigElem.propagator(D, S, j, k, prop)
        rest2 = rest[i:].lstrip()
        if rest2:
            if not rest2.startswith("*"):
                raise ParseError("expected '*' between factors", line, pos + len(rest) - len(rest2) + 1)
            rest2 = rest2[1:].lstrip()
        pos += len(rest) - len(rest2)
        rest = rest2
    return out


_PTOK = re.compile(r"\s*(?:(\d+)|(x\d*)|(q)|(\^)|([-+*/()]))")


def parse_propagator(text, D):
    """Parse an element of the propagator algebra in dimension D."""
    toks = []
    pos = 0
    text = text.strip()
    while pos < len(text):
        m = _PTOK.match(text, pos)
        if not m or m.end() == pos:
            raise ValueError("unexpected character at %d in %r" % (pos + 1, text))
        toks.append(next(g for g in m.groups() if g is not None))
        pos = m.end()
    p = _PParser(toks, D, text)
    val = p.expr()
    if p.i != len(toks):
        raise ValueError("trailing input in %r" % text)
    return val


def _const(D, c):
    return PropagatorElem(D, {((0,) * D, 0): c})


def _qpow(D, k):
    if D == 1:
        return PropagatorElem(1, {((2 * k,), 0) if k >= 0 else ((0,), -2 * k): 1})
    if k < 0:
        return PropagatorElem(D, {((0,) * D, -k): 1})
    out = _const(D, 1)
    q = PropagatorElem(D, {(tuple(2 if i == t else 0 for i in range(D)), 0): 1 for t in range(D)})
    for _ in range(k):
        out = out * q
    return out


def _inverse(p):
    """Inverse of a monomial unit of the propagator algebra."""
    D = p.D
    if len(p.terms) != 1:
        if D > 1 and all(m == 0 for (_, m) in p.terms):
            deg = sum(next(iter(p.terms))[0])
            if deg % 2 == 0:
                qk = _qpow(D, deg // 2)
                e0 = next(iter(qk.terms))
                c = p.terms.get(e0)
                if c is not None and qk * c == p:
                    return _qpow(D, -(deg // 2)) * (1 / Q(c))
        raise ValueError("division only by monomials in q (or x for D=1)")
    (a, m), c = next(iter(p.terms.items()))
    if D == 1:
        e = a[0] - m
        return PropagatorElem(1, {((0,), e) if e >= 0 else ((-e,), 0): 1 / Q(c)})
    if any(a):
        raise ValueError("division only by powers of q")
    return _qpow(D, m) * (1 / Q(c))


class _PParser:
    def __init__(self, toks, D, text):
        self.toks, self.i, self.D, self.text = toks, 0, D, text

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else None

    def expr(self):
        sign = 1
        if self.peek() in ("+", "-"):
            sign = -1 if self.toks[self.i] == "-" else 1
            self.i += 1
        val = self.term() * sign
        while self.peek() in ("+", "-"):
            op = self.toks[self.i]
            self.i += 1
            rhs = self.term()
            val = val + (rhs if op == "+" else rhs * -1)
        return val

    def term(self):
        val = self.factor()
        while self.peek() in ("*", "/"):
            op = self.toks[self.i]
            self.i += 1
            rhs = self.factor()
            val = val * rhs if op == "*" else val * _inverse(rhs)
        return val

    def factor(self):
        t = self.peek()
        D = self.D
        if t is None:
            raise ValueError("unexpected end in %r" % self.text)
        self.i += 1
        if t == "(":
            val = self.expr()
            if self.peek() != ")":
                raise ValueError("missing ')' in %r" % self.text)
            self.i += 1
        elif t == "-":
            return self.factor() * -1
        elif t.isdigit():
            val = _const(D, Q(int(t)))
        elif t == "q":
            val = _qpow(D, 1)
        elif t.startswith("x"):
            idx = 1 if t == "x" else int(t[1:])
            if (t == "x" and D != 1) or not 1 <= idx <= D:
                raise ValueError("variable %s not valid for D=%d" % (t, D))
            a = [0] * D
            a[idx - 1] = 1
            val = PropagatorElem(D, {(tuple(a), 0): 1})
        else:
            raise ValueError("unexpected %r in %r" % (t, self.text))
        if self.peek() == "^":
            self.i += 1
            neg = False
            if self.peek() == "-":
                neg = True
                self.i += 1
            t2 = self.peek()
            if t2 is None or not t2.isdigit():
                raise ValueError("bad exponent in %r" % self.text)
            self.i += 1
            k = int(t2)
            base = val
            val = _const(D, 1)
            for _ in range(k):
                val = val * base
            if neg:
                val = _inverse(val)
        return val
