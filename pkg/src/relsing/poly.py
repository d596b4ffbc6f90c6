"""Sparse multivariate polynomials with exact rational coefficients."""

import re
from dataclasses import dataclass
from fractions import Fraction
from types import MappingProxyType

from .errors import ParseError, RingMismatch
from .orders import DEGREVLEX

IDENT_RE = re.compile(r"[a-zA-Z][a-zA-Z0-9_]*\Z")

DEFORMATION_PARAMETER = "t"
ARC_PARAMETER = "s"


@dataclass(frozen=True)
class PolyRing:
    """Ordered variable names plus names that must stay free for later use."""

    variables: tuple
    reserved: tuple = (DEFORMATION_PARAMETER, ARC_PARAMETER)

    def __post_init__(self):
        object.__setattr__(self, "variables", tuple(self.variables))
        object.__setattr__(self, "reserved", tuple(self.reserved))
        seen = set()
        for name in self.variables:
            if not isinstance(name, str) or not IDENT_RE.match(name):
                raise ValueError(f"invalid variable name {name!r}")
            if name in seen:
                raise ValueError(f"duplicate variable name {name!r}")
            if name in self.reserved:
                raise ValueError(f"variable name {name!r} is reserved")
            seen.add(name)

    @property
    def nvars(self):
        return len(self.variables)

    def index(self, name):
        try:
            return self.variables.index(name)
        except ValueError:
            raise KeyError(name) from None

    def extend(self, *names):
        """Ring with ``names`` appended; reserved names become usable."""
        reserved = tuple(r for r in self.reserved if r not in names)
        return PolyRing(self.variables + tuple(names), reserved)

    def zero(self):
        return Polynomial(self, {})

    def one(self):
        return self.constant(1)

    def constant(self, c):
        return Polynomial(self, {(0,) * self.nvars: c})

    def gen(self, name):
        e = [0] * self.nvars
        e[self.index(name)] = 1
        return Polynomial._raw(self, {tuple(e): Fraction(1)})

    def gens(self):
        return tuple(self.gen(v) for v in self.variables)

    def monomial(self, exps, coeff=1):
        return Polynomial(self, {tuple(exps): coeff})

    def parse(self, text):
        return parse_polynomial(text, self)

    def __str__(self):
        return "(" + ", ".join(self.variables) + ")"


def _coerce_scalar(c):
    if isinstance(c, Fraction):
        return c
    if isinstance(c, int):
        return Fraction(c)
    if isinstance(c, str):
        return Fraction(c)
    raise TypeError(f"not an exact scalar: {c!r}")


class Polynomial:
    """Immutable polynomial: a map from exponent tuples to nonzero Fractions."""

    __slots__ = ("ring", "_terms", "_hash")

    def __init__(self, ring, terms=None):
        n = ring.nvars
        clean = {}
        for exps, c in (terms or {}).items():
            exps = tuple(int(e) for e in exps)
            if len(exps) != n:
                raise ValueError("exponent vector length does not match the ring")
            if any(e < 0 for e in exps):
                raise ValueError("negative exponent")
            c = clean.get(exps, 0) + _coerce_scalar(c)
            if c:
                clean[exps] = c
            else:
                clean.pop(exps, None)
        self.ring = ring
        self._terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, ring, terms):
        # trusted constructor: terms already canonical
        p = cls.__new__(cls)
        p.ring = ring
        p._terms = terms
        p._hash = None
        return p

    # -- inspection ------------------------------------------------------

    @property
    def terms(self):
        return MappingProxyType(self._terms)

    def items(self):
        return self._terms.items()

    def __len__(self):
        return len(self._terms)

    def __bool__(self):
        return bool(self._terms)

    def is_zero(self):
        return not self._terms

    def is_constant(self):
        return all(not any(e) for e in self._terms)

    def constant_term(self):
        return self._terms.get((0,) * self.ring.nvars, Fraction(0))

    def coefficient(self, exps):
        return self._terms.get(tuple(exps), Fraction(0))

    def min_degree(self):
        if not self._terms:
            raise ValueError("zero polynomial has no degree")
        return min(sum(e) for e in self._terms)

    def degree(self):
        if not self._terms:
            raise ValueError("zero polynomial has no degree")
        return max(sum(e) for e in self._terms)

    def variables_used(self):
        n = self.ring.nvars
        used = [False] * n
        for e in self._terms:
            for i, v in enumerate(e):
                if v:
                    used[i] = True
        return tuple(name for name, u in zip(self.ring.variables, used) if u)

    def leading_term(self, order):
        if not self._terms:
            raise ValueError("zero polynomial has no leading term")
        lm = max(self._terms, key=order.key)
        return lm, self._terms[lm]

    # -- arithmetic ------------------------------------------------------

    def _check(self, other):
        if isinstance(other, Polynomial):
            if other.ring != self.ring:
                raise RingMismatch(f"ring mismatch: {self.ring} vs {other.ring}")
            return other
        if isinstance(other, (int, Fraction)):
            return self.ring.constant(other)
        return NotImplemented

    def __add__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        out = dict(self._terms)
        for e, c in other._terms.items():
            v = out.get(e)
            if v is None:
                out[e] = c
            else:
                v += c
                if v:
                    out[e] = v
                else:
                    del out[e]
        return Polynomial._raw(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial._raw(self.ring, {e: -c for e, c in self._terms.items()})

    def __pos__(self):
        return self

    def __sub__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        other = self._check(other)
        if other is NotImplemented:
            return other
        out = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                v = out.get(e, 0) + c1 * c2
                if v:
                    out[e] = v
                else:
                    out.pop(e, None)
        return Polynomial._raw(self.ring, out)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(1 / Fraction(other))
        return NotImplemented

    def __pow__(self, k):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            raise ValueError("negative exponent")
        result = self.ring.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def scale(self, c):
        c = _coerce_scalar(c)
        if not c:
            return self.ring.zero()
        return Polynomial._raw(self.ring, {e: v * c for e, v in self._terms.items()})

    def mul_term(self, exps, c):
        """Multiply by the single term ``c * x^exps``."""
        return Polynomial._raw(
            self.ring,
            {tuple(a + b for a, b in zip(e, exps)): v * c for e, v in self._terms.items()},
        )

    def diff(self, var):
        i = var if isinstance(var, int) else self.ring.index(var)
        out = {}
        for e, c in self._terms.items():
            k = e[i]
            if k:
                ne = e[:i] + (k - 1,) + e[i + 1:]
                out[ne] = c * k
        return Polynomial._raw(self.ring, out)

    def monic(self, order):
        _, lc = self.leading_term(order)
        return self.scale(1 / lc)

    # -- comparison ------------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.ring == other.ring and self._terms == other._terms
        if isinstance(other, (int, Fraction)):
            return self._terms == self.ring.constant(other)._terms
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring, frozenset(self._terms.items())))
        return self._hash

    # -- printing --------------------------------------------------------

    def format(self, order=DEGREVLEX):
        if not self._terms:
            return "0"
        names = self.ring.variables
        parts = []
        for e in sorted(self._terms, key=order.key, reverse=True):
            c = self._terms[e]
            mono = "*".join(
                (name if k == 1 else f"{name}^{k}") for name, k in zip(names, e) if k
            )
            neg = c < 0
            a = -c if neg else c
            if not mono:
                body = str(a)
            elif a == 1:
                body = mono
            else:
                body = f"{a}*{mono}"
            if not parts:
                parts.append(f"-{body}" if neg else body)
            else:
                parts.append(f" - {body}" if neg else f" + {body}")
        return "".join(parts)

    def __str__(self):
        return self.format()

    def __repr__(self):
        return f"Polynomial({self.format()!r}, ring={self.ring.variables})"


# -- parsing ---------------------------------------------------------------

_TOKEN_RE = re.compile(r"\s*(?:(\d+)|([a-zA-Z][a-zA-Z0-9_]*)|(.))")


def _tokenize(text):
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m.group(0).strip() == "":
            break
        col = m.start(m.lastindex) + 1
        if m.group(1):
            tokens.append(("num", int(m.group(1)), col))
        elif m.group(2):
            tokens.append(("id", m.group(2), col))
        else:
            ch = m.group(3)
            if ch not in "+-*^/()":
                raise ParseError(f"unexpected character {ch!r}", column=col)
            tokens.append((ch, ch, col))
        pos = m.end()
    tokens.append(("end", None, len(text) + 1))
    return tokens


class _ExprParser:
    def __init__(self, text, ring, column_offset=0, line=None):
        self.ring = ring
        self.line = line
        self.offset = column_offset
        try:
            self.tokens = _tokenize(text)
        except ParseError as err:
            raise ParseError(err.message, line=line, column=err.column + column_offset) from None
        self.i = 0

    def error(self, msg, tok=None):
        tok = tok or self.tokens[self.i]
        raise ParseError(msg, line=self.line, column=tok[2] + self.offset)

    def peek(self):
        return self.tokens[self.i][0]

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def parse(self):
        if self.peek() == "end":
            self.error("empty expression")
        p = self.expr()
        if self.peek() != "end":
            self.error(f"unexpected token {self.tokens[self.i][1]!r}")
        return p

    def expr(self):
        p = self.term()
        while self.peek() in ("+", "-"):
            op = self.take()[0]
            q = self.term()
            p = p + q if op == "+" else p - q
        return p

    def term(self):
        p = self.unary()
        while self.peek() == "*":
            self.take()
            p = p * self.unary()
        return p

    def unary(self):
        if self.peek() == "-":
            self.take()
            return -self.unary()
        if self.peek() == "+":
            self.take()
            return self.unary()
        return self.power()

    def power(self):
        base = self.atom()
        if self.peek() == "^":
            self.take()
            if self.peek() == "-":
                self.error("negative exponent")
            tok = self.take()
            if tok[0] != "num":
                self.error("exponent must be a non-negative integer literal", tok)
            base = base ** tok[1]
            if self.peek() == "^":
                self.error("chained exponents need parentheses")
        return base

    def atom(self):
        tok = self.take()
        kind = tok[0]
        if kind == "num":
            if self.peek() == "/":
                self.take()
                den = self.take()
                if den[0] != "num":
                    self.error("denominator of a rational literal must be an integer", den)
                if den[1] == 0:
                    self.error("zero denominator", den)
                return self.ring.constant(Fraction(tok[1], den[1]))
            return self.ring.constant(tok[1])
        if kind == "id":
            try:
                return self.ring.gen(tok[1])
            except KeyError:
                self.error(f"unknown variable {tok[1]!r}", tok)
        if kind == "(":
            p = self.expr()
            if self.peek() != ")":
                self.error("expected ')'")
            self.take()
            return p
        if kind == "end":
            self.error("unexpected end of expression", tok)
        self.error(f"unexpected token {tok[1]!r}", tok)


def parse_polynomial(text, ring, *, line=None, column_offset=0):
    """Parse ``text`` into a canonical polynomial over ``ring``.

    Grammar: identifiers, integer and ``p/q`` literals, ``+ - * ^`` and
    parentheses; ``^`` binds tightest and takes a literal exponent.
    """
    return _ExprParser(text, ring, column_offset, line).parse()


# -- composition -----------------------------------------------------------

def change_ring(p, ring):
    """Reinterpret ``p`` in ``ring`` by matching variable names."""
    if p.ring == ring:
        return p
    src = p.ring.variables
    idx = []
    for i, name in enumerate(src):
        if name in ring.variables:
            idx.append((i, ring.index(name)))
    present = {i for i, _ in idx}
    n = ring.nvars
    out = {}
    for e, c in p.items():
        if any(e[i] for i in range(len(src)) if i not in present):
            missing = [src[i] for i in range(len(src)) if i not in present and e[i]]
            raise RingMismatch(f"variable {missing[0]!r} does not exist in {ring}")
        ne = [0] * n
        for i, j in idx:
            ne[j] = e[i]
        out[tuple(ne)] = c
    return Polynomial._raw(ring, out)


def substitute(p, assignment, ring=None):
    """Replace variables by polynomials or scalars.

    ``assignment`` maps variable names of ``p.ring`` to images; images
    that are polynomials must live in the target ``ring`` (default
    ``p.ring``).  Unassigned variables map to the same-named variable of
    the target ring.
    """
    target = ring or p.ring
    for name in assignment:
        if name not in p.ring.variables:
            raise RingMismatch(f"cannot substitute unknown variable {name!r}")
    images = []
    for name in p.ring.variables:
        if name in assignment:
            img = assignment[name]
            if isinstance(img, Polynomial):
                if img.ring != target:
                    img = change_ring(img, target)
            else:
                img = target.constant(img)
        elif name in target.variables:
            img = target.gen(name)
        else:
            img = None
        images.append(img)

    cache = {}

    def power(i, k):
        key = (i, k)
        if key not in cache:
            cache[key] = images[i] ** k
        return cache[key]

    out = target.zero()
    for e, c in p.items():
        term = target.constant(c)
        for i, k in enumerate(e):
            if k:
                if images[i] is None:
                    raise RingMismatch(
                        f"variable {p.ring.variables[i]!r} has no image in {target}"
                    )
                term = term * power(i, k)
        out = out + term
    return out
