"""Truncated power-series arcs and the valuation test for integral dependence.

A series is known exactly below its truncation order ``trunc``; nothing
is known about higher coefficients.  Valuations that cannot be read off
below ``trunc`` are reported as lower bounds, never as infinity.
"""

from dataclasses import dataclass
from fractions import Fraction

from .errors import RingMismatch

DEFAULT_TRUNC = 50


class TruncatedSeries:
    __slots__ = ("coeffs", "trunc")

    def __init__(self, coeffs, trunc):
        if trunc < 1:
            raise ValueError("truncation order must be positive")
        self.trunc = trunc
        self.coeffs = {}
        for k, c in coeffs.items():
            if k < 0:
                raise ValueError("negative exponent in a power series")
            c = Fraction(c)
            if c and k < trunc:
                self.coeffs[k] = c

    @classmethod
    def constant(cls, c, trunc):
        return cls({0: c}, trunc)

    @classmethod
    def from_polynomial(cls, p, trunc):
        """Series of a univariate polynomial (ring with exactly one variable)."""
        if p.ring.nvars != 1:
            raise RingMismatch("arc components must be univariate")
        return cls({e[0]: c for e, c in p.items()}, trunc)

    def __add__(self, other):
        trunc = min(self.trunc, other.trunc)
        out = dict(self.coeffs)
        for k, c in other.coeffs.items():
            out[k] = out.get(k, 0) + c
        return TruncatedSeries(out, trunc)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return TruncatedSeries({k: c * other for k, c in self.coeffs.items()}, self.trunc)
        trunc = min(self.trunc, other.trunc)
        out = {}
        for i, a in self.coeffs.items():
            for j, b in other.coeffs.items():
                if i + j < trunc:
                    out[i + j] = out.get(i + j, 0) + a * b
        return TruncatedSeries(out, trunc)

    __rmul__ = __mul__

    def __pow__(self, k):
        result = TruncatedSeries.constant(1, self.trunc)
        for _ in range(k):
            result = result * self
        return result

    def __eq__(self, other):
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return self.trunc == other.trunc and self.coeffs == other.coeffs

    def __repr__(self):
        if not self.coeffs:
            return f"O(s^{self.trunc})"
        parts = [f"{c}*s^{k}" for k, c in sorted(self.coeffs.items())]
        return " + ".join(parts) + f" + O(s^{self.trunc})"


@dataclass(frozen=True)
class Valuation:
    """Order of vanishing: exact when ``exact``, else only ``order <= nu``."""

    order: int
    exact: bool = True

    def __str__(self):
        return str(self.order) if self.exact else f">={self.order}"


def valuation(ts):
    if ts.coeffs:
        return Valuation(min(ts.coeffs), True)
    return Valuation(ts.trunc, False)


class Arc:
    """A curve germ s -> (g_1(s), ..., g_m(s)) through the origin."""

    def __init__(self, components, trunc=None):
        comps = list(components)
        if not comps:
            raise ValueError("arc without components")
        if trunc is None:
            trunc = min(c.trunc for c in comps)
        comps = [TruncatedSeries(c.coeffs, trunc) for c in comps]
        for i, c in enumerate(comps):
            if c.coeffs.get(0):
                raise ValueError(f"arc component {i + 1} does not pass through the origin")
        self.components = tuple(comps)
        self.trunc = trunc

    @classmethod
    def from_polynomials(cls, polys, trunc=DEFAULT_TRUNC):
        return cls([TruncatedSeries.from_polynomial(p, trunc) for p in polys], trunc)

    @classmethod
    def monomial(cls, coeff_exps, trunc=DEFAULT_TRUNC):
        """Arc from ``[(c, k), ...]`` meaning component i = c * s^k (c=0 for zero)."""
        return cls([TruncatedSeries({k: c} if c else {}, trunc) for c, k in coeff_exps], trunc)

    def __len__(self):
        return len(self.components)

    def __repr__(self):
        return f"Arc({', '.join(repr(c) for c in self.components)})"


def compose_poly_arc(p, arc):
    """The series p(arc(s)), exact below the arc's truncation order."""
    if p.ring.nvars != len(arc):
        raise RingMismatch(
            f"polynomial has {p.ring.nvars} variables, arc has {len(arc)} components"
        )
    trunc = arc.trunc
    cache = {}

    def power(i, k):
        if (i, k) not in cache:
            cache[(i, k)] = arc.components[i] ** k
        return cache[(i, k)]

    out = TruncatedSeries({}, trunc)
    for exps, c in p.items():
        term = TruncatedSeries.constant(c, trunc)
        for i, k in enumerate(exps):
            if k:
                term = term * power(i, k)
                if not term.coeffs:
                    break
        out = out + term
    return out


HOLDS = "holds"
FAILS = "fails"
INDETERMINATE = "indeterminate"


@dataclass(frozen=True)
class ValuationTest:
    strict: str
    weak: str
    h_value: Valuation
    values: tuple
    inf: Valuation
    undecided: tuple = ()

    @property
    def refutes_strict(self):
        return self.strict == FAILS

    @property
    def refutes_weak(self):
        return self.weak == FAILS


def _infimum(values):
    exact = [v.order for v in values if v.exact]
    if exact:
        # exact valuations are always below the truncation order
        return Valuation(min(exact), True)
    return Valuation(min(v.order for v in values), False)


def valuation_criterion_test(h, gens, arc):
    """Compare nu(h o arc) with inf nu(g_i o arc).

    ``strict`` is ``nu(h) > inf``, ``weak`` is ``nu(h) >= inf``.  A
    comparison is indeterminate only when neither side is known exactly;
    ``undecided`` then lists the generators (1-based) whose valuation is
    only a bound, so the caller can raise the truncation order.
    """
    if not gens:
        raise ValueError("valuation test needs at least one generator")
    for g in gens:
        if g.ring.nvars != h.ring.nvars:
            raise RingMismatch("h and generators have different arity")
    vh = valuation(compose_poly_arc(h, arc))
    values = tuple(valuation(compose_poly_arc(g, arc)) for g in gens)
    inf = _infimum(values)

    if vh.exact and inf.exact:
        strict = HOLDS if vh.order > inf.order else FAILS
        weak = HOLDS if vh.order >= inf.order else FAILS
    elif vh.exact:
        # inf is at least trunc, strictly above any exact valuation
        strict = weak = FAILS
    elif inf.exact:
        strict = weak = HOLDS
    else:
        strict = weak = INDETERMINATE

    undecided = ()
    if strict == INDETERMINATE:
        undecided = tuple(i + 1 for i, v in enumerate(values) if not v.exact)
    return ValuationTest(strict, weak, vh, values, inf, undecided)

