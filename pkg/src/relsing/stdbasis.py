"""Buchberger and Mora standard bases, normal forms, quotient dimensions.

Global orders use ordinary multivariate division and Buchberger's
algorithm.  Local orders compute in the localisation at the origin:
bases come from Lazard's homogenization, and reduction is Mora's normal
form with ecart-minimal reducer selection, so a polynomial reduces to
zero iff it lies in the ideal generated in the local ring.
"""

from dataclasses import dataclass, field
from fractions import Fraction

from .errors import BoundExceeded, MathPreconditionError, RingMismatch
from .orders import NEGDEGREVLEX
from .poly import Polynomial

DEFAULT_DIM_BOUND = 10000


def _divides(a, b):
    for x, y in zip(a, b):
        if x > y:
            return False
    return True


def _lcm(a, b):
    return tuple(x if x > y else y for x, y in zip(a, b))


def _coprime(a, b):
    for x, y in zip(a, b):
        if x and y:
            return False
    return True


def _sub_multiple(h, c, shift, g):
    """In place: h -= c * x^shift * g."""
    for e, v in g.items():
        ne = tuple(a + b for a, b in zip(e, shift))
        w = h.get(ne)
        if w is None:
            h[ne] = -c * v
        else:
            w -= c * v
            if w:
                h[ne] = w
            else:
                del h[ne]


class _Entry:
    """A reducer: terms plus cached lead data."""

    __slots__ = ("terms", "lm", "lc", "ecart")

    def __init__(self, terms, order):
        self.terms = terms
        self.lm = max(terms, key=order.key)
        self.lc = terms[self.lm]
        deg = order.degree
        self.ecart = max(deg(e) for e in terms) - deg(self.lm)


def leading_term(p, order):
    """Order-maximal term ``(exponents, coefficient)`` of a nonzero ``p``."""
    if p.is_zero():
        raise MathPreconditionError("zero polynomial has no leading term")
    return p.leading_term(order)


def _global_reduce(h, entries, order):
    """Full division remainder of the term dict ``h``."""
    key = order.key
    rem = {}
    while h:
        lm = max(h, key=key)
        c = h[lm]
        for g in entries:
            if _divides(g.lm, lm):
                shift = tuple(a - b for a, b in zip(lm, g.lm))
                _sub_multiple(h, c / g.lc, shift, g.terms)
                break
        else:
            rem[lm] = c
            del h[lm]
    return rem


def _noether_degree(leads, nvars):
    """Least D with every monomial of total degree D among the multiples
    of ``leads``, or None.

    Such leads come from ideal elements whose other terms have higher
    degree, so m^D lies in I + m^(D+1), hence in I by Nakayama.
    """
    caps = []
    for i in range(nvars):
        powers = [m[i] for m in leads if all(v == 0 for k, v in enumerate(m) if k != i)]
        if not powers:
            return None
        caps.append(min(powers))
    for d in range(min(caps), sum(caps) - nvars + 2):
        if all(any(_divides(m, e) for m in leads) for e in _monomials_of_degree(nvars, d)):
            return d
    return None


def _monomials_of_degree(nvars, d):
    if nvars == 1:
        yield (d,)
        return
    for k in range(d, -1, -1):
        for rest in _monomials_of_degree(nvars - 1, d - k):
            yield (k,) + rest


def _truncate(h, noether):
    for e in [e for e in h if sum(e) >= noether]:
        del h[e]


def _mora_reduce(h, entries, order, noether=None):
    """Mora's weak normal form of the term dict ``h``.

    The reducer set grows with intermediate results whose ecart is too
    small; this is what guarantees termination for local orders.  With
    ``noether`` set, terms of that total degree and above lie in the
    ideal and are discarded, which bounds the work.
    """
    key = order.key
    deg = order.degree
    reducers = list(entries)
    if noether is not None:
        _truncate(h, noether)
    while h:
        lm = max(h, key=key)
        best = None
        for g in reducers:
            if _divides(g.lm, lm) and (best is None or g.ecart < best.ecart):
                best = g
                if best.ecart == 0:
                    break
        if best is None:
            break
        ecart_h = max(deg(e) for e in h) - deg(lm)
        if best.ecart > ecart_h:
            reducers.append(_Entry(dict(h), order))
        c = h[lm]
        shift = tuple(a - b for a, b in zip(lm, best.lm))
        _sub_multiple(h, c / best.lc, shift, best.terms)
        if noether is not None:
            _truncate(h, noether)
    return h


def _local_noether(entries, order, nvars):
    if order.weights is not None:
        return None
    return _noether_degree([e.lm for e in entries], nvars)


def _check_basis(p, basis):
    for g in basis:
        if g.ring != p.ring:
            raise RingMismatch("basis and polynomial live in different rings")
        if g.is_zero():
            raise MathPreconditionError("zero polynomial in a basis")


def normal_form(p, basis, order=NEGDEGREVLEX):
    """Reduce ``p`` against ``basis``.

    Global orders return the division remainder (no term divisible by a
    basis leading monomial).  Local orders return Mora's weak normal form,
    which is zero iff ``p`` lies in the local ideal when ``basis`` is a
    standard basis.
    """
    _check_basis(p, basis)
    entries = [_Entry(dict(g.terms), order) for g in basis]
    h = dict(p.terms)
    if order.is_local:
        out = _mora_reduce(h, entries, order, _local_noether(entries, order, p.ring.nvars))
    else:
        out = _global_reduce(h, entries, order)
    return Polynomial._raw(p.ring, out)


def _spoly(f, g):
    lcm = _lcm(f.lm, g.lm)
    h = {}
    sf = tuple(a - b for a, b in zip(lcm, f.lm))
    sg = tuple(a - b for a, b in zip(lcm, g.lm))
    _sub_multiple(h, -1 / f.lc, sf, f.terms)
    _sub_multiple(h, 1 / g.lc, sg, g.terms)
    return h


def _monic_terms(terms, lc):
    inv = 1 / lc
    return {e: c * inv for e, c in terms.items()}


@dataclass(frozen=True)
class StandardBasis:
    order: object
    generators: tuple
    basis: tuple
    leading_ideal: tuple = field(default=())

    @property
    def ring(self):
        return self.generators[0].ring

    def normal_form(self, p):
        return normal_form(p, list(self.basis), self.order)

    def contains(self, p):
        return ideal_membership(p, self)

    def dimension(self, bound=DEFAULT_DIM_BOUND):
        return quotient_dimension(self, bound)

    def spolys_reduce_to_zero(self):
        """Standard-basis criterion checked pair by pair."""
        entries = [_Entry(dict(g.terms), self.order) for g in self.basis]
        for j in range(len(entries)):
            for i in range(j):
                h = _spoly(entries[i], entries[j])
                if self.order.is_local:
                    noether = _local_noether(entries, self.order, self.ring.nvars)
                    h = _mora_reduce(h, entries, self.order, noether)
                else:
                    h = _global_reduce(h, entries, self.order)
                if h:
                    return False
        return True


def _update_pairs(pairs, entries, k):
    """Gebauer-Moeller update after appending ``entries[k]``."""
    lmk = entries[k].lm
    kept = []
    for (i, j, lcm) in pairs:
        if (_divides(lmk, lcm)
                and _lcm(entries[i].lm, lmk) != lcm
                and _lcm(entries[j].lm, lmk) != lcm):
            continue
        kept.append((i, j, lcm))

    groups = {}
    for i in range(k):
        groups.setdefault(_lcm(entries[i].lm, lmk), []).append(i)
    lcms = sorted(groups, key=sum)
    minimal = []
    for L in lcms:
        if not any(_divides(M, L) for M in minimal):
            minimal.append(L)
    for L in minimal:
        members = groups[L]
        if any(_coprime(entries[i].lm, lmk) for i in members):
            continue
        kept.append((min(members), k, L))
    return kept


class _HomogenizedOrder:
    """Order on (x, h) for Lazard's method: degree first, then ``base`` on x.

    The extra last coordinate is the homogenizing variable, of degree 1.
    """

    is_local = False

    def __init__(self, base):
        self.base = base

    def degree(self, exps):
        return self.base.degree(exps[:-1]) + exps[-1]

    def key(self, exps):
        return (self.degree(exps), self.base.key(exps[:-1]))


def _buchberger(entries, order):
    """Complete ``entries`` in place under the normal strategy."""
    if order.is_local:
        reduce = _mora_reduce

        def pair_key(pair):
            i, j, lcm = pair
            return (order.degree(lcm), i, j)
    else:
        reduce = _global_reduce

        def pair_key(pair):
            i, j, lcm = pair
            return (order.key(lcm), i, j)

    pairs = []
    for k in range(len(entries)):
        pairs = _update_pairs(pairs, entries, k)
    while pairs:
        idx = min(range(len(pairs)), key=lambda n: pair_key(pairs[n]))
        i, j, _ = pairs.pop(idx)
        h = reduce(_spoly(entries[i], entries[j]), entries, order)
        if h:
            e = _Entry(h, order)
            entries.append(_Entry(_monic_terms(h, e.lc), order))
            pairs = _update_pairs(pairs, entries, len(entries) - 1)
    return entries


def _minimalise(entries):
    """Drop elements whose lead is divisible by another lead."""
    chosen = []
    for n, e in enumerate(entries):
        redundant = False
        for m, f in enumerate(entries):
            if m == n:
                continue
            if _divides(f.lm, e.lm) and (f.lm != e.lm or m < n):
                redundant = True
                break
        if not redundant:
            chosen.append(e)
    return chosen


def _lazard_basis(term_dicts, order):
    """Standard basis for a local order via homogenization.

    A Groebner basis of the homogenized generators under the
    degree-then-local order dehomogenizes to a standard basis.  This
    avoids the long ecart cascades Mora's completion can run into when
    the quotient is not finite dimensional.
    """
    horder = _HomogenizedOrder(order)
    entries = []
    for terms in term_dicts:
        top = max(order.degree(e) for e in terms)
        hterms = {e + (top - order.degree(e),): c for e, c in terms.items()}
        entries.append(_Entry(hterms, horder))
    _buchberger(entries, horder)
    out = []
    for e in _minimalise(entries):
        # distinct x-parts within a homogeneous polynomial: no collisions
        terms = {k[:-1]: c for k, c in e.terms.items()}
        out.append(_Entry(terms, order))
    return _minimalise(out)


def standard_basis(gens, order=NEGDEGREVLEX):
    """Complete ``gens`` to a Groebner (global) or standard (local) basis.

    Global orders run Buchberger with the normal strategy (smallest lcm
    first, ties by basis index) and return the reduced basis.  Local
    orders use Lazard's homogenization, so the output is a minimal
    standard basis whose normal forms are Mora normal forms.
    """
    gens = list(gens)
    if not gens:
        raise MathPreconditionError("empty generator list")
    ring = gens[0].ring
    for g in gens:
        if g.ring != ring:
            raise RingMismatch("generators live in different rings")
        if g.is_zero():
            raise MathPreconditionError("zero polynomial in generator list")

    if order.is_local:
        chosen = _lazard_basis([dict(g.terms) for g in gens], order)
        chosen = [_Entry(_monic_terms(e.terms, e.lc), order) for e in chosen]
    else:
        entries = []
        for g in gens:
            e = _Entry(dict(g.terms), order)
            entries.append(_Entry(_monic_terms(e.terms, e.lc), order))
        chosen = _minimalise(_buchberger(entries, order))
        # reduced Groebner basis: tails reduced against the other elements
        reduced = []
        for n, e in enumerate(chosen):
            others = chosen[:n] + chosen[n + 1:]
            tail = dict(e.terms)
            del tail[e.lm]
            r = _global_reduce(tail, others, order)
            r[e.lm] = Fraction(1)
            reduced.append(_Entry(r, order))
        chosen = reduced

    chosen.sort(key=lambda e: order.key(e.lm), reverse=True)
    basis = tuple(Polynomial._raw(ring, e.terms) for e in chosen)
    leading = tuple(e.lm for e in chosen)
    return StandardBasis(order, tuple(gens), basis, leading)


def _same_monomial_ideal(a, b):
    return (all(any(_divides(m, x) for m in b) for x in a)
            and all(any(_divides(m, x) for m in a) for x in b))


def ideal_membership(p, sb):
    """Whether ``p`` lies in the ideal of ``sb``.

    Globally this is a zero division remainder.  Locally, ``p`` is a
    member iff adjoining it leaves the leading ideal unchanged; this
    decides the same question as a zero Mora normal form.
    """
    if p.ring != sb.ring:
        raise RingMismatch("polynomial and basis live in different rings")
    if p.is_zero():
        return True
    if not sb.order.is_local:
        return normal_form(p, list(sb.basis), sb.order).is_zero()
    if any(not any(m) for m in sb.leading_ideal):
        return True
    bigger = _lazard_basis([dict(g.terms) for g in sb.basis] + [dict(p.terms)], sb.order)
    return _same_monomial_ideal(sb.leading_ideal, [e.lm for e in bigger])


@dataclass(frozen=True)
class QuotientDim:
    """Outcome of a dimension count: finite, infinite, or over the bound."""

    kind: str
    count: int = None

    @classmethod
    def finite(cls, n):
        return cls("finite", n)

    @property
    def is_finite(self):
        return self.kind == "finite"

    @property
    def is_infinite(self):
        return self.kind == "infinite"

    def __eq__(self, other):
        if isinstance(other, int) and not isinstance(other, bool):
            return self.is_finite and self.count == other
        if isinstance(other, QuotientDim):
            return (self.kind, self.count) == (other.kind, other.count)
        return NotImplemented

    def __hash__(self):
        # finite values compare equal to ints, so they must hash alike
        return hash(self.count) if self.is_finite else hash(self.kind)

    def __str__(self):
        if self.is_finite:
            return str(self.count)
        return self.kind.replace("_", "-")

    def value(self):
        """The count, raising on anything but a finite outcome."""
        if self.kind == "exceeds_bound":
            raise BoundExceeded("quotient dimension exceeds the configured bound")
        if not self.is_finite:
            raise MathPreconditionError("quotient dimension is infinite")
        return self.count


INFINITE = QuotientDim("infinite")
EXCEEDS_BOUND = QuotientDim("exceeds_bound")


def count_standard_monomials(leading, nvars, bound=DEFAULT_DIM_BOUND):
    """Monomials outside the monomial ideal generated by ``leading``."""
    caps = []
    for i in range(nvars):
        powers = [m[i] for m in leading
                  if all(v == 0 for k, v in enumerate(m) if k != i)]
        if not powers:
            return INFINITE
        caps.append(min(powers))
    if any(not any(m) for m in leading):
        return QuotientDim.finite(0)

    count = 0
    exps = [0] * nvars

    def outside():
        for m in leading:
            if _divides(m, exps):
                return False
        return True

    def walk(i):
        nonlocal count
        if i == nvars:
            count += 1
            if count > bound:
                raise BoundExceeded
            return
        for k in range(caps[i]):
            exps[i] = k
            # the complement of a monomial ideal is closed under division,
            # so once the prefix is inside the ideal every larger k is too
            if not outside():
                break
            walk(i + 1)
        exps[i] = 0

    try:
        walk(0)
    except BoundExceeded:
        return EXCEEDS_BOUND
    return QuotientDim.finite(count)


def quotient_dimension(sb, bound=DEFAULT_DIM_BOUND):
    """Dimension of the quotient by the ideal of ``sb``.

    For a local order this is the dimension of the local algebra at the
    origin; for a global order, of the polynomial quotient ring.
    """
    return count_standard_monomials(sb.leading_ideal, sb.ring.nvars, bound)


def local_dimension(gens, bound=DEFAULT_DIM_BOUND, order=NEGDEGREVLEX):
    """Local quotient dimension at the origin of the ideal ``gens``.

    Zero generators are dropped; an all-zero list gives an infinite
    dimension (for a ring with at least one variable).
    """
    gens = [g for g in gens if not g.is_zero()]
    if not gens:
        return INFINITE
    for g in gens:
        if g.constant_term():
            return QuotientDim.finite(0)
    return quotient_dimension(standard_basis(gens, order), bound)
