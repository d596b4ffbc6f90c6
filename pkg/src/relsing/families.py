"""One-parameter deformations: constancy, polar splitting, radical tests,
and the combined condition report.

"Small t" is replaced throughout by exact evaluation at finitely many
rational sample values.  Constancy over samples is evidence, not proof.
"""

from dataclasses import dataclass, field
from fractions import Fraction

from .arcs import FAILS, INDETERMINATE, valuation_criterion_test
from .errors import MathPreconditionError, UsageError
from .invariants import VectorField, bruce_roberts_number
from .orders import DEGREVLEX, NEGDEGREVLEX
from .poly import DEFORMATION_PARAMETER, change_ring, substitute
from .stdbasis import DEFAULT_DIM_BOUND, normal_form, standard_basis

DEFAULT_SAMPLES = (Fraction(0), Fraction(1, 7), Fraction(1, 11), Fraction(1, 2))
DEFAULT_KMAX = 12
RABINOWITSCH_VARIABLE = "rab"


class Deformation:
    """F(x, t) = f_t(x) over the x-ring extended by the parameter ``t``."""

    def __init__(self, F, xring, params=None):
        if DEFORMATION_PARAMETER not in F.ring.variables:
            F = change_ring(F, xring.extend(DEFORMATION_PARAMETER))
        self.F = F
        self.xring = xring
        self.params = dict(params or {})
        if self.base.constant_term():
            raise MathPreconditionError("f_0 does not vanish at the origin")

    @property
    def ring(self):
        return self.F.ring

    @property
    def base(self):
        return specialize(self, 0)

    def dt(self):
        return self.F.diff(DEFORMATION_PARAMETER)

    def lift_variety(self, variety):
        """Vector fields of ``variety`` in (x, t)-space with zero t-component."""
        ring = self.ring
        fields = []
        for xi in variety.theta_gens:
            comps = [change_ring(c, ring) for c in xi.components] + [ring.zero()]
            fields.append(VectorField(tuple(comps)))
        return fields

    def relative_jacobian(self, variety):
        """Generators dF(xi_i) of J_F(Theta_V), as polynomials in (x, t)."""
        out = []
        for xi in self.lift_variety(variety):
            g = self.ring.zero()
            for j, c in enumerate(xi.components[:-1]):
                if c:
                    g = g + c * self.F.diff(j)
            out.append(g)
        return out


def specialize(D, t0):
    p = substitute(D.F, {DEFORMATION_PARAMETER: Fraction(t0)})
    return change_ring(p, D.xring)


def make_samples(values):
    vals = tuple(Fraction(v) for v in values)
    if len(set(vals)) != len(vals):
        raise UsageError("sample values must be pairwise distinct")
    if Fraction(0) not in vals:
        raise UsageError("sample values must include 0")
    return vals


@dataclass(frozen=True)
class Constancy:
    constant: bool
    values: dict


def mu_br_constancy(D, variety, samples=DEFAULT_SAMPLES, bound=DEFAULT_DIM_BOUND):
    samples = make_samples(samples)
    values = {t: bruce_roberts_number(specialize(D, t), variety, bound=bound)
              for t in samples}
    first = values[samples[0]]
    constant = first.is_finite and all(v == first for v in values.values())
    return Constancy(constant, values)


@dataclass(frozen=True)
class SplitCheck:
    split: bool
    local_at_origin: object
    base_value: object
    accounted: dict = None

    @property
    def accounted_sum(self):
        if self.accounted is None:
            return None
        return sum(v.count for v in self.accounted.values())

    @property
    def conserved(self):
        if self.accounted is None:
            return None
        return self.accounted_sum == self.base_value.count


def polar_split_check(D, variety, t0, extra_points=None, bound=DEFAULT_DIM_BOUND):
    """Compare the local relative number at the origin for f_t0 with f_0.

    A drop at the origin means part of the polar curve has left the
    t-axis.  ``extra_points`` are candidate points of the polar curve in
    the fibre t = t0; their local numbers are added up against the base
    value.
    """
    t0 = Fraction(t0)
    if t0 == 0:
        raise UsageError("split check needs t0 != 0")
    base = bruce_roberts_number(D.base, variety, bound=bound)
    if not base.is_finite:
        raise MathPreconditionError("relative number of f_0 is not finite")
    ft = specialize(D, t0)
    at_origin = bruce_roberts_number(ft, variety, bound=bound)
    if not at_origin.is_finite:
        raise MathPreconditionError(f"relative number of f_t at t={t0} is not finite")
    accounted = None
    if extra_points is not None:
        origin = tuple(Fraction(0) for _ in D.xring.variables)
        accounted = {origin: at_origin}
        for pt in extra_points:
            pt = tuple(Fraction(c) for c in pt)
            if len(pt) != D.xring.nvars:
                raise UsageError("point dimension does not match the ring")
            val = bruce_roberts_number(ft, variety, point=pt, bound=bound)
            if not val.is_finite:
                raise MathPreconditionError(f"relative number at {pt} is not finite")
            accounted[pt] = val
    return SplitCheck(at_origin.count < base.count, at_origin, base, accounted)


@dataclass(frozen=True)
class RadicalResult:
    member: bool
    method: str
    witness_power: int = None

    @property
    def status(self):
        if self.method == "power":
            return "member"
        if self.method == "rabinowitsch":
            return "member_by_rabinowitsch"
        return "false_up_to_k_max"


def radical_membership(h, gens, k_max=DEFAULT_KMAX, fresh=RABINOWITSCH_VARIABLE):
    """Decide h in sqrt(<gens>), locally at the origin first.

    Powers h, h^2, ..., h^k_max are tested in the local ring.  If none
    lies in the ideal, the Rabinowitsch trick 1 in <gens, 1 - fresh*h> is
    tried in the polynomial ring; success there implies local membership.
    """
    if k_max < 1:
        raise UsageError("k_max must be at least 1")
    gens = [g for g in gens if not g.is_zero()]
    ring = h.ring
    if fresh in ring.variables:
        raise UsageError(f"fresh variable name {fresh!r} collides with a ring variable")
    if not gens:
        return RadicalResult(h.is_zero(), "power" if h.is_zero() else "none",
                             1 if h.is_zero() else None)
    sb = standard_basis(gens, NEGDEGREVLEX)
    power = h
    for k in range(1, k_max + 1):
        if sb.contains(power):
            return RadicalResult(True, "power", k)
        power = power * h

    big = ring.extend(fresh)
    lifted = [change_ring(g, big) for g in gens]
    y = big.gen(fresh)
    lifted.append(big.one() - y * change_ring(h, big))
    gb = standard_basis(lifted, DEGREVLEX)
    if normal_form(big.one(), list(gb.basis), DEGREVLEX).is_zero():
        return RadicalResult(True, "rabinowitsch")
    return RadicalResult(False, "none")


@dataclass
class BoolCondition:
    holds: bool
    evidence: dict = field(default_factory=dict)


@dataclass
class ArcCondition:
    status: str
    arcs_tested: int
    witness: str = None
    indeterminate: list = field(default_factory=list)

    @property
    def refuted(self):
        return self.status == REFUTED


REFUTED = "refuted-with-witness"
CONSISTENT = "consistent-with-supplied-arcs"


@dataclass
class ConditionReport:
    c1: BoolCondition
    c2: ArcCondition
    c3: ArcCondition
    c4: ArcCondition
    c5: BoolCondition
    c6: BoolCondition
    arc_results: dict = field(default_factory=dict)

    def entries(self):
        return [("1_r", self.c1), ("2_r", self.c2), ("3_r", self.c3),
                ("4_r", self.c4), ("5_r", self.c5), ("6_r", self.c6)]


def _arc_conditions(D, variety, arcs):
    h = D.dt()
    gens = D.relative_jacobian(variety)
    results = {}
    strict_witness = weak_witness = None
    strict_undecided, weak_undecided = [], []
    for name, arc in arcs.items():
        res = valuation_criterion_test(h, gens, arc)
        results[name] = res
        if res.strict == FAILS and strict_witness is None:
            strict_witness = name
        if res.weak == FAILS and weak_witness is None:
            weak_witness = name
        if res.strict == INDETERMINATE:
            strict_undecided.append(name)
        if res.weak == INDETERMINATE:
            weak_undecided.append(name)
    n = len(arcs)

    def entry(witness, undecided):
        if witness is not None:
            return ArcCondition(REFUTED, n, witness)
        return ArcCondition(CONSISTENT, n, None, undecided)

    c2 = entry(strict_witness, strict_undecided)
    c3 = entry(weak_witness, weak_undecided)
    # (3_r) and (4_r) are equivalent through the valuation criterion
    c4 = entry(weak_witness, weak_undecided)
    return c2, c3, c4, results


def condition_report(D, variety, samples=DEFAULT_SAMPLES, arcs=None, t0=None,
                     k_max=DEFAULT_KMAX, extra_points=None, bound=DEFAULT_DIM_BOUND):
    """Evaluate the six relative conditions for the family ``D`` on ``variety``.

    ``arcs`` maps names to arcs in (x, t)-space.  Arc-based entries can
    only be refuted; otherwise they are reported consistent with the arcs
    supplied.
    """
    samples = make_samples(samples)
    arcs = dict(arcs or {})
    if t0 is None:
        nonzero = [t for t in samples if t != 0]
        if not nonzero:
            raise UsageError("no nonzero sample to use as t0")
        t0 = nonzero[0]

    constancy = mu_br_constancy(D, variety, samples, bound)
    c1 = BoolCondition(constancy.constant, {"values": constancy.values})

    c2, c3, c4, arc_results = _arc_conditions(D, variety, arcs)
    if c3.refuted and not c2.refuted:
        # (2_r) implies (3_r)
        c2 = ArcCondition(REFUTED, c2.arcs_tested, c3.witness)

    rad = radical_membership(D.dt(), D.relative_jacobian(variety), k_max)
    c5 = BoolCondition(rad.member, {"method": rad.status, "witness_power": rad.witness_power})

    split = polar_split_check(D, variety, t0, extra_points, bound)
    c6 = BoolCondition(not split.split, {
        "t0": t0,
        "local_at_origin": split.local_at_origin,
        "base_value": split.base_value,
    })
    return ConditionReport(c1, c2, c3, c4, c5, c6, arc_results)

