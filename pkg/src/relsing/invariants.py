"""Local invariants of function germs, absolute and relative to a variety."""

from dataclasses import dataclass

from .errors import MathPreconditionError, RingMismatch, TangencyError
from .orders import DEGREVLEX
from .poly import substitute
from .stdbasis import DEFAULT_DIM_BOUND, local_dimension, normal_form, standard_basis


@dataclass(frozen=True)
class VectorField:
    components: tuple

    def __post_init__(self):
        comps = tuple(self.components)
        if not comps:
            raise ValueError("vector field without components")
        ring = comps[0].ring
        if any(c.ring != ring for c in comps):
            raise RingMismatch("vector field components live in different rings")
        if len(comps) != ring.nvars:
            raise ValueError(
                f"vector field has {len(comps)} components, ring has {ring.nvars} variables"
            )
        object.__setattr__(self, "components", comps)

    @property
    def ring(self):
        return self.components[0].ring

    @classmethod
    def coordinate(cls, ring, i):
        """The constant field d/dx_i."""
        return cls(tuple(ring.one() if j == i else ring.zero() for j in range(ring.nvars)))

    def translate(self, point):
        shift = {v: ring_var + c for v, ring_var, c in
                 zip(self.ring.variables, self.ring.gens(), point)}
        return VectorField(tuple(substitute(c, shift) for c in self.components))

    def __str__(self):
        return "(" + ", ".join(str(c) for c in self.components) + ")"


@dataclass(frozen=True)
class WeightSystem:
    weights: tuple
    degree: int = None

    def __post_init__(self):
        w = tuple(int(v) for v in self.weights)
        if not w or any(v < 1 for v in w):
            raise ValueError("weights must be positive integers")
        object.__setattr__(self, "weights", w)


def jacobian_ideal(f):
    """All partial derivatives of ``f``, zeros included."""
    return [f.diff(i) for i in range(f.ring.nvars)]


def apply_vector_field(f, xi):
    """The derivative df(xi) = sum_j xi_j * df/dx_j."""
    if len(xi.components) != f.ring.nvars:
        raise RingMismatch("vector field and polynomial have different arity")
    if xi.ring != f.ring:
        raise RingMismatch("vector field and polynomial live in different rings")
    out = f.ring.zero()
    for j, c in enumerate(xi.components):
        if c:
            out = out + c * f.diff(j)
    return out


def check_tangency(phi, xi):
    """True iff xi(phi) lies in the ideal generated by ``phi``."""
    if phi.is_zero():
        raise MathPreconditionError("zero equation")
    return normal_form(apply_vector_field(phi, xi), [phi], DEGREVLEX).is_zero()


def _check_tangency_ci(equations, xi):
    if len(equations) == 1:
        return check_tangency(equations[0], xi)
    sb = standard_basis(equations, DEGREVLEX)
    return all(sb.contains(apply_vector_field(phi, xi)) for phi in equations)


class VarietyGerm:
    """A variety with user-supplied generators of its tangent vector fields.

    ``equations`` may be empty, meaning the whole space; then the
    generators are typically the coordinate fields.  Every generator is
    checked for tangency on construction.
    """

    def __init__(self, equations, theta_gens, check=True):
        self.equations = tuple(equations)
        self.theta_gens = tuple(theta_gens)
        if not self.theta_gens:
            raise MathPreconditionError("a variety needs at least one tangent vector field")
        self.ring = self.theta_gens[0].ring
        for phi in self.equations:
            if phi.ring != self.ring:
                raise RingMismatch("equation and vector fields live in different rings")
            if phi.is_zero():
                raise MathPreconditionError("zero equation")
        if check and self.equations:
            for i, xi in enumerate(self.theta_gens):
                if xi.ring != self.ring:
                    raise RingMismatch("vector fields live in different rings")
                if not _check_tangency_ci(self.equations, xi):
                    raise TangencyError(i + 1)

    @classmethod
    def ambient(cls, ring):
        return cls((), [VectorField.coordinate(ring, i) for i in range(ring.nvars)])

    @property
    def phi(self):
        if len(self.equations) != 1:
            raise MathPreconditionError("variety is not a hypersurface")
        return self.equations[0]

    def translate(self, point):
        shift = {v: g + c for v, g, c in zip(self.ring.variables, self.ring.gens(), point)}
        return VarietyGerm(
            [substitute(p, shift) for p in self.equations],
            [xi.translate(point) for xi in self.theta_gens],
            check=False,
        )


def _require_vanishing(f):
    if f.constant_term():
        raise MathPreconditionError("germ does not vanish at the origin")


def milnor_number(f, bound=DEFAULT_DIM_BOUND):
    """Local dimension of O_n / Jacobian ideal; infinite for non-isolated germs."""
    _require_vanishing(f)
    return local_dimension(jacobian_ideal(f), bound)


def multiplicity(f):
    if f.is_zero():
        raise MathPreconditionError("zero polynomial has no multiplicity")
    return f.min_degree()


def relative_jacobian(f, variety):
    """Generators df(xi_i) of the relative Jacobian ideal, in input order."""
    return [apply_vector_field(f, xi) for xi in variety.theta_gens]


def bruce_roberts_number(f, variety, point=None, bound=DEFAULT_DIM_BOUND):
    """Dimension of the local algebra modulo <df(xi_1), ..., df(xi_p)>.

    With ``point`` the count is taken at that point, by translating it
    to the origin.
    """
    if f.ring != variety.ring:
        raise RingMismatch("germ and variety live in different rings")
    if point is not None and any(point):
        shift = {v: g + c for v, g, c in zip(f.ring.variables, f.ring.gens(), point)}
        f = substitute(f, shift)
        f = f - f.constant_term()
        variety = variety.translate(point)
    else:
        _require_vanishing(f)
    return local_dimension(relative_jacobian(f, variety), bound)


def _minors2(a, b):
    da, db = jacobian_ideal(a), jacobian_ideal(b)
    n = len(da)
    return [da[i] * db[j] - da[j] * db[i] for i in range(n) for j in range(i + 1, n)]


def le_milnor_number(phi, f, bound=DEFAULT_DIM_BOUND):
    """Milnor number of the ICIS {phi = f = 0}.

    Computed from the Le-Greuel identity
    mu(phi) + mu(phi, f) = dim O_n / <phi, 2x2 minors of Jac(phi, f)>.
    """
    if phi.ring != f.ring:
        raise RingMismatch("phi and f live in different rings")
    _require_vanishing(phi)
    _require_vanishing(f)
    mu_phi = milnor_number(phi, bound)
    if not mu_phi.is_finite:
        raise MathPreconditionError("phi does not define an isolated singularity")
    total = local_dimension([phi] + _minors2(phi, f), bound)
    if not total.is_finite:
        return total
    return type(total).finite(total.count - mu_phi.count)


def is_quasihomogeneous(f, w):
    """The common weighted degree of the support of ``f``, or None."""
    if f.is_zero():
        raise MathPreconditionError("zero polynomial")
    weights = w.weights if isinstance(w, WeightSystem) else tuple(w)
    if len(weights) != f.ring.nvars:
        raise ValueError("weight vector length does not match the ring")
    degrees = {sum(e * v for e, v in zip(exps, weights)) for exps in f.terms}
    if len(degrees) != 1:
        return None
    d = degrees.pop()
    if isinstance(w, WeightSystem) and w.degree is not None and w.degree != d:
        return None
    return d

