"""Monomial orderings on exponent tuples.

Every order is encoded as a sort key: ``key(a) > key(b)`` iff ``x^a``
is larger than ``x^b``.  Global orders put every variable above 1,
local orders put 1 above every variable.
"""

from dataclasses import dataclass

GLOBAL_DEGREVLEX = "global-degrevlex"
LOCAL_NEGDEGREVLEX = "local-negdegrevlex"
WEIGHTED_GLOBAL = "weighted-global"
WEIGHTED_LOCAL = "weighted-local"

KINDS = (GLOBAL_DEGREVLEX, LOCAL_NEGDEGREVLEX, WEIGHTED_GLOBAL, WEIGHTED_LOCAL)


@dataclass(frozen=True)
class MonomialOrder:
    kind: str = LOCAL_NEGDEGREVLEX
    weights: tuple = None

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown monomial order {self.kind!r}")
        weighted = self.kind in (WEIGHTED_GLOBAL, WEIGHTED_LOCAL)
        if weighted:
            if not self.weights:
                raise ValueError(f"{self.kind} needs weights")
            w = tuple(int(v) for v in self.weights)
            if any(v < 1 for v in w):
                raise ValueError("weights must be positive integers")
            object.__setattr__(self, "weights", w)
        elif self.weights is not None:
            raise ValueError(f"{self.kind} takes no weights")

    @property
    def is_local(self):
        return self.kind in (LOCAL_NEGDEGREVLEX, WEIGHTED_LOCAL)

    def degree(self, exps):
        """Total degree, or weighted degree for the weighted kinds."""
        if self.weights is None:
            return sum(exps)
        if len(exps) != len(self.weights):
            raise ValueError("weight vector length does not match the ring")
        return sum(e * w for e, w in zip(exps, self.weights))

    def key(self, exps):
        d = self.degree(exps)
        # reverse lexicographic tie-break: smaller power of the last
        # variable is the larger monomial
        tail = tuple(-e for e in reversed(exps))
        return (-d if self.is_local else d, tail)

    def compare(self, a, b):
        ka, kb = self.key(a), self.key(b)
        return (ka > kb) - (ka < kb)

    def lead(self, exps_iter):
        return max(exps_iter, key=self.key)


DEGREVLEX = MonomialOrder(GLOBAL_DEGREVLEX)
NEGDEGREVLEX = MonomialOrder(LOCAL_NEGDEGREVLEX)


def weighted_local(weights):
    return MonomialOrder(WEIGHTED_LOCAL, tuple(weights))


def weighted_global(weights):
    return MonomialOrder(WEIGHTED_GLOBAL, tuple(weights))
