"""Limits of the distance between two Jenkins-Strebel rays.

All functions take the two moduli vectors ``m`` and ``m'`` (same index set,
index ``j`` meaning the same core curve).  Hypotheses of the underlying
theorems (common endpoint, absolute continuity) are the caller's business;
the functions themselves are plain arithmetic.
"""
import enum
import math
from dataclasses import dataclass
from typing import NamedTuple, Optional

import numpy as np

from ._arith import coerce_all, finite, is_exact, log
from .errors import InconsistentFlags, LengthMismatch, NonPositiveEntry
from . import kernels
from .extremal import sup_ratio
from .surface import Relation

REL_TOL = 1e-12


@dataclass(frozen=True)
class ModuliVector:
    values: tuple

    def __post_init__(self):
        vals = coerce_all(self.values)
        if not vals:
            raise LengthMismatch("moduli vector must be nonempty")
        if any(not finite(v) or v <= 0 for v in vals):
            raise NonPositiveEntry("moduli must be positive and finite")
        object.__setattr__(self, "values", vals)

    def __len__(self):
        return len(self.values)

    def __iter__(self):
        return iter(self.values)


def _moduli_pair(m, mp):
    m = ModuliVector(tuple(m)).values
    mp = ModuliVector(tuple(mp)).values
    if len(m) != len(mp):
        raise LengthMismatch(f"m has {len(m)} entries, m' has {len(mp)}")
    if not (is_exact(m) and is_exact(mp)):
        m, mp = tuple(map(float, m)), tuple(map(float, mp))
    return m, mp


def _max_two_sided(m, mp):
    return max(max(b / a, a / b) for a, b in zip(m, mp))


def limit_distance(m, mp):
    """``(1/2) log max_j max(m'_j/m_j, m_j/m'_j)``.

    This is the limit of the distance between the rays when their endpoints
    coincide and their horizontal foliations are absolutely continuous.
    """
    m, mp = _moduli_pair(m, mp)
    return 0.5 * log(_max_two_sided(m, mp))


def shifted_limit(m, mp, s):
    """Limit distance between ``r(t)`` and ``r'(t + s)``: :func:`limit_distance` with ``m'`` scaled by ``e^{2s}``."""
    if s == 0:
        return limit_distance(m, mp)
    m, mp = _moduli_pair(m, mp)
    scale = math.exp(2.0 * s)
    return 0.5 * math.log(_max_two_sided([float(a) for a in m], [scale * float(b) for b in mp]))


class Equivalence(NamedTuple):
    ratio: object
    shift: float


def modular_equivalence(m, mp):
    """``(lambda, alpha)`` with ``m' = lambda m`` and ``alpha = -(1/2) log lambda``, or ``None``.

    Exact for rational input; otherwise the ratios must agree to a relative
    tolerance of 1e-12.
    """
    m, mp = _moduli_pair(m, mp)
    ratios = [b / a for a, b in zip(m, mp)]
    lam = ratios[0]
    if is_exact(ratios):
        same = all(r == lam for r in ratios)
    else:
        same = all(abs(r - lam) <= REL_TOL * max(abs(r), abs(lam)) for r in ratios)
    if not same:
        return None
    return Equivalence(lam, -0.5 * log(lam))


class ShiftOptimum(NamedTuple):
    beta: float
    min_value: float


def optimal_shift(m, mp):
    """The time shift of the second ray minimizing :func:`shifted_limit`, and the minimum.

    The minimum equals half the detour metric between the endpoints.
    """
    m, mp = _moduli_pair(m, mp)
    up = max(b / a for a, b in zip(m, mp))
    down = max(a / b for a, b in zip(m, mp))
    return ShiftOptimum(0.25 * log(down / up), 0.25 * log(up * down))


def scan_shift(m, mp, lo=-5.0, hi=5.0, step=1e-4, refine=True):
    """Numerical minimum of :func:`shifted_limit` over ``[lo, hi]``.

    Evaluates on the grid ``lo + i*step`` and, with ``refine``, narrows the
    bracket around the best grid point by ternary search (the profile is
    convex).  Returns a :class:`ShiftOptimum`; an independent check on
    :func:`optimal_shift`.
    """
    m, mp = _moduli_pair(m, mp)
    if not (step > 0 and hi >= lo):
        raise ValueError("scan needs step > 0 and hi >= lo")
    d = np.array([math.log(float(b) / float(a)) for a, b in zip(m, mp)])
    n = int(math.floor((hi - lo) / step + 1e-9)) + 1
    i, value = kernels.scan_min(d, float(lo), float(step), n)
    s = lo + i * step
    if not refine:
        return ShiftOptimum(s, value)
    a, b = max(lo, s - step), min(hi, s + step)
    for _ in range(200):
        if b - a < 1e-15:
            break
        c1, c2 = a + (b - a) / 3, b - (b - a) / 3
        f1, f2 = kernels.shift_profile(d, np.array([c1, c2]))
        if f1 <= f2:
            b = c2
        else:
            a = c1
    s = 0.5 * (a + b)
    return ShiftOptimum(s, float(kernels.shift_profile(d, np.array([s]))[0]))


def detour_metric(m, mp):
    """``(1/2) log max(m'/m) + (1/2) log max(m/m')``; ``inf`` when the supports differ.

    Zero entries encode curves missing from a foliation.  Indices where both
    vectors vanish are dropped.
    """
    m, mp = list(m), list(mp)
    if len(m) != len(mp):
        raise LengthMismatch(f"m has {len(m)} entries, m' has {len(mp)}")
    up = sup_ratio(m, mp)
    down = sup_ratio(mp, m)
    if math.isinf(up) or math.isinf(down):
        return math.inf
    return 0.5 * log(up * down)


# -- classification -----------------------------------------------------------


class Outcome(enum.Enum):
    BOUNDED = "Bounded"
    DIVERGENT = "Divergent"
    ASYMPTOTIC = "Asymptotic"
    BOUNDED_NOT_ASYMPTOTIC = "BoundedNotAsymptotic"
    UNKNOWN = "Unknown"


@dataclass(frozen=True)
class PairDescriptor:
    relation: Relation
    jenkins_strebel: tuple = (True, True)
    uniquely_ergodic: bool = False
    critical_graph_has_closed_loops: bool = True
    modularly_equivalent: bool = False
    endpoints_equal: bool = False

    def check(self):
        js = tuple(self.jenkins_strebel)
        if len(js) != 2:
            raise InconsistentFlags("jenkins_strebel must be a pair of booleans")
        if self.modularly_equivalent and not self.relation.absolutely_continuous:
            raise InconsistentFlags("modular equivalence needs absolutely continuous foliations")
        if self.relation.absolutely_continuous and js[0] != js[1]:
            raise InconsistentFlags("absolutely continuous foliations are both Jenkins-Strebel or neither")
        if self.relation is Relation.TOP_EQUIV_NOT_ABS_CONT and all(js):
            raise InconsistentFlags("topologically equivalent Jenkins-Strebel foliations are absolutely continuous")
        if self.endpoints_equal and not (all(js) and self.relation.absolutely_continuous):
            raise InconsistentFlags("endpoints on the augmented boundary are compared only for absolutely continuous Jenkins-Strebel rays")


@dataclass(frozen=True)
class Verdict:
    outcome: Outcome
    citation: str
    leaf: str
    bounded: Optional[bool]

    def __post_init__(self):
        if self.outcome is Outcome.ASYMPTOTIC and self.bounded is not True:
            raise InconsistentFlags("an asymptotic verdict must also be bounded")


# leaf id -> (outcome, citation key, bounded)
LEAVES = {
    "not-top-equiv/positive-intersection": (Outcome.DIVERGENT, "Ivanov", False),
    "not-top-equiv/zero-intersection": (Outcome.DIVERGENT, "Lenzhen-Masur", False),
    "top-equiv/not-abs-cont": (Outcome.DIVERGENT, "Lenzhen-Masur", False),
    "abs-cont/js/mod-equiv+same-endpoint": (Outcome.ASYMPTOTIC, "Cor-asymptotic", True),
    "abs-cont/js/not-mod-equiv": (Outcome.BOUNDED_NOT_ASYMPTOTIC, "Cor-asymptotic", True),
    "abs-cont/js/mod-equiv+different-endpoint": (Outcome.BOUNDED_NOT_ASYMPTOTIC, "Cor-asymptotic", True),
    "abs-cont/not-js/ue+no-loops": (Outcome.ASYMPTOTIC, "Masur", True),
    "abs-cont/not-js/otherwise": (Outcome.UNKNOWN, "Ivanov", True),
}


def _leaf(d):
    rel = d.relation
    if rel is Relation.NOT_TOP_EQUIV_POSITIVE_INTERSECTION:
        return "not-top-equiv/positive-intersection"
    if rel is Relation.NOT_TOP_EQUIV_ZERO_INTERSECTION:
        return "not-top-equiv/zero-intersection"
    if rel is Relation.TOP_EQUIV_NOT_ABS_CONT:
        return "top-equiv/not-abs-cont"
    if all(d.jenkins_strebel):
        if not d.modularly_equivalent:
            return "abs-cont/js/not-mod-equiv"
        if d.endpoints_equal:
            return "abs-cont/js/mod-equiv+same-endpoint"
        return "abs-cont/js/mod-equiv+different-endpoint"
    if d.uniquely_ergodic and not d.critical_graph_has_closed_loops:
        return "abs-cont/not-js/ue+no-loops"
    # Bounded by absolute continuity; asymptotic behaviour is open.
    return "abs-cont/not-js/otherwise"


def classify(d):
    """Bounded / divergent / asymptotic verdict for a pair of rays, with its source."""
    d.check()
    leaf = _leaf(d)
    outcome, cite, bounded = LEAVES[leaf]
    return Verdict(outcome, cite, leaf, bounded)


def describe_pair(H, H2, surface=None, surface2=None, uniquely_ergodic=False,
                  critical_graph_has_closed_loops=True):
    """Build a :class:`PairDescriptor` from two foliations and, for J-S rays, their surfaces."""
    from .ray import endpoint_descriptor, endpoints_equal
    from .surface import foliation_relation

    rel = foliation_relation(H, H2)
    js = (H.is_jenkins_strebel, H2.is_jenkins_strebel)
    mod_eq = same_end = False
    if rel.absolutely_continuous and all(js) and surface is not None and surface2 is not None:
        m = [surface.cylinder(H.family.labels[j]).modulus for j in H.support]
        mp = [surface2.cylinder(H2.family.labels[j]).modulus for j in H2.support]
        mod_eq = modular_equivalence(m, mp) is not None
        same_end = endpoints_equal(endpoint_descriptor(surface), endpoint_descriptor(surface2))
    return PairDescriptor(rel, js, uniquely_ergodic, critical_graph_has_closed_loops, mod_eq, same_end)
