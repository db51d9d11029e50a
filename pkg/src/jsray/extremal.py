"""Extremal-length asymptotics along Jenkins-Strebel rays.

Along a ray with moduli ``m``, ``e^{-2t} Ext_{r(t)}(mu)`` tends to
``E(mu)^2 = sum_j m_j i(gamma_j, mu)^2``.  Everything here works on the
vector of intersection numbers ``i_j = i(gamma_j, mu)`` with the core curves.
"""
import math
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction
from typing import NamedTuple

import numpy as np

from . import kernels
from ._arith import coerce_all, finite, is_exact, log
from .errors import AllZero, EmptySample, LengthMismatch, NegativeTime, NonPositiveEntry


def _pair(m, mp, what=("m", "m'")):
    m, mp = list(m), list(mp)
    if len(m) != len(mp):
        raise LengthMismatch(f"{what[0]} has {len(m)} entries, {what[1]} has {len(mp)}")
    if not m:
        raise LengthMismatch("vectors must be nonempty")
    vals = coerce_all(m + mp)
    for v in vals:
        if not finite(v) or v < 0:
            raise NonPositiveEntry(f"entries must be finite and >= 0, got {v}")
    return vals[: len(m)], vals[len(m):]


def e_functional_squared(m, i_values):
    """``sum_j m_j i_j^2``, exact when the inputs are rational."""
    m, i = _pair(m, i_values, ("m", "i"))
    return sum((a * b * b for a, b in zip(m, i)), Fraction(0) if is_exact(m + i) else 0.0)


def e_functional(m, i_values):
    return math.sqrt(e_functional_squared(m, i_values))


def sup_ratio(m, mp):
    """``sup_mu E'(mu)^2 / E(mu)^2``: the largest ``m'_j / m_j``.

    Indices where both entries vanish are ignored; an index with
    ``m_j = 0 < m'_j`` makes the supremum infinite.
    """
    m, mp = _pair(m, mp)
    best = None
    for a, b in zip(m, mp):
        if a == 0:
            if b == 0:
                continue
            return math.inf
        r = b / a
        if best is None or r > best:
            best = r
    if best is None:
        raise AllZero("both vectors vanish at every index")
    return best


def _positive_m(m):
    if any(v <= 0 for v in m):
        raise NonPositiveEntry("this operation needs every m_j > 0")


def simplex_samples(k, samples, seed):
    """``samples`` points drawn uniformly from the unit simplex in R^k."""
    rng = np.random.default_rng(seed)
    return rng.dirichlet(np.ones(k), size=int(samples))


def sampled_ratio_max(m, mp, samples, seed, workers=1):
    """Largest ``E'^2/E^2`` over seeded simplex samples only (no coordinate vectors)."""
    m, mp = _pair(m, mp)
    _positive_m(m)
    x = simplex_samples(len(m), samples, seed)
    if len(x) == 0:
        return -math.inf
    mf = np.array([float(v) for v in m])
    mpf = np.array([float(v) for v in mp])
    if workers <= 1:
        return kernels.ratio_max(mf, mpf, x)
    chunks = np.array_split(x, workers)
    with ThreadPoolExecutor(max_workers=workers) as pool:
        parts = list(pool.map(lambda c: kernels.ratio_max(mf, mpf, c), chunks))
    return max(parts)


def sup_ratio_oracle(m, mp, samples=10_000, seed=0, workers=1):
    """Brute-force estimate of :func:`sup_ratio`.

    Maximizes the ratio over the ``k`` coordinate vectors and ``samples``
    random points of the simplex.  Deterministic for a fixed seed; the
    result does not depend on ``workers``.
    """
    m, mp = _pair(m, mp)
    _positive_m(m)
    coord = max(b / a for a, b in zip(m, mp))
    sampled = sampled_ratio_max(m, mp, samples, seed, workers)
    return float(coord) if coord >= sampled else sampled


def kerckhoff_lower_bound(m, mp, sample_curves):
    """``(1/2) log max E'^2/E^2`` over the given curves and the coordinate vectors.

    Each sample is a vector of intersection numbers with the core curves.
    The result never exceeds ``(1/2) log sup_ratio(m, mp)``.
    """
    samples = [list(s) for s in sample_curves]
    if not samples:
        raise EmptySample("need at least one sample curve")
    m, mp = _pair(m, mp)
    _positive_m(m)
    k = len(m)
    exact = is_exact(m + mp)
    best = max(b / a for a, b in zip(m, mp))
    for s in samples:
        if len(s) != k:
            raise LengthMismatch(f"sample curve has {len(s)} entries, expected {k}")
        i = coerce_all(s)
        if not exact or not is_exact(i):
            i = tuple(float(v) for v in i)
        den = e_functional_squared(m, i)
        if den == 0:
            continue
        r = e_functional_squared(mp, i) / den
        if r > best:
            best = r
    if best == 0:
        return -math.inf
    return 0.5 * log(best)


class LengthArea(NamedTuple):
    bound: object
    e_squared: object


def _i_for(surface, i_values):
    i = list(i_values)
    if len(i) != len(surface.cylinders):
        raise LengthMismatch(f"{len(i)} intersection numbers for {len(surface.cylinders)} cylinders")
    vals = coerce_all(i)
    if any(not finite(v) or v < 0 for v in vals):
        raise NonPositiveEntry("intersection numbers must be finite and >= 0")
    if not (surface.exact and is_exact(vals)):
        vals = tuple(float(v) for v in vals)
    return vals


def length_area_bound(surface, i_values):
    """Flat-metric lower bound ``(sum_j i_j b_j)^2 / area`` against ``E^2``.

    A curve crossing cylinder ``j`` ``i_j`` times has flat length at least
    ``sum_j i_j b_j``, so the bound is at most the extremal length; by
    Cauchy-Schwarz it is also at most ``E^2``.
    """
    i = _i_for(surface, i_values)
    length = sum(x * c.height for x, c in zip(i, surface.cylinders))
    bound = length * length / surface.area
    return LengthArea(bound, e_functional_squared(surface.moduli, i))


def length_area_equality(surface, i_values):
    """True when ``i_j / a_j`` is constant (or ``i = 0``): the equality case of Cauchy-Schwarz."""
    i = _i_for(surface, i_values)
    if all(x == 0 for x in i):
        return True
    ratios = [x / c.circumference for x, c in zip(i, surface.cylinders)]
    if is_exact(ratios):
        return all(r == ratios[0] for r in ratios)
    r0 = ratios[0]
    return all(abs(r - r0) <= 1e-12 * max(abs(r0), abs(r)) for r in ratios)


def scaled_core_extremal_bound(surface, t, j):
    """Upper bound ``e^{-2t} / m_j`` for the extremal length of the j-th core curve on ``Y_t``."""
    if t < 0:
        raise NegativeTime(f"time must be >= 0, got {t}")
    cyls = surface.cylinders
    if not 0 <= j < len(cyls):
        raise IndexError(f"cylinder index {j} out of range")
    return math.exp(-2.0 * t) / float(cyls[j].modulus)
