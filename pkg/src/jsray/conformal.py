"""Rectangle and round-annulus charts for one cylinder.

The lower half ``0 <= Im z <= b/2`` of a cylinder of circumference ``a``
maps onto ``{exp(-m pi) <= |w| < 1}`` by ``w = exp(2 pi i z / a)``; the upper
half uses the same map after ``z -> a + ib - z``.  The two round pieces are
glued along their inner circle by ``w -> exp(-2 m pi) / w``, and the flow
acts radially as ``r e^{i theta} -> r^(e^{2t}) e^{i theta}``.
"""
import cmath
import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, ZeroInput

TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class RoundAnnulus:
    inner_radius: float

    def __post_init__(self):
        if not 0.0 < self.inner_radius < 1.0:
            raise DomainError(f"inner radius must lie in (0, 1), got {self.inner_radius}")

    @property
    def modulus(self):
        return math.log(1.0 / self.inner_radius) / TWO_PI

    def contains(self, w):
        return self.inner_radius <= abs(w) < 1.0

    @classmethod
    def at_time(cls, m, t=0.0):
        """Image of a half cylinder of modulus ``m`` after flowing for ``t``."""
        return cls(math.exp(-m * math.pi * math.exp(2.0 * t)))


def annulus_modulus(inner_radius):
    return RoundAnnulus(inner_radius).modulus


def rect_to_round(z, a, b=None, upper=False):
    """Chart from the lower (or, with ``upper``, the upper) half cylinder to the round annulus.

    Works elementwise on numpy arrays.  ``Re z`` is reduced modulo ``a``
    before exponentiating.
    """
    if upper:
        if b is None:
            raise DomainError("the upper-half chart needs the height b")
        z = a + 1j * b - z
    z = np.asarray(z, dtype=complex) if not np.isscalar(z) else complex(z)
    x = np.mod(np.real(z), a)
    y = np.imag(z)
    w = np.exp(-TWO_PI * y / a) * np.exp(1j * TWO_PI * x / a)
    return complex(w) if np.ndim(w) == 0 else w


def round_to_rect(w, a):
    """Inverse of the lower-half chart, with ``0 <= Re z < a``."""
    if w == 0:
        raise ZeroInput("w must be nonzero")
    z = a * cmath.log(w) / (TWO_PI * 1j)
    return complex(z.real % a, z.imag)


def glue_involution(w, m):
    """``w -> exp(-2 m pi) / w``; swaps the two round halves along ``|w| = exp(-m pi)``."""
    if np.any(np.asarray(w) == 0):
        raise ZeroInput("w must be nonzero")
    return math.exp(-2.0 * m * math.pi) / w


def round_flow(w, t):
    """Radial stretch ``r e^{i theta} -> r^(e^{2t}) e^{i theta}`` on the punctured unit disk."""
    arr = np.asarray(w, dtype=complex)
    r = np.abs(arr)
    if np.any(r == 0) or np.any(r >= 1):
        raise DomainError("round_flow needs 0 < |w| < 1")
    if t < 0:
        raise DomainError(f"time must be >= 0, got {t}")
    if t == 0:
        return w
    out = np.exp(math.exp(2.0 * t) * np.log(r)) * (arr / r)
    return complex(out) if np.ndim(out) == 0 else out


def flowed_point(z, t):
    """``z_t = e^-t x + i e^t y``."""
    return math.exp(-t) * np.real(z) + 1j * math.exp(t) * np.imag(z)


def check_diagram_commutativity(a, b, t, grid_size, upper=True):
    """Sup-distance between "chart then flow" and "flow then chart" on a grid.

    The grid covers the lower half rectangle ``[0, a) x (0, b/2]`` and, when
    ``upper`` is set, the upper half ``[0, a) x [b/2, b)`` through its own chart.
    """
    n = int(grid_size)
    xs = a * np.arange(n) / n
    ys = (b / 2.0) * np.arange(1, n + 1) / n
    X, Y = np.meshgrid(xs, ys)
    z = X + 1j * Y
    at = math.exp(-t) * a
    left = round_flow(rect_to_round(z, a), t)
    right = rect_to_round(flowed_point(z, t), at)
    err = float(np.max(np.abs(left - right)))
    if upper:
        zu = X + 1j * (b / 2.0 + (b / 2.0) * (np.arange(n) / n)[:, None])
        left = round_flow(rect_to_round(zu, a, b, upper=True), t)
        right = rect_to_round(flowed_point(zu, t), at, math.exp(t) * b, upper=True)
        err = max(err, float(np.max(np.abs(left - right))))
    return err
