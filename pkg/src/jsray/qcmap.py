"""Quasiconformal maps between the flowed half annuli of two rays.

For one half annulus ``{delta <= |z| < 1}`` of the first ray, the map to the
matching half annulus of the second ray is built in three radial pieces:

* ``P`` on ``delta <= |z| <= Delta``: an affine map in logarithmic
  coordinates, stretching by ``beta`` and shearing by ``alpha``;
* ``Q`` on ``Delta <= |z| <= 2 Delta``: ``c z + (|z|/Delta - 1) psi(z)``,
  interpolating to the end identification;
* ``h(z) = c z + psi(z)`` outside, which is conformal.

``Delta = delta^(M^X)`` where ``M = m'/m`` and ``X`` is chosen so that the
limiting dilatation stays below ``max(M, 1/M) + epsilon``.  When ``M = 1`` the
pair ``(M, M^X)`` is replaced by ``(1, 1/2)``.

Radii are tracked through their logarithms: ``delta`` underflows binary64
once ``e^{2t} m pi`` passes about 745.
"""
import cmath
import math
from dataclasses import dataclass
from typing import NamedTuple, Optional

import numpy as np

from .errors import (
    DegenerateMap,
    DomainError,
    InvariantViolation,
    OutOfDomain,
    ValidityThresholdNotMet,
)


class ExponentChoice(NamedTuple):
    X: Optional[float]
    limit_target: float


def exponent_bound(M, epsilon):
    """The strict bound on ``X``: upper for ``M > 1``, lower for ``M < 1``; ``None`` for ``M = 1``."""
    _check_M_eps(M, epsilon)
    if M > 1:
        return math.log(epsilon / (M + epsilon - 1)) / math.log(M)
    if M < 1:
        return math.log(M * epsilon / (1 / M - 1 + epsilon)) / math.log(M)
    return None


def _check_M_eps(M, epsilon):
    if not M > 0 or not math.isfinite(M):
        raise DomainError(f"M must be positive, got {M}")
    if not 0 < epsilon < 1:
        raise DomainError(f"epsilon must lie in (0, 1), got {epsilon}")


def _target(M, power):
    if M == 1:
        return 1.0
    beta = (M - power) / (1 - power)
    return beta if beta >= 1 else 1 / beta


def choose_exponent(M, epsilon):
    """Pick ``X`` inside the admissible region and return it with the limiting dilatation.

    The pick is half a unit past the bound, rounded to the nearest multiple
    of 1/2, which always lands strictly inside the region.
    """
    bound = exponent_bound(M, epsilon)
    if bound is None:
        return ExponentChoice(None, 1.0)
    X = round(2 * (bound - 0.5 if M > 1 else bound + 0.5)) / 2
    return ExponentChoice(X, _target(M, M**X))


@dataclass(frozen=True)
class QcMapConfig:
    """Data for one half annulus: modulus ratio ``M``, source modulus ``m``,
    tolerance ``epsilon``, exponent ``X``, leading coefficient ``c`` of the end
    identification and its tail ``psi(z) = sum_k psi[k-2] z^k``.

    ``half`` selects the branch of ``arg c``: ``(-pi, pi]`` for 1, ``[-pi, pi)`` for 2.
    """

    M: float
    m: float
    epsilon: float
    X: Optional[float] = None
    c: complex = 1 + 0j
    psi: tuple = ()
    psi_bound: Optional[float] = None
    half: int = 1

    def __post_init__(self):
        _check_M_eps(self.M, self.epsilon)
        if not self.m > 0:
            raise DomainError(f"m must be positive, got {self.m}")
        c = complex(self.c)
        if c == 0:
            raise DomainError("c must be nonzero")
        object.__setattr__(self, "c", c)
        object.__setattr__(self, "psi", tuple(complex(x) for x in self.psi))
        if self.half not in (1, 2):
            raise DomainError("half must be 1 or 2")
        bound = exponent_bound(self.M, self.epsilon)
        if bound is None:
            object.__setattr__(self, "X", None)
        elif self.X is None:
            object.__setattr__(self, "X", choose_exponent(self.M, self.epsilon).X)
        elif (self.M > 1 and not self.X < bound) or (self.M < 1 and not self.X > bound):
            raise DomainError(f"X={self.X} is outside the admissible region (bound {bound})")
        if self.psi_bound is not None and self.psi_bound < 0:
            raise DomainError("psi_bound must be >= 0")

    @property
    def stretch(self):
        return 1.0 if self.M == 1 else float(self.M)

    @property
    def power(self):
        """``M^X``, or 1/2 when ``M = 1``."""
        return 0.5 if self.M == 1 else float(self.M) ** self.X

    @property
    def limit_target(self):
        return _target(self.M, self.power)

    @property
    def target_bound(self):
        return max(self.M, 1 / self.M) + self.epsilon

    @property
    def arg_c(self):
        a = cmath.phase(self.c)
        if self.half == 2 and a == math.pi:
            return -math.pi
        return a

    @property
    def log_abs_c(self):
        return math.log(abs(self.c))

    @property
    def C(self):
        """Constant with ``|psi| <= C Delta^2`` and ``|psi'| <= C Delta / 2`` on ``|z| <= 2 Delta <= 1``."""
        if self.psi_bound is not None:
            return float(self.psi_bound)
        return 4.0 * sum(k * abs(a) for k, a in enumerate(self.psi, start=2))

    def log_c(self):
        return complex(self.log_abs_c, self.arg_c)

    def tail(self, z):
        z = np.asarray(z, dtype=complex)
        out = np.zeros_like(z)
        for k, a in enumerate(self.psi, start=2):
            out = out + a * z**k
        return out

    def tail_derivative(self, z):
        z = np.asarray(z, dtype=complex)
        out = np.zeros_like(z)
        for k, a in enumerate(self.psi, start=2):
            out = out + k * a * z ** (k - 1)
        return out


def log_radii(config, t):
    """``(log delta, log Delta)`` at time ``t``."""
    L = -math.exp(2.0 * t) * config.m * math.pi
    return L, config.power * L


def radii(config, t):
    """``(delta, Delta)``; both underflow to 0 for large ``t``, use :func:`log_radii` there."""
    L, LD = log_radii(config, t)
    return math.exp(L), math.exp(LD)


def is_valid(config, t):
    """``delta^M < |c| delta^(M^X)``: the pieces fit inside the target half annulus."""
    L, LD = log_radii(config, t)
    return config.stretch * L < config.log_abs_c + LD


def affine_params(config, t):
    """Shear ``alpha`` and stretch ``beta`` of the middle affine map at time ``t``."""
    s = math.exp(2.0 * t) * config.m * math.pi
    one_minus = 1.0 - config.power
    alpha = -config.arg_c / (s * one_minus)
    beta = (config.stretch - config.power + config.log_abs_c / s) / one_minus
    return alpha, beta


def affine_dilatation(alpha, beta):
    """Maximal dilatation of ``x + iy -> x + alpha y + i beta y``."""
    if not beta > 0:
        raise DegenerateMap(f"beta must be positive, got {beta}")
    if alpha == 0:
        return max(beta, 1.0 / beta)
    big = math.hypot(1.0 + beta, alpha)
    small = math.hypot(1.0 - beta, alpha)
    # (big + small) / (big - small), using big^2 - small^2 = 4 beta
    return max(1.0, (big + small) ** 2 / (4.0 * beta))


def q_dilatation_bound(config, Delta):
    """Upper bound for the dilatation of the interpolating piece from the tail estimates."""
    cd = config.C * Delta
    num = abs(config.c) + cd / 2 + 2 * cd
    den = abs(config.c) - cd / 2 - 2 * cd
    if den <= 0:
        return math.inf
    return max(1.0, num / den)


def eval_F(config, t, z, check=True):
    """Evaluate the glued map ``F`` at ``z`` (scalar or array) with ``delta <= |z| < 1``."""
    if check and not is_valid(config, t):
        raise ValidityThresholdNotMet(f"t={t} is below the validity threshold")
    L, LD = log_radii(config, t)
    arr = np.asarray(z, dtype=complex)
    r = np.abs(arr)
    with np.errstate(divide="ignore"):
        logr = np.log(r)
    slack = 1e-12 * abs(L)
    if np.any(logr < L - slack) or np.any(r >= 1):
        raise OutOfDomain("F is defined on delta <= |z| < 1")
    c = config.c
    k = (1.0 - config.stretch) / (1.0 - config.power)
    w = 1.0 / (1.0 - config.power) + logr / (LD - L)
    P = np.exp(k * (LD - logr) + w * config.log_c()) * arr
    Delta = math.exp(LD)
    psi = config.tail(arr)
    Q = c * arr + (r / Delta - 1.0) * psi if Delta > 0 else c * arr
    H = c * arr + psi
    out = np.where(logr <= LD, P, np.where(r <= 2.0 * Delta, Q, H))
    return complex(out) if out.ndim == 0 else out


@dataclass
class DilatationReport:
    t_grid: tuple
    valid: tuple
    K_P: tuple
    K_Q: tuple
    K_h: tuple
    K_total: tuple
    limit_target: float
    target_bound: float
    validity_threshold: Optional[float]

    def rows(self):
        return list(zip(self.t_grid, self.valid, self.K_P, self.K_Q, self.K_total))


def dilatation_trajectory(config, t_grid):
    """Dilatations of the pieces of ``F`` along increasing times.

    Grid points below the validity threshold are reported with ``valid``
    False and NaN dilatations.
    """
    ts = [float(t) for t in t_grid]
    if not ts:
        raise DomainError("empty time grid")
    if any(b <= a for a, b in zip(ts, ts[1:])):
        raise DomainError("time grid must be strictly increasing")
    if any(t < 0 for t in ts):
        raise DomainError("times must be >= 0")
    target = config.limit_target
    if not target < config.target_bound:
        raise InvariantViolation(f"limit target {target} is not below {config.target_bound}")
    valid, kp, kq, kh, kt = [], [], [], [], []
    threshold = None
    for t in ts:
        ok = is_valid(config, t)
        valid.append(ok)
        if not ok:
            kp.append(math.nan)
            kq.append(math.nan)
            kh.append(math.nan)
            kt.append(math.nan)
            continue
        if threshold is None:
            threshold = t
        alpha, beta = affine_params(config, t)
        p = affine_dilatation(alpha, beta)
        q = q_dilatation_bound(config, math.exp(log_radii(config, t)[1]))
        kp.append(p)
        kq.append(q)
        kh.append(1.0)
        kt.append(max(p, q, 1.0))
    return DilatationReport(
        tuple(ts), tuple(valid), tuple(kp), tuple(kq), tuple(kh), tuple(kt),
        target, config.target_bound, threshold,
    )


# -- numerical diagnostics ------------------------------------------------------


def numeric_dilatation(config, t, z, rel_step=1e-6):
    """Dilatation of ``F`` at ``z`` from central differences (cross-check only)."""
    z = np.asarray(z, dtype=complex)
    h = rel_step * np.abs(z)
    fx = (eval_F(config, t, z + h) - eval_F(config, t, z - h)) / (2 * h)
    fy = (eval_F(config, t, z + 1j * h) - eval_F(config, t, z - 1j * h)) / (2 * h)
    fz = 0.5 * (fx - 1j * fy)
    fzb = 0.5 * (fx + 1j * fy)
    a, b = np.abs(fz), np.abs(fzb)
    jac = a**2 - b**2
    K = np.where(jac > 0, (a + b) / np.where(a > b, a - b, 1.0), np.inf)
    return K, jac


def piece_grid(config, t, piece, n=32):
    """Polar grid strictly inside one piece ("P", "Q" or "h")."""
    L, LD = log_radii(config, t)
    Delta = math.exp(LD)
    if piece == "P":
        lo, hi = L, LD
    elif piece == "Q":
        lo, hi = LD, math.log(2 * Delta)
    elif piece == "h":
        lo, hi = math.log(2 * Delta), 0.0
    else:
        raise ValueError(piece)
    if hi <= lo:
        return np.array([], dtype=complex)
    logs = lo + (hi - lo) * (np.arange(n) + 0.5) / n
    theta = 2 * math.pi * (np.arange(n) + 0.25) / n
    R, T = np.meshgrid(np.exp(logs), theta)
    return (R * np.exp(1j * T)).ravel()


def grid_max_dilatation(config, t, piece, n=32):
    """Largest finite-difference dilatation over :func:`piece_grid`; ``inf`` if the Jacobian fails to be positive."""
    z = piece_grid(config, t, piece, n)
    if z.size == 0:
        return 1.0
    K, jac = numeric_dilatation(config, t, z)
    if np.any(jac <= 0):
        return math.inf
    return float(np.max(K))


def jacobian_positive(config, t, n=32):
    """Positive-Jacobian check for the interpolating piece on a polar grid."""
    z = piece_grid(config, t, "Q", n)
    if z.size == 0:
        return True
    _, jac = numeric_dilatation(config, t, z)
    return bool(np.all(jac > 0))
