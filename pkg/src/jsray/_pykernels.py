"""Numpy implementations of the hot loops (fallback when the extension is absent)."""
import numpy as np


def shift_profile(d, s):
    """``0.5 * max_j |d_j + 2 s|`` for every shift in ``s``."""
    d = np.asarray(d, dtype=float)
    s = np.asarray(s, dtype=float)
    return 0.5 * np.max(np.abs(d[None, :] + 2.0 * s[:, None]), axis=1)


def scan_min(d, lo, step, n):
    """Grid minimum of :func:`shift_profile` over ``lo + i*step``, ``i < n``.

    Returns ``(index, value)`` of the first minimizing grid point.
    """
    s = lo + step * np.arange(n, dtype=float)
    f = shift_profile(d, s)
    i = int(np.argmin(f))
    return i, float(f[i])


def ratio_max(m, mp, x):
    """Largest ``sum(mp x^2) / sum(m x^2)`` over the rows of ``x`` (needs every ``m_j > 0``).

    Evaluated as ``r* - sum(m x^2 (r* - r)) / sum(m x^2)`` with ``r = mp/m``
    and ``r* = max r``: the subtracted term is nonnegative, so rounding can
    never push a row above ``r*``.  Rows with zero denominator are skipped.
    """
    m = np.asarray(m, dtype=float)
    mp = np.asarray(mp, dtype=float)
    x2 = np.asarray(x, dtype=float) ** 2
    r = mp / m
    top = float(np.max(r))
    gap = top - r
    num = np.zeros(x2.shape[0])
    den = np.zeros(x2.shape[0])
    for j in range(x2.shape[1]):
        w = m[j] * x2[:, j]
        num += w * gap[j]
        den += w
    ok = den > 0
    if not np.any(ok):
        return float("-inf")
    return float(np.max(top - num[ok] / den[ok]))
