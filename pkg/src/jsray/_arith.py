"""Dual arithmetic: exact rationals when every input is rational, binary64 otherwise."""
import math
from fractions import Fraction
from numbers import Rational

TOL = 1e-12


def as_number(x):
    """Coerce ``x`` to a Fraction (ints, Fractions, rational strings) or a float."""
    if isinstance(x, bool):
        raise TypeError("booleans are not numbers here")
    if isinstance(x, Fraction):
        return x
    if isinstance(x, Rational):
        return Fraction(x)
    if isinstance(x, str):
        return parse_real(x)
    return float(x)


def parse_real(text):
    """Parse ``p/q`` or decimal text exactly; ``inf``/``nan`` become floats.

    Parsing never consults the locale.
    """
    s = text.strip()
    if not s:
        raise ValueError("empty number")
    low = s.lower()
    if low in ("inf", "+inf", "-inf", "nan", "infinity", "+infinity", "-infinity"):
        return float(low)
    return Fraction(s)


def is_exact(values):
    return all(isinstance(v, Fraction) for v in values)


def coerce_all(values):
    """Return a tuple of Fractions if every value is rational, else of floats."""
    vals = [as_number(v) for v in values]
    if is_exact(vals):
        return tuple(vals)
    return tuple(float(v) for v in vals)


def is_zero(x):
    return x == 0


def close(x, y, tol=TOL):
    if isinstance(x, Fraction) and isinstance(y, Fraction):
        return x == y
    x, y = float(x), float(y)
    return abs(x - y) <= tol * max(1.0, abs(x), abs(y))


def finite(x):
    return isinstance(x, Fraction) or math.isfinite(x)


def log(x):
    """Natural log that accepts Fractions with huge numerators/denominators."""
    if isinstance(x, Fraction):
        if x <= 0:
            raise ValueError("log of non-positive number")
        f = float(x)
        if 1e-300 < f < 1e300:
            return math.log(f)
        return math.log(x.numerator) - math.log(x.denominator)
    return math.log(x)
