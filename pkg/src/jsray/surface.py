"""Cylinder-decomposition model of a Jenkins-Strebel differential.

A surface is a list of flat cylinders ``[0, a] x (0, b)`` with vertical sides
identified, plus a table saying how the horizontal sides are glued by maps
``z -> +-z + c``.  Measured foliations are weighted multicurves over an
explicit curve family whose intersection numbers are given as input.
"""
import enum
import math
from dataclasses import dataclass
from fractions import Fraction

from ._arith import TOL, as_number, close, coerce_all, finite, is_exact
from .errors import (
    FamilyMismatch,
    IntersectingSupport,
    NonPositiveDatum,
    NormalizationError,
    PairingError,
    PartitionError,
)

SIDES = ("bottom", "top")


def _positive(value, what):
    v = as_number(value)
    if not finite(v) or not v > 0:
        raise NonPositiveDatum(f"{what} must be positive and finite, got {value!r}")
    return v


@dataclass(frozen=True)
class Cylinder:
    label: str
    circumference: object
    height: object

    def __post_init__(self):
        object.__setattr__(self, "label", str(self.label))
        a = _positive(self.circumference, f"circumference of cylinder {self.label}")
        b = _positive(self.height, f"height of cylinder {self.label}")
        a, b = coerce_all([a, b])
        object.__setattr__(self, "circumference", a)
        object.__setattr__(self, "height", b)

    @property
    def modulus(self):
        return self.height / self.circumference

    @property
    def area(self):
        return self.circumference * self.height


@dataclass(frozen=True)
class Segment:
    id: str
    cylinder: str
    side: str
    offset: object
    length: object

    def __post_init__(self):
        object.__setattr__(self, "id", str(self.id))
        object.__setattr__(self, "cylinder", str(self.cylinder))
        if self.side not in SIDES:
            raise PartitionError(f"segment {self.id}: side must be top or bottom, got {self.side!r}")
        off = as_number(self.offset)
        if not finite(off) or off < 0:
            raise PartitionError(f"segment {self.id}: offset must be finite and >= 0")
        object.__setattr__(self, "offset", off)
        object.__setattr__(self, "length", _positive(self.length, f"length of segment {self.id}"))


@dataclass(frozen=True)
class GluingTable:
    """Segments on the horizontal sides and a fixed-point-free pairing of them.

    ``pairs`` holds ``(id, id, sign)`` with ``sign`` in ``{+1, -1}`` for the
    gluing map ``z -> sign*z + c``.
    """

    segments: tuple
    pairs: tuple

    def __post_init__(self):
        segs = tuple(self.segments)
        ids = [s.id for s in segs]
        if len(set(ids)) != len(ids):
            raise PairingError("duplicate segment id")
        by_id = {s.id: s for s in segs}
        partner = {}
        pairs = []
        for p in self.pairs:
            i, j, sign = str(p[0]), str(p[1]), p[2] if len(p) > 2 else 1
            sign = _sign(sign)
            for x in (i, j):
                if x not in by_id:
                    raise PairingError(f"glue refers to unknown segment {x}")
                if x in partner:
                    raise PairingError(f"segment {x} is glued more than once")
            if i == j:
                raise PairingError(f"segment {i} is glued to itself")
            if not close(by_id[i].length, by_id[j].length):
                raise PairingError(
                    f"segments {i} and {j} have different lengths "
                    f"{by_id[i].length} and {by_id[j].length}"
                )
            partner[i], partner[j] = j, i
            pairs.append((i, j, sign))
        unpaired = [x for x in ids if x not in partner]
        if unpaired:
            raise PairingError(f"segment {unpaired[0]} is not glued")
        object.__setattr__(self, "segments", segs)
        object.__setattr__(self, "pairs", tuple(pairs))
        object.__setattr__(self, "_partner", partner)
        object.__setattr__(self, "_by_id", by_id)

    def segment(self, sid):
        return self._by_id[sid]

    def partner(self, sid):
        return self._partner[sid]

    def sign(self, sid):
        for i, j, s in self.pairs:
            if sid in (i, j):
                return s
        raise KeyError(sid)

    def side(self, label, side):
        """Segments on one side of a cylinder, sorted by offset."""
        return sorted(
            (s for s in self.segments if s.cylinder == label and s.side == side),
            key=lambda s: s.offset,
        )


def _sign(s):
    if s in ("+", 1, "+1"):
        return 1
    if s in ("-", -1, "-1"):
        return -1
    raise PairingError(f"gluing sign must be + or -, got {s!r}")


@dataclass(frozen=True)
class CylinderSurface:
    cylinders: tuple
    gluing: GluingTable
    unit_norm: bool = False

    @property
    def exact(self):
        return is_exact(c.circumference for c in self.cylinders)

    @property
    def labels(self):
        return tuple(c.label for c in self.cylinders)

    @property
    def area(self):
        return sum((c.area for c in self.cylinders), Fraction(0) if self.exact else 0.0)

    @property
    def moduli(self):
        return moduli_vector(self)

    def cylinder(self, label):
        for c in self.cylinders:
            if c.label == str(label):
                return c
        raise KeyError(label)

    def normalized(self):
        """Rescale every length so the flat area is 1; moduli are unchanged."""
        area = self.area
        scale = _exact_sqrt(area) if isinstance(area, Fraction) else None
        if scale is None:
            scale = math.sqrt(float(area))
        return _rescaled(self, 1 / scale, 1 / scale, unit_norm=True)


def _exact_sqrt(q):
    n, d = math.isqrt(q.numerator), math.isqrt(q.denominator)
    if n * n == q.numerator and d * d == q.denominator:
        return Fraction(n, d)
    return None


def _rescaled(surface, horizontal, vertical, unit_norm=False):
    cyls = [
        Cylinder(c.label, c.circumference * horizontal, c.height * vertical)
        for c in surface.cylinders
    ]
    segs = [
        Segment(s.id, s.cylinder, s.side, s.offset * horizontal, s.length * horizontal)
        for s in surface.gluing.segments
    ]
    return build_surface(cyls, GluingTable(segs, surface.gluing.pairs), unit_norm=unit_norm)


def build_surface(cylinders, gluing, unit_norm=False):
    """Validate cylinders plus gluing and return a :class:`CylinderSurface`.

    All lengths are converted to exact rationals when every input is
    rational; otherwise everything is binary64 and comparisons use a
    relative tolerance of 1e-12.
    """
    cylinders = list(cylinders)
    if not cylinders:
        raise NonPositiveDatum("a surface needs at least one cylinder")
    labels = [c.label for c in cylinders]
    if len(set(labels)) != len(labels):
        raise PartitionError("duplicate cylinder label")

    numbers = [c.circumference for c in cylinders] + [c.height for c in cylinders]
    numbers += [s.offset for s in gluing.segments] + [s.length for s in gluing.segments]
    if not is_exact(numbers):
        cylinders = [Cylinder(c.label, float(c.circumference), float(c.height)) for c in cylinders]
        segs = [
            Segment(s.id, s.cylinder, s.side, float(s.offset), float(s.length))
            for s in gluing.segments
        ]
        gluing = GluingTable(segs, gluing.pairs)

    known = set(labels)
    for s in gluing.segments:
        if s.cylinder not in known:
            raise PartitionError(f"segment {s.id} lies on unknown cylinder {s.cylinder}")
    for c in cylinders:
        for side in SIDES:
            _check_partition(c, side, gluing.side(c.label, side))

    surface = CylinderSurface(tuple(cylinders), gluing, unit_norm)
    if unit_norm and not close(surface.area, 1, TOL):
        raise NormalizationError(f"unit-norm surface has area {surface.area}")
    return surface


def _check_partition(cyl, side, segs):
    where = f"cylinder {cyl.label} {side}"
    if not segs:
        raise PartitionError(f"{where}: no segments")
    pos = segs[0].offset
    if not close(pos, 0):
        raise PartitionError(f"{where}: first segment starts at {pos}, not 0")
    for s in segs:
        if not close(s.offset, pos):
            raise PartitionError(f"{where}: gap or overlap at offset {s.offset}")
        pos = s.offset + s.length
    if not close(pos, cyl.circumference):
        raise PartitionError(
            f"{where}: segments cover length {pos}, circumference is {cyl.circumference}"
        )


def moduli_vector(surface):
    """``(b_1/a_1, ..., b_k/a_k)`` in cylinder order."""
    return tuple(c.modulus for c in surface.cylinders)


# -- measured multicurves ------------------------------------------------------


@dataclass(frozen=True)
class CurveFamily:
    """Labeled curves with their pairwise geometric intersection numbers.

    ``minimal[j]`` is ``None`` when member ``j`` is a simple closed curve and
    otherwise names the minimal domain on which member ``j`` is an ergodic
    transverse measure.
    """

    labels: tuple
    pairing: tuple
    minimal: tuple = None

    def __post_init__(self):
        labels = tuple(str(x) for x in self.labels)
        k = len(labels)
        if len(set(labels)) != k:
            raise FamilyMismatch("duplicate curve label")
        rows = tuple(coerce_all(r) for r in self.pairing) if k else ()
        if len(rows) != k or any(len(r) != k for r in rows):
            raise FamilyMismatch(f"pairing must be a {k}x{k} matrix")
        exact = all(is_exact(r) for r in rows)
        if not exact:
            rows = tuple(tuple(float(x) for x in r) for r in rows)
        for j in range(k):
            if rows[j][j] != 0:
                raise FamilyMismatch(f"pairing diagonal at {labels[j]} must be 0")
            for jj in range(k):
                v = rows[j][jj]
                if not finite(v) or v < 0:
                    raise FamilyMismatch("intersection numbers must be finite and >= 0")
                if not close(v, rows[jj][j]):
                    raise FamilyMismatch("pairing must be symmetric")
        minimal = self.minimal if self.minimal is not None else (None,) * k
        if len(minimal) != k:
            raise FamilyMismatch("minimal tags must have one entry per curve")
        object.__setattr__(self, "labels", labels)
        object.__setattr__(self, "pairing", rows)
        object.__setattr__(self, "minimal", tuple(minimal))

    def __len__(self):
        return len(self.labels)

    def index(self, label):
        return self.labels.index(str(label))

    @classmethod
    def disjoint(cls, labels):
        k = len(labels)
        return cls(tuple(labels), tuple((0,) * k for _ in range(k)))


@dataclass(frozen=True)
class MeasuredMulticurve:
    family: CurveFamily
    weights: tuple

    def __post_init__(self):
        w = coerce_all(self.weights)
        if len(w) != len(self.family):
            raise FamilyMismatch(f"expected {len(self.family)} weights, got {len(w)}")
        for x in w:
            if not finite(x) or x < 0:
                raise NonPositiveDatum("weights must be finite and >= 0")
        object.__setattr__(self, "weights", w)
        sup = self.support
        I = self.family.pairing
        for a in sup:
            for b in sup:
                if I[a][b] != 0:
                    la, lb = self.family.labels[a], self.family.labels[b]
                    raise IntersectingSupport(f"support curves {la} and {lb} intersect")

    @property
    def pairing(self):
        return self.family.pairing

    @property
    def support(self):
        return tuple(j for j, x in enumerate(self.weights) if x != 0)

    @property
    def is_zero(self):
        return not self.support

    @property
    def is_jenkins_strebel(self):
        """All weight sits on simple closed curves."""
        return all(self.family.minimal[j] is None for j in self.support)

    @property
    def topological_support(self):
        """Curves carrying weight, plus the minimal domains carrying any weight."""
        out = set()
        for j in self.support:
            tag = self.family.minimal[j]
            out.add(("curve", j) if tag is None else ("minimal", tag))
        return frozenset(out)


def _same_family(mu, nu):
    if mu.family != nu.family:
        raise FamilyMismatch("measured multicurves are over different curve families")


def intersection_number(mu, nu):
    """Bilinear extension ``sum_{j,j'} mu_j nu_j' I[j][j']``."""
    _same_family(mu, nu)
    I = mu.family.pairing
    exact = is_exact(mu.weights + nu.weights) and all(is_exact(r) for r in I)
    total = Fraction(0) if exact else 0.0
    for j, x in enumerate(mu.weights):
        if x == 0:
            continue
        row = I[j]
        for jj, y in enumerate(nu.weights):
            if y != 0 and row[jj] != 0:
                total += x * y * row[jj]
    return total


class Relation(enum.Enum):
    TOP_EQUIV_ABS_CONT = "TopEquivAbsCont"
    TOP_EQUIV_NOT_ABS_CONT = "TopEquivNotAbsCont"
    NOT_TOP_EQUIV_ZERO_INTERSECTION = "NotTopEquivZeroIntersection"
    NOT_TOP_EQUIV_POSITIVE_INTERSECTION = "NotTopEquivPositiveIntersection"

    @property
    def topologically_equivalent(self):
        return self in (Relation.TOP_EQUIV_ABS_CONT, Relation.TOP_EQUIV_NOT_ABS_CONT)

    @property
    def absolutely_continuous(self):
        return self is Relation.TOP_EQUIV_ABS_CONT


def foliation_relation(H, H2):
    """Where the pair ``(H, H2)`` sits among the four relation classes."""
    _same_family(H, H2)
    if H.topological_support == H2.topological_support:
        if H.support == H2.support:
            return Relation.TOP_EQUIV_ABS_CONT
        return Relation.TOP_EQUIV_NOT_ABS_CONT
    if intersection_number(H, H2) > 0:
        return Relation.NOT_TOP_EQUIV_POSITIVE_INTERSECTION
    return Relation.NOT_TOP_EQUIV_ZERO_INTERSECTION


def core_foliation(surface, family=None):
    """The horizontal foliation ``sum_j b_j gamma_j`` of a cylinder surface.

    Core curves are matched to family members by cylinder label.
    """
    if family is None:
        family = CurveFamily.disjoint(surface.labels)
    weights = [0] * len(family)
    for c in surface.cylinders:
        try:
            j = family.index(c.label)
        except ValueError:
            raise FamilyMismatch(f"family has no curve for cylinder {c.label}") from None
        weights[j] = c.height
    return MeasuredMulticurve(family, tuple(weights))
