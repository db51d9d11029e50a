"""Teichmueller flow on cylinder surfaces and the endpoint of the ray.

Flowing for time ``t`` shrinks every horizontal length by ``e^-t`` and
stretches every vertical length by ``e^t``.  As ``t -> oo`` each cylinder
pinches to a node with two punctured disks attached; what survives is the
way the outer boundary circles of those disks are glued to each other.
:class:`EndpointDescriptor` records exactly that: per side, the cyclic
sequence of arc proportions, and which arcs are glued with which sign.
"""
import functools
import itertools
import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import NegativeTime
from .surface import SIDES, Cylinder, GluingTable, Segment, build_surface

#: Arc proportions are stored as integers on this grid so that float and
#: exact surfaces produce comparable descriptors.
QUANTUM = 10**12

_DISK = {"bottom": 1, "top": 2}


@dataclass(frozen=True)
class RayState:
    base: object
    time: float

    def __post_init__(self):
        if self.time < 0:
            raise NegativeTime(f"time must be >= 0, got {self.time}")

    @property
    def surface(self):
        return flow(self.base, self.time)


def flow(surface, t):
    """The surface ``Y_t``: cylinder ``(a, b)`` becomes ``(e^-t a, e^t b)``."""
    if t < 0:
        raise NegativeTime(f"time must be >= 0, got {t}")
    if t == 0:
        return surface
    shrink, stretch = math.exp(-t), math.exp(t)
    cyls = [
        Cylinder(c.label, float(c.circumference) * shrink, float(c.height) * stretch)
        for c in surface.cylinders
    ]
    segs = [
        Segment(s.id, s.cylinder, s.side, float(s.offset) * shrink, float(s.length) * shrink)
        for s in surface.gluing.segments
    ]
    return build_surface(cyls, GluingTable(segs, surface.gluing.pairs), surface.unit_norm)


@dataclass(frozen=True)
class EndpointDescriptor:
    """Combinatorics of the noded limit surface, in canonical form.

    ``sides`` holds ``(label, side, proportions)`` with proportions as
    integers in units of ``1/QUANTUM``.  ``glue`` holds
    ``((label, side, index), (label, side, index), sign)``.
    """

    nodes: tuple
    sides: tuple
    glue: tuple

    @property
    def components(self):
        """Two punctured disks per node: disk 1 bounded by the bottom side, disk 2 by the top."""
        return tuple((lab, _DISK[s], s) for lab in self.nodes for s in SIDES)

    def to_text(self):
        lines = ["endpoint-descriptor 1"]
        lines += [f"node {lab}" for lab in self.nodes]
        lines += [f"disk {lab} {k} {side}" for lab, k, side in self.components]
        for lab, side, props in self.sides:
            for idx, q in enumerate(props):
                lines.append(f"arc {lab} {side} {idx} {_fmt_quantum(q)}")
        for x, y, sign in self.glue:
            lines.append(f"glue {_fmt_end(x)} {_fmt_end(y)} {'+' if sign > 0 else '-'}")
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text):
        nodes, arcs, glue = [], {}, []
        for raw in text.splitlines():
            parts = raw.split()
            if not parts or parts[0] in ("endpoint-descriptor", "disk"):
                continue
            if parts[0] == "node":
                nodes.append(parts[1])
            elif parts[0] == "arc":
                lab, side, idx, q = parts[1], parts[2], int(parts[3]), _parse_quantum(parts[4])
                arcs.setdefault((lab, side), {})[idx] = q
            elif parts[0] == "glue":
                glue.append((_parse_end(parts[1]), _parse_end(parts[2]), 1 if parts[3] == "+" else -1))
            else:
                raise ValueError(f"unknown descriptor line: {raw!r}")
        sides = {k: [v[i] for i in sorted(v)] for k, v in arcs.items()}
        return _canonical(nodes, sides, glue)


def _fmt_quantum(q):
    return f"{q // QUANTUM}.{q % QUANTUM:012d}"


def _parse_quantum(text):
    whole, frac = text.split(".")
    return int(whole) * QUANTUM + int(frac)


def _fmt_end(end):
    return f"{end[0]}:{end[1]}:{end[2]}"


def _parse_end(text):
    lab, side, idx = text.rsplit(":", 2)
    return (lab, side, int(idx))


def _quantize(length, circumference):
    return round(Fraction(length) / Fraction(circumference) * QUANTUM)


def endpoint_descriptor(surface):
    """Canonical descriptor of ``r(oo)`` for the ray through ``surface``."""
    sides, where = {}, {}
    for c in surface.cylinders:
        for side in SIDES:
            segs = surface.gluing.side(c.label, side)
            sides[(c.label, side)] = [_quantize(s.length, c.circumference) for s in segs]
            for idx, s in enumerate(segs):
                where[s.id] = (c.label, side, idx)
    glue = [(where[i], where[j], sign) for i, j, sign in surface.gluing.pairs]
    return _canonical(surface.labels, sides, glue)


@functools.lru_cache(maxsize=4096)
def canonicalize(descriptor):
    sides = {(lab, side): list(props) for lab, side, props in descriptor.sides}
    return _canonical(descriptor.nodes, sides, descriptor.glue)


def _side_order(key):
    return (key[0], SIDES.index(key[1]))


def _canonical(nodes, sides, glue):
    # Rotating one boundary circle is a biholomorphism of its punctured disk
    # homotopic to the identity, so each side is only defined up to rotation.
    partner = {}
    for x, y, sign in glue:
        partner[x] = (y, sign)
        partner[y] = (x, sign)

    keys = sorted(sides, key=_side_order)
    candidates = []
    for key in keys:
        props = sides[key]
        n = len(props)
        items = [
            (props[i], _side_order(partner[(key[0], key[1], i)][0][:2]), partner[(key[0], key[1], i)][1])
            for i in range(n)
        ]
        rotations = [tuple(items[(r + i) % n] for i in range(n)) for r in range(n)]
        best = min(rotations)
        candidates.append([r for r in range(n) if rotations[r] == best])

    best_enc = None
    for choice in itertools.product(*candidates):
        shift = dict(zip(keys, choice))

        def move(end):
            lab, side, idx = end
            n = len(sides[(lab, side)])
            return (lab, side, (idx - shift[(lab, side)]) % n)

        enc_sides = tuple(
            (lab, side, tuple(sides[(lab, side)][(r + i) % len(sides[(lab, side)])]
                              for i in range(len(sides[(lab, side)]))))
            for (lab, side), r in zip(keys, choice)
        )
        pairs = []
        for x, y, sign in glue:
            a, b = move(x), move(y)
            if _end_order(b) < _end_order(a):
                a, b = b, a
            pairs.append((a, b, sign))
        enc_glue = tuple(sorted(pairs, key=lambda p: (_end_order(p[0]), _end_order(p[1]), p[2])))
        enc = (enc_sides, enc_glue)
        if best_enc is None or _enc_order(enc) < _enc_order(best_enc):
            best_enc = enc
    return EndpointDescriptor(tuple(sorted(set(nodes))), best_enc[0], best_enc[1])


def _end_order(end):
    return (end[0], SIDES.index(end[1]), end[2])


def _enc_order(enc):
    sides, glue = enc
    return (
        tuple(props for _, _, props in sides),
        tuple((_end_order(a), _end_order(b), s) for a, b, s in glue),
    )


def endpoints_equal(d1, d2):
    """Whether two descriptors are the same labeled canonical structure."""
    return canonicalize(d1) == canonicalize(d2)
