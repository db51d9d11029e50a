"""Line-based surface-spec format.

One directive per line; blank lines and ``#`` comments are ignored::

    cylinder <label> a=<real> b=<real>
    segment <id> cyl=<label> side=top|bottom off=<real> len=<real>
    glue <id> <id> sign=+|-
    curve <name> weights=<w1,...,wk>
    pairing <j> <j'> <value>

Reals are decimals or ``p/q`` and are read exactly.  The curve family has
``k`` members: first the core curves of the cylinders in declaration order
(named by cylinder label), then extra curves named ``#<j>``.  ``pairing``
indices are 1-based family positions and set both ``I[j][j']`` and ``I[j'][j]``.
"""
from dataclasses import dataclass, field
from fractions import Fraction

from ._arith import parse_real
from .errors import JSRayError, SpecSemanticError, SpecSyntaxError
from .surface import (
    CurveFamily,
    Cylinder,
    GluingTable,
    MeasuredMulticurve,
    Segment,
    build_surface,
    core_foliation,
)


@dataclass
class SurfaceSpec:
    surface: object
    family: CurveFamily
    curves: dict = field(default_factory=dict)

    @property
    def core(self):
        """The horizontal foliation of the surface over the spec's family."""
        return core_foliation(self.surface, self.family)


def _keyvals(tokens, lineno, required):
    out = {}
    for tok in tokens:
        if "=" not in tok:
            raise SpecSyntaxError(lineno, f"expected key=value, got {tok!r}")
        k, v = tok.split("=", 1)
        if k in out:
            raise SpecSyntaxError(lineno, f"repeated key {k}")
        out[k] = v
    missing = [k for k in required if k not in out]
    extra = [k for k in out if k not in required]
    if missing:
        raise SpecSyntaxError(lineno, f"missing {', '.join(missing)}")
    if extra:
        raise SpecSyntaxError(lineno, f"unknown key {extra[0]}")
    return out


def _real(text, lineno):
    try:
        return parse_real(text)
    except (ValueError, ZeroDivisionError):
        raise SpecSyntaxError(lineno, f"not a number: {text!r}") from None


def parse_surface_spec(text):
    """Parse spec text into a validated :class:`SurfaceSpec`."""
    cyls, segs, glues, curves, pairs = [], [], [], [], []
    seen_cyl, seen_seg, seen_curve = {}, {}, {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        head, *rest = line.split()
        if head == "cylinder":
            if len(rest) != 3:
                raise SpecSyntaxError(lineno, "usage: cylinder <label> a=<real> b=<real>")
            label = rest[0]
            if label in seen_cyl:
                raise SpecSemanticError(lineno, f"duplicate cylinder label {label}")
            kv = _keyvals(rest[1:], lineno, ("a", "b"))
            seen_cyl[label] = lineno
            cyls.append((lineno, label, _real(kv["a"], lineno), _real(kv["b"], lineno)))
        elif head == "segment":
            if len(rest) != 5:
                raise SpecSyntaxError(lineno, "usage: segment <id> cyl=<label> side=top|bottom off=<real> len=<real>")
            sid = rest[0]
            if sid in seen_seg:
                raise SpecSemanticError(lineno, f"duplicate segment id {sid}")
            kv = _keyvals(rest[1:], lineno, ("cyl", "side", "off", "len"))
            if kv["side"] not in ("top", "bottom"):
                raise SpecSyntaxError(lineno, f"side must be top or bottom, got {kv['side']!r}")
            seen_seg[sid] = lineno
            segs.append((lineno, sid, kv["cyl"], kv["side"], _real(kv["off"], lineno), _real(kv["len"], lineno)))
        elif head == "glue":
            if len(rest) != 3:
                raise SpecSyntaxError(lineno, "usage: glue <id> <id> sign=+|-")
            kv = _keyvals(rest[2:], lineno, ("sign",))
            if kv["sign"] not in ("+", "-"):
                raise SpecSyntaxError(lineno, f"sign must be + or -, got {kv['sign']!r}")
            glues.append((lineno, rest[0], rest[1], kv["sign"]))
        elif head == "curve":
            if len(rest) != 2:
                raise SpecSyntaxError(lineno, "usage: curve <name> weights=<w1,...,wk>")
            name = rest[0]
            if name in seen_curve:
                raise SpecSemanticError(lineno, f"duplicate curve name {name}")
            kv = _keyvals(rest[1:], lineno, ("weights",))
            seen_curve[name] = lineno
            curves.append((lineno, name, [_real(w, lineno) for w in kv["weights"].split(",")]))
        elif head == "pairing":
            if len(rest) != 3:
                raise SpecSyntaxError(lineno, "usage: pairing <j> <j'> <value>")
            try:
                j, jj = int(rest[0]), int(rest[1])
            except ValueError:
                raise SpecSyntaxError(lineno, "pairing indices must be integers") from None
            pairs.append((lineno, j, jj, _real(rest[2], lineno)))
        else:
            raise SpecSyntaxError(lineno, f"unknown directive {head!r}")

    if not cyls:
        raise SpecSemanticError(0, "no cylinders")

    def semantic(lineno, fn):
        try:
            return fn()
        except JSRayError as exc:
            raise SpecSemanticError(lineno, f"{type(exc).__name__}: {exc}") from None

    cylinders = [semantic(ln, lambda l=l, a=a, b=b: Cylinder(l, a, b)) for ln, l, a, b in cyls]
    segments = []
    for seg in segs:
        segments.append(semantic(seg[0], lambda seg=seg: Segment(*seg[1:])))
    first = glues[0][0] if glues else (segs[0][0] if segs else 0)
    gluing = semantic(first, lambda: GluingTable(segments, [(a, b, s) for _, a, b, s in glues]))
    surface = semantic(cyls[0][0], lambda: build_surface(cylinders, gluing))

    n = len(cylinders)
    sizes = {len(w) for _, _, w in curves}
    if len(sizes) > 1:
        raise SpecSemanticError(curves[0][0], "FamilyMismatch: curves have different weight counts")
    k = max([n] + list(sizes) + [max(j, jj) for _, j, jj, _ in pairs])
    if sizes and sizes != {k}:
        raise SpecSemanticError(curves[0][0], f"FamilyMismatch: weight vectors need {k} entries")
    labels = [c.label for c in cylinders] + [f"#{j}" for j in range(n + 1, k + 1)]
    matrix = [[Fraction(0)] * k for _ in range(k)]
    fixed = {}
    for ln, j, jj, v in pairs:
        if not (1 <= j <= k and 1 <= jj <= k):
            raise SpecSemanticError(ln, f"FamilyMismatch: pairing index out of range 1..{k}")
        key = (min(j, jj), max(j, jj))
        if key in fixed and fixed[key] != v:
            raise SpecSemanticError(ln, "FamilyMismatch: conflicting pairing values")
        fixed[key] = v
        matrix[j - 1][jj - 1] = v
        matrix[jj - 1][j - 1] = v
    pline = pairs[0][0] if pairs else 0
    family = semantic(pline, lambda: CurveFamily(tuple(labels), tuple(map(tuple, matrix))))
    named = {}
    for ln, name, w in curves:
        named[name] = semantic(ln, lambda w=w: MeasuredMulticurve(family, tuple(w)))
    spec = SurfaceSpec(surface, family, named)
    semantic(pline, lambda: spec.core)
    return spec


def _num(x):
    if isinstance(x, Fraction):
        return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
    return repr(float(x))


def format_surface_spec(spec_or_surface, curves=None, family=None):
    """Serialize back to spec text; exact surfaces round-trip to equal objects."""
    if isinstance(spec_or_surface, SurfaceSpec):
        surface = spec_or_surface.surface
        family = spec_or_surface.family if family is None else family
        curves = spec_or_surface.curves if curves is None else curves
    else:
        surface = spec_or_surface
    curves = curves or {}
    out = []
    for c in surface.cylinders:
        out.append(f"cylinder {c.label} a={_num(c.circumference)} b={_num(c.height)}")
    for s in surface.gluing.segments:
        out.append(f"segment {s.id} cyl={s.cylinder} side={s.side} off={_num(s.offset)} len={_num(s.length)}")
    for i, j, sign in surface.gluing.pairs:
        out.append(f"glue {i} {j} sign={'+' if sign > 0 else '-'}")
    for name, mc in curves.items():
        out.append(f"curve {name} weights={','.join(_num(w) for w in mc.weights)}")
    if family is not None:
        I = family.pairing
        for j in range(len(family)):
            for jj in range(j + 1, len(family)):
                if I[j][jj] != 0:
                    out.append(f"pairing {j + 1} {jj + 1} {_num(I[j][jj])}")
    return "\n".join(out) + "\n"
