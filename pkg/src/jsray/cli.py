"""``jsray`` command line: deterministic key = value reports.

Each result line carries the citation key of the result that produced it::

    $ jsray limit-distance --m 1,2 --mp 2,2
    limit = 0.34657359027997264 ; cite = Thm-main
"""
import argparse
import math
import sys
from fractions import Fraction

from . import asymptotics, conformal, extremal, qcmap, ray
from ._arith import parse_real
from .errors import InvariantViolation, JSRayError
from .specfile import format_surface_spec, parse_surface_spec
from .surface import Relation


class CliError(JSRayError):
    pass


def fmt(x):
    if isinstance(x, bool):
        return "true" if x else "false"
    if x is None:
        return "none"
    if isinstance(x, Fraction):
        return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
    if isinstance(x, int):
        return str(x)
    if isinstance(x, float):
        if math.isnan(x):
            return "nan"
        if math.isinf(x):
            return "inf" if x > 0 else "-inf"
        return format(x, ".17g")
    return str(x)


class Report:
    def __init__(self):
        self.items = []
        self.table = None
        self.text = None

    def add(self, key, value, cite):
        self.items.append((key, value, cite))

    def render(self, layout):
        out = []
        if layout == "lines":
            out += [f"{k} = {fmt(v)} ; cite = {c}" for k, v, c in self.items]
        else:
            width = max((len(k) for k, _, _ in self.items), default=0)
            out += [f"{k.ljust(width)}  {fmt(v)}    [{c}]" for k, v, c in self.items]
        if self.table is not None:
            header, rows = self.table
            out.append("# " + " ".join(header))
            out += [" ".join(fmt(v) for v in row) for row in rows]
        return "\n".join(out) + "\n"


def _vector(text):
    try:
        return [parse_real(x) for x in text.split(",")]
    except (ValueError, ZeroDivisionError):
        raise CliError(f"bad vector {text!r}") from None


def _real(text):
    try:
        return parse_real(text)
    except (ValueError, ZeroDivisionError):
        raise CliError(f"bad number {text!r}") from None


def _read(path):
    if path == "-":
        return sys.stdin.read()
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise CliError(f"cannot read {path}: {exc.strerror}") from None


def _spec(path):
    return parse_surface_spec(_read(path))


def _moduli_pair(args):
    if args.files:
        if len(args.files) != 2:
            raise CliError("give two spec files or --m/--mp")
        a, b = (_spec(p).surface for p in args.files)
        if a.labels != b.labels:
            if sorted(a.labels) != sorted(b.labels):
                raise CliError("the two surfaces have different cylinder labels")
        return list(a.moduli), [b.cylinder(lab).modulus for lab in a.labels]
    if args.m is None or args.mp is None:
        raise CliError("need --m and --mp (or two spec files)")
    return _vector(args.m), _vector(args.mp)


# -- commands -----------------------------------------------------------------


def cmd_limit_distance(args, rep):
    m, mp = _moduli_pair(args)
    rep.add("limit", asymptotics.limit_distance(m, mp), "Thm-main")
    eq = asymptotics.modular_equivalence(m, mp)
    rep.add("modularly_equivalent", eq is not None, "Cor-asymptotic")
    if eq is not None:
        rep.add("lambda", eq.ratio, "Cor-asymptotic")
        rep.add("alpha", eq.shift, "Cor-asymptotic")


def cmd_detour(args, rep):
    m, mp = _moduli_pair(args)
    rep.add("detour", asymptotics.detour_metric(m, mp), "Walsh-detour")


def cmd_optimal_shift(args, rep):
    m, mp = _moduli_pair(args)
    opt = asymptotics.optimal_shift(m, mp)
    rep.add("beta", opt.beta, "Prop-shift")
    rep.add("min", opt.min_value, "Prop-shift")
    rep.add("half_detour", asymptotics.detour_metric(m, mp) / 2, "Walsh-detour")


def _bool(text):
    low = text.lower()
    if low in ("1", "true", "yes", "y"):
        return True
    if low in ("0", "false", "no", "n"):
        return False
    raise CliError(f"expected a boolean, got {text!r}")


def cmd_classify(args, rep):
    if args.files:
        if len(args.files) != 2:
            raise CliError("classify takes two spec files or flags")
        sa, sb = (_spec(p) for p in args.files)
        if sa.family.labels != sb.family.labels:
            raise CliError("spec files must declare the same curve family")
        fam = sa.family
        from .surface import MeasuredMulticurve, core_foliation

        H = core_foliation(sa.surface, fam)
        H2 = MeasuredMulticurve(fam, core_foliation(sb.surface, sb.family).weights)
        d = asymptotics.describe_pair(
            H, H2, sa.surface, sb.surface,
            uniquely_ergodic=args.ue, critical_graph_has_closed_loops=not args.no_loops,
        )
    else:
        if args.relation is None:
            raise CliError("need --relation (or two spec files)")
        try:
            rel = Relation(args.relation)
        except ValueError:
            raise CliError(f"unknown relation {args.relation!r}") from None
        js = tuple(_bool(x) for x in args.js.split(","))
        if len(js) == 1:
            js = js * 2
        d = asymptotics.PairDescriptor(
            rel, js, args.ue, not args.no_loops, args.mod_equiv, args.endpoints_equal
        )
    v = asymptotics.classify(d)
    rep.add("verdict", v.outcome.value, v.citation)
    rep.add("leaf", v.leaf, v.citation)
    rep.add("bounded", v.bounded, v.citation)
    rep.add("relation", d.relation.value, "foliation-relation")


def cmd_flow(args, rep):
    spec = _spec(args.file)
    t = float(_real(args.t))
    flowed = ray.flow(spec.surface, t)
    rep.text = format_surface_spec(flowed, spec.curves, spec.family)
    rep.add("area", flowed.area, "flow")
    for lab, mod in zip(flowed.labels, flowed.moduli):
        rep.add(f"modulus[{lab}]", mod, "flow")


def cmd_endpoint(args, rep):
    rep.text = ray.endpoint_descriptor(_spec(args.file).surface).to_text()


def cmd_endpoints_equal(args, rep):
    a, b = (ray.endpoint_descriptor(_spec(p).surface) for p in (args.file1, args.file2))
    rep.add("equal", ray.endpoints_equal(a, b), "endpoint-model")


def _i_values(args, spec):
    if args.i is not None:
        return _vector(args.i)
    if args.curve is None:
        raise CliError("need --i or --curve")
    if args.curve not in spec.curves:
        raise CliError(f"no curve named {args.curve!r}")
    mu = spec.curves[args.curve]
    I = spec.family.pairing
    out = []
    for lab in spec.surface.labels:
        j = spec.family.index(lab)
        out.append(sum((I[j][jj] * w for jj, w in enumerate(mu.weights)), Fraction(0)))
    return out


def cmd_e_functional(args, rep):
    if args.file:
        spec = _spec(args.file)
        m, i = list(spec.surface.moduli), _i_values(args, spec)
    else:
        if args.m is None or args.i is None:
            raise CliError("need --m and --i (or a spec file)")
        m, i = _vector(args.m), _vector(args.i)
    rep.add("E_squared", extremal.e_functional_squared(m, i), "Walsh-limit")
    rep.add("E", extremal.e_functional(m, i), "Walsh-limit")


def cmd_sup_ratio(args, rep):
    m, mp = _moduli_pair(args)
    rep.add("sup_ratio", extremal.sup_ratio(m, mp), "Walsh-sup")
    if args.oracle:
        rep.add("oracle", extremal.sup_ratio_oracle(m, mp, args.samples, args.seed), "oracle")
        rep.add("samples", args.samples, "oracle")
        rep.add("seed", args.seed, "oracle")


def cmd_length_area(args, rep):
    spec = _spec(args.file)
    i = _i_values(args, spec)
    la = extremal.length_area_bound(spec.surface, i)
    rep.add("bound", la.bound, "length-area")
    rep.add("e_squared", la.e_squared, "Walsh-limit")
    rep.add("equality", extremal.length_area_equality(spec.surface, i), "length-area")


def _grid(text):
    try:
        a, b, step = (float(parse_real(x)) for x in text.split(":"))
    except (ValueError, ZeroDivisionError):
        raise CliError(f"bad grid {text!r}, expected a:b:step") from None
    if step <= 0 or b < a:
        raise CliError("grid needs a <= b and step > 0")
    n = int(math.floor((b - a) / step + 1e-9)) + 1
    return [a + i * step for i in range(n)]


def cmd_qc_trajectory(args, rep):
    c = complex(float(_real(args.c_re)), float(_real(args.c_im)))
    psi = []
    if args.psi:
        psi = [complex(x.replace(" ", "")) for x in args.psi.split(",")]
    cfg = qcmap.QcMapConfig(
        M=float(_real(args.M)), m=float(_real(args.m)), epsilon=float(_real(args.eps)),
        X=None if args.X is None else float(_real(args.X)), c=c, psi=tuple(psi),
        psi_bound=None if args.C is None else float(_real(args.C)),
    )
    report = qcmap.dilatation_trajectory(cfg, _grid(args.t_grid))
    rep.add("X", cfg.X, "qc-lemma")
    rep.add("limit_target", report.limit_target, "qc-lemma")
    rep.add("target_bound", report.target_bound, "qc-lemma")
    rep.add("validity_threshold", report.validity_threshold, "qc-lemma")
    rep.table = (
        ("t", "K_P", "K_Q_bound", "K_total", "target", "valid"),
        [(t, p, q, k, report.limit_target, ok)
         for t, ok, p, q, k in zip(report.t_grid, report.valid, report.K_P, report.K_Q, report.K_total)],
    )


def cmd_diagram_check(args, rep):
    a, b, t = (float(_real(x)) for x in (args.a, args.b, args.t))
    err = conformal.check_diagram_commutativity(a, b, t, args.grid)
    rep.add("max_error", err, "chart-diagram")
    rep.add("half_modulus", conformal.RoundAnnulus(math.exp(-math.pi * b / a)).modulus, "chart-diagram")


# -- parser -------------------------------------------------------------------


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise CliError(message)


def build_parser():
    common = _Parser(add_help=False)
    common.add_argument("--format", choices=("text", "lines"), default="lines")
    common.add_argument("--seed", type=int, default=0)

    p = _Parser(prog="jsray", description="Jenkins-Strebel ray computations", parents=[common])
    sub = p.add_subparsers(dest="command", parser_class=_Parser)

    def pair_cmd(name, fn, help_):
        sp = sub.add_parser(name, parents=[common], help=help_)
        sp.add_argument("files", nargs="*", help="two surface-spec files ('-' for stdin)")
        sp.add_argument("--m")
        sp.add_argument("--mp")
        sp.set_defaults(func=fn)
        return sp

    pair_cmd("limit-distance", cmd_limit_distance, "limit of the distance between two rays")
    pair_cmd("detour", cmd_detour, "detour metric between the endpoints")
    pair_cmd("optimal-shift", cmd_optimal_shift, "best time shift and the minimal limit")
    sp = pair_cmd("sup-ratio", cmd_sup_ratio, "sup of E'^2/E^2")
    sp.add_argument("--oracle", action="store_true")
    sp.add_argument("--samples", type=int, default=10_000)

    sp = sub.add_parser("classify", parents=[common], help="bounded/divergent/asymptotic verdict")
    sp.add_argument("files", nargs="*")
    sp.add_argument("--relation", help="|".join(r.value for r in Relation))
    sp.add_argument("--js", default="true,true", help="Jenkins-Strebel flags for H,H'")
    sp.add_argument("--ue", action="store_true", help="uniquely ergodic")
    sp.add_argument("--no-loops", action="store_true", help="critical graphs have no closed loops")
    sp.add_argument("--mod-equiv", action="store_true")
    sp.add_argument("--endpoints-equal", action="store_true")
    sp.set_defaults(func=cmd_classify)

    sp = sub.add_parser("flow", parents=[common], help="flow a surface for time t")
    sp.add_argument("file")
    sp.add_argument("--t", required=True)
    sp.set_defaults(func=cmd_flow)

    sp = sub.add_parser("endpoint", parents=[common], help="canonical endpoint descriptor")
    sp.add_argument("file")
    sp.set_defaults(func=cmd_endpoint)

    sp = sub.add_parser("endpoints-equal", parents=[common], help="compare two endpoints")
    sp.add_argument("file1")
    sp.add_argument("file2")
    sp.set_defaults(func=cmd_endpoints_equal)

    sp = sub.add_parser("e-functional", parents=[common], help="limit extremal-length functional")
    sp.add_argument("file", nargs="?")
    sp.add_argument("--m")
    sp.add_argument("--i")
    sp.add_argument("--curve")
    sp.set_defaults(func=cmd_e_functional)

    sp = sub.add_parser("length-area", parents=[common], help="length-area lower bound")
    sp.add_argument("file")
    sp.add_argument("--i")
    sp.add_argument("--curve")
    sp.set_defaults(func=cmd_length_area)

    sp = sub.add_parser("qc-trajectory", parents=[common], help="dilatation trajectory of F_t")
    sp.add_argument("--M", required=True)
    sp.add_argument("--m", required=True)
    sp.add_argument("--eps", required=True)
    sp.add_argument("--X")
    sp.add_argument("--c-re", default="1")
    sp.add_argument("--c-im", default="0")
    sp.add_argument("--psi", help="tail coefficients c2,c3,... (complex literals allowed)")
    sp.add_argument("--C", help="tail bound constant")
    sp.add_argument("--t-grid", required=True, help="a:b:step")
    sp.set_defaults(func=cmd_qc_trajectory)

    sp = sub.add_parser("diagram-check", parents=[common], help="chart/flow commutativity error")
    sp.add_argument("--a", required=True)
    sp.add_argument("--b", required=True)
    sp.add_argument("--t", required=True)
    sp.add_argument("--grid", type=int, default=64)
    sp.set_defaults(func=cmd_diagram_check)
    return p


def execute(argv):
    """Run one command; returns ``(stdout_text, exit_status)``."""
    try:
        args = build_parser().parse_args(argv)
        if not getattr(args, "command", None):
            raise CliError("missing command")
        rep = Report()
        args.func(args, rep)
        body = rep.render(args.format) if rep.items or rep.table else ""
        return (rep.text or "") + body, 0
    except (InvariantViolation, AssertionError) as exc:
        return f"internal: {type(exc).__name__}: {_one_line(exc)}\n", 2
    except (JSRayError, ValueError, ZeroDivisionError, OverflowError) as exc:
        return f"error: {type(exc).__name__}: {_one_line(exc)}\n", 1


def _one_line(exc):
    return " ".join(str(exc).split())


def main(argv=None):
    out, status = execute(sys.argv[1:] if argv is None else argv)
    (sys.stdout if status == 0 else sys.stderr).write(out)
    return status


if __name__ == "__main__":
    sys.exit(main())
