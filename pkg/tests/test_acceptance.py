"""Acceptance gate: one test per criterion, each timed against its budget.

Run ``pytest tests/test_acceptance.py`` for the per-criterion PASS/FAIL lines
in the terminal summary.
"""
import cmath
import itertools
import math
import time
from fractions import Fraction

import numpy as np

from jsray import (
    CurveFamily,
    Outcome,
    PairDescriptor,
    QcMapConfig,
    Relation,
    RoundAnnulus,
    check_diagram_commutativity,
    classify,
    core_foliation,
    describe_pair,
    detour_metric,
    dilatation_trajectory,
    endpoint_descriptor,
    endpoints_equal,
    flow,
    glue_involution,
    kerckhoff_lower_bound,
    length_area_bound,
    length_area_equality,
    limit_distance,
    modular_equivalence,
    optimal_shift,
    rect_to_round,
    scan_shift,
    sup_ratio,
    sup_ratio_oracle,
)
from jsray.asymptotics import LEAVES
from jsray.extremal import sampled_ratio_max

from builders import self_glued, split_torus, stacked


class Gate:
    """Collects failed checks so the summary line is written even on failure."""

    def __init__(self, record, number, title, budget):
        self.record, self.number, self.title, self.budget = record, number, title, budget
        self.failures = []

    def check(self, ok, what):
        if not ok and len(self.failures) < 5:
            self.failures.append(what)

    def __enter__(self):
        self.start = time.perf_counter()
        return self

    def __exit__(self, exc_type, exc, tb):
        elapsed = time.perf_counter() - self.start
        if exc_type is not None:
            self.failures.append(f"{exc_type.__name__}: {exc}")
        if elapsed >= self.budget:
            self.failures.append(f"runtime {elapsed:.3f}s over budget {self.budget}s")
        passed = not self.failures
        detail = f"({elapsed:.3f}s / {self.budget}s)"
        if not passed:
            detail += " " + "; ".join(self.failures)
        self.record(self.number, self.title, passed, detail)
        if exc_type is None:
            assert passed, "; ".join(self.failures)
        return False


def random_moduli(rng, k):
    return list(np.exp(rng.uniform(-3, 3, size=k)))


def random_rational(rng, k):
    return [Fraction(int(rng.integers(1, 200)), int(rng.integers(1, 60))) for _ in range(k)]


def test_criterion_1_shift_scan(acceptance_record):
    rng = np.random.default_rng(101)
    with Gate(acceptance_record, 1, "shift scan matches optimal_shift and detour/2", 5.0) as g:
        for n in range(100):
            k = int(rng.integers(1, 7))
            m, mp = random_moduli(rng, k), random_moduli(rng, k)
            scan = scan_shift(m, mp, -5.0, 5.0, 1e-4)
            opt = optimal_shift(m, mp)
            g.check(abs(scan.min_value - opt.min_value) < 1e-8, f"pair {n}: min {scan.min_value} vs {opt.min_value}")
            g.check(abs(opt.min_value - detour_metric(m, mp) / 2) < 1e-8, f"pair {n}: min vs detour/2")
            g.check(abs(scan.beta - opt.beta) < 1e-4, f"pair {n}: argmin {scan.beta} vs beta {opt.beta}")


def test_criterion_2_sup_ratio_oracle(acceptance_record):
    rng = np.random.default_rng(202)
    with Gate(acceptance_record, 2, "sup_ratio closed form equals seeded oracle", 2.0) as g:
        for n in range(100):
            k = int(rng.integers(1, 7))
            m, mp = random_moduli(rng, k), random_moduli(rng, k)
            closed = sup_ratio(m, mp)
            oracle = sup_ratio_oracle(m, mp, samples=10_000, seed=n)
            g.check(abs(closed - oracle) <= 1e-12 * closed, f"pair {n}: {closed} vs {oracle}")
            sampled = sampled_ratio_max(m, mp, 10_000, n)
            g.check(sampled <= closed, f"pair {n}: sample {sampled} exceeds {closed}")


def test_criterion_3_upper_estimate(acceptance_record):
    twist = 2 * cmath.exp(1j * math.pi / 4)
    with Gate(acceptance_record, 3, "dilatation trajectories reach the limit target", 1.0) as g:
        for M, c in itertools.product((0.25, 0.5, 1, 2, 4), (1, twist)):
            cfg = QcMapConfig(M=M, m=1, epsilon=0.3, c=c)
            rep = dilatation_trajectory(cfg, range(2, 9))
            g.check(all(rep.valid), f"M={M} c={c}: invalid grid point")
            g.check(abs(rep.K_total[-1] - rep.limit_target) < 1e-3, f"M={M} c={c}: K(8)={rep.K_total[-1]}")
            g.check(rep.limit_target < max(M, 1 / M) + 0.3, f"M={M}: target {rep.limit_target}")
            if c == 1:
                g.check(all(abs(k - rep.limit_target) <= 1e-15 for k in rep.K_total),
                        f"M={M}: identity case not exact")


def test_criterion_4_conformal(acceptance_record):
    rng = np.random.default_rng(404)
    params = [(1, 1, 0.0), (1, 1, 1.0), (2, 3, 0.5), (0.5, 2, 2.0), (3, 0.7, 0.25)]
    with Gate(acceptance_record, 4, "half-annulus modulus, involution, chart diagram", 1.0) as g:
        for a, b, _ in params:
            inner = abs(rect_to_round(0.5j * b, a))
            g.check(abs(RoundAnnulus(inner).modulus - b / a / 2) < 1e-12, f"a={a} b={b}: modulus")
        for _ in range(20):
            m = float(rng.uniform(0.1, 3))
            w = np.exp(-2 * m * math.pi * rng.uniform(0.01, 0.99, 64)) * np.exp(1j * rng.uniform(-math.pi, math.pi, 64))
            err = float(np.max(np.abs(glue_involution(glue_involution(w, m), m) - w)))
            g.check(err < 1e-14, f"m={m}: involution error {err}")
        for a, b, t in params:
            err = check_diagram_commutativity(a, b, t, 64)
            g.check(err < 1e-12, f"a={a} b={b} t={t}: diagram error {err}")


def test_criterion_5_detour_axioms(acceptance_record):
    rng = np.random.default_rng(505)
    with Gate(acceptance_record, 5, "detour metric axioms", 1.0) as g:
        for n in range(1000):
            k = int(rng.integers(1, 7))
            x, y, z = (random_moduli(rng, k) for _ in range(3))
            dxy, dyx = detour_metric(x, y), detour_metric(y, x)
            g.check(abs(dxy - dyx) <= 1e-12, f"triple {n}: symmetry")
            lam = float(np.exp(rng.uniform(-5, 5)))
            g.check(abs(detour_metric(x, [lam * v for v in x])) <= 1e-12, f"triple {n}: projective")
            g.check(dxy <= detour_metric(x, z) + detour_metric(z, y) + 1e-12, f"triple {n}: triangle")


def test_criterion_6_classifier(acceptance_record):
    expected = {
        "not-top-equiv/positive-intersection": (Outcome.DIVERGENT, "Ivanov"),
        "not-top-equiv/zero-intersection": (Outcome.DIVERGENT, "Lenzhen-Masur"),
        "top-equiv/not-abs-cont": (Outcome.DIVERGENT, "Lenzhen-Masur"),
        "abs-cont/js/mod-equiv+same-endpoint": (Outcome.ASYMPTOTIC, "Cor-asymptotic"),
        "abs-cont/js/not-mod-equiv": (Outcome.BOUNDED_NOT_ASYMPTOTIC, "Cor-asymptotic"),
        "abs-cont/js/mod-equiv+different-endpoint": (Outcome.BOUNDED_NOT_ASYMPTOTIC, "Cor-asymptotic"),
        "abs-cont/not-js/ue+no-loops": (Outcome.ASYMPTOTIC, "Masur"),
        "abs-cont/not-js/otherwise": (Outcome.UNKNOWN, "Ivanov"),
    }
    R = Relation
    table = [
        (PairDescriptor(R.NOT_TOP_EQUIV_POSITIVE_INTERSECTION), "not-top-equiv/positive-intersection"),
        (PairDescriptor(R.NOT_TOP_EQUIV_ZERO_INTERSECTION), "not-top-equiv/zero-intersection"),
        (PairDescriptor(R.TOP_EQUIV_NOT_ABS_CONT, (False, False)), "top-equiv/not-abs-cont"),
        (PairDescriptor(R.TOP_EQUIV_ABS_CONT, (True, True), modularly_equivalent=True, endpoints_equal=True),
         "abs-cont/js/mod-equiv+same-endpoint"),
        (PairDescriptor(R.TOP_EQUIV_ABS_CONT, (True, True), endpoints_equal=True), "abs-cont/js/not-mod-equiv"),
        (PairDescriptor(R.TOP_EQUIV_ABS_CONT, (True, True), modularly_equivalent=True),
         "abs-cont/js/mod-equiv+different-endpoint"),
        (PairDescriptor(R.TOP_EQUIV_ABS_CONT, (False, False), uniquely_ergodic=True,
                        critical_graph_has_closed_loops=False), "abs-cont/not-js/ue+no-loops"),
        (PairDescriptor(R.TOP_EQUIV_ABS_CONT, (False, False), uniquely_ergodic=True), "abs-cont/not-js/otherwise"),
    ]
    with Gate(acceptance_record, 6, "classifier leaves and the asymptotic biconditional", 0.1) as g:
        g.check(set(LEAVES) == set(expected), "leaf set differs")
        seen = set()
        for d, leaf in table:
            v = classify(d)
            seen.add(v.leaf)
            g.check(v.leaf == leaf, f"{leaf}: got {v.leaf}")
            g.check((v.outcome, v.citation) == expected[leaf], f"{leaf}: got {v.outcome} / {v.citation}")
        g.check(seen == set(expected), "not every leaf reached")
        for mod, same in itertools.product((False, True), repeat=2):
            v = classify(PairDescriptor(R.TOP_EQUIV_ABS_CONT, (True, True),
                                        modularly_equivalent=mod, endpoints_equal=same))
            g.check((v.outcome is Outcome.ASYMPTOTIC) == (mod and same), f"flags {mod},{same}")
        fam = CurveFamily.disjoint(["A"])
        base = split_torus([0, 1, 2])
        for other in (split_torus([1, 2, 0], b=3), split_torus([1, 0, 2], b=3), split_torus([0, 1, 2], a=2, b=5)):
            d = describe_pair(core_foliation(base, fam), core_foliation(other, fam), base, other)
            mod = modular_equivalence(base.moduli, other.moduli) is not None
            same = endpoints_equal(endpoint_descriptor(base), endpoint_descriptor(other))
            g.check((classify(d).outcome is Outcome.ASYMPTOTIC) == (mod and same), "surface pair biconditional")


def test_criterion_7_lower_estimates(acceptance_record):
    rng = np.random.default_rng(707)
    with Gate(acceptance_record, 7, "Kerckhoff and length-area lower bounds", 2.0) as g:
        for n in range(100):
            k = int(rng.integers(1, 7))
            m, mp = random_rational(rng, k), random_rational(rng, k)
            coords = [[int(i == j) for j in range(k)] for i in range(k)]
            lb = kerckhoff_lower_bound(m, mp, coords)
            g.check(lb == 0.5 * math.log(sup_ratio(m, mp)), f"pair {n}: {lb}")
            g.check(lb <= limit_distance(m, mp), f"pair {n}: above limit distance")
        equal_cases = 0
        for n in range(1000):
            k = int(rng.integers(1, 5))
            a = [Fraction(int(rng.integers(1, 12)), int(rng.integers(1, 6))) for _ in range(k)]
            b = [Fraction(int(rng.integers(1, 12)), int(rng.integers(1, 6))) for _ in range(k)]
            if n % 4 == 0:
                scale = Fraction(int(rng.integers(1, 5)))
                i = [scale * x for x in a]
            else:
                i = [int(rng.integers(0, 6)) for _ in range(k)]
            s = self_glued(list(zip(a, b)))
            la = length_area_bound(s, i)
            eq = length_area_equality(s, i)
            equal_cases += eq
            g.check(la.bound <= la.e_squared, f"instance {n}: bound above E^2")
            g.check((la.bound == la.e_squared) == eq, f"instance {n}: equality predicate")
        g.check(equal_cases >= 200, "too few equality instances")


def test_criterion_8_flow_and_endpoints(acceptance_record):
    rng = np.random.default_rng(808)
    with Gate(acceptance_record, 8, "flow scaling and endpoint invariance", 1.0) as g:
        for _ in range(20):
            k = int(rng.integers(1, 5))
            s = stacked([Fraction(int(rng.integers(1, 20)), int(rng.integers(1, 8))) for _ in range(k)])
            for t in (0.1, 1.0, 10.0):
                f = flow(s, t)
                for m0, mt in zip(s.moduli, f.moduli):
                    want = math.exp(2 * t) * float(m0)
                    g.check(abs(mt - want) <= 1e-12 * want, f"t={t}: modulus {mt} vs {want}")
        for perm in itertools.permutations(range(3)):
            s = split_torus(list(perm))
            d0 = endpoint_descriptor(s)
            for t in (0.1, 1.0, 10.0):
                g.check(endpoints_equal(d0, endpoint_descriptor(flow(s, t))), f"{perm}: t={t}")
        pool = [endpoint_descriptor(split_torus(list(p), b=int(rng.integers(1, 4))))
                for p in itertools.permutations(range(3))]
        pool += [endpoint_descriptor(split_torus([0, 1], signs=sg)) for sg in ([1, 1], [1, -1], [-1, 1])]
        for x, y, z in itertools.product(pool, repeat=3):
            g.check(endpoints_equal(x, x), "reflexive")
            g.check(endpoints_equal(x, y) == endpoints_equal(y, x), "symmetric")
            if endpoints_equal(x, y) and endpoints_equal(y, z):
                g.check(endpoints_equal(x, z), "transitive")
