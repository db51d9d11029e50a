from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from jsray import (
    CurveFamily,
    Cylinder,
    GluingTable,
    MeasuredMulticurve,
    Relation,
    Segment,
    build_surface,
    core_foliation,
    foliation_relation,
    intersection_number,
    moduli_vector,
)
from jsray.errors import (
    FamilyMismatch,
    IntersectingSupport,
    NonPositiveDatum,
    NormalizationError,
    PairingError,
    PartitionError,
)

from builders import self_glued, stacked

positive = st.fractions(min_value=Fraction(1, 20), max_value=20, max_denominator=50)


def test_two_cylinder_area_and_moduli():
    s = stacked([1, 2])
    assert s.area == 3
    assert s.moduli == (1, 2)
    assert s.exact


def test_flat_torus():
    s = stacked([1])
    assert s.area == 1 and s.moduli == (1,)


def test_partition_must_cover_side():
    cyls = [Cylinder("A", 1, 1)]
    segs = [
        Segment("t", "A", "top", 0, Fraction(9, 10)),
        Segment("b", "A", "bottom", 0, Fraction(9, 10)),
    ]
    with pytest.raises(PartitionError):
        build_surface(cyls, GluingTable(segs, [("t", "b", 1)]))


def test_overlapping_segments_rejected():
    segs = [
        Segment("t1", "A", "top", 0, Fraction(1, 2)),
        Segment("t2", "A", "top", Fraction(1, 4), Fraction(3, 4)),
        Segment("b1", "A", "bottom", 0, Fraction(1, 2)),
        Segment("b2", "A", "bottom", Fraction(1, 2), Fraction(1, 2)),
    ]
    with pytest.raises((PartitionError, PairingError)):
        build_surface([Cylinder("A", 1, 1)], GluingTable(segs, [("t1", "b1", 1), ("t2", "b2", 1)]))


@pytest.mark.parametrize("a,b", [(0, 1), (1, -2), (float("nan"), 1), (float("inf"), 1)])
def test_nonpositive_cylinder(a, b):
    with pytest.raises(NonPositiveDatum):
        Cylinder("A", a, b)


def test_gluing_must_be_fixed_point_free_involution():
    segs = [Segment("t", "A", "top", 0, 1), Segment("b", "A", "bottom", 0, 1)]
    with pytest.raises(PairingError):
        GluingTable(segs, [("t", "t", 1)])
    with pytest.raises(PairingError):
        GluingTable(segs, [])
    with pytest.raises(PairingError):
        GluingTable(segs, [("t", "b", 1), ("b", "t", 1)])
    with pytest.raises(PairingError):
        GluingTable(segs, [("t", "b", 2)])


def test_glued_lengths_must_match():
    segs = [Segment("t", "A", "top", 0, 1), Segment("b", "A", "bottom", 0, Fraction(1, 2))]
    with pytest.raises(PairingError):
        GluingTable(segs, [("t", "b", 1)])


def test_unit_norm():
    s = stacked([Fraction(1, 2), Fraction(1, 2)], unit_norm=True)
    assert s.area == 1
    with pytest.raises(NormalizationError):
        stacked([1, 2], unit_norm=True)
    n = stacked([1, 2]).normalized()
    assert abs(float(n.area) - 1) < 1e-12
    assert [float(x) for x in n.moduli] == pytest.approx([1, 2], rel=1e-12)


@pytest.mark.parametrize(
    "dims,expected",
    [
        ([(1, 1), (1, 2)], (1, 2)),
        ([(2, 2)], (1,)),
        ([(1, 1), (2, 1), (4, 1)], (1, Fraction(1, 2), Fraction(1, 4))),
    ],
)
def test_moduli_vector(dims, expected):
    assert moduli_vector(self_glued(dims)) == expected


def test_float_inputs_switch_to_float_mode():
    s = self_glued([(1.0, 0.1), (1, Fraction(1, 3))])
    assert not s.exact
    assert all(isinstance(x, float) for x in s.moduli)


@given(st.lists(st.tuples(positive, positive), min_size=1, max_size=5))
def test_area_and_moduli_exact(dims):
    s = self_glued(dims)
    assert s.area == sum(a * b for a, b in dims)
    assert s.moduli == tuple(b / a for a, b in dims)


# -- multicurves -----------------------------------------------------------------


def family3(i12=0, i13=0, i23=0):
    return CurveFamily(("g1", "g2", "g3"), ((0, i12, i13), (i12, 0, i23), (i13, i23, 0)))


def test_intersection_number_examples():
    fam = family3(i12=3)
    mu = MeasuredMulticurve(fam, (2, 0, 0))
    nu = MeasuredMulticurve(fam, (0, 1, 0))
    assert intersection_number(mu, nu) == 6
    zero = MeasuredMulticurve(fam, (0, 0, 0))
    assert intersection_number(mu, zero) == 0
    assert zero.is_zero


def test_core_curves_do_not_intersect():
    s = stacked([1, 2, 3])
    H = core_foliation(s)
    assert intersection_number(H, H) == 0
    assert H.weights == (1, 2, 3)


def test_pairing_validation():
    with pytest.raises(FamilyMismatch):
        CurveFamily(("a", "b"), ((0, 1), (2, 0)))
    with pytest.raises(FamilyMismatch):
        CurveFamily(("a", "b"), ((1, 0), (0, 0)))
    with pytest.raises(FamilyMismatch):
        CurveFamily(("a", "a"), ((0, 0), (0, 0)))
    with pytest.raises(IntersectingSupport):
        MeasuredMulticurve(family3(i12=1), (1, 1, 0))
    with pytest.raises(FamilyMismatch):
        MeasuredMulticurve(family3(), (1, 1))
    with pytest.raises(FamilyMismatch):
        intersection_number(MeasuredMulticurve(family3(), (1, 0, 0)),
                            MeasuredMulticurve(family3(i12=1), (1, 0, 0)))


def test_foliation_relation_examples():
    fam = family3(i13=2)
    both = MeasuredMulticurve(fam, (1, 2, 0))
    assert foliation_relation(both, MeasuredMulticurve(fam, (3, 1, 0))) is Relation.TOP_EQUIV_ABS_CONT
    g1 = MeasuredMulticurve(fam, (1, 0, 0))
    g2 = MeasuredMulticurve(fam, (0, 1, 0))
    g3 = MeasuredMulticurve(fam, (0, 0, 1))
    assert foliation_relation(g1, g2) is Relation.NOT_TOP_EQUIV_ZERO_INTERSECTION
    assert foliation_relation(g1, g3) is Relation.NOT_TOP_EQUIV_POSITIVE_INTERSECTION
    assert intersection_number(g1, g3) > 0


def test_top_equiv_not_abs_cont_needs_minimal_component():
    # g2 and g3 are two ergodic measures on the same minimal domain
    fam = CurveFamily(("g1", "g2", "g3"), ((0,) * 3,) * 3, minimal=(None, "D", "D"))
    H = MeasuredMulticurve(fam, (1, 1, 0))
    H2 = MeasuredMulticurve(fam, (1, 0, 1))
    assert foliation_relation(H, H2) is Relation.TOP_EQUIV_NOT_ABS_CONT
    assert not H.is_jenkins_strebel
    assert MeasuredMulticurve(fam, (1, 0, 0)).is_jenkins_strebel


@given(st.lists(st.integers(0, 5), min_size=3, max_size=3),
       st.lists(st.integers(0, 5), min_size=3, max_size=3),
       st.lists(st.integers(0, 4), min_size=3, max_size=3))
def test_intersection_symmetric_bilinear(w1, w2, ii):
    fam = family3(*ii)
    try:
        mu = MeasuredMulticurve(fam, tuple(w1))
        nu = MeasuredMulticurve(fam, tuple(w2))
    except IntersectingSupport:
        return
    assert intersection_number(mu, nu) == intersection_number(nu, mu)
    assert intersection_number(mu, nu) >= 0
    doubled = MeasuredMulticurve(fam, tuple(2 * x for x in w1))
    assert intersection_number(doubled, nu) == 2 * intersection_number(mu, nu)
