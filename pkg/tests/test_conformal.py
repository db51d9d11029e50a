import cmath
import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from jsray import (
    RoundAnnulus,
    annulus_modulus,
    check_diagram_commutativity,
    glue_involution,
    rect_to_round,
    round_flow,
    round_to_rect,
)
from jsray.errors import DomainError, ZeroInput


def test_chart_examples():
    assert rect_to_round(0, 1) == 1
    assert abs(rect_to_round(1, 1) - 1) < 1e-15
    assert abs(rect_to_round(0.5j, 1) - math.exp(-math.pi)) < 1e-16


def test_upper_chart_needs_height():
    with pytest.raises(DomainError):
        rect_to_round(0.5j, 1, upper=True)


@given(st.floats(0.1, 10), st.floats(0.1, 10))
def test_half_cylinder_has_half_modulus(a, b):
    inner = abs(rect_to_round(0.5j * b, a))
    assert annulus_modulus(inner) == pytest.approx(b / a / 2, rel=1e-12, abs=1e-12)


def test_halves_meet_on_the_middle_circle():
    a, b = 2.0, 3.0
    x = np.linspace(0, a, 17)
    lower = rect_to_round(x + 0.5j * b, a)
    upper = rect_to_round(x + 0.5j * b, a, b, upper=True)
    m = b / a
    assert np.max(np.abs(glue_involution(lower, m) - upper)) < 1e-14


@given(st.floats(0.05, 3), st.floats(0.01, 0.99), st.floats(-math.pi, math.pi))
def test_glue_is_an_involution(m, frac, theta):
    r = math.exp(-2 * m * math.pi * frac)
    w = cmath.rect(r, theta)
    assert abs(glue_involution(glue_involution(w, m), m) - w) < 1e-14


def test_glue_fixed_point_and_zero():
    w = math.exp(-math.pi)
    assert glue_involution(w, 1) == pytest.approx(w, rel=1e-15)
    with pytest.raises(ZeroInput):
        glue_involution(0, 1)


def test_round_flow_examples():
    w = 0.3 + 0.4j
    assert round_flow(w, 0) == w
    w = cmath.rect(math.exp(-math.pi), 0.7)
    out = round_flow(w, 0.5 * math.log(2))
    assert abs(out) == pytest.approx(math.exp(-2 * math.pi), rel=1e-13)
    assert cmath.phase(out) == pytest.approx(0.7, abs=1e-15)
    with pytest.raises(DomainError):
        round_flow(1.5, 1)
    with pytest.raises(DomainError):
        round_flow(0.5, -1)


def test_round_to_rect_inverts_chart():
    z = 0.3 + 0.2j
    assert abs(round_to_rect(rect_to_round(z, 1), 1) - z) < 1e-15
    with pytest.raises(ZeroInput):
        round_to_rect(0, 1)


def test_round_annulus_at_time():
    ann = RoundAnnulus.at_time(2.0, 0.3)
    assert ann.modulus == pytest.approx(math.exp(0.6), rel=1e-14)
    assert ann.contains(0.9) and not ann.contains(1.0)
    with pytest.raises(DomainError):
        RoundAnnulus(1.0)


@pytest.mark.parametrize("a,b,t,n", [(1, 1, 0, 16), (1, 1, 1, 32), (2, 3, 0.5, 64)])
def test_diagram_commutes(a, b, t, n):
    err = check_diagram_commutativity(a, b, t, n)
    assert err < 1e-12
    if t == 0:
        assert err == 0
