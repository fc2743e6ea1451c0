import math
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from graphexplore.surd import SQRT2, QuadSurd, as_exact, exact_sign

fracs = st.builds(Fraction, st.integers(-40, 40), st.integers(1, 9))


def test_sqrt2_squares_to_two():
    assert SQRT2 * SQRT2 == 2
    assert as_exact(SQRT2 * SQRT2) == Fraction(2)


def test_cactus_bound_value():
    bound = Fraction(5, 2) + SQRT2
    assert Fraction(391, 100) < bound < Fraction(392, 100)


@given(fracs, fracs)
def test_sign_matches_float(a, b):
    x = QuadSurd(a, b)
    f = float(a) + float(b) * math.sqrt(2)
    if abs(f) > 1e-9:
        assert exact_sign(x) == (1 if f > 0 else -1)
    else:
        assert exact_sign(x) == 0


@given(fracs, fracs)
def test_floor_matches_float_away_from_integers(a, b):
    x = QuadSurd(a, b)
    f = float(a) + float(b) * math.sqrt(2)
    if abs(f - round(f)) > 1e-9:
        assert math.floor(x) == math.floor(f)


@given(fracs, fracs, fracs, fracs)
def test_division_inverts_multiplication(a, b, c, d):
    y = QuadSurd(c, d)
    if y.sign() == 0:
        return
    x = QuadSurd(a, b)
    assert (x * y) / y == x


def test_division_by_zero():
    with pytest.raises(ZeroDivisionError):
        QuadSurd(1, 1) / QuadSurd(0, 0)
