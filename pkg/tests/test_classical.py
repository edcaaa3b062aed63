import math
from fractions import Fraction

import pytest

from src.classical import (
    EPICYCLOID,
    EPITROCHOID,
    HYPOCYCLOID,
    HYPOTROCHOID,
    RollingSpec,
    conversion_residual,
    cusp_count,
    rationalize,
    rolling_spec_from_floats,
    to_two_chain,
)
from src.errors import IrrationalRatioError, NotACycloidError, RollingSpecError
from src.two_chain import TwoChain, singular_points


def test_cardioid_conversion():
    spec = RollingSpec(EPICYCLOID, 1, 1)
    conversion = to_two_chain(spec)
    assert conversion.two_chain == TwoChain(2, -1, 1, 2)
    assert conversion.sign == 1
    assert cusp_count(spec) == 1


def test_astroid_conversion():
    spec = RollingSpec(HYPOCYCLOID, 4, 1)
    conversion = to_two_chain(spec)
    assert conversion.two_chain == TwoChain(3, 1, -1, 3)
    assert conversion.sign == -1
    assert cusp_count(spec) == 4


@pytest.mark.parametrize(
    "spec",
    [
        RollingSpec(EPICYCLOID, 1, 1),
        RollingSpec(EPICYCLOID, 5, 2),
        RollingSpec(HYPOCYCLOID, 4, 1),
        RollingSpec(HYPOCYCLOID, 5, "3/2"),
        RollingSpec(EPITROCHOID, 3, 1, "1/2"),
        RollingSpec(HYPOTROCHOID, 5, 3, 5),
    ],
)
def test_conversion_traces_the_same_curve(spec):
    assert conversion_residual(spec) < 1e-12


def test_rational_ratio_uses_lowest_terms():
    # (5 + 2)/2 = 7/2: the chain runs on exponents 2 and 7
    tc = to_two_chain(RollingSpec(EPICYCLOID, 5, 2)).two_chain
    assert (tc.m, tc.l) == (2, 7)
    assert cusp_count(RollingSpec(EPICYCLOID, 5, 2)) == 5


def test_cycloid_cusps_match_singular_points():
    for spec in (RollingSpec(EPICYCLOID, 2, 1), RollingSpec(HYPOCYCLOID, 5, 1)):
        cusps = singular_points(to_two_chain(spec).two_chain)
        assert len(cusps.orbit) == cusp_count(spec)


def test_trochoid_has_no_cusps():
    with pytest.raises(NotACycloidError):
        cusp_count(RollingSpec(EPITROCHOID, 3, 1, "1/2"))
    assert cusp_count(RollingSpec(EPITROCHOID, 3, 1, 1)) == 3


def test_spec_validation():
    with pytest.raises(RollingSpecError):
        RollingSpec("spirograph", 1, 1)
    with pytest.raises(RollingSpecError):
        RollingSpec(EPICYCLOID, 1.5, 1)
    with pytest.raises(RollingSpecError):
        RollingSpec(EPITROCHOID, 3, 1)
    with pytest.raises(RollingSpecError):
        RollingSpec(EPICYCLOID, 3, 1, 1)
    with pytest.raises(RollingSpecError):
        RollingSpec(HYPOCYCLOID, 1, 2)
    with pytest.raises(RollingSpecError):
        to_two_chain(RollingSpec(HYPOCYCLOID, 2, 1))


def test_rationalize():
    assert rationalize(0.5) == Fraction(1, 2)
    assert rationalize(0.1) == Fraction(1, 10)
    with pytest.raises(IrrationalRatioError):
        rationalize(math.sqrt(2), max_denominator=100)


def test_spec_from_floats():
    spec = rolling_spec_from_floats(HYPOCYCLOID, 4.0, 1.0)
    assert spec.R == 4 and spec.r == 1
    assert to_two_chain(spec).two_chain == TwoChain(3, 1, -1, 3)
