import math
from fractions import Fraction

import numpy as np
import pytest

from src.errors import CurveValidationError, ZeroPolynomialError
from src.rootfind import SUSPECTED_MULTIPLE, real_roots
from src.trigpoly import Polynomial


def test_simple_roots_sorted():
    # (u - 1/2)(u + 1/3) = u^2 - u/6 - 1/6
    p = Polynomial((Fraction(-1, 6), Fraction(-1, 6), 1))
    roots = real_roots(p, -1.0, 1.0)
    assert roots.values == pytest.approx([-1 / 3, 0.5], abs=1e-12)
    assert all(not r.suspected_multiple for r in roots)


def test_double_root_flagged():
    p = Polynomial((Fraction(1, 4), -1, 1))
    roots = real_roots(p, -1.0, 1.0)
    assert len(roots) == 1
    assert roots.roots[0].value == pytest.approx(0.5, abs=1e-12)
    assert roots.roots[0].multiplicity_hint == SUSPECTED_MULTIPLE


def test_endpoint_roots():
    p = Polynomial((-1, 0, 1))  # u^2 - 1
    roots = real_roots(p, -1.0, 1.0)
    assert roots.values == [-1.0, 1.0]
    assert all(r.endpoint for r in roots)


def test_roots_outside_interval_ignored():
    p = Polynomial((-4, 0, 1))
    assert len(real_roots(p, -1.0, 1.0)) == 0


def test_constant_has_no_roots():
    assert len(real_roots(Polynomial((3,)), -1.0, 1.0)) == 0


def test_invalid_arguments():
    with pytest.raises(ZeroPolynomialError):
        real_roots(Polynomial(), -1.0, 1.0)
    with pytest.raises(CurveValidationError):
        real_roots(Polynomial((0, 1)), 1.0, -1.0)
    with pytest.raises(CurveValidationError):
        real_roots(Polynomial((0, 1)), -1.0, 1.0, tol=0.0)


def test_close_roots_separated():
    # roots at 0.1 and 0.1 + 1e-6
    a, b = Fraction(1, 10), Fraction(1, 10) + Fraction(1, 10**6)
    p = Polynomial((a * b, -(a + b), 1))
    roots = real_roots(p, -1.0, 1.0)
    assert roots.values == pytest.approx([float(a), float(b)], abs=1e-12)


def _planted(rng):
    """A random polynomial of degree <= 8 with known distinct rational roots in [-1, 1]."""
    k = int(rng.integers(1, 7))
    roots = sorted(Fraction(int(n), 97) for n in rng.choice(np.arange(-96, 97), size=k, replace=False))
    p = Polynomial((int(rng.choice([-3, -1, 2, 5])),))
    for r in roots:
        p = p * Polynomial((-r, 1))
    if rng.random() < 0.5:
        p = p * Polynomial((5, 0, 1))  # no real roots
    return p, roots


@pytest.mark.parametrize("seed", range(8))
def test_planted_roots_recovered(seed):
    rng = np.random.default_rng(seed)
    for _ in range(25):
        p, roots = _planted(rng)
        assert p.degree <= 8
        found = real_roots(p, -1.0, 1.0)
        assert found.values == pytest.approx([float(r) for r in roots], abs=1e-10)


@pytest.mark.parametrize("k", [-7, -1, 2, 3, 1000])
def test_roots_unchanged_by_integer_scaling(k):
    p, _ = _planted(np.random.default_rng(11))
    base = real_roots(p, -1.0, 1.0)
    scaled = real_roots(p * k, -1.0, 1.0)
    assert scaled.values == pytest.approx(base.values, abs=1e-12)


@pytest.mark.parametrize(
    "coeffs, expected",
    [
        ((-2, 6, 8), [-1.0, 0.25]),  # 8u^2 + 6u - 2
        ((-1, 2, 4), [(-1 - math.sqrt(5)) / 4, (-1 + math.sqrt(5)) / 4]),  # 4u^2 + 2u - 1
    ],
)
def test_quadratic_examples(coeffs, expected):
    roots = real_roots(Polynomial(coeffs), -1.0, 1.0)
    assert roots.values == pytest.approx(expected, abs=1e-12)
    assert roots.roots[0].endpoint is (expected[0] == -1.0)
