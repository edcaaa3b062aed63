"""Points of a chain on its symmetry axes, and the general singular-point search.

An x-axis crossing pairs t1 = arccos(u0) with t2 = -t1 where u0 solves
S1(1 - u^2) + u V1(1 - u^2) = 0; a y-axis crossing (all exponents odd) pairs
t1 with pi - t1 where Q1(1 - u^2) = 0.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from typing import List, Optional, Tuple

import numpy as np

from .chain import Chain
from .errors import DegenerateChainError, NotAllOddError
from .rootfind import DEFAULT_TOL, Root, real_roots
from .trigpoly import CanonicalForms, Polynomial, canonical_forms

logger = logging.getLogger(__name__)

X_AXIS = "xAxis"
Y_AXIS = "yAxis"

SELF_INTERSECTION = "selfIntersection"
SMOOTH_VERTICAL = "smoothVertical"
SMOOTH_HORIZONTAL = "smoothHorizontal"
SINGULAR = "singular"

DERIVATIVE_TOL = 1e-9

# 1 - u^2
_ONE_MINUS_SQUARE = Polynomial((1, 0, -1))


@dataclass(frozen=True)
class AxisPoint:
    axis: str
    u0: float
    t1: float
    t2: float
    location: Tuple[float, float]
    classification: str
    slopes: Optional[Tuple[float, float]] = None
    endpoint: bool = False
    suspected_multiple: bool = False

    @property
    def is_self_intersection(self) -> bool:
        return self.classification == SELF_INTERSECTION


@dataclass(frozen=True)
class SingularPoint:
    t: float
    x: float
    y: float

    @property
    def location(self) -> Tuple[float, float]:
        return (self.x, self.y)


def derivative_threshold(chain: Chain) -> float:
    return DERIVATIVE_TOL * chain.scale()


def classify_derivatives(dx: float, dy: float, threshold: float) -> str:
    x_zero, y_zero = abs(dx) <= threshold, abs(dy) <= threshold
    if x_zero and y_zero:
        return SINGULAR
    if x_zero:
        return SMOOTH_VERTICAL
    if y_zero:
        return SMOOTH_HORIZONTAL
    return SELF_INTERSECTION


def _classify(chain: Chain, axis: str, root: Root, t1: float, t2: float) -> AxisPoint:
    threshold = derivative_threshold(chain)
    dx, dy = chain.derivative(t1)
    if root.endpoint:
        # sin t1 = 0: phi' vanishes identically there
        dx = 0.0
    classification = classify_derivatives(dx, dy, threshold)
    if root.endpoint and classification == SELF_INTERSECTION:
        classification = SMOOTH_VERTICAL
    x, y = chain.eval(t1)
    if axis == X_AXIS:
        y = 0.0
    else:
        x = 0.0

    slopes = None
    if not root.suspected_multiple:
        if classification == SELF_INTERSECTION:
            # dy/dx on the x-axis, dx/dy on the y-axis; the mirror branch has the opposite sign
            k = dy / dx if axis == X_AXIS else dx / dy
            slopes = (k, -k)
        elif (classification == SMOOTH_HORIZONTAL and axis == X_AXIS) or (
            classification == SMOOTH_VERTICAL and axis == Y_AXIS
        ):
            slopes = (0.0, 0.0)
    return AxisPoint(
        axis=axis,
        u0=root.value,
        t1=t1,
        t2=t2,
        location=(float(x), float(y)),
        classification=classification,
        slopes=slopes,
        endpoint=root.endpoint,
        suspected_multiple=root.suspected_multiple,
    )


def x_axis_polynomial(forms: CanonicalForms) -> Polynomial:
    return forms.S1.compose(_ONE_MINUS_SQUARE) + Polynomial.variable() * forms.V1.compose(_ONE_MINUS_SQUARE)


def y_axis_polynomial(forms: CanonicalForms) -> Polynomial:
    return forms.Q1.compose(_ONE_MINUS_SQUARE)


def x_axis_points(chain: Chain, tol: float = DEFAULT_TOL) -> List[AxisPoint]:
    forms = canonical_forms(chain)
    poly = x_axis_polynomial(forms)
    if poly.is_zero:
        raise DegenerateChainError("psi vanishes identically: the whole curve lies on the x-axis")
    points = []
    for root in real_roots(poly, -1.0, 1.0, tol):
        t1 = math.acos(max(-1.0, min(1.0, root.value)))
        points.append(_classify(chain, X_AXIS, root, t1, -t1))
    logger.debug("x_axis_points: %d candidates on y = 0", len(points))
    return points


def y_axis_points(chain: Chain, tol: float = DEFAULT_TOL) -> List[AxisPoint]:
    if not chain.symmetry().about_y_axis:
        evens = [t.m for t in chain.active_terms if t.m % 2 == 0]
        raise NotAllOddError(f"y-axis search needs all exponents odd; even exponents present: {evens}")
    forms = canonical_forms(chain)
    poly = y_axis_polynomial(forms)
    if poly.is_zero:
        raise DegenerateChainError("phi vanishes identically: the whole curve lies on the y-axis")
    points = []
    for root in real_roots(poly, -1.0, 1.0, tol):
        t1 = math.acos(max(-1.0, min(1.0, root.value)))
        points.append(_classify(chain, Y_AXIS, root, t1, math.pi - t1))
    logger.debug("y_axis_points: %d candidates on x = 0", len(points))
    return points


# ------------------------------------------------------ singular points --
def _singular_polynomials(forms: CanonicalForms) -> Tuple[Polynomial, Polynomial, Polynomial, Polynomial]:
    """A, B, C, D in s = sin t with phi' = A cos t + B and psi' = C cos t + D."""
    square = Polynomial((0, 0, 1))
    s = Polynomial.variable()
    a = s * forms.U2.compose(square)
    b = s * forms.Q2.compose(square)
    c = forms.S2.compose(square)
    d = forms.V2.compose(square)
    return a, b, c, d


def general_singular_points(chain: Chain, tol: float = DEFAULT_TOL) -> List[SingularPoint]:
    forms = canonical_forms(chain)
    a, b, c, d = _singular_polynomials(forms)
    condition = a * d - b * c
    if condition.is_zero:
        # phi' and psi' proportional: eliminate cos t from whichever derivative is not identically zero
        one_minus_s2 = Polynomial((1, 0, -1))
        condition = c * c * one_minus_s2 - d * d
        if condition.is_zero:
            condition = a * a * one_minus_s2 - b * b
        if condition.is_zero:
            raise DegenerateChainError("Both derivatives vanish identically")

    threshold = derivative_threshold(chain)
    found: List[SingularPoint] = []
    for root in real_roots(condition, -1.0, 1.0, tol):
        s1 = max(-1.0, min(1.0, root.value))
        cos_abs = math.sqrt(max(0.0, 1.0 - s1 * s1))
        for cos_t in {cos_abs, -cos_abs}:
            t = math.atan2(s1, cos_t) % (2 * math.pi)
            dx, dy = chain.derivative(t)
            if abs(dx) > threshold or abs(dy) > threshold:
                continue
            if any(_same_parameter(t, p.t) for p in found):
                continue
            x, y = chain.eval(t)
            found.append(SingularPoint(t, float(x), float(y)))
    found.sort(key=lambda p: p.t)
    logger.debug("general_singular_points: %d found", len(found))
    return found


def _same_parameter(a: float, b: float, tol: float = 1e-9) -> bool:
    diff = abs(a - b) % (2 * math.pi)
    return min(diff, 2 * math.pi - diff) < tol


def axis_self_intersections(chain: Chain, tol: float = DEFAULT_TOL) -> List[AxisPoint]:
    """Self-intersection AxisPoints on y = 0 and, when every exponent is odd, on x = 0."""
    points = [p for p in x_axis_points(chain, tol) if p.is_self_intersection]
    if chain.symmetry().about_y_axis:
        points += [p for p in y_axis_points(chain, tol) if p.is_self_intersection]
    return points


def points_close(p: Tuple[float, float], q: Tuple[float, float], tol: float) -> bool:
    return float(np.hypot(p[0] - q[0], p[1] - q[1])) <= tol
