"""Epicycloids, hypocycloids and trochoids as two-member chains."""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Union

import numpy as np

from .chain import to_number
from .errors import IrrationalRatioError, NotACycloidError, RollingSpecError
from .two_chain import TwoChain

logger = logging.getLogger(__name__)

EPICYCLOID = "epicycloid"
HYPOCYCLOID = "hypocycloid"
EPITROCHOID = "epitrochoid"
HYPOTROCHOID = "hypotrochoid"
KINDS = (EPICYCLOID, HYPOCYCLOID, EPITROCHOID, HYPOTROCHOID)


def _rational(name: str, value) -> Fraction:
    number = to_number(value)
    if not isinstance(number, Fraction):
        raise RollingSpecError(f"{name} must be an exact rational, got {value!r}")
    return number


@dataclass(frozen=True)
class RollingSpec:
    kind: str
    R: Fraction
    r: Fraction
    d: Optional[Fraction] = None

    def __post_init__(self) -> None:
        if self.kind not in KINDS:
            raise RollingSpecError(f"Unknown rolling curve {self.kind!r}; expected one of {KINDS}")
        object.__setattr__(self, "R", _rational("R", self.R))
        object.__setattr__(self, "r", _rational("r", self.r))
        if self.R <= 0 or self.r <= 0:
            raise RollingSpecError("R and r must be positive")
        if self.is_trochoid:
            if self.d is None:
                raise RollingSpecError(f"{self.kind} needs the pen distance d")
            object.__setattr__(self, "d", _rational("d", self.d))
            if self.d <= 0:
                raise RollingSpecError("d must be positive")
        elif self.d is not None:
            raise RollingSpecError(f"{self.kind} takes no pen distance d")
        if self.is_inner and self.R <= self.r:
            raise RollingSpecError(f"{self.kind} needs R > r")

    @property
    def is_trochoid(self) -> bool:
        return self.kind in (EPITROCHOID, HYPOTROCHOID)

    @property
    def is_inner(self) -> bool:
        return self.kind in (HYPOCYCLOID, HYPOTROCHOID)

    @property
    def pen(self) -> Fraction:
        return self.d if self.is_trochoid else self.r

    def ratio(self) -> Fraction:
        """(R + r)/r for outer curves, (R - r)/r for inner ones, in lowest terms."""
        return (self.R - self.r) / self.r if self.is_inner else (self.R + self.r) / self.r

    def to_json(self) -> dict:
        out = {"kind": self.kind, "R": str(self.R), "r": str(self.r)}
        if self.d is not None:
            out["d"] = str(self.d)
        return out


@dataclass(frozen=True)
class Conversion:
    two_chain: TwoChain
    q: int
    sign: int

    def original_parameter(self, s):
        """t of the rolling curve that corresponds to chain parameter s."""
        return self.sign * self.q * np.asarray(s)


def original_curve(spec: RollingSpec, t):
    """Rolling-circle parametrisation with the circle's own angle t."""
    R, r, pen = float(spec.R), float(spec.r), float(spec.pen)
    t = np.asarray(t, dtype=float)
    k = float(spec.ratio())
    if spec.is_inner:
        x = (R - r) * np.cos(t) + pen * np.cos(k * t)
        y = (R - r) * np.sin(t) - pen * np.sin(k * t)
    else:
        x = (R + r) * np.cos(t) - pen * np.cos(k * t)
        y = (R + r) * np.sin(t) - pen * np.sin(k * t)
    return x, y


def to_two_chain(spec: RollingSpec) -> Conversion:
    ratio = spec.ratio()
    p, q = ratio.numerator, ratio.denominator
    if spec.is_inner:
        if p == q:
            raise RollingSpecError(f"R = 2r makes the {spec.kind} degenerate (a segment or an ellipse)")
        tc = TwoChain(spec.R - spec.r, spec.pen, -q, p)
        conversion = Conversion(tc, q, -1)
    else:
        tc = TwoChain(spec.R + spec.r, -spec.pen, q, p)
        conversion = Conversion(tc, q, 1)
    logger.debug("%s R=%s r=%s -> %s", spec.kind, spec.R, spec.r, tc)
    return conversion


def conversion_residual(spec: RollingSpec, samples: int = 1000) -> float:
    conversion = to_two_chain(spec)
    s = np.linspace(0.0, 2 * math.pi, samples, endpoint=False)
    x0, y0 = original_curve(spec, conversion.original_parameter(s))
    x1, y1 = conversion.two_chain.to_chain().eval(s)
    return float(np.max(np.hypot(x0 - x1, y0 - y1)))


def cusp_count(spec: RollingSpec) -> int:
    if spec.is_trochoid and spec.d != spec.r:
        raise NotACycloidError(f"{spec.kind} with d != r has no cusps")
    tc = to_two_chain(spec).two_chain
    if tc.m * tc.c1 != -tc.l * tc.c2:
        raise NotACycloidError(f"m c1 = -l c2 fails for {spec.kind} {spec.R}/{spec.r}")
    return tc.Q


def rationalize(value: float, max_denominator: int = 10**6, name: str = "value") -> Fraction:
    """Continued-fraction approximation that must reproduce ``value`` to double precision."""
    if isinstance(value, (int, Fraction)):
        return Fraction(value)
    approx = Fraction(value).limit_denominator(max_denominator)
    if abs(float(approx) - value) > 1e-12 * max(1.0, abs(value)):
        raise IrrationalRatioError(
            f"{name}={value!r} has no rational form with denominator <= {max_denominator}"
        )
    return approx


def rolling_spec_from_floats(
    kind: str,
    R: Union[float, Fraction],
    r: Union[float, Fraction],
    d: Optional[Union[float, Fraction]] = None,
    max_denominator: int = 10**6,
) -> RollingSpec:
    R_q = rationalize(R, max_denominator, "R")
    r_q = rationalize(r, max_denominator, "r")
    d_q = None if d is None else rationalize(d, max_denominator, "d")
    spec = RollingSpec(kind, R_q, r_q, d_q)
    # the radii may be rational one by one while the frequency ratio needs a huge denominator
    if spec.ratio().denominator > max_denominator:
        raise IrrationalRatioError(f"frequency ratio {spec.ratio()} exceeds the denominator cap")
    return spec

