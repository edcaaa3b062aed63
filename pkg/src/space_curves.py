"""Space curves over a planar chain: periodic helices and torus knots.

A space curve here is a chain in the xy-plane with height z = a sin(theta + Q t).
Planar features lift to 3D when the heights (for crossings) or the height
derivative (for cusps) agree.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Tuple, Union

import numpy as np

from .chain import Chain, Number, numbers_equal, to_number
from .errors import HelixSpecError, NotSPeriodicError, TorusKnotSpecError
from .two_chain import TWO_PI, TwoChain, circular_gap, self_intersection_classes, singular_points, zeros

logger = logging.getLogger(__name__)

CAPAREDA = "capareda"
CONSTANT_PRECESSION = "constantPrecession"
S_PERIODIC = "sPeriodic"
GENERAL = "general"

PROJECTION_SELF_INTERSECTION = "projection-self-intersection"
SPACE_SELF_INTERSECTION = "space-self-intersection"
SPACE_SINGULAR = "space-singular"

SPHERE = "sphere"
HYPERBOLOID = "hyperboloid"


@dataclass(frozen=True)
class SpaceCurve:
    planar: Chain
    a: float
    theta: float = 0.0
    Q: Fraction = Fraction(1)

    @property
    def period(self) -> float:
        return TWO_PI * Fraction(self.Q).denominator

    def eval(self, t):
        x, y = self.planar.eval(t)
        z = self.a * np.sin(self.theta + float(self.Q) * np.asarray(t))
        return x, y, (float(z) if np.ndim(z) == 0 else z)

    def derivative(self, t):
        dx, dy = self.planar.derivative(t)
        q = float(self.Q)
        dz = self.a * q * np.cos(self.theta + q * np.asarray(t))
        return dx, dy, (float(dz) if np.ndim(dz) == 0 else dz)

    def z(self, t) -> float:
        return float(self.a * math.sin(self.theta + float(self.Q) * t))

    def dz(self, t) -> float:
        q = float(self.Q)
        return float(self.a * q * math.cos(self.theta + q * t))


@dataclass(frozen=True)
class PeriodicHelix:
    planar: TwoChain
    a: float
    theta: float
    Q: Fraction

    def __post_init__(self) -> None:
        object.__setattr__(self, "Q", coerce_q(self.Q))
        object.__setattr__(self, "a", float(self.a))
        object.__setattr__(self, "theta", float(self.theta))

    def to_space_curve(self) -> SpaceCurve:
        return SpaceCurve(self.planar.to_chain(), self.a, self.theta, self.Q)

    @property
    def half_difference(self) -> Fraction:
        return Fraction(self.planar.Q, 2)

    @property
    def is_s_periodic(self) -> bool:
        return self.theta == 0.0 and self.Q == self.half_difference

    def to_json(self) -> dict:
        return {"planar": self.planar.to_json(), "a": self.a, "theta": self.theta, "Q": str(self.Q)}


@dataclass(frozen=True)
class HelixClassification:
    kind: str
    quadric_residual: Optional[float] = None


@dataclass(frozen=True)
class Envelope:
    quadric: str
    lower: float
    upper: float


@dataclass(frozen=True)
class TorusKnotSpec:
    p: int
    q: int
    R: float
    r: float
    a: Optional[float] = None

    def __post_init__(self) -> None:
        if self.p < 1 or self.q < 1:
            raise TorusKnotSpecError(f"p and q must be positive, got p={self.p}, q={self.q}")
        if math.gcd(self.p, self.q) != 1:
            raise TorusKnotSpecError(f"p and q must be coprime, got p={self.p}, q={self.q}")
        if not float(self.R) > float(self.r) > 0:
            raise TorusKnotSpecError(f"Need R > r > 0, got R={self.R}, r={self.r}")
        if self.a is not None and not float(self.a) > 0:
            raise TorusKnotSpecError(f"Amplitude a must be positive, got {self.a}")

    @property
    def height(self) -> float:
        return float(self.r if self.a is None else self.a)

    def to_json(self) -> dict:
        out = {"p": self.p, "q": self.q, "R": float(self.R), "r": float(self.r)}
        if self.a is not None:
            out["a"] = float(self.a)
        return out


@dataclass(frozen=True)
class SpacePoint:
    t: float
    s: Optional[float]
    position: Tuple[float, float, float]
    kind: str

    @property
    def point(self) -> Tuple[float, float]:
        return self.position[:2]


# --------------------------------------------------------------- helices --
def _quadric_residual(h: PeriodicHelix, sign: int, samples: int = 100) -> float:
    curve = h.to_space_curve()
    t = np.linspace(0.0, curve.period, samples, endpoint=False)
    x, y, z = curve.eval(t)
    c1, c2 = float(h.planar.c1), float(h.planar.c2)
    target = (c1 + c2) ** 2
    return float(np.max(np.abs(x * x + y * y + sign * z * z - target)))


def classify_helix(h: PeriodicHelix) -> HelixClassification:
    if not h.is_s_periodic:
        return HelixClassification(GENERAL)
    c1c2 = h.planar.c1 * h.planar.c2
    a2 = h.a * h.a
    if float(c1c2) > 0 and numbers_equal(a2, 4 * float(c1c2)):
        kind, sign = CAPAREDA, 1
    elif float(c1c2) < 0 and numbers_equal(a2, -4 * float(c1c2)):
        kind, sign = CONSTANT_PRECESSION, -1
    else:
        return HelixClassification(S_PERIODIC)
    residual = _quadric_residual(h, sign)
    if residual > 1e-9 * max(1.0, (abs(float(h.planar.c1)) + abs(float(h.planar.c2))) ** 2):
        logger.warning("%s helix quadric identity off by %.3g", kind, residual)
    return HelixClassification(kind, residual)


def s_helix_envelope(h: PeriodicHelix) -> Envelope:
    """Bounds of x²+y²+z² (c1 c2 > 0) or x²+y²−z² (c1 c2 < 0) over the curve."""
    if not h.is_s_periodic:
        raise NotSPeriodicError("Envelope bounds need theta = 0 and Q = (l - m)/2")
    c1, c2 = float(h.planar.c1), float(h.planar.c2)
    base = (c1 + c2) ** 2
    a2 = h.a * h.a
    if c1 * c2 > 0:
        quadric, delta = SPHERE, a2 - 4 * c1 * c2
    else:
        quadric, delta = HYPERBOLOID, -(a2 + 4 * c1 * c2)
    # value = base + delta * sin^2, sin^2 ranging over [0, 1]
    return Envelope(quadric, min(base, base + delta), max(base, base + delta))


def envelope_values(h: PeriodicHelix, samples: int = 1000) -> np.ndarray:
    curve = h.to_space_curve()
    t = np.linspace(0.0, curve.period, samples, endpoint=False)
    x, y, z = curve.eval(t)
    sign = 1.0 if float(h.planar.c1 * h.planar.c2) > 0 else -1.0
    return x * x + y * y + sign * z * z


# ---------------------------------------------------------- torus knots --
def torus_knot_point(spec: TorusKnotSpec, t):
    t = np.asarray(t, dtype=float)
    R, r = float(spec.R), float(spec.r)
    rho = R + r * np.cos(spec.q * t)
    return rho * np.cos(spec.p * t), rho * np.sin(spec.p * t), spec.height * np.sin(spec.q * t)


def torus_knot_fourier(spec: TorusKnotSpec) -> Chain:
    """The projection as a three-term chain on exponents p, p+q, p-q."""
    R, half = float(spec.R), float(spec.r) / 2.0
    return Chain.from_terms([(spec.p, R, R), (spec.p + spec.q, half, half), (spec.p - spec.q, half, half)])


def torus_knot_curve(spec: TorusKnotSpec) -> SpaceCurve:
    return SpaceCurve(torus_knot_fourier(spec), spec.height, 0.0, Fraction(spec.q))


def torus_identity_residual(spec: TorusKnotSpec, samples: int = 1000) -> float:
    """max |(R − √(x²+y²))² + z² − r²| over the curve."""
    t = np.linspace(0.0, TWO_PI, samples, endpoint=False)
    x, y, z = torus_knot_curve(spec).eval(t)
    value = (float(spec.R) - np.hypot(x, y)) ** 2 + z * z - float(spec.r) ** 2
    return float(np.max(np.abs(value)))


def s_torus_envelope(spec: TorusKnotSpec) -> Tuple[float, float]:
    if spec.a is None:
        raise TorusKnotSpecError("s_torus_envelope needs the amplitude a")
    spread = float(spec.a) ** 2 - float(spec.r) ** 2
    return (0.0, spread) if spread >= 0 else (spread, 0.0)


def projection_self_intersections(spec: TorusKnotSpec) -> List[SpacePoint]:
    if spec.p < 2:
        return []
    chain = torus_knot_fourier(spec)
    curve = torus_knot_curve(spec)
    scale = chain.scale()
    amp = chain.amplitude()
    points: List[SpacePoint] = []
    for k in range(1, spec.p):
        for j in range(spec.q):
            t = (k * math.pi / spec.p + j * math.pi / spec.q) % TWO_PI
            tau = (-k * math.pi / spec.p + j * math.pi / spec.q) % TWO_PI
            x1, y1 = chain.eval(t)
            x2, y2 = chain.eval(tau)
            if math.hypot(x1 - x2, y1 - y2) > 1e-9 * amp:
                logger.warning("torus (%d,%d): M_%d,%d planar mismatch", spec.p, spec.q, k, j)
                continue
            dx1, dy1 = chain.derivative(t)
            dx2, dy2 = chain.derivative(tau)
            if abs(dy1 * dx2 - dy2 * dx1) <= 1e-9 * scale * scale:
                logger.warning("torus (%d,%d): M_%d,%d has parallel tangents", spec.p, spec.q, k, j)
                continue
            if abs(math.sin(spec.q * t) - math.sin(spec.q * tau)) <= 1e-12:
                logger.warning("torus (%d,%d): M_%d,%d heights coincide", spec.p, spec.q, k, j)
            points.append(SpacePoint(t, tau, (float(x1), float(y1), curve.z(t)), PROJECTION_SELF_INTERSECTION))
    _assert_distinct(points)
    return points


def _assert_distinct(points: List[SpacePoint]) -> None:
    params = sorted(v for p in points for v in (p.t, p.s))
    for a, b in zip(params, params[1:]):
        if circular_gap(a, b) <= 1e-9:
            raise AssertionError(f"duplicate crossing parameter {a}")


def crossing_slope_margin(spec: TorusKnotSpec) -> float:
    """Smallest |y'(t)x'(tau) - y'(tau)x'(t)| over the crossing pairs."""
    chain = torus_knot_fourier(spec)
    margins = []
    for p in projection_self_intersections(spec):
        dx1, dy1 = chain.derivative(p.t)
        dx2, dy2 = chain.derivative(p.s)
        margins.append(abs(dy1 * dx2 - dy2 * dx1))
    return min(margins) if margins else math.inf


def shift_rotation(spec: TorusKnotSpec, j: int) -> float:
    """Angle beta with r'(t + 2j pi/q) equal to r'(t) rotated by beta (planar part)."""
    return (TWO_PI * j * spec.p / spec.q) % TWO_PI


def min_speed(spec: TorusKnotSpec, samples: int = 10_000) -> float:
    t = np.linspace(0.0, TWO_PI, samples, endpoint=False)
    dx, dy, dz = torus_knot_curve(spec).derivative(t)
    return float(np.min(np.sqrt(dx * dx + dy * dy + dz * dz)))


# --------------------------------------------------------------- lifting --
def _sheets(curve: SpaceCurve) -> List[float]:
    den = Fraction(curve.Q).denominator
    return [TWO_PI * j for j in range(den)]


def _lift_pair(curve: SpaceCurve, t: float, s: float, tol: float) -> List[SpacePoint]:
    lifted = []
    sheets = _sheets(curve)
    for shift_t in sheets:
        for shift_s in sheets:
            tt, ss = t + shift_t, s + shift_s
            zt, zs = curve.z(tt), curve.z(ss)
            if abs(zt - zs) <= tol:
                x, y = curve.planar.eval(tt)
                lifted.append(SpacePoint(tt, ss, (float(x), float(y), zt), SPACE_SELF_INTERSECTION))
    return lifted


def lift_planar_features(
    subject: Union[PeriodicHelix, TorusKnotSpec], oracle_config=None
) -> List[SpacePoint]:
    """Planar crossings and cusps that stay crossings and cusps of the space curve."""
    if isinstance(subject, TorusKnotSpec):
        curve = torus_knot_curve(subject)
        pairs = [(p.t, p.s) for p in projection_self_intersections(subject)]
        cusps: List[float] = []
    else:
        curve = subject.to_space_curve()
        tc = subject.planar
        pairs = []
        for cls in self_intersection_classes(tc, oracle_config=oracle_config):
            pairs.extend((mbr.t, mbr.s) for mbr in cls.orbit if mbr.s is not None)
        zero_class = zeros(tc)
        if zero_class is not None and len(zero_class.orbit) > 1:
            params = zero_class.params
            pairs.extend((a, b) for i, a in enumerate(params) for b in params[i + 1 :])
        singular = singular_points(tc)
        cusps = singular.params if singular is not None else []

    tol = 1e-9 * (abs(curve.a) + 1.0)
    lifted: List[SpacePoint] = []
    for t, s in pairs:
        lifted.extend(_lift_pair(curve, t, s, tol))
    dz_tol = 1e-9 * (abs(curve.a) * abs(float(curve.Q)) + 1.0)
    for t in cusps:
        for shift in _sheets(curve):
            if abs(curve.dz(t + shift)) <= dz_tol:
                x, y, z = curve.eval(t + shift)
                lifted.append(SpacePoint(t + shift, None, (float(x), float(y), float(z)), SPACE_SINGULAR))
    lifted.sort(key=lambda p: (p.kind, p.t))
    logger.debug("lift_planar_features: %d of %d pairs/cusps lift", len(lifted), len(pairs) + len(cusps))
    return lifted


def helix_projection_is_regular(h: PeriodicHelix) -> bool:
    """No planar cusps unless |m c1| = |l c2|."""
    return singular_points(h.planar) is None


def coerce_q(value: Union[str, Number]) -> Fraction:
    q = to_number(value)
    if not isinstance(q, Fraction):
        raise HelixSpecError(f"Q must be an exact rational, got {value!r}")
    return q
