"""Feature inventory of two-member chains f(t) = c1 e^{imt} + c2 e^{ilt}.

With Q = l - m, f(t + 2pi/Q) = e^{2 pi i m/Q} f(t), so every self-intersection,
zero and cusp comes in a module class of Q points related by that rotation.
Fold points (one derivative vanishing) exist when (m c1)^2 = (l c2)^2 and sit
on the lattices 2k pi/(l+m) and (2k+1) pi/(l+m).
"""

from __future__ import annotations

import cmath
import logging
import math
from dataclasses import dataclass, field, replace
from typing import Iterable, List, Optional, Sequence, Tuple

import numpy as np

from .axis_analysis import axis_self_intersections, derivative_threshold
from .chain import Chain, Number, is_exact, number_to_json, numbers_equal, to_number
from .errors import ConditionNotMetError, CurveValidationError, InvariantError, TwoChainValidationError

logger = logging.getLogger(__name__)

TWO_PI = 2.0 * math.pi

SELF_INTERSECTION = "selfIntersection"
SINGULAR = "singular"
FOLD_PHI_DOT = "foldPhiDot"
FOLD_PSI_DOT = "foldPsiDot"
ZERO = "zero"

ANALYTIC = "analytic"
ORACLE_SEEDED = "oracleSeeded"

RETURN_POINT_FIRST_KIND = "returnPointFirstKind"
DOUBLE_SINGULARITY = "doubleSingularity"

ORBIT_TOL = 1e-9


def wrap_angle(t: float) -> float:
    w = math.fmod(t, TWO_PI)
    if w < 0:
        w += TWO_PI
    # fmod can land on 2pi - tiny; keep parameters in [0, 2pi)
    return 0.0 if abs(w - TWO_PI) < 1e-15 else w


def circular_gap(a: float, b: float) -> float:
    diff = abs(a - b) % TWO_PI
    return min(diff, TWO_PI - diff)


@dataclass(frozen=True)
class TwoChain:
    c1: Number
    c2: Number
    m: int
    l: int

    def __post_init__(self) -> None:
        object.__setattr__(self, "c1", to_number(self.c1))
        object.__setattr__(self, "c2", to_number(self.c2))
        object.__setattr__(self, "m", int(self.m))
        object.__setattr__(self, "l", int(self.l))
        if math.gcd(abs(self.m), abs(self.l)) != 1:
            raise TwoChainValidationError(f"gcd(|m|, |l|) must be 1, got m={self.m}, l={self.l}")
        if not self.l > self.m:
            raise TwoChainValidationError(f"Need l > m, got m={self.m}, l={self.l}")
        if self.l == -self.m:
            raise TwoChainValidationError("l = -m gives an ellipse traversal, not a two-chain")
        if float(self.c1) == 0.0 or float(self.c2) == 0.0:
            raise TwoChainValidationError("Both coefficients must be nonzero")

    @classmethod
    def from_chain(cls, chain: Chain) -> Optional["TwoChain"]:
        """The two-chain form of a subclass-1.1 chain with exactly two active terms."""
        if chain.as_subclass_1_1() is None:
            return None
        active = chain.active_terms
        if len(active) != 2:
            return None
        lo, hi = sorted(active, key=lambda t: t.m)
        if hi.m == -lo.m:
            return None
        return cls(lo.c, hi.c, lo.m, hi.m)

    @property
    def Q(self) -> int:
        return self.l - self.m

    @property
    def is_exact(self) -> bool:
        return is_exact(self.c1) and is_exact(self.c2)

    def to_chain(self) -> Chain:
        return Chain.from_terms([(self.m, self.c1, self.c1), (self.l, self.c2, self.c2)])

    def f(self, t):
        return float(self.c1) * np.exp(1j * self.m * np.asarray(t)) + float(self.c2) * np.exp(
            1j * self.l * np.asarray(t)
        )

    def amplitude(self) -> float:
        return abs(float(self.c1)) + abs(float(self.c2))

    def to_json(self) -> dict:
        return {"c1": number_to_json(self.c1), "c2": number_to_json(self.c2), "m": self.m, "l": self.l}


@dataclass(frozen=True)
class OrbitMember:
    t: float
    s: Optional[float]
    point: Tuple[float, float]
    group_element: complex = 1.0 + 0.0j
    second_derivative_norm: Optional[float] = None


@dataclass(frozen=True)
class RotationGroup:
    order: int
    elements: Tuple[complex, ...]

    def is_closed(self, tol: float = 1e-12) -> bool:
        for a in self.elements:
            for b in self.elements:
                ab = a * b
                if not any(abs(ab - g) <= tol for g in self.elements):
                    return False
        return True

    def distinct(self, tol: float = 1e-12) -> List[complex]:
        out: List[complex] = []
        for g in self.elements:
            if not any(abs(g - h) <= tol for h in out):
                out.append(g)
        return out


@dataclass(frozen=True)
class ModuleClass:
    kind: str
    base_point: Tuple[float, float]
    base_params: Tuple[float, Optional[float]]
    orbit: Tuple[OrbitMember, ...]
    group_order: int
    acts_on: str = "points"
    provenance: str = ANALYTIC
    classification: Tuple[str, ...] = ()
    axis_members: int = 0

    @property
    def points(self) -> List[Tuple[float, float]]:
        return [member.point for member in self.orbit]

    @property
    def params(self) -> List[float]:
        return [member.t for member in self.orbit]

    def is_invariant_under(self, group: RotationGroup, tol: float = ORBIT_TOL) -> bool:
        """Applying every group element maps the orbit onto itself as a set.

        Fold classes lose their singular collisions; use ``FoldSets.is_invariant_under``,
        which restores them.
        """
        if self.acts_on == "parameters":
            values = [cmath.exp(1j * t) for t in self.params]
        else:
            values = [complex(*p) for p in self.points]
        for g in group.elements:
            for v in values:
                if not any(abs(g * v - w) <= tol for w in values):
                    return False
        return True


@dataclass(frozen=True)
class FoldSets:
    phi_dot: ModuleClass
    psi_dot: ModuleClass
    removed: Tuple[float, ...] = field(default=())

    def is_invariant_under(self, group: RotationGroup, tol: float = ORBIT_TOL) -> bool:
        """Each fold lattice, with the candidates removed as singular put back, maps onto itself."""
        for cls in (self.phi_dot, self.psi_dot):
            if not cls.orbit:
                continue
            side = _lattice_side(cls.params[0], cls.group_order)
            params = cls.params + [t for t in self.removed if _lattice_side(t, cls.group_order) == side]
            restored = replace(cls, orbit=tuple(OrbitMember(t, None, (0.0, 0.0)) for t in sorted(params)))
            if not restored.is_invariant_under(group, tol):
                return False
        return True


def _lattice_side(t: float, n: int) -> int:
    """0 on the lattice 2k pi/n, 1 on (2k+1) pi/n."""
    return int(round(t * n / math.pi)) % 2


@dataclass(frozen=True)
class SignFlip:
    angle: float
    companion: TwoChain


# ---------------------------------------------------------- elementary --
def radius_squared(tc: TwoChain, t):
    c1, c2 = float(tc.c1), float(tc.c2)
    return c1 * c1 + c2 * c2 + 2.0 * c1 * c2 * np.cos(tc.Q * np.asarray(t))


def equal_radius_preimages(tc: TwoChain, t1: float, tol: float = 1e-12) -> List[float]:
    candidates = []
    for s in range(tc.Q):
        shift = TWO_PI * s / tc.Q
        candidates.extend((wrap_angle(t1 + shift), wrap_angle(-t1 + shift)))
    out: List[float] = []
    for t in sorted(candidates):
        if any(circular_gap(t, u) <= tol for u in out):
            continue
        out.append(t)
    return out


def rotation_group(order: int, m: int) -> RotationGroup:
    if order < 1:
        raise CurveValidationError(f"Group order must be >= 1, got {order}")
    elements = tuple(cmath.exp(2j * math.pi * k * m / order) for k in range(order))
    group = RotationGroup(order, elements)
    if not group.is_closed():
        logger.warning("rotation group of order %d generated by m=%d failed the closure check", order, m)
    return group


def sign_flip_rotation(tc: TwoChain) -> SignFlip:
    """f(t + pi/Q) = e^{i m pi/Q} g(t) where g is the chain with c2 replaced by -c2."""
    companion = TwoChain(tc.c1, -tc.c2, tc.m, tc.l)
    return SignFlip(angle=tc.m * math.pi / tc.Q, companion=companion)


def sign_flip_residual(tc: TwoChain, samples: int = 100) -> float:
    flip = sign_flip_rotation(tc)
    t = np.linspace(0.0, TWO_PI, samples, endpoint=False)
    lhs = tc.f(t + math.pi / tc.Q)
    rhs = np.exp(1j * flip.angle) * flip.companion.f(t)
    return float(np.max(np.abs(lhs - rhs)))


# --------------------------------------------------------------- orbits --
def _point(z: complex) -> Tuple[float, float]:
    return (float(z.real), float(z.imag))


def _expand_orbit(
    tc: TwoChain,
    kind: str,
    t0: float,
    s0: Optional[float],
    provenance: str = ANALYTIC,
    classification: Tuple[str, ...] = (),
) -> ModuleClass:
    q = tc.Q
    g = cmath.exp(2j * math.pi * tc.m / q)
    w0 = complex(tc.f(t0))
    tol = ORBIT_TOL * max(1.0, tc.amplitude())
    members = []
    for k in range(q):
        tk = wrap_angle(t0 + TWO_PI * k / q)
        sk = None if s0 is None else wrap_angle(s0 + TWO_PI * k / q)
        gk = g ** k
        wk = w0 * gk
        if abs(complex(tc.f(tk)) - wk) > tol:
            logger.warning("orbit member %d of %s class deviates from w0*g^k", k, kind)
        members.append(OrbitMember(tk, sk, _point(wk), gk))
    members.sort(key=lambda mbr: mbr.t)
    return ModuleClass(
        kind=kind,
        base_point=_point(w0),
        base_params=(t0, s0),
        orbit=tuple(members),
        group_order=q,
        provenance=provenance,
        classification=classification,
        axis_members=_count_axis_members(members, tol),
    )


def _count_axis_members(members: Sequence[OrbitMember], tol: float) -> int:
    return sum(1 for mbr in members if abs(mbr.point[0]) <= tol or abs(mbr.point[1]) <= tol)


def _same_point_set(a: Iterable[Tuple[float, float]], b: Iterable[Tuple[float, float]], tol: float) -> bool:
    a, b = list(a), list(b)
    return all(any(math.hypot(p[0] - q[0], p[1] - q[1]) <= tol for q in b) for p in a) and all(
        any(math.hypot(p[0] - q[0], p[1] - q[1]) <= tol for q in a) for p in b
    )


def _covered(point: Tuple[float, float], classes: Sequence[ModuleClass], tol: float) -> bool:
    return any(math.hypot(point[0] - p[0], point[1] - p[1]) <= tol for cls in classes for p in cls.points)


def _check_corollaries(tc: TwoChain, cls: ModuleClass, tol: float) -> None:
    q = tc.Q
    if q % 2 == 1:
        real = sum(1 for p in cls.points if abs(p[1]) <= tol)
        if real != 1:
            raise InvariantError(f"Class at {cls.base_point} has {real} real members, expected exactly 1 (Q = {q})")
    elif (q // 2) % 2 == 1:
        on_x = sum(1 for p in cls.points if abs(p[1]) <= tol)
        on_y = sum(1 for p in cls.points if abs(p[0]) <= tol)
        if sorted((on_x, on_y)) != [0, 2]:
            raise InvariantError(
                f"Class at {cls.base_point} has {on_x} members on y = 0 and {on_y} on x = 0, "
                f"expected two on one axis (Q = {q})"
            )


def axis_classes_complete(tc: TwoChain) -> bool:
    """Axis bases reach every class when Q is odd or Q = 2s with s odd."""
    return tc.Q % 2 == 1 or (tc.Q // 2) % 2 == 1


def self_intersection_classes(
    tc: TwoChain,
    complete_with_oracle: Optional[bool] = None,
    oracle_config=None,
) -> List[ModuleClass]:
    chain = tc.to_chain()
    tol = ORBIT_TOL * max(1.0, tc.amplitude())
    classes: List[ModuleClass] = []
    for point in axis_self_intersections(chain):
        if math.hypot(*point.location) <= tol:
            continue  # the origin is a zero of f, reported by zeros()
        cls = _expand_orbit(tc, SELF_INTERSECTION, point.t1, point.t2)
        if any(_same_point_set(cls.points, other.points, tol) for other in classes):
            continue
        _check_corollaries(tc, cls, tol)
        classes.append(cls)

    if complete_with_oracle is None:
        complete_with_oracle = not axis_classes_complete(tc)
    if complete_with_oracle:
        from .oracle import find_self_intersections

        match_tol = 1e-6 * max(1.0, tc.amplitude())
        for hit in find_self_intersections(chain, oracle_config):
            if math.hypot(*hit.point) <= match_tol or _covered(hit.point, classes, match_tol):
                continue
            cls = _expand_orbit(tc, SELF_INTERSECTION, hit.t, hit.s, provenance=ORACLE_SEEDED)
            logger.info("oracle-seeded class at %s", cls.base_point)
            classes.append(cls)

    classes.sort(key=lambda c: (round(c.base_point[0], 9), round(c.base_point[1], 9)))
    return classes


def zeros(tc: TwoChain) -> Optional[ModuleClass]:
    q = tc.Q
    if numbers_equal(tc.c1, -tc.c2):
        params = [TWO_PI * k / q for k in range(q)]
    elif numbers_equal(tc.c1, tc.c2):
        params = [(2 * k + 1) * math.pi / q for k in range(q)]
    else:
        return None
    members = tuple(OrbitMember(wrap_angle(t), None, (0.0, 0.0)) for t in params)
    return ModuleClass(
        kind=ZERO,
        base_point=(0.0, 0.0),
        base_params=(members[0].t, None),
        orbit=tuple(sorted(members, key=lambda mbr: mbr.t)),
        group_order=q,
    )


# ------------------------------------------------------------- cusps --
def is_return_point(chain: Chain, t0: float, eps_values: Sequence[float] = (1e-2, 1e-3)) -> bool:
    """Return point of the first kind: one tangent, one side of the normal, opposite sides of the tangent."""
    ddx, ddy = chain.second_derivative(t0)
    norm = math.hypot(ddx, ddy)
    if norm == 0.0:
        return False
    tx, ty = ddx / norm, ddy / norm
    x0, y0 = chain.eval(t0)
    angles = []
    for eps in eps_values:
        along, across = [], []
        for sign in (1.0, -1.0):
            x, y = chain.eval(t0 + sign * eps)
            px, py = x - x0, y - y0
            along.append(px * tx + py * ty)
            across.append(-px * ty + py * tx)
        if not (along[0] > 0 and along[1] > 0):
            return False
        if not across[0] * across[1] < 0:
            return False
        angles.append(max(abs(math.atan2(a, b)) for a, b in zip(across, along)))
    # the branches approach the common tangent as eps shrinks
    return all(later < earlier for earlier, later in zip(angles, angles[1:])) and angles[-1] < 0.1


def singular_points(tc: TwoChain) -> Optional[ModuleClass]:
    mc1 = tc.m * tc.c1
    lc2 = tc.l * tc.c2
    q = tc.Q
    if numbers_equal(mc1, lc2):
        t0 = math.pi / q
    elif numbers_equal(mc1, -lc2):
        t0 = 0.0
    else:
        return None
    chain = tc.to_chain()
    threshold = derivative_threshold(chain)
    scale = chain.scale()
    cls = _expand_orbit(tc, SINGULAR, t0, None)
    labels = {RETURN_POINT_FIRST_KIND, DOUBLE_SINGULARITY}
    members = []
    for mbr in cls.orbit:
        dx, dy = chain.derivative(mbr.t)
        if abs(dx) > threshold or abs(dy) > threshold:
            logger.warning("singular candidate t=%.15g has nonzero derivative (%g, %g)", mbr.t, dx, dy)
        ddx, ddy = chain.second_derivative(mbr.t)
        dd2 = ddx * ddx + ddy * ddy
        if dd2 <= 1e-9 * scale * scale:
            labels.discard(DOUBLE_SINGULARITY)
        if not is_return_point(chain, mbr.t):
            labels.discard(RETURN_POINT_FIRST_KIND)
        members.append(OrbitMember(mbr.t, None, mbr.point, mbr.group_element, math.sqrt(dd2)))
    return ModuleClass(
        kind=SINGULAR,
        base_point=cls.base_point,
        base_params=cls.base_params,
        orbit=tuple(members),
        group_order=q,
        classification=tuple(sorted(labels)),
        axis_members=cls.axis_members,
    )


# -------------------------------------------------------------- folds --
def fold_condition_holds(tc: TwoChain) -> bool:
    mc1 = tc.m * tc.c1
    lc2 = tc.l * tc.c2
    return numbers_equal(mc1, lc2) or numbers_equal(mc1, -lc2)


def _fold_class(tc: TwoChain, kind: str, members: List[OrbitMember], n: int) -> ModuleClass:
    members.sort(key=lambda mbr: mbr.t)
    if members:
        t0 = members[0].t
        members = [
            OrbitMember(mbr.t, None, mbr.point, cmath.exp(1j * (mbr.t - t0)), mbr.second_derivative_norm)
            for mbr in members
        ]
        base_point, base_params = members[0].point, (t0, None)
    else:
        base_point, base_params = (0.0, 0.0), (0.0, None)
    return ModuleClass(
        kind=kind,
        base_point=base_point,
        base_params=base_params,
        orbit=tuple(members),
        group_order=n,
        acts_on="parameters",
    )


def fold_points(tc: TwoChain) -> FoldSets:
    """Fold points, each lattice candidate classified by direct evaluation of both derivatives."""
    if not fold_condition_holds(tc):
        raise ConditionNotMetError(
            f"Fold analysis needs (m c1)^2 = (l c2)^2; got m c1 = {tc.m * tc.c1}, l c2 = {tc.l * tc.c2}"
        )
    n = abs(tc.l + tc.m)
    chain = tc.to_chain()
    threshold = derivative_threshold(chain)
    candidates = [TWO_PI * k / n for k in range(n)] + [(2 * k + 1) * math.pi / n for k in range(n)]
    phi_members: List[OrbitMember] = []
    psi_members: List[OrbitMember] = []
    removed: List[float] = []
    for t in candidates:
        t = wrap_angle(t)
        dx, dy = chain.derivative(t)
        x_zero, y_zero = abs(dx) <= threshold, abs(dy) <= threshold
        if not (x_zero or y_zero):
            continue
        if x_zero and y_zero:
            removed.append(t)
            continue
        ddx, ddy = chain.second_derivative(t)
        x, y = chain.eval(t)
        member = OrbitMember(t, None, (float(x), float(y)), second_derivative_norm=math.hypot(ddx, ddy))
        (phi_members if x_zero else psi_members).append(member)
    logger.debug(
        "fold_points: %d phi-dot folds, %d psi-dot folds, %d singular collisions",
        len(phi_members),
        len(psi_members),
        len(removed),
    )
    return FoldSets(
        phi_dot=_fold_class(tc, FOLD_PHI_DOT, phi_members, n),
        psi_dot=_fold_class(tc, FOLD_PSI_DOT, psi_members, n),
        removed=tuple(sorted(removed)),
    )


def fold_group(tc: TwoChain) -> RotationGroup:
    """Order-(l+m) rotations of the parameter circle e^{it} permuting each fold lattice."""
    return rotation_group(abs(tc.l + tc.m), 1)
