"""Brute-force numeric detection of self-intersections and singular points.

Works on any object exposing vectorised ``eval(t) -> (x, y)`` and
``derivative(t) -> (dx, dy)``; an optional ``period`` attribute defaults to
2 pi. Used as the independent cross-check of every analytic result.
"""

from __future__ import annotations

import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Any, Callable, Iterable, List, Optional, Sequence, Tuple

import numpy as np
from scipy import optimize

from .errors import NoConvergenceError, OracleConfigError

logger: logging.Logger = logging.getLogger(__name__)

TWO_PI = 2.0 * math.pi
TANGENT_ANGLE_MIN = 1e-4
# fractional offset of the sample grid; keeps symmetric crossings off the vertices
GRID_PHASE = 0.3183098861837907
BLOCK = 256


@dataclass(frozen=True)
class OracleConfig:
    n_samples: int = 4096
    pair_tol: float = 1e-6
    refine_tol: float = 1e-11
    dedupe_radius: float = 1e-7
    min_param_gap: float = 1e-4
    max_workers: int = 4
    max_newton_steps: int = 100

    def __post_init__(self) -> None:
        if self.n_samples < 256:
            raise OracleConfigError(f"n_samples must be >= 256, got {self.n_samples}")
        for name in ("pair_tol", "refine_tol", "dedupe_radius", "min_param_gap"):
            if getattr(self, name) <= 0:
                raise OracleConfigError(f"{name} must be positive")
        if not self.pair_tol > self.refine_tol:
            raise OracleConfigError("pair_tol must exceed refine_tol")
        if self.max_workers < 1:
            raise OracleConfigError("max_workers must be >= 1")


@dataclass(frozen=True)
class FunctionCurve:
    """Adapter turning two vectorised callables into an oracle curve."""

    eval_fn: Callable[[Any], Tuple[Any, Any]]
    derivative_fn: Callable[[Any], Tuple[Any, Any]]
    period: float = TWO_PI

    def eval(self, t):
        return self.eval_fn(t)

    def derivative(self, t):
        return self.derivative_fn(t)


@dataclass(frozen=True)
class OracleIntersection:
    t: float
    s: float
    point: Tuple[float, float]
    tangent_angle: float
    passes: int = 2


@dataclass(frozen=True)
class IntersectionScan:
    points: Tuple[OracleIntersection, ...]
    tangential: Tuple[OracleIntersection, ...]
    candidates: int = 0
    dropped: int = 0


@dataclass(frozen=True)
class OracleSingularPoint:
    t: float
    point: Tuple[float, float]
    speed: float


@dataclass
class FeatureDiff:
    unmatched_analytic: List[Any] = field(default_factory=list)
    unmatched_numeric: List[Any] = field(default_factory=list)

    @property
    def empty(self) -> bool:
        return not self.unmatched_analytic and not self.unmatched_numeric

    def to_json(self) -> dict:
        return {
            "unmatchedAnalytic": [list(_location(item)) for item in self.unmatched_analytic],
            "unmatchedNumeric": [list(_location(item)) for item in self.unmatched_numeric],
        }


def _period(curve) -> float:
    return float(getattr(curve, "period", TWO_PI))


def _xy(curve, t) -> np.ndarray:
    x, y = curve.eval(t)
    return np.array([x, y], dtype=float)


def _dxy(curve, t) -> np.ndarray:
    dx, dy = curve.derivative(t)
    return np.array([dx, dy], dtype=float)


def _gap(a: float, b: float, period: float) -> float:
    diff = abs(a - b) % period
    return min(diff, period - diff)


# ----------------------------------------------------------- candidates --
def _segment_crossings(points: np.ndarray) -> List[Tuple[int, int, float, float]]:
    """(i, j, u, v) for every crossing of non-adjacent polyline segments i < j."""
    n = len(points)
    start = points
    delta = np.roll(points, -1, axis=0) - points
    eps = 1e-9
    j_idx = np.arange(n)
    found = []
    for lo in range(0, n, BLOCK):
        i_idx = np.arange(lo, min(n, lo + BLOCK))
        d = delta[i_idx][:, None, :]
        e = delta[None, :, :]
        w = start[None, :, :] - start[i_idx][:, None, :]
        denom = d[..., 0] * e[..., 1] - d[..., 1] * e[..., 0]
        safe = np.where(denom == 0.0, 1.0, denom)
        u = (w[..., 0] * e[..., 1] - w[..., 1] * e[..., 0]) / safe
        v = (w[..., 0] * d[..., 1] - w[..., 1] * d[..., 0]) / safe
        ii = i_idx[:, None]
        jj = j_idx[None, :]
        mask = (jj > ii + 1) & ~((ii == 0) & (jj == n - 1)) & (denom != 0.0)
        mask &= (u >= -eps) & (u <= 1 + eps) & (v >= -eps) & (v <= 1 + eps)
        for a, b in zip(*np.nonzero(mask)):
            found.append((int(i_idx[a]), int(b), float(u[a, b]), float(v[a, b])))
    return found


def _refine_pair(curve, t: float, s: float, cfg: OracleConfig, scale: float) -> Tuple[float, float, float]:
    """Damped Newton on P(t) - P(s) = 0, continued until the residual stops shrinking."""
    f = _xy(curve, t) - _xy(curve, s)
    res = float(np.hypot(*f))
    for _ in range(cfg.max_newton_steps):
        if res == 0.0:
            break
        jac = np.column_stack((_dxy(curve, t), -_dxy(curve, s)))
        try:
            step = np.linalg.solve(jac, -f)
        except np.linalg.LinAlgError as e:
            raise NoConvergenceError(f"singular Jacobian at t={t}, s={s}") from e
        if not np.all(np.isfinite(step)):
            raise NoConvergenceError(f"non-finite Newton step at t={t}, s={s}")
        norm = float(np.hypot(*step))
        if norm > 0.5:
            step *= 0.5 / norm
        lam = 1.0
        while lam >= 1.0 / 1024:
            tn, sn = t + lam * step[0], s + lam * step[1]
            fn = _xy(curve, tn) - _xy(curve, sn)
            rn = float(np.hypot(*fn))
            if rn < res:
                break
            lam *= 0.5
        else:
            break
        improved = rn < 0.5 * res
        t, s, f, res = tn, sn, fn, rn
        if not improved and res < cfg.refine_tol * scale:
            break
    if res >= cfg.pair_tol * scale:
        raise NoConvergenceError(f"residual {res:.3g} after refinement at t={t}, s={s}")
    if res >= cfg.refine_tol * scale:
        logger.debug("pair t=%.12g s=%.12g accepted at residual %.3g above refine tolerance", t, s, res)
    return t, s, res


def _tangent_angle(curve, t: float, s: float) -> Optional[float]:
    a, b = _dxy(curve, t), _dxy(curve, s)
    na, nb = float(np.hypot(*a)), float(np.hypot(*b))
    if na == 0.0 or nb == 0.0:
        return None
    cross = abs(a[0] * b[1] - a[1] * b[0])
    dot = abs(a[0] * b[0] + a[1] * b[1])
    return float(math.atan2(cross, dot))


def scan_self_intersections(curve, cfg: Optional[OracleConfig] = None) -> IntersectionScan:
    cfg = cfg or OracleConfig()
    period = _period(curve)
    n = cfg.n_samples
    ts = period * (np.arange(n) + GRID_PHASE) / n
    h = period / n
    xs, ys = curve.eval(ts)
    pts = np.column_stack((np.asarray(xs, dtype=float), np.asarray(ys, dtype=float)))
    scale = max(1.0, float(np.max(np.hypot(pts[:, 0], pts[:, 1]))))
    speeds = np.hypot(*[np.asarray(v, dtype=float) for v in curve.derivative(ts)])
    speed_floor = 1e-9 * max(1.0, float(np.max(speeds)))

    crossings = _segment_crossings(pts)
    seeds = [(ts[i] + u * h, ts[j] + v * h) for i, j, u, v in crossings]

    def work(seed):
        try:
            return _refine_pair(curve, seed[0], seed[1], cfg, scale)
        except NoConvergenceError as e:
            logger.debug("candidate dropped: %s", e)
            return None

    if cfg.max_workers > 1 and len(seeds) > 1:
        with ThreadPoolExecutor(max_workers=cfg.max_workers) as pool:
            refined = list(pool.map(work, seeds))
    else:
        refined = [work(seed) for seed in seeds]

    accepted = []
    dropped = 0
    for item in refined:
        if item is None:
            dropped += 1
            continue
        t, s, _ = item
        t, s = t % period, s % period
        if _gap(t, s, period) <= cfg.min_param_gap:
            continue
        a, b = _dxy(curve, t), _dxy(curve, s)
        if np.hypot(*a) <= speed_floor or np.hypot(*b) <= speed_floor:
            continue
        angle = _tangent_angle(curve, t, s)
        if angle is None:
            continue
        if t > s:
            t, s = s, t
        p = _xy(curve, t)
        accepted.append((float(p[0]), float(p[1]), t, s, angle))

    radius = cfg.dedupe_radius * scale
    accepted.sort()
    clusters: List[List[Tuple[float, float, float, float, float]]] = []
    for item in accepted:
        for cluster in clusters:
            if math.hypot(item[0] - cluster[0][0], item[1] - cluster[0][1]) <= radius:
                cluster.append(item)
                break
        else:
            clusters.append([item])

    points, tangential = [], []
    for cluster in clusters:
        rep = min(cluster, key=lambda c: (c[2], c[3]))
        params: List[float] = []
        for c in cluster:
            for value in (c[2], c[3]):
                if all(_gap(value, p, period) > cfg.min_param_gap for p in params):
                    params.append(value)
        angle = max(c[4] for c in cluster)
        hit = OracleIntersection(rep[2], rep[3], (rep[0], rep[1]), angle, len(params))
        (points if angle > TANGENT_ANGLE_MIN else tangential).append(hit)

    order = lambda h: (round(h.point[0], 9), round(h.point[1], 9), h.t)
    points.sort(key=order)
    tangential.sort(key=order)
    logger.info(
        "oracle: %d candidates, %d dropped, %d intersections, %d tangential",
        len(seeds),
        dropped,
        len(points),
        len(tangential),
    )
    return IntersectionScan(tuple(points), tuple(tangential), len(seeds), dropped)


def find_self_intersections(curve, cfg: Optional[OracleConfig] = None) -> List[OracleIntersection]:
    return list(scan_self_intersections(curve, cfg).points)


# --------------------------------------------------------- singularities --
def find_singular_points(curve, cfg: Optional[OracleConfig] = None) -> List[OracleSingularPoint]:
    cfg = cfg or OracleConfig()
    period = _period(curve)
    n = cfg.n_samples
    ts = period * (np.arange(n) + GRID_PHASE) / n
    dx, dy = curve.derivative(ts)
    speed2 = np.asarray(dx, dtype=float) ** 2 + np.asarray(dy, dtype=float) ** 2
    vmax = max(1.0, float(np.sqrt(np.max(speed2))))
    h = period / n

    def speed_sq(t: float) -> float:
        d = _dxy(curve, t)
        return float(d @ d)

    prev, nxt = np.roll(speed2, 1), np.roll(speed2, -1)
    # cusps show up as grid minima far below the typical speed
    low = speed2 < (0.1 * vmax) ** 2
    minima = np.nonzero((speed2 <= prev) & (speed2 <= nxt) & low)[0]
    found: List[OracleSingularPoint] = []
    for i in minima:
        t0 = float(ts[i])
        res = optimize.minimize_scalar(
            speed_sq, bounds=(t0 - h, t0 + h), method="bounded", options={"xatol": 1e-13}
        )
        t = float(res.x)
        # Gauss-Newton on f'(t) = 0 sharpens the bounded search at double singularities
        for _ in range(30):
            d1, d2 = _dxy(curve, t), _second_difference(curve, t)
            denom = float(d2 @ d2)
            if denom == 0.0:
                break
            step = float(d1 @ d2) / denom
            if abs(step) > h:
                break
            t -= step
            if abs(step) < 1e-16:
                break
        speed = math.sqrt(speed_sq(t))
        if speed >= cfg.refine_tol * vmax:
            continue
        t = t % period
        if any(_gap(t, p.t, period) <= 1e-7 for p in found):
            continue
        p = _xy(curve, t)
        found.append(OracleSingularPoint(t, (float(p[0]), float(p[1])), speed))
    found.sort(key=lambda p: p.t)
    logger.info("oracle: %d singular points", len(found))
    return found


def _second_difference(curve, t: float) -> np.ndarray:
    second = getattr(curve, "second_derivative", None)
    if second is not None:
        ddx, ddy = second(t)
        return np.array([ddx, ddy], dtype=float)
    step = 1e-6
    return (_dxy(curve, t + step) - _dxy(curve, t - step)) / (2 * step)


# ---------------------------------------------------------- comparison --
def _location(item: Any) -> Tuple[float, ...]:
    for attr in ("point", "location"):
        value = getattr(item, attr, None)
        if value is not None:
            return tuple(float(v) for v in value)
    return tuple(float(v) for v in item)


def verify_feature_set(analytic: Iterable[Any], numeric: Iterable[Any], tol: float = 1e-6) -> FeatureDiff:
    """Bidirectional nearest-point matching within ``tol``."""
    analytic, numeric = list(analytic), list(numeric)
    a_pts = [_location(a)[:2] for a in analytic]
    n_pts = [_location(b)[:2] for b in numeric]

    def near(p, pool):
        return any(math.hypot(p[0] - q[0], p[1] - q[1]) <= tol for q in pool)

    diff = FeatureDiff(
        unmatched_analytic=[a for a, p in zip(analytic, a_pts) if not near(p, n_pts)],
        unmatched_numeric=[b for b, p in zip(numeric, n_pts) if not near(p, a_pts)],
    )
    if not diff.empty:
        logger.warning(
            "feature sets differ: %d analytic unmatched, %d numeric unmatched",
            len(diff.unmatched_analytic),
            len(diff.unmatched_numeric),
        )
    return diff


def hausdorff(a: Sequence[Tuple[float, float]], b: Sequence[Tuple[float, float]]) -> float:
    if not a and not b:
        return 0.0
    if not a or not b:
        return math.inf
    pa, pb = np.asarray(a, dtype=float), np.asarray(b, dtype=float)
    dist = np.hypot(pa[:, None, 0] - pb[None, :, 0], pa[:, None, 1] - pb[None, :, 1])
    return float(max(dist.min(axis=1).max(), dist.min(axis=0).max()))
