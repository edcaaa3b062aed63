"""CurveFeature records and the planar/space feature reports built from them."""

from __future__ import annotations

import cmath
import logging
import math
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Sequence, Tuple

from .axis_analysis import axis_self_intersections, general_singular_points
from .chain import Chain
from .classical import RollingSpec, conversion_residual, cusp_count, to_two_chain
from .errors import NotACycloidError
from .oracle import (
    FeatureDiff,
    IntersectionScan,
    OracleConfig,
    OracleSingularPoint,
    find_singular_points,
    scan_self_intersections,
    verify_feature_set,
)
from .rootfind import DEFAULT_TOL
from .space_curves import (
    SPACE_SINGULAR,
    PeriodicHelix,
    TorusKnotSpec,
    classify_helix,
    crossing_slope_margin,
    lift_planar_features,
    min_speed,
    projection_self_intersections,
    s_helix_envelope,
    s_torus_envelope,
    torus_identity_residual,
)
from .two_chain import (
    ANALYTIC,
    ORACLE_SEEDED,
    ORBIT_TOL,
    RETURN_POINT_FIRST_KIND,
    SELF_INTERSECTION,
    SINGULAR,
    TWO_PI,
    ZERO,
    ModuleClass,
    TwoChain,
    axis_classes_complete,
    fold_condition_holds,
    fold_points,
    is_return_point,
    self_intersection_classes,
    singular_points,
    zeros,
    wrap_angle,
)

logger = logging.getLogger(__name__)

VERIFY_TOL = 1e-6


@dataclass(frozen=True)
class CurveFeature:
    kind: str
    point: Tuple[float, ...]
    params: Tuple[float, ...]
    orbit_id: Optional[int] = None
    classification: Tuple[str, ...] = ()
    provenance: str = ANALYTIC
    slopes: Optional[Tuple[float, float]] = None
    second_derivative_norm: Optional[float] = None

    def to_json(self) -> Dict[str, Any]:
        out: Dict[str, Any] = {
            "kind": self.kind,
            "point": [float(v) for v in self.point],
            "params": [float(v) for v in self.params],
            "orbitId": self.orbit_id,
            "classification": list(self.classification),
            "provenance": self.provenance,
        }
        if self.slopes is not None:
            out["slopes"] = [float(v) for v in self.slopes]
        if self.second_derivative_norm is not None:
            out["secondDerivativeNorm"] = float(self.second_derivative_norm)
        return out

    @classmethod
    def from_json(cls, data: Dict[str, Any]) -> "CurveFeature":
        slopes = data.get("slopes")
        return cls(
            kind=data["kind"],
            point=tuple(float(v) for v in data["point"]),
            params=tuple(float(v) for v in data["params"]),
            orbit_id=data.get("orbitId"),
            classification=tuple(data.get("classification", ())),
            provenance=data.get("provenance", ANALYTIC),
            slopes=None if slopes is None else (float(slopes[0]), float(slopes[1])),
            second_derivative_norm=data.get("secondDerivativeNorm"),
        )


@dataclass
class CurveFeatureReport:
    descriptor: Dict[str, Any]
    features: List[CurveFeature] = field(default_factory=list)
    oracle_diff: Optional[Dict[str, Any]] = None
    summary: Dict[str, Any] = field(default_factory=dict)

    def of_kind(self, kind: str) -> List[CurveFeature]:
        return [f for f in self.features if f.kind == kind]

    def counts(self) -> Dict[str, int]:
        out: Dict[str, int] = {}
        for f in self.features:
            out[f.kind] = out.get(f.kind, 0) + 1
        return out

    @property
    def verified(self) -> bool:
        if self.oracle_diff is None:
            return True
        return not self.oracle_diff["unmatchedAnalytic"] and not self.oracle_diff["unmatchedNumeric"]

    def to_json(self) -> Dict[str, Any]:
        out = {
            "descriptor": self.descriptor,
            "features": [f.to_json() for f in self.features],
            "summary": self.summary,
        }
        if self.oracle_diff is not None:
            out["oracleDiff"] = self.oracle_diff
        return out

    @classmethod
    def from_json(cls, data: Dict[str, Any]) -> "CurveFeatureReport":
        return cls(
            descriptor=data["descriptor"],
            features=[CurveFeature.from_json(f) for f in data.get("features", [])],
            oracle_diff=data.get("oracleDiff"),
            summary=data.get("summary", {}),
        )


# ------------------------------------------------------------ two-chains --
def features_from_class(cls: ModuleClass, orbit_id: int) -> List[CurveFeature]:
    out = []
    for member in cls.orbit:
        params = (member.t,) if member.s is None else (member.t, member.s)
        out.append(
            CurveFeature(
                kind=cls.kind,
                point=member.point,
                params=params,
                orbit_id=orbit_id,
                classification=cls.classification,
                provenance=cls.provenance,
                second_derivative_norm=member.second_derivative_norm,
            )
        )
    return out


def two_chain_features(
    tc: TwoChain, oracle_config: Optional[OracleConfig] = None
) -> Tuple[List[CurveFeature], Dict[str, Any]]:
    classes = self_intersection_classes(tc, oracle_config=oracle_config)
    groups: List[ModuleClass] = list(classes)
    for extra in (zeros(tc), singular_points(tc)):
        if extra is not None:
            groups.append(extra)
    summary: Dict[str, Any] = {
        "family": "twoChain",
        "Q": tc.Q,
        "axisClassesComplete": axis_classes_complete(tc),
        "selfIntersectionClasses": len(classes),
        "foldCondition": fold_condition_holds(tc),
    }
    if summary["foldCondition"]:
        folds = fold_points(tc)
        groups.extend((folds.phi_dot, folds.psi_dot))
        summary["foldOrder"] = abs(tc.l + tc.m)
        summary["removedFoldCandidates"] = list(folds.removed)

    features: List[CurveFeature] = []
    for orbit_id, group in enumerate(groups):
        features.extend(features_from_class(group, orbit_id))
    return features, summary


# -------------------------------------------------------------- n-chains --
def _rotation_orbit(
    chain: Chain, symmetry: Optional[Tuple[int, int]], t: float, s: Optional[float]
) -> List[Tuple[float, Optional[float], Tuple[float, float]]]:
    w0 = complex(chain.complex_eval(t))
    if symmetry is None:
        return [(wrap_angle(t), None if s is None else wrap_angle(s), (w0.real, w0.imag))]
    order, m1 = symmetry
    g = cmath.exp(2j * math.pi * m1 / order)
    tol = ORBIT_TOL * max(1.0, chain.amplitude())
    members: List[Tuple[float, Optional[float], Tuple[float, float]]] = []
    for k in range(order):
        tk = wrap_angle(t + TWO_PI * k / order)
        sk = None if s is None else wrap_angle(s + TWO_PI * k / order)
        wk = w0 * g**k
        if abs(complex(chain.complex_eval(tk)) - wk) > tol:
            logger.warning("rotation orbit member %d deviates from w0*g^k", k)
        if any(math.hypot(wk.real - p[0], wk.imag - p[1]) <= tol for _, _, p in members):
            continue
        members.append((tk, sk, (wk.real, wk.imag)))
    return members


def _covered(point: Sequence[float], features: Sequence[CurveFeature], tol: float) -> bool:
    return any(math.hypot(point[0] - f.point[0], point[1] - f.point[1]) <= tol for f in features)


def chain_features(
    chain: Chain,
    oracle_config: Optional[OracleConfig] = None,
    seed_with_oracle: bool = True,
    root_tol: float = DEFAULT_TOL,
) -> Tuple[List[CurveFeature], Dict[str, Any]]:
    """Axis crossings, singular points and (optionally) oracle-seeded crossings of an n-member chain."""
    symmetry = chain.rotation_symmetry()
    tol = ORBIT_TOL * max(1.0, chain.amplitude())
    features: List[CurveFeature] = []
    orbit_id = 0

    for base in axis_self_intersections(chain, root_tol):
        if _covered(base.location, features, tol):
            continue
        for i, (t, s, point) in enumerate(_rotation_orbit(chain, symmetry, base.t1, base.t2)):
            features.append(
                CurveFeature(
                    kind=SELF_INTERSECTION,
                    point=point,
                    params=(t, s),
                    orbit_id=orbit_id,
                    classification=(base.axis,),
                    slopes=base.slopes if i == 0 else None,
                )
            )
        orbit_id += 1

    # cusps related by the rotation t -> t + 2pi/order share an orbit id
    shift = TWO_PI / symmetry[0] if symmetry is not None else TWO_PI
    singular_orbits: List[Tuple[float, int]] = []
    for sp in general_singular_points(chain, root_tol):
        owner = None
        for t0, oid in singular_orbits:
            r = (sp.t - t0) % shift
            if min(r, shift - r) <= 1e-9:
                owner = oid
                break
        if owner is None:
            owner = orbit_id
            orbit_id += 1
            singular_orbits.append((sp.t, owner))
        labels = (RETURN_POINT_FIRST_KIND,) if is_return_point(chain, sp.t) else ()
        ddx, ddy = chain.second_derivative(sp.t)
        features.append(
            CurveFeature(
                kind=SINGULAR,
                point=sp.location,
                params=(sp.t,),
                orbit_id=owner,
                classification=labels,
                second_derivative_norm=math.hypot(ddx, ddy),
            )
        )

    seeded = 0
    if seed_with_oracle:
        match_tol = VERIFY_TOL * max(1.0, chain.amplitude())
        crossings = [f for f in features if f.kind == SELF_INTERSECTION]
        for hit in scan_self_intersections(chain, oracle_config).points:
            if _covered(hit.point, crossings, match_tol):
                continue
            for t, s, point in _rotation_orbit(chain, symmetry, hit.t, hit.s):
                feature = CurveFeature(
                    kind=SELF_INTERSECTION,
                    point=point,
                    params=(t, s),
                    orbit_id=orbit_id,
                    provenance=ORACLE_SEEDED,
                )
                features.append(feature)
                crossings.append(feature)
                seeded += 1
            orbit_id += 1

    summary = {
        "family": "chain",
        "members": len(chain.active_terms),
        "rotationOrder": symmetry[0] if symmetry is not None else 1,
        "oracleSeeded": seeded,
    }
    return features, summary


def planar_features(
    chain: Chain, oracle_config: Optional[OracleConfig] = None, root_tol: float = DEFAULT_TOL
) -> Tuple[List[CurveFeature], Dict[str, Any]]:
    tc = TwoChain.from_chain(chain)
    if tc is not None:
        return two_chain_features(tc, oracle_config)
    return chain_features(chain, oracle_config, root_tol=root_tol)


# ---------------------------------------------------------- verification --
def oracle_diff(
    chain: Chain,
    features: Sequence[CurveFeature],
    oracle_config: Optional[OracleConfig] = None,
    tol: float = VERIFY_TOL,
    scan: Optional[IntersectionScan] = None,
    singular: Optional[Sequence[OracleSingularPoint]] = None,
) -> FeatureDiff:
    """Crossings (plus a multiply-traversed origin) and cusps against the numeric oracle.

    ``scan`` and ``singular`` reuse oracle results the caller already holds.
    """
    crossings = [f for f in features if f.kind == SELF_INTERSECTION]
    origin = [f for f in features if f.kind == ZERO]
    if len(origin) > 1:
        crossings.append(origin[0])
    if scan is None:
        scan = scan_self_intersections(chain, oracle_config)
    if singular is None:
        singular = find_singular_points(chain, oracle_config)
    numeric: List[Any] = list(scan.points)
    numeric.extend(h for h in scan.tangential if math.hypot(*h.point) <= tol)
    cross = verify_feature_set(crossings, numeric, tol)

    cusps = [f for f in features if f.kind == SINGULAR]
    sing = verify_feature_set(cusps, singular, tol)
    return FeatureDiff(
        unmatched_analytic=cross.unmatched_analytic + sing.unmatched_analytic,
        unmatched_numeric=cross.unmatched_numeric + sing.unmatched_numeric,
    )


def analyze_chain(
    chain: Chain,
    verify: bool = False,
    oracle_config: Optional[OracleConfig] = None,
    descriptor: Optional[Dict[str, Any]] = None,
    root_tol: float = DEFAULT_TOL,
) -> CurveFeatureReport:
    features, summary = planar_features(chain, oracle_config, root_tol)
    report = CurveFeatureReport(
        descriptor=descriptor if descriptor is not None else {"chain": chain.to_json()},
        features=features,
        summary=summary,
    )
    if verify:
        report.oracle_diff = oracle_diff(chain, features, oracle_config).to_json()
    logger.info("analyze: %s", report.counts())
    return report


# ----------------------------------------------------- other curve kinds --
def classical_report(
    spec: RollingSpec, verify: bool = False, oracle_config: Optional[OracleConfig] = None
) -> CurveFeatureReport:
    conversion = to_two_chain(spec)
    tc = conversion.two_chain
    report = analyze_chain(
        tc.to_chain(),
        verify=verify,
        oracle_config=oracle_config,
        descriptor={"classical": spec.to_json(), "twoChain": tc.to_json()},
    )
    report.summary["ratio"] = str(spec.ratio())
    report.summary["parameterScale"] = conversion.sign * conversion.q
    report.summary["conversionResidual"] = conversion_residual(spec)
    try:
        report.summary["cusps"] = cusp_count(spec)
    except NotACycloidError:
        report.summary["cusps"] = None
    return report


def torus_report(spec: TorusKnotSpec) -> CurveFeatureReport:
    crossings = projection_self_intersections(spec)
    features = [
        CurveFeature(
            kind=SELF_INTERSECTION,
            point=p.position,
            params=(p.t, p.s),
            orbit_id=i,
            classification=(p.kind,),
        )
        for i, p in enumerate(crossings)
    ]
    summary: Dict[str, Any] = {
        "family": "torusKnot",
        "crossings": len(crossings),
        "expectedCrossings": spec.q * (spec.p - 1),
        "slopeMargin": crossing_slope_margin(spec),
        "torusIdentityResidual": torus_identity_residual(spec),
        "minSpeed": min_speed(spec),
    }
    if spec.a is not None:
        summary["sTorusEnvelope"] = list(s_torus_envelope(spec))
    return CurveFeatureReport(descriptor={"torusKnot": spec.to_json()}, features=features, summary=summary)


def helix_report(h: PeriodicHelix, oracle_config: Optional[OracleConfig] = None) -> CurveFeatureReport:
    kind = classify_helix(h)
    features = [
        CurveFeature(
            kind=SINGULAR if p.kind == SPACE_SINGULAR else SELF_INTERSECTION,
            point=p.position,
            params=(p.t,) if p.s is None else (p.t, p.s),
            classification=(p.kind,),
        )
        for p in lift_planar_features(h, oracle_config)
    ]
    summary: Dict[str, Any] = {"family": "helix", "classification": kind.kind}
    if kind.quadric_residual is not None:
        summary["quadricResidual"] = kind.quadric_residual
    if h.is_s_periodic:
        env = s_helix_envelope(h)
        summary["envelope"] = {"quadric": env.quadric, "lower": env.lower, "upper": env.upper}
    return CurveFeatureReport(descriptor={"helix": h.to_json()}, features=features, summary=summary)
