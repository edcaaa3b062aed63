from fractions import Fraction

import pytest

from src.chain import Chain
from src.classical import EPICYCLOID, HYPOCYCLOID, RollingSpec
from src.features import (
    CurveFeature,
    CurveFeatureReport,
    analyze_chain,
    chain_features,
    classical_report,
    helix_report,
    oracle_diff,
    torus_report,
)
from src.oracle import hausdorff
from src.space_curves import PeriodicHelix, TorusKnotSpec, projection_self_intersections, torus_knot_fourier
from src.two_chain import (
    FOLD_PHI_DOT,
    FOLD_PSI_DOT,
    ORACLE_SEEDED,
    SELF_INTERSECTION,
    SINGULAR,
    ZERO,
    TwoChain,
)

from conftest import loop_chain


def test_feature_json_round_trip():
    feature = CurveFeature(
        kind=SELF_INTERSECTION,
        point=(1.0, 0.0),
        params=(0.5, 5.5),
        orbit_id=3,
        classification=("xAxis",),
        slopes=(2.0, -2.0),
    )
    data = feature.to_json()
    assert data["orbitId"] == 3
    assert data["provenance"] == "analytic"
    assert "secondDerivativeNorm" not in data
    assert CurveFeature.from_json(data) == feature


def test_cusp_loop_report(cusp_loop, oracle_cfg):
    report = analyze_chain(cusp_loop, verify=True, oracle_config=oracle_cfg)
    counts = report.counts()
    assert counts[SELF_INTERSECTION] == 1
    assert counts[SINGULAR] == 1
    assert report.of_kind(SELF_INTERSECTION)[0].point == pytest.approx((-4 / 3, 0.0), abs=1e-12)
    assert report.of_kind(SINGULAR)[0].point == pytest.approx((1 / 3, 0.0), abs=1e-12)
    assert report.verified


@pytest.mark.parametrize("c, crossings", [(Fraction(1, 3), 1), (Fraction(2, 3), 1), (1, 2)])
def test_loop_reports_verify(c, crossings, oracle_cfg):
    report = analyze_chain(loop_chain(c), verify=True, oracle_config=oracle_cfg)
    assert len(report.of_kind(SELF_INTERSECTION)) == crossings
    assert report.verified


def test_rose_1_6_report(rose_1_6, oracle_cfg):
    report = analyze_chain(rose_1_6.to_chain(), verify=True, oracle_config=oracle_cfg)
    assert report.summary["Q"] == 5
    assert report.summary["axisClassesComplete"]
    assert len(report.of_kind(SELF_INTERSECTION)) == 5 * report.summary["selfIntersectionClasses"]
    assert len(report.of_kind(ZERO)) == 5
    assert report.verified


def test_rose_1_7_report(rose_1_7, oracle_cfg):
    report = analyze_chain(rose_1_7.to_chain(), verify=True, oracle_config=oracle_cfg)
    assert report.summary["selfIntersectionClasses"] == 3
    assert len(report.of_kind(SELF_INTERSECTION)) == 18
    assert report.verified


def test_oracle_completed_report_verifies(oracle_cfg):
    report = analyze_chain(TwoChain(1, 1, 1, 5).to_chain(), verify=True, oracle_config=oracle_cfg)
    assert not report.summary["axisClassesComplete"]
    assert report.verified


def test_cardioid_report(cardioid, oracle_cfg):
    report = analyze_chain(cardioid.to_chain(), verify=True, oracle_config=oracle_cfg)
    counts = report.counts()
    assert counts[SINGULAR] == 1
    assert counts[FOLD_PHI_DOT] == 3
    assert counts[FOLD_PSI_DOT] == 2
    assert SELF_INTERSECTION not in counts
    assert report.summary["removedFoldCandidates"] == pytest.approx([0.0])
    assert report.verified


@pytest.mark.parametrize("name", ["nephroid", "astroid"])
def test_cycloid_reports_verify(name, request, oracle_cfg):
    tc = request.getfixturevalue(name)
    report = analyze_chain(tc.to_chain(), verify=True, oracle_config=oracle_cfg)
    assert len(report.of_kind(SINGULAR)) == tc.Q
    assert report.verified


def test_three_member_chain_uses_rotation_orbits(oracle_cfg):
    spec = TorusKnotSpec(2, 3, 3.0, 1.0)
    chain = torus_knot_fourier(spec)
    report = analyze_chain(chain, verify=True, oracle_config=oracle_cfg)
    assert report.summary["family"] == "chain"
    assert report.summary["rotationOrder"] == 3
    expected = [p.point for p in projection_self_intersections(spec)]
    found = [f.point for f in report.of_kind(SELF_INTERSECTION)]
    assert len(found) == len(expected) == 3
    assert hausdorff(found, expected) < 1e-9
    assert report.verified


def test_chain_without_symmetry_falls_back_to_oracle(oracle_cfg):
    chain = Chain.from_terms([(1, 1, 1), (2, Fraction(1, 2), Fraction(1, 3)), (-3, Fraction(1, 4), Fraction(1, 4))])
    features, summary = chain_features(chain, oracle_cfg)
    assert summary["rotationOrder"] == 1
    seeded = [f for f in features if f.provenance == ORACLE_SEEDED]
    assert summary["oracleSeeded"] == len(seeded)
    assert oracle_diff(chain, features, oracle_cfg).empty


def test_report_json_round_trip(cusp_loop, oracle_cfg):
    report = analyze_chain(cusp_loop, verify=True, oracle_config=oracle_cfg)
    data = report.to_json()
    assert data["oracleDiff"] == {"unmatchedAnalytic": [], "unmatchedNumeric": []}
    again = CurveFeatureReport.from_json(data)
    assert again.features == report.features
    assert "oracleDiff" not in analyze_chain(cusp_loop).to_json()


def test_unverified_report():
    report = CurveFeatureReport({}, oracle_diff={"unmatchedAnalytic": [[0.0, 0.0]], "unmatchedNumeric": []})
    assert not report.verified


def test_classical_report(oracle_cfg):
    report = classical_report(RollingSpec(HYPOCYCLOID, 4, 1), verify=True, oracle_config=oracle_cfg)
    assert report.summary["cusps"] == 4
    assert report.summary["ratio"] == "3"
    assert report.summary["parameterScale"] == -1
    assert report.summary["conversionResidual"] < 1e-12
    assert report.descriptor["twoChain"] == {"c1": "3", "c2": "1", "m": -1, "l": 3}
    assert report.verified
    trochoid = classical_report(RollingSpec("epitrochoid", 3, 1, "1/2"))
    assert trochoid.summary["cusps"] is None
    assert classical_report(RollingSpec(EPICYCLOID, 1, 1)).summary["cusps"] == 1


def test_torus_report():
    report = torus_report(TorusKnotSpec(3, 7, 3.0, 1.0, a=2.0))
    assert report.summary["crossings"] == report.summary["expectedCrossings"] == 14
    assert report.summary["sTorusEnvelope"] == pytest.approx([0.0, 3.0])
    assert all(len(f.point) == 3 for f in report.features)
    assert len({f.orbit_id for f in report.features}) == 14


def test_helix_report():
    report = helix_report(PeriodicHelix(TwoChain(1, 1, 1, 3), 2.0, 0.0, 1))
    assert report.summary["classification"] == "capareda"
    assert report.summary["envelope"]["quadric"] == "sphere"
    assert report.summary["envelope"]["lower"] == pytest.approx(4.0)
    assert report.summary["envelope"]["upper"] == pytest.approx(4.0)
    for f in report.features:
        assert sum(v * v for v in f.point) == pytest.approx(4.0, abs=1e-9)


def test_helix_report_general():
    report = helix_report(PeriodicHelix(TwoChain(1, 1, 1, 6), 1.0, 0.0, "3/2"))
    assert report.summary["classification"] == "general"
    assert "envelope" not in report.summary
    assert "quadricResidual" not in report.summary
    assert report.descriptor["helix"]["Q"] == "3/2"
