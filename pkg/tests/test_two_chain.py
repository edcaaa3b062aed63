import dataclasses
import math
from fractions import Fraction

import numpy as np
import pytest

from src import two_chain
from src.chain import Chain
from src.errors import ConditionNotMetError, InvariantError, TwoChainValidationError
from src.two_chain import (
    DOUBLE_SINGULARITY,
    ORACLE_SEEDED,
    RETURN_POINT_FIRST_KIND,
    SELF_INTERSECTION,
    OrbitMember,
    TwoChain,
    axis_classes_complete,
    equal_radius_preimages,
    fold_group,
    fold_points,
    radius_squared,
    rotation_group,
    self_intersection_classes,
    sign_flip_residual,
    singular_points,
    wrap_angle,
    zeros,
)


def test_validation():
    with pytest.raises(TwoChainValidationError):
        TwoChain(1, 1, 2, 4)
    with pytest.raises(TwoChainValidationError):
        TwoChain(1, 1, 3, 2)
    with pytest.raises(TwoChainValidationError):
        TwoChain(1, 1, -1, 1)
    with pytest.raises(TwoChainValidationError):
        TwoChain(0, 1, 1, 2)


def test_from_chain():
    assert TwoChain.from_chain(Chain.from_complex([1, 1], [6, 1])) == TwoChain(1, 1, 1, 6)
    assert TwoChain.from_chain(Chain.from_terms([(1, 1, 2), (6, 1, 1)])) is None
    assert TwoChain.from_chain(Chain.from_complex([1, 1, 1], [1, 2, 3])) is None


def test_wrap_angle():
    assert wrap_angle(-0.5) == pytest.approx(2 * math.pi - 0.5)
    assert wrap_angle(2 * math.pi) == 0.0
    assert 0.0 <= wrap_angle(-1e-18) < 2 * math.pi


def test_equal_radius_preimages(rose_1_6):
    t1 = 0.3
    preimages = equal_radius_preimages(rose_1_6, t1)
    assert len(preimages) == 2 * rose_1_6.Q
    r0 = radius_squared(rose_1_6, t1)
    assert np.allclose(radius_squared(rose_1_6, np.array(preimages)), r0)


def test_rotation_group_closed():
    group = rotation_group(5, 1)
    assert group.is_closed()
    assert len(group.distinct()) == 5


def test_sign_flip_identity(rose_1_6):
    assert sign_flip_residual(rose_1_6) < 1e-12


@pytest.mark.parametrize(
    "tc, complete",
    [(TwoChain(1, 1, 1, 6), True), (TwoChain(1, 1, 1, 7), True), (TwoChain(1, 1, 1, 5), False)],
)
def test_axis_classes_complete(tc, complete):
    assert axis_classes_complete(tc) is complete


def test_rose_1_6_classes(rose_1_6, oracle_cfg):
    classes = self_intersection_classes(rose_1_6, oracle_config=oracle_cfg)
    assert classes
    chain = rose_1_6.to_chain()
    for cls in classes:
        assert len(cls.orbit) == 5
        assert cls.kind == SELF_INTERSECTION
        assert sum(1 for p in cls.points if abs(p[1]) <= 1e-9) == 1
        for member in cls.orbit:
            assert chain.eval(member.t) == pytest.approx(chain.eval(member.s), abs=1e-9)
            assert chain.eval(member.t) == pytest.approx(member.point, abs=1e-9)


def test_rose_1_7_classes(rose_1_7, oracle_cfg):
    classes = self_intersection_classes(rose_1_7, oracle_config=oracle_cfg)
    assert len(classes) == 3
    for cls in classes:
        assert len(cls.orbit) == 6
        assert cls.axis_members == 2
    radii = sorted(round(math.hypot(*cls.base_point), 9) for cls in classes)
    assert radii[1] == pytest.approx(math.sqrt(2), abs=1e-9)


def test_orbit_invariance(rose_1_6):
    group = rotation_group(rose_1_6.Q, rose_1_6.m)
    for cls in self_intersection_classes(rose_1_6, complete_with_oracle=False):
        assert cls.is_invariant_under(group)


def test_oracle_completion_is_marked(oracle_cfg):
    # Q = 4 is not covered by the axis bases
    tc = TwoChain(1, 1, 1, 5)
    classes = self_intersection_classes(tc, oracle_config=oracle_cfg)
    for cls in classes:
        assert len(cls.orbit) == 4
    seeded = [cls for cls in classes if cls.provenance == ORACLE_SEEDED]
    for cls in seeded:
        assert cls.axis_members == 0


def test_zeros_lattices():
    minus = zeros(TwoChain(1, -1, 1, 6))
    assert minus.params == pytest.approx([2 * math.pi * k / 5 for k in range(5)])
    plus = zeros(TwoChain(1, 1, 1, 6))
    assert plus.params == pytest.approx([(2 * k + 1) * math.pi / 5 for k in range(5)])
    assert zeros(TwoChain(1, 2, 1, 6)) is None
    for t in plus.params:
        assert abs(TwoChain(1, 1, 1, 6).f(t)) < 1e-12


def test_cardioid_cusp(cardioid):
    cusp = singular_points(cardioid)
    assert len(cusp.orbit) == 1
    assert cusp.base_point == pytest.approx((1.0, 0.0), abs=1e-12)
    assert RETURN_POINT_FIRST_KIND in cusp.classification


def test_nephroid_cusps(nephroid):
    cusps = singular_points(nephroid)
    assert sorted(p[0] for p in cusps.points) == pytest.approx([-2.0, 2.0], abs=1e-12)
    assert set(cusps.classification) == {RETURN_POINT_FIRST_KIND, DOUBLE_SINGULARITY}
    for member in cusps.orbit:
        assert member.second_derivative_norm > 0


def test_singular_points_need_condition():
    assert singular_points(TwoChain(1, 1, 2, 3)) is None


def test_astroid_cusps(astroid):
    cusps = singular_points(astroid)
    assert len(cusps.orbit) == 4
    for p in cusps.points:
        assert math.hypot(*p) == pytest.approx(4.0, abs=1e-12)


def test_cardioid_folds(cardioid):
    folds = fold_points(cardioid)
    assert folds.phi_dot.params == pytest.approx([math.pi / 3, math.pi, 5 * math.pi / 3])
    assert folds.psi_dot.params == pytest.approx([2 * math.pi / 3, 4 * math.pi / 3])
    assert folds.removed == pytest.approx((0.0,))
    assert folds.phi_dot.acts_on == "parameters"


def test_fold_counts_with_removed_candidate():
    tc = TwoChain(3, 2, 2, 3)
    folds = fold_points(tc)
    assert len(folds.phi_dot.orbit) == 5
    assert len(folds.psi_dot.orbit) == 4
    assert folds.removed == pytest.approx((math.pi,))


def test_fold_lattices_invariant_under_fold_group():
    tc = TwoChain(3, 2, 2, 3)
    folds = fold_points(tc)
    group = fold_group(tc)
    assert group.order == 5
    assert folds.is_invariant_under(group)
    assert folds.phi_dot.is_invariant_under(group)
    # pi was dropped from the psi-dot lattice as singular
    assert not folds.psi_dot.is_invariant_under(group)


def test_cardioid_fold_lattices_invariant(cardioid):
    assert fold_points(cardioid).is_invariant_under(fold_group(cardioid))


def test_folds_need_condition():
    with pytest.raises(ConditionNotMetError):
        fold_points(TwoChain(1, Fraction(1, 3), 2, 3))


def test_orbit_members_are_equal_radius_preimages(rose_1_7):
    for cls in self_intersection_classes(rose_1_7, complete_with_oracle=False):
        t0 = cls.base_params[0]
        preimages = equal_radius_preimages(rose_1_7, t0)
        for member in cls.orbit:
            for value in (member.t, member.s):
                assert min(abs(math.remainder(value - p, 2 * math.pi)) for p in preimages) < 1e-9


def _with_extra_member(point):
    expand = two_chain._expand_orbit

    def broken(*args, **kwargs):
        cls = expand(*args, **kwargs)
        return dataclasses.replace(cls, orbit=cls.orbit + (OrbitMember(0.0, 0.0, point),))

    return broken


def test_odd_q_class_with_two_real_members_raises(rose_1_6, monkeypatch):
    monkeypatch.setattr(two_chain, "_expand_orbit", _with_extra_member((9.0, 0.0)))
    with pytest.raises(InvariantError, match="real members"):
        self_intersection_classes(rose_1_6, complete_with_oracle=False)


def test_twice_odd_q_class_off_axis_raises(rose_1_7, monkeypatch):
    monkeypatch.setattr(two_chain, "_expand_orbit", _with_extra_member((0.0, 9.0)))
    with pytest.raises(InvariantError, match="expected two on one axis"):
        self_intersection_classes(rose_1_7, complete_with_oracle=False)
