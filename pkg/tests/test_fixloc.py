from dataclasses import replace
from fractions import Fraction as F

import pytest

from conftest import K3, POINT, isolated_points, random_fixed_point_data, random_unimodal_points
from src import fixloc
from src.errors import BadLength, DimensionMismatch, NonPositiveLevel, NonPositiveWeight, PreconditionError
from src.fixloc import FAIL, PASS, SKIPPED, FixedComponent

ALL_CHECKS = [
    "component-invariants",
    "ambient-duality",
    "unique-extrema",
    "morse-bound",
    "extremal-neighbours",
    "weight-sum-normalization",
    "extremal-weight-signs",
]


def test_standard_action_on_cp4(cp4_standard):
    assert fixloc.localize_betti(cp4_standard) == [1, 0, 1, 0, 1, 0, 1, 0, 1]
    assert fixloc.localize_signature(cp4_standard) == 1
    assert fixloc.euler_characteristic(cp4_standard) == 5
    assert fixloc.validate(cp4_standard).ok


def test_weighted_cp4_passes_every_check(weighted_cp4):
    assert fixloc.localize_betti(weighted_cp4) == [1, 0, 1, 0, 1, 0, 1, 0, 1]
    report = fixloc.validate(weighted_cp4)
    assert [check.name for check in report.checks] == ALL_CHECKS
    assert all(check.status == PASS for check in report.checks)
    assert "= 0 on every component" in report.get("weight-sum-normalization").detail


def test_lambda_raised_breaks_morse_bound(mutated_weighted_cp4):
    report = fixloc.validate(mutated_weighted_cp4)
    morse = report.get("morse-bound")
    assert morse.status == FAIL
    assert morse.components == (1,)
    assert "lambda = 2 > 1" in morse.detail
    # the weight count, duality and extremal checks cannot survive the same edit
    assert report.failed_names() == [
        "component-invariants",
        "ambient-duality",
        "unique-extrema",
        "morse-bound",
        "extremal-neighbours",
        "extremal-weight-signs",
    ]
    assert report.get("weight-sum-normalization").status == PASS


def test_k3_blowup(k3_blowup):
    betti = fixloc.localize_betti(k3_blowup)
    signature = fixloc.localize_signature(k3_blowup)
    assert betti == [1, 0, 2, 0, 23, 0, 2, 0, 1]
    assert signature == 17
    assert fixloc.i_jr_direct(betti, signature) == -4
    assert fixloc.i_jr_localized(k3_blowup) == -4
    assert fixloc.euler_characteristic(k3_blowup) == 29
    assert fixloc.validate(k3_blowup).ok


def test_k3_contribution_is_the_d_lemma_value(k3_blowup):
    # -36 would need b2+ = 19 on the K3, which is b2-
    k3 = k3_blowup.components[1]
    assert fixloc.dlemma_component(k3) == fixloc.dlemma_value(3) == 4
    assert fixloc.i_jr_localized(k3_blowup) == -fixloc.dlemma_value(3)
    assert fixloc.i_jr_localized(k3_blowup) != -36


def test_signature_arithmetic_with_extra_maximum(k3_blowup):
    extended = replace(k3_blowup, components=k3_blowup.components + (FixedComponent(0, POINT, 1, 4),))
    assert fixloc.localize_signature(extended) == 18


def test_unimodal_8(k3_blowup):
    check = fixloc.check_unimodal_8(k3_blowup)
    assert check.status == PASS
    assert check.detail == "b2 = 2 <= b4 = 23"


def test_unimodal_8_skips_extremal_surfaces(weighted_cp4):
    low = replace(weighted_cp4.components[1], lam=0, weights=(1, 1))
    data = replace(weighted_cp4, components=(low, weighted_cp4.components[2]))
    assert fixloc.check_unimodal_8(data).status == SKIPPED


def test_positive_definite_8(cp4_standard, weighted_cp4, k3_blowup):
    assert fixloc.check_positive_definite_8(cp4_standard).status == PASS
    assert fixloc.check_positive_definite_8(weighted_cp4).status == PASS
    assert fixloc.check_positive_definite_8(k3_blowup).status == SKIPPED


def test_eight_dimensional_checks_need_dimension_eight():
    data = isolated_points(3, [1, 1, 1, 1])
    with pytest.raises(DimensionMismatch):
        fixloc.check_unimodal_8(data)
    with pytest.raises(DimensionMismatch):
        fixloc.check_positive_definite_8(data)


def test_i_jr_direct():
    assert fixloc.i_jr_direct([1, 0, 1, 0, 8, 0, 1, 0, 1], 8) == 0
    assert fixloc.i_jr_direct(K3, -16) == 4
    with pytest.raises(BadLength):
        fixloc.i_jr_direct([1, 0], 0)


def test_d_lemma_domain():
    with pytest.raises(PreconditionError):
        fixloc.dlemma_value(-1)
    with pytest.raises(DimensionMismatch):
        fixloc.dlemma_component(FixedComponent(2, (1, 0, 1), 0, 0))
    assert fixloc.dlemma_value(1) == 0


def test_reverse(weighted_cp4):
    flipped = fixloc.reverse(weighted_cp4)
    assert [c.lam for c in flipped.components] == [4, 1, 0]
    assert flipped.components[0].weights == (-1, -1, -1, -2)
    assert flipped.components[2].moment_value == -5
    assert fixloc.reverse(flipped) == weighted_cp4
    assert fixloc.validate(flipped).ok
    assert fixloc.localize_betti(flipped) == fixloc.localize_betti(weighted_cp4)[::-1]


def test_reverse_mirrors_lopsided_data():
    data = isolated_points(2, [1, 2])
    assert fixloc.localize_betti(data) == [1, 0, 2, 0, 0]
    assert fixloc.localize_betti(fixloc.reverse(data)) == [0, 0, 2, 0, 1]
    assert [c.lam for c in fixloc.reverse(data).components] == [2, 1, 1]


def test_checks_skip_without_moments(k3_blowup):
    report = fixloc.validate(k3_blowup)
    assert report.get("morse-bound").status == SKIPPED
    assert report.get("extremal-neighbours").status == SKIPPED
    assert report.get("weight-sum-normalization").status == SKIPPED
    assert report.get("extremal-weight-signs").status == SKIPPED


def test_weight_sum_varies(weighted_cp4):
    moved = replace(weighted_cp4.components[1], moment_value=F(1, 2))
    data = replace(weighted_cp4, components=(weighted_cp4.components[0], moved, weighted_cp4.components[2]))
    check = fixloc.validate(data).get("weight-sum-normalization")
    assert check.status == FAIL
    assert check.components == (1,)


def test_component_invariants_reported():
    data = fixloc.FixedPointData(2, (
        FixedComponent(0, POINT, 3, 0),
        FixedComponent(2, (1, 0, 2), 0, 0),
    ))
    check = fixloc.validate(data).get("component-invariants")
    assert check.status == FAIL
    assert check.components == (0, 1)
    assert "Poincare duality" in check.detail


def test_isolated_points_twelve_manifold():
    data = isolated_points(6, [1, 1, 2, 3, 2, 1, 1])
    assert fixloc.localize_betti(data) == [1, 0, 1, 0, 2, 0, 3, 0, 2, 0, 1, 0, 1]
    checks = {check.name: check for check in fixloc.check_inequalities(data)}
    assert checks["betti-inequality"].status == PASS
    assert checks["unimodal-12"].status == PASS
    assert checks["signature-mod-16"].status == SKIPPED


def test_unimodal_12_fails_when_b4_drops():
    data = isolated_points(6, [1, 1, 2, 1, 2, 1, 1])
    checks = {check.name: check for check in fixloc.check_inequalities(data)}
    assert checks["unimodal-12"].status == FAIL


@pytest.mark.parametrize("middle, status", [(18, PASS), (22, FAIL), (2, PASS)])
def test_signature_mod_16(middle, status):
    data = isolated_points(6, [1, 1, 1, middle, 1, 1, 1], spin=True)
    checks = {check.name: check for check in fixloc.check_inequalities(data)}
    assert checks["signature-mod-16"].status == status


@pytest.mark.parametrize("counts, status", [([1, 2, 2, 2, 1], PASS), ([1, 2, 1, 2, 1], FAIL)])
def test_betti_inequality_dimension_eight(counts, status):
    check = fixloc.check_inequalities(isolated_points(4, counts))[0]
    assert check.name == "betti-inequality"
    assert check.status == status


def test_inequalities_skip_with_four_dimensional_components(k3_blowup):
    check = fixloc.check_inequalities(k3_blowup)[0]
    assert check.status == SKIPPED
    assert check.components == (1,)


def test_reduced_volume_linear():
    assert fixloc.reduced_volume_linear((1, 1, 1, 2), 3) == F(27, 2)
    assert fixloc.reduced_volume_linear((2,), F(1, 3)) == F(1, 2)
    with pytest.raises(PreconditionError):
        fixloc.reduced_volume_linear((), 1)
    with pytest.raises(NonPositiveWeight):
        fixloc.reduced_volume_linear((1, 0), 1)
    with pytest.raises(NonPositiveLevel):
        fixloc.reduced_volume_linear((1, 1), 0)


def test_reduced_volume_near_minimum(weighted_cp4, cp4_standard, k3_blowup):
    assert fixloc.reduced_volume_near_minimum(weighted_cp4, -3) == F(4)
    assert fixloc.reduced_volume_near_minimum(cp4_standard, -3) == F(1)
    with pytest.raises(PreconditionError):
        fixloc.reduced_volume_near_minimum(k3_blowup, 1)


def test_report_serialization(weighted_cp4):
    document = fixloc.validate(weighted_cp4).to_dict()
    assert document["ok"] is True
    assert document["checks"][0] == {"name": "component-invariants", "status": "pass",
                                     "detail": "3 components consistent", "components": []}


@pytest.mark.parametrize("seed", range(1000))
def test_i_jr_localizes(seed):
    data = random_fixed_point_data(seed)
    betti = fixloc.localize_betti(data)
    signature = fixloc.localize_signature(data)
    assert fixloc.i_jr_direct(betti, signature) == fixloc.i_jr_localized(data)


def test_single_point_in_dimension_zero():
    data = fixloc.FixedPointData(0, (FixedComponent(0, POINT, 1, 0),))
    report = fixloc.validate(data)
    assert report.ok
    assert fixloc.localize_betti(data) == [1]


def test_unimodal_8_on_projective_space(cp4_standard):
    check = fixloc.check_unimodal_8(cp4_standard)
    assert check.status == PASS
    assert check.detail == "b2 = 1 <= b4 = 1"


def test_betti_inequality_on_projective_space(cp4_standard):
    check = fixloc.check_inequalities(cp4_standard)[0]
    assert check.status == PASS
    assert "= 1" in check.detail


def test_reduced_volume_examples():
    assert fixloc.reduced_volume_linear((1, 1, 1, 2), 1) == F(1, 2)
    assert fixloc.reduced_volume_linear((1, 1, 1, 1), F(3, 2)) == F(27, 8)
    assert fixloc.reduced_volume_linear((7,), 5) == F(1, 7)


@pytest.mark.parametrize("seed", range(1000))
def test_reverse_mirrors_betti(seed):
    data = random_fixed_point_data(seed)
    assert fixloc.localize_betti(fixloc.reverse(data)) == fixloc.localize_betti(data)[::-1]
    assert fixloc.reverse(fixloc.reverse(data)) == data


@pytest.mark.parametrize("seed", range(1000))
def test_euler_characteristic_localizes(seed):
    data = random_fixed_point_data(seed)
    betti = fixloc.localize_betti(data)
    assert sum((-1) ** i * b for i, b in enumerate(betti)) == fixloc.euler_characteristic(data)


@pytest.mark.parametrize("seed", range(1000))
def test_validate_is_deterministic(seed):
    data = random_fixed_point_data(seed)
    assert fixloc.validate(data) == fixloc.validate(data)
    assert fixloc.check_inequalities(data) == fixloc.check_inequalities(data)


@pytest.mark.parametrize("seed", range(1000))
def test_unimodal_betti_satisfy_the_inequality(seed):
    data = random_fixed_point_data(seed)
    n = data.half_dim
    evens = fixloc.localize_betti(data)[0:n + 1:2]
    check = fixloc.check_inequalities(data)[0]
    if evens[0] == 1 and all(a <= b for a, b in zip(evens, evens[1:])):
        assert check.status != FAIL


@pytest.mark.parametrize("seed", range(200))
def test_unimodal_isolated_points_pass_the_inequality(seed):
    data = random_unimodal_points(seed)
    check = fixloc.check_inequalities(data)[0]
    assert check.name == "betti-inequality"
    assert check.status == PASS
