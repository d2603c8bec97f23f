#!/usr/bin/env python3
"""
Unit tests for the equivariant chi_y-genus
"""
import pytest
from sympy.polys.domains import QQ

from residue_localizer.catalog import cpn_weighted, isolated_from_weights
from residue_localizer.chiy import (
    NonConstant,
    assert_rigidity,
    chi_y_of_component,
    component_chi_y_term,
    equivariant_chi_y,
    integer_weight,
    limits_check,
    pairing_identity_check,
    sampled_rigidity,
    sign_counts,
    specializations,
    tangent_expansion_closed_form,
    tangent_factor_expansion,
    y_plus_one_coefficient,
)
from residue_localizer.errors import NonIntegralWeightError, RigidityError, SampleCountError
from residue_localizer.scalars import RatFun, YPoly

pytestmark = pytest.mark.unit

CP1_GENUS = YPoly((1, -1))
CP2_GENUS = YPoly((1, -1, 1))


class TestRigidity:
    def test_cp1(self, cp1):
        chi = equivariant_chi_y(cp1)
        assert chi.is_constant
        assert assert_rigidity(chi) == CP1_GENUS
        assert str(assert_rigidity(chi)) == "1 - y"

    def test_single_term_depends_on_q(self, cp1):
        term = component_chi_y_term(cp1.component("M1"))
        assert not term.is_constant_in_q()
        # (1 + y q^w) / (1 - q^w) at a point with one weight w
        weight = integer_weight(cp1.component("M1").normal[0].weight, "M1")
        q_w = RatFun.q_power(weight)
        assert term.coefficient(0) == 1 / (1 - q_w)
        assert term.coefficient(1) == q_w / (1 - q_w)

    @pytest.mark.parametrize("fixture", ["cp2_points", "cp2_mixed"])
    def test_cp2(self, fixture, request):
        data = request.getfixturevalue(fixture)
        assert assert_rigidity(equivariant_chi_y(data)) == CP2_GENUS

    def test_blowup(self, blowup):
        constant = assert_rigidity(equivariant_chi_y(blowup))
        assert str(constant) == "1 - 2*y + y^2"

    def test_flipped_sign_is_not_rigid(self):
        data = isolated_from_weights(1, [("p", [1]), ("q", [1])])
        result = assert_rigidity(equivariant_chi_y(data))
        assert isinstance(result, NonConstant)
        assert result.nonconstant_powers == [0, 1]

    def test_common_denominator(self, cp1):
        numerators, den = equivariant_chi_y(cp1).common_denominator()
        assert den == 1
        assert [str(RatFun(num)) for num in numerators] == ["1", "-1"]

    def test_non_integral_weight(self):
        data = cpn_weighted("0*1,1/2*1")
        with pytest.raises(NonIntegralWeightError, match="common_denominator_scale"):
            equivariant_chi_y(data)
        assert integer_weight(QQ(4), "p") == 4


def test_specializations():
    values = specializations(CP2_GENUS)
    assert values == {"euler": QQ(3), "todd": QQ(1), "signature": QQ(1)}


def test_chi_y_of_component(cp2_mixed):
    assert chi_y_of_component(cp2_mixed.component("M1")) == CP1_GENUS
    assert chi_y_of_component(cp2_mixed.component("M2")) == YPoly((1,))


def test_sign_counts(blowup):
    counts = {c.component: (c.d_plus, c.d_minus) for c in sign_counts(blowup)}
    assert counts == {"p1": (1, 1), "p2": (2, 0), "p3": (1, 1), "p4": (0, 2)}


class TestLimits:
    def test_cp1_limits(self, cp1):
        report = limits_check(cp1)
        assert report.passed
        first = report.components[0]
        assert first.at_zero == YPoly((1,))
        assert first.at_infinity == YPoly((0, -1))
        assert report.euler_number == QQ(2)

    def test_mixed_components(self, cp2_mixed):
        report = limits_check(cp2_mixed)
        assert report.passed
        assert report.euler_sum == QQ(3)

    def test_requires_rigidity(self):
        data = isolated_from_weights(1, [("p", [1]), ("q", [1])])
        with pytest.raises(RigidityError):
            limits_check(data)


class TestYPlusOne:
    def test_cp1(self, cp1):
        report = y_plus_one_coefficient(cp1)
        assert report.match
        assert report.lhs == QQ(-1)
        assert str(report.extracted) == "-1"

    def test_blowup(self, blowup):
        report = y_plus_one_coefficient(blowup)
        assert report.match
        assert report.lhs == QQ(-4)

    @pytest.mark.parametrize("fixture, expected", [("cp1", 1), ("cp2_points", 3), ("cp2_mixed", 2), ("blowup", 4)])
    def test_pairing_identity(self, fixture, expected, request):
        report = pairing_identity_check(request.getfixturevalue(fixture))
        assert report.passed
        assert report.rhs == QQ(expected)


class TestSampling:
    def test_sampled_agrees_with_exact(self, cp2_mixed):
        sampled = sampled_rigidity(cp2_mixed, points=3)
        assert [q for q, _ in sampled.samples] == [QQ(2), QQ(3), QQ(4)]
        assert sampled.rigid
        assert sampled.constant == CP2_GENUS

    def test_sampled_detects_non_rigid(self):
        data = isolated_from_weights(1, [("p", [1]), ("q", [1])])
        sampled = sampled_rigidity(data, points=2)
        assert not sampled.rigid
        assert sampled.constant is None

    def test_sample_count_from_dimension(self, cp1):
        assert len(sampled_rigidity(cp1).samples) == 4

    @pytest.mark.parametrize("points", [1, -3])
    def test_single_sample_is_rejected(self, cp1, points):
        with pytest.raises(SampleCountError, match="at least 2 points"):
            sampled_rigidity(cp1, points=points)


def test_tangent_factor_expansion(cp3_mixed):
    component = cp3_mixed.component("M1")
    order0, order1 = tangent_factor_expansion(component)
    top, below = tangent_expansion_closed_form(component)
    assert order0 == top
    assert order1 == below
    assert str(order1) == "1 - x"
