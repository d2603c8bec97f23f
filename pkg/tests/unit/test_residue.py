#!/usr/bin/env python3
"""
Unit tests for the residue localization engine
"""
import logging

import pytest
from sympy.polys.domains import QQ

from residue_localizer.catalog import isolated_from_weights
from residue_localizer.errors import ComponentMismatchError, UnsupportedManifoldError, ValidationError
from residue_localizer.invariants import InvariantPoly, parse_phi
from residue_localizer.residue import (
    ABOVE_N,
    BELOW_N,
    EQUAL_N,
    ResidueEngine,
    c1cn,
    chern_number_direct,
    degree_class,
    futaki_invariant,
    localize,
    uniqueness_scan,
    vanishing_report,
)
from residue_localizer.scalars import format_gauss, gauss

pytestmark = pytest.mark.unit


def test_degree_class():
    assert degree_class(1, 2) == BELOW_N
    assert degree_class(2, 2) == EQUAL_N
    assert degree_class(3, 2) == ABOVE_N


class TestLocalize:
    def test_cp1(self, cp1):
        assert localize(parse_phi("1", 1), cp1).value == gauss(0)
        assert localize(parse_phi("c1", 1), cp1).value == gauss(2)
        assert localize(parse_phi("c1^2", 1), cp1).value == gauss(0)

    @pytest.mark.parametrize("phi, expected", [("c1^2", 9), ("c2", 3), ("c1*c2", 0), ("c1^3", 0)])
    def test_cp2_isolated(self, cp2_points, phi, expected):
        assert localize(parse_phi(phi, 2), cp2_points).value == gauss(expected)

    @pytest.mark.parametrize("phi, expected", [("c1^2", 9), ("c2", 3), ("1", 0), ("c1", 0), ("c1*c2", 0)])
    def test_cp2_with_curve_component(self, cp2_mixed, phi, expected):
        assert localize(parse_phi(phi, 2), cp2_mixed).value == gauss(expected)

    @pytest.mark.parametrize("phi, expected", [("c1^3", 64), ("c1*c2", 24), ("c3", 4)])
    def test_cp3_two_lines(self, cp3_mixed, phi, expected):
        assert localize(parse_phi(phi, 3), cp3_mixed).value == gauss(expected)

    def test_blowup_numbers(self, blowup):
        engine = ResidueEngine(blowup)
        assert engine.localize(parse_phi("c1^2", 2)).value == gauss(8)
        assert engine.localize(parse_phi("c2", 2)).value == gauss(4)
        assert engine.localize(parse_phi("c1*c2", 2)).value == gauss(0)
        assert engine.localize(parse_phi("c1^3", 2)).value == gauss(0, -8)

    def test_per_component_contributions(self, cp2_points):
        report = localize(parse_phi("c1^2", 2), cp2_points)
        assert [(name, format_gauss(v)) for name, v in report.per_component] == [
            ("M1", "9/2"), ("M2", "0"), ("M3", "9/2"),
        ]
        assert report.degree_class == EQUAL_N
        assert report.is_real and not report.imaginary_violation
        assert report.to_dict()["value"] == {"re": "9", "im": "0"}

    def test_linearity_in_phi(self, cp2_mixed):
        engine = ResidueEngine(cp2_mixed)
        combined = engine.localize(parse_phi("2*c1^2 - c2 + 7", 2)).value
        assert combined == gauss(2 * 9 - 3)

    def test_dimension_mismatch(self, cp1):
        with pytest.raises(ComponentMismatchError):
            localize(parse_phi("c1", 2), cp1)

    def test_cost_warning(self, cp1, caplog):
        engine = ResidueEngine(cp1, degree_margin=0)
        with caplog.at_level(logging.WARNING, logger="residue_localizer.residue"):
            engine.localize(parse_phi("c1^2", 1))
        assert "exceeds n + 0" in caplog.text

    def test_weight_scaling(self, blowup):
        # homogeneous phi scales by t^(deg phi - n)
        scaled = blowup.map_weights(lambda w: w * QQ(3, 2))
        assert localize(parse_phi("c1^3", 2), scaled).value == gauss(0, -12)
        phi = parse_phi("c1^4 - c2^2", 2)
        assert localize(phi, scaled).value == localize(phi, blowup).value * gauss(QQ(9, 4))
        assert localize(parse_phi("c1^2", 2), scaled).value == gauss(8)


class TestChernNumberDirect:
    @pytest.mark.parametrize("n, phi, expected", [
        (1, "c1", 2),
        (2, "c1^2", 9),
        (2, "c2", 3),
        (3, "c1^3", 64),
        (3, "c1*c2", 24),
        (3, "c3", 4),
        (4, "c4", 5),
        (4, "c1^4", 625),
    ])
    def test_projective_space(self, n, phi, expected):
        assert chern_number_direct(n, parse_phi(phi, n)) == QQ(expected)

    def test_unknown_manifold(self):
        with pytest.raises(UnsupportedManifoldError):
            chern_number_direct(2, parse_phi("c2", 2), "blowup_plane")

    def test_needs_top_degree(self):
        with pytest.raises(ValueError):
            chern_number_direct(2, parse_phi("c1", 2))


class TestVanishing:
    def test_catalog_instance_is_realizable(self, cp2_mixed):
        report = vanishing_report(cp2_mixed)
        assert report.realizable
        assert [check.kind for check in report.checks] == ["degree<n", "degree<n", "c1cn"]

    def test_single_point_is_not(self):
        data = isolated_from_weights(1, [("p", [1])])
        report = vanishing_report(data)
        assert not report.realizable
        assert report.failures[0].value == gauss(0, -1)

    def test_c1cn(self):
        assert c1cn(1) == InvariantPoly.monomial(1, (2,))
        assert str(c1cn(3)) == "c1*c3"


class TestUniquenessScan:
    def test_projective_planes_are_insufficient(self, cp2_points, cp2_mixed):
        result = uniqueness_scan(2, [cp2_points, cp2_mixed])
        assert [str(e.monomial) for e in result.vanishing] == ["c1^3", "c1*c2"]
        assert result.insufficient

    def test_blowup_witnesses_c1_cubed(self, cp2_points, blowup):
        result = uniqueness_scan(2, [cp2_points, blowup])
        assert [str(e.monomial) for e in result.vanishing] == ["c1*c2"]
        assert not result.insufficient
        witness = result.entries[0].witness
        assert witness == ("blowup_plane", gauss(0, -8))
        assert result.as_mapping()["c1*c2"] == "vanishes_on_all"
        assert result.as_mapping()["c1^3"] == {"instance": "blowup_plane", "value": {"re": "0", "im": "-8"}}

    def test_dimension_one(self, cp1):
        result = uniqueness_scan(1, [cp1])
        assert [str(e.monomial) for e in result.vanishing] == ["c1^2"]

    def test_dimension_mismatch(self, cp1, cp2_points):
        with pytest.raises(ValidationError, match="expected 2"):
            uniqueness_scan(2, [cp2_points, cp1])


def test_futaki_invariant(cp2_points, blowup):
    assert futaki_invariant(cp2_points) == gauss(0)
    assert futaki_invariant(blowup) == gauss(0, -8)
