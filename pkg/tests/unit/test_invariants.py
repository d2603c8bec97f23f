#!/usr/bin/env python3
"""
Unit tests for invariant polynomials, symmetric-function helpers and the genus series
"""
import pytest
from sympy.polys.domains import QQ

from residue_localizer.errors import ExpressionParseError, NonSymmetricError
from residue_localizer.invariants import (
    InvariantPoly,
    Y_RING,
    elementary_decompose,
    elementary_ring,
    eval_phi,
    expand_elementary,
    genus_series,
    mixed_elementaries,
    mixed_elementary,
    monomials_of_degree,
    parse_phi,
    root_ring,
    y,
)
from residue_localizer.scalars import gauss

pytestmark = pytest.mark.unit


class TestInvariantPoly:
    def test_parse_and_print(self):
        phi = parse_phi("c1*c2 - 3*c1^3", 2)
        assert str(phi) == "-3*c1^3 + c1*c2"
        assert phi.total_degree == 3
        assert phi.is_homogeneous
        assert phi.homogeneous_degree == 3

    def test_inhomogeneous(self):
        phi = parse_phi("1 + c1 + c1^2", 2)
        assert phi.degrees == {0, 1, 2}
        assert not phi.is_homogeneous
        assert phi.homogeneous_degree is None
        assert str(phi.homogeneous_part(2)) == "c1^2"

    def test_constant_phi(self):
        phi = parse_phi("1", 3)
        assert phi == InvariantPoly.constant(3)
        assert phi.homogeneous_degree == 0

    def test_chern_index_beyond_dimension(self):
        with pytest.raises(ExpressionParseError, match="c3 exceeds dimension 2"):
            parse_phi("c1*c3", 2)

    @pytest.mark.parametrize("source", ["x", "c0", "p1"])
    def test_unknown_identifiers(self, source):
        with pytest.raises(ExpressionParseError, match="unknown identifier"):
            parse_phi(source, 2)

    def test_monomial_product(self):
        c1 = InvariantPoly.monomial(2, (1, 0))
        c2 = InvariantPoly.monomial(2, (0, 1))
        assert c1 * c2 == parse_phi("c1*c2", 2)
        assert str(c1 + c2) == "c2 + c1"


@pytest.mark.parametrize("n, degree, expected", [
    (2, 2, [(2, 0), (0, 1)]),
    (2, 3, [(3, 0), (1, 1)]),
    (3, 3, [(3, 0, 0), (1, 1, 0), (0, 0, 1)]),
    (1, 2, [(2,)]),
    (3, 0, [(0, 0, 0)]),
])
def test_monomials_of_degree(n, degree, expected):
    assert monomials_of_degree(n, degree) == expected


def test_monomial_counts_are_partition_counts():
    assert len(monomials_of_degree(4, 4)) == 5
    assert len(monomials_of_degree(4, 5)) == 6


class TestSymmetricFunctions:
    def test_power_sum_in_elementaries(self):
        roots = root_ring(2)
        a1, a2 = roots.gens
        e1, e2 = elementary_ring(2).gens
        assert elementary_decompose(a1 ** 2 + a2 ** 2) == e1 ** 2 - 2 * e2

    def test_round_trip(self):
        roots = root_ring(3)
        a1, a2, a3 = roots.gens
        poly = (a1 * a2) ** 2 + (a1 * a3) ** 2 + (a2 * a3) ** 2 + 5 * a1 * a2 * a3
        assert expand_elementary(elementary_decompose(poly), roots) == poly

    def test_non_symmetric(self):
        a1, _ = root_ring(2).gens
        with pytest.raises(NonSymmetricError):
            elementary_decompose(a1)


class TestGenusSeries:
    def test_low_orders(self):
        series = genus_series(2)
        assert series[0] == Y_RING(1) + y
        assert series[1] == (Y_RING(1) - y) * QQ(1, 2)
        assert series[2] == (Y_RING(1) + y) * QQ(1, 12)

    def test_todd_specialization(self):
        # y = 0 gives x/(1 - e^{-x}) = 1 + x/2 + x^2/12 + 0*x^3 - x^4/720
        constant_terms = [coeff.get((0,), QQ.zero) for coeff in genus_series(4)]
        assert constant_terms == [QQ(1), QQ(1, 2), QQ(1, 12), QQ(0), QQ(-1, 720)]


class TestEvaluation:
    def test_mixed_elementaries_at_a_point(self, cp2_points):
        mixed = mixed_elementaries(cp2_points.component("M1"), 2)
        assert mixed[0] == gauss(1)
        assert mixed[1] == gauss(0, 3)
        assert mixed[2] == gauss(-2)

    def test_eval_phi_uses_mixed_classes(self, cp2_points):
        component = cp2_points.component("M1")
        value = eval_phi(parse_phi("c1^2 + c2", 2), component)
        assert value == gauss(-11)

    def test_mixed_elementaries_with_tangent_part(self, cp2_mixed):
        component = cp2_mixed.component("M1")
        mixed = mixed_elementaries(component, 2)
        # c(Z) = 1 + 2x, u = 5i + x
        assert str(mixed[1]) == "5*i + 3*x"
        assert str(mixed[2]) == "10*i*x"

    def test_single_mixed_elementary(self, cp2_mixed):
        component = cp2_mixed.component("M1")
        assert mixed_elementary(1, component, 2) == mixed_elementaries(component, 2)[1]
        assert not mixed_elementary(3, component, 2)
        assert not mixed_elementary(-1, component, 2)
