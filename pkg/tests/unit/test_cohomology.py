#!/usr/bin/env python3
"""
Unit tests for truncated cohomology rings and the fixed-point data model
"""
import pytest
from sympy.polys.domains import QQ

from residue_localizer.cohomology import (
    ClassExpr,
    ComponentModel,
    FixedPointData,
    Generator,
    NormalLine,
    TruncatedCohomology,
    exp_nilpotent,
    integrate,
    invert_unit,
    parse_class,
    validate_data,
)
from residue_localizer.errors import (
    ComponentMismatchError,
    ExpressionParseError,
    NilpotencyError,
    NonUnitClassError,
    ValidationError,
)
from residue_localizer.scalars import GAUSSIAN, RATIONAL, gauss

pytestmark = pytest.mark.unit


@pytest.fixture
def plane():
    """Cohomology of CP^2: x^3 = 0, integral of x^2 is 1"""
    return TruncatedCohomology("P", 2, [Generator("x", 1, 3)], {(2,): 1})


@pytest.fixture
def quadric():
    """Cohomology of CP^1 x CP^1"""
    return TruncatedCohomology("Q", 2, [Generator("a", 1, 2), Generator("b", 1, 2)], {(1, 1): 1})


class TestTruncatedCohomology:
    def test_point_defaults(self):
        point = TruncatedCohomology("p", 0)
        assert point.integrals == {(): QQ(1)}
        assert point.missing_integrals() == []

    def test_monomials(self, quadric):
        assert quadric.monomials_of_degree(1) == [(1, 0), (0, 1)]
        assert quadric.top_monomials() == [(1, 1)]
        assert not quadric.survives((2, 0))

    def test_missing_integrals(self):
        algebra = TruncatedCohomology("Z", 1, [Generator("x", 1, 2)], {})
        assert algebra.missing_integrals() == [(1,)]

    def test_monomial_keys(self, quadric):
        assert quadric.monomial_key((1, 1)) == "a*b"
        assert quadric.monomial_key((0, 0)) == "1"
        assert quadric.parse_monomial_key("b*a") == (1, 1)
        with pytest.raises(ValueError, match="unknown generator"):
            quadric.parse_monomial_key("c")

    @pytest.mark.parametrize("generators", [
        [Generator("i")],
        [Generator("x"), Generator("x")],
        [Generator("x", 0)],
        [Generator("x", 1, 0)],
    ])
    def test_rejects_bad_generators(self, generators):
        with pytest.raises(ValueError):
            TruncatedCohomology("Z", 1, generators)


class TestClassExpr:
    def test_nilpotency(self, plane):
        x = ClassExpr.generator(plane, RATIONAL, "x")
        assert x ** 3 == 0
        assert x * x == ClassExpr(plane, RATIONAL, {(2,): 1})

    def test_invert_unit(self, plane):
        x = ClassExpr.generator(plane, RATIONAL, "x")
        assert invert_unit(1 + x) == 1 - x + x ** 2
        assert invert_unit(x.scale(3) + 2) * (x.scale(3) + 2) == 1

    def test_invert_non_unit(self, plane):
        x = ClassExpr.generator(plane, RATIONAL, "x")
        with pytest.raises(NonUnitClassError, match="non-unit class"):
            invert_unit(x)

    def test_exp_nilpotent(self, plane):
        x = ClassExpr.generator(plane, RATIONAL, "x")
        assert exp_nilpotent(x) == 1 + x + (x ** 2).scale(QQ(1, 2))
        with pytest.raises(NilpotencyError):
            exp_nilpotent(1 + x)

    def test_integrate_reads_top_degree(self, plane):
        value = parse_class("5 + 7*x + 3*x^2", plane, RATIONAL)
        assert integrate(value) == QQ(3)

    def test_gaussian_printing(self, plane):
        assert str(parse_class("i*x", plane)) == "i*x"
        assert str(parse_class("3/2*i*x - i", plane)) == "-i + 3/2*i*x"
        assert str(parse_class("(1 + 2*i)*x", plane)) == "(1 + 2*i)*x"

    def test_rational_printing_orders_by_degree(self, plane):
        assert str(parse_class("2*x^2 - 3*x + 1/2", plane, RATIONAL)) == "1/2 - 3*x + 2*x^2"
        assert str(ClassExpr.zero(plane, RATIONAL)) == "0"

    def test_parse_errors(self, plane):
        with pytest.raises(ExpressionParseError, match="unknown identifier y"):
            parse_class("y", plane)
        with pytest.raises(ExpressionParseError, match="'i' is not available"):
            parse_class("i*x", plane, RATIONAL)

    def test_mixing_components_fails(self, plane, quadric):
        x = ClassExpr.generator(plane, RATIONAL, "x")
        a = ClassExpr.generator(quadric, RATIONAL, "a")
        with pytest.raises(ComponentMismatchError):
            x + a

    def test_mixing_rings_fails(self, plane):
        x = ClassExpr.generator(plane, RATIONAL, "x")
        with pytest.raises(ComponentMismatchError):
            x * ClassExpr.generator(plane, GAUSSIAN, "x")

    def test_change_ring(self, plane):
        x = ClassExpr.generator(plane, RATIONAL, "x")
        assert x.change_ring(GAUSSIAN) * gauss(0, 1) == parse_class("i*x", plane)


def _component(name, algebra, chern, normal):
    return ComponentModel(name, algebra, tuple(chern), tuple(normal))


class TestFixedPointData:
    def test_euler_characteristic(self):
        algebra = TruncatedCohomology("M1", 1, [Generator("x", 1, 2)], {(1,): 1})
        x = ClassExpr.generator(algebra, RATIONAL, "x")
        comp = _component("M1", algebra, [x.scale(2)], [NormalLine(QQ(5), x)])
        assert comp.euler_characteristic == QQ(2)
        assert comp.chern_class(0) == 1
        assert comp.chern_class(2) == 0

    def test_map_weights(self, cp2_points):
        doubled = cp2_points.map_weights(lambda w: 2 * w, name="doubled")
        assert doubled.name == "doubled"
        assert sorted(doubled.all_weights()) == sorted(2 * w for w in cp2_points.all_weights())

    def test_component_lookup(self, cp2_points):
        assert cp2_points.component("M2").weights == [QQ(-1), QQ(1)]
        with pytest.raises(KeyError):
            cp2_points.component("nope")

    def test_validate_zero_weight(self):
        point = TruncatedCohomology("p", 0)
        zero = ClassExpr.zero(point, RATIONAL)
        data = FixedPointData("bad", 1, (_component("p", point, [], [NormalLine(QQ(0), zero)]),))
        with pytest.raises(ValidationError) as excinfo:
            validate_data(data)
        assert excinfo.value.path == "components[0].normal[0].lambda"
        assert "zero weight" in str(excinfo.value)

    def test_validate_missing_integrals(self):
        algebra = TruncatedCohomology("Z", 1, [Generator("x", 1, 2)], {})
        x = ClassExpr.generator(algebra, RATIONAL, "x")
        data = FixedPointData("bad", 2, (_component("Z", algebra, [x.scale(2)], [NormalLine(QQ(1), x)]),))
        with pytest.raises(ValidationError, match="missing top monomials: x"):
            validate_data(data)

    def test_validate_normal_count(self):
        point = TruncatedCohomology("p", 0)
        zero = ClassExpr.zero(point, RATIONAL)
        data = FixedPointData("bad", 2, (_component("p", point, [], [NormalLine(QQ(1), zero)]),))
        with pytest.raises(ValidationError, match="expected 2 normal lines"):
            validate_data(data)

    def test_validate_inhomogeneous_chern(self, plane):
        x = ClassExpr.generator(plane, RATIONAL, "x")
        comp = _component("P", plane, [x.scale(3), x + 1], [NormalLine(QQ(1), x)])
        with pytest.raises(ValidationError, match="c2 must be homogeneous"):
            validate_data(FixedPointData("bad", 3, (comp,)))
