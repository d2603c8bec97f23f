#!/usr/bin/env python3
"""
Equivariant chi_y-genus as an exact rational function of q

Each component contributes

    integral_Z T_y(Z) * prod_j (1 + y q^lambda_j e^{-beta_j}) / (1 - q^lambda_j e^{-beta_j})

where T_y(Z) is the tangent genus factor. For data coming from a compatible
vector field the sum is constant in q and equals chi_y(M). The checks here
confirm that (rigidity), compare the q -> 0 / q -> oo limits with the sign
counts of the weights, and verify the identities carried by the (y+1)
coefficient.
"""
import logging
from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Tuple, Union

from sympy.polys.domains import QQ

from .cohomology import ClassExpr, ComponentModel, FixedPointData, exp_nilpotent, integrate, invert_unit
from .config import load_settings
from .errors import NonIntegralWeightError, RigidityError, SampleCountError
from .invariants import chi_y_tangent_factor
from .scalars import (
    RATFUN_Y,
    SAMPLED_Y,
    RATIONAL,
    CoefficientRing,
    RatFun,
    Rational,
    YPoly,
    format_rational,
    ratfun_limits,
    to_rational,
)

logger = logging.getLogger(__name__)

MINUS_Y = YPoly((QQ.zero, -QQ.one))
MIN_SAMPLE_POINTS = 2


@dataclass
class EquivChiY:
    """Sum of per-component terms; coefficients are RatFun (or rationals when sampled)"""

    value: YPoly
    terms: List[Tuple[str, YPoly]]
    dim: int
    sampled_at: Optional[Rational] = None

    @property
    def is_constant(self) -> bool:
        return self.value.is_constant_in_q()

    def common_denominator(self) -> Tuple[List, object]:
        """(numerator q-polynomials per y-power, shared monic denominator)"""
        coeffs = [c if isinstance(c, RatFun) else RatFun.constant(c) for c in self.value.coeffs]
        if not coeffs:
            one = RatFun.constant(1)
            return [], one.den
        den = coeffs[0].den
        for coeff in coeffs[1:]:
            den = den.lcm(coeff.den)
        numerators = [c.num * den.exquo(c.den) for c in coeffs]
        return numerators, den

    def __str__(self):
        return str(self.value)


@dataclass
class NonConstant:
    """Rigidity failure: the reduced function and the y-powers that still depend on q"""

    residual: YPoly
    nonconstant_powers: List[int]

    def __str__(self):
        return f"not constant in q (y-powers {self.nonconstant_powers}): {self.residual}"


@dataclass(frozen=True)
class SignCounts:
    component: str
    d_plus: int
    d_minus: int


def sign_counts(data: FixedPointData) -> List[SignCounts]:
    return [
        SignCounts(
            comp.name,
            sum(1 for w in comp.weights if w > 0),
            sum(1 for w in comp.weights if w < 0),
        )
        for comp in data.sorted_components
    ]


def integer_weight(weight: Rational, component: str) -> int:
    weight = to_rational(weight)
    if weight.denominator != 1:
        raise NonIntegralWeightError(
            f"weight {format_rational(weight)} on {component} is not an integer; "
            "rescale with common_denominator_scale first"
        )
    return int(weight.numerator)


def _q_power(exponent: int, q_value: Optional[Rational]) -> YPoly:
    if q_value is None:
        return YPoly((RatFun.q_power(exponent),))
    return YPoly((to_rational(q_value) ** exponent,))


def component_chi_y_term(component: ComponentModel, coeff_ring: CoefficientRing = RATFUN_Y,
                         q_value: Optional[Rational] = None) -> YPoly:
    algebra = component.cohomology
    integrand = chi_y_tangent_factor(component, coeff_ring)
    one = ClassExpr.one(algebra, coeff_ring)
    for line in component.normal:
        weight = integer_weight(line.weight, component.name)
        q_lambda = _q_power(weight, q_value)
        twisted = exp_nilpotent(-line.euler.change_ring(coeff_ring)).scale(q_lambda)
        numerator = one + twisted.scale(coeff_ring.y)
        integrand = integrand * numerator * invert_unit(one - twisted)
    return integrate(integrand)


def equivariant_chi_y(data: FixedPointData, q_value: Optional[Rational] = None) -> EquivChiY:
    """Localized equivariant chi_y; exact in q, or evaluated at ``q_value``"""
    coeff_ring = RATFUN_Y if q_value is None else SAMPLED_Y
    total = coeff_ring.zero
    terms = []
    for component in data.sorted_components:
        term = component_chi_y_term(component, coeff_ring, q_value)
        terms.append((component.name, term))
        total = total + term
    logger.debug("chi_y(%s) = %s", data.name, total)
    sampled = to_rational(q_value) if q_value is not None else None
    return EquivChiY(total, terms, data.dim, sampled)


def assert_rigidity(value: Union[EquivChiY, YPoly]) -> Union[YPoly, NonConstant]:
    """chi_y(M) as a q-free y-polynomial, or NonConstant"""
    poly = value.value if isinstance(value, EquivChiY) else value
    varying = [
        power for power, coeff in enumerate(poly.coeffs)
        if isinstance(coeff, RatFun) and not coeff.is_constant()
    ]
    if varying:
        return NonConstant(poly, varying)
    return poly.constant_part()


def _require_rigid(data: FixedPointData, chi: Optional[EquivChiY]) -> Tuple[EquivChiY, YPoly]:
    chi = chi or equivariant_chi_y(data)
    constant = assert_rigidity(chi)
    if isinstance(constant, NonConstant):
        raise RigidityError(f"{data.name}: equivariant chi_y is {constant}")
    return chi, constant


def chi_y_of_component(component: ComponentModel) -> YPoly:
    """chi_y(Z) from the tangent genus factor"""
    return integrate(chi_y_tangent_factor(component, SAMPLED_Y))


def specializations(constant: YPoly) -> dict:
    """Euler number (y=-1), Todd genus (y=0) and signature (y=1)"""
    return {
        "euler": to_rational(constant.evaluate(-1)),
        "todd": to_rational(constant.evaluate(0)),
        "signature": to_rational(constant.evaluate(1)),
    }


# ---------------------------------------------------------------------------
# Limits
# ---------------------------------------------------------------------------

@dataclass
class ComponentLimit:
    component: str
    chi_y: YPoly
    d_plus: int
    d_minus: int
    at_zero: YPoly
    at_infinity: YPoly

    @property
    def expected_zero(self) -> YPoly:
        return self.chi_y * MINUS_Y ** self.d_minus

    @property
    def expected_infinity(self) -> YPoly:
        return self.chi_y * MINUS_Y ** self.d_plus

    @property
    def matches(self) -> bool:
        return self.at_zero == self.expected_zero and self.at_infinity == self.expected_infinity


@dataclass
class LimitsReport:
    instance: str
    constant: YPoly
    components: List[ComponentLimit]
    euler_sum: Rational

    @property
    def sum_at_infinity(self) -> YPoly:
        return sum((c.expected_infinity for c in self.components), YPoly())

    @property
    def sum_at_zero(self) -> YPoly:
        return sum((c.expected_zero for c in self.components), YPoly())

    @property
    def euler_number(self) -> Rational:
        return to_rational(self.constant.evaluate(-1))

    @property
    def infinity_matches(self) -> bool:
        return self.sum_at_infinity == self.constant

    @property
    def zero_matches(self) -> bool:
        return self.sum_at_zero == self.constant

    @property
    def euler_matches(self) -> bool:
        return self.euler_number == self.euler_sum

    @property
    def passed(self) -> bool:
        return (
            self.infinity_matches and self.zero_matches and self.euler_matches
            and all(c.matches for c in self.components)
        )


def limits_check(data: FixedPointData, chi: Optional[EquivChiY] = None) -> LimitsReport:
    """Compare q -> 0 and q -> oo limits with sum_Z chi_y(Z)(-y)^{d-/d+}"""
    chi, constant = _require_rigid(data, chi)
    counts = {c.component: c for c in sign_counts(data)}
    components = []
    euler_sum = QQ.zero
    for (name, term), comp in zip(chi.terms, data.sorted_components):
        at_zero, at_infinity = ratfun_limits(term)
        components.append(ComponentLimit(
            name, chi_y_of_component(comp), counts[name].d_plus, counts[name].d_minus, at_zero, at_infinity,
        ))
        euler_sum += comp.euler_characteristic
    return LimitsReport(data.name, constant, components, euler_sum)


# ---------------------------------------------------------------------------
# (y+1) coefficient identities
# ---------------------------------------------------------------------------

def _inverse_one_minus_q_power(weight: Rational, component: str) -> RatFun:
    return RatFun.constant(1) / (1 - RatFun.q_power(integer_weight(weight, component)))


@dataclass
class YPlusOneReport:
    lhs: Rational
    extracted: RatFun
    closed_form: RatFun

    @property
    def match(self) -> bool:
        return self.extracted == self.closed_form and self.closed_form == self.lhs


def y_plus_one_coefficient(data: FixedPointData, chi: Optional[EquivChiY] = None) -> YPlusOneReport:
    """First-order coefficient in (y+1): extracted, closed form, and -(n/2) e(M)"""
    chi, constant = _require_rigid(data, chi)
    n = data.dim
    coefficient = chi.value.taylor_at_minus_one().coefficient(1)
    extracted = coefficient if isinstance(coefficient, RatFun) else RatFun.constant(coefficient)
    closed_form = RatFun.constant(0)
    for comp in data.sorted_components:
        euler = comp.euler_characteristic
        closed_form = closed_form + (QQ(comp.dim, 2) - n) * euler
        for weight in comp.weights:
            closed_form = closed_form + _inverse_one_minus_q_power(weight, comp.name) * euler
    lhs = -QQ(n, 2) * to_rational(constant.evaluate(-1))
    return YPlusOneReport(lhs, extracted, closed_form)


@dataclass
class PairingIdentityReport:
    lhs: RatFun
    rhs: Rational

    @property
    def passed(self) -> bool:
        return self.lhs == self.rhs


def pairing_identity_check(data: FixedPointData) -> PairingIdentityReport:
    """sum_{e>0} e sum 1/(1-q^l) + sum_{e<0} |e| sum 1/(1-q^-l) against (1/2) sum (n-r)|e|"""
    lhs = RatFun.constant(0)
    rhs = QQ.zero
    for comp in data.sorted_components:
        euler = comp.euler_characteristic
        if euler > 0:
            for weight in comp.weights:
                lhs = lhs + _inverse_one_minus_q_power(weight, comp.name) * euler
        elif euler < 0:
            for weight in comp.weights:
                lhs = lhs + _inverse_one_minus_q_power(-weight, comp.name) * (-euler)
        rhs += QQ(data.dim - comp.dim, 2) * abs(euler)
    return PairingIdentityReport(lhs, rhs)


# ---------------------------------------------------------------------------
# Sampled fallback and genus-factor expansion
# ---------------------------------------------------------------------------

@dataclass
class SampledRigidity:
    samples: List[Tuple[Rational, YPoly]] = field(default_factory=list)

    @property
    def rigid(self) -> bool:
        return all(value == self.samples[0][1] for _, value in self.samples[1:])

    @property
    def constant(self) -> Optional[YPoly]:
        return self.samples[0][1] if self.samples and self.rigid else None


def sampled_rigidity(data: FixedPointData, points: Optional[int] = None) -> SampledRigidity:
    """Evaluate chi_y at q = 2, 3, ...; agreement at 2n+2 points by default"""
    count = points or load_settings().samples_for(data.dim)
    if count < MIN_SAMPLE_POINTS:
        raise SampleCountError(f"sampled rigidity needs at least {MIN_SAMPLE_POINTS} points, got {count}")
    report = SampledRigidity()
    for q_value in range(2, 2 + count):
        chi = equivariant_chi_y(data, QQ(q_value))
        report.samples.append((chi.sampled_at, chi.value))
    logger.debug("sampled chi_y of %s at %d points", data.name, count)
    return report


def tangent_factor_expansion(component: ComponentModel) -> Tuple[ClassExpr, ClassExpr]:
    """Orders 0 and 1 of the tangent genus factor in powers of (y+1)"""
    factor = chi_y_tangent_factor(component, SAMPLED_Y)
    shifted = factor.map_coefficients(lambda c: c.taylor_at_minus_one(), SAMPLED_Y)
    order0 = shifted.map_coefficients(lambda c: c.coefficient(0), RATIONAL)
    order1 = shifted.map_coefficients(lambda c: c.coefficient(1), RATIONAL)
    return order0, order1


def tangent_expansion_closed_form(component: ComponentModel) -> Tuple[ClassExpr, ClassExpr]:
    """c_r(Z) and c_{r-1}(Z) - (r/2) c_r(Z)"""
    r = component.dim
    top = component.chern_class(r)
    below = component.chern_class(r - 1) if r >= 1 else top * 0
    return top, below - top.scale(QQ(r, 2))
