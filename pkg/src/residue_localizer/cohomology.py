#!/usr/bin/env python3
"""
Finite models of the cohomology rings of fixed components

A component Z of complex dimension r is modelled by generators with a
complex degree and an optional pure-power nilpotency relation. Products
are reduced by those relations and truncated above degree r; integration
reads the degree-r part against an explicit integral table.
"""
import logging
from dataclasses import dataclass, field, replace
from functools import cached_property
from math import factorial
from typing import Any, Callable, Dict, Iterator, List, Mapping, Optional, Sequence, Tuple, Union

from sympy.polys.domains import QQ
from sympy.polys.polyerrors import CoercionFailed

from .errors import (
    ComponentMismatchError,
    ExpressionParseError,
    NilpotencyError,
    NonUnitClassError,
    ValidationError,
)
from .expressions import evaluate, parse_expression
from .scalars import (
    GAUSSIAN,
    RATIONAL,
    CoefficientRing,
    GaussRational,
    RatFun,
    Rational,
    YPoly,
    _join_signed,
    _rational_parts,
    format_rational,
    to_rational,
)

logger = logging.getLogger(__name__)

Monomial = Tuple[int, ...]

RESERVED_NAMES = frozenset({"i"})


@dataclass(frozen=True)
class Generator:
    """Cohomology generator; ``nilpotent_power`` p means g^p = 0"""

    name: str
    degree: int = 1
    nilpotent_power: Optional[int] = None


class TruncatedCohomology:
    """Graded ring of one component: generators, dimension and integral table"""

    def __init__(
        self,
        name: str,
        dim: int,
        generators: Sequence[Generator] = (),
        integrals: Optional[Mapping[Monomial, Any]] = None,
    ):
        if dim < 0:
            raise ValueError(f"negative dimension {dim}")
        self.name = name
        self.dim = dim
        self.generators = tuple(generators)
        self.index: Dict[str, int] = {}
        for position, gen in enumerate(self.generators):
            if gen.name in RESERVED_NAMES:
                raise ValueError(f"generator name {gen.name!r} is reserved for the imaginary unit")
            if gen.name in self.index:
                raise ValueError(f"duplicate generator name {gen.name!r}")
            if gen.degree < 1:
                raise ValueError(f"generator {gen.name!r} has degree {gen.degree} < 1")
            if gen.nilpotent_power is not None and gen.nilpotent_power < 1:
                raise ValueError(f"generator {gen.name!r} has nilpotent power {gen.nilpotent_power} < 1")
            self.index[gen.name] = position
        if integrals is None:
            integrals = {self.unit_monomial: QQ.one} if dim == 0 else {}
        self.integrals: Dict[Monomial, Rational] = {
            tuple(m): to_rational(v) for m, v in integrals.items()
        }

    @property
    def unit_monomial(self) -> Monomial:
        return (0,) * len(self.generators)

    def monomial_degree(self, exps: Monomial) -> int:
        return sum(e * g.degree for e, g in zip(exps, self.generators))

    def survives(self, exps: Monomial) -> bool:
        if self.monomial_degree(exps) > self.dim:
            return False
        return all(g.nilpotent_power is None or e < g.nilpotent_power for e, g in zip(exps, self.generators))

    def monomials_of_degree(self, degree: int) -> List[Monomial]:
        """Surviving exponent vectors of the given weighted degree, declaration order"""
        found: List[Monomial] = []

        def extend(prefix: List[int], remaining: int) -> None:
            position = len(prefix)
            if position == len(self.generators):
                if remaining == 0:
                    found.append(tuple(prefix))
                return
            gen = self.generators[position]
            top = remaining // gen.degree
            if gen.nilpotent_power is not None:
                top = min(top, gen.nilpotent_power - 1)
            for e in range(top, -1, -1):
                extend(prefix + [e], remaining - e * gen.degree)

        extend([], degree)
        return found

    def top_monomials(self) -> List[Monomial]:
        return self.monomials_of_degree(self.dim)

    def missing_integrals(self) -> List[Monomial]:
        return [m for m in self.top_monomials() if m not in self.integrals]

    def monomial_key(self, exps: Monomial) -> str:
        """Canonical string: declaration order, ``^k`` for k >= 2, ``"1"`` when empty"""
        factors = []
        for e, g in zip(exps, self.generators):
            if e == 1:
                factors.append(g.name)
            elif e > 1:
                factors.append(f"{g.name}^{e}")
        return "*".join(factors) if factors else "1"

    def parse_monomial_key(self, key: str) -> Monomial:
        exps = [0] * len(self.generators)
        key = key.strip()
        if key == "1":
            return tuple(exps)
        for factor in key.split("*"):
            name, _, power = factor.strip().partition("^")
            if name not in self.index:
                raise ValueError(f"unknown generator {name!r} in monomial {key!r}")
            try:
                exponent = int(power) if power else 1
            except ValueError as exc:
                raise ValueError(f"bad exponent in monomial {key!r}") from exc
            if exponent < 1:
                raise ValueError(f"bad exponent in monomial {key!r}")
            exps[self.index[name]] += exponent
        return tuple(exps)

    def integrate_monomial(self, exps: Monomial) -> Rational:
        return self.integrals.get(exps, QQ.zero)

    def _identity(self):
        return (self.name, self.dim, self.generators, tuple(sorted(self.integrals.items())))

    def __eq__(self, other):
        if not isinstance(other, TruncatedCohomology):
            return NotImplemented
        return self is other or self._identity() == other._identity()

    def __hash__(self):
        return hash((self.name, self.dim, self.generators))

    def __repr__(self):
        names = ", ".join(g.name for g in self.generators)
        return f"TruncatedCohomology({self.name}, dim={self.dim}, generators=[{names}])"


class ClassExpr:
    """Inhomogeneous class of one component with coefficients in a CoefficientRing"""

    __slots__ = ("algebra", "ring", "terms")

    def __init__(self, algebra: TruncatedCohomology, ring: CoefficientRing, terms: Optional[Mapping] = None):
        self.algebra = algebra
        self.ring = ring
        clean: Dict[Monomial, Any] = {}
        for exps, coeff in (terms or {}).items():
            exps = tuple(exps)
            if not algebra.survives(exps):
                continue
            coeff = ring.convert(coeff)
            if coeff:
                clean[exps] = coeff
        self.terms = clean

    @classmethod
    def _build(cls, algebra, ring, terms: Dict[Monomial, Any]) -> "ClassExpr":
        # terms already reduced and converted; zeros are dropped here
        obj = cls.__new__(cls)
        obj.algebra, obj.ring = algebra, ring
        obj.terms = {m: c for m, c in terms.items() if c}
        return obj

    @classmethod
    def scalar(cls, algebra: TruncatedCohomology, ring: CoefficientRing, value) -> "ClassExpr":
        return cls(algebra, ring, {algebra.unit_monomial: value})

    @classmethod
    def zero(cls, algebra, ring) -> "ClassExpr":
        return cls._build(algebra, ring, {})

    @classmethod
    def one(cls, algebra, ring) -> "ClassExpr":
        return cls.scalar(algebra, ring, ring.one)

    @classmethod
    def generator(cls, algebra: TruncatedCohomology, ring: CoefficientRing, name: str) -> "ClassExpr":
        exps = [0] * len(algebra.generators)
        exps[algebra.index[name]] = 1
        return cls(algebra, ring, {tuple(exps): ring.one})

    def _coerce(self, other) -> Optional["ClassExpr"]:
        if isinstance(other, ClassExpr):
            if other.algebra is not self.algebra and other.algebra != self.algebra:
                raise ComponentMismatchError(
                    f"cannot combine classes of {self.algebra.name!r} and {other.algebra.name!r}"
                )
            if other.ring is not self.ring:
                raise ComponentMismatchError(
                    f"cannot combine {self.ring.name} and {other.ring.name} coefficients"
                )
            return other
        try:
            return ClassExpr.scalar(self.algebra, self.ring, other)
        except (TypeError, ValueError, AttributeError, CoercionFailed):
            return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        terms = dict(self.terms)
        for exps, coeff in other.terms.items():
            terms[exps] = terms[exps] + coeff if exps in terms else coeff
        return ClassExpr._build(self.algebra, self.ring, terms)

    __radd__ = __add__

    def __neg__(self):
        return ClassExpr._build(self.algebra, self.ring, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        algebra = self.algebra
        terms: Dict[Monomial, Any] = {}
        for exps_a, coeff_a in self.terms.items():
            for exps_b, coeff_b in other.terms.items():
                exps = tuple(a + b for a, b in zip(exps_a, exps_b))
                if not algebra.survives(exps):
                    continue
                value = coeff_a * coeff_b
                terms[exps] = terms[exps] + value if exps in terms else value
        return ClassExpr._build(algebra, self.ring, terms)

    __rmul__ = __mul__

    def __pow__(self, exponent: int):
        if exponent < 0:
            raise ValueError("negative power of a class; use invert_unit")
        result = ClassExpr.one(self.algebra, self.ring)
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            exponent >>= 1
            if exponent:
                base = base * base
        return result

    def scale(self, value) -> "ClassExpr":
        value = self.ring.convert(value)
        return ClassExpr._build(self.algebra, self.ring, {m: c * value for m, c in self.terms.items()})

    def scalar_part(self):
        return self.terms.get(self.algebra.unit_monomial, self.ring.zero)

    def homogeneous_part(self, degree: int) -> "ClassExpr":
        return ClassExpr._build(
            self.algebra,
            self.ring,
            {m: c for m, c in self.terms.items() if self.algebra.monomial_degree(m) == degree},
        )

    def is_homogeneous(self, degree: int) -> bool:
        return all(self.algebra.monomial_degree(m) == degree for m in self.terms)

    def change_ring(self, ring: CoefficientRing) -> "ClassExpr":
        return ClassExpr(self.algebra, ring, self.terms)

    def map_coefficients(self, func: Callable[[Any], Any], ring: Optional[CoefficientRing] = None) -> "ClassExpr":
        ring = ring or self.ring
        return ClassExpr(self.algebra, ring, {m: func(c) for m, c in self.terms.items()})

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        try:
            other = self._coerce(other)
        except ComponentMismatchError:
            return False
        if other is None:
            return NotImplemented
        if self.terms.keys() != other.terms.keys():
            return False
        return all(self.terms[m] == other.terms[m] for m in self.terms)

    __hash__ = None

    def __str__(self):
        algebra = self.algebra
        ordered = sorted(
            self.terms.items(),
            key=lambda item: (algebra.monomial_degree(item[0]), tuple(-e for e in item[0])),
        )
        parts = []
        for exps, coeff in ordered:
            key = algebra.monomial_key(exps)
            parts.append(_coefficient_parts(self.ring, coeff, "" if key == "1" else key))
        return _join_signed(parts)

    def __repr__(self):
        return f"ClassExpr({self.algebra.name}: {self})"


def _coefficient_parts(ring: CoefficientRing, coeff, monomial: str) -> Tuple[bool, str]:
    if isinstance(coeff, GaussRational):
        if not coeff.y:
            return _rational_parts(coeff.x, monomial)
        if not coeff.x:
            im_part = coeff.y
            magnitude = -im_part if im_part < 0 else im_part
            unit = "i" if magnitude == 1 else f"{format_rational(magnitude)}*i"
            return im_part < 0, f"{unit}*{monomial}" if monomial else unit
        text = f"({ring.format(coeff)})"
        return False, f"{text}*{monomial}" if monomial else text
    if isinstance(coeff, YPoly):
        if coeff.degree == 0 and (not isinstance(coeff.coeffs[0], RatFun) or coeff.coeffs[0].is_constant()):
            return _rational_parts(to_rational(coeff.coeffs[0]), monomial)
        text = f"({coeff})"
        return False, f"{text}*{monomial}" if monomial else text
    return _rational_parts(coeff, monomial)


# ---------------------------------------------------------------------------
# Operations on classes
# ---------------------------------------------------------------------------

def integrate(value: ClassExpr):
    """Sum of top-degree coefficients against the component's integral table"""
    algebra, ring = value.algebra, value.ring
    total = ring.zero
    for exps, coeff in value.terms.items():
        if algebra.monomial_degree(exps) != algebra.dim:
            continue
        weight = algebra.integrate_monomial(exps)
        if weight:
            total = total + coeff * ring.convert(weight)
    return total


def invert_unit(value: ClassExpr) -> ClassExpr:
    """Inverse via the nilpotent geometric series around the scalar part"""
    scalar = value.scalar_part()
    if not scalar:
        raise NonUnitClassError(f"non-unit class: scalar part of {value} is zero")
    try:
        scalar_inv = value.ring.invert(scalar)
    except ZeroDivisionError as exc:
        raise NonUnitClassError(f"non-unit class: {exc}") from exc
    step = -((value - scalar).scale(scalar_inv))
    result = ClassExpr.one(value.algebra, value.ring)
    power = result
    for _ in range(value.algebra.dim):
        power = power * step
        if not power:
            break
        result = result + power
    return result.scale(scalar_inv)


def exp_nilpotent(value: ClassExpr) -> ClassExpr:
    """Truncated exponential of a class with zero scalar part"""
    if value.scalar_part():
        raise NilpotencyError(f"exp_nilpotent needs a nilpotent class, got scalar part in {value}")
    result = ClassExpr.one(value.algebra, value.ring)
    power = result
    for k in range(1, value.algebra.dim + 1):
        power = power * value
        if not power:
            break
        result = result + power.scale(QQ(1, factorial(k)))
    return result


def parse_class(source: str, model: Union["ComponentModel", TruncatedCohomology], ring: CoefficientRing = GAUSSIAN) -> ClassExpr:
    """Parse a class expression over a component's generators"""
    algebra = model.cohomology if isinstance(model, ComponentModel) else model

    def number(value):
        return ClassExpr.scalar(algebra, ring, value)

    def symbol(name):
        if name in algebra.index:
            return ClassExpr.generator(algebra, ring, name)
        if name in RESERVED_NAMES:
            if not ring.has_imaginary_unit:
                raise ExpressionParseError(f"'i' is not available over {ring.name} coefficients")
            return ClassExpr.scalar(algebra, ring, ring.imaginary_unit)
        raise ExpressionParseError(f"unknown identifier {name}")

    return evaluate(parse_expression(source), number, symbol)


# ---------------------------------------------------------------------------
# Fixed-point data model
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class NormalLine:
    weight: Rational
    euler: ClassExpr


@dataclass(frozen=True)
class ComponentModel:
    name: str
    cohomology: TruncatedCohomology
    tangent_chern: Tuple[ClassExpr, ...] = ()
    normal: Tuple[NormalLine, ...] = ()

    @property
    def dim(self) -> int:
        return self.cohomology.dim

    @property
    def weights(self) -> List[Rational]:
        return [line.weight for line in self.normal]

    def chern_class(self, k: int) -> ClassExpr:
        """c_k(Z) over the rationals; c_0 = 1 and c_k = 0 above dim"""
        if k == 0:
            return ClassExpr.one(self.cohomology, RATIONAL)
        if 1 <= k <= len(self.tangent_chern):
            return self.tangent_chern[k - 1]
        return ClassExpr.zero(self.cohomology, RATIONAL)

    @cached_property
    def euler_characteristic(self) -> Rational:
        return euler_char(self)

    def with_weights(self, weights: Sequence[Rational]) -> "ComponentModel":
        lines = tuple(NormalLine(to_rational(w), line.euler) for w, line in zip(weights, self.normal))
        return replace(self, normal=lines)


@dataclass(frozen=True)
class FixedPointData:
    """Ambient dimension n and the components of the zero set"""

    name: str
    dim: int
    components: Tuple[ComponentModel, ...]
    manifold: Optional[str] = field(default=None, compare=False)

    @property
    def sorted_components(self) -> List[ComponentModel]:
        return sorted(self.components, key=lambda component: component.name)

    def component(self, name: str) -> ComponentModel:
        for comp in self.components:
            if comp.name == name:
                return comp
        raise KeyError(name)

    def map_weights(self, func: Callable[[Rational], Rational], name: Optional[str] = None) -> "FixedPointData":
        components = tuple(comp.with_weights([func(w) for w in comp.weights]) for comp in self.components)
        return replace(self, name=name or self.name, components=components)

    def all_weights(self) -> Iterator[Rational]:
        for comp in self.components:
            yield from comp.weights


def euler_char(component: ComponentModel) -> Rational:
    """e(Z) as the integral of the top Chern class; a point has e = 1"""
    if component.dim == 0:
        return QQ.one
    return to_rational(integrate(component.chern_class(component.dim)))


def validate_data(data: FixedPointData) -> None:
    """Semantic checks; raises ValidationError naming the offending field"""
    if data.dim < 1:
        raise ValidationError("dim", f"ambient dimension must be >= 1, got {data.dim}")
    if not data.components:
        raise ValidationError("components", "at least one component is required")
    seen = set()
    for index, comp in enumerate(data.components):
        path = f"components[{index}]"
        if comp.name in seen:
            raise ValidationError(f"{path}.name", f"duplicate component name {comp.name!r}")
        seen.add(comp.name)
        r = comp.dim
        if not 0 <= r <= data.dim:
            raise ValidationError(f"{path}.dim", f"component dimension {r} outside 0..{data.dim}")
        if len(comp.tangent_chern) != r:
            raise ValidationError(
                f"{path}.tangent_chern", f"expected {r} Chern classes, got {len(comp.tangent_chern)}"
            )
        for k, chern in enumerate(comp.tangent_chern, start=1):
            if not chern.is_homogeneous(k):
                raise ValidationError(f"{path}.tangent_chern[{k - 1}]", f"c{k} must be homogeneous of degree {k}")
        if len(comp.normal) != data.dim - r:
            raise ValidationError(
                f"{path}.normal", f"expected {data.dim - r} normal lines, got {len(comp.normal)}"
            )
        for j, line in enumerate(comp.normal):
            if not line.weight:
                raise ValidationError(f"{path}.normal[{j}].lambda", "zero weight")
            if not line.euler.is_homogeneous(1):
                raise ValidationError(f"{path}.normal[{j}].beta", "euler class must be homogeneous of degree 1")
        missing = comp.cohomology.missing_integrals()
        if missing:
            keys = ", ".join(comp.cohomology.monomial_key(m) for m in missing)
            raise ValidationError(f"{path}.integrals", f"missing top monomials: {keys}")
    logger.debug("validated %s: n=%d, %d components", data.name, data.dim, len(data.components))
