#!/usr/bin/env python3
"""
Exact scalar tower for the residue localizer

Layers, bottom up:
- Rational: sympy ``QQ`` elements (arbitrary precision, always reduced)
- GaussRational: sympy ``QQ_I`` elements, exact arithmetic in Q(i)
- UniPoly: sparse univariate polynomials in q from ``ring("q", QQ)``
- RatFun: gcd-reduced quotients of UniPoly with monic denominator
- YPoly: polynomials in y whose coefficients are rationals or RatFun

Everything here is immutable; operations return new values.
"""
import logging
import re
from dataclasses import dataclass
from itertools import zip_longest
from math import comb
from typing import Any, Callable, Iterable, List, Optional, Tuple

from sympy.polys.domains import QQ, QQ_I
from sympy.polys.rings import PolyElement, ring

from .errors import DivisionByZeroError, InfiniteLimitError, NonUnitClassError

logger = logging.getLogger(__name__)

QPOLY_RING, q = ring("q", QQ)

Rational = QQ.dtype
GaussRational = QQ_I.dtype

_RATIONAL_LITERAL = re.compile(r"^\s*([+-]?\d+)\s*(?:/\s*(\d+))?\s*$")


# ---------------------------------------------------------------------------
# Rationals
# ---------------------------------------------------------------------------

def parse_rational(text: str) -> Rational:
    """Parse ``"p/q"`` or ``"p"`` into a reduced rational"""
    match = _RATIONAL_LITERAL.match(str(text))
    if not match:
        raise ValueError(f"not a rational literal: {text!r}")
    numerator = int(match.group(1))
    denominator = int(match.group(2)) if match.group(2) else 1
    if denominator == 0:
        raise DivisionByZeroError("division by zero")
    return QQ(numerator, denominator)


def to_rational(value: Any) -> Rational:
    """Coerce ints, literals, QQ elements and real Gaussian rationals to QQ"""
    if QQ.of_type(value):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, int):
        return QQ(value)
    if isinstance(value, str):
        return parse_rational(value)
    if isinstance(value, GaussRational):
        if value.y:
            raise ValueError(f"{format_gauss(value)} is not real")
        return value.x
    if isinstance(value, RatFun):
        if not value.is_constant():
            raise ValueError(f"{value} is not constant")
        return value.constant_value()
    return QQ.convert(value)


def rational_inverse(value: Rational) -> Rational:
    if not value:
        raise DivisionByZeroError("division by zero")
    return QQ.one / value


def format_rational(value: Rational) -> str:
    """Canonical ``"p/q"`` (or ``"p"`` when q=1) string"""
    value = to_rational(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


# ---------------------------------------------------------------------------
# Gaussian rationals
# ---------------------------------------------------------------------------

def gauss(re_part: Any = 0, im_part: Any = 0) -> GaussRational:
    return QQ_I(to_rational(re_part), to_rational(im_part))


IMAGINARY_UNIT = gauss(0, 1)


def to_gauss(value: Any) -> GaussRational:
    if isinstance(value, GaussRational):
        return value
    return gauss(value, 0)


def gauss_inv(value: GaussRational) -> GaussRational:
    """Inverse in Q(i); zero raises ``DivisionByZeroError("division by zero")``"""
    value = to_gauss(value)
    if not value:
        raise DivisionByZeroError("division by zero")
    return gauss(1) / value


def _format_imaginary(im_part: Rational) -> str:
    if im_part == 1:
        return "i"
    return f"{format_rational(im_part)}*i"


def format_gauss(value: GaussRational) -> str:
    value = to_gauss(value)
    re_part, im_part = value.x, value.y
    if not im_part:
        return format_rational(re_part)
    if not re_part:
        if im_part < 0:
            return "-" + _format_imaginary(-im_part)
        return _format_imaginary(im_part)
    if im_part < 0:
        return f"{format_rational(re_part)} - {_format_imaginary(-im_part)}"
    return f"{format_rational(re_part)} + {_format_imaginary(im_part)}"


def gauss_to_json(value: GaussRational) -> dict:
    value = to_gauss(value)
    return {"re": format_rational(value.x), "im": format_rational(value.y)}


def gauss_from_json(payload: dict) -> GaussRational:
    return gauss(parse_rational(payload.get("re", "0")), parse_rational(payload.get("im", "0")))


# ---------------------------------------------------------------------------
# Univariate polynomials in q
# ---------------------------------------------------------------------------

def poly_degree(poly: PolyElement) -> int:
    """Degree in q; the zero polynomial has the sentinel degree -1"""
    if not poly:
        return -1
    return poly.degree()


def poly_valuation(poly: PolyElement) -> Optional[int]:
    """Lowest exponent of q present; None for the zero polynomial"""
    if not poly:
        return None
    return min(monom[0] for monom in poly.keys())


def poly_coeff(poly: PolyElement, exponent: int):
    return poly.get((exponent,), poly.ring.domain.zero)


def poly_evaluate(poly: PolyElement, value):
    total = poly.ring.domain.zero
    for monom, coeff in poly.items():
        total += coeff * value ** monom[0]
    return total


def _join_signed(parts: List[Tuple[bool, str]]) -> str:
    """Join (negative, body) pairs into ``a - b + c`` form"""
    if not parts:
        return "0"
    negative, body = parts[0]
    text = f"-{body}" if negative else body
    for negative, body in parts[1:]:
        text += f" - {body}" if negative else f" + {body}"
    return text


def _rational_parts(coeff, monomial: str) -> Tuple[bool, str]:
    coeff = to_rational(coeff)
    magnitude = -coeff if coeff < 0 else coeff
    if not monomial:
        return coeff < 0, format_rational(magnitude)
    if magnitude == 1:
        return coeff < 0, monomial
    return coeff < 0, f"{format_rational(magnitude)}*{monomial}"


def _power_name(var: str, exponent: int) -> str:
    if exponent == 0:
        return ""
    if exponent == 1:
        return var
    return f"{var}^{exponent}"


def format_poly(poly: PolyElement, var: str = "q") -> str:
    """Ascending-order text form, e.g. ``1 - q + 3/2*q^2``"""
    parts = [
        _rational_parts(coeff, _power_name(var, monom[0]))
        for monom, coeff in sorted(poly.items(), key=lambda item: item[0][0])
    ]
    return _join_signed(parts)


# ---------------------------------------------------------------------------
# Rational functions in q
# ---------------------------------------------------------------------------

class RatFun:
    """Reduced quotient num/den of q-polynomials; den is monic"""

    __slots__ = ("num", "den")

    def __init__(self, num, den=None, poly_ring=QPOLY_RING):
        if not isinstance(num, PolyElement):
            num = poly_ring(num)
        poly_ring = num.ring
        den = poly_ring.one if den is None else poly_ring(den)
        if not den:
            raise DivisionByZeroError("zero denominator")
        if not num:
            self.num, self.den = poly_ring.zero, poly_ring.one
            return
        _, num, den = num.cofactors(den)
        lead = den.LC
        self.num = num.quo_ground(lead)
        self.den = den.quo_ground(lead)

    @classmethod
    def _reduced(cls, num: PolyElement, den: PolyElement) -> "RatFun":
        obj = cls.__new__(cls)
        obj.num, obj.den = num, den
        return obj

    @classmethod
    def constant(cls, value) -> "RatFun":
        if isinstance(value, RatFun):
            return value
        return cls._reduced(QPOLY_RING(to_rational(value)), QPOLY_RING.one)

    @classmethod
    def q_power(cls, exponent: int) -> "RatFun":
        """q^k; negative exponents become a q-power denominator"""
        if exponent >= 0:
            return cls._reduced(q ** exponent, QPOLY_RING.one)
        return cls._reduced(QPOLY_RING.one, q ** (-exponent))

    def _coerce(self, other) -> Optional["RatFun"]:
        if isinstance(other, RatFun):
            return other
        if isinstance(other, PolyElement):
            return RatFun(other)
        if isinstance(other, int) or QQ.of_type(other):
            return RatFun._reduced(self.num.ring(other), self.num.ring.one)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if self.den == other.den:
            return RatFun(self.num + other.num, self.den)
        return RatFun(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return RatFun._reduced(-self.num, self.den)

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
        return RatFun(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def inverse(self) -> "RatFun":
        if not self.num:
            raise DivisionByZeroError("division by zero")
        return RatFun(self.den, self.num)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other * self.inverse()

    def __pow__(self, exponent: int):
        if exponent < 0:
            return self.inverse() ** (-exponent)
        return RatFun._reduced(self.num ** exponent, self.den ** exponent)

    def __bool__(self):
        return bool(self.num)

    def __eq__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self.num * other.den == other.num * self.den

    __hash__ = None

    def is_constant(self) -> bool:
        return poly_degree(self.den) == 0 and poly_degree(self.num) <= 0

    def constant_value(self) -> Rational:
        if not self.is_constant():
            raise ValueError(f"{self} is not constant in q")
        return poly_coeff(self.num, 0)

    def evaluate(self, value):
        denominator = poly_evaluate(self.den, value)
        if not denominator:
            raise DivisionByZeroError(f"denominator of {self} vanishes at q = {value}")
        return poly_evaluate(self.num, value) / denominator

    def limit_at_infinity(self) -> Rational:
        num_degree, den_degree = poly_degree(self.num), poly_degree(self.den)
        if num_degree > den_degree:
            raise InfiniteLimitError(
                f"no finite limit at q -> oo: numerator degree {num_degree} "
                f"exceeds denominator degree {den_degree}"
            )
        if num_degree < den_degree:
            return QQ.zero
        return self.num.LC / self.den.LC

    def limit_at_zero(self) -> Rational:
        if not self.num:
            return QQ.zero
        num_val, den_val = poly_valuation(self.num), poly_valuation(self.den)
        if num_val < den_val:
            raise InfiniteLimitError(
                f"no finite limit at q -> 0: numerator valuation {num_val} "
                f"below denominator valuation {den_val}"
            )
        if num_val > den_val:
            return QQ.zero
        return poly_coeff(self.num, num_val) / poly_coeff(self.den, den_val)

    def __str__(self):
        if self.den == 1:
            return format_poly(self.num)
        return f"({format_poly(self.num)})/({format_poly(self.den)})"

    def __repr__(self):
        return f"RatFun({self})"


def ratfun_normalize(num: PolyElement, den: PolyElement) -> RatFun:
    """gcd-reduce num/den and make the denominator monic"""
    return RatFun(num, den)


# ---------------------------------------------------------------------------
# Polynomials in y
# ---------------------------------------------------------------------------

def _is_scalar(value) -> bool:
    return isinstance(value, (int, RatFun)) and not isinstance(value, bool) or QQ.of_type(value)


class YPoly:
    """Polynomial in y; ``coeffs[p]`` is the coefficient of y^p"""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        coeffs = list(coeffs)
        while coeffs and not coeffs[-1]:
            coeffs.pop()
        self.coeffs = tuple(coeffs)

    @classmethod
    def _coerce(cls, other) -> Optional["YPoly"]:
        if isinstance(other, YPoly):
            return other
        if _is_scalar(other):
            return cls((other,))
        return None

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def coefficient(self, power: int):
        if 0 <= power < len(self.coeffs):
            return self.coeffs[power]
        return QQ.zero

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return YPoly(a + b for a, b in zip_longest(self.coeffs, other.coeffs, fillvalue=0))

    __radd__ = __add__

    def __neg__(self):
        return YPoly(-c for c in self.coeffs)

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
        if not self.coeffs or not other.coeffs:
            return YPoly()
        product: List[Any] = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if not a:
                continue
            for j, b in enumerate(other.coeffs):
                if b:
                    product[i + j] = product[i + j] + a * b
        return YPoly(product)

    __rmul__ = __mul__

    def __pow__(self, exponent: int):
        result = YPoly((1,))
        for _ in range(exponent):
            result = result * self
        return result

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if len(self.coeffs) != len(other.coeffs):
            return False
        return all(a == b for a, b in zip(self.coeffs, other.coeffs))

    __hash__ = None

    def map(self, func: Callable) -> "YPoly":
        return YPoly(func(c) for c in self.coeffs)

    def evaluate(self, value):
        total = 0
        for coeff in reversed(self.coeffs):
            total = total * value + coeff
        return total

    def inverse(self) -> "YPoly":
        if self.degree != 0:
            raise NonUnitClassError(f"y-polynomial {self} is not a unit")
        coeff = self.coeffs[0]
        if isinstance(coeff, RatFun):
            return YPoly((coeff.inverse(),))
        return YPoly((rational_inverse(to_rational(coeff)),))

    def taylor_at_minus_one(self) -> "YPoly":
        """Coefficients b_k with f(y) = sum_k b_k (y+1)^k"""
        shifted = []
        for k in range(len(self.coeffs)):
            total = 0
            for p in range(k, len(self.coeffs)):
                term = self.coeffs[p] * (comb(p, k) * (-1) ** (p - k))
                total = total + term
            shifted.append(total)
        return YPoly(shifted)

    def is_constant_in_q(self) -> bool:
        return all(not isinstance(c, RatFun) or c.is_constant() for c in self.coeffs)

    def constant_part(self) -> "YPoly":
        """The same polynomial with q-free coefficients as plain rationals"""
        return self.map(to_rational)

    def __str__(self):
        parts = []
        for power, coeff in enumerate(self.coeffs):
            if not coeff:
                continue
            monomial = _power_name("y", power)
            if isinstance(coeff, RatFun) and not coeff.is_constant():
                text = str(coeff) if coeff.den != 1 else f"({coeff})"
                parts.append((False, f"{text}*{monomial}" if monomial else text))
            else:
                parts.append(_rational_parts(coeff, monomial))
        return _join_signed(parts)

    def __repr__(self):
        return f"YPoly({self})"


def ratfun_limits(value: YPoly) -> Tuple[YPoly, YPoly]:
    """(limit at q -> 0, limit at q -> oo) of a YPoly with RatFun coefficients"""
    at_zero, at_infinity = [], []
    for power, coeff in enumerate(value.coeffs):
        if not isinstance(coeff, RatFun):
            at_zero.append(to_rational(coeff))
            at_infinity.append(to_rational(coeff))
            continue
        try:
            at_zero.append(coeff.limit_at_zero())
            at_infinity.append(coeff.limit_at_infinity())
        except InfiniteLimitError as exc:
            raise InfiniteLimitError(f"coefficient of y^{power}: {exc}") from exc
    return YPoly(at_zero), YPoly(at_infinity)


# ---------------------------------------------------------------------------
# Coefficient rings for cohomology classes
# ---------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class CoefficientRing:
    """Coefficient ring of ClassExpr: constructors, inversion and printing"""

    name: str
    zero: Any
    one: Any
    convert: Callable[[Any], Any]
    invert: Callable[[Any], Any]
    format: Callable[[Any], str]
    imaginary_unit: Any = None
    y: Any = None

    @property
    def has_imaginary_unit(self) -> bool:
        return self.imaginary_unit is not None

    def __repr__(self):
        return f"CoefficientRing({self.name})"


def _invert_ypoly(value: YPoly) -> YPoly:
    try:
        return value.inverse()
    except DivisionByZeroError as exc:
        raise NonUnitClassError(str(exc)) from exc


def y_polynomial_ring(name: str, lift: Callable[[Any], Any]) -> CoefficientRing:
    """Ring of y-polynomials whose coefficients are produced by ``lift``"""

    def convert(value):
        if isinstance(value, YPoly):
            return value
        return YPoly((lift(value),))

    return CoefficientRing(
        name=name,
        zero=YPoly(),
        one=YPoly((lift(1),)),
        convert=convert,
        invert=_invert_ypoly,
        format=str,
        y=YPoly((lift(0), lift(1))),
    )


RATIONAL = CoefficientRing(
    name="rational",
    zero=QQ.zero,
    one=QQ.one,
    convert=to_rational,
    invert=rational_inverse,
    format=format_rational,
)

GAUSSIAN = CoefficientRing(
    name="gaussian",
    zero=gauss(0),
    one=gauss(1),
    convert=to_gauss,
    invert=gauss_inv,
    format=format_gauss,
    imaginary_unit=IMAGINARY_UNIT,
)

# Coefficients of the exact equivariant genus: y-polynomials over Q(q)
RATFUN_Y = y_polynomial_ring("q-rational/y-polynomial", RatFun.constant)

# Coefficients of the sampled equivariant genus: q replaced by a rational
SAMPLED_Y = y_polynomial_ring("rational/y-polynomial", to_rational)
