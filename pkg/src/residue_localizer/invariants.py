#!/usr/bin/env python3
"""
Invariant polynomials in the Chern classes c1..cn

Polynomials live in sympy sparse rings ``QQ[c1, ..., cn]`` graded by
deg(c_k) = k. Evaluation at a component substitutes c_k with the k-th
elementary symmetric function of the mixed root multiset (tangent roots of Z
and the normal classes i*lambda_j + beta_j), using the splitting
e_k = sum_{a+b=k} c_a(Z) e_b(u).
"""
import logging
import re
from dataclasses import dataclass
from functools import lru_cache
from math import factorial
from typing import Dict, List, Optional, Sequence, Set, Tuple

from sympy.polys.domains import QQ
from sympy.polys.rings import PolyElement, PolyRing, ring
from sympy.utilities.iterables import partitions

from .cohomology import ClassExpr, ComponentModel
from .errors import ExpressionParseError, NonSymmetricError
from .expressions import evaluate, parse_expression
from .scalars import GAUSSIAN, RATFUN_Y, CoefficientRing, _join_signed, _rational_parts, gauss

logger = logging.getLogger(__name__)

_CHERN_SYMBOL = re.compile(r"^c(\d+)$")

# Coefficient domain of the genus series: polynomials in y over QQ
Y_RING, y = ring("y", QQ)
Y_DOMAIN = Y_RING.to_domain()


@lru_cache(maxsize=None)
def chern_ring(n: int) -> PolyRing:
    """Ring QQ[c1, ..., cn]"""
    if n < 1:
        raise ValueError(f"ambient dimension must be >= 1, got {n}")
    return ring(",".join(f"c{k}" for k in range(1, n + 1)), QQ)[0]


def monomial_degree(exps: Sequence[int]) -> int:
    return sum(k * s for k, s in enumerate(exps, start=1))


@dataclass(frozen=True)
class InvariantPoly:
    """phi in QQ[c1..cn]"""

    n: int
    poly: PolyElement

    @classmethod
    def monomial(cls, n: int, exps: Sequence[int]) -> "InvariantPoly":
        return cls(n, chern_ring(n).from_dict({tuple(exps): QQ.one}))

    @classmethod
    def constant(cls, n: int, value=1) -> "InvariantPoly":
        return cls(n, chern_ring(n)(value))

    def terms(self) -> List[Tuple[Tuple[int, ...], object]]:
        return sorted(
            self.poly.items(),
            key=lambda item: (-monomial_degree(item[0]), tuple(-s for s in item[0])),
        )

    @property
    def degrees(self) -> Set[int]:
        return {monomial_degree(exps) for exps in self.poly.keys()}

    @property
    def total_degree(self) -> int:
        return max(self.degrees, default=0)

    @property
    def is_homogeneous(self) -> bool:
        return len(self.degrees) <= 1

    @property
    def homogeneous_degree(self) -> Optional[int]:
        degrees = self.degrees
        if not degrees:
            return 0
        return next(iter(degrees)) if len(degrees) == 1 else None

    def homogeneous_part(self, degree: int) -> "InvariantPoly":
        parts = {m: c for m, c in self.poly.items() if monomial_degree(m) == degree}
        return InvariantPoly(self.n, self.poly.ring.from_dict(parts) if parts else self.poly.ring.zero)

    def __mul__(self, other: "InvariantPoly") -> "InvariantPoly":
        return InvariantPoly(self.n, self.poly * other.poly)

    def __add__(self, other: "InvariantPoly") -> "InvariantPoly":
        return InvariantPoly(self.n, self.poly + other.poly)

    def __str__(self):
        parts = []
        for exps, coeff in self.terms():
            factors = [f"c{k}" if s == 1 else f"c{k}^{s}" for k, s in enumerate(exps, start=1) if s]
            parts.append(_rational_parts(coeff, "*".join(factors)))
        return _join_signed(parts)


def parse_phi(source: str, n: int) -> InvariantPoly:
    """Parse an invariant polynomial over c1..cn"""
    chern = chern_ring(n)

    def symbol(name: str):
        match = _CHERN_SYMBOL.match(name)
        if not match:
            raise ExpressionParseError(f"unknown identifier {name}")
        k = int(match.group(1))
        if k < 1:
            raise ExpressionParseError(f"unknown identifier {name}")
        if k > n:
            raise ExpressionParseError(f"c{k} exceeds dimension {n}")
        return chern.gens[k - 1]

    phi = InvariantPoly(n, evaluate(parse_expression(source), chern, symbol))
    logger.debug("parsed phi=%s (degrees %s)", phi, sorted(phi.degrees))
    return phi


def monomials_of_degree(n: int, degree: int) -> List[Tuple[int, ...]]:
    """Exponent vectors (s1..sn) with sum k*s_k = degree, c1-heavy first"""
    found = []
    for parts in partitions(degree, k=n):
        # partitions() reuses its dict between yields
        found.append(tuple(parts.get(k, 0) for k in range(1, n + 1)))
    return sorted(found, reverse=True)


# ---------------------------------------------------------------------------
# Evaluation at a component
# ---------------------------------------------------------------------------

def normal_classes(component: ComponentModel, ring: CoefficientRing = GAUSSIAN) -> List[ClassExpr]:
    """u_j = i*lambda_j + beta_j"""
    algebra = component.cohomology
    return [
        ClassExpr.scalar(algebra, ring, gauss(0, line.weight)) + line.euler.change_ring(ring)
        for line in component.normal
    ]


def elementary_of_classes(classes: Sequence[ClassExpr], one: ClassExpr) -> List[ClassExpr]:
    """[e_0, ..., e_m] of explicit classes via prod (1 + u_j T)"""
    coeffs = [one]
    for u in classes:
        shifted = coeffs + [one * 0]
        for k in range(len(coeffs), 0, -1):
            shifted[k] = shifted[k] + u * coeffs[k - 1]
        coeffs = shifted
    return coeffs


def mixed_elementary(k: int, component: ComponentModel, n: int,
                     normal_e: Optional[List[ClassExpr]] = None) -> ClassExpr:
    """e_k of the mixed multiset (alpha's of Z, u_1..u_{n-r}); zero outside 0..n"""
    algebra = component.cohomology
    one = ClassExpr.one(algebra, GAUSSIAN)
    if k > n or k < 0:
        return one * 0
    if normal_e is None:
        normal_e = elementary_of_classes(normal_classes(component), one)
    total = one * 0
    for a in range(min(k, component.dim) + 1):
        b = k - a
        if b < len(normal_e):
            total = total + component.chern_class(a).change_ring(GAUSSIAN) * normal_e[b]
    return total


def mixed_elementaries(component: ComponentModel, n: int) -> List[ClassExpr]:
    """[e_0, ..., e_n], sharing the normal elementaries across k"""
    one = ClassExpr.one(component.cohomology, GAUSSIAN)
    normal_e = elementary_of_classes(normal_classes(component), one)
    return [mixed_elementary(k, component, n, normal_e) for k in range(n + 1)]


def eval_phi(phi: InvariantPoly, component: ComponentModel, mixed: Optional[List[ClassExpr]] = None) -> ClassExpr:
    """Substitute c_k -> mixed e_k and expand in the component ring"""
    if mixed is None:
        mixed = mixed_elementaries(component, phi.n)
    powers: Dict[Tuple[int, int], ClassExpr] = {}

    def power(k: int, s: int) -> ClassExpr:
        if (k, s) not in powers:
            powers[(k, s)] = mixed[k] ** s
        return powers[(k, s)]

    one = ClassExpr.one(component.cohomology, GAUSSIAN)
    total = one * 0
    for exps, coeff in phi.poly.items():
        term = one.scale(coeff)
        for k, s in enumerate(exps, start=1):
            if s:
                term = term * power(k, s)
            if not term:
                break
        total = total + term
    return total


# ---------------------------------------------------------------------------
# Symmetric functions in formal roots
# ---------------------------------------------------------------------------

@lru_cache(maxsize=None)
def root_ring(r: int, domain=QQ) -> PolyRing:
    """Ring of formal roots a1..ar, lex order a1 > a2 > ... > ar"""
    return ring(",".join(f"a{i}" for i in range(1, r + 1)), domain)[0]


@lru_cache(maxsize=None)
def elementary_ring(r: int, domain=QQ) -> PolyRing:
    return ring(",".join(f"e{k}" for k in range(1, r + 1)), domain)[0]


def root_elementaries(roots: PolyRing) -> List[PolyElement]:
    """[e_0, ..., e_r] as polynomials in the roots"""
    es = [roots.one] + [roots.zero] * roots.ngens
    for gen in roots.gens:
        for k in range(roots.ngens, 0, -1):
            es[k] = es[k] + gen * es[k - 1]
    return es


def elementary_decompose(poly: PolyElement) -> PolyElement:
    """Rewrite a symmetric polynomial in a1..ar as a polynomial in e1..er"""
    roots = poly.ring
    r = roots.ngens
    target = elementary_ring(r, roots.domain)
    es = root_elementaries(roots)
    result = target.zero
    remainder = poly
    while remainder:
        lead, coeff = remainder.LM, remainder.LC
        if any(lead[i] < lead[i + 1] for i in range(r - 1)):
            raise NonSymmetricError(f"polynomial is not symmetric: leading monomial {lead} is not a partition")
        steps = [lead[k] - (lead[k + 1] if k + 1 < r else 0) for k in range(r)]
        product_in_roots = roots.one
        product_in_e = target.one
        for k, d in enumerate(steps):
            if d:
                product_in_roots = product_in_roots * es[k + 1] ** d
                product_in_e = product_in_e * target.gens[k] ** d
        remainder = remainder - product_in_roots * coeff
        result = result + product_in_e * coeff
    return result


def expand_elementary(poly: PolyElement, roots: PolyRing) -> PolyElement:
    """Substitute e_k back as symmetric polynomials in the roots"""
    es = root_elementaries(roots)
    total = roots.zero
    for exps, coeff in poly.items():
        term = roots.one * coeff
        for k, d in enumerate(exps, start=1):
            if d:
                term = term * es[k] ** d
        total = total + term
    return total


def genus_series(order: int) -> List[PolyElement]:
    """Coefficients in QQ[y] of x(1 + y e^{-x})/(1 - e^{-x}) up to x^order

    Written as (1 + y e^{-x}) / D(x) with D(x) = (1 - e^{-x})/x and divided
    term by term.
    """
    numerator = [Y_RING(1) + y] + [y * QQ((-1) ** k, factorial(k)) for k in range(1, order + 1)]
    divisor = [Y_RING(QQ((-1) ** k, factorial(k + 1))) for k in range(order + 1)]
    series: List[PolyElement] = []
    for k in range(order + 1):
        value = numerator[k]
        for j in range(1, k + 1):
            value = value - divisor[j] * series[k - j]
        series.append(value)
    return series


def _truncate(poly: PolyElement, degree: int) -> PolyElement:
    kept = {m: c for m, c in poly.items() if sum(m) <= degree}
    return poly.ring.from_dict(kept) if kept else poly.ring.zero


@lru_cache(maxsize=None)
def tangent_genus_in_elementaries(r: int) -> PolyElement:
    """prod_i Q(a_i) truncated at degree r, rewritten in e1..er over QQ[y]"""
    roots = root_ring(r, Y_DOMAIN)
    series = genus_series(r)
    total = roots.one
    for gen in roots.gens:
        factor = roots.zero
        for k, coeff in enumerate(series):
            factor = factor + gen ** k * coeff
        total = _truncate(total * factor, r)
    decomposed = elementary_decompose(total)
    logger.debug("tangent genus factor in elementaries for r=%d: %d terms", r, len(decomposed))
    return decomposed


def lift_y_polynomial(value: PolyElement, coeff_ring: CoefficientRing):
    """QQ[y] element -> YPoly in the given y-polynomial coefficient ring"""
    total = coeff_ring.zero
    for (power,), coeff in value.items():
        total = total + coeff_ring.convert(coeff) * coeff_ring.y ** power
    return total


def chi_y_tangent_factor(component: ComponentModel, coeff_ring: CoefficientRing = RATFUN_Y) -> ClassExpr:
    """prod over tangent roots of Q(alpha_i), expressed through c_k(Z)"""
    algebra = component.cohomology
    r = component.dim
    if r == 0:
        return ClassExpr.one(algebra, coeff_ring)
    chern = [component.chern_class(k).change_ring(coeff_ring) for k in range(r + 1)]
    one = chern[0]
    total = one * 0
    for exps, coeff in tangent_genus_in_elementaries(r).items():
        term = one.scale(lift_y_polynomial(coeff, coeff_ring))
        for k, d in enumerate(exps, start=1):
            if d:
                term = term * chern[k] ** d
        total = total + term
    return total
