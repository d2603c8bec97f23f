#!/usr/bin/env python3
"""
Residue localization engine

f_phi(A) = sum over components Z of
    integral_Z phi(alpha, i*lambda + beta) / prod_j (i*lambda_j + beta_j)

evaluated exactly in Q(i) for phi of any degree, plus the direct Chern-number
oracle for projective spaces and the vanishing and uniqueness scans built on it.
"""
import logging
from dataclasses import dataclass, field
from math import comb
from typing import Dict, List, Optional, Sequence, Tuple

from sympy.polys.domains import QQ
from sympy.polys.rings import ring

from .cohomology import ClassExpr, ComponentModel, FixedPointData, integrate, invert_unit
from .config import load_settings
from .errors import ComponentMismatchError, UnsupportedManifoldError, ValidationError
from .invariants import InvariantPoly, eval_phi, mixed_elementaries, monomials_of_degree, normal_classes
from .scalars import GAUSSIAN, GaussRational, Rational, format_gauss, gauss, gauss_to_json

logger = logging.getLogger(__name__)

BELOW_N = "below_n"
EQUAL_N = "equal_n"
ABOVE_N = "above_n"

PROJECTIVE_SPACE = "CPn"


def degree_class(degree: int, n: int) -> str:
    if degree < n:
        return BELOW_N
    if degree == n:
        return EQUAL_N
    return ABOVE_N


@dataclass
class ResidueReport:
    phi: InvariantPoly
    value: GaussRational
    per_component: List[Tuple[str, GaussRational]]
    degree_class: str

    @property
    def is_real(self) -> bool:
        return not self.value.y

    @property
    def imaginary_violation(self) -> bool:
        """A Chern number (deg phi = n) must come out real"""
        return self.degree_class == EQUAL_N and not self.is_real

    def to_dict(self) -> dict:
        return {
            "phi": str(self.phi),
            "degree_class": self.degree_class,
            "value": gauss_to_json(self.value),
            "per_component": [{"component": name, "value": gauss_to_json(v)} for name, v in self.per_component],
        }


class ResidueEngine:
    """Evaluates f_phi on one data set, caching per-component work"""

    def __init__(self, data: FixedPointData, degree_margin: Optional[int] = None):
        self.data = data
        self.degree_margin = load_settings().degree_margin if degree_margin is None else degree_margin
        self._mixed: Dict[str, List[ClassExpr]] = {}
        self._denominator_inverse: Dict[str, ClassExpr] = {}

    def _prepare(self, component: ComponentModel) -> Tuple[List[ClassExpr], ClassExpr]:
        if component.name not in self._mixed:
            self._mixed[component.name] = mixed_elementaries(component, self.data.dim)
            denominator = ClassExpr.one(component.cohomology, GAUSSIAN)
            for u in normal_classes(component):
                denominator = denominator * u
            self._denominator_inverse[component.name] = invert_unit(denominator)
            logger.debug("prepared component %s (r=%d)", component.name, component.dim)
        return self._mixed[component.name], self._denominator_inverse[component.name]

    def contribution(self, phi: InvariantPoly, component: ComponentModel) -> GaussRational:
        mixed, inverse = self._prepare(component)
        return integrate(eval_phi(phi, component, mixed) * inverse)

    def localize(self, phi: InvariantPoly) -> ResidueReport:
        n = self.data.dim
        if phi.n != n:
            raise ComponentMismatchError(f"phi is over c1..c{phi.n} but {self.data.name} has dimension {n}")
        if phi.total_degree > n + self.degree_margin:
            logger.warning(
                "deg(phi)=%d exceeds n + %d for %s; evaluation may be slow",
                phi.total_degree, self.degree_margin, self.data.name,
            )
        per_component = []
        total = gauss(0)
        for component in self.data.sorted_components:
            value = self.contribution(phi, component)
            per_component.append((component.name, value))
            total = total + value
        logger.debug("f_%s(%s) = %s", phi, self.data.name, format_gauss(total))
        return ResidueReport(phi, total, per_component, degree_class(phi.total_degree, n))


def localize(phi: InvariantPoly, data: FixedPointData) -> ResidueReport:
    return ResidueEngine(data).localize(phi)


def chern_number_direct(n: int, phi: InvariantPoly, manifold: str = PROJECTIVE_SPACE) -> Rational:
    """Chern number of CP^n from c(T) = (1 + x)^(n+1) in QQ[x]/(x^(n+1))"""
    if manifold not in (PROJECTIVE_SPACE, f"CP{n}"):
        raise UnsupportedManifoldError(f"no direct Chern-number oracle for manifold {manifold!r}")
    if phi.homogeneous_degree != n:
        raise ValueError(f"direct Chern numbers need phi homogeneous of degree {n}, got {phi}")
    hyperplane_ring, x = ring("x", QQ)
    chern = [hyperplane_ring(comb(n + 1, k)) * x ** k for k in range(n + 1)]
    total = hyperplane_ring.zero
    for exps, coeff in phi.poly.items():
        term = hyperplane_ring(coeff)
        for k, s in enumerate(exps, start=1):
            term = term * chern[k] ** s
        total = total + term
    return total.get((n,), QQ.zero)


# ---------------------------------------------------------------------------
# Scans
# ---------------------------------------------------------------------------

@dataclass
class VanishingCheck:
    phi: InvariantPoly
    value: GaussRational
    kind: str  # "degree<n" or "c1cn"

    @property
    def passed(self) -> bool:
        return not self.value


@dataclass
class VanishingReport:
    instance: str
    checks: List[VanishingCheck]

    @property
    def realizable(self) -> bool:
        """False means the data cannot come from a compatible vector field"""
        return all(check.passed for check in self.checks)

    @property
    def failures(self) -> List[VanishingCheck]:
        return [check for check in self.checks if not check.passed]


def c1cn(n: int) -> InvariantPoly:
    exps = [0] * n
    exps[0] += 1
    exps[n - 1] += 1
    return InvariantPoly.monomial(n, exps)


def vanishing_report(data: FixedPointData, engine: Optional[ResidueEngine] = None) -> VanishingReport:
    """f_phi for every monomial of degree < n (phi = 1 included) and for c1*cn"""
    engine = engine or ResidueEngine(data)
    n = data.dim
    checks = []
    for degree in range(n):
        for exps in monomials_of_degree(n, degree):
            phi = InvariantPoly.monomial(n, exps)
            checks.append(VanishingCheck(phi, engine.localize(phi).value, "degree<n"))
    phi = c1cn(n)
    checks.append(VanishingCheck(phi, engine.localize(phi).value, "c1cn"))
    report = VanishingReport(data.name, checks)
    if not report.realizable:
        logger.info("%s fails %d vanishing checks", data.name, len(report.failures))
    return report


@dataclass
class ScanEntry:
    monomial: InvariantPoly
    values: List[Tuple[str, GaussRational]] = field(default_factory=list)

    @property
    def witness(self) -> Optional[Tuple[str, GaussRational]]:
        for name, value in self.values:
            if value:
                return name, value
        return None

    @property
    def vanishes_on_all(self) -> bool:
        return self.witness is None


@dataclass
class ScanResult:
    n: int
    instances: List[str]
    entries: List[ScanEntry]

    @property
    def vanishing(self) -> List[ScanEntry]:
        return [entry for entry in self.entries if entry.vanishes_on_all]

    @property
    def insufficient(self) -> bool:
        """More than one monomial survives, so the instances cannot single out c1*cn"""
        return len(self.vanishing) > 1

    def as_mapping(self) -> Dict[str, object]:
        """Monomial -> "vanishes_on_all" or the first witness, JSON-ready"""
        mapping: Dict[str, object] = {}
        for entry in self.entries:
            witness = entry.witness
            if witness is None:
                mapping[str(entry.monomial)] = "vanishes_on_all"
            else:
                mapping[str(entry.monomial)] = {"instance": witness[0], "value": gauss_to_json(witness[1])}
        return mapping


def uniqueness_scan(n: int, instances: Sequence[FixedPointData]) -> ScanResult:
    """Classify every degree-(n+1) monomial as vanishing on all instances or witnessed"""
    for index, data in enumerate(instances):
        if data.dim != n:
            raise ValidationError(f"instances[{index}]", f"{data.name} has dimension {data.dim}, expected {n}")
    engines = [ResidueEngine(data) for data in instances]
    entries = []
    for exps in monomials_of_degree(n, n + 1):
        entry = ScanEntry(InvariantPoly.monomial(n, exps))
        for engine in engines:
            entry.values.append((engine.data.name, engine.localize(entry.monomial).value))
        entries.append(entry)
    logger.debug("scanned %d monomials over %d instances", len(entries), len(instances))
    return ScanResult(n, [data.name for data in instances], entries)


def futaki_invariant(data: FixedPointData, engine: Optional[ResidueEngine] = None) -> GaussRational:
    """f_{c1^(n+1)}, the degree n+1 obstruction"""
    engine = engine or ResidueEngine(data)
    exps = [0] * data.dim
    exps[0] = data.dim + 1
    return engine.localize(InvariantPoly.monomial(data.dim, exps)).value
