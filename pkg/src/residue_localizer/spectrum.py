#!/usr/bin/env python3
"""
Signed eigenvalue multiset S(A) and the checks built on it
"""
import logging
from collections import Counter
from dataclasses import dataclass
from typing import Dict, Iterable, List, Optional, Tuple

from sympy import ilcm
from sympy.polys.domains import QQ

from .cohomology import ComponentModel, FixedPointData
from .errors import ValidationError
from .scalars import GaussRational, Rational, format_rational, gauss, to_rational

logger = logging.getLogger(__name__)


class SignedMultiset:
    """Nonzero rational eigenvalues with positive multiplicities"""

    def __init__(self, counts: Optional[Dict[Rational, int]] = None):
        self._counts: Counter = Counter()
        for value, multiplicity in (counts or {}).items():
            self.add(value, multiplicity)

    def add(self, value: Rational, multiplicity: int = 1) -> None:
        value = to_rational(value)
        if not value:
            raise ValueError("S(A) never contains 0")
        if multiplicity < 0:
            raise ValueError(f"negative multiplicity {multiplicity}")
        if multiplicity:
            self._counts[value] += multiplicity

    def multiplicity(self, value: Rational) -> int:
        return self._counts.get(to_rational(value), 0)

    def keys(self) -> List[Rational]:
        return sorted(self._counts)

    def items(self) -> List[Tuple[Rational, int]]:
        return [(key, self._counts[key]) for key in self.keys()]

    def negated(self) -> "SignedMultiset":
        return SignedMultiset({-key: count for key, count in self._counts.items()})

    def __len__(self):
        return sum(self._counts.values())

    def __eq__(self, other):
        if not isinstance(other, SignedMultiset):
            return NotImplemented
        return self._counts == other._counts

    def to_dict(self) -> Dict[str, int]:
        return {format_rational(key): count for key, count in self.items()}

    def __repr__(self):
        body = ", ".join(f"{format_rational(k)}: {v}" for k, v in self.items())
        return f"SignedMultiset({{{body}}})"


def build_spectrum(data: FixedPointData) -> SignedMultiset:
    """e(Z) > 0 adds the weights e(Z) times, e(Z) < 0 adds their negatives |e(Z)| times"""
    spectrum = SignedMultiset()
    for comp in data.components:
        euler = comp.euler_characteristic
        if not euler:
            continue
        magnitude = abs(euler)
        if magnitude.denominator != 1:
            raise ValidationError(comp.name, f"Euler characteristic {format_rational(euler)} is not an integer")
        copies = int(magnitude.numerator)
        sign = 1 if euler > 0 else -1
        for weight in comp.weights:
            spectrum.add(sign * weight, copies)
    logger.debug("S(A) of %s has %d elements", data.name, len(spectrum))
    return spectrum


@dataclass
class PairingResult:
    ok: bool
    violation: Optional[Rational] = None

    def __bool__(self):
        return self.ok


def check_pairing(spectrum: SignedMultiset) -> PairingResult:
    """mult(lambda) == mult(-lambda) for every key; reports the smallest violation"""
    for key in spectrum.keys():
        if spectrum.multiplicity(key) != spectrum.multiplicity(-key):
            return PairingResult(False, key)
    return PairingResult(True)


def trace_sum(data: FixedPointData) -> Rational:
    """sum_Z e(Z) * sum_j lambda_j"""
    total = QQ.zero
    for comp in data.components:
        total += comp.euler_characteristic * sum(comp.weights, QQ.zero)
    return total


def corollary_sum(data: FixedPointData) -> GaussRational:
    """sum_Z e(Z) * sum_j i*lambda_j, purely imaginary"""
    return gauss(0, trace_sum(data))


def zero_euler_components(data: FixedPointData) -> List[ComponentModel]:
    return [comp for comp in data.sorted_components if not comp.euler_characteristic]


def common_denominator_scale(data: FixedPointData) -> Tuple[FixedPointData, int]:
    """Multiply every weight by the lcm of their denominators"""
    factor = 1
    for weight in data.all_weights():
        factor = ilcm(factor, int(to_rational(weight).denominator))
    factor = int(factor)
    if factor == 1:
        return data, 1
    scaled = data.map_weights(lambda w: w * factor, name=f"{data.name}*{factor}")
    logger.debug("scaled weights of %s by %d", data.name, factor)
    return scaled, factor


def example_multiplicities(blocks: Iterable[Tuple[Rational, int]]) -> Dict[Rational, int]:
    """Expected S(A) of a weighted projective space: lambda_j - lambda_i with mult (n_i+1)(n_j+1)"""
    blocks = list(blocks)
    expected: Counter = Counter()
    for i, (lam_i, size_i) in enumerate(blocks):
        for j, (lam_j, size_j) in enumerate(blocks):
            if i != j:
                expected[to_rational(lam_j) - to_rational(lam_i)] += size_i * size_j
    return dict(expected)
