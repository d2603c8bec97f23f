"""
Residue Localizer

Exact residue localization for circle actions with fixed-point data:
Chern numbers and their vanishing identities, the signed eigenvalue
multiset, and the equivariant chi_y-genus with its rigidity checks.
All arithmetic is exact over Q and Q(i).
"""

__version__ = "1.0.0"

from .catalog import blowup_plane, cpn_weighted, isolated_from_weights, load_data, save_data
from .chiy import assert_rigidity, equivariant_chi_y
from .cohomology import ComponentModel, FixedPointData, TruncatedCohomology
from .errors import LocalizationError
from .invariants import InvariantPoly, parse_phi
from .residue import ResidueEngine, localize
from .spectrum import build_spectrum, check_pairing

__all__ = [
    'ComponentModel', 'FixedPointData', 'TruncatedCohomology', 'InvariantPoly', 'ResidueEngine',
    'LocalizationError', 'localize', 'parse_phi', 'build_spectrum', 'check_pairing',
    'equivariant_chi_y', 'assert_rigidity', 'cpn_weighted', 'isolated_from_weights',
    'blowup_plane', 'load_data', 'save_data',
]
