"""
Exception hierarchy for the residue localizer

Identity failures (a vanishing check that does not vanish, a non-constant
equivariant genus) are reported as values, never raised. The exceptions
below cover malformed input and operations outside their domain.
"""


class LocalizationError(Exception):
    """Base class for every error raised by this package"""


class ArithmeticDomainError(LocalizationError, ArithmeticError):
    """An exact operation was applied outside its domain"""


class DivisionByZeroError(ArithmeticDomainError, ZeroDivisionError):
    """Inversion or division by an exact zero"""


class InfiniteLimitError(ArithmeticDomainError):
    """A rational function has no finite limit at the requested end"""


class NonUnitClassError(ArithmeticDomainError):
    """A cohomology class with non-invertible scalar part was inverted"""


class ExpressionParseError(LocalizationError, ValueError):
    """Malformed class or invariant-polynomial expression"""


class ComponentMismatchError(LocalizationError, ValueError):
    """Classes from different components (or coefficient rings) were combined"""


class NilpotencyError(LocalizationError, ValueError):
    """A nilpotent-only operation received a class with nonzero scalar part"""


class NonSymmetricError(LocalizationError, ValueError):
    """Elementary decomposition was asked for a non-symmetric polynomial"""


class SchemaError(LocalizationError, ValueError):
    """Fixed-point data document does not match the schema"""

    def __init__(self, path, message):
        self.path = path
        self.message = message
        super().__init__(f"{path}: {message}" if path else message)


class ValidationError(SchemaError):
    """Well-formed data that violates a semantic constraint (zero weight, incomplete table)"""


class UnsupportedManifoldError(LocalizationError, ValueError):
    """The direct Chern-number oracle does not know the manifold tag"""


class NonIntegralWeightError(LocalizationError, ValueError):
    """The equivariant genus needs integer weights"""


class RigidityError(LocalizationError):
    """An operation that presupposes a constant equivariant genus got a non-constant one"""


class SampleCountError(LocalizationError, ValueError):
    """The sampled genus check needs at least two sample points"""
