"""Exception hierarchy shared by every module of the package."""


class SteeringError(Exception):
    """Base class for all errors raised by slocc_steering."""


class InvalidOperatorError(SteeringError, ValueError):
    """A 2x2 filter is singular and cannot be brought into SL(2,C)."""


class NumericalFailure(SteeringError, ArithmeticError):
    """A numerical routine did not reach its accuracy contract."""

    def __init__(self, message, residual=None):
        super().__init__(message)
        self.residual = residual


class NotADensityMatrix(SteeringError, ValueError):
    """Input fails hermiticity, trace or positivity checks."""


class UnphysicalLambdaError(SteeringError, ValueError):
    """A correlation matrix that maps to a non-positive operator."""


class UnphysicalStateError(SteeringError, ValueError):
    """The top eigenvector of G*Omega is spacelike."""


class DegenerateStateError(SteeringError, ValueError):
    """Omega vanishes, so no Lorentz canonical form exists."""


class FilterAnnihilatesState(SteeringError, ValueError):
    """The local filter maps the state to (numerically) zero."""


class SteeringSingularError(SteeringError, ValueError):
    """A measurement outcome occurs with vanishing probability."""


class PureConditioningError(SteeringError, ValueError):
    """The measured qubit is pure; the steering map degenerates."""


class DomainError(SteeringError, ValueError):
    """A family parameter lies outside its admissible range."""


class SymmetryViolationError(SteeringError, ValueError):
    """A three-qubit state is not permutation symmetric."""


class ClassMismatchError(SteeringError, ValueError):
    """Parameters collapse the state into a different SLOCC class."""


class SeparableStateError(SteeringError, ValueError):
    """Operation needs an entangled state but got a product state."""


class MixedDegeneracyError(SteeringError, ValueError):
    """Only one of two compared ellipsoids is degenerate."""
