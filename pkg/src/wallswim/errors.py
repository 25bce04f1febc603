"""Exception types raised across the package."""


class WallswimError(Exception):
    """Base class for all package errors."""


class ZeroSeparation(WallswimError):
    """Source and target of a singular kernel are (numerically) coincident."""


class ImagePointCoincidence(WallswimError):
    """Evaluation point coincides with the mirror image of the source."""


class QuadratureNotConverged(WallswimError):
    """Adaptive quadrature hit its node cap before reaching the tolerance."""


class ClusterInvalid(WallswimError):
    """Sphere cluster violates disjointness or wall-clearance constraints."""


class StateInvalid(WallswimError):
    """Swimmer state outside the admissible set."""


class SingularSolve(WallswimError):
    """A linear system in the mobility/propulsion pathway is ill-conditioned."""


class StepTooLarge(WallswimError):
    """Finite-difference stencil would leave the admissible set."""
