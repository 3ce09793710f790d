"""Exception hierarchy shared by all landaufem modules."""


class LandauFemError(Exception):
    """Base class for all errors raised by this package."""


class ConfigurationError(LandauFemError):
    """Invalid configuration value (bad mesh size, degree, tolerance, ...)."""


class DimensionError(LandauFemError):
    """Array sizes do not conform to the operator or space they are used with."""


class AssemblyError(LandauFemError):
    """Matrix assembly produced an unusable operator (e.g. singular mass matrix)."""


class CapabilityError(LandauFemError):
    """Requested operation is unavailable for the configured discretization/model."""


class ModelDomainError(LandauFemError):
    """State lies outside the admissible domain of the thermodynamic model."""


class StateError(LandauFemError):
    """Object is missing internal state required for the requested operation."""


class SolverFailure(LandauFemError):
    """Nonlinear solve did not converge; carries the last residual norm."""

    def __init__(self, message, residual_norm=None, iterations=None):
        super().__init__(message)
        self.residual_norm = residual_norm
        self.iterations = iterations


class StepperFailure(SolverFailure):
    """Implicit time step did not converge; may carry partial run results."""

    def __init__(self, message, residual_norm=None, iterations=None, last_iterate=None):
        super().__init__(message, residual_norm=residual_norm, iterations=iterations)
        self.last_iterate = last_iterate
        self.reports = []
