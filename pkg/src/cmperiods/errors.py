"""Exception types raised across the package."""


class CMPeriodsError(Exception):
    """Base class for all errors raised by cmperiods."""


class PoleError(CMPeriodsError, ValueError):
    """A Gamma argument or a lower hypergeometric parameter is a nonpositive integer."""

    def __init__(self, message, argument=None):
        super().__init__(message)
        self.argument = argument


class DivergentSeries(CMPeriodsError, ValueError):
    """The requested series does not converge at the given argument."""


class NonConvergence(CMPeriodsError, RuntimeError):
    """The target tolerance was not reached within the iteration cap."""


class NormalizationError(CMPeriodsError, ValueError):
    """Exponent data does not satisfy alpha1 + alpha2 + beta1 + beta2 = 1."""


class DegenerateOrbit(CMPeriodsError, ValueError):
    """A Galois conjugate violates the integrality conditions."""


class ReducibleSystem(CMPeriodsError, ValueError):
    """The local system is reducible (some alpha_i + beta_j is an integer)."""


class ExhaustedSearch(CMPeriodsError, RuntimeError):
    """No nonvanishing C_m was found up to the search bound."""


class VanishingCm(CMPeriodsError, ValueError):
    """The coefficient C_m vanishes, so m cannot be used for the decomposition."""


class SingularIntegrand(CMPeriodsError, ValueError):
    """Endpoint weights make the integral divergent."""


class PathTooClose(CMPeriodsError, ValueError):
    """A loop path passes too close to a singular point."""


class StepFailure(CMPeriodsError, RuntimeError):
    """The ODE integrator failed on a path segment."""


class ConfigError(CMPeriodsError, ValueError):
    """Malformed run configuration."""
