"""Exception types shared across the package."""


class IntegrationError(RuntimeError):
    """Raised when the coupling-flow integrator loses norm beyond tolerance."""


class DegeneracyError(RuntimeError):
    """Raised when a dense diagonalization hits a (near-)degenerate ground space."""


class ResourceLimitError(ValueError):
    """Raised when a dense-oracle request exceeds the configured size guard."""


class ConfigError(ValueError):
    """Raised for malformed experiment configuration files."""
