"""Exception types shared across the package."""


class ConfigurationError(ValueError):
    """Raised when a run configuration is inconsistent or incomplete."""
