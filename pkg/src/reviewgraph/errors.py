"""Exception types shared across the package."""


class ContractViolation(ValueError):
    """An operation was invoked with arguments that break its contract."""


class ConfigError(ValueError):
    """A run-level configuration value is out of its allowed range."""


class UnusableReviewError(ValueError):
    """A review contains no usable text (blank or token-free)."""


class UndefinedModularityError(ValueError):
    """Modularity is undefined: the graph carries no edge weight."""


class TransportError(RuntimeError):
    """A remote provider could not be reached (retried and gave up)."""


class ProtocolError(RuntimeError):
    """A remote provider replied with data violating the wire contract."""


class ProviderFailureError(RuntimeError):
    """More than half of the answer-provider calls failed; run aborted."""
