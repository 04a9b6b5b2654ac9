"""Exception types shared across the simulator."""


class SimError(Exception):
    """Base class for all simulator errors."""


class DegenerateChannel(SimError):
    """A channel vector with (numerically) zero norm was supplied."""


class DomainError(SimError):
    """An argument fell outside the mathematical domain of an operation."""


class RankDeficient(SimError):
    """Zero-forcing is infeasible because the stacked channels lose rank."""


class ShapeError(SimError):
    """Inconsistent lengths/shapes between channels, beams and parameters."""


class BudgetTooLarge(SimError):
    """Requested codebook would exceed the memory guard (B > 20)."""


class ConfigError(SimError):
    """Invalid experiment or CLI configuration."""
