import os
from dataclasses import dataclass, field

DEFAULT_BUDGET = 1 << 20
BUDGET_ENV = "FROBRIG_BUDGET"


def default_budget() -> int:
    """Enumeration budget, overridable through ``FROBRIG_BUDGET``."""
    raw = os.environ.get(BUDGET_ENV)
    if raw is None:
        return DEFAULT_BUDGET
    value = int(raw)
    if value <= 0:
        raise ValueError(f"{BUDGET_ENV} must be positive, got {raw!r}")
    return value


@dataclass
class Config:
    enum_budget: int = field(default_factory=default_budget)
    precision: int = 64
    n_cap: int = 50
    d_max: int = 6
    json: bool = False
    seed: int = 0

    def __post_init__(self):
        for name in ("enum_budget", "precision", "n_cap", "d_max"):
            if getattr(self, name) <= 0:
                raise ValueError(f"{name} must be positive")
