from __future__ import annotations

import os
from dataclasses import dataclass


class WindowOverflow(ValueError):
    """Raised when a computation needs degrees beyond the configured window."""


@dataclass(frozen=True)
class Config:
    D: int = 8
    T: int | None = None
    catalog_max: int | None = None
    output: str = "json"
    seed: int = 20240

    def __post_init__(self):
        if self.D < 1:
            raise ValueError("D must be positive")
        if self.T is None:
            object.__setattr__(self, "T", self.D + 2)
        if self.catalog_max is None:
            object.__setattr__(self, "catalog_max", self.D)
        if self.T < self.D + 1:
            raise ValueError("T must be at least D+1")
        if self.catalog_max > self.D:
            raise ValueError("catalog_max cannot exceed D")

    def require(self, degree: int, what: str = "degree"):
        if degree > self.D:
            raise WindowOverflow("%s %d exceeds the degree window D=%d" % (what, degree, self.D))

    @classmethod
    def from_env(cls, **kw):
        env = os.environ.get("COBINV_DEGREE")
        if env and "D" not in kw:
            kw["D"] = int(env)
        return cls(**kw)

    def widened(self, D: int) -> "Config":
        """Same settings with a degree window of at least D."""
        if D <= self.D:
            return self
        return Config(D=D, output=self.output, seed=self.seed)
