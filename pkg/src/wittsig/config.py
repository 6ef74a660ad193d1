"""Run configuration shared by the CLI, the scripts and the tests."""

from __future__ import annotations

import os
from dataclasses import dataclass

# angles 2 pi a / N checked by the identity check: pi/6, pi/4, pi/3, pi/2, 2 pi/3
IDENTITY_ANGLES = ((1, 12), (1, 8), (1, 6), (1, 4), (1, 3))


@dataclass(frozen=True)
class NumericsConfig:
    """Bits used when rendering exact values as floats."""

    precision: int = 256

    @classmethod
    def from_env(cls) -> "NumericsConfig":
        raw = os.environ.get("WITTSIG_PRECISION")
        if not raw:
            return cls()
        try:
            bits = int(raw)
        except ValueError:
            raise ValueError(f"WITTSIG_PRECISION must be an integer, got {raw!r}") from None
        if bits < 64:
            raise ValueError("WITTSIG_PRECISION must be at least 64")
        return cls(bits)


@dataclass(frozen=True)
class IdentityCheckConfig:
    max_rank: int = 3
    max_degree: int = 8
    trials: int = 20
    seed: int = 0
    angles: tuple = IDENTITY_ANGLES

    def __post_init__(self):
        if self.max_rank < 1 or self.max_degree < 0 or self.trials < 0:
            raise ValueError("identity check needs max_rank >= 1, max_degree >= 0, trials >= 0")
