from __future__ import annotations

from dataclasses import dataclass, fields


@dataclass(frozen=True)
class Tolerances:
    """Numerical tolerances shared by the float code paths."""

    distinctness: float = 1e-9
    residual: float = 1e-6
    remark: float = 1e-9
    strictness_margin: float = 1e-12
    identity_rel: float = 1e-9
    pole_margin: float = 1e-6
    bisection: float = 1e-12
    max_iterations: int = 200

    def __post_init__(self) -> None:
        for f in fields(self):
            if getattr(self, f.name) <= 0:
                raise ValueError(f"tolerance {f.name} must be positive")


DEFAULT_TOLERANCES = Tolerances()
