"""Model constants and their validation."""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, fields, replace
from pathlib import Path
from typing import Any


@dataclass(frozen=True)
class SimConfig:
    n: int = 200
    k: int = 40
    T: int = 8
    gamma0: float = 3.0
    c0: float = 10.0
    s0: float = 200.0
    consumption: float = 2.0
    alpha: float = 1.0
    beta: float = 0.5
    max_term: int = 1000
    d0: float = 10.0
    seed: int = 0

    def __post_init__(self) -> None:
        for name in ("n", "k", "T", "max_term", "seed"):
            value = getattr(self, name)
            if isinstance(value, bool) or not isinstance(value, int):
                raise ValueError(f"{name}: expected an integer, got {value!r}")
        for name in ("gamma0", "c0", "s0", "consumption", "alpha", "beta", "d0"):
            value = getattr(self, name)
            if isinstance(value, bool) or not isinstance(value, (int, float)):
                raise ValueError(f"{name}: expected a number, got {value!r}")
            # keep the JSON/CSV encodings stable regardless of int-vs-float input
            object.__setattr__(self, name, float(value))
        if self.n < 2:
            raise ValueError(f"n: need at least 2 agents, got {self.n}")
        if not 1 <= self.k < self.n:
            raise ValueError(f"k: need 1 <= k < n, got k={self.k}, n={self.n}")
        if self.T < 1:
            raise ValueError(f"T: need at least one formation tick, got {self.T}")
        if self.max_term < 0:
            raise ValueError(f"max_term: must be >= 0, got {self.max_term}")
        for name in ("gamma0", "c0", "s0", "consumption"):
            if getattr(self, name) < 0:
                raise ValueError(f"{name}: must be >= 0, got {getattr(self, name)}")
        for name in ("alpha", "beta"):
            if not 0.0 <= getattr(self, name) <= 1.0:
                raise ValueError(f"{name}: must lie in [0, 1], got {getattr(self, name)}")
        if not 0.0 <= self.d0 < self.n:
            raise ValueError(f"d0: need 0 <= d0 < n, got {self.d0}")
        if not 0 <= self.seed < 2**64:
            raise ValueError(f"seed: must be a 64-bit unsigned integer, got {self.seed}")

    @property
    def g_max(self) -> int:
        """Largest achievable group: the initiator plus one recruit per tick."""
        return self.T + 1

    def to_dict(self) -> dict[str, Any]:
        return asdict(self)

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> SimConfig:
        known = {f.name for f in fields(cls)}
        unknown = sorted(set(data) - known)
        if unknown:
            raise ValueError(f"unknown config field(s): {', '.join(unknown)}")
        return cls(**data)

    @classmethod
    def load(cls, path: str | Path) -> SimConfig:
        path = Path(path)
        try:
            data = json.loads(path.read_text())
        except OSError as exc:
            raise ValueError(f"cannot read config {path}: {exc.strerror}") from exc
        except json.JSONDecodeError as exc:
            raise ValueError(f"config {path} is not valid JSON: {exc}") from exc
        if not isinstance(data, dict):
            raise ValueError(f"config {path}: expected a JSON object")
        return cls.from_dict(data)

    def with_overrides(self, **overrides: Any) -> SimConfig:
        return replace(self, **{k: v for k, v in overrides.items() if v is not None})
