"""Agent state: behavior and preference vectors, strategy classes, offer history."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field


class Strategy(str, enum.Enum):
    SIMILAR = "similar"
    COMPLEMENT = "complement"


@dataclass(frozen=True)
class BehaviorVector:
    """Reliability ``r`` and efficiency ``e``, both in [0, 1]."""

    r: float
    e: float

    def __post_init__(self) -> None:
        if not (0.0 <= self.r <= 1.0 and 0.0 <= self.e <= 1.0):
            raise ValueError(f"behavior components must lie in [0, 1], got ({self.r}, {self.e})")


@dataclass(frozen=True)
class PreferenceVector:
    """Weights on reliability and efficiency; they sum to one."""

    r: float
    e: float

    def __post_init__(self) -> None:
        if not (0.0 <= self.r <= 1.0 and 0.0 <= self.e <= 1.0):
            raise ValueError(f"preference components must lie in [0, 1], got ({self.r}, {self.e})")
        if abs(self.r + self.e - 1.0) > 1e-12:
            raise ValueError(f"preference components must sum to 1, got {self.r + self.e!r}")


def behavior_value(p: PreferenceVector, b: BehaviorVector) -> float:
    return p.r * b.r + p.e * b.e


def build_preference_vector(b: BehaviorVector, strategy: Strategy, alpha: float) -> PreferenceVector:
    """Preference weights for an agent of the given strategy.

    Complement-preferring agents put the larger base weight on their own
    weaker component, similar-preferring agents on their stronger one. The
    gap is then widened by ``(1 - max(b.r, b.e)) * alpha``, clamped so the
    weights stay in [0, 1].
    """
    if not 0.0 <= alpha <= 1.0:
        raise ValueError(f"alpha must lie in [0, 1], got {alpha}")
    total = b.r + b.e
    if total <= 0.0:
        raise ValueError("behavior vector [0, 0] has no defined preference")
    if strategy is Strategy.COMPLEMENT:
        base_r, base_e = b.e / total, b.r / total
    else:
        base_r, base_e = b.r / total, b.e / total
    delta = (1.0 - max(b.r, b.e)) * alpha
    # on a tie the offset goes toward e
    if base_r > base_e:
        e = max(base_e - delta, 0.0)
        return PreferenceVector(1.0 - e, e)
    r = max(base_r - delta, 0.0)
    return PreferenceVector(r, 1.0 - r)


@dataclass
class OfferStatistics:
    """Running mean and squared-deviation sum (Welford) of adjusted offer values."""

    count: int = 0
    mean: float = 0.0
    m2: float = 0.0

    @property
    def sigma(self) -> float:
        if self.count <= 1:
            return 0.0
        return math.sqrt(self.m2 / self.count)

    def updated(self, value: float) -> OfferStatistics:
        count = self.count + 1
        delta = value - self.mean
        mean = self.mean + delta / count
        return OfferStatistics(count, mean, self.m2 + delta * (value - mean))


@dataclass
class Agent:
    id: int
    capacity: float
    behavior: BehaviorVector
    preference: PreferenceVector
    strategy: Strategy
    savings: float
    alive: bool = True
    offer_stats: OfferStatistics = field(default_factory=OfferStatistics)


ACCEPT_SIGMAS = 1.5


def clears_bar(value: float, mean: float, sigma: float) -> bool:
    """Acceptance test shared by offers and friendships: ``value > mean - 1.5 sigma``."""
    return value > mean - ACCEPT_SIGMAS * sigma
