"""Linguistic-hierarchy levels and the position <-> 2-tuple transforms.

A level ``t`` holds ``n(t)`` uniformly spaced triangular labels with
``n(0) = 2``, ``n(1) = 3`` and ``n(t + 1) = 2 n(t) - 1``.  Labels are laid
out on an absolute universe ``[0, span]``; every symbolic translation is
kept in absolute units.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import InvalidArgument, OutOfUniverse

__all__ = [
    "Level",
    "TwoTuple",
    "Universe",
    "level_count",
    "grain",
    "position",
    "represent",
]


def level_count(t: int) -> int:
    """Number of labels ``n(t)`` in level ``t``."""
    if isinstance(t, bool) or not isinstance(t, int):
        raise InvalidArgument(f"level number must be an integer, got {t!r}")
    if t < 0:
        raise InvalidArgument(f"level number must be >= 0, got {t}")
    # n(t) - 1 == 2**t for every t >= 0
    return 2**t + 1


def grain(t: int, span: float = 1.0) -> float:
    """Distance between adjacent label kernels of level ``t`` on ``[0, span]``."""
    if not span > 0:
        raise InvalidArgument(f"span must be > 0, got {span!r}")
    return span / (level_count(t) - 1)


@dataclass(frozen=True)
class Level:
    """A hierarchy level ``l(t, n(t))``."""

    t: int

    def __post_init__(self):
        level_count(self.t)

    @property
    def n(self) -> int:
        return level_count(self.t)

    def grain(self, span: float = 1.0) -> float:
        return grain(self.t, span)

    def __str__(self):
        return f"l({self.t},{self.n})"


@dataclass(frozen=True)
class Universe:
    """Shifted numeric universe: external ``x`` maps to ``x - v_min`` in ``[0, span]``."""

    v_min: float
    span: float

    def __post_init__(self):
        if not (math.isfinite(self.span) and self.span > 0):
            raise InvalidArgument(f"universe span must be > 0, got {self.span!r}")

    @property
    def v_max(self) -> float:
        return self.v_min + self.span

    def to_internal(self, x: float) -> float:
        return x - self.v_min

    def to_external(self, p: float) -> float:
        return p + self.v_min

    def contains(self, p: float) -> bool:
        return 0.0 <= p <= self.span

    def check(self, p: float) -> float:
        if not self.contains(p):
            raise OutOfUniverse(f"{p!r} lies outside the universe [0, {self.span!r}]")
        return p


@dataclass(frozen=True)
class TwoTuple:
    """A label ``s_index`` of level ``level`` plus an absolute translation ``alpha``."""

    level: int
    index: int
    alpha: float = 0.0

    def __post_init__(self):
        n = level_count(self.level)
        if not 0 <= self.index <= n - 1:
            raise InvalidArgument(
                f"label index {self.index} outside [0, {n - 1}] for level {self.level}"
            )

    @property
    def labels(self) -> int:
        return level_count(self.level)

    def position(self, span: float = 1.0) -> float:
        return position(self, span)

    def normalized_alpha(self, span: float) -> float:
        """``alpha`` expressed as a fraction of the universe span."""
        return self.alpha / span

    def __str__(self):
        return f"(s_{self.index}^{self.labels}, {self.alpha:.6g})"


def position(two_tuple: TwoTuple, span: float = 1.0) -> float:
    """Numeric position of a 2-tuple: ``index * grain + alpha``."""
    return two_tuple.index * grain(two_tuple.level, span) + two_tuple.alpha


def represent(beta: float, t: int, span: float = 1.0) -> TwoTuple:
    """Nearest-label 2-tuple of level ``t`` for the position ``beta``.

    Exact halves go to the larger index, so ``alpha`` lies in
    ``[-grain/2, grain/2)``.
    """
    if not 0.0 <= beta <= span:
        raise OutOfUniverse(f"{beta!r} lies outside the universe [0, {span!r}]")
    g = grain(t, span)
    index = min(math.floor(beta / g + 0.5), level_count(t) - 1)
    return TwoTuple(t, index, beta - index * g)
