"""Unbalanced partitions built from (term, position) pairs.

Each gap between consecutive terms picks the coarsest hierarchy level whose
grain still fits inside the gap.  The downside of the left term and the
upside of the right term are two consecutive labels of that level, shifted by
symbolic translations so that both peaks land exactly on the input
positions.  Because ``grain <= gap < 2 * grain`` holds for every gap, the
resulting triangles cover the whole universe with a strictly positive
minimum membership.
"""

from __future__ import annotations

import enum
import json
import math
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

import numpy as np

from .errors import (
    DegenerateGap,
    DuplicateTerm,
    InvalidArgument,
    MisplacedNA,
    OutOfUniverse,
    TooFewTerms,
    UnknownStretch,
    UnknownTerm,
    UnorderedInput,
)
from .hierarchy import TwoTuple, Universe, grain, level_count

__all__ = [
    "TermPair",
    "TermSemantics",
    "UnbalancedPartition",
    "StretchTerm",
    "DEFAULT_STRETCH_WEIGHTS",
    "select_level",
    "nearest_label",
    "build_partition",
    "membership",
    "coverage_epsilon",
    "fuzzify",
    "resolve_stretch",
]


@dataclass(frozen=True)
class TermPair:
    name: str
    v: float


@dataclass(frozen=True)
class TermSemantics:
    """A term's kernel plus its left (upside) and right (downside) half labels."""

    name: str
    kernel: float
    upside: TwoTuple | None = None
    downside: TwoTuple | None = None

    def side_grain(self, side: str, span: float) -> float | None:
        tt = self.upside if side == "upside" else self.downside
        return None if tt is None else grain(tt.level, span)

    def levels(self) -> tuple[int, ...]:
        return tuple(tt.level for tt in (self.upside, self.downside) if tt is not None)


@dataclass(frozen=True)
class UnbalancedPartition:
    universe: Universe
    terms: tuple[TermSemantics, ...]
    gap_levels: tuple[int, ...]
    epsilon: float
    _index: dict = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "_index", {t.name: i for i, t in enumerate(self.terms)})

    @property
    def span(self) -> float:
        return self.universe.span

    @property
    def names(self) -> list[str]:
        return [t.name for t in self.terms]

    @property
    def kernels(self) -> np.ndarray:
        return np.array([t.kernel for t in self.terms])

    @property
    def gaps(self) -> list[float]:
        return [b.kernel - a.kernel for a, b in zip(self.terms, self.terms[1:])]

    def index_of(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise UnknownTerm(f"unknown term {name!r}") from None

    def term(self, name: str) -> TermSemantics:
        return self.terms[self.index_of(name)]

    def membership(self, name: str, u: float) -> float:
        return membership(self, name, u)

    def fuzzify(self, u: float) -> list[tuple[str, float]]:
        return fuzzify(self, u)

    def membership_matrix(self, u) -> np.ndarray:
        """Degrees for every sample in ``u`` (rows) and every term (columns)."""
        u = np.asarray(u, dtype=float).reshape(-1)
        if u.size and (u.min() < 0.0 or u.max() > self.span):
            raise OutOfUniverse(f"samples must lie in [0, {self.span!r}]")
        out = np.zeros((u.size, len(self.terms)))
        for j, term in enumerate(self.terms):
            k = term.kernel
            col = np.where(u == k, 1.0, 0.0)
            if term.upside is not None:
                g = grain(term.upside.level, self.span)
                left = u <= k
                col[left] = np.maximum(0.0, 1.0 - (k - u[left]) / g)
            if term.downside is not None:
                g = grain(term.downside.level, self.span)
                right = u > k
                col[right] = np.maximum(0.0, 1.0 - (u[right] - k) / g)
            out[:, j] = col
        return out

    def to_dict(self) -> dict:
        def side(tt):
            return {
                "level": tt.level,
                "index": tt.index,
                "alpha_abs": tt.alpha,
                "alpha_norm": tt.alpha / self.span,
            }

        terms = []
        for t in self.terms:
            entry = {"name": t.name, "kernel": t.kernel}
            if t.upside is not None:
                entry["upside"] = side(t.upside)
            if t.downside is not None:
                entry["downside"] = side(t.downside)
            terms.append(entry)
        return {
            "universe": {"v_min": self.universe.v_min, "span": self.universe.span},
            "epsilon": self.epsilon,
            "terms": terms,
            "gap_levels": list(self.gap_levels),
        }

    def to_json(self, **kwargs) -> str:
        return json.dumps(self.to_dict(), **kwargs)


def select_level(d: float, span: float) -> int:
    """Coarsest level ``t`` with ``grain(t, span) <= d``."""
    if not d > 0:
        raise DegenerateGap(f"gap must be > 0, got {d!r}")
    if not span > 0:
        raise InvalidArgument(f"span must be > 0, got {span!r}")
    if d > span:
        raise InvalidArgument(f"gap {d!r} exceeds the span {span!r}")
    t = 0
    while grain(t, span) > d:
        t += 1
    return t


def nearest_label(v: float, t: int, span: float) -> tuple[int, float]:
    """Index of the level-``t`` label nearest to ``v`` (lower index on ties) and the offset."""
    if not 0.0 <= v <= span:
        raise OutOfUniverse(f"{v!r} lies outside the universe [0, {span!r}]")
    g = grain(t, span)
    last = level_count(t) - 1
    lo = min(max(math.floor(v / g), 0), last)
    index = lo
    if lo + 1 <= last and abs((lo + 1) * g - v) < abs(lo * g - v):
        index = lo + 1
    return index, v - index * g


def _coerce_pairs(pairs) -> list[TermPair]:
    out = []
    for p in pairs:
        if isinstance(p, TermPair):
            out.append(p)
        else:
            name, v = p
            out.append(TermPair(str(name), float(v)))
    return out


def build_partition(pairs: Iterable[TermPair | tuple[str, float]]) -> UnbalancedPartition:
    """Build the covering partition for ordered ``(name, position)`` pairs."""
    pairs = _coerce_pairs(pairs)
    if len(pairs) < 2:
        raise TooFewTerms(f"need at least 2 terms, got {len(pairs)}")
    seen = set()
    for p in pairs:
        if p.name in seen:
            raise DuplicateTerm(f"duplicate term {p.name!r}")
        seen.add(p.name)
        if not math.isfinite(p.v):
            raise InvalidArgument(f"position of {p.name!r} is not finite")

    v_min = pairs[0].v
    kernels = [p.v - v_min for p in pairs]
    for (a, ka), (b, kb) in zip(zip(pairs, kernels), zip(pairs[1:], kernels[1:])):
        if kb == ka:
            raise DegenerateGap(f"terms {a.name!r} and {b.name!r} share position {a.v!r}")
        if kb < ka:
            raise UnorderedInput(
                f"positions must increase: {b.name!r} ({b.v!r}) follows {a.name!r} ({a.v!r})"
            )

    span = kernels[-1]
    universe = Universe(v_min, span)
    ups: list[TwoTuple | None] = [None] * len(pairs)
    downs: list[TwoTuple | None] = [None] * len(pairs)
    levels = []
    eps = math.inf
    for k in range(len(pairs) - 1):
        d = kernels[k + 1] - kernels[k]
        t = select_level(d, span)
        g = grain(t, span)
        j, alpha = nearest_label(kernels[k], t, span)
        downs[k] = TwoTuple(t, j, alpha)
        # upside offset is measured from label j+1 so its peak sits on kernels[k+1]
        ups[k + 1] = TwoTuple(t, j + 1, kernels[k + 1] - (j + 1) * g)
        levels.append(t)
        eps = min(eps, 1.0 - d / (2.0 * g))

    terms = tuple(
        TermSemantics(p.name, k, up, down)
        for p, k, up, down in zip(pairs, kernels, ups, downs)
    )
    return UnbalancedPartition(universe, terms, tuple(levels), eps)


def membership(partition: UnbalancedPartition, name: str, u: float) -> float:
    """Triangular degree of ``u`` in term ``name``."""
    term = partition.term(name)
    partition.universe.check(u)
    k = term.kernel
    if u == k:
        return 1.0
    side = term.upside if u < k else term.downside
    if side is None:
        return 0.0
    g = grain(side.level, partition.span)
    return max(0.0, 1.0 - abs(u - k) / g)


def coverage_epsilon(partition: UnbalancedPartition) -> float:
    """Minimum over the universe of the largest membership degree.

    Inside gap ``k`` only the two neighbouring terms are non-zero and both
    flanks share the gap's grain, so the minimum sits at the gap midpoint.
    """
    return min(
        1.0 - d / (2.0 * grain(t, partition.span))
        for d, t in zip(partition.gaps, partition.gap_levels)
    )


def fuzzify(partition: UnbalancedPartition, u: float) -> list[tuple[str, float]]:
    partition.universe.check(u)
    degrees = [(t.name, membership(partition, t.name, u)) for t in partition.terms]
    hits = [(n, d) for n, d in degrees if d > 0.0]
    hits.sort(key=lambda nd: -nd[1])
    return hits


class StretchTerm(enum.Enum):
    """Linguistic surrogate for the distance from a term to its successor."""

    VeryStuck = "VeryStuck"
    Stuck = "Stuck"
    ModeratelyStuck = "ModeratelyStuck"
    Far = "Far"
    VeryFar = "VeryFar"
    NotApplicable = "NotApplicable"

    @classmethod
    def parse(cls, text) -> StretchTerm:
        if isinstance(text, cls):
            return text
        key = str(text).strip().replace("_", "").replace(" ", "").lower()
        if key in ("n/a", "na", "notapplicable"):
            return cls.NotApplicable
        for member in cls:
            if member.value.lower() == key:
                return member
        raise UnknownStretch(f"unknown stretch term {text!r}")


# one stretch step per hierarchy grain doubling
DEFAULT_STRETCH_WEIGHTS: dict[StretchTerm, float] = {
    StretchTerm.VeryStuck: 1.0,
    StretchTerm.Stuck: 2.0,
    StretchTerm.ModeratelyStuck: 4.0,
    StretchTerm.Far: 8.0,
    StretchTerm.VeryFar: 16.0,
}


def _weight_table(weights: Mapping | None) -> dict[StretchTerm, float]:
    if weights is None:
        return dict(DEFAULT_STRETCH_WEIGHTS)
    table = {}
    for key, w in weights.items():
        st = StretchTerm.parse(key)
        w = float(w)
        if st is StretchTerm.NotApplicable:
            raise InvalidArgument("NotApplicable cannot carry a weight")
        if not (math.isfinite(w) and w > 0):
            raise InvalidArgument(f"weight for {st.value} must be > 0, got {w!r}")
        table[st] = w
    return table


def resolve_stretch(
    entries: Sequence[tuple[str, StretchTerm | str]],
    weights: Mapping | None = None,
) -> list[TermPair]:
    """Turn ``(term, stretch)`` entries into positions on ``[0, 1]``.

    Gap ``k`` gets a width proportional to ``weights[stretch_k]``; the last
    entry must be ``NotApplicable`` and no other may be.
    """
    if len(entries) < 2:
        raise TooFewTerms(f"need at least 2 terms, got {len(entries)}")
    table = _weight_table(weights)
    stretches = [StretchTerm.parse(s) for _, s in entries]
    for i, st in enumerate(stretches):
        last = i == len(stretches) - 1
        if st is StretchTerm.NotApplicable and not last:
            raise MisplacedNA(f"NotApplicable used for non-final term {entries[i][0]!r}")
        if last and st is not StretchTerm.NotApplicable:
            raise MisplacedNA(f"final term {entries[i][0]!r} must be NotApplicable")
    widths = []
    for st in stretches[:-1]:
        if st not in table:
            raise UnknownStretch(f"no weight for stretch term {st.value}")
        widths.append(table[st])
    total = math.fsum(widths)
    positions = [0.0]
    acc = []
    for w in widths:
        acc.append(w)
        positions.append(math.fsum(acc) / total)
    positions[-1] = 1.0
    return [TermPair(str(name), v) for (name, _), v in zip(entries, positions)]
