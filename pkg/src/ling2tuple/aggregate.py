"""Symbolic aggregation over an unbalanced partition.

Operators run on absolute term positions.  The numeric result is
represented as a 2-tuple at the finest level attached to the operands and
then mapped back to the original term set as ``(nearest term, residual)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Iterable, Sequence

from .errors import EmptyAggregation, InvalidArgument, OutOfUniverse
from .hierarchy import TwoTuple, represent
from .partition import UnbalancedPartition

__all__ = [
    "LinguisticValue",
    "AggregationResult",
    "finest_level",
    "lh_inverse",
    "apply_operator",
    "mean",
    "add",
    "weighted_mean",
]


@dataclass(frozen=True)
class LinguisticValue:
    term: str
    residual: float = 0.0

    def position(self, partition: UnbalancedPartition) -> float:
        return partition.term(self.term).kernel + self.residual

    def __str__(self):
        return f"({self.term}, {self.residual:.6g})"


@dataclass(frozen=True)
class AggregationResult:
    beta: float
    lh_tuple: TwoTuple
    value: LinguisticValue


def finest_level(partition: UnbalancedPartition, terms: Iterable[str]) -> int:
    """Deepest hierarchy level used by any side of the given terms."""
    levels = [lvl for name in terms for lvl in partition.term(name).levels()]
    if not levels:
        raise EmptyAggregation("no terms given")
    return max(levels)


def lh_inverse(partition: UnbalancedPartition, beta: float) -> LinguisticValue:
    """Express ``beta`` as the term with the nearest kernel plus an absolute residual."""
    partition.universe.check(beta)
    best = None
    for term in partition.terms:
        dist = abs(beta - term.kernel)
        # strict comparison keeps the lower kernel on ties
        if best is None or dist < best[0]:
            best = (dist, term)
    term = best[1]
    return LinguisticValue(term.name, beta - term.kernel)


def _as_value(op) -> LinguisticValue:
    if isinstance(op, LinguisticValue):
        return op
    if isinstance(op, str):
        return LinguisticValue(op)
    term, residual = op
    return LinguisticValue(term, float(residual))


def apply_operator(
    partition: UnbalancedPartition,
    combiner: Callable[[Sequence[float]], float],
    operands: Iterable[LinguisticValue | str | tuple[str, float]],
) -> AggregationResult:
    """Run ``combiner`` on operand positions and translate the result back."""
    values = [_as_value(op) for op in operands]
    if not values:
        raise EmptyAggregation("cannot aggregate an empty operand list")
    positions = []
    for val in values:
        p = val.position(partition)
        if not partition.universe.contains(p):
            raise OutOfUniverse(f"operand {val} lies outside the universe")
        positions.append(p)
    beta = float(combiner(positions))
    if not partition.universe.contains(beta):
        raise OutOfUniverse(
            f"result {beta!r} leaves the universe [0, {partition.span!r}]"
        )
    t = finest_level(partition, [v.term for v in values])
    return AggregationResult(
        beta=beta,
        lh_tuple=represent(beta, t, partition.span),
        value=lh_inverse(partition, beta),
    )


def _mean(positions):
    return math.fsum(positions) / len(positions)


def mean(partition, operands) -> AggregationResult:
    return apply_operator(partition, _mean, operands)


def add(partition, a, b) -> AggregationResult:
    """Linguistic addition; sums beyond the universe are rejected, never clamped."""
    return apply_operator(partition, math.fsum, [a, b])


def weighted_mean(weights: Sequence[float]) -> Callable[[Sequence[float]], float]:
    """Combiner computing the weighted average with the given (non-negative) weights."""
    weights = [float(w) for w in weights]
    if any(w < 0 or not math.isfinite(w) for w in weights) or math.fsum(weights) <= 0:
        raise InvalidArgument("weights must be non-negative with a positive sum")
    total = math.fsum(weights)

    def combine(positions):
        if len(positions) != len(weights):
            raise InvalidArgument(
                f"{len(weights)} weights given for {len(positions)} operands"
            )
        return math.fsum(w * p for w, p in zip(weights, positions)) / total

    return combine
