"""Unbalanced 2-tuple fuzzy linguistic model.

Partitions built from ``(term, position)`` pairs through linguistic
hierarchies, symbolic aggregation with back-translation to the original
terms, binary-tree flattening, and an FCL front end with the ``LING`` type.
"""

from .aggregate import (
    AggregationResult,
    LinguisticValue,
    add,
    apply_operator,
    finest_level,
    lh_inverse,
    mean,
    weighted_mean,
)
from .errors import FclError, LinguisticError
from .fcl import FclModel, parse, serialize, to_partition
from .hierarchy import Level, TwoTuple, Universe, grain, level_count, position, represent
from .partition import (
    DEFAULT_STRETCH_WEIGHTS,
    StretchTerm,
    TermPair,
    TermSemantics,
    UnbalancedPartition,
    build_partition,
    coverage_epsilon,
    fuzzify,
    membership,
    nearest_label,
    resolve_stretch,
    select_level,
)
from .tree import BinaryNode, NodeTuple, flatten, node_distance

__version__ = "0.1.0"


def __getattr__(name):
    # keeps scikit-learn off the import path of the CLI
    if name == "LinguisticFuzzifier":
        from .estimator import LinguisticFuzzifier

        return LinguisticFuzzifier
    raise AttributeError(f"module {__name__!r} has no attribute {name!r}")
