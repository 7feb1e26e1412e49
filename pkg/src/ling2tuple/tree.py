"""Flattening strict binary trees into hierarchy 2-tuples.

The root sits on ``(s_1^3, 0)``.  A node at label ``i`` of a level with
``n`` labels sends its left child to label ``2i - 1`` and its right child
to label ``2i + 1`` of the next level (``2n - 1`` labels), so depth maps to
granularity and in-order rank maps to position.
"""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass
from typing import Any

from .errors import DuplicateNode, InvalidArgument, NotStrictBinary
from .hierarchy import TwoTuple, grain

__all__ = ["BinaryNode", "NodeTuple", "flatten", "node_distance", "tree_from_dict", "load_tree"]


@dataclass(frozen=True)
class BinaryNode:
    name: str
    left: BinaryNode | None = None
    right: BinaryNode | None = None

    @property
    def is_leaf(self) -> bool:
        return self.left is None and self.right is None


@dataclass(frozen=True)
class NodeTuple:
    name: str
    two_tuple: TwoTuple

    @property
    def level(self) -> int:
        return self.two_tuple.level

    @property
    def index(self) -> int:
        return self.two_tuple.index

    @property
    def position(self) -> float:
        """Position on the normalized ``[0, 1]`` axis."""
        return self.two_tuple.position(1.0)


def tree_from_dict(data: Any) -> BinaryNode:
    """Build a tree from nested ``{"name", "left", "right"}`` mappings."""
    if not isinstance(data, dict) or "name" not in data:
        raise InvalidArgument("tree node must be an object with a 'name'")
    unknown = set(data) - {"name", "left", "right"}
    if unknown:
        raise InvalidArgument(f"unexpected node fields: {sorted(unknown)}")
    left = data.get("left")
    right = data.get("right")
    return BinaryNode(
        str(data["name"]),
        None if left is None else tree_from_dict(left),
        None if right is None else tree_from_dict(right),
    )


def load_tree(text: str) -> BinaryNode:
    return tree_from_dict(json.loads(text))


def flatten(root: BinaryNode) -> list[NodeTuple]:
    out = []
    seen = set()
    queue = deque([(root, TwoTuple(1, 1, 0.0))])
    while queue:
        node, tt = queue.popleft()
        if node.name in seen:
            raise DuplicateNode(f"duplicate node name {node.name!r}")
        seen.add(node.name)
        if (node.left is None) != (node.right is None):
            raise NotStrictBinary(f"node {node.name!r} has exactly one child")
        out.append(NodeTuple(node.name, tt))
        if node.left is not None:
            i = tt.index
            queue.append((node.left, TwoTuple(tt.level + 1, 2 * i - 1, 0.0)))
            queue.append((node.right, TwoTuple(tt.level + 1, 2 * i + 1, 0.0)))
    out.sort(key=lambda nt: (nt.level, nt.index))
    return out


def node_distance(a: NodeTuple, b: NodeTuple) -> float:
    return abs(a.position - b.position)


def sibling_gap(level: int) -> float:
    """Normalized distance between two siblings living on ``level``."""
    return 2 * grain(level, 1.0)
