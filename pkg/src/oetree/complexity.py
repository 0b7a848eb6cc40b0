"""Closed-form capacity, depth and memory figures for open-ended trees.

``M`` is the number of updates, ``N`` the depth limit of the last tree in
the collector sequence and ``D0`` the depth limit of the first one.
"""

from __future__ import annotations

from enum import Enum

from oetree.errors import BadArgs
from oetree.tree import TreeStats

__all__ = [
    "ReprKind",
    "capacity_completed",
    "depth_of_last_tree",
    "predicted_max_depth",
    "visit_bound",
    "heap_cells_estimate",
    "heap_cells_measured",
]


class ReprKind(str, Enum):
    TREE_PLAIN = "tree_plain"
    TREE_LEAF_WRAPPED = "tree_leaf_wrapped"
    TREE_LEAF_INLINE = "tree_leaf_inline"
    LIST = "list"


# heap cells per term
_TREE_CELLS = 4
_LEAF_CELLS = 2
_CONS_CELLS = 2


def _check_start(d0: int) -> None:
    if d0 < 1:
        raise BadArgs(f"start depth must be >= 1, got {d0}")


def capacity_completed(n: int, d0: int = 1) -> int:
    """Values held once the trees of depth ``d0..n`` and their collectors are full."""
    _check_start(d0)
    if n < d0:
        raise BadArgs(f"depth {n} is below the start depth {d0}")
    return (1 << (n + 1)) - (1 << d0)


def depth_of_last_tree(m: int, d0: int = 1) -> int:
    """Depth limit of the tree currently being filled after ``m`` updates.

    Smallest ``n >= d0`` with ``m <= capacity_completed(n, d0)``; for
    ``d0 == 1`` this is ``ceil(log2(m + 2)) - 1``.
    """
    _check_start(d0)
    if m < 1:
        raise BadArgs(f"update count must be >= 1, got {m}")
    # m + 2**d0 <= 2**(n+1)  <=>  n + 1 >= ceil(log2(m + 2**d0))
    return max(d0, (m + (1 << d0) - 1).bit_length() - 1)


def predicted_max_depth(m: int, d0: int = 1) -> int:
    """Deepest node (root at depth 1) after ``m`` updates, from occupancy alone.

    The last collector sits at spine position ``k = n - d0 + 1``; its left
    subtree fills in preorder, so its first ``n`` nodes form a left chain. The
    previous collector's subtree is complete and can still be the deepest
    part of the structure while the last tree is shallow.
    """
    _check_start(d0)
    if m < 0:
        raise BadArgs(f"update count must be >= 0, got {m}")
    if m == 0:
        return 0
    n = depth_of_last_tree(m, d0)
    k = n - d0 + 1
    before = capacity_completed(n - 1, d0) if n > d0 else 0
    occupancy = m - before - 1
    deepest = k + min(occupancy, n)
    if k >= 2:
        deepest = max(deepest, (k - 1) + (n - 1))
    return deepest


def visit_bound(m: int, d0: int = 1) -> int:
    """Upper bound on nodes inspected by one insert or lookup."""
    return 2 * depth_of_last_tree(m, d0) + 1


def heap_cells_estimate(m: int, repr_kind: ReprKind | str) -> int:
    """Asymptotic heap cells for ``m`` values, assuming half of them are leaves."""
    if m < 1:
        raise BadArgs(f"update count must be >= 1, got {m}")
    kind = ReprKind(repr_kind)
    if kind is ReprKind.TREE_PLAIN:
        return _TREE_CELLS * m
    if kind is ReprKind.TREE_LEAF_WRAPPED:
        return (_TREE_CELLS + _LEAF_CELLS) * m // 2
    if kind is ReprKind.TREE_LEAF_INLINE:
        return _TREE_CELLS * m // 2
    return _CONS_CELLS * m


def heap_cells_measured(stats: TreeStats, repr_kind: ReprKind | str) -> int:
    """Exact cell count for a concrete structure, using its node and leaf counts."""
    kind = ReprKind(repr_kind)
    interior = stats.node_count - stats.leaf_count
    if kind is ReprKind.TREE_PLAIN:
        return _TREE_CELLS * stats.node_count
    if kind is ReprKind.TREE_LEAF_WRAPPED:
        return _TREE_CELLS * interior + _LEAF_CELLS * stats.leaf_count
    if kind is ReprKind.TREE_LEAF_INLINE:
        return _TREE_CELLS * interior
    return _CONS_CELLS * stats.update_count
