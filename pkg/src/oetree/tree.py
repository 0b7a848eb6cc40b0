"""Open-ended tree: an append-only journal with logarithmic tail access.

The structure is a right spine of *collector* nodes. The k-th collector
(k = 1 at the root) owns a left subtree whose depth may not exceed
``start + k - 1``; a new collector is only created once the previous
collector's left subtree is complete. Inside a subtree nodes are filled in
preorder, so the most recent value is always the last filled node of a
depth-first left-to-right walk, reachable by preferring right children.

Every binding is recorded on a trail, so inserts can be undone by
backtracking to a mark.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Any, Iterator

from oetree.errors import BadConfig, EmptyTree, NeedsDepthAnnotation
from oetree.journal import Mark, Slot, Trail

__all__ = [
    "Config",
    "Node",
    "Leaf",
    "OpenEndedTree",
    "TreeStats",
    "VisitCounter",
    "Violation",
    "new_tree",
]


@dataclass(frozen=True)
class Config:
    start_depth: int = 1
    depth_annotated: bool = False
    compact_leaves: bool = False

    def __post_init__(self) -> None:
        if isinstance(self.start_depth, bool) or not isinstance(self.start_depth, int):
            raise BadConfig(f"start_depth must be an integer, got {self.start_depth!r}")
        if self.start_depth < 1:
            raise BadConfig(f"start_depth must be >= 1, got {self.start_depth}")


class Node:
    """Interior node: left slot, payload, right slot.

    ``limit`` is only set on collectors of depth-annotated trees.
    """

    __slots__ = ("left", "value", "right", "limit")

    def __init__(self, value: Any, limit: int | None = None) -> None:
        self.left = Slot()
        self.value = value
        self.right = Slot()
        self.limit = limit

    def __repr__(self) -> str:
        return f"Node({self.value!r})"


class Leaf:
    """Compact node at the maximal depth of a subtree; it has no slots."""

    __slots__ = ("value",)

    def __init__(self, value: Any) -> None:
        self.value = value

    def __repr__(self) -> str:
        return f"Leaf({self.value!r})"


@dataclass
class VisitCounter:
    nodes_visited: int = 0
    last_visits: int = 0
    last_insert: int = 0
    last_lookup: int = 0


@dataclass(frozen=True)
class TreeStats:
    update_count: int = 0
    collector_count: int = 0
    max_node_depth: int = 0
    node_count: int = 0
    leaf_count: int = 0


@dataclass(frozen=True)
class Violation:
    rule: str
    path: str
    message: str

    def __str__(self) -> str:
        return f"{self.rule} violation at {self.path or 'root'}: {self.message}"


class _Store:
    """State shared by every handle onto one structure."""

    __slots__ = ("trail", "arena")

    def __init__(self) -> None:
        self.trail = Trail()
        # append-only; undone nodes stay here as dead entries
        self.arena: list[Node | Leaf] = []


class OpenEndedTree:
    """Handle onto an open-ended tree.

    >>> t = OpenEndedTree()
    >>> for v in (1, 2, 3):
    ...     t.insert(v)
    >>> t.render()
    'tree(tree(_,2,_),1,tree(_,3,_))'
    >>> t.lookup()
    3
    """

    def __init__(
        self,
        start_depth: int = 1,
        depth_annotated: bool = False,
        compact_leaves: bool = False,
        *,
        config: Config | None = None,
    ) -> None:
        if config is None:
            config = Config(start_depth, depth_annotated, compact_leaves)
        self.config = config
        self.root = Slot()
        self.effective_start = config.start_depth
        self.counters = VisitCounter()
        self._store = _Store()

    @classmethod
    def _share(cls, other: OpenEndedTree, root: Slot, effective_start: int) -> OpenEndedTree:
        h = cls.__new__(cls)
        h.config = other.config
        h.root = root
        h.effective_start = effective_start
        h.counters = VisitCounter()
        h._store = other._store
        return h

    def __repr__(self) -> str:
        c = self.config
        return (
            f"OpenEndedTree(start_depth={c.start_depth}, depth_annotated={c.depth_annotated}, "
            f"compact_leaves={c.compact_leaves}, effective_start={self.effective_start})"
        )

    @property
    def trail(self) -> Trail:
        return self._store.trail

    @property
    def arena_size(self) -> int:
        return len(self._store.arena)

    def mark(self) -> Mark:
        return self._store.trail.mark()

    def undo_to(self, m: Mark) -> None:
        self._store.trail.undo_to(m)


    # -- core operations ---------------------------------------------------

    def insert(self, value: Any) -> None:
        """Store ``value`` as the new current value."""
        store = self._store
        root = self.root
        node = root.node
        if node is None:
            limit = self.effective_start
            new = Node(value, limit if self.config.depth_annotated else None)
            store.arena.append(new)
            store.trail.bind(root, new)
            c = self.counters
            c.nodes_visited += 1
            c.last_visits = c.last_insert = 1
            return

        annotated = self.config.depth_annotated
        compact = self.config.compact_leaves

        # find the last collector; its limit bounds the left subtree
        visits = 1
        limit = node.limit if annotated else self.effective_start
        right = node.right
        while right.node is not None:
            node = right.node
            right = node.right
            visits += 1
            limit = node.limit if annotated else limit + 1
        collector_limit = limit

        slot = node.left
        budget = limit
        back = right
        back_budget = 0  # 0 marks a spine slot: the next collector goes there
        while True:
            cur = slot.node
            if cur is None:
                target, target_budget = slot, budget
                break
            visits += 1
            if budget == 1:
                target, target_budget = back, back_budget
                break
            budget -= 1
            if cur.right.node is None:
                back = cur.right
                back_budget = budget
                slot = cur.left
            else:
                slot = cur.right

        if target_budget == 0:
            new = Node(value, collector_limit + 1 if annotated else None)
        elif compact and target_budget == 1:
            new = Leaf(value)
        else:
            new = Node(value)
        store.arena.append(new)
        store.trail.bind(target, new)
        visits += 1
        c = self.counters
        c.nodes_visited += visits
        c.last_visits = c.last_insert = visits

    def lookup(self) -> Any:
        """Return the current (most recently inserted, not undone) value."""
        node = self.root.node
        if node is None:
            raise EmptyTree("lookup on an empty tree")
        visits = 1
        while True:
            if node.__class__ is Leaf:
                break
            nxt = node.right.node
            if nxt is None:
                nxt = node.left.node
                if nxt is None:
                    break
            node = nxt
            visits += 1
        c = self.counters
        c.nodes_visited += visits
        c.last_visits = c.last_lookup = visits
        return node.value

    def __len__(self) -> int:
        return self.stats().update_count

    # -- traversals --------------------------------------------------------

    def collectors(self) -> Iterator[tuple[Slot, Node, int]]:
        """Yield ``(slot, collector, limit)`` along the spine, root first."""
        slot = self.root
        limit = self.effective_start
        while slot.node is not None:
            yield slot, slot.node, limit
            slot = slot.node.right
            limit += 1

    def flatten(self) -> list[Any]:
        """Values in insertion order: each collector, then its left subtree in preorder."""
        out: list[Any] = []
        append = out.append

        def preorder(n: Node | Leaf) -> None:
            append(n.value)
            if n.__class__ is Node:
                child = n.left.node
                if child is not None:
                    preorder(child)
                child = n.right.node
                if child is not None:
                    preorder(child)

        node = self.root.node
        while node is not None:
            append(node.value)
            left = node.left.node
            if left is not None:
                preorder(left)
            node = node.right.node
        return out

    def render(self) -> str:
        """Canonical term text, e.g. ``tree(tree(_,2,_),1,_)``."""
        parts: list[str] = []
        _render_slot(self.root, parts)
        return "".join(parts)

    __str__ = render

    # -- variants ----------------------------------------------------------

    def rebase(self) -> OpenEndedTree:
        """Return a handle rooted at the deepest collector, sharing this structure."""
        if not self.config.depth_annotated:
            raise NeedsDepthAnnotation("rebase needs collector depth annotations")
        if self.root.node is None:
            raise EmptyTree("rebase on an empty tree")
        slot = self.root
        while slot.node.right.node is not None:
            slot = slot.node.right
        return self._share(self, slot, slot.node.limit)

    # -- inspection --------------------------------------------------------

    def visits(self) -> VisitCounter:
        c = self.counters
        return VisitCounter(c.nodes_visited, c.last_visits, c.last_insert, c.last_lookup)

    def stats(self) -> TreeStats:
        updates = collectors = max_depth = leaves = 0
        for k, (_, col, limit) in enumerate(self.collectors(), start=1):
            collectors += 1
            updates += 1
            max_depth = max(max_depth, k)
            stack = [(col.left.node, k + 1, limit)]
            while stack:
                n, depth, budget = stack.pop()
                if n is None:
                    continue
                updates += 1
                if depth > max_depth:
                    max_depth = depth
                if budget == 1:
                    leaves += 1
                if n.__class__ is Node:
                    stack.append((n.left.node, depth + 1, budget - 1))
                    stack.append((n.right.node, depth + 1, budget - 1))
        return TreeStats(updates, collectors, max_depth, updates, leaves)

    def validate(self) -> Violation | None:
        """Check the structural rules; return the first violation or None."""
        annotated = self.config.depth_annotated
        compact = self.config.compact_leaves
        path = ""
        prev_complete = True
        prev_path = ""
        prev_limit = 0
        for k, (_, col, limit) in enumerate(self.collectors(), start=1):
            if not prev_complete:
                return Violation(
                    "completeness",
                    prev_path,
                    f"collector {k} exists but the left subtree of collector {k - 1} "
                    f"is not complete to depth {prev_limit}",
                )
            if col.__class__ is not Node:
                return Violation("compact", path, "collector must be an interior node")
            if annotated and col.limit != limit:
                return Violation(
                    "annotation", path, f"collector {k} stores limit {col.limit}, expected {limit}"
                )
            if not annotated and col.limit is not None:
                return Violation("annotation", path, "unexpected depth annotation")
            v = _check_subtree(col.left.node, limit, compact)
            if v.__class__ is Violation:
                return Violation(v.rule, path + "L" + v.path, v.message)
            prev_complete = v == (1 << limit) - 1
            prev_path = path
            prev_limit = limit
            path += "R"
        return None

    def is_valid(self) -> bool:
        return self.validate() is None

    # -- construction from text -------------------------------------------

    @classmethod
    def from_render(cls, text: str, config: Config | None = None) -> OpenEndedTree:
        """Build a tree from canonical render text, bypassing the insert rules.

        Integer payloads are parsed as ``int``; anything else stays a string.
        Intended for constructing malformed structures in tests.
        """
        h = cls(config=config or Config())
        tokens = _TOKEN.findall(text)
        if "".join(tokens) != text.replace(" ", ""):
            raise ValueError(f"cannot tokenize {text!r}")
        pos = _parse_into(h, h.root, tokens, 0, is_collector=True, limit=h.effective_start)
        if pos != len(tokens):
            raise ValueError(f"trailing input in {text!r}")
        return h


def new_tree(config: Config | None = None) -> OpenEndedTree:
    return OpenEndedTree(config=config or Config())


def _render_slot(slot: Slot, parts: list[str]) -> None:
    n = slot.node
    if n is None:
        parts.append("_")
    elif n.__class__ is Leaf:
        parts.append(f"leaf({n.value})")
    else:
        parts.append("tree(")
        _render_slot(n.left, parts)
        parts.append(f",{n.value},")
        _render_slot(n.right, parts)
        parts.append(")")


def _check_subtree(node: Any, budget: int, compact: bool) -> int | Violation:
    """Validate a non-spine subtree; return its node count or a violation.

    Filled nodes must form a preorder prefix of the complete tree of depth
    ``budget``: a right child may only exist once the left sibling is full.
    Violation paths are relative to ``node`` and prefixed while unwinding.
    """
    if node is None:
        return 0
    if budget < 1:
        return Violation("limit", "", "subtree exceeds its collector's depth limit")
    if compact:
        if budget == 1 and node.__class__ is not Leaf:
            return Violation("compact", "", "node at maximal depth must be a leaf")
        if budget > 1 and node.__class__ is not Node:
            return Violation("compact", "", "leaf above maximal depth")
    elif node.__class__ is not Node:
        return Violation("compact", "", "leaf in a tree without compact leaves")
    if node.__class__ is Leaf:
        return 1
    if node.limit is not None:
        return Violation("annotation", "", "depth annotation on a non-collector node")
    left = right = 0
    child = node.left.node
    if child is not None:
        left = _check_subtree(child, budget - 1, compact)
        if left.__class__ is Violation:
            return Violation(left.rule, "L" + left.path, left.message)
    child = node.right.node
    if child is not None:
        right = _check_subtree(child, budget - 1, compact)
        if right.__class__ is Violation:
            return Violation(right.rule, "R" + right.path, right.message)
    if right and left != (1 << (budget - 1)) - 1:
        return Violation("prefix", "R", "right child filled before the left subtree is complete")
    return 1 + left + right


_TOKEN = re.compile(r"tree\(|leaf\(|\)|,|_|[^,()_\s]+")


def _parse_into(h: OpenEndedTree, slot: Slot, tokens: list[str], i: int, *, is_collector: bool, limit: int) -> int:
    tok = tokens[i]
    if tok == "_":
        return i + 1
    store = h._store
    if tok == "leaf(":
        node: Node | Leaf = Leaf(_atom(tokens[i + 1]))
        _expect(tokens, i + 2, ")")
        store.arena.append(node)
        store.trail.bind(slot, node)
        return i + 3
    if tok != "tree(":
        raise ValueError(f"unexpected token {tok!r}")
    node = Node(None, limit if (is_collector and h.config.depth_annotated) else None)
    store.arena.append(node)
    store.trail.bind(slot, node)
    i = _parse_into(h, node.left, tokens, i + 1, is_collector=False, limit=limit)
    _expect(tokens, i, ",")
    node.value = _atom(tokens[i + 1])
    _expect(tokens, i + 2, ",")
    i = _parse_into(h, node.right, tokens, i + 3, is_collector=is_collector, limit=limit + 1)
    _expect(tokens, i, ")")
    return i + 1


def _expect(tokens: list[str], i: int, want: str) -> None:
    if i >= len(tokens) or tokens[i] != want:
        got = tokens[i] if i < len(tokens) else "end of input"
        raise ValueError(f"expected {want!r}, got {got!r}")


def _atom(tok: str) -> Any:
    try:
        return int(tok)
    except ValueError:
        return tok
