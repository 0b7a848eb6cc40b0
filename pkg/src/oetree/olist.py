"""Open-ended list: the linear-cost baseline.

The current value is the last element before the unbound tail. Both insert
and lookup walk the whole chain, so their cost grows with the number of
updates.
"""

from __future__ import annotations

from typing import Any

from oetree.errors import EmptyList
from oetree.journal import Mark, Slot, Trail
from oetree.tree import VisitCounter

__all__ = ["Cons", "OpenEndedList", "new_list"]


class Cons:
    __slots__ = ("value", "next")

    def __init__(self, value: Any) -> None:
        self.value = value
        self.next = Slot()

    def __repr__(self) -> str:
        return f"Cons({self.value!r})"


class OpenEndedList:
    """Handle onto an open-ended list.

    >>> lst = OpenEndedList()
    >>> for v in (1, 2, 3, 4):
    ...     lst.insert(v)
    >>> lst.render()
    '[1,2,3,4|_]'
    >>> lst.rebase().render()
    '[4|_]'
    """

    def __init__(self) -> None:
        self.head = Slot()
        self.trail = Trail()
        self.counters = VisitCounter()
        self._arena: list[Cons] = []

    def __repr__(self) -> str:
        return f"OpenEndedList({self.render()})"

    def mark(self) -> Mark:
        return self.trail.mark()

    def undo_to(self, m: Mark) -> None:
        self.trail.undo_to(m)

    def insert(self, value: Any) -> None:
        slot = self.head
        visits = 1
        while slot.node is not None:
            slot = slot.node.next
            visits += 1
        cell = Cons(value)
        self._arena.append(cell)
        self.trail.bind(slot, cell)
        c = self.counters
        c.nodes_visited += visits
        c.last_visits = c.last_insert = visits

    def lookup(self) -> Any:
        cell = self.head.node
        if cell is None:
            raise EmptyList("lookup on an empty list")
        visits = 1
        nxt = cell.next.node
        while nxt is not None:
            cell = nxt
            nxt = cell.next.node
            visits += 1
        c = self.counters
        c.nodes_visited += visits
        c.last_visits = c.last_lookup = visits
        return cell.value

    def rebase(self) -> OpenEndedList:
        """Return a handle whose head is the last filled cell, sharing the chain."""
        cell = self.head.node
        if cell is None:
            raise EmptyList("rebase on an empty list")
        slot = self.head
        while cell.next.node is not None:
            slot = cell.next
            cell = slot.node
        h = OpenEndedList.__new__(OpenEndedList)
        h.head = slot
        h.trail = self.trail
        h.counters = VisitCounter()
        h._arena = self._arena
        return h

    def flatten(self) -> list[Any]:
        out = []
        cell = self.head.node
        while cell is not None:
            out.append(cell.value)
            cell = cell.next.node
        return out

    def __len__(self) -> int:
        return len(self.flatten())

    def render(self) -> str:
        values = self.flatten()
        if not values:
            return "_"
        return "[" + ",".join(str(v) for v in values) + "|_]"

    __str__ = render

    def visits(self) -> VisitCounter:
        c = self.counters
        return VisitCounter(c.nodes_visited, c.last_visits, c.last_insert, c.last_lookup)


def new_list() -> OpenEndedList:
    return OpenEndedList()
