"""Write-once slots and the trail that makes their bindings undoable.

A :class:`Slot` plays the part of a logic variable: it starts out empty and
can be bound once. Every binding goes through a :class:`Trail`, which keeps
the bound slots in chronological order so that :meth:`Trail.undo_to` can
reset all bindings made after a :class:`Mark` (chronological backtracking).
"""

from __future__ import annotations

from typing import Any

from oetree.errors import StaleMark, WriteOnceViolation

__all__ = ["Slot", "Mark", "Trail", "new_slot"]


class Slot:
    """A write-once cell; ``node is None`` means the slot is empty."""

    __slots__ = ("node",)

    def __init__(self) -> None:
        self.node: Any = None

    @property
    def empty(self) -> bool:
        return self.node is None

    def read(self) -> Any:
        """Return the bound node, or None while the slot is empty."""
        return self.node

    def __repr__(self) -> str:
        return "Slot(Empty)" if self.node is None else f"Slot(Filled({self.node!r}))"


def new_slot() -> Slot:
    return Slot()


class Mark:
    """Opaque choice point: a trail position tied to the trail that issued it."""

    __slots__ = ("trail", "position", "_depth")

    def __init__(self, trail: Trail, position: int, depth: int) -> None:
        self.trail = trail
        self.position = position
        # index of this mark on the issuing trail's mark stack
        self._depth = depth

    def __repr__(self) -> str:
        return f"Mark({self.position})"


class Trail:
    """Chronological record of slot bindings.

    Marks form a stack. Undoing to a mark keeps that mark usable (a choice
    point can be retried) but invalidates every mark taken after it.
    """

    __slots__ = ("entries", "_marks")

    def __init__(self) -> None:
        self.entries: list[Slot] = []
        self._marks: list[Mark] = []

    def __len__(self) -> int:
        return len(self.entries)

    def bind(self, slot: Slot, node: Any) -> None:
        if slot.node is not None:
            raise WriteOnceViolation(f"slot already bound to {slot.node!r}")
        if node is None:
            raise WriteOnceViolation("cannot bind a slot to nothing")
        slot.node = node
        self.entries.append(slot)

    def mark(self) -> Mark:
        m = Mark(self, len(self.entries), len(self._marks))
        self._marks.append(m)
        return m

    def is_valid(self, m: Mark) -> bool:
        marks = self._marks
        return m._depth < len(marks) and marks[m._depth] is m

    def undo_to(self, m: Mark) -> None:
        if m.trail is not self:
            raise WriteOnceViolation("mark belongs to a different trail")
        if not self.is_valid(m):
            raise StaleMark(f"{m!r} was invalidated by an earlier undo")
        entries = self.entries
        pos = m.position
        while len(entries) > pos:
            entries.pop().node = None
        del self._marks[m._depth + 1:]

    def release(self, m: Mark) -> None:
        """Drop ``m`` and every younger mark without undoing any binding.

        Mirrors a Prolog cut: the bindings stay, the choice points go.
        """
        if m.trail is not self:
            raise WriteOnceViolation("mark belongs to a different trail")
        if not self.is_valid(m):
            raise StaleMark(f"{m!r} was invalidated by an earlier undo")
        del self._marks[m._depth:]

    @property
    def live_marks(self) -> int:
        return len(self._marks)
