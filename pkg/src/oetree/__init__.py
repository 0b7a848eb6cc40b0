"""Open-ended trees: append-only journals with logarithmic update and access."""

from oetree.errors import (
    BadArgs,
    BadConfig,
    EmptyList,
    EmptyTree,
    JournalError,
    NeedsDepthAnnotation,
    StaleMark,
    WriteOnceViolation,
)
from oetree.journal import Mark, Slot, Trail, new_slot
from oetree.olist import OpenEndedList, new_list
from oetree.tree import Config, Leaf, Node, OpenEndedTree, TreeStats, VisitCounter, Violation, new_tree

__all__ = [
    "BadArgs",
    "BadConfig",
    "Config",
    "EmptyList",
    "EmptyTree",
    "JournalError",
    "Leaf",
    "Mark",
    "NeedsDepthAnnotation",
    "Node",
    "OpenEndedList",
    "OpenEndedTree",
    "Slot",
    "StaleMark",
    "Trail",
    "TreeStats",
    "Violation",
    "VisitCounter",
    "WriteOnceViolation",
    "new_list",
    "new_slot",
    "new_tree",
]

__version__ = "0.1.0"
