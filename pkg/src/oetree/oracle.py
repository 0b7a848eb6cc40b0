"""Reference model and differential fuzzer.

The reference model is an append log with a checkpoint stack. The fuzzer
drives it, an open-ended list and one open-ended tree per configuration with
the same pseudo-random operation stream and reports every disagreement.

Operation streams come from SplitMix64 so they can be regenerated outside
Python: each draw advances ``state += 0x9E3779B97F4A7C15`` and mixes it with
the standard finalizer. An operation is picked as ``draw % sum(weights)``
against the weights in insert/lookup/mark/undo order; an undo target is
``draw % live_marks`` counted from the oldest live mark; the value inserted
by operation ``i`` is ``i``. An undo keeps its target mark live and
invalidates the younger ones, which are then replayed once each to check
that they are rejected as stale.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Any, Iterator, Sequence

from oetree.errors import BadConfig, EmptyList, EmptyTree, StaleMark
from oetree.olist import OpenEndedList
from oetree.tree import Config, OpenEndedTree

__all__ = [
    "OracleModel",
    "SplitMix64",
    "FuzzPlan",
    "Divergence",
    "FuzzReport",
    "FULL_GRID",
    "op_stream",
    "differential_run",
]

_MASK = (1 << 64) - 1
OPS = ("insert", "lookup", "mark", "undo")


class OracleModel:
    """Trivially correct journal: a value log plus a stack of log lengths."""

    def __init__(self) -> None:
        self.log: list[Any] = []
        self.checkpoints: list[int] = []

    def insert(self, value: Any) -> None:
        self.log.append(value)

    def lookup(self) -> Any:
        if not self.log:
            raise EmptyTree("lookup on an empty log")
        return self.log[-1]

    def mark(self) -> int:
        self.checkpoints.append(len(self.log))
        return len(self.checkpoints) - 1

    def undo(self, index: int = -1) -> None:
        """Truncate the log to checkpoint ``index``.

        The checkpoint itself stays live, every younger one is dropped.
        """
        if not self.checkpoints:
            raise StaleMark("no live checkpoint")
        if index < 0:
            index += len(self.checkpoints)
        if not 0 <= index < len(self.checkpoints):
            raise StaleMark(f"no checkpoint {index}")
        del self.log[self.checkpoints[index]:]
        del self.checkpoints[index + 1:]


class SplitMix64:
    def __init__(self, seed: int) -> None:
        self.state = seed & _MASK

    def next(self) -> int:
        self.state = (self.state + 0x9E3779B97F4A7C15) & _MASK
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK
        return z ^ (z >> 31)

    def below(self, n: int) -> int:
        return self.next() % n


FULL_GRID: tuple[Config, ...] = tuple(
    Config(d0, annotated, compact)
    for d0 in (1, 2, 3, 10)
    for annotated, compact in ((False, False), (True, False), (False, True), (True, True))
)


@dataclass(frozen=True)
class FuzzPlan:
    seed: int
    op_count: int
    # insert, lookup, mark, undo
    weights: tuple[int, int, int, int] = (5, 2, 2, 1)
    grid: tuple[Config, ...] = FULL_GRID
    include_list: bool = True

    def __post_init__(self) -> None:
        if self.op_count < 1:
            raise BadConfig(f"op_count must be >= 1, got {self.op_count}")
        if len(self.weights) != 4 or any(w < 0 for w in self.weights) or sum(self.weights) == 0:
            raise BadConfig(f"weights must be 4 non-negative integers, not all zero: {self.weights}")
        if not self.grid:
            raise BadConfig("config grid is empty")


def op_stream(plan: FuzzPlan) -> Iterator[tuple[str, int]]:
    """Yield ``(op, arg)`` pairs: the value for insert, the mark index for undo.

    Undo targets depend on how many marks are live, so the stream simulates
    the mark stack itself. An undo with no live mark yields ``arg = -1``.
    """
    rng = SplitMix64(plan.seed)
    total = sum(plan.weights)
    cuts = list(itertools.accumulate(plan.weights))
    live = 0
    for i in range(plan.op_count):
        r = rng.below(total)
        op = next(name for name, cut in zip(OPS, cuts) if r < cut)
        if op == "insert":
            yield op, i
        elif op == "mark":
            live += 1
            yield op, live - 1
        elif op == "undo":
            if live == 0:
                yield op, -1
            else:
                target = rng.below(live)
                live = target + 1
                yield op, target
        else:
            yield op, 0


@dataclass(frozen=True)
class Divergence:
    seed: int
    op_index: int
    op: str
    subject: str
    detail: str

    def __str__(self) -> str:
        return f"seed={self.seed} op#{self.op_index} {self.op} [{self.subject}]: {self.detail}"


@dataclass
class FuzzReport:
    seed: int
    ops_executed: int = 0
    divergences: int = 0
    generator: str = "splitmix64"
    configs: int = 0
    max_log_length: int = 0
    op_totals: dict[str, int] = field(default_factory=lambda: dict.fromkeys(OPS, 0))
    samples: list[Divergence] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.divergences == 0


def _label(c: Config) -> str:
    flags = [f"D0={c.start_depth}"]
    if c.depth_annotated:
        flags.append("annotated")
    if c.compact_leaves:
        flags.append("compact")
    return " ".join(flags)


class _Subject:
    """One structure under test plus its own live mark stack."""

    __slots__ = ("name", "handle", "marks", "is_tree")

    def __init__(self, name: str, handle: OpenEndedTree | OpenEndedList) -> None:
        self.name = name
        self.handle = handle
        self.marks: list[Any] = []
        self.is_tree = isinstance(handle, OpenEndedTree)


def _outcome(fn) -> tuple[str, Any]:
    try:
        return "ok", fn()
    except (EmptyTree, EmptyList):
        return "empty", None
    except StaleMark:
        return "stale", None


def differential_run(plan: FuzzPlan, max_samples: int = 10) -> FuzzReport:
    """Drive the oracle, the list and every configured tree with one op stream."""
    report = FuzzReport(seed=plan.seed, configs=len(plan.grid))
    oracle = OracleModel()
    subjects = [_Subject(_label(c), OpenEndedTree(config=c)) for c in plan.grid]
    if plan.include_list:
        subjects.append(_Subject("list", OpenEndedList()))

    def diverge(i: int, op: str, who: str, detail: str) -> None:
        report.divergences += 1
        if len(report.samples) < max_samples:
            report.samples.append(Divergence(plan.seed, i, op, who, detail))

    for i, (op, arg) in enumerate(op_stream(plan)):
        report.op_totals[op] += 1
        mutated = False
        if op == "insert":
            oracle.insert(arg)
            for s in subjects:
                s.handle.insert(arg)
            mutated = True
        elif op == "mark":
            oracle.mark()
            for s in subjects:
                s.marks.append(s.handle.mark())
        elif op == "undo":
            expected, _ = _outcome(lambda: oracle.undo(arg))
            mutated = expected == "ok"
            for s in subjects:
                if arg < 0:
                    continue
                m = s.marks[arg]
                got, _ = _outcome(lambda: s.handle.undo_to(m))
                if got != expected:
                    diverge(i, op, s.name, f"undo outcome {got}, oracle {expected}")
                invalidated = s.marks[arg + 1:]
                del s.marks[arg + 1:]
                if invalidated:
                    got, _ = _outcome(lambda: s.handle.undo_to(invalidated[-1]))
                    if got != "stale":
                        diverge(i, op, s.name, f"invalidated mark accepted ({got})")

        log = oracle.log
        want = ("ok", log[-1]) if log else ("empty", None)
        if len(log) > report.max_log_length:
            report.max_log_length = len(log)
        for s in subjects:
            h = s.handle
            try:
                got = ("ok", h.lookup())
            except (EmptyTree, EmptyList):
                got = ("empty", None)
            if got != want:
                diverge(i, op, s.name, f"lookup {got}, oracle {want}")
            flat = h.flatten()
            if flat != log:
                diverge(i, op, s.name, f"flatten has {len(flat)} values, oracle log has {len(log)}")
            if mutated and s.is_tree:
                v = h.validate()
                if v is not None:
                    diverge(i, op, s.name, str(v))
        report.ops_executed += 1
    return report


def run_seeds(seeds: Sequence[int], op_count: int, **plan_kwargs: Any) -> list[FuzzReport]:
    return [differential_run(FuzzPlan(seed, op_count, **plan_kwargs)) for seed in seeds]
