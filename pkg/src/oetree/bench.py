"""Benchmark harness: prepopulate, time a loop of lookups or insert+undo pairs.

Setup (prepopulation) is excluded from the measured time. Besides wall
time every row records the total number of nodes inspected during the
loop, which gives a hardware-independent view of the same growth trends.
"""

from __future__ import annotations

import csv
import time
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, TextIO

from oetree.complexity import predicted_max_depth
from oetree.errors import BadConfig
from oetree.olist import OpenEndedList
from oetree.tree import Config, OpenEndedTree

__all__ = [
    "BenchSpec",
    "BenchRow",
    "CSV_HEADER",
    "build",
    "run_bench",
    "write_csv",
    "read_csv",
    "trend_check",
    "TrendReport",
    "demo",
]

CSV_HEADER = (
    "structure",
    "start_depth",
    "compact_leaves",
    "depth_annotated",
    "prepopulate",
    "op",
    "reps",
    "elapsed_ns",
    "visits",
)

TREND_SIZES = (100, 1000, 10000)


@dataclass(frozen=True)
class BenchSpec:
    structure: str = "tree"
    start_depth: int = 1
    compact_leaves: bool = False
    depth_annotated: bool = False
    prepopulate: int = 0
    op: str = "lookup"
    reps: int = 100000
    seed: int = 0

    def __post_init__(self) -> None:
        if self.structure not in ("tree", "list"):
            raise BadConfig(f"structure must be 'tree' or 'list', got {self.structure!r}")
        if self.op not in ("insert", "lookup"):
            raise BadConfig(f"op must be 'insert' or 'lookup', got {self.op!r}")
        if self.prepopulate < 0:
            raise BadConfig(f"prepopulate must be >= 0, got {self.prepopulate}")
        if self.reps < 1:
            raise BadConfig(f"reps must be >= 1, got {self.reps}")
        if self.start_depth < 1:
            raise BadConfig(f"start_depth must be >= 1, got {self.start_depth}")
        if self.structure == "list" and (self.compact_leaves or self.depth_annotated or self.start_depth != 1):
            raise BadConfig("tree variant options do not apply to the list structure")
        if self.op == "lookup" and self.prepopulate == 0:
            raise BadConfig("a lookup benchmark needs prepopulate >= 1")


@dataclass(frozen=True)
class BenchRow:
    structure: str
    start_depth: int
    compact_leaves: bool
    depth_annotated: bool
    prepopulate: int
    op: str
    reps: int
    elapsed_ns: int
    visits: int

    @property
    def visits_per_rep(self) -> float:
        return self.visits / self.reps

    @property
    def ns_per_rep(self) -> float:
        return self.elapsed_ns / self.reps


def build(spec: BenchSpec) -> OpenEndedTree | OpenEndedList:
    """Create the structure named by ``spec`` holding the values ``1..prepopulate``."""
    if spec.structure == "list":
        h: OpenEndedTree | OpenEndedList = OpenEndedList()
    else:
        h = OpenEndedTree(config=Config(spec.start_depth, spec.depth_annotated, spec.compact_leaves))
    for v in range(1, spec.prepopulate + 1):
        h.insert(v)
    return h


def run_bench(spec: BenchSpec, structure: OpenEndedTree | OpenEndedList | None = None) -> BenchRow:
    """Time ``spec.reps`` lookups, or ``spec.reps`` rounds of mark/insert/undo."""
    h = build(spec) if structure is None else structure
    before = h.counters.nodes_visited
    reps = range(spec.reps)
    if spec.op == "lookup":
        lookup = h.lookup
        t0 = time.perf_counter_ns()
        for _ in reps:
            lookup()
        elapsed = time.perf_counter_ns() - t0
    else:
        size_before = len(h.trail)
        trail = h.trail
        insert = h.insert
        value = spec.prepopulate + 1
        t0 = time.perf_counter_ns()
        for _ in reps:
            m = trail.mark()
            insert(value)
            trail.undo_to(m)
            trail.release(m)
        elapsed = time.perf_counter_ns() - t0
        if len(h.trail) != size_before:
            raise RuntimeError("insert loop did not restore the structure")
    return BenchRow(
        structure=spec.structure,
        start_depth=spec.start_depth,
        compact_leaves=spec.compact_leaves,
        depth_annotated=spec.depth_annotated,
        prepopulate=spec.prepopulate,
        op=spec.op,
        reps=spec.reps,
        elapsed_ns=elapsed,
        visits=h.counters.nodes_visited - before,
    )


def _row_fields(row: BenchRow) -> list[str]:
    out = []
    for name in CSV_HEADER:
        v = getattr(row, name)
        out.append(str(int(v)) if isinstance(v, bool) else str(v))
    return out


def write_csv(rows: Iterable[BenchRow], dest: str | Path | TextIO) -> None:
    if isinstance(dest, (str, Path)):
        with open(dest, "w", newline="") as fh:
            write_csv(rows, fh)
        return
    w = csv.writer(dest, lineterminator="\n")
    w.writerow(CSV_HEADER)
    for row in rows:
        w.writerow(_row_fields(row))


def read_csv(src: str | Path | TextIO) -> list[BenchRow]:
    if isinstance(src, (str, Path)):
        with open(src, newline="") as fh:
            return read_csv(fh)
    reader = csv.reader(src)
    header = next(reader, None)
    if header is None or tuple(header) != CSV_HEADER:
        raise BadConfig(f"unexpected CSV header: {header}")
    rows = []
    for rec in reader:
        if not rec:
            continue
        if len(rec) != len(CSV_HEADER):
            raise BadConfig(f"malformed CSV row: {rec}")
        d = dict(zip(CSV_HEADER, rec))
        rows.append(
            BenchRow(
                structure=d["structure"],
                start_depth=int(d["start_depth"]),
                compact_leaves=d["compact_leaves"] == "1",
                depth_annotated=d["depth_annotated"] == "1",
                prepopulate=int(d["prepopulate"]),
                op=d["op"],
                reps=int(d["reps"]),
                elapsed_ns=int(d["elapsed_ns"]),
                visits=int(d["visits"]),
            )
        )
    return rows


@dataclass
class TrendReport:
    checks: list[tuple[str, bool, str]] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(ok for _, ok, _ in self.checks)

    def add(self, name: str, ok: bool, detail: str) -> None:
        self.checks.append((name, ok, detail))

    def lines(self) -> list[str]:
        return [f"{'PASS' if ok else 'FAIL'} {name}: {detail}" for name, ok, detail in self.checks]


def _pick(rows: list[BenchRow], structure: str, k: int) -> BenchRow:
    for r in rows:
        if r.structure != structure or r.prepopulate != k or r.op != "lookup":
            continue
        if structure == "tree" and (r.start_depth != 1 or r.compact_leaves or r.depth_annotated):
            continue
        return r
    raise BadConfig(f"no {structure} lookup row with prepopulate={k}")


def trend_check(rows: Iterable[BenchRow], check_time: bool = False) -> TrendReport:
    """Check linear list growth and logarithmic tree growth between K=100 and K=10000.

    Visit counts are deterministic and always checked; wall time only when
    ``check_time`` is set, with loose factors.
    """
    rows = list(rows)
    picked = {(s, k): _pick(rows, s, k) for s in ("list", "tree") for k in TREND_SIZES}
    report = TrendReport()
    lo, hi = TREND_SIZES[0], TREND_SIZES[-1]

    for k in TREND_SIZES:
        per = picked["list", k].visits_per_rep
        report.add(f"list visits per lookup at K={k}", per == k, f"{per:g} (expected {k})")
        per = picked["tree", k].visits_per_rep
        bound = predicted_max_depth(k, 1)
        report.add(f"tree visits per lookup at K={k}", per <= bound, f"{per:g} (bound {bound})")

    ratio = picked["list", hi].visits_per_rep / picked["list", lo].visits_per_rep
    report.add("list visit growth x100", 99 <= ratio <= 101, f"{ratio:.3f} (expected 99..101)")
    ratio = picked["tree", hi].visits_per_rep / picked["tree", lo].visits_per_rep
    limit = 26 / 12 + 0.1
    report.add("tree visit growth x100", ratio <= limit, f"{ratio:.3f} (limit {limit:.3f})")

    if check_time:
        ratio = picked["list", hi].ns_per_rep / picked["list", lo].ns_per_rep
        report.add("list time growth x100", ratio >= 20, f"{ratio:.1f} (expected >= 20)")
        ratio = picked["tree", hi].ns_per_rep / picked["tree", lo].ns_per_rep
        report.add("tree time growth x100", ratio <= 3, f"{ratio:.2f} (expected <= 3)")
    return report


def demo(count: int = 10) -> list[str]:
    """Renders of a default tree after each insert of ``1..count``."""
    t = OpenEndedTree()
    out = []
    for v in range(1, count + 1):
        t.insert(v)
        out.append(t.render())
    return out
