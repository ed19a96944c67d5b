"""Trial scheduling and CSV rendering for the experiment harnesses.

Trials are embarrassingly parallel: each derives its own random stream from
(master seed, stream index) and touches nothing shared. Workers only change
who computes a trial, never its input, and results are folded in trial
order, so a run's CSV bytes are identical for 1 worker and W workers.
"""

from __future__ import annotations

import csv
import io
from collections.abc import Callable, Sequence
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass


def map_trials(fn: Callable, args: Sequence, workers: int = 1) -> list:
    """Apply ``fn`` to every args tuple, preserving order.

    ``fn`` must be a module-level function (workers are separate processes).
    """
    if workers <= 1 or len(args) <= 1:
        return [fn(a) for a in args]
    chunk = max(1, len(args) // (workers * 4))
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, args, chunksize=chunk))


def format_value(value) -> str:
    """Canonical CSV scalar rendering: shortest round-trip floats, lowercase bools."""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return repr(value)
    return str(value)


@dataclass(frozen=True, slots=True)
class ExperimentTable:
    """One experiment's output: a documented header and plain-scalar rows."""

    name: str
    header: tuple[str, ...]
    rows: tuple[tuple, ...]

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(self.header)
        for row in self.rows:
            writer.writerow([format_value(v) for v in row])
        return buf.getvalue()

    def column(self, name: str) -> list:
        i = self.header.index(name)
        return [row[i] for row in self.rows]
