"""Experiment configuration and the hypothesis-window bookkeeping.

The asymptotic hypotheses behind the verified claims restrict p to the
window (n^(-1/9) log^2 n, 1 - n^(-1/9) log^2 n) and use the auxiliary sizes
k0 = n^(1/9) log^2 n / 2 and k1 = n^(1/9) log^2 n (natural log). Apart from
the degenerate n <= 2, the window's lower bound exceeds 1 until
astronomically large n, i.e. the window is empty at any n reachable on a
desk; experiment reports therefore carry an honest ``window_satisfied``
flag instead of pretending the hypotheses hold, and the k-experiments
report k0/k1 next to the k actually used.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field, fields, replace
from pathlib import Path

from ..homomorphism import DEFAULT_BUDGET

DEFAULT_RATIOS = (0.1, 0.2, 0.5, 1.0, 2.0, 5.0, 10.0)


def window_bounds(n: int) -> tuple[float, float]:
    """The (lower, upper) bounds of the hypothesis window on p."""
    if n < 1:
        raise ValueError(f"window is defined for n >= 1, got {n}")
    lo = n ** (-1.0 / 9.0) * math.log(n) ** 2
    return lo, 1.0 - lo


def window_satisfied(n: int, p: float) -> bool:
    lo, hi = window_bounds(n)
    return lo < p < hi


def reference_k0(n: int) -> float:
    """k0(n) = n^(1/9) log^2 n / 2."""
    return n ** (1.0 / 9.0) * math.log(n) ** 2 / 2.0


def reference_k1(n: int) -> float:
    """k1(n) = n^(1/9) log^2 n."""
    return n ** (1.0 / 9.0) * math.log(n) ** 2


@dataclass(frozen=True, slots=True)
class ExperimentSpec:
    """Seeded Monte Carlo configuration, shared by all experiment harnesses.

    ``ns``/``ps`` span the cell grid; trial j of cell i draws from stream
    ``i * trials + j`` under ``seed``, so results are independent of worker
    count and any single cell can be replayed in isolation.
    """

    experiment: str
    ns: tuple[int, ...]
    ps: tuple[float, ...]
    trials: int
    seed: int
    k: int | None = None
    budget: int = DEFAULT_BUDGET
    pairs_per_trial: int = 100
    ratios: tuple[float, ...] = field(default=DEFAULT_RATIOS)
    binomial_n: int | None = None
    tail_points: int = 20

    def __post_init__(self) -> None:
        if self.trials < 1:
            raise ValueError(f"trials must be >= 1, got {self.trials}")
        if not 0 <= self.seed < 2**64:
            raise ValueError("seed must be a 64-bit unsigned integer")
        for n in self.ns:
            if n < 0:
                raise ValueError(f"vertex counts must be nonnegative, got {n}")
        for p in self.ps:
            if not 0.0 <= p <= 1.0:
                raise ValueError(f"probabilities must lie in [0, 1], got {p}")
        if self.budget < 1:
            raise ValueError(f"budget must be positive, got {self.budget}")
        if self.pairs_per_trial < 1:
            raise ValueError("pairs_per_trial must be positive")
        if self.tail_points < 2:
            raise ValueError("tail grid needs at least 2 points")

    def stream(self, cell_index: int, trial: int) -> int:
        """The RNG stream index of one trial of one cell."""
        return cell_index * self.trials + trial

    def to_dict(self) -> dict:
        out: dict = {}
        for f in fields(self):
            value = getattr(self, f.name)
            out[f.name] = list(value) if isinstance(value, tuple) else value
        return out

    @classmethod
    def from_dict(cls, data: dict) -> "ExperimentSpec":
        known = {f.name for f in cls.__dataclass_fields__.values()}  # type: ignore[attr-defined]
        unknown = set(data) - known
        if unknown:
            raise ValueError(f"unknown experiment config keys: {sorted(unknown)}")
        kwargs = dict(data)
        for key in ("ns", "ps", "ratios"):
            if key in kwargs and kwargs[key] is not None:
                kwargs[key] = tuple(kwargs[key])
        return cls(**kwargs)

    @classmethod
    def from_json(cls, path: str | Path) -> "ExperimentSpec":
        with open(path, encoding="utf-8") as fh:
            return cls.from_dict(json.load(fh))

    def override(self, **kwargs) -> "ExperimentSpec":
        """Copy with the given fields replaced (CLI flags beat config files)."""
        return replace(self, **kwargs)
