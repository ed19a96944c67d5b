"""Mergeable summary statistics for Monte Carlo trials.

Summaries combine associatively (exactly for count/min/max, numerically
stably for mean/variance via the pairwise update), so per-trial partials can
be computed in parallel workers and folded in trial order to reproduce the
single-pass result.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np


@dataclass(frozen=True, slots=True)
class StatSummary:
    """Count, mean, extremes, and scatter of a sample, plus a reference value.

    ``m2`` is the sum of squared deviations from the mean; ``reference`` is
    the closed-form expectation the sample is compared against (attached by
    the experiment harness, never derived from the sample itself).
    """

    count: int
    mean: float
    minimum: float
    maximum: float
    m2: float
    reference: float | None = None

    @classmethod
    def empty(cls) -> "StatSummary":
        return cls(0, 0.0, math.inf, -math.inf, 0.0)

    @classmethod
    def from_values(cls, values: np.ndarray, reference: float | None = None) -> "StatSummary":
        arr = np.asarray(values, dtype=np.float64)
        if arr.size == 0:
            return replace(cls.empty(), reference=reference)
        mean = float(arr.mean())
        m2 = float(((arr - mean) ** 2).sum())
        return cls(int(arr.size), mean, float(arr.min()), float(arr.max()), m2, reference)

    def merge(self, other: "StatSummary") -> "StatSummary":
        """Summary of the concatenated samples (Chan's pairwise update)."""
        if self.reference is not None and other.reference is not None:
            if self.reference != other.reference:
                raise ValueError("cannot merge summaries with different reference values")
        reference = self.reference if self.reference is not None else other.reference
        if self.count == 0:
            return replace(other, reference=reference)
        if other.count == 0:
            return replace(self, reference=reference)
        n = self.count + other.count
        delta = other.mean - self.mean
        mean = self.mean + delta * (other.count / n)
        m2 = self.m2 + other.m2 + delta * delta * (self.count * other.count / n)
        return StatSummary(
            n,
            mean,
            min(self.minimum, other.minimum),
            max(self.maximum, other.maximum),
            m2,
            reference,
        )

    @property
    def stddev(self) -> float:
        """Sample standard deviation (n-1 denominator); 0 for count < 2."""
        if self.count < 2:
            return 0.0
        return math.sqrt(self.m2 / (self.count - 1))

    @property
    def rel_deviation(self) -> float:
        """(mean - reference) / reference; 0 when both vanish."""
        if self.reference is None:
            raise ValueError("summary has no reference value")
        if self.reference == 0.0:
            return 0.0 if self.mean == 0.0 else math.inf
        return (self.mean - self.reference) / self.reference


def fold(parts: list[StatSummary], reference: float | None = None) -> StatSummary:
    """Left-fold of per-trial summaries in trial order.

    The fold order is fixed so the result is byte-identical however the
    parts were computed (sequentially or by any number of workers).
    """
    acc = StatSummary.empty()
    for part in parts:
        acc = acc.merge(part)
    if reference is not None:
        acc = replace(acc, reference=reference)
    return acc
