"""The D(n, p) random digraph model.

Each of the n(n-1) ordered vertex pairs independently receives an arc with
probability p. Sampling is reproducible: a :class:`Seed` addresses an
independent random stream, and the uniform variates are consumed in a fixed,
documented order (lexicographic over ordered pairs), so identical
``(n, p, seed)`` yields a bit-identical digraph under any parallelism.
"""

from __future__ import annotations

import math
from collections.abc import Iterator
from dataclasses import dataclass

import numpy as np

from .digraph import Digraph

MAX_ENUMERATION_N = 4


@dataclass(frozen=True, slots=True)
class Seed:
    """Address of a reproducible random stream.

    ``(master, stream)`` maps to a generator as a pure function: the stream
    is reached directly through a numpy ``SeedSequence`` spawn key, without
    generating earlier streams, and distinct streams are statistically
    independent by construction of the underlying generator.
    """

    master: int
    stream: int = 0

    def __post_init__(self) -> None:
        if not 0 <= self.master < 2**64:
            raise ValueError(f"master seed must be a 64-bit unsigned integer, got {self.master}")
        if self.stream < 0:
            raise ValueError(f"stream index must be nonnegative, got {self.stream}")

    def generator(self) -> np.random.Generator:
        return np.random.default_rng(
            np.random.SeedSequence(entropy=self.master, spawn_key=(self.stream,))
        )

    def derive(self, stream: int) -> "Seed":
        """The sibling seed addressing ``stream`` under the same master."""
        return Seed(self.master, stream)


def _check_probability(p: float) -> None:
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"arc probability must lie in [0, 1], got {p}")


def draw_adjacency(rng: np.random.Generator, n: int, p: float) -> np.ndarray:
    """Draw one D(n, p) adjacency matrix from an already-open generator.

    One uniform variate is consumed per ordered pair, in lexicographic order
    (u ascending, then v ascending with v != u); the arc is present iff the
    variate is < p. This fixed consumption order is the seed contract, and
    callers may keep drawing from ``rng`` afterwards (e.g. to pick subsets).
    """
    if n < 0:
        raise ValueError(f"vertex count must be nonnegative, got {n}")
    _check_probability(p)
    m = np.zeros((n, n), dtype=bool)
    if n > 1:
        draws = rng.random((n, n - 1))
        j = np.arange(n - 1)[None, :]
        rows = np.arange(n)[:, None]
        cols = np.where(j < rows, j, j + 1)
        m[rows, cols] = draws < p
    return m


def sample_adjacency(n: int, p: float, seed: Seed) -> np.ndarray:
    """Sample D(n, p) as a boolean adjacency matrix (entry [u, v] = arc u->v)."""
    return draw_adjacency(seed.generator(), n, p)


def sample(n: int, p: float, seed: Seed) -> Digraph:
    """Sample a digraph from D(n, p); identical inputs give identical output."""
    m = sample_adjacency(n, p, seed)
    us, vs = np.nonzero(m)
    return Digraph(n, zip(us.tolist(), vs.tolist()))


def probability_mass(d: Digraph, p: float) -> float:
    """P(D = d) under D(n, p): p^a (1-p)^(n(n-1)-a) with a = |A(d)|.

    Underflows to 0.0 for large n; use :func:`log_probability_mass` there.
    """
    _check_probability(p)
    a = d.arc_count
    absent = d.n * (d.n - 1) - a
    return p**a * (1.0 - p) ** absent


def log_probability_mass(d: Digraph, p: float) -> float:
    """Natural log of :func:`probability_mass`, with 0*log(0) read as 0."""
    _check_probability(p)
    a = d.arc_count
    absent = d.n * (d.n - 1) - a
    if a > 0 and p == 0.0:
        return -math.inf
    if absent > 0 and p == 1.0:
        return -math.inf
    out = 0.0
    if a > 0:
        out += a * math.log(p)
    if absent > 0:
        out += absent * math.log1p(-p)
    return out


def enumerate_all(n: int) -> Iterator[Digraph]:
    """Every digraph on n vertices exactly once, in a deterministic order.

    There are 2^(n(n-1)) of them, so n <= 4 is enforced (4096 at n = 4).
    Ordered pairs are indexed lexicographically; digraph k has arc i present
    iff bit i of k is set, for k = 0 .. 2^(n(n-1)) - 1.
    """
    if n < 0:
        raise ValueError(f"vertex count must be nonnegative, got {n}")
    if n > MAX_ENUMERATION_N:
        raise ValueError(
            f"refusing to enumerate digraphs on {n} vertices: "
            f"2^{n * (n - 1)} of them; the cap is n <= {MAX_ENUMERATION_N}"
        )
    pairs = [(u, v) for u in range(n) for v in range(n) if u != v]
    for code in range(1 << len(pairs)):
        yield Digraph(n, (pairs[i] for i in range(len(pairs)) if (code >> i) & 1))
