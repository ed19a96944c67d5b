"""Simple directed graphs on integer vertex sets.

Digraphs here are loopless and carry at most one arc per ordered pair, but a
pair of vertices may be joined by two oppositely directed arcs; such an
anti-parallel pair is a directed cycle of length 2. Vertices are the dense
integers 0..n-1 internally and are presented 1-based at every I/O surface
(text format, CLI, HTTP API).

Text format: first line ``n m``, then m lines ``u v`` with 1-based endpoints,
arcs sorted lexicographically on output.
"""

from __future__ import annotations

from collections.abc import Iterable, Sequence


class DigraphParseError(ValueError):
    """Malformed digraph text; ``line`` is the 1-based offending line number."""

    def __init__(self, line: int, message: str) -> None:
        super().__init__(f"line {line}: {message}")
        self.line = line


class Digraph:
    """An immutable simple digraph on vertices ``{0, ..., n-1}``.

    Instances are frozen after construction and safe to share across
    concurrent tasks; mutating operations (``add_arc``) return new values.
    Both adjacency directions are kept as per-vertex bitmasks, so arc lookup
    is O(1) and neighborhood scans are word-parallel.
    """

    __slots__ = ("_n", "_arcs", "_out", "_in")

    def __init__(self, n: int, arcs: Iterable[tuple[int, int]] = ()) -> None:
        if n < 0:
            raise ValueError(f"vertex count must be nonnegative, got {n}")
        self._n = n
        out = [0] * n
        inc = [0] * n
        arcset: set[tuple[int, int]] = set()
        for u, v in arcs:
            u, v = int(u), int(v)
            self._check_vertex(u, n)
            self._check_vertex(v, n)
            if u == v:
                raise ValueError(f"loop ({u}, {v}) not allowed: digraphs are loopless")
            if (u, v) not in arcset:
                arcset.add((u, v))
                out[u] |= 1 << v
                inc[v] |= 1 << u
        self._arcs = frozenset(arcset)
        self._out = tuple(out)
        self._in = tuple(inc)

    @staticmethod
    def _check_vertex(v: int, n: int) -> None:
        if not 0 <= v < n:
            raise ValueError(f"vertex {v} out of range for {n} vertices")

    # -- basic queries ----------------------------------------------------

    @property
    def n(self) -> int:
        """Number of vertices."""
        return self._n

    @property
    def arcs(self) -> frozenset[tuple[int, int]]:
        """The arc set as ordered pairs."""
        return self._arcs

    @property
    def arc_count(self) -> int:
        return len(self._arcs)

    @property
    def out_masks(self) -> tuple[int, ...]:
        """Per-vertex out-neighborhoods as bitmasks (bit v of ``out_masks[u]``
        set iff the arc u->v is present)."""
        return self._out

    @property
    def in_masks(self) -> tuple[int, ...]:
        """Per-vertex in-neighborhoods as bitmasks."""
        return self._in

    def has_arc(self, u: int, v: int) -> bool:
        self._check_vertex(u, self._n)
        self._check_vertex(v, self._n)
        return bool((self._out[u] >> v) & 1)

    def add_arc(self, u: int, v: int) -> "Digraph":
        """Return a copy with the arc u->v added (idempotent)."""
        self._check_vertex(u, self._n)
        self._check_vertex(v, self._n)
        if u == v:
            raise ValueError(f"loop ({u}, {v}) not allowed: digraphs are loopless")
        if (u, v) in self._arcs:
            return self
        return Digraph(self._n, [*self._arcs, (u, v)])

    def out_neighbors(self, v: int) -> frozenset[int]:
        self._check_vertex(v, self._n)
        return frozenset(_bits(self._out[v]))

    def in_neighbors(self, v: int) -> frozenset[int]:
        self._check_vertex(v, self._n)
        return frozenset(_bits(self._in[v]))

    def neighbors(self, v: int) -> frozenset[int]:
        """Vertices joined to v by an arc in either direction (v excluded)."""
        self._check_vertex(v, self._n)
        return frozenset(_bits(self._out[v] | self._in[v]))

    def closed_neighborhood(self, v: int) -> frozenset[int]:
        """``neighbors(v)`` together with v itself."""
        self._check_vertex(v, self._n)
        return frozenset(_bits(self._out[v] | self._in[v] | (1 << v)))

    def common_neighbors(self, u: int, v: int) -> frozenset[int]:
        """Vertices adjacent (in either direction) to both u and v."""
        self._check_vertex(u, self._n)
        self._check_vertex(v, self._n)
        if u == v:
            raise ValueError("common_neighbors requires two distinct vertices")
        nu = self._out[u] | self._in[u]
        nv = self._out[v] | self._in[v]
        return frozenset(_bits(nu & nv))

    # -- derived digraphs -------------------------------------------------

    def induced(self, vertices: Iterable[int]) -> "Digraph":
        """The subdigraph induced by ``vertices``, relabeled 0..|S|-1.

        Relabeling is the unique order-preserving bijection from the sorted
        members of S onto 0..|S|-1, so results are deterministic.
        """
        members = sorted(set(vertices))
        for v in members:
            self._check_vertex(v, self._n)
        index = {v: i for i, v in enumerate(members)}
        smask = 0
        for v in members:
            smask |= 1 << v
        arcs = [
            (index[u], index[v])
            for u in members
            for v in _bits(self._out[u] & smask)
        ]
        return Digraph(len(members), arcs)

    def contract_pairs(self, pairs: Sequence[tuple[int, int]]) -> "Digraph":
        """Identify each pair, discarding loops and collapsing parallel arcs.

        Pair i becomes vertex i of the result; the arc i->j (i != j) is
        present iff D has an arc from either member of pair i to either
        member of pair j. Pairs must be disjoint two-element sets.
        """
        seen: set[int] = set()
        for a, b in pairs:
            self._check_vertex(a, self._n)
            self._check_vertex(b, self._n)
            if a == b:
                raise ValueError(f"pair ({a}, {b}) must contain two distinct vertices")
            if a in seen or b in seen:
                raise ValueError("pairs must be pairwise disjoint")
            seen.update((a, b))
        k = len(pairs)
        class_masks = [(1 << a) | (1 << b) for a, b in pairs]
        outs = [self._out[a] | self._out[b] for a, b in pairs]
        arcs = [
            (i, j)
            for i in range(k)
            for j in range(k)
            if i != j and outs[i] & class_masks[j]
        ]
        return Digraph(k, arcs)

    # -- structure --------------------------------------------------------

    def is_acyclic(self) -> bool:
        """True iff the digraph has no directed cycle.

        Cycles have length >= 2; an anti-parallel pair counts. Implemented by
        iteratively stripping vertices with no surviving in-arc, so there is
        no recursion-depth hazard.
        """
        remaining = (1 << self._n) - 1
        inm = self._in
        while remaining:
            stripped = 0
            m = remaining
            while m:
                b = m & -m
                m ^= b
                if inm[b.bit_length() - 1] & remaining == 0:
                    stripped |= b
            if not stripped:
                return False
            remaining ^= stripped
        return True

    # -- text format --------------------------------------------------------

    def to_text(self) -> str:
        """Serialize as ``n m`` plus one 1-based ``u v`` line per arc, sorted."""
        lines = [f"{self._n} {len(self._arcs)}"]
        lines.extend(f"{u + 1} {v + 1}" for u, v in sorted(self._arcs))
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "Digraph":
        """Parse the text format; raises DigraphParseError naming the bad line."""
        lines = text.splitlines()
        if not lines or not lines[0].strip():
            raise DigraphParseError(1, "expected header 'n m'")
        header = lines[0].split()
        if len(header) != 2:
            raise DigraphParseError(1, f"expected header 'n m', got {lines[0]!r}")
        try:
            n, m = int(header[0]), int(header[1])
        except ValueError:
            raise DigraphParseError(1, f"expected two integers, got {lines[0]!r}") from None
        if n < 0 or m < 0:
            raise DigraphParseError(1, "n and m must be nonnegative")
        arcs: list[tuple[int, int]] = []
        lineno = 1
        for raw in lines[1:]:
            lineno += 1
            if not raw.strip():
                continue
            parts = raw.split()
            if len(parts) != 2:
                raise DigraphParseError(lineno, f"expected 'u v', got {raw!r}")
            try:
                u, v = int(parts[0]), int(parts[1])
            except ValueError:
                raise DigraphParseError(lineno, f"expected two integers, got {raw!r}") from None
            if not (1 <= u <= n and 1 <= v <= n):
                raise DigraphParseError(lineno, f"vertex out of range 1..{n}: {raw!r}")
            if u == v:
                raise DigraphParseError(lineno, f"loop not allowed: {raw!r}")
            arcs.append((u - 1, v - 1))
        if len(arcs) != m:
            raise DigraphParseError(lineno, f"header promised {m} arcs, found {len(arcs)}")
        return cls(n, arcs)

    # -- value semantics ----------------------------------------------------

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Digraph):
            return NotImplemented
        return self._n == other._n and self._arcs == other._arcs

    def __hash__(self) -> int:
        return hash((self._n, self._arcs))

    def __repr__(self) -> str:
        return f"Digraph(n={self._n}, arcs={sorted(self._arcs)})"


def _bits(mask: int):
    """Yield the indices of the set bits of ``mask`` in ascending order."""
    while mask:
        b = mask & -mask
        yield b.bit_length() - 1
        mask ^= b


def induced_acyclic(in_masks: Sequence[int], members: int) -> bool:
    """True iff the subdigraph induced by the bitmask ``members`` is acyclic.

    Operates directly on in-adjacency bitmasks so hot callers (homomorphism
    fiber checks, acyclic-set search) avoid building Digraph values.
    """
    remaining = members
    while remaining:
        stripped = 0
        m = remaining
        while m:
            b = m & -m
            m ^= b
            if in_masks[b.bit_length() - 1] & remaining == 0:
                stripped |= b
        if not stripped:
            return False
        remaining ^= stripped
    return True
