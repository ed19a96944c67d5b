"""Maximum density m(D) and the derived containment threshold n^(-1/m(C)).

m(D) is the maximum of a_C / v_C over nonempty subdigraphs C of D. It
suffices to scan induced subdigraphs: any subdigraph C on vertex set S
satisfies a_C <= arcs(D[S]) with v_C = |S|, so the induced subdigraph on S
does at least as well and the maximum is attained on induced subdigraphs.
Both solvers below use that reduction.

Densities are exact rationals throughout; they are never compared in
floating point, because ties at the search guess are exactly the decision
boundary of the min-cut feasibility test.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction

from .digraph import Digraph, _bits

BRUTE_FORCE_MAX_N = 20


@dataclass(frozen=True, slots=True)
class DensityResult:
    """A maximum-density certificate: arc and vertex counts of a witness set.

    ``numerator``/``denominator`` are the unreduced arc and vertex counts of
    the induced subdigraph on ``witness``; ``value`` is the exact rational.
    """

    numerator: int
    denominator: int
    witness: tuple[int, ...]

    @property
    def value(self) -> Fraction:
        return Fraction(self.numerator, self.denominator)

    def __str__(self) -> str:
        v = self.value
        return f"{v.numerator}/{v.denominator}"


def _mask_members(mask: int) -> tuple[int, ...]:
    return tuple(_bits(mask))


def max_density_bruteforce(d: Digraph) -> DensityResult:
    """Exact m(D) by scanning all nonempty vertex subsets (n <= 20).

    Ties are broken toward the smallest witness cardinality, then the
    lexicographically least sorted member tuple, so output is deterministic.
    Subsets are visited in Gray-code order with incremental arc counts.
    """
    n = d.n
    if n == 0:
        raise ValueError("maximum density is undefined on the empty digraph")
    if n > BRUTE_FORCE_MAX_N:
        raise ValueError(
            f"refusing brute force on {n} vertices (2^{n} subsets); cap is {BRUTE_FORCE_MAX_N}"
        )
    out, inc = d.out_masks, d.in_masks
    best_num, best_size, best_mask = 0, 1, 1  # subset {0}
    cur = 0
    arcs = 0
    for i in range(1, 1 << n):
        b = i & -i
        v = b.bit_length() - 1
        if cur & b:
            cur ^= b
            arcs -= ((out[v] & cur).bit_count() + (inc[v] & cur).bit_count())
        else:
            arcs += ((out[v] & cur).bit_count() + (inc[v] & cur).bit_count())
            cur ^= b
        size = cur.bit_count()
        lhs = arcs * best_size
        rhs = best_num * size
        if lhs > rhs:
            best_num, best_size, best_mask = arcs, size, cur
        elif lhs == rhs:
            if size < best_size or (
                size == best_size
                and cur != best_mask
                and _mask_members(cur) < _mask_members(best_mask)
            ):
                best_num, best_size, best_mask = arcs, size, cur
    return DensityResult(best_num, best_size, _mask_members(best_mask))


class _Dinic:
    """Max-flow on integer capacities; small networks, exact arithmetic."""

    def __init__(self, nodes: int) -> None:
        self.adj: list[list[int]] = [[] for _ in range(nodes)]
        self.to: list[int] = []
        self.cap: list[int] = []

    def add_edge(self, a: int, b: int, capacity: int) -> None:
        self.adj[a].append(len(self.to))
        self.to.append(b)
        self.cap.append(capacity)
        self.adj[b].append(len(self.to))
        self.to.append(a)
        self.cap.append(0)

    def max_flow(self, s: int, t: int) -> int:
        flow = 0
        while True:
            level = self._levels(s)
            if level[t] < 0:
                return flow
            it = [0] * len(self.adj)
            while True:
                pushed = self._augment(s, t, None, level, it)
                if pushed == 0:
                    break
                flow += pushed

    def _levels(self, s: int) -> list[int]:
        level = [-1] * len(self.adj)
        level[s] = 0
        q = deque([s])
        while q:
            a = q.popleft()
            for e in self.adj[a]:
                b = self.to[e]
                if self.cap[e] > 0 and level[b] < 0:
                    level[b] = level[a] + 1
                    q.append(b)
        return level

    def _augment(self, a: int, t: int, limit: int | None, level, it) -> int:
        # Path length in the density network is at most 3, so recursion is safe.
        if a == t:
            return limit if limit is not None else 0
        while it[a] < len(self.adj[a]):
            e = self.adj[a][it[a]]
            b = self.to[e]
            if self.cap[e] > 0 and level[b] == level[a] + 1:
                avail = self.cap[e] if limit is None else min(limit, self.cap[e])
                pushed = self._augment(b, t, avail, level, it)
                if pushed > 0:
                    self.cap[e] -= pushed
                    self.cap[e ^ 1] += pushed
                    return pushed
            it[a] += 1
        return 0

    def reachable_from(self, s: int) -> set[int]:
        """Source side of the min cut, read off the final residual graph."""
        seen = {s}
        q = deque([s])
        while q:
            a = q.popleft()
            for e in self.adj[a]:
                b = self.to[e]
                if self.cap[e] > 0 and b not in seen:
                    seen.add(b)
                    q.append(b)
        return seen


def _denser_than(d: Digraph, pairs: list[tuple[int, int, int]], total: int, guess: Fraction) -> int | None:
    """Bitmask of a vertex set with density strictly above ``guess``, or None.

    Feasibility is the classic pair-vertex cut network: source -> pair node
    (capacity w_e * beta), pair -> its two endpoints (infinite), vertex ->
    sink (capacity alpha), with guess = alpha/beta taken in lowest terms.
    The min cut equals W*beta - max_S (beta*arcs(S) - alpha*|S|), so max
    flow < W*beta certifies a strictly denser set, recovered as the vertex
    nodes on the source side of the residual graph.
    """
    alpha, beta = guess.numerator, guess.denominator
    n = d.n
    npairs = len(pairs)
    net = _Dinic(2 + npairs + n)
    source, sink = 0, 1
    inf = total * beta + alpha * n + 1
    for idx, (u, v, w) in enumerate(pairs):
        node = 2 + idx
        net.add_edge(source, node, w * beta)
        net.add_edge(node, 2 + npairs + u, inf)
        net.add_edge(node, 2 + npairs + v, inf)
    for v in range(n):
        net.add_edge(2 + npairs + v, sink, alpha)
    flow = net.max_flow(source, sink)
    if flow >= total * beta:
        return None
    side = net.reachable_from(source)
    mask = 0
    for v in range(n):
        if 2 + npairs + v in side:
            mask |= 1 << v
    return mask


def max_density_exact(d: Digraph) -> DensityResult:
    """Exact m(D) for any n, via binary search with min-cut feasibility tests.

    Distinct subset densities are rationals with denominators <= n and so
    differ by at least 1/n^2; once the bracket [achieved, infeasible) is
    narrower than that, the achieved density is the maximum. The witness may
    differ from the brute-force one when several sets attain m(D); the value
    always agrees exactly.
    """
    n = d.n
    if n == 0:
        raise ValueError("maximum density is undefined on the empty digraph")
    pairs = []
    for u in range(n):
        for v in range(u + 1, n):
            w = ((d.out_masks[u] >> v) & 1) + ((d.in_masks[u] >> v) & 1)
            if w:
                pairs.append((u, v, w))
    total = d.arc_count
    lo = Fraction(0)
    lo_mask = 1  # vertex {0} achieves density 0
    if total == 0:
        return DensityResult(0, 1, (0,))
    hi = Fraction(n - 1)
    gap = Fraction(1, n * n)
    out, inc = d.out_masks, d.in_masks
    while hi - lo >= gap:
        mid = (lo + hi) / 2
        found = _denser_than(d, pairs, total, mid)
        if found is None:
            hi = mid
        else:
            members = _mask_members(found)
            arcs = sum((out[v] & found).bit_count() for v in members)
            lo = Fraction(arcs, len(members))
            lo_mask = found
    members = _mask_members(lo_mask)
    arcs = sum((out[v] & lo_mask).bit_count() for v in members)
    return DensityResult(arcs, len(members), members)


def threshold_probability(c: Digraph, n: int) -> float:
    """The containment-threshold scale n^(-1/m(C)) for a pattern C.

    C must carry at least one arc (m(C) > 0); n >= 2.
    """
    if c.arc_count < 1:
        raise ValueError("threshold requires a pattern with at least one arc")
    if n < 2:
        raise ValueError(f"threshold scale needs n >= 2, got {n}")
    m = max_density_exact(c).value
    return float(n) ** (-1.0 / float(m))
