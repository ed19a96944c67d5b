"""Acyclic homomorphisms: verification, search, and core certification.

A vertex map f from digraph D to digraph C is an acyclic homomorphism when
(i) every arc uv of D has f(u) = f(v) or f(u)f(v) an arc of C, and (ii) the
preimage (fiber) of every target vertex induces an acyclic subdigraph of D.
A digraph is a core when its only acyclic self-homomorphisms are
automorphisms.

Core certification here searches for a non-injective acyclic endomorphism.
That is equivalent to the definition for finite digraphs: an injective
acyclic endomorphism of a finite digraph is automatically an automorphism.
Injectivity on a finite vertex set forces bijectivity, rules out the
"images merge" branch of (i) so every arc maps to an arc, and a bijection
carrying the finite arc set into itself must carry it onto itself, so the
inverse preserves arcs as well; fibers are singletons, making (ii) vacuous.
The equivalence is exercised exhaustively against the definition in tests.

All searches charge a budget measured in node expansions, where one
expansion is one committed variable assignment (including assignments
forced by propagation). Exhausting the budget is reported as its own
outcome, never silently coerced to "not found".
"""

from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass
from enum import Enum

from .digraph import Digraph, induced_acyclic

DEFAULT_BUDGET = 10**8


@dataclass(frozen=True, slots=True)
class VertexMap:
    """A total map between vertex sets; ``image[v]`` is the image of v."""

    source_size: int
    target_size: int
    image: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.image) != self.source_size:
            raise ValueError(
                f"image has {len(self.image)} entries for {self.source_size} source vertices"
            )
        for v, t in enumerate(self.image):
            if not 0 <= t < self.target_size:
                raise ValueError(f"image of {v} is {t}, outside 0..{self.target_size - 1}")

    def __call__(self, v: int) -> int:
        return self.image[v]

    def is_injective(self) -> bool:
        return len(set(self.image)) == self.source_size

    def fibers(self) -> dict[int, tuple[int, ...]]:
        """Nonempty preimages, keyed by target vertex."""
        out: dict[int, list[int]] = {}
        for v, t in enumerate(self.image):
            out.setdefault(t, []).append(v)
        return {t: tuple(vs) for t, vs in out.items()}

    @classmethod
    def identity(cls, n: int) -> "VertexMap":
        return cls(n, n, tuple(range(n)))

    @classmethod
    def constant(cls, source_size: int, target_size: int, t: int) -> "VertexMap":
        return cls(source_size, target_size, (t,) * source_size)


@dataclass(frozen=True, slots=True)
class SearchResult:
    """Outcome of a budgeted search.

    ``mapping`` is a verified witness when found. With no witness,
    ``exhausted`` distinguishes a definitive "none exists" (the space was
    fully swept, possibly by a pigeonhole argument) from a budget stop.
    """

    mapping: VertexMap | None
    exhausted: bool
    nodes_expanded: int

    @property
    def found(self) -> bool:
        return self.mapping is not None

    @property
    def budget_exceeded(self) -> bool:
        return self.mapping is None and not self.exhausted


class CoreStatus(Enum):
    CORE = "core"
    NOT_CORE = "not_core"
    UNKNOWN = "unknown"


@dataclass(frozen=True, slots=True)
class CoreVerdict:
    """Certification outcome; ``witness`` is present exactly for NOT_CORE."""

    status: CoreStatus
    witness: VertexMap | None
    budget_spent: int

    @property
    def is_core(self) -> bool:
        return self.status is CoreStatus.CORE


def _check_dimensions(d: Digraph, c: Digraph, rho: VertexMap) -> None:
    if rho.source_size != d.n or rho.target_size != c.n:
        raise ValueError(
            f"map dimensions {rho.source_size}->{rho.target_size} do not match "
            f"digraphs {d.n}->{c.n}"
        )


def verify_acyclic_hom(d: Digraph, c: Digraph, rho: VertexMap) -> bool:
    """Check conditions (i) and (ii) directly against their definitions."""
    _check_dimensions(d, c, rho)
    img = rho.image
    cout = c.out_masks
    for u, v in d.arcs:
        fu, fv = img[u], img[v]
        if fu != fv and not (cout[fu] >> fv) & 1:
            return False
    fibers = [0] * c.n
    for v, t in enumerate(img):
        fibers[t] |= 1 << v
    din = d.in_masks
    for mask in fibers:
        if mask and not induced_acyclic(din, mask):
            return False
    return True


def is_automorphism(d: Digraph, rho: VertexMap) -> bool:
    """True iff rho is a bijective self-map and rho, rho^-1 both preserve arcs."""
    if rho.source_size != d.n or rho.target_size != d.n:
        raise ValueError(f"automorphism check needs a self-map on {d.n} vertices")
    img = rho.image
    if len(set(img)) != d.n:
        return False
    out = d.out_masks
    for u, v in d.arcs:
        if not (out[img[u]] >> img[v]) & 1:
            return False
    inv = [0] * d.n
    for v, t in enumerate(img):
        inv[t] = v
    for u, v in d.arcs:
        if not (out[inv[u]] >> inv[v]) & 1:
            return False
    return True


class _BudgetExhausted(Exception):
    pass


class _HomSearch:
    """Backtracking search for acyclic homomorphisms D -> C.

    Variables are disjoint groups of source vertices constrained to share an
    image: all singletons for the plain search, or one fused pair (the
    merged vertices) plus singletons for the non-injective endomorphism
    search. Forward checking intersects neighbor domains with the allowed
    images for each arc direction; domains forced to a single value are
    assigned immediately (unit propagation); fiber acyclicity is rechecked
    on the touched fiber only. Variable order is minimum-remaining-values,
    optionally forcing one variable to the top; value order is ascending.
    The search is exhaustive when it terminates without a hit.
    """

    def __init__(
        self,
        d: Digraph,
        c: Digraph,
        groups: Sequence[tuple[int, ...]],
        budget: int,
        force_first: int | None = None,
    ) -> None:
        self.ns = d.n
        self.nt = c.n
        self.d_in = d.in_masks
        self.groups = list(groups)
        self.nv = len(self.groups)
        self.force_first = force_first
        self.limit = budget
        self.nodes = 0

        cout, cin = c.out_masks, c.in_masks
        self.allow_out = [(1 << t) | cout[t] for t in range(self.nt)]
        self.allow_in = [(1 << t) | cin[t] for t in range(self.nt)]

        var_of = [0] * self.ns
        self.vmask = [0] * self.nv
        self.multi = [len(g) > 1 for g in self.groups]
        for i, g in enumerate(self.groups):
            for v in g:
                var_of[v] = i
                self.vmask[i] |= 1 << v

        # Per ordered variable pair: does some arc run group a -> group b,
        # does one run b -> a, and is there an anti-parallel pair between
        # them (which forbids a shared image outright: the fiber would
        # contain a 2-cycle).
        table: dict[tuple[int, int], list[bool]] = {}
        dout = d.out_masks
        for u, v in d.arcs:
            a, b = var_of[u], var_of[v]
            if a == b:
                continue
            two = bool((dout[v] >> u) & 1)
            for key, slot in (((a, b), 0), ((b, a), 1)):
                entry = table.setdefault(key, [False, False, False])
                entry[slot] = True
                entry[2] = entry[2] or two
        self.cons: list[list[tuple[int, bool, bool, bool]]] = [[] for _ in range(self.nv)]
        for (a, b), (fwd, bwd, two) in table.items():
            self.cons[a].append((b, fwd, bwd, two))

        full = (1 << self.nt) - 1
        self.dom = [full] * self.nv
        self.assigned: list[int | None] = [None] * self.nv
        self.fiber = [0] * self.nt
        self.unassigned = self.nv
        self.trail: list[tuple] = []

    def run(self) -> tuple[VertexMap | None, bool, int]:
        """Returns (mapping, exhausted, nodes_expanded)."""
        try:
            found = self._search()
        except _BudgetExhausted:
            return None, False, self.nodes
        if not found:
            return None, True, self.nodes
        image = [0] * self.ns
        for i, g in enumerate(self.groups):
            t = self.assigned[i]
            assert t is not None
            for v in g:
                image[v] = t
        return VertexMap(self.ns, self.nt, tuple(image)), False, self.nodes

    def _search(self) -> bool:
        if self.unassigned == 0:
            return True
        var = self._pick()
        candidates = self.dom[var]
        while candidates:
            b = candidates & -candidates
            candidates ^= b
            mark = len(self.trail)
            if self._commit(var, b.bit_length() - 1) and self._search():
                return True
            self._unwind(mark)
        return False

    def _pick(self) -> int:
        ff = self.force_first
        if ff is not None and self.assigned[ff] is None:
            return ff
        best = -1
        best_count = self.nt + 1
        for x in range(self.nv):
            if self.assigned[x] is None:
                cnt = self.dom[x].bit_count()
                if cnt < best_count:
                    best_count = cnt
                    best = x
                    if cnt <= 1:
                        break
        return best

    def _commit(self, var: int, t: int) -> bool:
        """Assign var -> t plus all forced consequences; False on dead end."""
        trail = self.trail
        queue = [(var, t)]
        while queue:
            a, ta = queue.pop()
            cur = self.assigned[a]
            if cur is not None:
                if cur != ta:
                    return False
                continue
            if not (self.dom[a] >> ta) & 1:
                return False
            self.nodes += 1
            if self.nodes >= self.limit:
                raise _BudgetExhausted
            old_fiber = self.fiber[ta]
            new_fiber = old_fiber | self.vmask[a]
            if (old_fiber or self.multi[a]) and not induced_acyclic(self.d_in, new_fiber):
                return False
            self.assigned[a] = ta
            self.fiber[ta] = new_fiber
            self.unassigned -= 1
            trail.append((0, a, old_fiber, ta))
            for b, fwd, bwd, two in self.cons[a]:
                if self.assigned[b] is not None:
                    continue
                m = self.dom[b]
                if fwd:
                    m &= self.allow_out[ta]
                if bwd:
                    m &= self.allow_in[ta]
                if two:
                    m &= ~(1 << ta)
                old = self.dom[b]
                if m != old:
                    trail.append((1, b, old, 0))
                    self.dom[b] = m
                    if m == 0:
                        return False
                    if m & (m - 1) == 0:
                        queue.append((b, m.bit_length() - 1))
        return True

    def _unwind(self, mark: int) -> None:
        trail = self.trail
        while len(trail) > mark:
            kind, var, old, t = trail.pop()
            if kind == 0:
                self.assigned[var] = None
                self.fiber[t] = old
                self.unassigned += 1
            else:
                self.dom[var] = old


def find_acyclic_hom(d: Digraph, c: Digraph, budget: int = DEFAULT_BUDGET) -> SearchResult:
    """Search for any acyclic homomorphism D -> C.

    A returned map always verifies; "not found" is only reported after an
    exhaustive sweep of the assignment space.
    """
    if d.n == 0:
        return SearchResult(VertexMap(0, c.n, ()), True, 0)
    groups = [(v,) for v in range(d.n)]
    mapping, exhausted, nodes = _HomSearch(d, c, groups, budget).run()
    return SearchResult(mapping, exhausted, nodes)


def find_noninjective_endomorphism(d: Digraph, budget: int = DEFAULT_BUDGET) -> SearchResult:
    """Search for an acyclic endomorphism with some fiber of size >= 2.

    The top branching level is the merged pair (x, y): each candidate pair
    is fused into a single search variable assigned first, so its image z
    is branched before anything else. Pairs with the largest common
    neighborhood are tried first (merging constrains the neighborhoods of x
    and y into one closed neighborhood, so high-degree merges fail fastest
    in dense digraphs), and anti-parallel pairs are skipped outright: their
    shared fiber would contain a 2-cycle.
    """
    n = d.n
    if n < 2:
        return SearchResult(None, True, 0)
    out, inc = d.out_masks, d.in_masks
    order = []
    for x in range(n):
        nx = out[x] | inc[x]
        for y in range(x + 1, n):
            if (out[x] >> y) & 1 and (out[y] >> x) & 1:
                continue
            common = (nx & (out[y] | inc[y])).bit_count()
            order.append((-common, x, y))
    order.sort()
    rest = list(range(n))
    total = 0
    for _, x, y in order:
        groups = [(x, y)] + [(v,) for v in rest if v != x and v != y]
        engine = _HomSearch(d, d, groups, budget - total, force_first=0)
        mapping, exhausted, nodes = engine.run()
        total += nodes
        if mapping is not None:
            return SearchResult(mapping, False, total)
        if not exhausted:
            return SearchResult(None, False, total)
    return SearchResult(None, True, total)


def is_core(d: Digraph, budget: int = DEFAULT_BUDGET) -> CoreVerdict:
    """Certify whether D is a core.

    CORE means the non-injective endomorphism search swept its whole space
    empty; NOT_CORE carries a re-verified witness; UNKNOWN propagates a
    budget stop and is never folded into either side.
    """
    result = find_noninjective_endomorphism(d, budget)
    if result.mapping is not None:
        witness = result.mapping
        if witness.is_injective() or not verify_acyclic_hom(d, d, witness):
            raise RuntimeError("endomorphism search produced an invalid witness")
        return CoreVerdict(CoreStatus.NOT_CORE, witness, result.nodes_expanded)
    if result.exhausted:
        return CoreVerdict(CoreStatus.CORE, None, result.nodes_expanded)
    return CoreVerdict(CoreStatus.UNKNOWN, None, result.nodes_expanded)


class _EmbedSearch:
    """Injective arc-preserving embedding of a pattern into a host digraph.

    Plain subdigraph containment: arcs of the pattern must map to arcs of
    the host, non-arcs are unconstrained (non-induced semantics). Degree
    prefiltering, forward checking, and MRV as in _HomSearch.
    """

    def __init__(self, host: Digraph, pattern: Digraph, budget: int) -> None:
        self.host = host
        self.pattern = pattern
        self.nh = host.n
        self.np = pattern.n
        self.limit = budget
        self.nodes = 0
        hout, hin = host.out_masks, host.in_masks
        pout, pin = pattern.out_masks, pattern.in_masks
        host_deg = [(hout[a].bit_count(), hin[a].bit_count()) for a in range(self.nh)]
        self.dom = []
        for u in range(self.np):
            od, idg = pout[u].bit_count(), pin[u].bit_count()
            mask = 0
            for a in range(self.nh):
                if host_deg[a][0] >= od and host_deg[a][1] >= idg:
                    mask |= 1 << a
            self.dom.append(mask)
        self.assigned: list[int | None] = [None] * self.np
        self.unassigned = self.np
        self.trail: list[tuple[int, int]] = []

    def run(self) -> tuple[VertexMap | None, bool, int]:
        try:
            found = self._search()
        except _BudgetExhausted:
            return None, False, self.nodes
        if not found:
            return None, True, self.nodes
        image = tuple(self.assigned[u] for u in range(self.np))  # type: ignore[misc]
        return VertexMap(self.np, self.nh, image), False, self.nodes

    def _search(self) -> bool:
        if self.unassigned == 0:
            return True
        var = self._pick()
        candidates = self.dom[var]
        while candidates:
            b = candidates & -candidates
            candidates ^= b
            mark = len(self.trail)
            if self._commit(var, b.bit_length() - 1) and self._search():
                return True
            self._unwind(mark)
        return False

    def _pick(self) -> int:
        best = -1
        best_count = self.nh + 1
        for u in range(self.np):
            if self.assigned[u] is None:
                cnt = self.dom[u].bit_count()
                if cnt < best_count:
                    best_count = cnt
                    best = u
                    if cnt <= 1:
                        break
        return best

    def _commit(self, var: int, a: int) -> bool:
        if not (self.dom[var] >> a) & 1:
            return False
        self.nodes += 1
        if self.nodes >= self.limit:
            raise _BudgetExhausted
        self.assigned[var] = a
        self.unassigned -= 1
        self.trail.append((-1, var))
        pout, pin = self.pattern.out_masks, self.pattern.in_masks
        hout, hin = self.host.out_masks, self.host.in_masks
        abit = ~(1 << a)
        for w in range(self.np):
            if self.assigned[w] is not None:
                continue
            m = self.dom[w] & abit
            if (pout[var] >> w) & 1:
                m &= hout[a]
            if (pin[var] >> w) & 1:
                m &= hin[a]
            if m != self.dom[w]:
                self.trail.append((w, self.dom[w]))
                self.dom[w] = m
                if m == 0:
                    return False
        return True

    def _unwind(self, mark: int) -> None:
        while len(self.trail) > mark:
            var, old = self.trail.pop()
            if var == -1:
                self.assigned[old] = None
                self.unassigned += 1
            else:
                self.dom[var] = old


def subdigraph_contains(d: Digraph, c: Digraph, budget: int = DEFAULT_BUDGET) -> SearchResult:
    """Does D contain a copy of C, i.e. an injective arc-preserving map
    V(C) -> V(D)? Non-induced semantics: extra arcs of D never hurt."""
    if c.n == 0:
        return SearchResult(VertexMap(0, d.n, ()), True, 0)
    if c.n > d.n or c.arc_count > d.arc_count:
        return SearchResult(None, True, 0)
    mapping, exhausted, nodes = _EmbedSearch(d, c, budget).run()
    return SearchResult(mapping, exhausted, nodes)
