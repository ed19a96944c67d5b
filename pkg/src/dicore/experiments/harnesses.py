"""Seeded Monte Carlo harnesses for the model's finite-n claims.

Each harness samples D(n, p) digraphs over a cell grid, measures one
statistic, and reports it next to the closed-form reference expectation
(computed from (n, p, k) alone, never from the sample). Per-trial work is a
pure function of (master seed, stream index), so any worker count yields
identical tables; see :mod:`.runner`.

Large-n harnesses work on adjacency matrices directly; the matrix route
consumes the same variate stream as :func:`dicore.random_model.sample` and
agreement of the two routes is pinned by tests.
"""

from __future__ import annotations

import math

import numpy as np

from ..density import threshold_probability
from ..digraph import Digraph, induced_acyclic
from ..homomorphism import CoreStatus, is_core, subdigraph_contains
from ..bounds import chernoff_lower, chernoff_upper
from ..random_model import Seed, draw_adjacency, sample
from .config import ExperimentSpec, reference_k0, reference_k1, window_satisfied
from .runner import ExperimentTable, map_trials
from .stats import StatSummary, fold

MAX_ACYCLIC_N = 40

SUMMARY_HEADER = (
    "n", "p", "trials", "seed",
    "mean", "min", "max", "stddev",
    "reference", "rel_dev", "window_satisfied",
)


def sample_k_of_n(rng: np.random.Generator, n: int, k: int) -> list[int]:
    """A uniform ordered k-subset of range(n): partial Fisher-Yates shuffle.

    Runs the first k swap steps of a Fisher-Yates shuffle over a sparse
    virtual array, consuming exactly k integer draws from ``rng``.
    """
    if not 0 <= k <= n:
        raise ValueError(f"cannot draw {k} distinct items from {n}")
    moved: dict[int, int] = {}
    out = []
    for i in range(k):
        j = int(rng.integers(i, n))
        vi = moved.get(i, i)
        vj = moved.get(j, j)
        out.append(vj)
        moved[j] = vi
        moved[i] = vj
    return out


def pair_from_index(n: int, idx: int) -> tuple[int, int]:
    """Decode 0 <= idx < C(n, 2) into the idx-th unordered pair (u, v), u < v.

    Pairs are ordered (0,1), (0,2), ..., (0,n-1), (1,2), ...; pure integer
    arithmetic so the decoding is exact for any n.
    """
    total = n * (n - 1) // 2
    if not 0 <= idx < total:
        raise ValueError(f"pair index {idx} out of range for n={n}")
    # largest u with u*n - u*(u+1)/2 <= idx
    u = n - 1 - (math.isqrt((2 * n - 1) * (2 * n - 1) - 8 * idx) + 1) // 2
    while (u + 1) * n - (u + 1) * (u + 2) // 2 <= idx:
        u += 1
    while u * n - u * (u + 1) // 2 > idx:
        u -= 1
    v = u + 1 + (idx - (u * n - u * (u + 1) // 2))
    return u, v


def largest_acyclic_set_size(out_masks: list[int], in_masks: list[int]) -> int:
    """Maximum cardinality of a vertex set inducing an acyclic subdigraph.

    Branch and bound over include/exclude decisions: vertices are relabeled
    by descending 2-cycle degree (most-constrained first), a greedy sweep
    seeds the incumbent, including a vertex drops all its 2-cycle partners
    from the candidate pool, and branches die when even taking every
    remaining candidate cannot beat the incumbent.
    """
    n = len(out_masks)
    if n == 0:
        return 0
    two = [out_masks[v] & in_masks[v] for v in range(n)]
    order = sorted(range(n), key=lambda v: (-two[v].bit_count(), v))
    pos = [0] * n
    for i, v in enumerate(order):
        pos[v] = i

    def remap(mask: int) -> int:
        out = 0
        while mask:
            b = mask & -mask
            out |= 1 << pos[b.bit_length() - 1]
            mask ^= b
        return out

    rin = [0] * n
    rtwo = [0] * n
    for v in range(n):
        rin[pos[v]] = remap(in_masks[v])
        rtwo[pos[v]] = remap(two[v])

    greedy_mask = 0
    best = 0
    for v in range(n):
        cand = greedy_mask | (1 << v)
        if not rtwo[v] & greedy_mask and induced_acyclic(rin, cand):
            greedy_mask = cand
            best += 1

    def rec(chosen: int, count: int, cand: int) -> None:
        nonlocal best
        if count + cand.bit_count() <= best:
            return
        if not cand:
            best = count
            return
        b = cand & -cand
        v = b.bit_length() - 1
        grown = chosen | b
        if induced_acyclic(rin, grown):
            rec(grown, count + 1, (cand ^ b) & ~rtwo[v])
        rec(chosen, count, cand ^ b)

    rec(0, 0, (1 << n) - 1)
    return best


# -- per-trial workers (module level: they cross process boundaries) --------


def _neighbors_trial(args: tuple) -> StatSummary:
    n, p, master, stream = args
    m = draw_adjacency(Seed(master, stream).generator(), n, p)
    counts = (m | m.T).sum(axis=1)
    return StatSummary.from_values(counts)


def _common_neighbors_trial(args: tuple) -> StatSummary:
    n, p, pairs_per_trial, master, stream = args
    rng = Seed(master, stream).generator()
    m = draw_adjacency(rng, n, p)
    und = m | m.T
    total_pairs = n * (n - 1) // 2
    if total_pairs <= pairs_per_trial:
        pairs = [pair_from_index(n, i) for i in range(total_pairs)]
    else:
        idxs = sample_k_of_n(rng, total_pairs, pairs_per_trial)
        pairs = [pair_from_index(n, i) for i in idxs]
    us = np.array([u for u, _ in pairs])
    vs = np.array([v for _, v in pairs])
    counts = (und[us] & und[vs]).sum(axis=1)
    return StatSummary.from_values(counts)


def _subset_arcs_trial(args: tuple) -> StatSummary:
    n, p, k, master, stream = args
    rng = Seed(master, stream).generator()
    m = draw_adjacency(rng, n, p)
    members = sample_k_of_n(rng, n, k)
    arcs = int(m[np.ix_(members, members)].sum())
    return StatSummary.from_values(np.array([arcs], dtype=np.float64))


def _pair_contraction_trial(args: tuple) -> StatSummary:
    n, p, k, master, stream = args
    rng = Seed(master, stream).generator()
    m = draw_adjacency(rng, n, p)
    verts = sample_k_of_n(rng, n, 2 * k)
    firsts = verts[0::2]
    seconds = verts[1::2]
    merged = (
        m[np.ix_(firsts, firsts)]
        | m[np.ix_(firsts, seconds)]
        | m[np.ix_(seconds, firsts)]
        | m[np.ix_(seconds, seconds)]
    )
    np.fill_diagonal(merged, False)
    arcs = int(merged.sum())
    return StatSummary.from_values(np.array([arcs], dtype=np.float64))


def _max_acyclic_trial(args: tuple) -> StatSummary:
    n, p, master, stream = args
    d = sample(n, p, Seed(master, stream))
    size = largest_acyclic_set_size(list(d.out_masks), list(d.in_masks))
    return StatSummary.from_values(np.array([size], dtype=np.float64))


def _contains_trial(args: tuple) -> str:
    n, p, pattern, budget, master, stream = args
    d = sample(n, p, Seed(master, stream))
    result = subdigraph_contains(d, pattern, budget)
    if result.found:
        return "contained"
    return "not_contained" if result.exhausted else "undecided"


def _core_trial(args: tuple) -> str:
    n, p, budget, master, stream = args
    d = sample(n, p, Seed(master, stream))
    return is_core(d, budget).status.value


# -- harnesses ----------------------------------------------------------------


def _summary_row(n: int, p: float, spec: ExperimentSpec, summary: StatSummary) -> tuple:
    return (
        n, p, spec.trials, spec.seed,
        summary.mean, summary.minimum, summary.maximum, summary.stddev,
        summary.reference, summary.rel_deviation,
        window_satisfied(n, p),
    )


def exp_neighbors(spec: ExperimentSpec, workers: int = 1) -> ExperimentTable:
    """Per-vertex neighborhood sizes vs. the expectation (n-1)(2p - p^2).

    Every vertex of every sampled digraph contributes one observation, so
    min/max are the per-object extremes across all trials.
    """
    rows = []
    for ci, (n, p) in enumerate(_cells(spec)):
        args = [(n, p, spec.seed, spec.stream(ci, t)) for t in range(spec.trials)]
        parts = map_trials(_neighbors_trial, args, workers)
        reference = (n - 1) * (2 * p - p * p)
        summary = fold(parts, reference=reference)
        rows.append(_summary_row(n, p, spec, summary))
    return ExperimentTable("neighbors", SUMMARY_HEADER, tuple(rows))


def exp_common_neighbors(spec: ExperimentSpec, workers: int = 1) -> ExperimentTable:
    """Common-neighbor counts of vertex pairs vs. (n-2) p^2 (2-p)^2.

    Uses all pairs when there are at most ``pairs_per_trial`` of them,
    otherwise a uniform sample of that many distinct pairs per trial.
    """
    rows = []
    for ci, (n, p) in enumerate(_cells(spec)):
        args = [(n, p, spec.pairs_per_trial, spec.seed, spec.stream(ci, t)) for t in range(spec.trials)]
        parts = map_trials(_common_neighbors_trial, args, workers)
        q = p * p * (2 - p) * (2 - p)
        summary = fold(parts, reference=(n - 2) * q)
        rows.append(_summary_row(n, p, spec, summary))
    return ExperimentTable("common_neighbors", SUMMARY_HEADER, tuple(rows))


def exp_subset_arcs(spec: ExperimentSpec, workers: int = 1) -> ExperimentTable:
    """Arcs induced by a uniform k-subset vs. 2 p C(k, 2).

    The asymptotic claim assumes k >= k0(n) = n^(1/9) log^2 n / 2; k0 is
    reported next to k so readers can check the hypothesis at a glance.
    """
    k = spec.k
    if k is None or k < 1:
        raise ValueError("subset-arcs experiment needs a positive subset size k")
    rows = []
    header = ("n", "p", "k", "k0_reference") + SUMMARY_HEADER[2:]
    for ci, (n, p) in enumerate(_cells(spec)):
        if k > n:
            raise ValueError(f"subset size {k} exceeds n={n}")
        args = [(n, p, k, spec.seed, spec.stream(ci, t)) for t in range(spec.trials)]
        parts = map_trials(_subset_arcs_trial, args, workers)
        summary = fold(parts, reference=float(k * (k - 1)) * p)
        row = _summary_row(n, p, spec, summary)
        rows.append((row[0], row[1], k, reference_k0(n), *row[2:]))
    return ExperimentTable("subset_arcs", header, tuple(rows))


def exp_pair_contraction(spec: ExperimentSpec, workers: int = 1) -> ExperimentTable:
    """Arcs surviving contraction of k disjoint pairs vs. 2 C(k,2) (1-(1-p)^4).

    Per trial, 2k distinct vertices are drawn and consecutive draws are
    paired; the contraction discards loops and collapses parallel arcs,
    exactly like Digraph.contract_pairs (pinned by tests). The asymptotic
    claim assumes k >= k1(n) = n^(1/9) log^2 n, reported for reference.
    """
    k = spec.k
    if k is None or k < 1:
        raise ValueError("pair-contraction experiment needs a positive pair count k")
    rows = []
    header = ("n", "p", "k", "k1_reference") + SUMMARY_HEADER[2:]
    for ci, (n, p) in enumerate(_cells(spec)):
        if 2 * k > n:
            raise ValueError(f"2k = {2 * k} exceeds n={n}")
        args = [(n, p, k, spec.seed, spec.stream(ci, t)) for t in range(spec.trials)]
        parts = map_trials(_pair_contraction_trial, args, workers)
        reference = float(k * (k - 1)) * (1.0 - (1.0 - p) ** 4)
        summary = fold(parts, reference=reference)
        row = _summary_row(n, p, spec, summary)
        rows.append((row[0], row[1], k, reference_k1(n), *row[2:]))
    return ExperimentTable("pair_contraction", header, tuple(rows))


def exp_max_acyclic(spec: ExperimentSpec, workers: int = 1) -> ExperimentTable:
    """Largest induced-acyclic set size; the n^(1/9) reference is asymptotic-only.

    The literal bound n^(1/9) is meaningless at desk scale (it is below 2
    for n < 512), so the reference column carries an explicit flag instead
    of a relative deviation. Exact search caps at n = 40.
    """
    header = (
        "n", "p", "trials", "seed",
        "mean", "min", "max", "stddev",
        "reference", "reference_asymptotic_only", "window_satisfied",
    )
    rows = []
    for ci, (n, p) in enumerate(_cells(spec)):
        if n > MAX_ACYCLIC_N:
            raise ValueError(f"exact acyclic-set search caps at n={MAX_ACYCLIC_N}, got {n}")
        args = [(n, p, spec.seed, spec.stream(ci, t)) for t in range(spec.trials)]
        parts = map_trials(_max_acyclic_trial, args, workers)
        summary = fold(parts, reference=float(n) ** (1.0 / 9.0))
        rows.append((
            n, p, spec.trials, spec.seed,
            summary.mean, summary.minimum, summary.maximum, summary.stddev,
            summary.reference, True, window_satisfied(n, p),
        ))
    return ExperimentTable("max_acyclic", header, tuple(rows))


def exp_threshold_sweep(pattern: Digraph, spec: ExperimentSpec, workers: int = 1) -> ExperimentTable:
    """Containment frequency of a pattern across the threshold scale.

    The p-grid is ratios * n^(-1/m(pattern)) (clipped to [0, 1]) unless the
    spec lists explicit probabilities. Budget-stopped trials are reported in
    their own column, never folded into either side.
    """
    if pattern.arc_count < 1:
        raise ValueError("threshold sweep needs a pattern with at least one arc")
    header = (
        "n", "p", "ratio", "threshold_scale", "trials", "seed",
        "contained", "not_contained", "undecided", "frequency",
    )
    rows = []
    cells = []
    for n in spec.ns:
        scale = threshold_probability(pattern, n)
        if spec.ps:
            cells.extend((n, p, p / scale, scale) for p in spec.ps)
        else:
            cells.extend((n, min(1.0, c * scale), c, scale) for c in spec.ratios)
    for ci, (n, p, ratio, scale) in enumerate(cells):
        args = [(n, p, pattern, spec.budget, spec.seed, spec.stream(ci, t)) for t in range(spec.trials)]
        outcomes = map_trials(_contains_trial, args, workers)
        contained = outcomes.count("contained")
        undecided = outcomes.count("undecided")
        rows.append((
            n, p, ratio, scale, spec.trials, spec.seed,
            contained, outcomes.count("not_contained"), undecided,
            contained / spec.trials,
        ))
    return ExperimentTable("threshold_sweep", header, tuple(rows))


def exp_core_fraction(spec: ExperimentSpec, workers: int = 1) -> ExperimentTable:
    """Fraction of samples certified as cores, per (n, p) cell.

    Unknown verdicts (budget stops) stay separate; the true core frequency
    lies in [core_freq_low, core_freq_high].
    """
    header = (
        "n", "p", "trials", "seed", "budget",
        "core", "not_core", "unknown",
        "core_freq_low", "core_freq_high", "window_satisfied",
    )
    rows = []
    for ci, (n, p) in enumerate(_cells(spec)):
        args = [(n, p, spec.budget, spec.seed, spec.stream(ci, t)) for t in range(spec.trials)]
        outcomes = map_trials(_core_trial, args, workers)
        core = outcomes.count(CoreStatus.CORE.value)
        unknown = outcomes.count(CoreStatus.UNKNOWN.value)
        rows.append((
            n, p, spec.trials, spec.seed, spec.budget,
            core, outcomes.count(CoreStatus.NOT_CORE.value), unknown,
            core / spec.trials, (core + unknown) / spec.trials,
            window_satisfied(n, p),
        ))
    return ExperimentTable("core_fraction", header, tuple(rows))


def exp_tail_vs_bound(spec: ExperimentSpec, workers: int = 1) -> ExperimentTable:
    """Empirical binomial tails against the rate and quadratic bounds.

    With ``binomial_n`` set, samples Binomial(binomial_n, p) directly.
    Otherwise both model statistics are sampled for n = ns[0]: the arc count
    Binomial(n(n-1), p) and the per-vertex neighbor count
    Binomial(n-1, 2p-p^2). Deviations run over a tail_points grid spanning
    six standard deviations. Single-stream by design, so worker count is
    irrelevant to the output.
    """
    del workers
    header = (
        "variable", "count_n", "prob", "lambda", "t", "samples", "seed",
        "upper_empirical", "upper_rate_bound", "upper_quadratic",
        "lower_empirical", "lower_rate_bound", "lower_quadratic",
    )
    sections: list[tuple[str, int, float]] = []
    for p in spec.ps:
        if spec.binomial_n is not None:
            sections.append(("binomial", spec.binomial_n, p))
        else:
            n = spec.ns[0]
            sections.append(("arc_count", n * (n - 1), p))
            sections.append(("neighbor_count", n - 1, 2 * p - p * p))
    rows = []
    for si, (label, count_n, q) in enumerate(sections):
        rng = Seed(spec.seed, si).generator()
        samples = rng.binomial(count_n, q, size=spec.trials)
        lam = count_n * q
        sigma = math.sqrt(count_n * q * (1.0 - q)) if 0.0 < q < 1.0 else 0.0
        for j in range(spec.tail_points):
            t = 6.0 * sigma * j / (spec.tail_points - 1)
            upper = chernoff_upper(lam, t) if lam > 0 else None
            lower = chernoff_lower(lam, t) if lam > 0 else None
            rows.append((
                label, count_n, q, lam, t, spec.trials, spec.seed,
                float((samples >= lam + t).mean()),
                upper.rate_bound if upper else 1.0,
                upper.quadratic_upper if upper else 1.0,
                float((samples <= lam - t).mean()),
                lower.rate_bound if lower else 1.0,
                lower.quadratic_lower if lower else 1.0,
            ))
    return ExperimentTable("tail_vs_bound", header, tuple(rows))


def _cells(spec: ExperimentSpec) -> list[tuple[int, float]]:
    if not spec.ns or not spec.ps:
        raise ValueError("experiment needs at least one n and one p")
    return [(n, p) for n in spec.ns for p in spec.ps]
