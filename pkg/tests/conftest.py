"""Shared fixtures: named digraphs and text fixtures used across the suite."""

from __future__ import annotations

import pytest

from dicore.digraph import Digraph


def directed_cycle(k: int) -> Digraph:
    return Digraph(k, [(i, (i + 1) % k) for i in range(k)])


def complete_digraph(n: int) -> Digraph:
    return Digraph(n, [(u, v) for u in range(n) for v in range(n) if u != v])


@pytest.fixture
def single_vertex() -> Digraph:
    return Digraph(1)


@pytest.fixture
def single_arc() -> Digraph:
    return Digraph(2, [(0, 1)])


@pytest.fixture
def two_cycle() -> Digraph:
    return directed_cycle(2)


@pytest.fixture
def three_cycle() -> Digraph:
    return directed_cycle(3)


@pytest.fixture
def k3_bidirected() -> Digraph:
    return complete_digraph(3)


@pytest.fixture
def path_012() -> Digraph:
    return Digraph(3, [(0, 1), (1, 2)])
