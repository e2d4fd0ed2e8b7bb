"""Word acceptance for counter automata.

``accept`` walks the run graph (automaton states paired with word positions)
forward, carrying the accumulated counter vector.  When every epsilon cycle
has zero net vector the set of reachable (node, vector) pairs is finite and
the answer is exact.  Otherwise the search is clipped by ``SearchLimits``
and can only answer Accepted or Unknown.

``brute_force_accept`` is a deliberately naive depth-first path enumerator
kept independent of the propagation engine; tests use it as an oracle.
"""

from __future__ import annotations

import enum
import graphlib
from collections import deque
from dataclasses import dataclass
from typing import Iterator, Optional, Sequence

from .core import (
    CounterAutomaton,
    EpsilonCycleClass,
    PathWitness,
    TokenError,
    Vector,
    Word,
    vadd,
    zero,
)


@dataclass(frozen=True)
class SearchLimits:
    counter_bound: int = 64
    # epsilon transitions allowed per word position; None means |states|^2
    epsilon_steps: Optional[int] = None
    # cap on enumerated paths
    max_paths: int = 10_000

    def eps_steps_for(self, a: CounterAutomaton) -> int:
        if self.epsilon_steps is not None:
            return self.epsilon_steps
        return len(a.states) ** 2


class Status(enum.Enum):
    ACCEPTED = "Accepted"
    REJECTED = "Rejected"
    UNKNOWN = "Unknown"


@dataclass(frozen=True)
class Verdict:
    status: Status
    path: Optional[PathWitness] = None
    detail: str = ""

    @property
    def accepted(self) -> bool:
        return self.status is Status.ACCEPTED

    @property
    def rejected(self) -> bool:
        return self.status is Status.REJECTED

    @property
    def unknown(self) -> bool:
        return self.status is Status.UNKNOWN

    def __str__(self) -> str:
        return self.status.value if not self.detail else f"{self.status.value} ({self.detail})"


def check_word(a: CounterAutomaton, w: Sequence[str]) -> Word:
    for t in w:
        if t not in a.alphabet:
            raise TokenError(f"token {t!r} not in alphabet of rank {a.rank}")
    return tuple(w)


class RunGraph:
    """Layered product of an automaton with the positions of a word.

    Nodes are ``(state, position)``; letter edges advance the position by
    consuming the next token, epsilon edges keep it.
    """

    def __init__(self, a: CounterAutomaton, w: Sequence[str]):
        self.automaton = a
        self.word = check_word(a, w)
        self.source = (a.initial, 0)
        self.sinks = {(f, len(self.word)) for f in a.finals}

    def successors(self, node: tuple[str, int]) -> Iterator[tuple[int, tuple[str, int]]]:
        state, pos = node
        a = self.automaton
        for i in a.out_edges[state]:
            e = a.edges[i]
            if e.letter is None:
                yield i, (e.dst, pos)
            elif pos < len(self.word) and self.word[pos] == e.letter:
                yield i, (e.dst, pos + 1)

    def epsilon_successors(self, node):
        for i, nxt in self.successors(node):
            if nxt[1] == node[1]:
                yield i, nxt

    def letter_successors(self, node):
        for i, nxt in self.successors(node):
            if nxt[1] != node[1]:
                yield i, nxt


# key: (state, position, vector)
_Key = tuple[str, int, Vector]


def _within(vec: Vector, bound: Optional[int]) -> bool:
    return bound is None or all(-bound <= c <= bound for c in vec)


def _propagate(a: CounterAutomaton, rg: RunGraph, bound: Optional[int], eps_steps: Optional[int]):
    """Forward reachability over (node, vector); returns parent pointers."""
    start: _Key = (a.initial, 0, zero(a.counters))
    parent: dict[_Key, Optional[tuple[_Key, int]]] = {start: None}
    layer = [start]
    for pos in range(len(rg.word) + 1):
        # epsilon closure at this position, breadth-first so depth is minimal
        depth = {k: 0 for k in layer}
        queue = deque(layer)
        while queue:
            key = queue.popleft()
            d = depth[key]
            if eps_steps is not None and d >= eps_steps:
                continue
            state, _, vec = key
            for i, (dst, _) in rg.epsilon_successors((state, pos)):
                nvec = vadd(vec, a.edges[i].vector)
                if not _within(nvec, bound):
                    continue
                nk = (dst, pos, nvec)
                if nk not in parent:
                    parent[nk] = (key, i)
                    depth[nk] = d + 1
                    queue.append(nk)
        closed = list(depth)
        if pos == len(rg.word):
            return parent, closed
        nxt = []
        for key in closed:
            state, _, vec = key
            for i, (dst, npos) in rg.letter_successors((state, pos)):
                nvec = vadd(vec, a.edges[i].vector)
                if not _within(nvec, bound):
                    continue
                nk = (dst, npos, nvec)
                if nk not in parent:
                    parent[nk] = (key, i)
                    nxt.append(nk)
        layer = nxt
    raise AssertionError("unreachable")


def _trace(a: CounterAutomaton, parent, key: _Key) -> PathWitness:
    edges = []
    while parent[key] is not None:
        key, i = parent[key]
        edges.append(i)
    edges.reverse()
    return PathWitness.from_edges(a, edges, a.initial)


def accept(a: CounterAutomaton, w: Sequence[str], limits: SearchLimits = SearchLimits()) -> Verdict:
    rg = RunGraph(a, w)
    exact = a.epsilon_class is not EpsilonCycleClass.NONZERO_VECTOR_CYCLE
    if exact:
        parent, last = _propagate(a, rg, None, None)
    else:
        parent, last = _propagate(a, rg, limits.counter_bound, limits.eps_steps_for(a))
    target_vec = zero(a.counters)
    for f in a.sorted_finals():
        key = (f, len(rg.word), target_vec)
        if key in parent:
            return Verdict(Status.ACCEPTED, _trace(a, parent, key))
    if exact:
        return Verdict(Status.REJECTED)
    return Verdict(
        Status.UNKNOWN,
        detail=f"counter bound {limits.counter_bound}, "
        f"{limits.eps_steps_for(a)} epsilon steps per position",
    )


# ---------------------------------------------------------------------------
# Brute-force oracle


def _epsilon_acyclic(a: CounterAutomaton) -> bool:
    ts = graphlib.TopologicalSorter()
    for s in a.states:
        ts.add(s)
    for e in a.edges:
        if e.letter is None:
            if e.src == e.dst:
                return False
            ts.add(e.dst, e.src)
    try:
        ts.prepare()
    except graphlib.CycleError:
        return False
    return True


def exhaustive_path_bound(a: CounterAutomaton, w: Sequence[str]) -> int:
    """Longest path reading ``w`` when epsilon edges form no cycle."""
    return len(w) + (len(w) + 1) * (len(a.states) - 1)


def brute_force_accept(a: CounterAutomaton, w: Sequence[str], max_path_len: Optional[int] = None) -> Verdict:
    """Try every path of length <= ``max_path_len`` from the initial state."""
    w = check_word(a, w)
    acyclic = _epsilon_acyclic(a)
    bound = exhaustive_path_bound(a, w)
    if max_path_len is None:
        max_path_len = bound if acyclic else len(w) + len(a.states)
    target = zero(a.counters)
    stack = [(a.initial, 0, target, ())]
    while stack:
        state, pos, vec, path = stack.pop()
        if pos == len(w) and state in a.finals and vec == target:
            return Verdict(Status.ACCEPTED, PathWitness.from_edges(a, path, a.initial))
        if len(path) >= max_path_len:
            continue
        for i, e in enumerate(a.edges):
            if e.src != state:
                continue
            if e.letter is None:
                npos = pos
            elif pos < len(w) and w[pos] == e.letter:
                npos = pos + 1
            else:
                continue
            stack.append((e.dst, npos, vadd(vec, e.vector), path + (i,)))
    if acyclic and max_path_len >= bound:
        return Verdict(Status.REJECTED)
    return Verdict(Status.UNKNOWN, detail=f"paths up to length {max_path_len} exhausted")


# ---------------------------------------------------------------------------
# Enumeration


def _coreachable(a: CounterAutomaton, rg: RunGraph) -> Optional[dict[tuple[str, int], set[Vector]]]:
    """Vector sums of all run-graph paths from each node to a sink.

    Only finite (and only computed) when no epsilon cycle has nonzero vector.
    """
    if a.epsilon_class is EpsilonCycleClass.NONZERO_VECTOR_CYCLE:
        return None
    n = len(rg.word)
    sums: dict[tuple[str, int], set[Vector]] = {(s, p): set() for s in a.states for p in range(n + 1)}
    for f in a.finals:
        sums[(f, n)].add(zero(a.counters))
    # Fixpoint per layer, from the last position backwards.
    for pos in range(n, -1, -1):
        if pos < n:
            for s in a.states:
                for i, nxt in rg.letter_successors((s, pos)):
                    v = a.edges[i].vector
                    sums[(s, pos)].update(vadd(v, t) for t in sums[nxt])
        changed = True
        while changed:
            changed = False
            for s in a.states:
                for i, nxt in rg.epsilon_successors((s, pos)):
                    v = a.edges[i].vector
                    new = {vadd(v, t) for t in sums[nxt]} - sums[(s, pos)]
                    if new:
                        sums[(s, pos)].update(new)
                        changed = True
    return sums


def enumerate_accepting_paths(
    a: CounterAutomaton, w: Sequence[str], limits: SearchLimits = SearchLimits()
) -> list[PathWitness]:
    """Accepting paths for ``w``, in depth-first edge-index order.

    At most ``limits.epsilon_steps`` consecutive epsilon edges are taken per
    position and at most ``limits.max_paths`` paths are returned.
    """
    rg = RunGraph(a, w)
    co = _coreachable(a, rg)
    eps_cap = limits.eps_steps_for(a)
    bound = None if co is not None else limits.counter_bound
    target = zero(a.counters)
    n = len(rg.word)
    results: list[PathWitness] = []
    seen: set[tuple[int, ...]] = set()

    def viable(node, vec) -> bool:
        if co is None:
            return _within(vec, bound)
        need = tuple(-c for c in vec)
        return need in co[node]

    if not viable(rg.source, target):
        return results

    def dfs(node, vec, path, eps_run):
        if len(results) >= limits.max_paths:
            return
        if node in rg.sinks and vec == target:
            key = tuple(path)
            if key not in seen:
                seen.add(key)
                results.append(PathWitness.from_edges(a, path, a.initial))
        for i, nxt in rg.successors(node):
            is_eps = nxt[1] == node[1]
            run = eps_run + 1 if is_eps else 0
            if run > eps_cap:
                continue
            nvec = vadd(vec, a.edges[i].vector)
            if not viable(nxt, nvec):
                continue
            path.append(i)
            dfs(nxt, nvec, path, run)
            path.pop()

    dfs(rg.source, target, [], 0)
    return results
