"""Automata built from the word problem of Z^n.

* :func:`canonical_word_problem` -- one state, a loop per letter.
* :func:`regex_chain_nfa` -- the chain NFA for x1*..xn*X1*..Xn*.
* :func:`product` -- intersection of a plain NFA with a counter automaton.
* :func:`structured_automaton` / :func:`verify_structure` -- the chain of
  2n tagged subautomata A(x1)..A(xn), A(X1)..A(Xn).
"""

from __future__ import annotations

from typing import Mapping, Optional, Sequence

import networkx as nx

from .core import (
    Alphabet,
    AutomatonError,
    CounterAutomaton,
    Edge,
    PreconditionError,
    Violation,
    zero,
)


def canonical_word_problem(n: int) -> CounterAutomaton:
    if n < 1:
        raise AutomatonError("rank must be positive")
    unit = lambda i, s: tuple(s if k == i else 0 for k in range(n))  # noqa: E731
    edges = [("q", "q", unit(i, 1), f"x{i + 1}") for i in range(n)]
    edges += [("q", "q", unit(i, -1), f"X{i + 1}") for i in range(n)]
    return CounterAutomaton.build(n, n, ["q"], "q", ["q"], edges)


def chain_state(token: str) -> str:
    return f"sigma_{token}"


def regex_chain_nfa(n: int) -> CounterAutomaton:
    """Zero-counter NFA for ``x1*..xn*X1*..Xn*``.

    ``alpha`` feeds the chain of one looping state per token, which drains
    into the single final state ``beta``.
    """
    alphabet = Alphabet(n)
    chain = [chain_state(t) for t in alphabet.tokens]
    states = ["alpha", *chain, "beta"]
    edges = [(chain_state(t), chain_state(t), (), t) for t in alphabet.tokens]
    # alpha -> sigma_x1 -> ... -> sigma_xn -> sigma_X1 -> ... -> sigma_Xn -> beta
    for src, dst in zip(states, states[1:]):
        edges.append((src, dst, (), None))
    return CounterAutomaton.build(0, n, states, "alpha", ["beta"], edges)


def product_state(left: str, right: str) -> str:
    return f"⟨{left}|{right}⟩"


def product(a1: CounterAutomaton, a2: CounterAutomaton) -> CounterAutomaton:
    """Counter automaton accepting L(a1) ∩ L(a2) for a zero-counter ``a1``.

    Epsilon edges follow three rules: both factors move on epsilon; only
    ``a1`` moves on epsilon (zero vector); only ``a2`` moves on epsilon.
    Each derivation yields its own edge, so parallel edges can appear.
    """
    a1.check()
    a2.check()
    if a1.counters != 0:
        raise PreconditionError("left factor must have zero counters")
    if a1.alphabet != a2.alphabet:
        raise PreconditionError(
            f"alphabet mismatch: rank {a1.rank} vs rank {a2.rank}"
        )
    m = a2.counters
    P = product_state
    states = [P(s1, s2) for s1 in a1.states for s2 in a2.states]
    finals = [P(f1, f2) for f1 in a1.sorted_finals() for f2 in a2.sorted_finals()]
    edges: list[Edge] = []
    for e1 in a1.edges:
        for e2 in a2.edges:
            if e1.letter is not None and e1.letter == e2.letter:
                edges.append(Edge(P(e1.src, e2.src), P(e1.dst, e2.dst), e2.vector, e1.letter))
            elif e1.letter is None and e2.letter is None:
                edges.append(Edge(P(e1.src, e2.src), P(e1.dst, e2.dst), e2.vector, None))
    for e1 in a1.edges:
        if e1.letter is None:
            for s2 in a2.states:
                edges.append(Edge(P(e1.src, s2), P(e1.dst, s2), zero(m), None))
    for e2 in a2.edges:
        if e2.letter is None:
            for s1 in a1.states:
                edges.append(Edge(P(s1, e2.src), P(s1, e2.dst), e2.vector, None))
    pos = {s: k for k, s in enumerate(states)}
    edges.sort(key=lambda e: (pos[e.src], e.letter is not None))
    return CounterAutomaton(
        counters=m,
        alphabet=a2.alphabet,
        states=tuple(states),
        initial=P(a1.initial, a2.initial),
        finals=frozenset(finals),
        edges=tuple(edges),
    )


def single_final(a: CounterAutomaton, fresh: str = "final") -> CounterAutomaton:
    """Equivalent automaton with one final state, joined by zero epsilon edges."""
    if len(a.finals) == 1:
        return a
    while fresh in a.state_index:
        fresh += "'"
    extra = tuple(Edge(f, fresh, zero(a.counters), None) for f in a.sorted_finals())
    return CounterAutomaton(
        a.counters, a.alphabet, a.states + (fresh,), a.initial,
        frozenset([fresh]), a.edges + extra, dict(a.tags),
    )


def structured_automaton(n: int, a2: CounterAutomaton) -> CounterAutomaton:
    """Product of the chain NFA with ``a2``, tagged by chain position.

    Product states over ``alpha`` join A(x1) and those over ``beta`` join
    A(Xn).  ``a2`` is assumed to accept the word problem of Z^n; this is not
    checked.
    """
    if a2.rank != n:
        raise PreconditionError(f"automaton has rank {a2.rank}, expected {n}")
    chain = regex_chain_nfa(n)
    right = single_final(a2)
    b = product(chain, right)
    tokens = chain.alphabet.tokens
    left_tag = {chain_state(t): t for t in tokens}
    left_tag["alpha"] = tokens[0]
    left_tag["beta"] = tokens[-1]
    tags = {}
    for s1 in chain.states:
        for s2 in right.states:
            tags[product_state(s1, s2)] = left_tag[s1]
    return b.with_tags(tags)


def verify_structure(a: CounterAutomaton) -> list[Violation]:
    """Violations of the chain-of-subautomata normal form; empty when it holds."""
    out: list[Violation] = []
    tokens = a.alphabet.tokens
    order = {t: k for k, t in enumerate(tokens)}
    untagged = [s for s in a.states if s not in a.tags]
    for s in untagged:
        out.append(Violation("untagged state", s))
    if len(a.finals) != 1:
        out.append(Violation("single final state", "finals", f"{len(a.finals)} final states"))
    for i, e in enumerate(a.edges):
        ts, td = a.tags.get(e.src), a.tags.get(e.dst)
        if ts is None or td is None:
            continue
        where = f"edge {i} ({e.src} -> {e.dst})"
        if ts != td:
            if e.letter is not None:
                out.append(Violation("inter-subautomaton letter edge", where, e.letter))
            if order[td] != order[ts] + 1:
                out.append(Violation("chain order", where, f"A({ts}) -> A({td})"))
        elif e.letter is not None and e.letter != ts:
            out.append(Violation("foreign letter", where, f"{e.letter} inside A({ts})"))
    if not untagged:
        g = nx.MultiDiGraph()
        g.add_nodes_from(a.states)
        g.add_edges_from((e.src, e.dst) for e in a.edges)
        for comp in nx.strongly_connected_components(g):
            labels = {a.tags[s] for s in comp}
            if len(labels) > 1:
                where = ", ".join(sorted(comp, key=a.state_index.__getitem__))
                out.append(Violation("circuit crosses subautomata", where, ", ".join(sorted(labels))))
    return out


def chain_candidate(
    n: int,
    loops: Mapping[str, Sequence[Sequence[int]]],
    counters: Optional[int] = None,
) -> CounterAutomaton:
    """Small structured candidate: one state per token, chained by zero epsilon edges.

    ``loops`` maps a token to the vectors of its letter loops on that
    token's state.  Used to build undersized automata for refutation.
    """
    alphabet = Alphabet(n)
    if counters is None:
        counters = next((len(v) for vs in loops.values() for v in vs), 0)
    states = [f"s_{t}" for t in alphabet.tokens]
    edges = []
    for t in alphabet.tokens:
        for v in loops.get(t, ()):
            edges.append((f"s_{t}", f"s_{t}", tuple(v), t))
    for src, dst in zip(states, states[1:]):
        edges.append((src, dst, zero(counters), None))
    tags = {f"s_{t}": t for t in alphabet.tokens}
    return CounterAutomaton.build(counters, n, states, states[0], [states[-1]], edges, tags)


def projection_candidate() -> CounterAutomaton:
    """One counter tracking x1 only; ignores x2 and X2."""
    return chain_candidate(2, {"x1": [(1,)], "x2": [(0,)], "X1": [(-1,)], "X2": [(0,)]})


def swap_counter_candidate() -> CounterAutomaton:
    """One counter tracking x2 only; ignores x1 and X1."""
    return chain_candidate(2, {"x1": [(0,)], "x2": [(1,)], "X1": [(0,)], "X2": [(-1,)]})


def first_generator_only_candidate() -> CounterAutomaton:
    """One counter; accepts exactly the canonical words with j2 = 0."""
    return chain_candidate(2, {"x1": [(1,)], "X1": [(-1,)]}, counters=1)
