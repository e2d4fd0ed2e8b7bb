"""Named and random automata used by tests and experiment scripts."""

from __future__ import annotations

import random
from typing import Optional

from .constructions import (
    canonical_word_problem,
    first_generator_only_candidate,
    product,
    projection_candidate,
    regex_chain_nfa,
    structured_automaton,
    swap_counter_candidate,
)
from .core import CounterAutomaton


def random_automaton(
    rng: random.Random,
    max_states: int = 4,
    max_counters: int = 2,
    entry_range: int = 2,
    max_rank: int = 2,
    max_edges: int = 7,
    epsilon_rate: float = 0.3,
    rank: Optional[int] = None,
) -> CounterAutomaton:
    n_states = rng.randint(1, max_states)
    m = rng.randint(0, max_counters)
    n = rank if rank is not None else rng.randint(1, max_rank)
    states = [f"s{i}" for i in range(n_states)]
    tokens = [f"x{i}" for i in range(1, n + 1)] + [f"X{i}" for i in range(1, n + 1)]
    edges = []
    for _ in range(rng.randint(0, max_edges)):
        letter = None if rng.random() < epsilon_rate else rng.choice(tokens)
        vec = tuple(rng.randint(-entry_range, entry_range) for _ in range(m))
        edges.append((rng.choice(states), rng.choice(states), vec, letter))
    finals = [s for s in states if rng.random() < 0.5] or [rng.choice(states)]
    return CounterAutomaton.build(m, n, states, states[0], finals, edges)


def random_corpus(count: int, seed: int = 0, **kwargs) -> list[CounterAutomaton]:
    rng = random.Random(seed)
    return [random_automaton(rng, **kwargs) for _ in range(count)]


def named_corpus() -> dict[str, CounterAutomaton]:
    return {
        "canonical1": canonical_word_problem(1),
        "canonical2": canonical_word_problem(2),
        "chain1": regex_chain_nfa(1),
        "chain2": regex_chain_nfa(2),
        "product1": product(regex_chain_nfa(1), canonical_word_problem(1)),
        "product2": product(regex_chain_nfa(2), canonical_word_problem(2)),
        "structured1": structured_automaton(1, canonical_word_problem(1)),
        "structured2": structured_automaton(2, canonical_word_problem(2)),
        "projection": projection_candidate(),
        "swap": swap_counter_candidate(),
        "first_only": first_generator_only_candidate(),
        "eps_pump": CounterAutomaton.build(
            1, 1, ["s0"], "s0", ["s0"], [("s0", "s0", (-1,), "x1"), ("s0", "s0", (5,), None)]
        ),
        "zero_eps_cycle": CounterAutomaton.build(
            1, 1, ["a", "b"], "a", ["b"],
            [("a", "b", (1,), None), ("b", "a", (-1,), None), ("b", "b", (1,), "x1"),
             ("a", "a", (-1,), "X1")],
        ),
    }
