import itertools

import pytest
from hypothesis import strategies as st

from blindcounter import CounterAutomaton, canonical_word_problem
from blindcounter.corpus import named_corpus


@st.composite
def automata(draw, max_states=4, max_counters=2, entry_range=2, max_rank=2, max_edges=7):
    n_states = draw(st.integers(1, max_states))
    m = draw(st.integers(0, max_counters))
    n = draw(st.integers(1, max_rank))
    states = [f"s{i}" for i in range(n_states)]
    tokens = [f"x{i}" for i in range(1, n + 1)] + [f"X{i}" for i in range(1, n + 1)]
    edge = st.tuples(
        st.sampled_from(states),
        st.sampled_from(states),
        st.tuples(*[st.integers(-entry_range, entry_range)] * m),
        st.one_of(st.none(), st.sampled_from(tokens)),
    )
    edges = draw(st.lists(edge, max_size=max_edges))
    finals = draw(st.sets(st.sampled_from(states), min_size=1))
    return CounterAutomaton.build(m, n, states, states[0], finals, edges)


def words(tokens, max_len):
    for length in range(max_len + 1):
        yield from itertools.product(tokens, repeat=length)


@pytest.fixture
def z2():
    return canonical_word_problem(2)


@pytest.fixture
def corpus():
    return named_corpus()
