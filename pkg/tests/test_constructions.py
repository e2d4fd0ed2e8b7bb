import itertools

import pytest
from hypothesis import given, settings

from blindcounter import (
    CounterAutomaton,
    EpsilonCycleClass,
    PreconditionError,
    accept,
    brute_force_accept,
    canonical_word_problem,
    exponent_vector,
    parse_canonical_form,
    parse_word,
    product,
    regex_chain_nfa,
    structured_automaton,
    validate,
    verify_structure,
)
from blindcounter.constructions import chain_candidate, single_final
from blindcounter.core import simple_circuits

from conftest import automata, words


def kinds(violations):
    return {v.kind for v in violations}


class TestCanonical:
    def test_rank_one_shape(self):
        a = canonical_word_problem(1)
        assert len(a.states) == 1 and a.initial in a.finals
        assert [(e.vector, e.letter) for e in a.edges] == [((1,), "x1"), ((-1,), "X1")]

    def test_examples(self, z2):
        assert accept(z2, parse_word("x2 x1 X2 X1")).accepted
        assert accept(z2, parse_word("x1 x1 X1")).rejected

    @pytest.mark.parametrize("n", [1, 2])
    def test_matches_exponent_vector(self, n):
        a = canonical_word_problem(n)
        for w in words(a.alphabet.tokens, 8 if n == 1 else 6):
            assert accept(a, w).accepted == (not any(exponent_vector(w, n)))


class TestChain:
    def test_rank_one_shape(self):
        a = regex_chain_nfa(1)
        assert len(a.states) == 4
        assert sum(e.letter is not None for e in a.edges) == 2
        assert sum(e.letter is None for e in a.edges) == 3
        assert validate(a) == []

    def test_examples(self):
        a = regex_chain_nfa(1)
        assert accept(a, parse_word("x1 x1 X1")).accepted
        assert accept(a, parse_word("X1 x1")).rejected

    @pytest.mark.parametrize("n", [1, 2])
    def test_language_is_canonical_order(self, n):
        a = regex_chain_nfa(n)
        for w in words(a.alphabet.tokens, 5):
            assert accept(a, w).accepted == (parse_canonical_form(w, n) is not None)


class TestProduct:
    def test_state_count(self):
        assert len(product(regex_chain_nfa(1), canonical_word_problem(1)).states) == 4

    def test_examples_against_factors(self):
        chain, z1 = regex_chain_nfa(1), canonical_word_problem(1)
        b = product(chain, z1)
        for text in ("x1 X1", "X1 x1", "x1"):
            w = parse_word(text)
            both = brute_force_accept(chain, w).accepted and brute_force_accept(z1, w).accepted
            assert accept(b, w).accepted == both
        assert accept(b, parse_word("x1 X1")).accepted
        assert accept(b, parse_word("X1 x1")).rejected
        assert accept(b, parse_word("x1")).rejected

    def test_three_epsilon_rules(self):
        left = CounterAutomaton.build(
            0, 1, ["a", "b"], "a", ["b"], [("a", "b", (), None), ("a", "a", (), "x1")]
        )
        right = CounterAutomaton.build(
            1, 1, ["p", "q"], "p", ["q"], [("p", "q", (3,), None), ("q", "q", (1,), "x1")]
        )
        b = product(left, right)
        eps = sorted((e.src, e.dst, e.vector) for e in b.edges if e.letter is None)
        assert eps == sorted([
            ("⟨a|p⟩", "⟨b|q⟩", (3,)),                          # both move
            ("⟨a|p⟩", "⟨b|p⟩", (0,)), ("⟨a|q⟩", "⟨b|q⟩", (0,)),  # left only
            ("⟨a|p⟩", "⟨a|q⟩", (3,)), ("⟨b|p⟩", "⟨b|q⟩", (3,)),  # right only
        ])
        letters = [(e.src, e.dst, e.vector, e.letter) for e in b.edges if e.letter]
        assert letters == [("⟨a|q⟩", "⟨a|q⟩", (1,), "x1")]
        assert b.finals == {"⟨b|q⟩"} and b.initial == "⟨a|p⟩"

    def test_errors(self):
        with pytest.raises(PreconditionError):
            product(canonical_word_problem(1), canonical_word_problem(1))
        with pytest.raises(PreconditionError):
            product(regex_chain_nfa(2), canonical_word_problem(1))

    @settings(max_examples=60, deadline=None)
    @given(automata(max_counters=0, max_rank=1, max_edges=5), automata(max_rank=1, max_edges=5))
    def test_intersection_semantics(self, a1, a2):
        b = product(a1, a2)
        assert validate(b) == []
        for w in words(("x1", "X1"), 4):
            vb, v1, v2 = accept(b, w), accept(a1, w), accept(a2, w)
            if vb.unknown or v1.unknown or v2.unknown:
                continue
            assert vb.accepted == (v1.accepted and v2.accepted)

    @pytest.mark.parametrize("n", [1, 2])
    def test_product_language(self, n):
        b = product(regex_chain_nfa(n), canonical_word_problem(n))
        for w in words(b.alphabet.tokens, 6 if n == 2 else 8):
            parsed = parse_canonical_form(w, n)
            assert accept(b, w).accepted == (parsed is not None and parsed[0] == parsed[1])


class TestStructure:
    @pytest.mark.parametrize("n", [1, 2, 3])
    def test_canonical_passes(self, n):
        s = structured_automaton(n, canonical_word_problem(n))
        assert verify_structure(s) == []
        assert s.epsilon_class is EpsilonCycleClass.NO_EPSILON_CYCLE

    def test_inter_edges_epsilon_and_intra_letters(self):
        s = structured_automaton(2, canonical_word_problem(2))
        for e in s.edges:
            ts, td = s.tags[e.src], s.tags[e.dst]
            if ts != td:
                assert e.letter is None
            elif e.letter is not None:
                assert e.letter == ts

    def test_circuits_stay_in_one_tag(self):
        s = structured_automaton(2, canonical_word_problem(2))
        for c in simple_circuits(s):
            assert len({s.tags[x] for x in c.states(s)}) == 1

    def test_language(self):
        s = structured_automaton(2, canonical_word_problem(2))
        for w in words(s.alphabet.tokens, 6):
            parsed = parse_canonical_form(w, 2)
            if parsed is None:
                continue
            assert accept(s, w).accepted == (parsed[0] == parsed[1])

    def test_letter_edge_between_tags(self):
        a = chain_candidate(2, {"x1": [(1,)]})
        edges = list(a.edges) + [type(a.edges[0])("s_x1", "s_x2", (0,), "x1")]
        bad = CounterAutomaton(a.counters, a.alphabet, a.states, a.initial, a.finals, tuple(edges), a.tags)
        assert "inter-subautomaton letter edge" in kinds(verify_structure(bad))

    def test_two_finals(self):
        a = chain_candidate(2, {"x1": [(1,)]})
        bad = CounterAutomaton(
            a.counters, a.alphabet, a.states, a.initial, frozenset(["s_X1", "s_X2"]), a.edges, a.tags
        )
        assert "single final state" in kinds(verify_structure(bad))

    def test_backward_edge_crosses_circuit(self):
        a = chain_candidate(1, {"x1": [(1,)], "X1": [(-1,)]})
        edges = list(a.edges) + [type(a.edges[0])("s_X1", "s_x1", (0,), None)]
        bad = CounterAutomaton(a.counters, a.alphabet, a.states, a.initial, a.finals, tuple(edges), a.tags)
        assert {"chain order", "circuit crosses subautomata"} <= kinds(verify_structure(bad))

    def test_multiple_finals_are_merged(self):
        a = CounterAutomaton.build(
            1, 1, ["p", "q"], "p", ["p", "q"], [("p", "q", (1,), "x1"), ("q", "q", (-1,), "X1")]
        )
        merged = single_final(a)
        assert len(merged.finals) == 1
        for w in words(("x1", "X1"), 4):
            assert accept(a, w).accepted == accept(merged, w).accepted
        s = structured_automaton(1, a)
        assert verify_structure(s) == []
