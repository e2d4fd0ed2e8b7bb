import json

import pytest
from hypothesis import given, settings

from blindcounter import InvalidAutomatonError, canonical_word_problem, structured_automaton
from blindcounter.cli import main
from blindcounter.corpus import named_corpus
from blindcounter.formats import (
    FormatError,
    automaton_to_dict,
    dumps_automaton,
    load_translates,
    loads_automaton,
    save_automaton,
    to_dot,
)

from conftest import automata


def same(a, b):
    return (
        a.counters == b.counters and a.alphabet == b.alphabet and a.states == b.states
        and a.initial == b.initial and a.finals == b.finals and a.edges == b.edges
        and a.tags == b.tags
    )


class TestFormat:
    @pytest.mark.parametrize("name", sorted(named_corpus()))
    def test_round_trip_named(self, name):
        a = named_corpus()[name]
        b = loads_automaton(dumps_automaton(a))
        assert same(a, b)
        assert dumps_automaton(b) == dumps_automaton(a)

    @settings(max_examples=100, deadline=None)
    @given(automata())
    def test_round_trip_random(self, a):
        assert same(a, loads_automaton(dumps_automaton(a)))

    def test_tags_written_as_labels(self):
        d = automaton_to_dict(structured_automaton(1, canonical_word_problem(1)))
        assert set(d["tags"].values()) == {"A(x1)", "A(X1)"}

    def test_vector_length_mismatch_names_edge(self):
        d = automaton_to_dict(canonical_word_problem(2))
        d["edges"][3]["vector"] = [1]
        with pytest.raises(FormatError, match=r"edge 3: dimension mismatch"):
            loads_automaton(json.dumps(d))

    def test_unknown_state(self):
        d = automaton_to_dict(canonical_word_problem(1))
        d["edges"][0]["to"] = "nowhere"
        with pytest.raises(InvalidAutomatonError, match="nowhere"):
            loads_automaton(json.dumps(d))

    def test_bad_json(self):
        with pytest.raises(FormatError, match="line 1"):
            loads_automaton("{")

    def test_translates(self, tmp_path):
        p = tmp_path / "t.json"
        p.write_text(json.dumps({"n": 2, "translates": [{"base": ["1/2", 0], "span": [["1", "-2/3"]]}]}))
        n, (t,) = load_translates(p)
        assert n == 2 and t.dim == 1
        assert t.contains(("3/2", "-2/3"))

    def test_dot_highlight(self):
        a = canonical_word_problem(1)
        lines = list(to_dot(a, highlight=[1]))
        edge_lines = [l for l in lines if "->" in l and "__start" not in l]
        assert len(edge_lines) == len(a.edges)
        assert "color=red" in edge_lines[1] and "color=red" not in edge_lines[0]
        assert 'label="v=(-1); X1"' in edge_lines[1]


@pytest.fixture
def files(tmp_path):
    z2 = tmp_path / "z2.json"
    save_automaton(canonical_word_problem(2), z2)
    return tmp_path, z2


def run(capsys, *argv):
    code = main([str(x) for x in argv])
    out, err = capsys.readouterr()
    return code, out, err


class TestCli:
    def test_accept_prints_certificate(self, capsys, files):
        _, z2 = files
        code, out, _ = run(capsys, "accept", z2, "x1 x2 X1 X2")
        assert code == 0
        assert "verdict: Accepted" in out
        assert "path: [0, 1, 2, 3]" in out and "vector: (0, 0)" in out

    def test_rejected(self, capsys, files):
        code, out, _ = run(capsys, "accept", files[1], "x1 x1 X2")
        assert code == 1 and "verdict: Rejected" in out

    def test_unknown_token(self, capsys, files):
        code, _, err = run(capsys, "accept", files[1], "y1")
        assert code == 2 and "error:" in err

    def test_unknown_verdict(self, capsys, tmp_path):
        p = tmp_path / "pump.json"
        save_automaton(named_corpus()["eps_pump"], p)
        code, out, _ = run(capsys, "accept", p, "x1 x1 x1", "--counter-bound", "8")
        assert code == 3 and "verdict: Unknown" in out

    def test_oracle(self, capsys, files):
        code, out, _ = run(capsys, "accept", files[1], "x2 X2", "--oracle")
        assert code == 0 and "oracle: Accepted" in out and "oracle check: consistent" in out

    def test_missing_file(self, capsys, tmp_path):
        code, _, err = run(capsys, "verify", tmp_path / "absent.json")
        assert code == 2 and "error:" in err

    def test_usage_error(self, capsys):
        assert run(capsys, "accept")[0] == 2

    def test_malformed_file(self, capsys, tmp_path):
        d = automaton_to_dict(canonical_word_problem(1))
        d["edges"][1]["vector"] = [1, 2]
        p = tmp_path / "bad.json"
        p.write_text(json.dumps(d))
        code, _, err = run(capsys, "verify", p)
        assert code == 2 and "edge 1: dimension mismatch" in err

    def test_build_structure_verify(self, capsys, files):
        tmp, z2 = files
        s = tmp / "s.json"
        assert run(capsys, "structure", 2, z2, "-o", s)[0] == 0
        code, out, _ = run(capsys, "verify", s)
        assert code == 0 and "structure: ok" in out and "epsilon cycles: NoEpsilonCycle" in out

    def test_product(self, capsys, files):
        tmp, z2 = files
        chain = tmp / "chain.json"
        run(capsys, "build-chain", 2, "-o", chain)
        code, out, _ = run(capsys, "product", chain, z2)
        assert code == 0 and len(json.loads(out)["states"]) == 6

    def test_enumerate(self, capsys, files):
        code, out, _ = run(capsys, "enumerate", files[1], "x1 X1")
        assert code == 0 and "paths: 1" in out

    def test_refute_with_dot(self, capsys, tmp_path):
        cand, dot = tmp_path / "c.json", tmp_path / "r.dot"
        run(capsys, "build-candidate", "projection", "-o", cand)
        code, out, _ = run(capsys, "refute", cand, "--rank", 2, "--dot", dot)
        assert code == 0
        assert "result: refuted" in out and "witness: x2" in out
        text = dot.read_text()
        assert text.startswith('digraph "refutation"') and "color=red" in text

    def test_refute_not_refuted(self, capsys, tmp_path):
        cand = tmp_path / "c.json"
        run(capsys, "build-candidate", "first-only", "-o", cand)
        code, out, _ = run(capsys, "refute", cand, "--rank", 2)
        assert code == 1 and "not-refuted" in out

    def test_refute_precondition(self, capsys, files):
        code, _, err = run(capsys, "refute", files[1], "--rank", 2)
        assert code == 2 and "m < n" in err

    def test_planes_check(self, capsys, tmp_path):
        p = tmp_path / "t.json"
        p.write_text(json.dumps({
            "n": 2, "translates": [{"base": [0, 1], "span": [[1, 0]]}, {"base": [1, 0], "span": [[0, 1]]}],
        }))
        code, out, _ = run(capsys, "planes-check", p)
        assert code == 0 and "uncovered: (2, 2)" in out and "k: 3" in out

    def test_export_dot(self, capsys, files):
        code, out, _ = run(capsys, "export-dot", files[1], "--highlight", 0)
        assert code == 0 and out.count("color=red") == 1

    def test_abelian(self, capsys):
        code, out, _ = run(capsys, "abelian", "x1 x2 X1", "--rank", 2)
        assert code == 1
        assert "exponent vector: (0, 1)" in out and "canonical form: u=(1, 1) v=(1, 0)" in out
        assert run(capsys, "abelian", "x1 X1", "--rank", 1)[0] == 0
