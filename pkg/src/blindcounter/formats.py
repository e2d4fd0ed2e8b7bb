"""JSON file formats for automata and affine translates, and DOT export.

Automaton files::

    {"counters": 1, "rank": 2, "states": ["s0", ...], "initial": "s0",
     "finals": ["s3"], "tags": {"s0": "A(x1)", ...},
     "edges": [{"from": "s0", "to": "s0", "vector": [1], "letter": "x1"}, ...]}

``"letter": null`` is epsilon.  Translate files for the grid-coverage check::

    {"n": 2, "translates": [{"base": ["0", "1"], "span": [["1", "0"]]}]}

with rationals written as ``"p/q"`` strings (plain integers also accepted).
"""

from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path
from typing import Any, Iterable, Iterator, Optional, Union

from .core import (
    AutomatonError,
    CounterAutomaton,
    InvalidAutomatonError,
    parse_tag_label,
    tag_label,
    validate,
)
from .lattice import AffineTranslate

PathLike = Union[str, Path]


class FormatError(AutomatonError):
    pass


def automaton_to_dict(a: CounterAutomaton) -> dict[str, Any]:
    return {
        "counters": a.counters,
        "rank": a.rank,
        "states": list(a.states),
        "initial": a.initial,
        "finals": a.sorted_finals(),
        "tags": {s: tag_label(a.tags[s]) for s in a.states if s in a.tags},
        "edges": [
            {"from": e.src, "to": e.dst, "vector": list(e.vector), "letter": e.letter}
            for e in a.edges
        ],
    }


def _require(obj: dict, key: str, kind, where: str):
    if key not in obj:
        raise FormatError(f"{where}: missing field {key!r}")
    value = obj[key]
    if not isinstance(value, kind) or (kind is int and isinstance(value, bool)):
        raise FormatError(f"{where}: field {key!r} has wrong type {type(value).__name__}")
    return value


def automaton_from_dict(data: Any) -> CounterAutomaton:
    if not isinstance(data, dict):
        raise FormatError("automaton: top level must be an object")
    counters = _require(data, "counters", int, "automaton")
    rank = _require(data, "rank", int, "automaton")
    states = _require(data, "states", list, "automaton")
    initial = _require(data, "initial", str, "automaton")
    finals = _require(data, "finals", list, "automaton")
    tags = data.get("tags", {}) or {}
    if not isinstance(tags, dict):
        raise FormatError("automaton: field 'tags' must be an object")
    edges = []
    for i, e in enumerate(_require(data, "edges", list, "automaton")):
        where = f"edge {i}"
        if not isinstance(e, dict):
            raise FormatError(f"{where}: must be an object")
        src = _require(e, "from", str, where)
        dst = _require(e, "to", str, where)
        vector = _require(e, "vector", list, where)
        if any(not isinstance(c, int) or isinstance(c, bool) for c in vector):
            raise FormatError(f"{where}: vector entries must be integers")
        if len(vector) != counters:
            raise FormatError(
                f"{where}: dimension mismatch, vector length {len(vector)} != counters {counters}"
            )
        letter = e.get("letter")
        if letter is not None and not isinstance(letter, str):
            raise FormatError(f"{where}: letter must be a token string or null")
        edges.append((src, dst, tuple(vector), letter))
    try:
        parsed_tags = {s: parse_tag_label(label) for s, label in tags.items()}
        a = CounterAutomaton.build(counters, rank, states, initial, finals, edges, parsed_tags)
    except AutomatonError as exc:
        raise FormatError(f"automaton: {exc}") from None
    violations = validate(a)
    if violations:
        raise InvalidAutomatonError(violations)
    return a


def dumps_automaton(a: CounterAutomaton) -> str:
    return json.dumps(automaton_to_dict(a), indent=2, ensure_ascii=False) + "\n"


def loads_automaton(text: str) -> CounterAutomaton:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    return automaton_from_dict(data)


def save_automaton(a: CounterAutomaton, path: PathLike) -> None:
    Path(path).write_text(dumps_automaton(a), encoding="utf-8")


def load_automaton(path: PathLike) -> CounterAutomaton:
    return loads_automaton(Path(path).read_text(encoding="utf-8"))


def _rational(x: Any, where: str) -> Fraction:
    if isinstance(x, bool) or not isinstance(x, (int, str)):
        raise FormatError(f"{where}: rationals must be integers or 'p/q' strings")
    try:
        return Fraction(x)
    except (ValueError, ZeroDivisionError):
        raise FormatError(f"{where}: bad rational {x!r}") from None


def load_translates(path: PathLike) -> tuple[int, list[AffineTranslate]]:
    try:
        data = json.loads(Path(path).read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise FormatError(f"line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    if not isinstance(data, dict):
        raise FormatError("translates: top level must be an object")
    n = _require(data, "n", int, "translates")
    out = []
    for i, t in enumerate(_require(data, "translates", list, "translates")):
        where = f"translate {i}"
        if not isinstance(t, dict):
            raise FormatError(f"{where}: must be an object")
        base = [_rational(x, where) for x in _require(t, "base", list, where)]
        span = [[_rational(x, where) for x in v] for v in t.get("span", [])]
        out.append(AffineTranslate.of(base, span))
    return n, out


def translates_to_dict(n: int, translates: Iterable[AffineTranslate]) -> dict[str, Any]:
    return {
        "n": n,
        "translates": [
            {"base": [str(x) for x in t.base], "span": [[str(x) for x in v] for v in t.span]}
            for t in translates
        ],
    }


# ---------------------------------------------------------------------------
# DOT


def _q(s: str) -> str:
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'


def to_dot(a: CounterAutomaton, highlight: Optional[Iterable[int]] = None, name: str = "automaton") -> Iterator[str]:
    """Graphviz lines, one edge per line; highlighted edge indices drawn in red."""
    hot = set(highlight or ())
    yield f"digraph {_q(name)} {{"
    yield "  rankdir=LR;"
    yield '  __start [shape=point, label=""];'
    groups: dict[str, list[str]] = {}
    for s in a.states:
        groups.setdefault(a.tags.get(s, ""), []).append(s)
    for k, (tag, members) in enumerate(groups.items()):
        indent = "  "
        if tag:
            yield f"  subgraph cluster_{k} {{"
            yield f"    label={_q(tag_label(tag))};"
            indent = "    "
        for s in members:
            shape = "doublecircle" if s in a.finals else "circle"
            yield f"{indent}{_q(s)} [shape={shape}];"
        if tag:
            yield "  }"
    yield f"  __start -> {_q(a.initial)};"
    for i, e in enumerate(a.edges):
        attrs = f"label={_q(e.label())}"
        if i in hot:
            attrs += ", color=red, penwidth=2"
        yield f"  {_q(e.src)} -> {_q(e.dst)} [{attrs}];"
    yield "}"

