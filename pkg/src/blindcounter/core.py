"""Data model for blind multicounter automata.

A ``CounterAutomaton`` with ``counters == m`` is a finite directed multigraph
whose edges carry a vector in Z^m and either a letter or epsilon (``None``).
A word is accepted when some path from the initial state to a final state
spells the word and its vectors sum to zero.  With ``m == 0`` this is an
ordinary NFA.

Edges are addressed by their index in ``CounterAutomaton.edges``; paths are
sequences of such indices, so parallel edges with identical labels stay
distinguishable.
"""

from __future__ import annotations

import enum
import re
from collections import Counter, defaultdict
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Mapping, Optional, Sequence

import networkx as nx

# Counter arithmetic is checked against a signed 64-bit range.
INT_MAX = 2**63 - 1
INT_MIN = -(2**63)

Vector = tuple[int, ...]
Word = tuple[str, ...]

EPSILON_SYMBOL = "ε"


class AutomatonError(ValueError):
    """Base class for malformed automata, words and paths."""


class TokenError(AutomatonError):
    pass


class PathError(AutomatonError):
    pass


class CounterOverflowError(ArithmeticError):
    pass


class PreconditionError(AutomatonError):
    pass


class InvalidAutomatonError(AutomatonError):
    def __init__(self, violations: Sequence["Violation"]):
        self.violations = list(violations)
        super().__init__("; ".join(str(v) for v in self.violations))


# ---------------------------------------------------------------------------
# Vectors


def checked(value: int) -> int:
    if value > INT_MAX or value < INT_MIN:
        raise CounterOverflowError(f"counter value {value} outside 64-bit range")
    return value


def zero(m: int) -> Vector:
    return (0,) * m


def vadd(u: Vector, v: Vector) -> Vector:
    return tuple(checked(a + b) for a, b in zip(u, v))


def vneg(u: Vector) -> Vector:
    return tuple(checked(-a) for a in u)


def vscale(c: int, u: Vector) -> Vector:
    return tuple(checked(c * a) for a in u)


def vsum(vectors: Iterable[Vector], m: int) -> Vector:
    total = zero(m)
    for v in vectors:
        total = vadd(total, v)
    return total


def is_zero(u: Vector) -> bool:
    return not any(u)


# ---------------------------------------------------------------------------
# Alphabet and words

_TOKEN_RE = re.compile(r"^([xX])([1-9][0-9]*)$")


@dataclass(frozen=True)
class Alphabet:
    """Generators ``x1..xn`` followed by their formal inverses ``X1..Xn``."""

    rank: int

    def __post_init__(self):
        if self.rank < 1:
            raise AutomatonError(f"alphabet rank must be positive, got {self.rank}")

    @cached_property
    def tokens(self) -> tuple[str, ...]:
        n = self.rank
        return tuple(f"x{i}" for i in range(1, n + 1)) + tuple(
            f"X{i}" for i in range(1, n + 1)
        )

    @cached_property
    def _index(self) -> dict[str, int]:
        return {t: i for i, t in enumerate(self.tokens)}

    def __contains__(self, token: object) -> bool:
        return token in self._index

    def index(self, token: str) -> int:
        try:
            return self._index[token]
        except KeyError:
            raise TokenError(f"unknown token {token!r} for rank {self.rank}") from None

    def generator(self, token: str) -> int:
        """0-based generator number of a token (``x3`` and ``X3`` give 2)."""
        return self.index(token) % self.rank

    def is_inverse(self, token: str) -> bool:
        return self.index(token) >= self.rank

    def inverse(self, token: str) -> str:
        i = self.index(token)
        return self.tokens[(i + self.rank) % (2 * self.rank)]

    def parse(self, text: str) -> Word:
        return parse_word(text, self.rank)


def parse_word(text: str, rank: Optional[int] = None) -> Word:
    """Parse whitespace-separated tokens; ``""`` and ``"ε"`` are the empty word."""
    tokens = text.split()
    if tokens == [EPSILON_SYMBOL]:
        return ()
    for t in tokens:
        mo = _TOKEN_RE.match(t)
        if mo is None:
            raise TokenError(f"malformed token {t!r}")
        if rank is not None and int(mo.group(2)) > rank:
            raise TokenError(f"token {t!r} exceeds rank {rank}")
    return tuple(tokens)


def format_word(word: Sequence[str]) -> str:
    return " ".join(word) if word else EPSILON_SYMBOL


def tag_label(token: str) -> str:
    return f"A({token})"


def parse_tag_label(label: str) -> str:
    mo = re.fullmatch(r"A\(([xX][1-9][0-9]*)\)", label)
    if mo is None:
        raise AutomatonError(f"malformed subautomaton label {label!r}")
    return mo.group(1)


# ---------------------------------------------------------------------------
# Automata


@dataclass(frozen=True)
class Edge:
    src: str
    dst: str
    vector: Vector
    letter: Optional[str] = None

    @property
    def is_epsilon(self) -> bool:
        return self.letter is None

    def label(self) -> str:
        vec = "(" + ",".join(str(c) for c in self.vector) + ")"
        return f"v={vec}; {self.letter if self.letter is not None else EPSILON_SYMBOL}"


@dataclass(frozen=True, eq=True)
class CounterAutomaton:
    """Immutable Z^m-automaton over the alphabet of the given rank.

    ``tags`` optionally maps states to the token ``a`` of the subautomaton
    ``A(a)`` they belong to.  Construction does not validate; call
    :func:`validate` or :meth:`check`.
    """

    counters: int
    alphabet: Alphabet
    states: tuple[str, ...]
    initial: str
    finals: frozenset[str]
    edges: tuple[Edge, ...]
    tags: Mapping[str, str] = field(default_factory=dict)

    __hash__ = None  # type: ignore[assignment]

    @classmethod
    def build(
        cls,
        counters: int,
        rank: int,
        states: Iterable[str],
        initial: str,
        finals: Iterable[str],
        edges: Iterable[tuple],
        tags: Optional[Mapping[str, str]] = None,
    ) -> "CounterAutomaton":
        """Convenience constructor taking ``(src, dst, vector, letter)`` tuples."""
        return cls(
            counters=counters,
            alphabet=Alphabet(rank),
            states=tuple(states),
            initial=initial,
            finals=frozenset(finals),
            edges=tuple(Edge(s, d, tuple(v), l) for s, d, v, l in edges),
            tags=dict(tags or {}),
        )

    @property
    def rank(self) -> int:
        return self.alphabet.rank

    @cached_property
    def state_index(self) -> dict[str, int]:
        return {s: i for i, s in enumerate(self.states)}

    @cached_property
    def out_edges(self) -> dict[str, tuple[int, ...]]:
        out: dict[str, list[int]] = defaultdict(list)
        for i, e in enumerate(self.edges):
            out[e.src].append(i)
        return {s: tuple(out.get(s, ())) for s in self.states}

    @cached_property
    def epsilon_class(self) -> "EpsilonCycleClass":
        return epsilon_cycle_class(self)

    def sorted_finals(self) -> list[str]:
        return [s for s in self.states if s in self.finals]

    def check(self) -> "CounterAutomaton":
        violations = validate(self)
        if violations:
            raise InvalidAutomatonError(violations)
        return self

    def with_tags(self, tags: Mapping[str, str]) -> "CounterAutomaton":
        return CounterAutomaton(
            self.counters, self.alphabet, self.states, self.initial, self.finals,
            self.edges, dict(tags),
        )


@dataclass(frozen=True)
class Violation:
    kind: str
    where: str
    detail: str = ""

    def __str__(self) -> str:
        text = f"{self.kind} at {self.where}"
        return f"{text}: {self.detail}" if self.detail else text


def validate(a: CounterAutomaton) -> list[Violation]:
    """Return every invariant violation of ``a``; an empty list means valid."""
    out: list[Violation] = []
    if a.counters < 0:
        out.append(Violation("negative counter count", "automaton", str(a.counters)))
    states = set(a.states)
    if len(states) != len(a.states):
        dupes = sorted(s for s, c in Counter(a.states).items() if c > 1)
        out.append(Violation("duplicate state", "states", ", ".join(dupes)))
    if a.initial not in states:
        out.append(Violation("dangling state", "initial", a.initial))
    for f in sorted(a.finals - states):
        out.append(Violation("dangling state", "finals", f))
    for i, e in enumerate(a.edges):
        where = f"edge {i}"
        for end in (e.src, e.dst):
            if end not in states:
                out.append(Violation("dangling state", where, end))
        if len(e.vector) != a.counters:
            out.append(Violation(
                "dimension mismatch", where,
                f"vector length {len(e.vector)} != counters {a.counters}",
            ))
        for c in e.vector:
            if not isinstance(c, int) or isinstance(c, bool):
                out.append(Violation("non-integer entry", where, repr(c)))
            elif c > INT_MAX or c < INT_MIN:
                out.append(Violation("overflow", where, str(c)))
        if e.letter is not None and e.letter not in a.alphabet:
            out.append(Violation("unknown token", where, repr(e.letter)))
    for s, t in a.tags.items():
        if s not in states:
            out.append(Violation("dangling state", "tags", s))
        if t not in a.alphabet:
            out.append(Violation("unknown token", f"tag of {s}", repr(t)))
    return out


# ---------------------------------------------------------------------------
# Paths


@dataclass(frozen=True)
class PathWitness:
    edges: tuple[int, ...]
    start: str
    end: str
    vector: Vector
    word: Word

    @classmethod
    def from_edges(cls, a: CounterAutomaton, edges: Sequence[int], start: Optional[str] = None) -> "PathWitness":
        edges = tuple(edges)
        for i in edges:
            if not 0 <= i < len(a.edges):
                raise PathError(f"edge index {i} not in automaton")
        if start is None:
            if not edges:
                raise PathError("empty path needs an explicit start state")
            start = a.edges[edges[0]].src
        if start not in a.state_index:
            raise PathError(f"start state {start!r} not in automaton")
        here = start
        vec = zero(a.counters)
        word: list[str] = []
        for k, i in enumerate(edges):
            e = a.edges[i]
            if e.src != here:
                raise PathError(f"step {k}: edge {i} leaves {e.src!r}, path is at {here!r}")
            vec = vadd(vec, e.vector)
            if e.letter is not None:
                word.append(e.letter)
            here = e.dst
        return cls(edges, start, here, vec, tuple(word))

    def states(self, a: CounterAutomaton) -> list[str]:
        """State sequence visited, length ``len(edges) + 1``."""
        seq = [self.start]
        for i in self.edges:
            seq.append(a.edges[i].dst)
        return seq


def is_accepting_path(a: CounterAutomaton, p: PathWitness) -> bool:
    fresh = PathWitness.from_edges(a, p.edges, p.start)
    if fresh.end != p.end or fresh.vector != p.vector or fresh.word != p.word:
        raise PathError("path witness disagrees with its recomputation")
    return p.start == a.initial and p.end in a.finals and is_zero(p.vector)


# ---------------------------------------------------------------------------
# Epsilon cycles


class EpsilonCycleClass(enum.Enum):
    NO_EPSILON_CYCLE = "NoEpsilonCycle"
    ZERO_VECTOR_CYCLES_ONLY = "ZeroVectorCyclesOnly"
    NONZERO_VECTOR_CYCLE = "NonzeroVectorCycle"


def _epsilon_graph(a: CounterAutomaton) -> nx.MultiDiGraph:
    g = nx.MultiDiGraph()
    g.add_nodes_from(a.states)
    for i, e in enumerate(a.edges):
        if e.is_epsilon:
            g.add_edge(e.src, e.dst, key=i)
    return g


def epsilon_cycle_class(a: CounterAutomaton) -> EpsilonCycleClass:
    """Classify the cycles of the epsilon-edge subgraph.

    Inside a strongly connected component every cycle has zero net vector
    iff the edge vectors are differences of a potential on the states, which
    is what the spanning-tree check below tests.
    """
    g = _epsilon_graph(a)
    comp_of: dict[str, int] = {}
    comps = list(nx.strongly_connected_components(g))
    for k, comp in enumerate(comps):
        for s in comp:
            comp_of[s] = k
    cyclic = False
    for k, comp in enumerate(comps):
        inner = [
            i for i, e in enumerate(a.edges)
            if e.is_epsilon and comp_of[e.src] == k and comp_of[e.dst] == k
        ]
        if not inner:
            continue
        cyclic = True
        root = min(comp, key=a.state_index.__getitem__)
        potential = {root: zero(a.counters)}
        queue = [root]
        while queue:
            s = queue.pop()
            for i in inner:
                e = a.edges[i]
                if e.src == s and e.dst not in potential:
                    potential[e.dst] = vadd(potential[s], e.vector)
                    queue.append(e.dst)
                elif e.dst == s and e.src not in potential:
                    potential[e.src] = vadd(potential[s], vneg(e.vector))
                    queue.append(e.src)
        for i in inner:
            e = a.edges[i]
            if vadd(potential[e.src], e.vector) != potential[e.dst]:
                return EpsilonCycleClass.NONZERO_VECTOR_CYCLE
    if cyclic:
        return EpsilonCycleClass.ZERO_VECTOR_CYCLES_ONLY
    return EpsilonCycleClass.NO_EPSILON_CYCLE


def epsilon_topological_order(a: CounterAutomaton) -> list[str]:
    """Topological order of the epsilon subgraph; raises if it has a cycle."""
    g = _epsilon_graph(a)
    try:
        return list(nx.lexicographical_topological_sort(g, key=a.state_index.__getitem__))
    except nx.NetworkXUnfeasible:
        raise AutomatonError("epsilon subgraph has a cycle") from None


# ---------------------------------------------------------------------------
# Circuits and the path order


@dataclass(frozen=True)
class Circuit:
    """A closed walk, inserted into a path at the first visit of ``anchor``."""

    anchor: str
    edges: tuple[int, ...]

    def vector(self, a: CounterAutomaton) -> Vector:
        return vsum((a.edges[i].vector for i in self.edges), a.counters)

    def states(self, a: CounterAutomaton) -> list[str]:
        return [a.edges[i].src for i in self.edges]

    def word(self, a: CounterAutomaton) -> Word:
        return tuple(a.edges[i].letter for i in self.edges if a.edges[i].letter is not None)


def insert_circuits(a: CounterAutomaton, p: PathWitness, circuits: Sequence[Circuit]) -> PathWitness:
    """Splice each circuit into the path at the first occurrence of its anchor.

    Circuits are inserted in order, so a circuit may anchor on a state that
    only an earlier circuit visits.
    """
    edges = list(p.edges)
    for c in circuits:
        if not c.edges:
            continue
        first = a.edges[c.edges[0]]
        if first.src != c.anchor or a.edges[c.edges[-1]].dst != c.anchor:
            raise PathError(f"circuit does not start and end at anchor {c.anchor!r}")
        if c.anchor == p.start:
            pos = 0
        else:
            pos = next(
                (k + 1 for k, i in enumerate(edges) if a.edges[i].dst == c.anchor), None
            )
            if pos is None:
                raise PathError(f"anchor {c.anchor!r} not visited by the path")
        edges[pos:pos] = c.edges
    return PathWitness.from_edges(a, edges, p.start)


def _is_subsequence(short: Sequence[str], long: Sequence[str]) -> bool:
    it = iter(long)
    return all(any(t == u for u in it) for t in short)


def circuit_decompose(a: CounterAutomaton, q: PathWitness, p: PathWitness) -> Optional[list[Circuit]]:
    """Circuits whose insertion into ``p`` yields ``q`` up to edge order.

    Returns ``None`` when ``p < q`` does not hold.  Raises :class:`PathError`
    if ``p``'s edges are not a sub-multiset of ``q``'s or endpoints differ.
    """
    if p.start != q.start or p.end != q.end:
        raise PathError("paths do not share endpoints")
    diff = Counter(q.edges)
    diff.subtract(p.edges)
    if any(c < 0 for c in diff.values()):
        raise PathError("p is not a sub-multiset of q")
    remaining = +diff
    if not remaining:
        return None
    balance: Counter = Counter()
    for i, c in remaining.items():
        balance[a.edges[i].src] += c
        balance[a.edges[i].dst] -= c
    if any(balance.values()):
        return None
    if not _is_subsequence(p.word, q.word):
        return None

    # Remaining out-edges per state in index order, for deterministic walks.
    out: dict[str, list[int]] = defaultdict(list)
    for i in sorted(remaining):
        out[a.edges[i].src].extend([i] * remaining[i])

    attached = p.states(a)
    circuits: list[Circuit] = []
    while any(out.values()):
        anchor = next((s for s in attached if out.get(s)), None)
        if anchor is None:
            return None  # a component of the difference touches nothing visited
        new = _split_closed_walk(a, anchor, out)
        circuits.extend(new)
        for c in new:
            attached.extend(c.states(a))
    return circuits


def _split_closed_walk(a: CounterAutomaton, anchor: str, out: dict[str, list[int]]) -> list[Circuit]:
    # Walk from the anchor until it closes (guaranteed in a balanced multigraph)
    # and peel simple cycles off the stack whenever a state repeats.
    stack_states = [anchor]
    stack_edges: list[int] = []
    popped: list[Circuit] = []
    here = anchor
    while True:
        i = out[here].pop(0)
        here = a.edges[i].dst
        stack_edges.append(i)
        if here in stack_states:
            k = stack_states.index(here)
            cyc = tuple(stack_edges[k:])
            del stack_edges[k:]
            del stack_states[k + 1:]
            popped.append(Circuit(here, cyc))
            if here == anchor and not stack_edges:
                break
        else:
            stack_states.append(here)
    # The anchor cycle closes last; inner cycles hang off states of cycles
    # popped after them, so reverse order keeps anchors available.
    return list(reversed(popped))


def is_below(a: CounterAutomaton, p: PathWitness, q: PathWitness) -> bool:
    """``p < q``: ``q`` is ``p`` with circuits added."""
    if p.start != q.start or p.end != q.end:
        return False
    if len(p.edges) >= len(q.edges):
        return False
    diff = Counter(q.edges)
    diff.subtract(p.edges)
    if any(c < 0 for c in diff.values()):
        return False
    return circuit_decompose(a, q, p) is not None


def simple_circuits(a: CounterAutomaton, limit: int = 10_000) -> list[Circuit]:
    """Every simple circuit of ``a``, anchored at its lowest-indexed state.

    Parallel edges give distinct circuits.  Enumeration stops after ``limit``
    circuits.
    """
    idx = a.state_index
    found: list[Circuit] = []
    for root in a.states:
        r = idx[root]
        stack: list[tuple[str, list[int], set[str]]] = [(root, [], {root})]
        while stack:
            here, path, seen = stack.pop()
            for i in reversed(a.out_edges[here]):
                e = a.edges[i]
                if idx[e.dst] < r:
                    continue
                if e.dst == root:
                    found.append(Circuit(root, tuple(path + [i])))
                    if len(found) >= limit:
                        return found
                elif e.dst not in seen:
                    stack.append((e.dst, path + [i], seen | {e.dst}))
    return found
