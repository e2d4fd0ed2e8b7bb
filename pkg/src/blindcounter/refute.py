"""Refutation engine for undersized candidate automata.

Given a structured m-counter candidate that is claimed to accept
W(Z^n) ∩ x1*..xn*X1*..Xn* with m < n, search for

1. a base accepting path ``p`` for some canonical word w(j) that is minimal
   among the enumerated paths,
2. n extensions ``q_i > p`` (``p`` plus circuits) accepting w(j + a_i) with
   the displacements ``a_i`` linearly independent,
3. an integer dependence ``alpha`` among the counter contributions ``s_i``
   of the x-half circuits, which exists because n vectors in Z^m are
   dependent,

and splice the circuits back into ``p`` with multiplicities ``alpha`` to get
an accepting path whose word has unequal x- and X-block exponents.  Every
emitted witness is re-checked by both acceptance engines.
"""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass, field
from typing import Iterator, Optional, Sequence, Union

from .abelian import canonical_word, exponent_vector, parse_canonical_form
from .acceptance import (
    SearchLimits,
    Verdict,
    accept,
    brute_force_accept,
    enumerate_accepting_paths,
)
from .constructions import structured_automaton, verify_structure
from .core import (
    Circuit,
    CounterAutomaton,
    PathError,
    PathWitness,
    PreconditionError,
    Vector,
    Word,
    circuit_decompose,
    format_word,
    insert_circuits,
    is_accepting_path,
    is_below,
    simple_circuits,
    vadd,
    vscale,
    vsum,
    zero,
)
from .lattice import integer_dependence, is_independent

log = logging.getLogger(__name__)


class RefutationCheckError(AssertionError):
    """An emitted object failed its independent re-check."""


@dataclass(frozen=True)
class RefuteConfig:
    box: int = 3
    circuit_bound: int = 2
    limits: SearchLimits = field(default_factory=SearchLimits)
    # multiplicity vectors tried per base path
    max_combinations: int = 100_000


@dataclass(frozen=True)
class Extension:
    q: PathWitness
    displacement: Vector
    x_half: tuple[Circuit, ...]
    X_half: tuple[Circuit, ...]
    s: Vector
    S: Vector


@dataclass(frozen=True)
class ExtensionFamily:
    base: PathWitness
    j: Vector
    extensions: tuple[Extension, ...]


@dataclass(frozen=True)
class FamilySearch:
    family: Optional[ExtensionFamily]
    independent: tuple[Vector, ...]
    combinations_tried: int


@dataclass(frozen=True)
class Synthesis:
    alpha: tuple[int, ...]
    path: PathWitness
    witness: Word
    u: Vector
    v: Vector


@dataclass(frozen=True)
class Refutation:
    automaton: CounterAutomaton
    family: ExtensionFamily
    synthesis: Synthesis
    minimal_paths: int
    engine: Verdict
    oracle: Verdict

    @property
    def witness(self) -> Word:
        return self.synthesis.witness


@dataclass(frozen=True)
class NotRefuted:
    automaton: CounterAutomaton
    max_independent: int
    minimal_paths: int
    reason: str


def _word_key(a: CounterAutomaton, p: PathWitness):
    return (tuple(a.alphabet.index(t) for t in p.word), p.edges)


def _canonical_j(p: PathWitness, n: int) -> Vector:
    parsed = parse_canonical_form(p.word, n)
    if parsed is None or parsed[0] != parsed[1]:
        raise PreconditionError(f"path word {format_word(p.word)} is not a canonical word w(j)")
    return parsed[0]


def minimal_accepting_paths(
    a: CounterAutomaton, box: int, limits: SearchLimits = SearchLimits()
) -> list[PathWitness]:
    """Accepting paths for w(j), j in {0..box}^n, minimal among themselves."""
    n = a.rank
    paths: list[PathWitness] = []
    for j in itertools.product(range(box + 1), repeat=n):
        paths.extend(enumerate_accepting_paths(a, canonical_word(j), limits))
    paths.sort(key=lambda p: (len(p.edges), _word_key(a, p)))
    minimal: list[PathWitness] = []
    for q in paths:
        # anything below q is strictly shorter, so it was examined already
        if not any(is_below(a, p, q) for p in paths if len(p.edges) < len(q.edges)):
            minimal.append(q)
    minimal.sort(key=lambda p: _word_key(a, p))
    return minimal


# ---------------------------------------------------------------------------
# Extension search


@dataclass(frozen=True)
class _Candidate:
    circuit: Circuit
    vector: Vector
    tag: str
    letters: tuple[int, ...]  # per-token letter counts, alphabet order


def _rotate(a: CounterAutomaton, c: Circuit, anchor: str) -> Circuit:
    srcs = [a.edges[i].src for i in c.edges]
    k = srcs.index(anchor)
    return Circuit(anchor, c.edges[k:] + c.edges[:k])


def attachable_circuits(a: CounterAutomaton, p: PathWitness) -> list[Circuit]:
    """Simple circuits reachable from ``p`` by repeated attachment.

    A circuit is anchored at the first state it shares with ``p`` (in visit
    order) or, failing that, with a previously listed circuit.
    """
    pool = simple_circuits(a)
    attached = list(dict.fromkeys(p.states(a)))
    out: list[Circuit] = []
    taken = [False] * len(pool)
    grew = True
    while grew:
        grew = False
        for k, c in enumerate(pool):
            if taken[k]:
                continue
            states = set(c.states(a))
            anchor = next((s for s in attached if s in states), None)
            if anchor is None:
                continue
            taken[k] = True
            grew = True
            out.append(_rotate(a, c, anchor))
            attached.extend(s for s in c.states(a) if s not in attached)
    return out


def _describe(a: CounterAutomaton, c: Circuit) -> _Candidate:
    tags = {a.tags[s] for s in c.states(a)}
    if len(tags) != 1:
        raise RefutationCheckError(f"circuit {c.edges} crosses subautomata {sorted(tags)}")
    counts = [0] * len(a.alphabet.tokens)
    for t in c.word(a):
        counts[a.alphabet.index(t)] += 1
    return _Candidate(c, c.vector(a), tags.pop(), tuple(counts))


def _multiplicities(count: int, bound: int) -> Iterator[tuple[int, ...]]:
    """Nonzero vectors in {0..bound}^count by total, then lexicographically descending."""
    def with_total(k: int, total: int):
        if k == 0:
            if total == 0:
                yield ()
            return
        for first in range(min(bound, total), -1, -1):
            for rest in with_total(k - 1, total - first):
                yield (first,) + rest

    for total in range(1, count * bound + 1):
        yield from with_total(count, total)


def _expand(cands: Sequence[_Candidate], mult: Sequence[int]) -> list[_Candidate]:
    out = []
    for c, k in zip(cands, mult):
        out.extend([c] * k)
    return out


def find_extension_family(
    a: CounterAutomaton,
    p: PathWitness,
    circuit_bound: int = 2,
    box: int = 3,
    max_combinations: int = 100_000,
) -> FamilySearch:
    """Greedily collect extensions of ``p`` with independent displacements.

    Circuit multiplicity vectors are tried in breadth-first order (smallest
    total first); each displacement coordinate is capped at ``box``.
    """
    n = a.rank
    m = a.counters
    j = _canonical_j(p, n)
    cands = [_describe(a, c) for c in attachable_circuits(a, p)]
    chosen: list[Extension] = []
    disps: list[Vector] = []
    tried = 0
    for mult in _multiplicities(len(cands), circuit_bound):
        if tried >= max_combinations:
            break
        tried += 1
        picked = _expand(cands, mult)
        if any(vsum((c.vector for c in picked), m)):
            continue
        counts = [sum(c.letters[k] for c in picked) for k in range(2 * n)]
        add_x, add_X = tuple(counts[:n]), tuple(counts[n:])
        if add_x != add_X or not any(add_x) or max(add_x) > box:
            continue
        if not is_independent(disps + [add_x]):
            continue
        try:
            q = insert_circuits(a, p, [c.circuit for c in picked])
        except PathError:  # a nested circuit whose host was not picked
            continue
        ext = _make_extension(a, p, j, q, picked)
        chosen.append(ext)
        disps.append(ext.displacement)
        log.debug("extension %d: a=%s", len(chosen), ext.displacement)
        if len(chosen) == n:
            return FamilySearch(ExtensionFamily(p, j, tuple(chosen)), tuple(disps), tried)
    return FamilySearch(None, tuple(disps), tried)


def _make_extension(a, p, j, q, picked: Sequence[_Candidate]) -> Extension:
    n = a.rank
    if not is_accepting_path(a, q):
        raise RefutationCheckError("extension path is not accepting")
    parsed = parse_canonical_form(q.word, n)
    if parsed is None or parsed[0] != parsed[1]:
        raise RefutationCheckError(f"extension word {format_word(q.word)} is not canonical")
    disp = tuple(x - y for x, y in zip(parsed[0], j))
    if circuit_decompose(a, q, p) is None:
        raise RefutationCheckError("extension is not above the base path")
    gens = set(a.alphabet.tokens[:n])
    x_half = tuple(c.circuit for c in picked if c.tag in gens)
    X_half = tuple(c.circuit for c in picked if c.tag not in gens)
    s = vsum((c.vector for c in picked if c.tag in gens), a.counters)
    S = vsum((c.vector for c in picked if c.tag not in gens), a.counters)
    if vadd(s, S) != zero(a.counters):
        raise RefutationCheckError("s + S != 0 for an accepting extension")
    return Extension(q, disp, x_half, X_half, s, S)


# ---------------------------------------------------------------------------
# Witness synthesis


def synthesize_witness(a: CounterAutomaton, fam: ExtensionFamily) -> Synthesis:
    n = a.rank
    if a.counters >= n:
        raise PreconditionError(f"precondition m < n violated: m = {a.counters}, n = {n}")
    alpha = integer_dependence([e.s for e in fam.extensions]).coefficients
    circuits: list[Circuit] = []
    u, v = fam.j, fam.j
    for ext, al in zip(fam.extensions, alpha):
        if al > 0:
            circuits.extend(ext.x_half * al)
            u = vadd(u, vscale(al, ext.displacement))
        elif al < 0:
            circuits.extend(ext.X_half * -al)
            v = vadd(v, vscale(-al, ext.displacement))
    r = insert_circuits(a, fam.base, circuits)
    if not is_accepting_path(a, r):
        raise RefutationCheckError("spliced path is not accepting")
    if parse_canonical_form(r.word, n) != (u, v):
        raise RefutationCheckError(
            f"spliced word {format_word(r.word)} does not have exponents u={u}, v={v}"
        )
    if u == v:
        raise RefutationCheckError("u == v: displacements were not independent")
    return Synthesis(tuple(alpha), r, r.word, u, v)


def refute(
    a: CounterAutomaton, n: int, config: RefuteConfig = RefuteConfig()
) -> Union[Refutation, NotRefuted]:
    """Search for a word the candidate accepts but that is not trivial in Z^n.

    Untagged candidates are first put in structured form.  Raises
    :class:`PreconditionError` when the candidate has ``m >= n`` counters
    and :class:`InvalidAutomatonError` when it is malformed.
    """
    a.check()
    if a.rank != n:
        raise PreconditionError(f"candidate has rank {a.rank}, expected {n}")
    if a.counters >= n:
        raise PreconditionError(f"precondition m < n violated: m = {a.counters}, n = {n}")
    if not a.tags:
        a = structured_automaton(n, a)
    violations = verify_structure(a)
    if violations:
        raise PreconditionError("candidate is not structured: " + "; ".join(map(str, violations)))

    minimal = minimal_accepting_paths(a, config.box, config.limits)
    log.info("%d minimal accepting paths", len(minimal))
    best = 0
    for p in minimal:
        search = find_extension_family(
            a, p, config.circuit_bound, config.box, config.max_combinations
        )
        best = max(best, len(search.independent))
        if search.family is None:
            continue
        syn = synthesize_witness(a, search.family)
        engine = accept(a, syn.witness, config.limits)
        oracle = brute_force_accept(a, syn.witness)
        if not (engine.accepted and oracle.accepted):
            raise RefutationCheckError(f"witness not accepted: engine {engine}, oracle {oracle}")
        for verdict in (engine, oracle):
            if not is_accepting_path(a, verdict.path) or verdict.path.word != syn.witness:
                raise RefutationCheckError("acceptance certificate does not check")
        if not any(exponent_vector(syn.witness, n)):
            raise RefutationCheckError("witness lies in the word problem")
        return Refutation(a, search.family, syn, len(minimal), engine, oracle)
    reason = (
        "no accepting canonical paths within the box"
        if not minimal
        else f"at most {best} independent displacements found"
    )
    return NotRefuted(a, best, len(minimal), reason)


def _vec(v: Sequence[int]) -> str:
    return "(" + ", ".join(str(x) for x in v) + ")"


def _circuits(a: CounterAutomaton, cs: Sequence[Circuit]) -> str:
    if not cs:
        return "[]"
    return "[" + "; ".join(f"{c.anchor}: {list(c.edges)}" for c in cs) + "]"


def report_lines(result: Union[Refutation, NotRefuted], n: int) -> list[str]:
    """Stable line-oriented report of a refutation run."""
    a = result.automaton
    lines = [f"rank: {n}", f"counters: {a.counters}", f"minimal paths: {result.minimal_paths}"]
    if isinstance(result, NotRefuted):
        lines += [
            "result: not-refuted",
            f"max independent displacements: {result.max_independent}",
            f"reason: {result.reason}",
        ]
        return lines
    fam, syn = result.family, result.synthesis
    lines += [
        "result: refuted",
        f"witness: {format_word(syn.witness)}",
        f"exponent vector: {_vec(exponent_vector(syn.witness, n))}",
        f"u: {_vec(syn.u)}",
        f"v: {_vec(syn.v)}",
        f"base word: {format_word(fam.base.word)}",
        f"j: {_vec(fam.j)}",
        f"base path: {list(fam.base.edges)}",
    ]
    for k, ext in enumerate(fam.extensions, 1):
        lines += [
            f"extension {k} a: {_vec(ext.displacement)}",
            f"extension {k} word: {format_word(ext.q.word)}",
            f"extension {k} path: {list(ext.q.edges)}",
            f"extension {k} x-half: {_circuits(a, ext.x_half)}",
            f"extension {k} X-half: {_circuits(a, ext.X_half)}",
            f"extension {k} s: {_vec(ext.s)}",
            f"extension {k} S: {_vec(ext.S)}",
        ]
    lines += [
        f"alpha: {_vec(syn.alpha)}",
        f"path r: {list(syn.path.edges)}",
        f"engine: {result.engine.status.value}",
        f"oracle: {result.oracle.status.value}",
    ]
    return lines
