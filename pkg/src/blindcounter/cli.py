"""Command-line interface.

Exit codes: 0 success, 1 negative result (Rejected, not-refuted, nontrivial
word), 2 usage or input error, 3 Unknown verdict, 4 engine/oracle
disagreement.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from typing import Optional, Sequence

from . import constructions
from .abelian import exponent_vector, parse_canonical_form
from .acceptance import SearchLimits, Status, accept, brute_force_accept, enumerate_accepting_paths
from .constructions import (
    canonical_word_problem,
    product,
    regex_chain_nfa,
    structured_automaton,
    verify_structure,
)
from .core import AutomatonError, CounterAutomaton, format_word, parse_word
from .formats import dumps_automaton, load_automaton, load_translates, to_dot
from .lattice import grid_coverage_check
from .refute import NotRefuted, RefuteConfig, refute, report_lines

EXIT_OK, EXIT_NEGATIVE, EXIT_INPUT, EXIT_UNKNOWN, EXIT_DISAGREE = 0, 1, 2, 3, 4

CANDIDATES = {
    "projection": constructions.projection_candidate,
    "swap": constructions.swap_counter_candidate,
    "first-only": constructions.first_generator_only_candidate,
}


def _vec(v) -> str:
    return "(" + ", ".join(str(x) for x in v) + ")"


def _emit_automaton(a: CounterAutomaton, output: Optional[str]) -> int:
    text = dumps_automaton(a)
    if output:
        with open(output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def _limits(args) -> SearchLimits:
    return SearchLimits(
        counter_bound=args.counter_bound,
        epsilon_steps=args.epsilon_steps,
        max_paths=getattr(args, "max_paths", SearchLimits.max_paths),
    )


def _word(a: CounterAutomaton, text: str):
    return parse_word(text, a.rank)


def cmd_build_canonical(args) -> int:
    return _emit_automaton(canonical_word_problem(args.n), args.output)


def cmd_build_chain(args) -> int:
    return _emit_automaton(regex_chain_nfa(args.n), args.output)


def cmd_build_candidate(args) -> int:
    return _emit_automaton(CANDIDATES[args.kind](), args.output)


def cmd_product(args) -> int:
    return _emit_automaton(product(load_automaton(args.a1), load_automaton(args.a2)), args.output)


def cmd_structure(args) -> int:
    return _emit_automaton(structured_automaton(args.n, load_automaton(args.a2)), args.output)


def cmd_verify(args) -> int:
    a = load_automaton(args.automaton)
    print(f"states: {len(a.states)}")
    print(f"edges: {len(a.edges)}")
    print(f"epsilon cycles: {a.epsilon_class.value}")
    if not a.tags:
        print("structure: untagged")
        return EXIT_OK
    violations = verify_structure(a)
    if not violations:
        print("structure: ok")
        return EXIT_OK
    for v in violations:
        print(f"violation: {v}")
    return EXIT_NEGATIVE


def cmd_accept(args) -> int:
    a = load_automaton(args.automaton)
    w = _word(a, args.word)
    verdict = accept(a, w, _limits(args))
    print(f"word: {format_word(w)}")
    print(f"mode: {a.epsilon_class.value}")
    print(f"verdict: {verdict.status.value}")
    if verdict.detail:
        print(f"detail: {verdict.detail}")
    if verdict.path is not None:
        print(f"path: {list(verdict.path.edges)}")
        print(f"states: {' '.join(verdict.path.states(a))}")
        print(f"vector: {_vec(verdict.path.vector)}")
    code = {Status.ACCEPTED: EXIT_OK, Status.REJECTED: EXIT_NEGATIVE, Status.UNKNOWN: EXIT_UNKNOWN}[
        verdict.status
    ]
    if args.oracle:
        oracle = brute_force_accept(a, w, args.max_path_len)
        print(f"oracle: {oracle.status.value}")
        if {verdict.status, oracle.status} == {Status.ACCEPTED, Status.REJECTED}:
            print("oracle check: DISAGREE")
            return EXIT_DISAGREE
        print("oracle check: consistent")
    return code


def cmd_enumerate(args) -> int:
    a = load_automaton(args.automaton)
    w = _word(a, args.word)
    paths = enumerate_accepting_paths(a, w, _limits(args))
    print(f"word: {format_word(w)}")
    print(f"paths: {len(paths)}")
    for k, p in enumerate(paths):
        print(f"path {k}: {list(p.edges)}")
    return EXIT_OK if paths else EXIT_NEGATIVE


def cmd_refute(args) -> int:
    a = load_automaton(args.automaton)
    config = RefuteConfig(
        box=args.box,
        circuit_bound=args.circuits,
        limits=_limits(args),
        max_combinations=args.max_combinations,
    )
    result = refute(a, args.rank, config)
    for line in report_lines(result, args.rank):
        print(line)
    if args.dot and not isinstance(result, NotRefuted):
        added = set()
        for ext in result.family.extensions:
            for c in ext.x_half + ext.X_half:
                added.update(c.edges)
        with open(args.dot, "w", encoding="utf-8") as fh:
            fh.write("\n".join(to_dot(result.automaton, added, name="refutation")) + "\n")
    return EXIT_NEGATIVE if isinstance(result, NotRefuted) else EXIT_OK


def cmd_planes_check(args) -> int:
    n, translates = load_translates(args.file)
    report = grid_coverage_check(n, translates)
    print(f"n: {n}")
    print(f"r: {len(translates)}")
    print(f"k: {report.k}")
    print(f"max dimension: {report.max_dim}")
    print(f"counts: {report.counts}")
    print(f"bound k^m: {report.k ** report.max_dim}")
    print(f"aggregate r*k^m: {len(translates) * report.k ** report.max_dim} < k^n: {report.k ** n}")
    print(f"uncovered: {_vec(report.uncovered) if report.uncovered else 'none'}")
    return EXIT_OK if report.uncovered is not None else EXIT_NEGATIVE


def cmd_export_dot(args) -> int:
    a = load_automaton(args.automaton)
    for line in to_dot(a, args.highlight):
        print(line)
    return EXIT_OK


def cmd_abelian(args) -> int:
    w = parse_word(args.word, args.rank)
    ev = exponent_vector(w, args.rank)
    parsed = parse_canonical_form(w, args.rank)
    print(f"word: {format_word(w)}")
    print(f"exponent vector: {_vec(ev)}")
    if parsed is None:
        print("canonical form: no")
    else:
        print(f"canonical form: u={_vec(parsed[0])} v={_vec(parsed[1])}")
    trivial = not any(ev)
    print(f"identity: {'yes' if trivial else 'no'}")
    return EXIT_OK if trivial else EXIT_NEGATIVE


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="blindcounter", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    def limits(p):
        p.add_argument("--counter-bound", type=int, default=64)
        p.add_argument("--epsilon-steps", type=int, default=None)

    p = sub.add_parser("build-canonical", help="one-state automaton for the word problem of Z^n")
    p.add_argument("n", type=int)
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_build_canonical)

    p = sub.add_parser("build-chain", help="chain NFA for x1*..xn*X1*..Xn*")
    p.add_argument("n", type=int)
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_build_chain)

    p = sub.add_parser("build-candidate", help="undersized rank-2 candidate automata")
    p.add_argument("kind", choices=sorted(CANDIDATES))
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_build_candidate)

    p = sub.add_parser("product", help="product of a zero-counter A1 with A2")
    p.add_argument("a1")
    p.add_argument("a2")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_product)

    p = sub.add_parser("structure", help="structured (tagged) automaton from A2")
    p.add_argument("n", type=int)
    p.add_argument("a2")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_structure)

    p = sub.add_parser("verify", help="validate an automaton and check its structure")
    p.add_argument("automaton")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("accept", help="decide whether a word is accepted")
    p.add_argument("automaton")
    p.add_argument("word")
    limits(p)
    p.add_argument("--oracle", action="store_true", help="cross-check with brute force")
    p.add_argument("--max-path-len", type=int, default=None)
    p.set_defaults(func=cmd_accept)

    p = sub.add_parser("enumerate", help="list accepting paths for a word")
    p.add_argument("automaton")
    p.add_argument("word")
    limits(p)
    p.add_argument("--max-paths", type=int, default=10_000)
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("refute", help="synthesize a witness against an undersized candidate")
    p.add_argument("automaton")
    p.add_argument("--rank", type=int, required=True)
    p.add_argument("--box", type=int, default=3)
    p.add_argument("--circuits", type=int, default=2)
    p.add_argument("--max-combinations", type=int, default=100_000)
    p.add_argument("--dot", help="write the automaton with extension circuits highlighted")
    limits(p)
    p.set_defaults(func=cmd_refute)

    p = sub.add_parser("planes-check", help="grid coverage check for affine translates")
    p.add_argument("file")
    p.set_defaults(func=cmd_planes_check)

    p = sub.add_parser("export-dot", help="Graphviz rendering of an automaton")
    p.add_argument("automaton")
    p.add_argument("--highlight", type=int, nargs="*", default=[])
    p.set_defaults(func=cmd_export_dot)

    p = sub.add_parser("abelian", help="exponent vector and canonical form of a word")
    p.add_argument("word")
    p.add_argument("--rank", type=int, required=True)
    p.set_defaults(func=cmd_abelian)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING)
    try:
        return args.func(args)
    except (AutomatonError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
