"""Write the canonical, chain, structured and candidate automata as JSON and DOT."""

import argparse
from pathlib import Path

from blindcounter.corpus import named_corpus
from blindcounter.formats import save_automaton, to_dot


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("outdir", type=Path)
    args = ap.parse_args()

    args.outdir.mkdir(parents=True, exist_ok=True)
    for name, a in named_corpus().items():
        save_automaton(a, args.outdir / f"{name}.json")
        (args.outdir / f"{name}.dot").write_text("\n".join(to_dot(a, name=name)) + "\n")
        print(f"{name:<16} states={len(a.states):<3} edges={len(a.edges):<3} {a.epsilon_class.value}")


if __name__ == "__main__":
    main()
