"""Compare the exact engine with the brute-force oracle on random automata."""

import argparse
import itertools
import time
from collections import Counter

from blindcounter import Status, accept, brute_force_accept
from blindcounter.corpus import random_corpus


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--count", type=int, default=200)
    ap.add_argument("--seed", type=int, default=2026)
    ap.add_argument("--max-len", type=int, default=5)
    args = ap.parse_args()

    start = time.perf_counter()
    pairs = Counter()
    classes = Counter()
    for a in random_corpus(args.count, seed=args.seed):
        classes[a.epsilon_class.value] += 1
        for length in range(args.max_len + 1):
            for w in itertools.product(a.alphabet.tokens, repeat=length):
                pairs[accept(a, w).status, brute_force_accept(a, w).status] += 1
    print(f"automata: {args.count}  seed: {args.seed}  |w| <= {args.max_len}")
    for name, n in sorted(classes.items()):
        print(f"  {name:<22} {n}")
    print("engine      oracle      words")
    for (v, o), n in sorted(pairs.items(), key=lambda kv: (kv[0][0].value, kv[0][1].value)):
        print(f"{v.value:<11} {o.value:<11} {n}")
    bad = sum(n for (v, o), n in pairs.items() if {v, o} == {Status.ACCEPTED, Status.REJECTED})
    print(f"contradictions: {bad}")
    print(f"elapsed: {time.perf_counter() - start:.1f}s")


if __name__ == "__main__":
    main()
