"""Ground truth for the word problem of Z^n, computed letter by letter."""

from __future__ import annotations

from typing import Optional, Sequence

from .core import Alphabet, AutomatonError, Vector, Word


def exponent_vector(word: Sequence[str], n: int) -> Vector:
    """Entry i is (#x_i) - (#X_i).  Zero exactly on the word problem."""
    alphabet = Alphabet(n)
    counts = [0] * n
    for t in word:
        g = alphabet.generator(t)
        counts[g] += -1 if alphabet.is_inverse(t) else 1
    return tuple(counts)


def in_word_problem(word: Sequence[str], n: int) -> bool:
    return not any(exponent_vector(word, n))


def canonical_word(j: Sequence[int]) -> Word:
    """``x1^j1 ... xn^jn X1^j1 ... Xn^jn``."""
    if any(c < 0 for c in j):
        raise AutomatonError(f"canonical word exponents must be non-negative: {tuple(j)}")
    n = len(j)
    if n < 1:
        raise AutomatonError("canonical word needs rank >= 1")
    head = [f"x{i + 1}" for i in range(n) for _ in range(j[i])]
    tail = [f"X{i + 1}" for i in range(n) for _ in range(j[i])]
    return tuple(head + tail)


def parse_canonical_form(word: Sequence[str], n: int) -> Optional[tuple[Vector, Vector]]:
    """Block exponents ``(u, v)`` of ``x1^u1..xn^un X1^v1..Xn^vn``, else ``None``."""
    alphabet = Alphabet(n)
    u = [0] * n
    v = [0] * n
    last = -1
    for t in word:
        k = alphabet.index(t)
        if k < last:
            return None
        last = k
        if k < n:
            u[k] += 1
        else:
            v[k - n] += 1
    return tuple(u), tuple(v)
