"""Brute-force oracles that stay independent of the code paths they check."""
from __future__ import annotations

import itertools
from typing import Iterable, Sequence

from .words import Basis, Word


def subgroup_ball(generators: Sequence[Word], product_length: int, word_length: int) -> set[Word]:
    """Elements of the subgroup generated by ``generators`` that are products of
    at most ``product_length`` generators (or inverses) and have word length
    <= ``word_length``.

    Breadth-first over freely reduced generator sequences.  For a Nielsen
    reduced generating set a product of m generators has length >= m, so
    product_length = word_length already covers the ball; callers use twice
    that as margin.
    """
    basis = generators[0].basis
    values = {}
    for i, g in enumerate(generators):
        values[(i, 1)] = g
        values[(i, -1)] = ~g
    symbols = list(values)
    found = {basis.identity}
    layer = [((), basis.identity)]
    for _ in range(product_length):
        nxt = []
        for seq, w in layer:
            last = seq[-1] if seq else None
            for sym in symbols:
                if last is not None and sym[0] == last[0] and sym[1] == -last[1]:
                    continue
                v = w * values[sym]
                nxt.append((seq + (sym,), v))
                if len(v) <= word_length:
                    found.add(v)
        layer = nxt
    return found


def naive_reduce(codes: Iterable[int]) -> tuple[int, ...]:
    """Repeatedly delete the leftmost cancelling pair until none remain."""
    w = list(codes)
    changed = True
    while changed:
        changed = False
        for i in range(len(w) - 1):
            if w[i] == -w[i + 1]:
                del w[i:i + 2]
                changed = True
                break
    return tuple(w)


def count_reduced_by_brute_force(rank: int, length: int) -> int:
    """Count reduced words of length <= length by filtering all raw sequences."""
    alphabet = [c for i in range(1, rank + 1) for c in (i, -i)]
    total = 0
    for n in range(length + 1):
        for s in itertools.product(alphabet, repeat=n):
            if all(s[i] != -s[i + 1] for i in range(n - 1)):
                total += 1
    return total


def substitute_naive(basis: Basis, images: Sequence[Word], w: Word) -> Word:
    """Homomorphic extension computed by raw concatenation then reduction."""
    raw: list[int] = []
    for c in w.codes:
        img = images[abs(c) - 1].codes
        raw.extend(img if c > 0 else [-x for x in reversed(img)])
    return Word._trusted(basis, naive_reduce(raw))
