"""Sign bookkeeping for ascending multi-indices, and small determinants."""
from __future__ import annotations

from itertools import combinations
from typing import Sequence


def merge_sign(a: Sequence[int], b: Sequence[int]) -> int:
    """Sign of e_a ^ e_b = sign * e_{sorted(a+b)}; 0 when a and b overlap."""
    sa = set(a)
    if sa.intersection(b):
        return 0
    inv = 0
    for x in a:
        for y in b:
            if y < x:
                inv += 1
    return -1 if inv & 1 else 1


def merge(a: Sequence[int], b: Sequence[int]) -> tuple[int, tuple]:
    s = merge_sign(a, b)
    return s, tuple(sorted((*a, *b))) if s else ()


def perm_sign(seq: Sequence) -> int:
    """Sign of the permutation sorting ``seq`` (0 if it has repeats)."""
    seq = list(seq)
    if len(set(seq)) != len(seq):
        return 0
    inv = 0
    for i in range(len(seq)):
        for j in range(i + 1, len(seq)):
            if seq[j] < seq[i]:
                inv += 1
    return -1 if inv & 1 else 1


def subsets(n_or_items, k: int) -> list[tuple]:
    """Ascending k-subsets of range(n) or of the given items, in lex order."""
    items = range(n_or_items) if isinstance(n_or_items, int) else n_or_items
    return list(combinations(items, k))


def shuffles(n: int, k: int):
    """(sign, first k positions, remaining positions) over all (k, n-k) shuffles."""
    for first in combinations(range(n), k):
        rest = tuple(i for i in range(n) if i not in first)
        yield perm_sign(first + rest), first, rest


def det(m: Sequence[Sequence]):
    """Determinant by cofactor expansion; entries only need +, -, *.

    Matrices here are at most a handful of rows, so this beats elimination
    and works for polynomial entries too. The 0x0 determinant is 1.
    """
    n = len(m)
    if n == 0:
        return 1
    if n == 1:
        return m[0][0]
    if n == 2:
        return m[0][0] * m[1][1] - m[0][1] * m[1][0]
    total = None
    for j in range(n):
        a = m[0][j]
        if isinstance(a, int) and a == 0:
            continue
        minor = [row[:j] + row[j + 1:] for row in m[1:]]
        term = a * det(minor)
        if j & 1:
            term = -term
        total = term if total is None else total + term
    return 0 if total is None else total
