"""Exhaustive enumerators for small instances (bench grids and test sweeps)."""

from __future__ import annotations

from itertools import combinations_with_replacement, product
from typing import Iterator

from .genconj import StructureMask


def nonincreasing(n: int, top: int) -> Iterator[tuple[int, ...]]:
    """All nonincreasing length-``n`` sequences with entries in ``0..top``."""
    for c in combinations_with_replacement(range(top, -1, -1), n):
        yield c


def nonincreasing_upto(max_n: int, top: int, min_n: int = 0) -> Iterator[tuple[int, ...]]:
    for n in range(min_n, max_n + 1):
        yield from nonincreasing(n, top)


def signed_nonincreasing(n: int, bound: int) -> Iterator[tuple[int, ...]]:
    """Nonincreasing length-``n`` sequences with entries in ``-bound..bound``."""
    for c in combinations_with_replacement(range(bound, -bound - 1, -1), n):
        yield c


def sequences(n: int, top: int) -> Iterator[tuple[int, ...]]:
    """All length-``n`` sequences with entries in ``0..top`` (any order)."""
    return product(range(top + 1), repeat=n)


def one_per_column_masks(m: int, n: int) -> Iterator[tuple[tuple[int, ...], ...]]:
    """Every ``m x n`` 0/1 matrix with at most one nonzero entry per column."""
    for choice in product(range(m + 1), repeat=n):
        rows = [[0] * n for _ in range(m)]
        for j, i in enumerate(choice):
            if i < m:
                rows[i][j] = 1
        yield tuple(map(tuple, rows))


def valid_masks(b, n: int, polarity: str) -> Iterator[StructureMask]:
    """One-per-column masks that are b-fillable / b-avoidable."""
    m = len(b)
    for entries in one_per_column_masks(m, n):
        ok = all(
            sum(row) <= (bi if polarity == "fill" else n - bi)
            for row, bi in zip(entries, b)
        )
        if ok:
            yield StructureMask(entries, polarity)
