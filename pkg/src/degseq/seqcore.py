"""Integer-sequence primitives shared by every criterion.

Sequences are plain tuples of ints. Public indices are 1-based; reads past
either end follow the zero conventions ``a_0 = 0`` and ``a_i = 0`` for
``i > n`` through :func:`at`, never by padding the stored tuple.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import accumulate
from typing import Iterable, Optional, Sequence, Tuple

from .errors import EmptySequence, LengthMismatch, NegativeEntry, NotNonincreasing

IntSeq = Tuple[int, ...]
SignedSeq = Tuple[int, ...]

# Above this length concavity_class switches to the running-minimum scan.
PAIRWISE_LIMIT = 1024


def as_intseq(values: Iterable[int]) -> IntSeq:
    out = tuple(int(v) for v in values)
    for i, v in enumerate(out, start=1):
        if v < 0:
            raise NegativeEntry(f"entry {i} is negative ({v})")
    return out


def as_signedseq(values: Iterable[int]) -> SignedSeq:
    return tuple(int(v) for v in values)


def at(a: Sequence[int], i: int) -> int:
    """1-based read with ``a_i = 0`` outside ``1..n``."""
    if 1 <= i <= len(a):
        return a[i - 1]
    return 0


def prefix_sums(a: Sequence[int]) -> list[int]:
    """``p[k] = a_1 + ... + a_k`` for ``k = 0..n`` (so ``p[0] == 0``)."""
    return [0, *accumulate(a)]


def backward_difference(a: Sequence[int]) -> SignedSeq:
    """``(a_1 - a_0, a_2 - a_1, ...)`` with ``a_0 = 0``."""
    return tuple(x - prev for prev, x in zip((0, *a), a))


def is_nonincreasing(a: Sequence[int]) -> bool:
    return all(x >= y for x, y in zip(a, a[1:]))


def require_nonincreasing(a: Sequence[int]) -> None:
    for i in range(1, len(a)):
        if a[i] > a[i - 1]:
            raise NotNonincreasing(a, position=i + 1)


@dataclass(frozen=True)
class ConcavityFlags:
    nonincreasing: bool
    almost_nonincreasing: bool
    concave: bool
    almost_concave: bool


def _max_rise_pairwise(x: Sequence[int]) -> Optional[int]:
    # max over j < k of x[k] - x[j]; None when fewer than two entries
    best = None
    for k in range(len(x)):
        for j in range(k):
            d = x[k] - x[j]
            if best is None or d > best:
                best = d
    return best


def _max_rise_linear(x: Sequence[int]) -> Optional[int]:
    if len(x) < 2:
        return None
    lowest = x[0]
    best = x[1] - x[0]
    for v in x[1:]:
        best = max(best, v - lowest)
        lowest = min(lowest, v)
    return best


def _flags(a: Sequence[int], rise) -> ConcavityFlags:
    # monotonicity quantifies over 1 <= j < k <= n, concavity over 2 <= j < k <= n
    value_rise = rise(a)
    slope_rise = rise(backward_difference(a)[1:])
    return ConcavityFlags(
        nonincreasing=value_rise is None or value_rise <= 0,
        almost_nonincreasing=value_rise is None or value_rise <= 1,
        concave=slope_rise is None or slope_rise <= 0,
        almost_concave=slope_rise is None or slope_rise <= 1,
    )


def concavity_pairwise(a: Sequence[int]) -> ConcavityFlags:
    return _flags(a, _max_rise_pairwise)


def concavity_linear(a: Sequence[int]) -> ConcavityFlags:
    return _flags(a, _max_rise_linear)


def concavity_class(a: Sequence[int]) -> ConcavityFlags:
    """Classify ``a`` as (almost) nonincreasing and (almost) concave.

    Concavity is judged on first differences ``ȧ_k - ȧ_j`` for
    ``2 <= j < k <= n``; monotonicity on ``a_k - a_j`` for ``1 <= j < k <= n``.
    The quoted pairwise definitions are evaluated directly up to
    ``PAIRWISE_LIMIT`` entries; longer inputs use an equivalent running-minimum
    scan.
    """
    if len(a) > PAIRWISE_LIMIT:
        return concavity_linear(a)
    return concavity_pairwise(a)


def corners(a: Sequence[int]) -> list[int]:
    """Indices ``k`` with ``a_k > a_{k+1}`` (``a_{n+1} = 0``), ascending."""
    require_nonincreasing(a)
    n = len(a)
    return [k for k in range(1, n + 1) if at(a, k) > at(a, k + 1)]


def conjugate(b: Sequence[int], length: int) -> IntSeq:
    """``b'_k = #{i : b_i >= k}`` for ``k = 1..length``.

    Counting sort over the values, so the cost is ``O(len(b) + length)``.
    """
    if length < 0:
        raise ValueError("length must be >= 0")
    counts = [0] * (length + 2)
    for v in b:
        counts[min(v, length + 1)] += 1
    out = [0] * length
    running = sum(counts[length + 1:])
    for k in range(length, 0, -1):
        running += counts[k]
        out[k - 1] = running
    return tuple(out)


def full_conjugate(b: Sequence[int]) -> IntSeq:
    """Conjugate truncated at ``max b_i``, i.e. with every nonzero entry."""
    return conjugate(b, max(b, default=0))


@dataclass(frozen=True)
class DominanceResult:
    holds: bool
    first_violation: Optional[Tuple[int, int, int]] = None

    def __bool__(self) -> bool:
        return self.holds


def weak_dominance(a: Sequence[int], b: Sequence[int]) -> DominanceResult:
    """Prefix-sum dominance of ``a`` by ``b`` with zero extension.

    No rearrangement and no equal-total requirement. The violation, if any,
    is ``(k, sum_{i<=k} a_i, sum_{i<=k} b_i)`` for the smallest failing ``k``.
    """
    sa = sb = 0
    for k in range(1, max(len(a), len(b)) + 1):
        sa += at(a, k)
        sb += at(b, k)
        if sa > sb:
            return DominanceResult(False, (k, sa, sb))
    return DominanceResult(True)


def majorization(a: Sequence[int], b: Sequence[int]) -> bool:
    """True iff ``a`` is majorized by ``b``."""
    if len(a) != len(b):
        raise LengthMismatch(f"lengths differ: {len(a)} vs {len(b)}")
    if sum(a) != sum(b):
        return False
    return weak_dominance(sorted(a, reverse=True), sorted(b, reverse=True)).holds


def density(a: Sequence[int], t: int, kind: str = "dense") -> bool:
    """t-dense / t-deep test over the value range ``min a .. max a``.

    ``dense``: every window ``k .. k+t-1`` with ``min a <= k <= max a - t + 1``
    meets a value of ``a``. ``deep``: each value in ``min a .. max a - 1``
    occurs at least ``t`` times.
    """
    if not a:
        raise EmptySequence("density is undefined for an empty sequence")
    if t < 1:
        raise ValueError("t must be >= 1")
    lo, hi = min(a), max(a)
    if kind == "dense":
        present = set(a)
        return all(
            any(v in present for v in range(k, k + t))
            for k in range(lo, hi - t + 2)
        )
    if kind == "deep":
        return all(sum(1 for v in a if v == k) >= t for k in range(lo, hi))
    raise ValueError(f"unknown density kind {kind!r}")
