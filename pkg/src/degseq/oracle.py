"""Brute-force realizers used as ground truth for the criteria.

Every class is encoded as a list of decision variables (matrix cells, or
vertex pairs for the symmetric and oriented classes), each with a short
ordered list of options. An option adds fixed amounts to some degree
quotas. Depth-first search assigns variables in order and abandons a branch
as soon as some quota can no longer be met by the variables still free.
Option order is fixed, so witnesses are reproducible.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, fields
from typing import Optional, Sequence

from .errors import BudgetExceeded, PreconditionFailed
from .genconj import BIPARTITE_TAGS, ClassSpec, ClassTag, IntMatrix, _cell_rules
from .seqcore import IntSeq, is_nonincreasing, majorization

BUDGET_ENV = "DEGSEQ_ORACLE_BUDGET"


@dataclass(frozen=True)
class Budget:
    bipartite_cells: int = 30
    max_r: int = 3
    square_n: int = 6
    tournament_n: int = 7

    @classmethod
    def from_env(cls, environ=None) -> "Budget":
        """Parse ``key=value`` pairs separated by commas, e.g. ``square_n=7,max_r=4``."""
        raw = (os.environ if environ is None else environ).get(BUDGET_ENV, "").strip()
        if not raw:
            return cls()
        known = {f.name for f in fields(cls)}
        values = {}
        for part in raw.split(","):
            key, sep, value = part.partition("=")
            key = key.strip()
            if not sep or key not in known:
                raise ValueError(f"bad {BUDGET_ENV} entry {part!r}; keys are {sorted(known)}")
            values[key] = int(value)
        return cls(**values)

    def admit(self, spec: ClassSpec) -> None:
        tag = spec.tag
        if tag in BIPARTITE_TAGS:
            cells = spec.m * spec.n
            if cells > self.bipartite_cells or spec.r > self.max_r:
                raise BudgetExceeded(
                    f"{cells} cells with r={spec.r} exceeds budget "
                    f"({self.bipartite_cells} cells, r <= {self.max_r})"
                )
        elif tag == ClassTag.TOURNAMENT:
            if spec.n > self.tournament_n:
                raise BudgetExceeded(f"n={spec.n} exceeds tournament budget {self.tournament_n}")
        else:
            if spec.n > self.square_n or spec.r > self.max_r:
                raise BudgetExceeded(
                    f"n={spec.n}, r={spec.r} exceeds budget (n <= {self.square_n}, r <= {self.max_r})"
                )


@dataclass(frozen=True)
class Witness:
    matrix: IntMatrix
    class_tag: ClassTag


def _search(targets: Sequence[int], variables: list) -> Optional[list]:
    """Depth-first search for one option index per variable meeting ``targets``.

    ``variables[p]`` is a list of options; an option is a tuple of
    ``(quota, delta)`` pairs.
    """
    nq, nv = len(targets), len(variables)
    lo = [[0] * nq for _ in range(nv + 1)]
    hi = [[0] * nq for _ in range(nv + 1)]
    touched = []
    for p in range(nv - 1, -1, -1):
        per_q = {}
        for opt in variables[p]:
            for q, delta in opt:
                per_q.setdefault(q, [])
        for q in per_q:
            vals = [dict(opt).get(q, 0) for opt in variables[p]]
            per_q[q] = (min(vals), max(vals))
        lo[p] = lo[p + 1][:]
        hi[p] = hi[p + 1][:]
        for q, (mn, mx) in per_q.items():
            lo[p][q] += mn
            hi[p][q] += mx
        touched.append(tuple(per_q))
    touched.reverse()

    remaining = list(targets)
    if any(not lo[0][q] <= remaining[q] <= hi[0][q] for q in range(nq)):
        return None
    choice = [0] * nv

    def go(p: int) -> bool:
        if p == nv:
            return True
        lo_next, hi_next = lo[p + 1], hi[p + 1]
        for idx, opt in enumerate(variables[p]):
            for q, delta in opt:
                remaining[q] -= delta
            if all(lo_next[q] <= remaining[q] <= hi_next[q] for q in touched[p]):
                choice[p] = idx
                if go(p + 1):
                    return True
            for q, delta in opt:
                remaining[q] += delta
        return False

    return choice if go(0) else None


def _encode(spec: ClassSpec):
    """Return (targets, variables, decode) for ``spec``."""
    tag, n = spec.tag, spec.n

    if tag in BIPARTITE_TAGS or tag == ClassTag.DIGRAPHIC:
        if spec.a is None:
            raise PreconditionFailed(f"{tag.value} realization needs both a and b")
        m = spec.m
        cap, forced = _cell_rules(spec)
        targets = list(spec.b) + list(spec.a)
        cells, variables = [], []
        for i in range(m):
            for j in range(n):
                if forced[i][j]:
                    values = [1]
                else:
                    values = list(range(cap[i][j] + 1))
                cells.append((i, j))
                variables.append([((i, v), (m + j, v)) for v in values])

        def decode(choice):
            grid = [[0] * n for _ in range(m)]
            for (i, j), var, c in zip(cells, variables, choice):
                grid[i][j] = var[c][0][1]
            return grid

        return targets, variables, decode

    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    if tag in (ClassTag.MULTIGRAPHIC, ClassTag.GRAPHIC):
        variables = [[((i, v), (j, v)) for v in range(spec.r + 1)] for i, j in pairs]
        targets = list(spec.a)

        def decode(choice):
            grid = [[0] * n for _ in range(n)]
            for (i, j), v in zip(pairs, choice):
                grid[i][j] = grid[j][i] = v
            return grid

        return targets, variables, decode

    if tag == ClassTag.TOURNAMENT:
        if spec.a is None:
            raise PreconditionFailed("tournament realization needs the score sequence a")
        # option 0: A_ij = 0, A_ji = 1 (i beats j); option 1: A_ij = 1 (j beats i)
        variables = [[((i, 1),), ((j, 1),)] for i, j in pairs]
        targets = list(spec.a)

        def decode(choice):
            grid = [[0] * n for _ in range(n)]
            for (i, j), c in zip(pairs, choice):
                if c == 0:
                    grid[j][i] = 1
                else:
                    grid[i][j] = 1
            return grid

        return targets, variables, decode

    if tag == ClassTag.IMBALANCE:
        # options (A_ij, A_ji) = (0,0), (0,1), (1,0); A_xy = 1 is the edge y -> x
        variables = [[(), ((i, 1), (j, -1)), ((j, 1), (i, -1))] for i, j in pairs]
        targets = list(spec.d)

        def decode(choice):
            grid = [[0] * n for _ in range(n)]
            for (i, j), c in zip(pairs, choice):
                if c == 1:
                    grid[j][i] = 1
                elif c == 2:
                    grid[i][j] = 1
            return grid

        return targets, variables, decode

    raise PreconditionFailed(f"no realizer for {tag.value}")


def realize(spec: ClassSpec, budget: Optional[Budget] = None) -> Optional[Witness]:
    """Find a realization of ``spec`` or prove none exists by exhaustive search.

    Raises BudgetExceeded when the instance is larger than ``budget``
    (default: read from ``DEGSEQ_ORACLE_BUDGET``).
    """
    budget = Budget.from_env() if budget is None else budget
    budget.admit(spec)
    targets, variables, decode = _encode(spec)
    choice = _search(targets, variables)
    if choice is None:
        return None
    return Witness(IntMatrix(tuple(map(tuple, decode(choice)))), spec.tag)


def witness_problems(spec: ClassSpec, witness: Witness) -> list[str]:
    """Recompute every structural and degree constraint; return the violations."""
    A = witness.matrix.entries
    tag, n = spec.tag, spec.n
    problems = []
    if witness.class_tag != tag:
        problems.append(f"witness is tagged {witness.class_tag}, expected {tag}")
    rows, cols = len(A), len(A[0]) if A else 0
    m = spec.m
    if (rows, cols) != (m, n) and not (m == 0 or n == 0):
        problems.append(f"shape {(rows, cols)} != {(m, n)}")
        return problems
    rowsum = [sum(A[i]) for i in range(rows)]
    colsum = [sum(A[i][j] for i in range(rows)) for j in range(cols)]

    def cell_bound(hi):
        for i in range(rows):
            for j in range(cols):
                if not 0 <= A[i][j] <= hi:
                    problems.append(f"entry ({i + 1},{j + 1}) = {A[i][j]} outside 0..{hi}")

    def zero_diagonal():
        for i in range(min(rows, cols)):
            if A[i][i]:
                problems.append(f"diagonal entry {i + 1} is nonzero")

    if tag in BIPARTITE_TAGS or tag == ClassTag.DIGRAPHIC:
        cell_bound(spec.r)
        if tuple(rowsum) != tuple(spec.b):
            problems.append(f"row sums {rowsum} != b {list(spec.b)}")
        if tuple(colsum) != tuple(spec.a):
            problems.append(f"column sums {colsum} != a {list(spec.a)}")
        if tag == ClassTag.DIGRAPHIC:
            zero_diagonal()
        if tag == ClassTag.STRUCTURED:
            for i, row in enumerate(spec.mask.entries):
                for j, x in enumerate(row):
                    if x and spec.mask.polarity == "fill" and A[i][j] != 1:
                        problems.append(f"structural one at ({i + 1},{j + 1}) not filled")
                    if x and spec.mask.polarity == "avoid" and A[i][j] != 0:
                        problems.append(f"structural zero at ({i + 1},{j + 1}) not avoided")
    elif tag in (ClassTag.MULTIGRAPHIC, ClassTag.GRAPHIC):
        cell_bound(spec.r)
        zero_diagonal()
        for i in range(n):
            for j in range(i + 1, n):
                if A[i][j] != A[j][i]:
                    problems.append(f"asymmetric at ({i + 1},{j + 1})")
        if tuple(rowsum) != tuple(spec.a):
            problems.append(f"degrees {rowsum} != a {list(spec.a)}")
    elif tag == ClassTag.TOURNAMENT:
        cell_bound(1)
        for i in range(n):
            for j in range(n):
                if A[i][j] + A[j][i] != int(i != j):
                    problems.append(f"pair ({i + 1},{j + 1}) is not oriented exactly once")
        if tuple(colsum) != tuple(spec.a):
            problems.append(f"scores {colsum} != a {list(spec.a)}")
    elif tag == ClassTag.IMBALANCE:
        cell_bound(1)
        zero_diagonal()
        imb = [colsum[i] - rowsum[i] for i in range(n)]
        if tuple(imb) != tuple(spec.d):
            problems.append(f"imbalances {imb} != d {list(spec.d)}")
        if sum(imb) != 0:
            problems.append("imbalances do not sum to zero")
    return problems


def fulkerson_ryser_step(a: Sequence[int], b: Sequence[int], j: int, l: int) -> tuple[IntSeq, IntSeq]:
    """Remove one unit from ``a`` at ``j`` and from ``b`` at ``l`` (1-based).

    Requires nonincreasing ``a`` and ``b`` with ``a`` majorized by ``b``,
    ``1 <= j <= l <= n``, ``a_j > 0`` and ``b_l > 0``. The stepped pair is
    checked for majorization before it is returned.
    """
    a, b = tuple(a), tuple(b)
    n = len(a)
    if len(b) != n:
        raise PreconditionFailed(f"lengths differ: {n} vs {len(b)}")
    for name, seq in (("a", a), ("b", b)):
        if not is_nonincreasing(seq):
            raise PreconditionFailed(f"{name} is not nonincreasing")
    if not 1 <= j <= l <= n:
        raise PreconditionFailed(f"need 1 <= j <= l <= n, got j={j}, l={l}, n={n}")
    if a[j - 1] <= 0:
        raise PreconditionFailed(f"a_{j} must be positive")
    if b[l - 1] <= 0:
        raise PreconditionFailed(f"b_{l} must be positive")
    if not majorization(a, b):
        raise PreconditionFailed("a is not majorized by b")
    a2 = a[: j - 1] + (a[j - 1] - 1,) + a[j:]
    b2 = b[: l - 1] + (b[l - 1] - 1,) + b[l:]
    if not majorization(a2, b2):
        raise AssertionError(f"stepped pair {a2}, {b2} is not a majorizing pair")
    return a2, b2
