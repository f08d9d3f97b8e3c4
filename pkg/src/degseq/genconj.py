"""Generalized conjugates for each graph class.

Every class in scope is described by a set ``S`` of nonnegative integer
matrices with prescribed row sums; the generalized conjugate is the column
sum vector of the ⊴-maximal member of ``S``. It is computed two ways here:
from per-class closed forms for the prefix sums (:func:`class_conjugate`)
and by building the maximal matrix explicitly (:func:`maximal_matrix`).

Matrix orientation follows one convention throughout the package: the
``a`` side (column sums) indexes columns, the ``b`` side indexes rows. For
digraphs and tournaments column sums are out-degrees.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Optional, Sequence

from .errors import InvalidR, LengthMismatch, MaskInvalid, PreconditionFailed, UnsupportedClass
from .seqcore import IntSeq, SignedSeq, as_intseq, as_signedseq, conjugate


class ClassTag(str, Enum):
    BIGRAPHIC = "bigraphic"
    BIPARTITE_MULTI = "bipartite-multi"
    STRUCTURED = "structured"
    DIGRAPHIC = "digraphic"
    IMBALANCE = "imbalance"
    MULTIGRAPHIC = "multigraphic"
    GRAPHIC = "graphic"
    TOURNAMENT = "tournament"


BIPARTITE_TAGS = (ClassTag.BIGRAPHIC, ClassTag.BIPARTITE_MULTI, ClassTag.STRUCTURED)
SQUARE_TAGS = (
    ClassTag.DIGRAPHIC,
    ClassTag.IMBALANCE,
    ClassTag.MULTIGRAPHIC,
    ClassTag.GRAPHIC,
    ClassTag.TOURNAMENT,
)


@dataclass(frozen=True)
class StructureMask:
    """Binary mask of structural ones (``fill``) or structural zeros (``avoid``)."""

    entries: tuple[tuple[int, ...], ...]
    polarity: str = "fill"

    def __post_init__(self):
        rows = tuple(tuple(int(x) for x in row) for row in self.entries)
        object.__setattr__(self, "entries", rows)
        if self.polarity not in ("fill", "avoid"):
            raise MaskInvalid(f"polarity must be 'fill' or 'avoid', got {self.polarity!r}")
        if len({len(row) for row in rows}) > 1:
            raise MaskInvalid("mask rows have different lengths")
        for i, row in enumerate(rows, start=1):
            for j, x in enumerate(row, start=1):
                if x not in (0, 1):
                    raise MaskInvalid(f"mask entry ({i},{j}) is {x}, expected 0 or 1")

    @property
    def m(self) -> int:
        return len(self.entries)

    @property
    def n(self) -> int:
        return len(self.entries[0]) if self.entries else 0

    def column_counts(self) -> list[int]:
        return [sum(row[j] for row in self.entries) for j in range(self.n)]

    def one_per_column(self) -> bool:
        return all(c <= 1 for c in self.column_counts())

    def validate(self, b: Sequence[int], n: Optional[int] = None,
                 require_one_per_column: bool = True) -> None:
        """Check that the mask is b-fillable (or b-avoidable).

        Raises MaskInvalid naming the first offending row or column.
        """
        if len(b) != self.m:
            raise MaskInvalid(f"mask has {self.m} rows but b has {len(b)} entries")
        if n is not None and n != self.n:
            raise MaskInvalid(f"mask has {self.n} columns but a has {n} entries")
        if require_one_per_column:
            for j, c in enumerate(self.column_counts(), start=1):
                if c > 1:
                    raise MaskInvalid(f"column {j} has {c} nonzero mask entries (at most 1 allowed)")
        for i, (row, bi) in enumerate(zip(self.entries, b), start=1):
            s = sum(row)
            bound = bi if self.polarity == "fill" else self.n - bi
            if s > bound:
                kind = "b_i" if self.polarity == "fill" else "n - b_i"
                raise MaskInvalid(f"row {i} has {s} mask entries, exceeding {kind} = {bound}")


@dataclass(frozen=True)
class ClassSpec:
    """One realizability query: class tag plus the sequences it needs.

    ``n`` is the number of columns (the ``a`` side). It is inferred from
    ``a``, ``d``, the mask, or (square classes) ``b`` when not given.
    """

    tag: ClassTag
    a: Optional[IntSeq] = None
    b: Optional[IntSeq] = None
    d: Optional[SignedSeq] = None
    r: int = 1
    mask: Optional[StructureMask] = None
    n: Optional[int] = None

    def __post_init__(self):
        tag = ClassTag(self.tag)
        object.__setattr__(self, "tag", tag)
        if self.a is not None:
            object.__setattr__(self, "a", as_intseq(self.a))
        if self.b is not None:
            object.__setattr__(self, "b", as_intseq(self.b))
        if self.d is not None:
            object.__setattr__(self, "d", as_signedseq(self.d))

        wants = _FIELDS[tag]
        present = {
            name for name in ("a", "b", "d", "mask") if getattr(self, name) is not None
        }
        for name in wants["required"]:
            if name not in present:
                raise PreconditionFailed(f"{tag.value} requires field {name!r}")
        extra = present - set(wants["required"]) - set(wants["optional"])
        if extra:
            raise PreconditionFailed(f"{tag.value} does not take field(s) {sorted(extra)}")
        if tag not in (ClassTag.BIPARTITE_MULTI, ClassTag.MULTIGRAPHIC) and self.r != 1:
            raise PreconditionFailed(f"{tag.value} has fixed r = 1")
        if self.r < 1:
            raise InvalidR(f"r must be >= 1, got {self.r}")

        sizes = [(name, len(getattr(self, name))) for name in ("a", "d")
                 if getattr(self, name) is not None]
        if self.mask is not None:
            sizes.append(("mask", self.mask.n))
        if tag in SQUARE_TAGS and self.b is not None:
            sizes.append(("b", len(self.b)))
        if self.n is not None:
            sizes.append(("n", self.n))
        if not sizes:
            raise PreconditionFailed(f"{tag.value} needs a size: give 'a' or 'n'")
        for name, size in sizes[1:]:
            if size != sizes[0][1]:
                first, n0 = sizes[0]
                raise LengthMismatch(
                    f"'{name}' gives size {size} but '{first}' gives {n0} for {tag.value}"
                )
        object.__setattr__(self, "n", sizes[0][1])
        if self.n < 0:
            raise PreconditionFailed("n must be >= 0")

    @property
    def m(self) -> int:
        """Number of rows of the matrix set."""
        if self.tag in BIPARTITE_TAGS:
            return len(self.b)
        return self.n

    def row_targets(self) -> IntSeq:
        if self.tag in (ClassTag.MULTIGRAPHIC, ClassTag.GRAPHIC):
            return self.a
        if self.tag == ClassTag.TOURNAMENT:
            return tuple(range(self.n))
        if self.tag == ClassTag.IMBALANCE:
            raise UnsupportedClass("imbalance sequences have no generalized conjugate")
        return self.b


_FIELDS = {
    ClassTag.BIGRAPHIC: {"required": ("b",), "optional": ("a",)},
    ClassTag.BIPARTITE_MULTI: {"required": ("b",), "optional": ("a",)},
    ClassTag.STRUCTURED: {"required": ("b", "mask"), "optional": ("a",)},
    ClassTag.DIGRAPHIC: {"required": ("b",), "optional": ("a",)},
    ClassTag.IMBALANCE: {"required": ("d",), "optional": ()},
    ClassTag.MULTIGRAPHIC: {"required": ("a",), "optional": ()},
    ClassTag.GRAPHIC: {"required": ("a",), "optional": ()},
    ClassTag.TOURNAMENT: {"required": (), "optional": ("a",)},
}


@dataclass(frozen=True)
class IntMatrix:
    entries: tuple[tuple[int, ...], ...]
    row_sums: IntSeq = field(init=False)
    col_sums: IntSeq = field(init=False)

    def __post_init__(self):
        rows = tuple(tuple(int(x) for x in row) for row in self.entries)
        if len({len(row) for row in rows}) > 1:
            raise ValueError("ragged matrix")
        if any(x < 0 for row in rows for x in row):
            raise ValueError("matrix entries must be nonnegative")
        width = len(rows[0]) if rows else 0
        object.__setattr__(self, "entries", rows)
        object.__setattr__(self, "row_sums", tuple(sum(row) for row in rows))
        object.__setattr__(
            self, "col_sums", tuple(sum(row[j] for row in rows) for j in range(width))
        )

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.entries), len(self.entries[0]) if self.entries else 0

    def tolist(self) -> list[list[int]]:
        return [list(row) for row in self.entries]


def check_existence(spec: ClassSpec, *, for_matrix: bool = False) -> None:
    """Raise PreconditionFailed unless the class's matrix set is nonempty."""
    tag, n = spec.tag, spec.n
    if tag == ClassTag.IMBALANCE:
        raise UnsupportedClass("imbalance sequences have no generalized conjugate")
    if tag == ClassTag.BIGRAPHIC:
        if for_matrix and max(spec.b, default=0) > n:
            raise PreconditionFailed(f"max b_i = {max(spec.b)} exceeds n = {n}")
    elif tag == ClassTag.BIPARTITE_MULTI:
        if max(spec.b, default=0) > spec.r * n:
            raise PreconditionFailed(f"max b_i = {max(spec.b)} exceeds r*n = {spec.r * n}")
    elif tag == ClassTag.STRUCTURED:
        spec.mask.validate(spec.b, n, require_one_per_column=False)
        if max(spec.b, default=0) > n:
            raise PreconditionFailed(f"max b_i = {max(spec.b)} exceeds n = {n}")
    elif tag == ClassTag.DIGRAPHIC:
        if max(spec.b, default=0) > max(n - 1, 0):
            raise PreconditionFailed(f"max b_i = {max(spec.b)} exceeds n - 1 = {n - 1}")
    elif tag in (ClassTag.MULTIGRAPHIC, ClassTag.GRAPHIC):
        if max(spec.a, default=0) > spec.r * max(n - 1, 0):
            raise PreconditionFailed(
                f"max a_i = {max(spec.a)} exceeds r(n-1) = {spec.r * (n - 1)}"
            )


def conjugate_prefix_sums(spec: ClassSpec) -> list[int]:
    """Closed-form ``sum_{i<=k}`` of the class conjugate for ``k = 0..n``."""
    tag, n, r = spec.tag, spec.n, spec.r
    out = [0]
    for k in range(1, n + 1):
        if tag == ClassTag.BIGRAPHIC:
            s = sum(min(k, bi) for bi in spec.b)
        elif tag == ClassTag.BIPARTITE_MULTI:
            s = sum(min(r * k, bi) for bi in spec.b)
        elif tag == ClassTag.STRUCTURED:
            rows = spec.mask.entries
            if spec.mask.polarity == "fill":
                s = sum(min(k, bi - sum(row[k:])) for row, bi in zip(rows, spec.b))
            else:
                s = sum(min(k - sum(row[:k]), bi) for row, bi in zip(rows, spec.b))
        elif tag == ClassTag.DIGRAPHIC:
            s = sum(min(k - 1 if i <= k else k, bi) for i, bi in enumerate(spec.b, 1))
        elif tag in (ClassTag.MULTIGRAPHIC, ClassTag.GRAPHIC):
            s = sum(
                min(r * (k - 1) if i <= k else r * k, ai) for i, ai in enumerate(spec.a, 1)
            )
        elif tag == ClassTag.TOURNAMENT:
            s = n * (n - 1) // 2 - (n - k) * (n - k - 1) // 2
        else:
            raise UnsupportedClass(f"no conjugate for {tag.value}")
        out.append(s)
    return out


def corrected_conjugate(a: Sequence[int]) -> IntSeq:
    """``a^E_k = #{i < k : a_i >= k-1} + #{i > k : a_i >= k}``."""
    n = len(a)
    return tuple(
        sum(1 for i in range(k - 1) if a[i] >= k - 1)
        + sum(1 for i in range(k, n) if a[i] >= k)
        for k in range(1, n + 1)
    )


def class_conjugate(spec: ClassSpec) -> IntSeq:
    """Length-n generalized conjugate of the class described by ``spec``."""
    check_existence(spec)
    if spec.tag == ClassTag.BIGRAPHIC:
        return conjugate(spec.b, spec.n)
    if spec.tag == ClassTag.GRAPHIC:
        return corrected_conjugate(spec.a)
    if spec.tag == ClassTag.TOURNAMENT:
        return tuple(spec.n - k for k in range(1, spec.n + 1))
    p = conjugate_prefix_sums(spec)
    return tuple(p[k] - p[k - 1] for k in range(1, spec.n + 1))


def _cell_rules(spec: ClassSpec):
    """Per-cell (cap, forced) for the row-constrained set ``S``."""
    tag, n, r = spec.tag, spec.n, spec.r
    m = spec.m
    cap = [[r if tag in (ClassTag.BIPARTITE_MULTI, ClassTag.MULTIGRAPHIC) else 1] * n
           for _ in range(m)]
    forced = [[0] * n for _ in range(m)]
    if tag in (ClassTag.DIGRAPHIC, ClassTag.MULTIGRAPHIC, ClassTag.GRAPHIC):
        for i in range(m):
            cap[i][i] = 0
    if tag == ClassTag.STRUCTURED:
        for i, row in enumerate(spec.mask.entries):
            for j, x in enumerate(row):
                if x and spec.mask.polarity == "avoid":
                    cap[i][j] = 0
                elif x:
                    forced[i][j] = 1
    return cap, forced


def maximal_matrix(spec: ClassSpec) -> IntMatrix:
    """Build the ⊴-maximal matrix of the class's set ``S`` greedily.

    Columns are filled left to right. Each row takes as much of its
    remaining quota as the cell cap allows, after reserving room for forced
    cells further right. Rows are independent in every row-constrained
    class, so this left-justified fill dominates every member of ``S``.
    Tournaments are handled separately (ones strictly below the diagonal).
    """
    check_existence(spec, for_matrix=True)
    n = spec.n
    if spec.tag == ClassTag.TOURNAMENT:
        return IntMatrix(tuple(tuple(int(i > j) for j in range(n)) for i in range(n)))

    targets = spec.row_targets()
    cap, forced = _cell_rules(spec)
    rows = []
    for i, quota in enumerate(targets):
        reserved = sum(forced[i])
        row = []
        for j in range(n):
            if forced[i][j]:
                reserved -= 1
                take = 1
            else:
                take = max(0, min(cap[i][j], quota - reserved))
            quota -= take
            row.append(take)
        if quota != 0:
            raise PreconditionFailed(f"row {i + 1} cannot reach its target {targets[i]}")
        rows.append(tuple(row))
    return IntMatrix(tuple(rows))
