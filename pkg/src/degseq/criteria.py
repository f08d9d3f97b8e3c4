"""Realizability deciders for every graph class.

Each ``check_*`` function evaluates a family of inequalities
``lhs_k <= rhs_k`` and returns a :class:`CriterionReport`. The mode picks
which indices are evaluated:

* ``FULL``       every ``k = 1..n``
* ``CORNERS``    the corners of ``a`` (classes without a corner set alias REDUCED)
* ``REDUCED``    the smallest index set known to suffice for the class
* ``CONJUGATE``  the reduced set rewritten over the conjugate ``a'``
* ``AUTO``       sufficient-condition shortcuts, then REDUCED

Inputs must already be sorted as the class requires; nothing is sorted
implicitly. Mathematical obstructions (parity, unequal totals, degree
bounds) produce a ``NotRealizable`` report with ``precondition_note`` set;
only malformed input raises.

In CONJUGATE mode each inequality is indexed by its corner ``k = a'_j`` of
``a`` rather than by ``j``, so reports from every mode share one index space.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Callable, Iterable, Optional, Sequence

from .errors import (
    ConjugateFormUnavailable,
    InvalidR,
    LengthMismatch,
)
from .genconj import ClassSpec, ClassTag, StructureMask, conjugate_prefix_sums
from .seqcore import (
    at,
    conjugate,
    corners,
    density,
    full_conjugate,
    is_nonincreasing,
    prefix_sums,
    require_nonincreasing,
)


class CheckMode(str, Enum):
    FULL = "full"
    CORNERS = "corners"
    REDUCED = "reduced"
    CONJUGATE = "conjugate"
    AUTO = "auto"


class Verdict(str, Enum):
    REALIZABLE = "Realizable"
    NOT_REALIZABLE = "NotRealizable"


Inequality = tuple  # (k, lhs, rhs)


@dataclass
class CriterionReport:
    verdict: Verdict
    mode: CheckMode
    checked: list = field(default_factory=list)
    failure: Optional[Inequality] = None
    shortcut: Optional[str] = None
    precondition_note: Optional[str] = None

    @property
    def realizable(self) -> bool:
        return self.verdict == Verdict.REALIZABLE

    def to_dict(self) -> dict:
        return {
            "verdict": self.verdict.value,
            "mode": self.mode.value,
            "checked": [list(t) for t in self.checked],
            "failure": list(self.failure) if self.failure else None,
            "shortcut": self.shortcut,
            "precondition_note": self.precondition_note,
        }


@dataclass(frozen=True)
class Shortcut:
    """A sufficient condition that fired; ``checked`` lists any inequality it needed."""

    name: str
    checked: tuple = ()
    verdict: Verdict = Verdict.REALIZABLE


def _rejected(mode: CheckMode, note: str) -> CriterionReport:
    return CriterionReport(Verdict.NOT_REALIZABLE, mode, precondition_note=note)


def _run(mode: CheckMode, items: Iterable[Inequality]) -> CriterionReport:
    checked = []
    for k, lhs, rhs in items:
        checked.append((k, lhs, rhs))
        if lhs > rhs:
            return CriterionReport(Verdict.NOT_REALIZABLE, mode, checked, failure=(k, lhs, rhs))
    return CriterionReport(Verdict.REALIZABLE, mode, checked)


def _mode(mode) -> CheckMode:
    return CheckMode(mode)


def _with_shortcut(spec: ClassSpec, mode: CheckMode, fallback: Callable[[], CriterionReport]):
    if mode != CheckMode.AUTO:
        return fallback()
    hit = sufficient_shortcut(spec)
    if hit is not None:
        return CriterionReport(Verdict.REALIZABLE, mode, list(hit.checked), shortcut=hit.name)
    report = fallback()
    report.mode = CheckMode.AUTO
    return report


def _conjugate_lhs(ac: Sequence[int], j: int) -> int:
    # j a'_j + sum_{i>j} a'_i, which equals sum_{i<=a'_j} a_i
    return j * ac[j - 1] + sum(ac[j:])


def _require_r(r: int) -> None:
    if r < 1:
        raise InvalidR(f"r must be >= 1, got {r}")


# ---------------------------------------------------------------------------
# bipartite graphs and bipartite r-multigraphs


def bipartite_index_sets(a: Sequence[int], b: Sequence[int], r: int = 1) -> dict:
    n = len(a)
    top = max(b, default=0)
    cs = corners(a)
    return {
        CheckMode.FULL: list(range(1, n + 1)),
        CheckMode.CORNERS: cs,
        CheckMode.REDUCED: [k for k in cs if r * k < top],
    }


def check_bipartite_multigraph(a, b, r: int = 1, mode=CheckMode.REDUCED, *,
                               skip_corners: bool = False) -> CriterionReport:
    """Is there a bipartite r-multigraph with part degrees ``a`` and ``b``?

    ``a`` must be nonincreasing. The reduced check looks only at corners
    ``k`` of ``a`` with ``r k < max b``.
    """
    mode = _mode(mode)
    _require_r(r)
    a, b = tuple(a), tuple(b)
    require_nonincreasing(a)
    tag = ClassTag.BIGRAPHIC if r == 1 else ClassTag.BIPARTITE_MULTI
    spec = ClassSpec(tag, a=a, b=b, r=r)
    n = len(a)
    if sum(a) != sum(b):
        return _rejected(mode, f"sum a = {sum(a)} differs from sum b = {sum(b)}")
    if r > 1 and max(b, default=0) > r * n:
        return _rejected(mode, f"max b_i = {max(b)} exceeds r*n = {r * n}")

    pa = prefix_sums(a)
    pb = [0] + [sum(min(r * k, x) for x in b) for k in range(1, n + 1)]

    def plain(indices):
        return _run(mode, ((k, pa[k], pb[k]) for k in indices))

    def reduced():
        sets = bipartite_index_sets(a, b, r)
        if mode == CheckMode.FULL:
            return plain(sets[CheckMode.FULL])
        if mode == CheckMode.CORNERS:
            return plain(sets[CheckMode.CORNERS])
        if mode == CheckMode.CONJUGATE:
            return _run(mode, _bipartite_conjugate_items(a, b, r))
        ks = sets[CheckMode.REDUCED]
        if skip_corners:
            if r != 1:
                raise ValueError("corner skipping is only established for r = 1 here")
            ks = skip_corner_filter(a, ks, ClassTag.BIGRAPHIC)
        return plain(ks)

    return _with_shortcut(spec, mode, reduced)


def _bipartite_conjugate_items(a, b, r):
    ac = full_conjugate(a)
    top = max(b, default=0)
    pbc = prefix_sums(conjugate(b, r * len(a)))
    for j in corners(ac):
        k = ac[j - 1]
        if r * k < top:
            yield k, _conjugate_lhs(ac, j), pbc[r * k]


def check_bigraphic(a, b, mode=CheckMode.REDUCED, *, skip_corners: bool = False) -> CriterionReport:
    """Gale–Ryser test: is ``(a, b)`` the degree pair of a bipartite graph?"""
    return check_bipartite_multigraph(a, b, 1, mode, skip_corners=skip_corners)


# ---------------------------------------------------------------------------
# structured bipartite graphs


def check_structured_bipartite(a, b, mask: StructureMask, mode=CheckMode.REDUCED) -> CriterionReport:
    """Binary matrix with column sums ``a``, row sums ``b`` that fills/avoids ``mask``.

    The corner reduction needs at most one mask entry per column. A mask
    outside that family is accepted in FULL mode only, where the check is
    plain prefix dominance against the generalized conjugate.
    """
    mode = _mode(mode)
    a, b = tuple(a), tuple(b)
    if mode == CheckMode.CONJUGATE:
        raise ConjugateFormUnavailable("no conjugate form exists for structured bipartite graphs")
    require_nonincreasing(a)
    mask.validate(b, len(a), require_one_per_column=(mode != CheckMode.FULL))
    n = len(a)
    if sum(a) != sum(b):
        return _rejected(mode, f"sum a = {sum(a)} differs from sum b = {sum(b)}")
    if max(b, default=0) > n:
        return _rejected(mode, f"max b_i = {max(b)} exceeds n = {n}")
    spec = ClassSpec(ClassTag.STRUCTURED, a=a, b=b, mask=mask)
    pa = prefix_sums(a)
    pb = conjugate_prefix_sums(spec)
    ks = range(1, n + 1) if mode == CheckMode.FULL else corners(a)
    report = _run(mode, ((k, pa[k], pb[k]) for k in ks))
    return report


# ---------------------------------------------------------------------------
# digraphs and imbalance sequences


def digraph_rhs(b: Sequence[int], k: int) -> int:
    return sum(min(k - 1 if i <= k else k, x) for i, x in enumerate(b, 1))


def digraphic_index_sets(a, b) -> dict:
    cs = corners(a)
    top = max(b, default=0)
    return {
        CheckMode.FULL: list(range(1, len(a) + 1)),
        CheckMode.CORNERS: cs,
        CheckMode.REDUCED: [k for k in cs if k <= top],
    }


def check_digraphic(a, b, mode=CheckMode.REDUCED) -> CriterionReport:
    """Fulkerson test with out-degrees ``a`` (nonincreasing) and in-degrees ``b``.

    ``b`` may be in any order, as long as it is permuted jointly with ``a``.
    CONJUGATE mode additionally needs ``b`` nonincreasing.
    """
    mode = _mode(mode)
    a, b = tuple(a), tuple(b)
    if len(a) != len(b):
        raise LengthMismatch(f"out-degrees have {len(a)} entries, in-degrees {len(b)}")
    require_nonincreasing(a)
    if mode == CheckMode.CONJUGATE and not is_nonincreasing(b):
        raise ConjugateFormUnavailable("conjugate form needs nonincreasing in-degrees")
    n = len(a)
    if sum(a) != sum(b):
        return _rejected(mode, f"sum a = {sum(a)} differs from sum b = {sum(b)}")
    if max(b, default=0) > max(n - 1, 0):
        return _rejected(mode, f"max b_i = {max(b)} exceeds n - 1 = {n - 1}")
    pa = prefix_sums(a)

    if mode == CheckMode.CONJUGATE:
        return _run(mode, _digraph_conjugate_items(a, b))
    key = CheckMode.REDUCED if mode == CheckMode.AUTO else mode
    ks = digraphic_index_sets(a, b)[key]
    report = _run(mode, ((k, pa[k], digraph_rhs(b, k)) for k in ks))
    return report


def _digraph_conjugate_items(a, b):
    ac = full_conjugate(a)
    bc = conjugate(b, len(a))
    pbc = prefix_sums(bc)
    top = max(b, default=0)
    for j in corners(ac):
        k = ac[j - 1]
        if k <= top:
            yield k, _conjugate_lhs(ac, j), pbc[k] - min(k, at(bc, k))


def imbalance_index_sets(d) -> dict:
    n = len(d)
    gaps = [k for k in range(1, n) if d[k - 1] - d[k] >= 3]
    return {
        CheckMode.FULL: list(range(1, n + 1)),
        CheckMode.CORNERS: gaps,
        CheckMode.REDUCED: gaps,
    }


def check_imbalance(d, mode=CheckMode.REDUCED) -> CriterionReport:
    """Is ``d`` (nonincreasing, may be negative) an imbalance sequence of a digraph?"""
    mode = _mode(mode)
    d = tuple(d)
    if mode == CheckMode.CONJUGATE:
        raise ConjugateFormUnavailable("imbalance sequences have no conjugate form")
    require_nonincreasing(d)
    if sum(d) != 0:
        return _rejected(mode, f"sum d = {sum(d)} is not zero")
    spec = ClassSpec(ClassTag.IMBALANCE, d=d)
    n = len(d)
    pd = prefix_sums(d)

    def run():
        key = CheckMode.REDUCED if mode == CheckMode.AUTO else mode
        ks = imbalance_index_sets(d)[key]
        return _run(mode, ((k, pd[k], k * (n - k)) for k in ks))

    return _with_shortcut(spec, mode, run)


# ---------------------------------------------------------------------------
# r-multigraphs and simple graphs


def multigraph_m(a: Sequence[int], r: int = 1) -> int:
    """``max{i : a_i >= r(i-1) + 1}``, or 0 when no index qualifies."""
    return max((i for i in range(1, len(a) + 1) if a[i - 1] >= r * (i - 1) + 1), default=0)


def c1_rhs(a: Sequence[int], r: int, k: int) -> int:
    return r * k * (k - 1) + sum(min(r * k, x) for x in a[k:])


def c2_rhs(a: Sequence[int], r: int, k: int) -> int:
    return sum(min(r * (k - 1), x) for x in a[:k]) + sum(min(r * k, x) for x in a[k:])


def multigraph_index_sets(a, r: int = 1) -> dict:
    cs = corners(a)
    m = multigraph_m(a, r)
    reduced = [k for k in cs if k < m] + ([m] if m else [])
    return {
        CheckMode.FULL: list(range(1, len(a) + 1)),
        CheckMode.CORNERS: cs,
        CheckMode.REDUCED: reduced,
    }


def check_multigraphic(a, r: int = 1, mode=CheckMode.REDUCED, *,
                       skip_corners: bool = False) -> CriterionReport:
    """Is the nonincreasing ``a`` the degree sequence of a loopless r-multigraph?

    REDUCED evaluates the first inequality family at ``m`` and at the corners
    below ``m``. On every index ``k <= m`` it also confirms that the second
    family gives the same right-hand side.
    """
    mode = _mode(mode)
    _require_r(r)
    a = tuple(a)
    require_nonincreasing(a)
    return _check_undirected(a, r, mode, skip_corners, graphic=False)


def check_graphic(a, mode=CheckMode.REDUCED, *, skip_corners: bool = False) -> CriterionReport:
    """Erdős–Gallai test for simple graphs, with the corrected-conjugate form."""
    mode = _mode(mode)
    a = tuple(a)
    require_nonincreasing(a)
    return _check_undirected(a, 1, mode, skip_corners, graphic=True)


def _check_undirected(a, r, mode, skip_corners, graphic):
    n = len(a)
    if sum(a) % 2:
        return _rejected(mode, f"degree sum {sum(a)} is odd")
    if max(a, default=0) > r * max(n - 1, 0):
        return _rejected(mode, f"max a_i = {max(a)} exceeds r(n-1) = {r * (n - 1)}")
    tag = ClassTag.GRAPHIC if graphic else ClassTag.MULTIGRAPHIC
    spec = ClassSpec(tag, a=a, r=r)
    pa = prefix_sums(a)
    m = multigraph_m(a, r)

    def items(ks):
        for k in ks:
            rhs = c1_rhs(a, r, k)
            if k <= m and c2_rhs(a, r, k) != rhs:
                raise AssertionError(f"C1/C2 right-hand sides differ at k={k}")
            yield k, pa[k], rhs

    def run():
        if mode == CheckMode.CONJUGATE:
            return _run(mode, _undirected_conjugate_items(a, r, m, graphic))
        key = CheckMode.REDUCED if mode == CheckMode.AUTO else mode
        ks = multigraph_index_sets(a, r)[key]
        if skip_corners and key == CheckMode.REDUCED:
            ks = skip_corner_filter(a, ks, ClassTag.MULTIGRAPHIC, m=m)
        if key == CheckMode.FULL or key == CheckMode.CORNERS:
            return _run(mode, ((k, pa[k], c1_rhs(a, r, k)) for k in ks))
        return _run(mode, items(ks))

    return _with_shortcut(spec, mode, run)


def _undirected_conjugate_items(a, r, m, graphic):
    if m == 0:
        return
    ac = full_conjugate(a)
    pac = prefix_sums(x - 1 for x in ac)
    for j in corners(ac):
        k = ac[j - 1]
        if k < m:
            yield k, _conjugate_lhs(ac, j), pac[r * k]
    lhs_m = sum(a[:m])
    yield m, lhs_m, (pac[m] if graphic else c2_rhs(a, r, m))


# ---------------------------------------------------------------------------
# tournaments


def landau_rhs(n: int, k: int) -> int:
    return n * (n - 1) // 2 - (n - k) * (n - k - 1) // 2


def tournament_index_sets(a) -> dict:
    n = len(a)
    return {
        CheckMode.FULL: list(range(1, n + 1)),
        CheckMode.CORNERS: corners(a),
        CheckMode.REDUCED: [k for k in range(1, n) if a[k - 1] > n - k > a[k]],
    }


def check_score_sequence(a, mode=CheckMode.REDUCED) -> CriterionReport:
    """Landau test: is the nonincreasing ``a`` the score sequence of a tournament?"""
    mode = _mode(mode)
    a = tuple(a)
    require_nonincreasing(a)
    n = len(a)
    if sum(a) != n * (n - 1) // 2:
        return _rejected(mode, f"sum a = {sum(a)} differs from n(n-1)/2 = {n * (n - 1) // 2}")
    spec = ClassSpec(ClassTag.TOURNAMENT, a=a)
    pa = prefix_sums(a)

    def run():
        if mode == CheckMode.CONJUGATE:
            ac = full_conjugate(a)
            return _run(mode, (
                (ac[j - 1], _conjugate_lhs(ac, j), landau_rhs(n, ac[j - 1]))
                for j in corners(ac)
            ))
        key = CheckMode.REDUCED if mode == CheckMode.AUTO else mode
        ks = tournament_index_sets(a)[key]
        return _run(mode, ((k, pa[k], landau_rhs(n, k)) for k in ks))

    return _with_shortcut(spec, mode, run)


# ---------------------------------------------------------------------------
# refinements


def skip_corner_filter(a, indices, cls=ClassTag.BIGRAPHIC, *, m: Optional[int] = None) -> list:
    """Drop middle corners that are implied by their neighbours.

    For consecutive corners ``k1 < k2 < k3`` with
    ``a_k1 = a_k2 + 1 = a_k3 + 2``, the inequalities at ``k1`` and ``k3``
    imply the one at ``k2``. Within a run of unit steps every second corner
    is dropped, so each dropped corner keeps both neighbours. For
    multigraphs only corners ``<= m`` take part; ``m`` itself is always kept.
    """
    cls = ClassTag(cls)
    if cls not in (ClassTag.BIGRAPHIC, ClassTag.MULTIGRAPHIC, ClassTag.GRAPHIC):
        raise ValueError(f"corner skipping is not established for {cls.value}")
    a = tuple(a)
    cset = set(corners(a))
    indices = list(indices)
    if cls != ClassTag.BIGRAPHIC and m is None:
        m = multigraph_m(a)
    pool = [k for k in indices if k in cset and (m is None or k <= m)]
    rest = [k for k in indices if k not in pool]

    kept = []
    i = 0
    while i < len(pool):
        kept.append(pool[i])
        if (
            i + 2 < len(pool)
            and at(a, pool[i]) == at(a, pool[i + 1]) + 1 == at(a, pool[i + 2]) + 2
        ):
            i += 2
        else:
            i += 1
    return sorted(set(kept) | set(rest))


def _bigraphic_shortcut(a, b) -> Optional[Shortcut]:
    if sum(a) != sum(b):
        return None
    n, m = len(a), len(b)
    if n and m and all(1 <= x <= m for x in a) and all(1 <= y <= n for y in b):
        if len(set(a)) == 1 and len(set(b)) == 1:
            return Shortcut("constant-pair")
        if density(a, 1) and density(b, 1):
            return Shortcut("both-gap-free")
        for t in range(1, m + 1):
            if density(a, t, "dense") and density(b, t, "deep"):
                return Shortcut(f"dense-deep(t={t})")
    top = max(b, default=0)
    if top >= 1 and conjugate(b, top)[top - 1] >= max(a, default=0):
        return Shortcut("top-row-count")
    return None


def _graphic_shortcut(a) -> Optional[Shortcut]:
    n = len(a)
    if not n or not is_nonincreasing(a) or sum(a) % 2:
        return None
    p, q = min(a), max(a)
    if p < 1 or q > n - 1:
        return None
    counts = {j: a.count(j) for j in range(p + 1, q)}
    many = [j for j, c in counts.items() if c > 1]
    cond_a = not many or (len(many) == 1 and counts[many[0]] == 2)
    cond_b = sum(1 for c in counts.values() if c == 0) <= 1
    if not (cond_a or cond_b):
        return None
    m = multigraph_m(a, 1)
    lhs, rhs = sum(a[:m]), c1_rhs(a, 1, m)
    if lhs > rhs:
        return None
    return Shortcut("single-check", ((m, lhs, rhs),))


def sufficient_shortcut(spec: ClassSpec) -> Optional[Shortcut]:
    """Return the first sufficient condition that certifies realizability, if any.

    Never certifies non-realizability: a condition that does not fire (or
    whose hypotheses do not hold) yields ``None``.
    """
    tag = spec.tag
    if tag == ClassTag.BIGRAPHIC and spec.a is not None:
        return _bigraphic_shortcut(spec.a, spec.b)
    if tag == ClassTag.IMBALANCE:
        d = spec.d
        if sum(d) == 0 and is_nonincreasing(d) and all(x - y <= 2 for x, y in zip(d, d[1:])):
            return Shortcut("small-gaps")
        return None
    if tag == ClassTag.GRAPHIC:
        return _graphic_shortcut(spec.a)
    if tag == ClassTag.TOURNAMENT and spec.a is not None:
        a, n = spec.a, spec.n
        if n == 0 or sum(a) != n * (n - 1) // 2:
            return None
        missing = set(range(min(a), max(a) + 1)) - set(a)
        if len(missing) <= 1:
            return Shortcut("near-consecutive")
    return None


def index_sets(spec: ClassSpec) -> dict:
    """Index sets of FULL / CORNERS / REDUCED for a normalized ``spec``, unevaluated."""
    tag = spec.tag
    if tag in (ClassTag.BIGRAPHIC, ClassTag.BIPARTITE_MULTI):
        return bipartite_index_sets(spec.a, spec.b, spec.r)
    if tag == ClassTag.STRUCTURED:
        cs = corners(spec.a)
        return {CheckMode.FULL: list(range(1, spec.n + 1)), CheckMode.CORNERS: cs,
                CheckMode.REDUCED: cs}
    if tag == ClassTag.DIGRAPHIC:
        return digraphic_index_sets(spec.a, spec.b)
    if tag == ClassTag.IMBALANCE:
        return imbalance_index_sets(spec.d)
    if tag in (ClassTag.MULTIGRAPHIC, ClassTag.GRAPHIC):
        return multigraph_index_sets(spec.a, spec.r)
    return tournament_index_sets(spec.a)


def check(spec: ClassSpec, mode=CheckMode.REDUCED) -> CriterionReport:
    """Dispatch on ``spec.tag``."""
    tag = spec.tag
    if tag == ClassTag.BIGRAPHIC:
        return check_bigraphic(spec.a, spec.b, mode)
    if tag == ClassTag.BIPARTITE_MULTI:
        return check_bipartite_multigraph(spec.a, spec.b, spec.r, mode)
    if tag == ClassTag.STRUCTURED:
        return check_structured_bipartite(spec.a, spec.b, spec.mask, mode)
    if tag == ClassTag.DIGRAPHIC:
        return check_digraphic(spec.a, spec.b, mode)
    if tag == ClassTag.IMBALANCE:
        return check_imbalance(spec.d, mode)
    if tag == ClassTag.MULTIGRAPHIC:
        return check_multigraphic(spec.a, spec.r, mode)
    if tag == ClassTag.GRAPHIC:
        return check_graphic(spec.a, mode)
    return check_score_sequence(spec.a, mode)
