from itertools import combinations, product

import pytest
from hypothesis import given
from hypothesis import strategies as st

from degseq.errors import BudgetExceeded, PreconditionFailed
from degseq.genconj import ClassSpec, IntMatrix, StructureMask
from degseq.grids import nonincreasing, signed_nonincreasing
from degseq.oracle import Budget, Witness, fulkerson_ryser_step, realize, witness_problems
from degseq.seqcore import majorization

MASK36 = StructureMask(((1, 1, 0, 0), (1, 1, 0, 0), (0, 0, 0, 0), (0, 0, 0, 0)), "avoid")


def test_examples():
    w = realize(ClassSpec("bigraphic", a=(2, 2, 1), b=(3, 2)))
    assert w.matrix.entries == ((1, 1, 1), (1, 1, 0))
    assert realize(ClassSpec("structured", a=(2, 1, 1, 1), b=(2, 1, 1, 1), mask=MASK36)) is None
    w = realize(ClassSpec("tournament", a=(1, 1, 1)))
    A = w.matrix.entries
    # one 3-cycle: every vertex has exactly one out- and one in-neighbour
    assert w.matrix.col_sums == (1, 1, 1) and w.matrix.row_sums == (1, 1, 1)
    assert all(A[i][i] == 0 for i in range(3))


def test_witnesses_are_deterministic():
    spec = ClassSpec("graphic", a=(3, 2, 2, 2, 1))
    assert realize(spec) == realize(spec)


def test_budget():
    with pytest.raises(BudgetExceeded):
        realize(ClassSpec("graphic", a=(1,) * 8))
    with pytest.raises(BudgetExceeded):
        realize(ClassSpec("bipartite-multi", a=(1,), b=(1,), r=4))
    assert realize(ClassSpec("graphic", a=(1,) * 8), Budget(square_n=8)) is not None
    assert Budget.from_env({}) == Budget()
    assert Budget.from_env({"DEGSEQ_ORACLE_BUDGET": "square_n=7, max_r=4"}) == Budget(
        square_n=7, max_r=4
    )
    with pytest.raises(ValueError):
        Budget.from_env({"DEGSEQ_ORACLE_BUDGET": "bogus=1"})


def test_env_budget_is_read(monkeypatch):
    monkeypatch.setenv("DEGSEQ_ORACLE_BUDGET", "square_n=3")
    with pytest.raises(BudgetExceeded):
        realize(ClassSpec("graphic", a=(1, 1, 1, 1)))


def test_validator_catches_bad_witnesses():
    spec = ClassSpec("graphic", a=(1, 1))
    bad = Witness(IntMatrix(((0, 1), (0, 0))), spec.tag)
    assert any("asymmetric" in p for p in witness_problems(spec, bad))
    spec = ClassSpec("tournament", a=(1, 0))
    bad = Witness(IntMatrix(((0, 1), (1, 0))), spec.tag)
    assert witness_problems(spec, bad)
    spec = ClassSpec("structured", a=(1, 1), b=(1, 1), mask=StructureMask(((1, 0), (0, 1)), "fill"))
    bad = Witness(IntMatrix(((0, 1), (1, 0))), spec.tag)
    assert any("not filled" in p for p in witness_problems(spec, bad))


# -- completeness: pruned search against plain enumeration ------------------------


def _plain_bipartite(spec, cap, diag_zero=False, forced=None, banned=None):
    m, n = spec.m, spec.n
    # diagonal cells of a digraph are simply left out of the enumeration
    cells = [(i, j) for i in range(m) for j in range(n) if not (diag_zero and i == j)]
    for vals in product(range(cap + 1), repeat=len(cells)):
        A = [[0] * n for _ in range(m)]
        for (i, j), v in zip(cells, vals):
            A[i][j] = v
        if forced and any(A[i][j] != 1 for i, j in forced):
            continue
        if banned and any(A[i][j] for i, j in banned):
            continue
        if [sum(r) for r in A] == list(spec.b) and [sum(c) for c in zip(*A)] == list(spec.a):
            return True
    return False


def _plain_pairs(n, options, degree_of):
    pairs = list(combinations(range(n), 2))
    for vals in product(options, repeat=len(pairs)):
        if degree_of(pairs, vals):
            return True
    return False


def _check(spec, expected):
    w = realize(spec)
    assert (w is not None) == expected, spec
    if w is not None:
        assert witness_problems(spec, w) == []


def test_completeness_bipartite():
    for m, n in [(2, 2), (2, 3), (3, 2), (2, 4), (3, 3)]:
        for a in nonincreasing(n, m):
            for b in product(range(n + 1), repeat=m):
                if sum(a) == sum(b):
                    spec = ClassSpec("bigraphic", a=a, b=b)
                    _check(spec, _plain_bipartite(spec, 1))
    for a in nonincreasing(2, 4):
        for b in product(range(5), repeat=2):
            if sum(a) == sum(b):
                spec = ClassSpec("bipartite-multi", a=a, b=b, r=2)
                _check(spec, _plain_bipartite(spec, 2))


def test_completeness_structured():
    for n in (2, 3):
        for masks in product(range(3), repeat=n):
            entries = [[int(masks[j] == i) for j in range(n)] for i in range(2)]
            cells = [(i, j) for i in range(2) for j in range(n) if entries[i][j]]
            for pol in ("fill", "avoid"):
                mask = StructureMask(entries, pol)
                for a in nonincreasing(n, 2):
                    for b in product(range(n + 1), repeat=2):
                        if sum(a) != sum(b):
                            continue
                        spec = ClassSpec("structured", a=a, b=b, mask=mask)
                        try:
                            mask.validate(b)
                        except Exception:
                            continue
                        kw = {"forced": cells} if pol == "fill" else {"banned": cells}
                        _check(spec, _plain_bipartite(spec, 1, **kw))


def test_completeness_digraphic():
    for n in (2, 3, 4):
        for a in nonincreasing(n, n - 1):
            for b in product(range(n), repeat=n):
                if sum(a) != sum(b):
                    continue
                spec = ClassSpec("digraphic", a=a, b=b)
                _check(spec, _plain_bipartite(spec, 1, diag_zero=True))


def _degrees(n, pairs, vals):
    deg = [0] * n
    for (i, j), v in zip(pairs, vals):
        deg[i] += v
        deg[j] += v
    return deg


def test_completeness_undirected():
    for n in range(1, 6):
        for r in (1, 2):
            if n == 5 and r == 2:
                continue
            for a in nonincreasing(n, r * (n - 1)):
                spec = ClassSpec("multigraphic", a=a, r=r)
                plain = _plain_pairs(n, range(r + 1), lambda p, v: _degrees(n, p, v) == list(a))
                _check(spec, plain)
                if r == 1:
                    _check(ClassSpec("graphic", a=a), plain)


def test_completeness_tournament_and_imbalance():
    for n in range(1, 6):
        for a in nonincreasing(n, n - 1):
            def scores(p, v, a=a):
                s = [0] * n
                for (i, j), x in zip(p, v):
                    s[i if x else j] += 1
                return s == list(a)
            _check(ClassSpec("tournament", a=a), _plain_pairs(n, (0, 1), scores))
    for n in range(1, 5):
        for d in signed_nonincreasing(n, 3):
            if sum(d) != 0:
                continue

            def imb(p, v, d=d):
                s = [0] * n
                for (i, j), x in zip(p, v):
                    s[i] += x
                    s[j] -= x
                return s == list(d)
            _check(ClassSpec("imbalance", d=d), _plain_pairs(n, (-1, 0, 1), imb))


# -- majorization step ------------------------------------------------------------------


def test_fulkerson_ryser_examples():
    assert fulkerson_ryser_step((2, 2), (3, 1), 1, 2) == ((1, 2), (3, 0))
    assert fulkerson_ryser_step((1, 1), (1, 1), 1, 1) == ((0, 1), (0, 1))
    with pytest.raises(PreconditionFailed, match="j <= l"):
        fulkerson_ryser_step((1, 1, 1), (3, 0, 0), 2, 1)
    with pytest.raises(PreconditionFailed, match="majorized"):
        fulkerson_ryser_step((3, 1), (2, 2), 1, 1)
    with pytest.raises(PreconditionFailed, match="positive"):
        fulkerson_ryser_step((2, 0), (1, 1), 2, 2)


@st.composite
def majorizing_step(draw):
    n = draw(st.integers(1, 7))
    b = sorted(draw(st.lists(st.integers(0, 8), min_size=n, max_size=n)), reverse=True)
    # a Robin Hood transfer from a richer to a poorer entry keeps a majorized by b
    a = list(b)
    for _ in range(draw(st.integers(0, 10))):
        i = draw(st.integers(0, n - 1))
        j = draw(st.integers(0, n - 1))
        if a[i] - a[j] >= 2:
            a[i] -= 1
            a[j] += 1
    a.sort(reverse=True)
    if not any(a) or not majorization(a, b):
        return None
    j = draw(st.sampled_from([k for k in range(1, n + 1) if a[k - 1] > 0]))
    ls = [l for l in range(j, n + 1) if b[l - 1] > 0]
    if not ls:
        return None
    return tuple(a), tuple(b), j, draw(st.sampled_from(ls))


@given(majorizing_step())
def test_fulkerson_ryser_property(case):
    if case is None:
        return
    a, b, j, l = case
    a2, b2 = fulkerson_ryser_step(a, b, j, l)
    assert majorization(a2, b2)
