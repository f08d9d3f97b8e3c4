from itertools import product

import pytest
from hypothesis import given
from hypothesis import strategies as st

from degseq.errors import EmptySequence, LengthMismatch, NotNonincreasing
from degseq.grids import nonincreasing, sequences
from degseq.seqcore import (
    PAIRWISE_LIMIT,
    ConcavityFlags,
    at,
    backward_difference,
    concavity_class,
    concavity_linear,
    concavity_pairwise,
    conjugate,
    corners,
    density,
    full_conjugate,
    majorization,
    prefix_sums,
    weak_dominance,
)

ints = st.lists(st.integers(-50, 50), max_size=30)


def brute_conjugate(b, length):
    return tuple(sum(1 for x in b if x >= k) for k in range(1, length + 1))


# -- backward difference --------------------------------------------------


@pytest.mark.parametrize(
    "a, expected",
    [((3, 1, 1), (3, -2, 0)), ((), ()), ((1, 2, 4, 7), (1, 1, 2, 3))],
)
def test_backward_difference_examples(a, expected):
    assert backward_difference(a) == expected


@given(st.lists(st.tuples(st.integers(-50, 50), st.integers(-50, 50)), max_size=20),
       st.integers(-5, 5))
def test_difference_is_linear(pairs, c):
    a = [p[0] for p in pairs]
    b = [p[1] for p in pairs]
    da, db = backward_difference(a), backward_difference(b)
    assert backward_difference([x + y for x, y in pairs]) == tuple(x + y for x, y in zip(da, db))
    assert backward_difference([c * x for x in a]) == tuple(c * x for x in da)


@given(ints, st.data())
def test_difference_telescopes(a, data):
    if len(a) < 2:
        return
    j = data.draw(st.integers(1, len(a) - 1))
    k = data.draw(st.integers(j + 1, len(a)))
    d = backward_difference(a)
    assert a[k - 1] - a[j - 1] == sum(d[j:k])


def test_at_and_prefix_sums():
    assert at((4, 5), 0) == 0 and at((4, 5), 3) == 0 and at((4, 5), 2) == 5
    assert prefix_sums((1, 2, 3)) == [0, 1, 3, 6]


# -- concavity ----------------------------------------------------------------


def test_concavity_examples():
    assert concavity_class((0, 0, 1, 1)).almost_concave
    assert concavity_class((5, 3, 1)) == ConcavityFlags(True, True, True, True)
    assert not concavity_class((0, 2, 0, 2)).almost_concave


def test_concavity_empty_is_vacuous():
    f = concavity_class(())
    assert f.nonincreasing and f.almost_nonincreasing and f.concave and f.almost_concave


def test_concavity_skips_first_difference():
    # the rise from the first difference to the second is not counted
    assert concavity_class((0, 0, 5)).concave is False
    assert concavity_class((-3, 0, 0)).concave


def _defn(a):
    n = len(a)
    d = backward_difference(a)
    return (
        all(a[k] - a[j] <= 0 for j in range(n) for k in range(j + 1, n)),
        all(a[k] - a[j] <= 1 for j in range(n) for k in range(j + 1, n)),
        all(d[k] - d[j] <= 0 for j in range(1, n) for k in range(j + 1, n)),
        all(d[k] - d[j] <= 1 for j in range(1, n) for k in range(j + 1, n)),
    )


@given(ints)
def test_concavity_matches_definition_and_paths_agree(a):
    f = concavity_pairwise(a)
    assert (f.nonincreasing, f.almost_nonincreasing, f.concave, f.almost_concave) == _defn(a)
    assert concavity_linear(a) == f
    assert not f.concave or f.almost_concave
    assert not f.nonincreasing or f.almost_nonincreasing


def test_long_input_uses_linear_path():
    a = list(range(PAIRWISE_LIMIT + 10, 0, -1))
    assert concavity_class(a) == concavity_pairwise(a)
    a[-1] = 50
    assert concavity_class(a) == concavity_pairwise(a)


# -- corners and conjugates ------------------------------------------------------


@pytest.mark.parametrize("a, expected", [((2, 1, 1, 1), [1, 4]), ((0, 0, 0), []), ((3, 3, 2), [2, 3])])
def test_corner_examples(a, expected):
    assert corners(a) == expected


def test_corners_reject_ascent():
    with pytest.raises(NotNonincreasing):
        corners((1, 2))
    assert corners(()) == []


@pytest.mark.parametrize(
    "b, length, expected",
    [((2, 1, 1, 1), 4, (4, 1, 0, 0)), ((), 3, (0, 0, 0)), ((3, 2, 1), 3, (3, 2, 1))],
)
def test_conjugate_examples(b, length, expected):
    assert conjugate(b, length) == expected


@given(st.lists(st.integers(0, 12), max_size=15), st.integers(0, 15))
def test_conjugate_counts(b, length):
    assert conjugate(b, length) == brute_conjugate(b, length)
    assert sum(full_conjugate(b)) == sum(b)


@given(st.lists(st.integers(0, 10), max_size=12))
def test_conjugate_is_order_free(b):
    assert full_conjugate(b) == full_conjugate(sorted(b, reverse=True))


def test_corner_duality_small_exhaustive():
    for n in range(0, 6):
        for a in nonincreasing(n, 5):
            ac = full_conjugate(a)
            assert {(k, a[k - 1]) for k in corners(a)} == {(ac[j - 1], j) for j in corners(ac)}
            assert set(corners(a)) == set(ac) - {0}


# -- order relations ------------------------------------------------------------


def test_weak_dominance_examples():
    assert weak_dominance((1, 1), (2, 0)).holds
    r = weak_dominance((2, 1, 1, 1), (2, 0, 2, 1))
    assert not r.holds and r.first_violation == (2, 3, 2)
    assert weak_dominance((), (0, 0)).holds


def test_weak_dominance_zero_extends():
    assert weak_dominance((1,), (0, 5)).first_violation == (1, 1, 0)
    assert weak_dominance((1, 1, 1), (3,)).holds
    assert not weak_dominance((0, 0, 1), ())


@given(st.lists(st.integers(0, 6), max_size=8), st.lists(st.integers(0, 6), max_size=8))
def test_weak_dominance_holds_iff_no_violation(a, b):
    r = weak_dominance(a, b)
    assert r.holds == (r.first_violation is None)
    n = max(len(a), len(b))
    pa = [sum(a[:k]) for k in range(n + 1)]
    pb = [sum(b[:k]) for k in range(n + 1)]
    bad = [k for k in range(1, n + 1) if pa[k] > pb[k]]
    assert r.holds == (not bad)
    if bad:
        assert r.first_violation == (bad[0], pa[bad[0]], pb[bad[0]])


def test_majorization_examples():
    assert majorization((2, 2), (3, 1))
    assert majorization((1, 1, 1), (1, 1, 1))
    assert not majorization((3, 1), (2, 2))
    assert not majorization((1, 1), (1, 0))
    with pytest.raises(LengthMismatch):
        majorization((1,), (1, 0))


def test_majorization_sorts_first():
    assert majorization((1, 3), (0, 4))


# -- density -------------------------------------------------------------------


def _dense(a, t):
    return all(any(s <= x <= s + t - 1 for x in a) for s in range(min(a), max(a) - t + 2))


def _deep(a, t):
    return all(a.count(v) >= t for v in range(min(a), max(a)))


def test_density_examples():
    assert density((3, 2, 1), 1, "dense")
    assert not density((4, 1), 2, "dense")
    assert density((4, 1), 3, "dense")
    assert density((2, 2, 1, 1), 2, "deep")
    with pytest.raises(EmptySequence):
        density((), 1)
    with pytest.raises(ValueError):
        density((1,), 0)


def test_density_exhaustive_cross_checks():
    for n in range(1, 5):
        for a in sequences(n, 4):
            a = list(a)
            for t in range(1, 4):
                assert density(a, t, "dense") == _dense(a, t)
                assert density(a, t, "deep") == _deep(a, t)
            assert density(a, 1, "dense") == density(a, 1, "deep")
            s = sorted(a, reverse=True)
            for t in range(1, 4):
                assert density(s, t) == all(x >= -t for x in backward_difference(s)[1:])


def test_corner_dominance_extends_exhaustive():
    # nonincreasing a, almost nonincreasing b: dominance at corners gives full dominance
    for n in range(1, 5):
        for a in nonincreasing(n, 3):
            cs = corners(a)
            pa = prefix_sums(a)
            for b in product(range(4), repeat=n):
                if not concavity_class(b).almost_nonincreasing:
                    continue
                pb = prefix_sums(b)
                if all(pa[k] <= pb[k] for k in cs):
                    assert weak_dominance(a, b).holds, (a, b)
