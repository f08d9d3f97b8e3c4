"""Independent brute-force helpers shared by the test modules.

Nothing here calls the library's criteria or conjugate code.
"""

from itertools import combinations, product

from degseq.genconj import ClassSpec, ClassTag


def row_options(n, target, caps, forced):
    """Every length-n row with entries within ``caps``, ``forced`` cells = 1, summing to target."""
    ranges = [(1,) if f else range(c + 1) for c, f in zip(caps, forced)]
    return [row for row in product(*ranges) if sum(row) == target]


def cell_rules(spec):
    """Caps and forced cells of the row-constrained set S, written out from the class definitions."""
    tag, n = spec.tag, spec.n
    m = len(spec.b) if tag in (ClassTag.BIGRAPHIC, ClassTag.BIPARTITE_MULTI, ClassTag.STRUCTURED) else n
    r = spec.r
    caps = [[r] * n for _ in range(m)]
    forced = [[0] * n for _ in range(m)]
    if tag in (ClassTag.DIGRAPHIC, ClassTag.GRAPHIC, ClassTag.MULTIGRAPHIC):
        for i in range(m):
            caps[i][i] = 0
    if tag == ClassTag.STRUCTURED:
        for i, row in enumerate(spec.mask.entries):
            for j, x in enumerate(row):
                if x and spec.mask.polarity == "avoid":
                    caps[i][j] = 0
                elif x:
                    forced[i][j] = 1
    return caps, forced


def row_targets(spec):
    if spec.tag in (ClassTag.GRAPHIC, ClassTag.MULTIGRAPHIC):
        return spec.a
    return spec.b


def column_sum_vectors(spec):
    """All column-sum vectors of members of S (empty set if S is empty)."""
    n = spec.n
    if spec.tag == ClassTag.TOURNAMENT:
        pairs = list(combinations(range(n), 2))
        out = set()
        for bits in product((0, 1), repeat=len(pairs)):
            col = [0] * n
            for (i, j), bit in zip(pairs, bits):
                # A_ij + A_ji = 1: exactly one of the two cells is set
                col[j if bit else i] += 1
            out.add(tuple(col))
        return out
    caps, forced = cell_rules(spec)
    reach = {(0,) * n}
    for i, target in enumerate(row_targets(spec)):
        opts = row_options(n, target, caps[i], forced[i])
        reach = {tuple(x + y for x, y in zip(v, row)) for v in reach for row in opts}
        if not reach:
            break
    return reach


def prefix_dominated(v, w):
    sv = sw = 0
    for x, y in zip(v, w):
        sv += x
        sw += y
        if sv > sw:
            return False
    return True


def exists_bipartite(a, b, caps, forced):
    """Is there a matrix with row sums b, column sums a under the cell rules? Plain enumeration."""
    n = len(a)
    reach = {(0,) * n}
    for i, target in enumerate(b):
        opts = row_options(n, target, caps[i], forced[i])
        nxt = set()
        for v in reach:
            for row in opts:
                v2 = tuple(p + q for p, q in zip(v, row))
                if all(x <= y for x, y in zip(v2, a)):
                    nxt.add(v2)
        reach = nxt
    return tuple(a) in reach


def graph_exists(a, r=1):
    """Loopless multigraph with multiplicity <= r and degrees a, by plain enumeration of pairs."""
    n = len(a)
    pairs = list(combinations(range(n), 2))
    for mult in product(range(r + 1), repeat=len(pairs)):
        deg = [0] * n
        for (i, j), x in zip(pairs, mult):
            deg[i] += x
            deg[j] += x
        if tuple(deg) == tuple(a):
            return True
    return False


def tournament_exists(a):
    return tuple(a) in column_sum_vectors(ClassSpec(ClassTag.TOURNAMENT, n=len(a)))


def imbalance_exists(d):
    n = len(d)
    pairs = list(combinations(range(n), 2))
    for orient in product((0, 1, 2), repeat=len(pairs)):
        imb = [0] * n
        for (i, j), o in zip(pairs, orient):
            if o == 1:
                imb[i] += 1
                imb[j] -= 1
            elif o == 2:
                imb[j] += 1
                imb[i] -= 1
        if tuple(imb) == tuple(d):
            return True
    return False
