"""Exact linear algebra over Q and Z.

Vectors are plain tuples, matrices are lists of row tuples.  Entries are
``int`` or ``fractions.Fraction``; nothing here ever touches floating point.
"""
from fractions import Fraction
from math import gcd
from itertools import combinations

from ..errors import RankMismatch


def to_fraction(x):
    """Coerce ``int``, ``Fraction`` or a ``"p/q"`` string to a Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    raise TypeError(f"cannot interpret {x!r} as an exact rational")


def rational_vector(v):
    return tuple(to_fraction(x) for x in v)


def dot(a, b):
    if len(a) != len(b):
        raise RankMismatch(f"rank {len(a)} does not match rank {len(b)}")
    return sum((x * y for x, y in zip(a, b)), 0)


def add(a, b):
    return tuple(x + y for x, y in zip(a, b))


def sub(a, b):
    return tuple(x - y for x, y in zip(a, b))


def scale(c, a):
    return tuple(c * x for x in a)


def neg(a):
    return tuple(-x for x in a)


def is_zero(v):
    return all(x == 0 for x in v)


def _lcm(a, b):
    return a * b // gcd(a, b)


def primitive(v):
    """Return the primitive integer vector on the ray through ``v``.

    The scaling factor is positive, so the direction is preserved.  The zero
    vector is returned unchanged (as ints).
    """
    den = 1
    for x in v:
        if isinstance(x, Fraction):
            den = _lcm(den, x.denominator)
    ints = [int(x * den) for x in v]
    g = 0
    for x in ints:
        g = gcd(g, x)
    if g == 0:
        return tuple(ints)
    return tuple(x // g for x in ints)


def integral_row(v):
    """Positive rescaling of ``v`` to an integer vector (no gcd reduction)."""
    den = 1
    for x in v:
        if isinstance(x, Fraction):
            den = _lcm(den, x.denominator)
    return tuple(int(x * den) for x in v)


def _integer_rows(rows, ncols):
    out = []
    for r in rows:
        if len(r) != ncols:
            raise RankMismatch(f"row of length {len(r)} in a {ncols}-column matrix")
        if all(type(x) is int for x in r):
            out.append(list(r))
        else:
            out.append(list(integral_row([to_fraction(x) for x in r])))
    return out


def _reduce_by_gcd(row):
    g = 0
    for x in row:
        if x:
            g = gcd(g, x)
            if g == 1:
                return row
    return [x // g for x in row] if g > 1 else row


def _echelon(m, ncols, full=True):
    """Fraction-free Gauss-Jordan elimination in place; returns pivot columns.

    Rows are only ever scaled by nonzero integers and combined, so the row
    space is unchanged.  With ``full`` the pivot columns are cleared above the
    pivots too.
    """
    pivots = []
    lead = 0
    for col in range(ncols):
        piv = None
        for i in range(lead, len(m)):
            if m[i][col] != 0 and (piv is None or abs(m[i][col]) < abs(m[piv][col])):
                piv = i
        if piv is None:
            continue
        m[lead], m[piv] = m[piv], m[lead]
        prow = m[lead]
        p = prow[col]
        for i in range(0 if full else lead + 1, len(m)):
            if i != lead and m[i][col] != 0:
                f = m[i][col]
                m[i] = _reduce_by_gcd([p * x - f * y for x, y in zip(m[i], prow)])
        pivots.append(col)
        lead += 1
        if lead == len(m):
            break
    return pivots


def rref(rows, ncols):
    """Reduced row echelon form over Q.

    Returns ``(nonzero_rows, pivot_columns)``.
    """
    m = _integer_rows(rows, ncols)
    pivots = _echelon(m, ncols)
    out = []
    for r, p in zip(m, pivots):
        d = r[p]
        out.append(tuple(Fraction(x, d) for x in r))
    return out, pivots


def rank(rows, ncols=None):
    rows = list(rows)
    if not rows:
        return 0
    if ncols is None:
        ncols = len(rows[0])
    m = _integer_rows(rows, ncols)
    return len(_echelon(m, ncols, full=False))


def nullspace(rows, ncols):
    """Basis of ``{x : r . x = 0 for every row r}`` (rational vectors)."""
    red, pivots = rref(rows, ncols)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        x = [Fraction(0)] * ncols
        x[f] = Fraction(1)
        for r, p in zip(red, pivots):
            x[p] = -r[f]
        basis.append(tuple(x))
    return basis


def canonical_basis(vectors, ncols):
    """Canonical integer basis of the span of ``vectors``.

    The rows of the reduced echelon form, each made primitive; the pivot entry
    of every row is positive.
    """
    red, _ = rref(vectors, ncols)
    return [primitive(r) for r in red]


def orthogonal_complement(vectors, ncols):
    """Canonical integer basis of the orthogonal complement of ``span(vectors)``."""
    return canonical_basis(nullspace(vectors, ncols), ncols) if ncols else []


def solve(a, b, ncols):
    """One rational solution of ``a x = b`` or ``None`` if inconsistent."""
    aug = [tuple(r) + (bi,) for r, bi in zip(a, b)]
    red, pivots = rref(aug, ncols + 1)
    if ncols in pivots:
        return None
    x = [Fraction(0)] * ncols
    for r, p in zip(red, pivots):
        x[p] = r[ncols]
    return tuple(x)


def independent_rows(rows, ncols):
    """Indices of a maximal linearly independent subset, greedily from the top."""
    chosen = []
    basis = []  # (pivot column, integer row) in echelon form
    for i, r in enumerate(_integer_rows(rows, ncols)):
        for col, b in basis:
            if r[col]:
                f, p = r[col], b[col]
                r = _reduce_by_gcd([p * x - f * y for x, y in zip(r, b)])
        col = next((c for c, x in enumerate(r) if x), None)
        if col is not None:
            basis.append((col, r))
            chosen.append(i)
            if len(chosen) == ncols:
                break
    return chosen


def inverse(mat):
    n = len(mat)
    aug = [tuple(r) + tuple(Fraction(int(i == j)) for j in range(n)) for i, r in enumerate(mat)]
    red, pivots = rref(aug, 2 * n)
    if pivots[:n] != list(range(n)) or len(red) < n:
        raise ZeroDivisionError("singular matrix")
    return [tuple(r[n:]) for r in red]


def det(mat):
    n = len(mat)
    m = [[to_fraction(x) for x in r] for r in mat]
    d = Fraction(1)
    for c in range(n):
        piv = next((i for i in range(c, n) if m[i][c] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            d = -d
        d *= m[c][c]
        for i in range(c + 1, n):
            f = m[i][c] / m[c][c]
            if f:
                m[i] = [x - f * y for x, y in zip(m[i], m[c])]
    return d


def matmul(a, b):
    bt = list(zip(*b))
    return [tuple(sum(x * y for x, y in zip(r, c)) for c in bt) for r in a]


def transpose(a):
    return [tuple(c) for c in zip(*a)]


def identity(n):
    return [tuple(int(i == j) for j in range(n)) for i in range(n)]


def smith_normal_form(a):
    """Smith normal form of an integer matrix.

    Returns ``(d, u, v)`` with ``u * a * v == d``, where ``u`` and ``v`` are
    unimodular and ``d`` is diagonal with ``d[i][i]`` dividing ``d[i+1][i+1]``
    and all diagonal entries non-negative.
    """
    rows = len(a)
    cols = len(a[0]) if rows else 0
    d = [[int(x) for x in r] for r in a]
    u = [list(r) for r in identity(rows)]
    v = [list(r) for r in identity(cols)]

    def swap_rows(i, j):
        d[i], d[j] = d[j], d[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for r in d:
            r[i], r[j] = r[j], r[i]
        for r in v:
            r[i], r[j] = r[j], r[i]

    def add_row(src, dst, f):
        # row dst += f * row src
        d[dst] = [x + f * y for x, y in zip(d[dst], d[src])]
        u[dst] = [x + f * y for x, y in zip(u[dst], u[src])]

    def add_col(src, dst, f):
        for r in d:
            r[dst] += f * r[src]
        for r in v:
            r[dst] += f * r[src]

    t = 0
    while t < min(rows, cols):
        # smallest nonzero entry in the remaining block becomes the pivot
        best = None
        for i in range(t, rows):
            for j in range(t, cols):
                if d[i][j] != 0 and (best is None or abs(d[i][j]) < abs(d[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        swap_rows(t, best[0])
        swap_cols(t, best[1])
        while True:
            done = True
            for i in range(t + 1, rows):
                if d[i][t]:
                    add_row(t, i, -(d[i][t] // d[t][t]))
                    if d[i][t]:
                        done = False
            for j in range(t + 1, cols):
                if d[t][j]:
                    add_col(t, j, -(d[t][j] // d[t][t]))
                    if d[t][j]:
                        done = False
            if done:
                # enforce divisibility of the remaining block by the pivot
                bad = next(((i, j) for i in range(t + 1, rows) for j in range(t + 1, cols)
                            if d[i][j] % d[t][t]), None)
                if bad is None:
                    break
                add_row(bad[0], t, 1)
                continue
            # move the new smallest entry of row/column t into the pivot
            cands = [(abs(d[i][t]), i, t) for i in range(t, rows) if d[i][t]]
            cands += [(abs(d[t][j]), t, j) for j in range(t, cols) if d[t][j]]
            _, i, j = min(cands)
            swap_rows(t, i)
            swap_cols(t, j)
        if d[t][t] < 0:
            d[t] = [-x for x in d[t]]
            u[t] = [-x for x in u[t]]
        t += 1
    return ([tuple(r) for r in d], [tuple(r) for r in u], [tuple(r) for r in v])


def invariant_factors(a):
    """Nonzero diagonal entries of the Smith normal form."""
    d, _, _ = smith_normal_form(a)
    return [d[i][i] for i in range(min(len(d), len(d[0]) if d else 0)) if d[i][i]]


def unimodular_inverse(a):
    inv = inverse(a)
    out = []
    for r in inv:
        if any(x.denominator != 1 for x in r):
            raise ValueError("matrix is not unimodular")
        out.append(tuple(int(x) for x in r))
    return out


def full_rank_subsets(vectors, k, ncols):
    """True if every ``k``-subset of ``vectors`` has rank ``k``."""
    return all(rank(list(s), ncols) == k for s in combinations(vectors, k))
