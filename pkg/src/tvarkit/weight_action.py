"""Diagonal torus actions given by integer weight matrices."""
from dataclasses import dataclass
from fractions import Fraction

from .lattice import Cone
from .lattice import linalg as la


@dataclass(frozen=True)
class WeightMatrix:
    """A ``k x m`` integer matrix; column ``j`` is the weight of coordinate ``j``."""

    entries: tuple

    def __post_init__(self):
        rows = tuple(tuple(int(x) for x in r) for r in self.entries)
        if not rows or not rows[0]:
            raise ValueError("weight matrix must be nonempty")
        if any(len(r) != len(rows[0]) for r in rows):
            raise ValueError("ragged weight matrix")
        object.__setattr__(self, "entries", rows)

    @property
    def k(self):
        return len(self.entries)

    @property
    def m(self):
        return len(self.entries[0])

    @property
    def columns(self):
        return [tuple(c) for c in zip(*self.entries)]

    @classmethod
    def quadric_cone(cls, n):
        """The ``(n+1) x (2n+2)`` matrix acting on the affine cone over ``sum x_i y_i = 0``.

        Columns are ``x_0..x_n`` then ``y_0..y_n``; row ``i`` gives weight
        ``+1`` to ``x_i`` and ``-1`` to ``y_i``, the last row is all ones.
        """
        rows = []
        for i in range(1, n + 1):
            x = [int(j == i) for j in range(n + 1)]
            y = [-int(j == i) for j in range(n + 1)]
            rows.append(x + y)
        rows.append([1] * (2 * n + 2))
        return cls(tuple(rows))


def is_effective_ambient(W):
    """The action on C^m is effective iff the weights generate Z^k."""
    factors = la.invariant_factors(W.entries)
    return len(factors) == W.k and all(f == 1 for f in factors)


def complexity(W, dim_x):
    if W.k > dim_x:
        raise ValueError(f"a {W.k}-dimensional torus cannot act effectively in dimension {dim_x}")
    return dim_x - W.k


def positive_grading(W):
    """A rational ``u`` with ``<u, w_j> > 0`` for every weight ``w_j``, or ``None``.

    Coordinate functionals are tried first; otherwise the sum of the facet
    normals of the weight cone is used, which is strictly positive on every
    nonzero vector of a pointed cone.
    """
    cols = W.columns
    if any(la.is_zero(c) for c in cols):
        return None
    for i in reversed(range(W.k)):
        if all(c[i] > 0 for c in cols):
            return tuple(Fraction(int(j == i)) for j in range(W.k))
    cone = Cone(cols, rank=W.k)
    if not cone.is_pointed:
        return None
    u = (0,) * W.k
    for h in cone.facets:
        u = la.add(u, h)
    u = tuple(Fraction(x) for x in u)
    if not all(la.dot(u, c) > 0 for c in cols):
        raise AssertionError("facet sum is not a positive grading")
    return u


@dataclass(frozen=True)
class Relation:
    index: int
    holds: bool
    lhs: tuple
    rhs: tuple


def dependency_relations(W, n=None):
    """Check ``w(x_0) + w(y_0) == w(x_i) + w(y_i)`` for ``i = 1..n``.

    The columns must split into an x-block and a y-block of ``n + 1`` each.
    """
    if n is None:
        if W.m % 2 or W.m < 4:
            raise ValueError("expected two equal blocks of at least two columns")
        n = W.m // 2 - 1
    if W.m != 2 * n + 2:
        raise ValueError(f"expected {2 * n + 2} columns, got {W.m}")
    cols = W.columns
    xs, ys = cols[:n + 1], cols[n + 1:]
    base = la.add(xs[0], ys[0])
    out = []
    for i in range(1, n + 1):
        other = la.add(xs[i], ys[i])
        out.append(Relation(i, base == other, base, other))
    return out
