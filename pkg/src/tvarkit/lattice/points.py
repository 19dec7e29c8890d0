"""Lattice points in truncated cones."""
from fractions import Fraction

from ..errors import RankMismatch, UnboundedRegion
from . import linalg as la
from .polyhedron import Polyhedron


def _projection_halfspaces(vertices, n):
    """Integer H-forms of the projections of ``conv(vertices)`` onto the first k coordinates.

    Each inequality ``a . x >= b`` is scaled to integers.
    """
    out = []
    for k in range(1, n + 1):
        proj = Polyhedron(sorted({v[:k] for v in vertices}), rank=k)
        rows = []
        for a, b in proj.inequalities:
            row = la.integral_row(tuple(a) + (Fraction(b),))
            rows.append((row[:-1], row[-1]))
        out.append(rows)
    return out


def lattice_points(c, u, bound):
    """Nonzero lattice points ``v`` of ``c`` with ``<u, v> <= bound``.

    ``c`` must be pointed and ``u`` strictly positive on ``c \\ {0}``, which
    makes the region a polytope.  The scan walks the bounding box one
    coordinate at a time, cutting each coordinate range with the halfspaces of
    the projected polytope, and filters the final candidates with the
    halfspaces of ``c``.  Points come back sorted.
    """
    u = la.rational_vector(u)
    bound = la.to_fraction(bound)
    if len(u) != c.rank:
        raise RankMismatch(f"functional of rank {len(u)} for a cone of rank {c.rank}")
    if not c.is_pointed:
        raise UnboundedRegion("the cone contains a line")
    values = [la.dot(u, r) for r in c.rays]
    if any(x <= 0 for x in values):
        raise UnboundedRegion("the functional is not strictly positive on the cone")
    if bound <= 0 or c.is_zero:
        return []
    n = c.rank
    corners = [(Fraction(0),) * n] + [la.scale(bound / x, r) for r, x in zip(c.rays, values)]
    cuts = _projection_halfspaces(corners, n)
    found = []

    def scan(prefix):
        k = len(prefix)
        lo, hi = None, None
        for a, b in cuts[k]:
            rest = b - sum(ai * xi for ai, xi in zip(a, prefix))
            ak = a[k]
            if ak > 0:
                t = -(-rest // ak)
                lo = t if lo is None else max(lo, t)
            elif ak < 0:
                t = rest // ak
                hi = t if hi is None else min(hi, t)
            elif rest > 0:
                return
        for x in range(lo, hi + 1):
            p = prefix + (x,)
            if k + 1 == n:
                found.append(p)
            else:
                scan(p)

    scan(())
    # the last level of cuts is the truncated cone itself; recheck anyway
    scaled = la.integral_row(tuple(u) + (bound,))
    u_int, limit = scaled[:-1], scaled[-1]
    return [p for p in found
            if any(p) and c.contains(p) and sum(a * x for a, x in zip(u_int, p)) <= limit]
