"""Rational polyhedra in V-form, canonicalized through their homogenization.

``P = conv(vertices) + tail`` is stored via the cone over ``{1} x P``: its
extremal rays with positive first coordinate are the vertices, those with
first coordinate zero are the tail rays.  This gives irredundant vertices
for free and an H-form from the facets of the same cone.
"""
from fractions import Fraction

from ..errors import RankMismatch, UnboundedFunctional
from . import linalg as la
from .cone import Cone


class Polyhedron:
    """``conv(vertices) + Cone(rays, lineality)`` in ``Q^rank``, or the empty set.

    Use :meth:`Polyhedron.empty` for the empty polyhedron.  Instances are
    immutable; all arithmetic is exact.
    """

    __slots__ = ("rank", "_hom", "vertices", "_tail_rays", "_tail", "_hash")

    def __init__(self, vertices, rays=(), rank=None, lineality=()):
        verts = [la.rational_vector(v) for v in vertices]
        rays = [la.rational_vector(r) for r in rays]
        lin = [la.rational_vector(l) for l in lineality]
        if rank is None:
            if not verts:
                raise ValueError("rank is required")
            rank = len(verts[0])
        if not verts:
            raise ValueError("a nonempty polyhedron needs at least one point; use Polyhedron.empty")
        for v in verts + rays + lin:
            if len(v) != rank:
                raise RankMismatch(f"{v} does not have rank {rank}")
        gens = [(1,) + v for v in verts] + [(0,) + r for r in rays]
        hom = Cone(gens, rank=rank + 1, lineality=[(0,) + l for l in lin])
        self._set(rank, hom)

    def _set(self, rank, hom):
        self.rank = rank
        self._hom = hom
        self._hash = None
        self._tail = None
        if hom is None:
            self.vertices = ()
            self._tail_rays = ()
            return
        verts = []
        tail_rays = []
        for r in hom.rays:
            if r[0] > 0:
                verts.append(tuple(Fraction(x, r[0]) for x in r[1:]))
            else:
                tail_rays.append(r[1:])
        self.vertices = tuple(sorted(verts))
        self._tail_rays = tuple(tail_rays)

    @property
    def tail(self):
        """The tail (recession) cone; ``None`` for the empty polyhedron."""
        if self._tail is None and self._hom is not None:
            # the slice of the homogenization at height zero
            lin = tuple(l[1:] for l in self._hom.lineality)
            self._tail = Cone(self._tail_rays, rank=self.rank, lineality=lin)
        return self._tail

    @classmethod
    def _from_hom(cls, rank, hom):
        p = cls.__new__(cls)
        p._set(rank, hom)
        return p

    @classmethod
    def empty(cls, rank):
        return cls._from_hom(rank, None)

    @classmethod
    def from_cone(cls, cone):
        return cls([(0,) * cone.rank], cone.rays, rank=cone.rank, lineality=cone.lineality)

    @classmethod
    def point(cls, v):
        return cls([v])

    # --- data -------------------------------------------------------------

    @property
    def is_empty(self):
        return self._hom is None

    @property
    def rays(self):
        return self._tail_rays

    @property
    def lineality(self):
        return () if self.is_empty else tuple(l[1:] for l in self._hom.lineality)

    @property
    def is_bounded(self):
        return not self.is_empty and not self._tail_rays and not self._hom.lineality

    @property
    def homogenization(self):
        return self._hom

    @property
    def inequalities(self):
        """Pairs ``(a, b)`` with ``P = {v : a . v >= b}`` (equations appear twice, negated)."""
        if self.is_empty:
            return ()
        out = []
        for h in self._hom.halfspaces:
            a = h[1:]
            if la.is_zero(a):
                continue  # the height condition t >= 0
            out.append((a, Fraction(-h[0])))
        return tuple(out)

    def __eq__(self, other):
        if not isinstance(other, Polyhedron):
            return NotImplemented
        return self.rank == other.rank and self._hom == other._hom

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.rank, self._hom))
        return self._hash

    def __repr__(self):
        if self.is_empty:
            return f"Polyhedron.empty({self.rank})"
        verts = [tuple(str(x) for x in v) for v in self.vertices]
        parts = [f"vertices={verts}"]
        if self.rays:
            parts.append(f"rays={list(self.rays)}")
        if self.lineality:
            parts.append(f"lineality={list(self.lineality)}")
        return f"Polyhedron({', '.join(parts)})"

    # --- queries ----------------------------------------------------------

    def contains(self, v):
        v = la.rational_vector(v)
        if len(v) != self.rank:
            raise RankMismatch(f"{v} does not have rank {self.rank}")
        if self.is_empty:
            return False
        return self._hom.contains((1,) + v)

    __contains__ = contains

    def is_subset(self, other):
        """``self ⊆ other``."""
        if self.rank != other.rank:
            raise RankMismatch("polyhedra of different rank")
        if self.is_empty:
            return True
        if other.is_empty:
            return False
        return other._hom.contains_cone(self._hom)

    def min_pairing(self, w):
        """``min <w, v>`` over the polyhedron; raises if unbounded below."""
        w = la.rational_vector(w)
        if len(w) != self.rank:
            raise RankMismatch(f"{w} does not have rank {self.rank}")
        if self.is_empty:
            raise ValueError("minimum over the empty polyhedron")
        if not self.tail.dual().contains(w):
            raise UnboundedFunctional(f"{tuple(map(str, w))} is negative on the tail cone")
        return min(la.dot(w, v) for v in self.vertices)

    # --- constructions ----------------------------------------------------

    def __add__(self, other):
        return minkowski_sum(self, other)

    def translate(self, t):
        t = la.rational_vector(t)
        if self.is_empty:
            return self
        return Polyhedron([la.add(v, t) for v in self.vertices], self.rays,
                          rank=self.rank, lineality=self.lineality)

    def linear_image(self, matrix):
        """Image under ``v -> matrix v``."""
        if self.is_empty:
            return Polyhedron.empty(len(matrix))

        def img(v):
            return tuple(la.dot(row, v) for row in matrix)
        return Polyhedron([img(v) for v in self.vertices], [img(r) for r in self.rays],
                          rank=len(matrix), lineality=[img(l) for l in self.lineality])


def minkowski_sum(a, b):
    if a.rank != b.rank:
        raise RankMismatch(f"rank {a.rank} does not match rank {b.rank}")
    if a.is_empty or b.is_empty:
        return Polyhedron.empty(a.rank)
    verts = {la.add(u, v) for u in a.vertices for v in b.vertices}
    return Polyhedron(sorted(verts), a.rays + b.rays, rank=a.rank,
                      lineality=a.lineality + b.lineality)


def w_face(d, w):
    """The face of ``d`` on which ``<w, .>`` is minimal.

    ``w`` must lie in the dual of the tail cone, otherwise
    :class:`UnboundedFunctional` is raised.
    """
    w = la.rational_vector(w)
    if d.is_empty:
        return d
    m = d.min_pairing(w)
    verts = [v for v in d.vertices if la.dot(w, v) == m]
    rays = [r for r in d.rays if la.dot(w, r) == 0]
    return Polyhedron(verts, rays, rank=d.rank, lineality=d.lineality)


def contains(d, v):
    return d.contains(v)
