"""Rational polyhedral cones with exact double description.

A :class:`Cone` keeps both representations in canonical form:

* generators: a canonical lineality basis plus the primitive extremal rays
  of the pointed cone ``C ∩ L^⊥`` (``L`` the lineality space);
* halfspaces: the same data for the dual cone, i.e. facet normals (primitive
  integer covectors) and a canonical basis of the equations ``C^⊥``.

Both are computed on construction, so duality is a field swap and equality
of cones is equality of canonical tuples.
"""
from fractions import Fraction

from ..errors import RankMismatch
from . import linalg as la


def _check_rank(rank, vectors, what="vector"):
    for v in vectors:
        if len(v) != rank:
            raise RankMismatch(f"{what} {tuple(v)} does not have rank {rank}")


def _coerce(v):
    v = tuple(v)
    return v if all(type(x) is int for x in v) else la.rational_vector(v)


def _pointed_dd(rows, r):
    """Extremal rays of the pointed cone ``{t in Q^r : M t >= 0}``.

    ``rows`` must have rank ``r``.  Standard incremental double description
    with the algebraic adjacency test.
    """
    order = la.independent_rows(rows, r)
    basis = [rows[i] for i in order]
    inv = la.inverse(basis)
    # columns of the inverse are the rays of the initial simplicial cone
    rays = [la.primitive(c) for c in la.transpose(inv)]
    processed = list(order)
    for idx, a in enumerate(rows):
        if idx in processed:
            continue
        vals = [la.dot(a, ray) for ray in rays]
        pos = [ray for ray, x in zip(rays, vals) if x > 0]
        zer = [ray for ray, x in zip(rays, vals) if x == 0]
        negs = [(ray, x) for ray, x in zip(rays, vals) if x < 0]
        new = pos + zer
        if negs:
            pos_vals = [(ray, x) for ray, x in zip(rays, vals) if x > 0]
            tight = {}
            for ray in rays:
                tight[ray] = frozenset(i for i in processed if la.dot(rows[i], ray) == 0)
            for p, xp in pos_vals:
                for n, xn in negs:
                    common = tight[p] & tight[n]
                    if len(common) < r - 2:
                        continue
                    if la.rank([rows[i] for i in common], r) != r - 2:
                        continue
                    new.append(la.primitive(la.sub(la.scale(xp, n), la.scale(xn, p))))
        rays = list(dict.fromkeys(new))
        processed.append(idx)
    return rays


def double_description(ineqs, dim):
    """Canonical generators of ``{x in Q^dim : a . x >= 0 for a in ineqs}``.

    Returns ``(lineality, rays)``: the canonical basis of the lineality space
    and the sorted primitive extremal rays of the cone intersected with the
    orthogonal complement of the lineality space.
    """
    rows = [la.integral_row(a) for a in ineqs]
    rows = [a for a in rows if not la.is_zero(a)]
    _check_rank(dim, rows, "inequality")
    if not rows:
        return tuple(la.canonical_basis(la.identity(dim), dim)), ()
    lineality = la.nullspace(rows, dim)
    # parametrize the complement of the lineality space by the row space
    span = la.canonical_basis(rows, dim)
    r = len(span)
    reduced = [tuple(la.dot(a, b) for b in span) for a in rows]
    trays = _pointed_dd(reduced, r)
    rays = set()
    for t in trays:
        x = [0] * dim
        for c, b in zip(t, span):
            if c:
                x = [xi + c * bi for xi, bi in zip(x, b)]
        rays.add(la.primitive(x))
    return tuple(la.canonical_basis(lineality, dim)), tuple(sorted(rays))


def _halfspace_rows(facets, equations):
    return list(facets) + list(equations) + [la.neg(e) for e in equations]


class Cone:
    """A convex rational polyhedral cone in ``Q^rank``.

    ``Cone(generators)`` builds the cone spanned by the given (rational or
    integer) vectors; ``lineality`` may list extra vectors whose span is
    contained in the cone.  ``rank`` is needed only when there are no
    generators at all.
    """

    __slots__ = ("rank", "rays", "lineality", "facets", "equations", "_hash")

    def __init__(self, generators=(), rank=None, lineality=()):
        gens = [la.rational_vector(g) for g in generators]
        lin = [la.rational_vector(g) for g in lineality]
        if rank is None:
            if not gens and not lin:
                raise ValueError("rank is required for a cone without generators")
            rank = len((gens or lin)[0])
        _check_rank(rank, gens + lin, "generator")
        rows = gens + lin + [la.neg(v) for v in lin]
        dual_lin, dual_rays = double_description(rows, rank)
        lin_c, rays_c = double_description(_halfspace_rows(dual_rays, dual_lin), rank)
        self._set(rank, rays_c, lin_c, dual_rays, dual_lin)

    def _set(self, rank, rays, lineality, facets, equations):
        self.rank = rank
        self.rays = tuple(rays)
        self.lineality = tuple(lineality)
        self.facets = tuple(facets)
        self.equations = tuple(equations)
        self._hash = None

    @classmethod
    def _from_parts(cls, rank, rays, lineality, facets, equations):
        c = cls.__new__(cls)
        c._set(rank, rays, lineality, facets, equations)
        return c

    @classmethod
    def from_inequalities(cls, inequalities=(), equations=(), rank=None):
        """The cone ``{v : a . v >= 0 for a in inequalities, e . v = 0 for e in equations}``."""
        ineqs = [la.rational_vector(a) for a in inequalities]
        eqs = [la.rational_vector(e) for e in equations]
        if rank is None:
            if not ineqs and not eqs:
                raise ValueError("rank is required")
            rank = len((ineqs or eqs)[0])
        _check_rank(rank, ineqs + eqs, "halfspace")
        lin_c, rays_c = double_description(_halfspace_rows(ineqs, eqs), rank)
        rows = list(rays_c) + list(lin_c) + [la.neg(v) for v in lin_c]
        dual_lin, dual_rays = double_description(rows, rank)
        return cls._from_parts(rank, rays_c, lin_c, dual_rays, dual_lin)

    @classmethod
    def zero(cls, rank):
        return cls(rank=rank)

    @classmethod
    def full(cls, rank):
        return cls(rank=rank, lineality=la.identity(rank))

    @classmethod
    def orthant(cls, rank):
        return cls(la.identity(rank), rank=rank)

    # --- basic data -----------------------------------------------------

    @property
    def generators(self):
        """A generating set: extremal rays, then the lineality basis and its negatives."""
        return self.rays + self.lineality + tuple(la.neg(v) for v in self.lineality)

    @property
    def halfspaces(self):
        """Covectors ``h`` with ``C = {v : h . v >= 0 for all h}``."""
        return self.facets + self.equations + tuple(la.neg(e) for e in self.equations)

    @property
    def dim(self):
        return la.rank(list(self.rays) + list(self.lineality), self.rank) if self.rank else 0

    @property
    def is_pointed(self):
        return not self.lineality

    @property
    def is_full_dimensional(self):
        return not self.equations

    @property
    def is_zero(self):
        return not self.rays and not self.lineality

    def dual(self):
        return Cone._from_parts(self.rank, self.facets, self.equations, self.rays, self.lineality)

    def __neg__(self):
        return Cone._from_parts(
            self.rank,
            tuple(sorted(la.neg(r) for r in self.rays)),
            self.lineality,
            tuple(sorted(la.neg(f) for f in self.facets)),
            self.equations,
        )

    def __eq__(self, other):
        if not isinstance(other, Cone):
            return NotImplemented
        return (self.rank, self.rays, self.lineality) == (other.rank, other.rays, other.lineality)

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.rank, self.rays, self.lineality))
        return self._hash

    def __repr__(self):
        parts = [repr(list(self.rays))]
        if self.lineality:
            parts.append(f"lineality={list(self.lineality)!r}")
        if not self.rays and not self.lineality:
            parts.append(f"rank={self.rank}")
        return f"Cone({', '.join(parts)})"

    # --- membership -----------------------------------------------------

    def contains(self, v):
        v = _coerce(v)
        _check_rank(self.rank, [v])
        return (all(la.dot(h, v) >= 0 for h in self.facets)
                and all(la.dot(e, v) == 0 for e in self.equations))

    __contains__ = contains

    def relint_contains(self, v):
        """Membership in the relative interior."""
        v = _coerce(v)
        _check_rank(self.rank, [v])
        return (all(la.dot(h, v) > 0 for h in self.facets)
                and all(la.dot(e, v) == 0 for e in self.equations))

    def contains_cone(self, other):
        if other.rank != self.rank:
            raise RankMismatch("cones of different rank")
        return all(self.contains(g) for g in other.generators)

    def relint_point(self):
        """An integer point of the relative interior (sum of all generators)."""
        p = (0,) * self.rank
        for g in self.rays:
            p = la.add(p, g)
        return p

    # --- constructions --------------------------------------------------

    def __add__(self, other):
        if not isinstance(other, Cone):
            return NotImplemented
        if other.rank != self.rank:
            raise RankMismatch("cones of different rank")
        return Cone(self.rays + other.rays, rank=self.rank,
                    lineality=self.lineality + other.lineality)

    def intersection(self, other):
        if other.rank != self.rank:
            raise RankMismatch("cones of different rank")
        return Cone.from_inequalities(self.facets + other.facets,
                                      self.equations + other.equations, rank=self.rank)

    def intersect_hyperplane(self, w):
        """``C ∩ w^⊥``."""
        return Cone.from_inequalities(self.facets, self.equations + (la.rational_vector(w),),
                                      rank=self.rank)

    def is_face(self, other):
        """True if ``other`` is a face of this cone."""
        if other.rank != self.rank or not self.contains_cone(other):
            return False
        # a face is cut out by the facets vanishing on it
        tight = [h for h in self.facets if all(la.dot(h, g) == 0 for g in other.generators)]
        return Cone.from_inequalities(self.facets, self.equations + tuple(tight),
                                      rank=self.rank) == other

    def faces(self):
        """All faces, as cones, from the minimal face upward."""
        found = {}
        facets = self.facets
        from itertools import combinations
        for k in range(len(facets) + 1):
            for sub in combinations(facets, k):
                f = Cone.from_inequalities(facets, self.equations + sub, rank=self.rank)
                found.setdefault(f, None)
        return sorted(found, key=lambda c: (c.dim, c.rays))

    def linear_image(self, matrix):
        """Image under ``v -> matrix v`` (matrix given as rows, square of size rank)."""
        def img(v):
            return tuple(la.dot(row, v) for row in matrix)
        out_rank = len(matrix)
        return Cone([img(r) for r in self.rays], rank=out_rank,
                    lineality=[img(l) for l in self.lineality])


def pairing(u, v):
    """The natural pairing ``<u, v>`` between ``M_Q`` and ``N_Q``."""
    return Fraction(la.dot(la.rational_vector(u), la.rational_vector(v)))


def dual_cone(c):
    return c.dual()


def is_pointed(c):
    """``c ∩ -c = {0}``, decided from the halfspace description."""
    rows = list(c.facets) + list(c.equations)
    if not rows:
        return c.rank == 0
    return not la.nullspace(rows, c.rank)


def relint_contains(c, v):
    return c.relint_contains(v)
