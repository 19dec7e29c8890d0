"""Seeded random instances for property checks.

Every generator takes a ``random.Random`` so runs are reproducible; the CLI
and the test suite seed it from ``TVARKIT_SEED``.
"""
import os
import random
from fractions import Fraction
from math import gcd

from .lattice import Cone, Polyhedron
from .lattice import linalg as la
from .pdivisor import HyperplaneArrangement, PolyhedralDivisor, is_proper
from .discrepancy import ToricGermData


def seed_from_env(default=0):
    return int(os.environ.get("TVARKIT_SEED", default))


def make_rng(salt=0):
    return random.Random(seed_from_env() * 1_000_003 + salt)


def random_vector(rng, rank, lo=-3, hi=3):
    return tuple(rng.randint(lo, hi) for _ in range(rank))


def random_rational_vector(rng, rank, lo=-3, hi=3, dens=(1, 2, 3)):
    out = []
    for _ in range(rank):
        den = rng.choice(dens)
        out.append(Fraction(rng.randint(lo * den, hi * den), den))
    return tuple(out)


def random_cone(rng, rank, max_gens=None, lo=-3, hi=3):
    """A cone spanned by a few small integer vectors (any dimension, maybe not pointed)."""
    k = rng.randint(0, max_gens if max_gens is not None else rank + 2)
    gens = [random_vector(rng, rank, lo, hi) for _ in range(k)]
    return Cone(gens, rank=rank)


def random_pointed_cone(rng, rank, dim=None, max_extra=2):
    """A pointed cone of the given dimension."""
    while True:
        dim_ = rng.randint(0, rank) if dim is None else dim
        if dim_ == 0:
            return Cone.zero(rank)
        basis = [random_vector(rng, rank, -2, 2) for _ in range(dim_)]
        if la.rank(basis, rank) < dim_:
            continue
        gens = []
        for _ in range(dim_ + rng.randint(0, max_extra)):
            coeffs = [rng.randint(0, 3) for _ in range(dim_)]
            if not any(coeffs):
                continue
            gens.append(tuple(sum(c * b[i] for c, b in zip(coeffs, basis)) for i in range(rank)))
        gens += basis
        c = Cone(gens, rank=rank)
        # nonnegative combinations of an independent set never contain a line
        if c.is_pointed and c.dim == dim_:
            return c


def random_polytope_points(rng, rank, count=None, lo=-2, hi=2):
    count = rng.randint(1, 4) if count is None else count
    return [random_rational_vector(rng, rank, lo, hi) for _ in range(count)]


def random_polyhedron(rng, rank, tail=None):
    tail = random_pointed_cone(rng, rank) if tail is None else tail
    return Polyhedron(random_polytope_points(rng, rank), tail.rays, rank=rank,
                      lineality=tail.lineality)


def random_unimodular(rng, n, steps=2):
    m = [list(r) for r in la.identity(n)]
    if n < 2:
        return [tuple(r) for r in m]
    for _ in range(steps):
        i, j = rng.sample(range(n), 2)
        f = rng.choice((-1, 1))
        m[i] = [a + f * b for a, b in zip(m[i], m[j])]
    if rng.random() < 0.5:
        i, j = rng.sample(range(n), 2)
        m[i], m[j] = m[j], m[i]
    return [tuple(r) for r in m]


def random_q_gorenstein_germ(rng, rank):
    """A pointed full-dimensional Q-Gorenstein cone with its ``u_K``.

    Either simplicial, or spanned by primitive vectors ``(q, p)`` at a common
    height ``q``; both are then moved by a small unimodular map.
    """
    while True:
        if rng.random() < 0.5:
            rays = [random_vector(rng, rank, -2, 2) for _ in range(rank)]
            if la.rank(rays, rank) < rank:
                continue
            rays = [la.primitive(r) for r in rays]
        else:
            q = rng.choice((1, 1, 2, 3))
            rays = []
            for _ in range(rank + rng.randint(0, 3)):
                p = random_vector(rng, rank - 1, -2, 2)
                if gcd(q, *p) == 1:
                    rays.append((q,) + p)
            if len(rays) < rank or la.rank(rays, rank) < rank:
                continue
        a = random_unimodular(rng, rank)
        rays = [tuple(la.dot(row, r) for row in a) for r in rays]
        sigma = Cone(rays, rank=rank)
        if not sigma.is_pointed or not sigma.is_full_dimensional:
            continue
        u = la.solve(list(sigma.rays), [1] * len(sigma.rays), rank)
        if u is None:
            continue
        return ToricGermData(sigma, u)


def random_embeddable_divisor(rng, rank, n_coeffs=None):
    """A proper full-locus divisor whose tail is pointed but not full-dimensional.

    Coefficients are random bounded vertex sets placed in translates of the
    span of the tail, shifted deep into the tail until the divisor is proper.
    """
    if rank < 2:
        raise ValueError("need rank >= 2 for a lower-dimensional nonzero tail")
    n_coeffs = rng.randint(1, 5) if n_coeffs is None else n_coeffs
    while True:
        tail = random_pointed_cone(rng, rank, dim=rng.randint(1, rank - 1))
        basis = la.canonical_basis(list(tail.rays), rank)
        interior = tail.relint_point()

        def in_span():
            v = (Fraction(0),) * rank
            for b in basis:
                v = la.add(v, la.scale(Fraction(rng.randint(-4, 4), rng.choice((1, 2, 3))), b))
            return v

        offsets = [random_rational_vector(rng, rank, -2, 2) for _ in range(n_coeffs - 1)]
        offsets.append(la.neg(sum_vectors(offsets, rank)))
        coeffs = [[la.add(o, in_span()) for _ in range(rng.randint(1, 3))] for o in offsets]
        labels = [f"H{i}" for i in range(n_coeffs)]
        arrangement = HyperplaneArrangement.abstract(labels, dim_d=max(1, rng.randint(1, 3)))
        for shift in range(0, 40):
            moved = [[la.add(v, la.scale(shift, interior)) for v in coeffs[0]]] + coeffs[1:]
            D = PolyhedralDivisor(arrangement, tail,
                                  {l: Polyhedron(vs, tail.rays, rank=rank) for l, vs in zip(labels, moved)})
            if is_proper(D):
                return D


def sum_vectors(vs, rank):
    total = (Fraction(0),) * rank
    for v in vs:
        total = la.add(total, v)
    return total


def random_divisor(rng, rank, n_coeffs=None, allow_empty=False):
    """A valid divisor with random coefficients (not necessarily proper)."""
    n_coeffs = rng.randint(1, 4) if n_coeffs is None else n_coeffs
    tail = random_pointed_cone(rng, rank)
    labels = [f"H{i}" for i in range(n_coeffs)]
    coeffs = {}
    for l in labels:
        if allow_empty and rng.random() < 0.2:
            coeffs[l] = Polyhedron.empty(rank)
        else:
            coeffs[l] = Polyhedron(random_polytope_points(rng, rank), tail.rays, rank=rank)
    return PolyhedralDivisor(HyperplaneArrangement.abstract(labels), tail, coeffs)


def random_dual_lattice_point(rng, cone, max_coeff=3):
    """A lattice point of the dual cone: a random nonnegative combination of its generators."""
    dual = cone.dual()
    u = (0,) * cone.rank
    for g in dual.generators:
        u = la.add(u, la.scale(rng.randint(0, max_coeff), g))
    return u
