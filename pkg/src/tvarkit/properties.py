"""Randomized checks of the polyhedral calculus identities.

Each ``check_*`` draws one instance from ``rng`` and returns ``(ok, witness)``
where the witness describes the instance when the identity fails.
"""
from .lattice import minkowski_sum, w_face
from .lattice import linalg as la
from .pdivisor import evaluate, superadditivity_check
from .random_instances import (random_cone, random_divisor, random_dual_lattice_point,
                               random_polyhedron)


def check_duality_involution(rng, rank):
    c = random_cone(rng, rank)
    return c.dual().dual() == c, c


def check_minkowski_tail(rng, rank):
    a = random_polyhedron(rng, rank)
    b = random_polyhedron(rng, rank)
    return minkowski_sum(a, b).tail == a.tail + b.tail, (a, b)


def check_w_face_tail(rng, rank):
    p = random_polyhedron(rng, rank)
    w = random_dual_lattice_point(rng, p.tail)
    return w_face(p, w).tail == p.tail.intersect_hyperplane(w), (p, w)


def check_superadditivity(rng, rank):
    D = random_divisor(rng, rank)
    u = random_dual_lattice_point(rng, D.tail)
    v = random_dual_lattice_point(rng, D.tail)
    return superadditivity_check(D, u, v), (D, u, v)


def check_homogeneity(rng, rank):
    D = random_divisor(rng, rank)
    u = random_dual_lattice_point(rng, D.tail)
    lam = rng.randint(1, 5)
    return evaluate(D, la.scale(lam, u)) == evaluate(D, u).scaled(lam), (D, u, lam)


PROPERTIES = {
    "duality_involution": check_duality_involution,
    "minkowski_sum_tail": check_minkowski_tail,
    "w_face_tail": check_w_face_tail,
    "evaluation_superadditive": check_superadditivity,
    "evaluation_homogeneous": check_homogeneity,
}


def run_properties(rng, count, max_rank=3, names=None):
    """Run every property ``count`` times; return ``{name: (passed, first_failure)}``."""
    out = {}
    for name in names or PROPERTIES:
        check = PROPERTIES[name]
        passed, failure = 0, None
        for _ in range(count):
            ok, witness = check(rng, rng.randint(1, max_rank))
            if ok:
                passed += 1
            elif failure is None:
                failure = witness
        out[name] = (passed, failure)
    return out
