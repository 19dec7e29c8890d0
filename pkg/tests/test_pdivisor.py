import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from oracles import vertex_minimum
from tvarkit.errors import InvalidDivisor, ProperUndefinedOnPartialLocus, UnboundedFunctional
from tvarkit.lattice import Cone, Polyhedron
from tvarkit.lattice import linalg as la
from tvarkit.pdivisor import (Hyperplane, HyperplaneArrangement, PolyhedralDivisor, degree, evaluate,
                              is_proper, locus_is_full, require_valid, superadditivity_check, support,
                              validate)
from tvarkit.random_instances import (random_divisor, random_dual_lattice_point,
                                     random_embeddable_divisor, random_unimodular)

F = Fraction
RAY = Cone([(1,)])


def rank_one(*coeffs):
    labels = [f"H{i}" for i in range(len(coeffs))]
    polys = {l: (Polyhedron.empty(1) if c is None else Polyhedron([(F(c),)], [(1,)]))
             for l, c in zip(labels, coeffs)}
    return PolyhedralDivisor(HyperplaneArrangement.abstract(labels), RAY, polys)


def test_validate_reports_tail_mismatch():
    D = PolyhedralDivisor(HyperplaneArrangement.abstract(["A", "B"]), RAY,
                          {"A": Polyhedron([(1,)], [(1,)]), "B": Polyhedron([(0,)])})
    assert validate(D).startswith("tail mismatch at label")
    with pytest.raises(InvalidDivisor):
        require_valid(D)


def _lines(*coords):
    return HyperplaneArrangement(2, tuple(Hyperplane(f"L{i}", c) for i, c in enumerate(coords)))


def test_general_position():
    concurrent = _lines((1, 0, 0), (0, 1, 0), (1, 1, 0))
    assert concurrent.general_position_violation().startswith("not general position")
    generic = _lines((1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, 1))
    assert generic.general_position_violation() is None
    sigma = Cone.orthant(2)
    D = PolyhedralDivisor(concurrent, sigma, {l: Polyhedron.from_cone(sigma) for l in concurrent.labels})
    assert validate(D).startswith("not general position")


def test_support_and_locus():
    assert support(rank_one(0, 0)) == set()
    assert support(rank_one(1, F(-1, 2), 0)) == {"H0", "H1"}
    assert locus_is_full(rank_one(1, 2))
    assert not locus_is_full(rank_one(1, None))


def test_evaluate_examples():
    D = rank_one(1, F(-1, 2))
    assert evaluate(D, (0,)).entries == {"H0": 0, "H1": 0}
    assert evaluate(D, (2,)).entries == {"H0": 2, "H1": -1}
    assert evaluate(rank_one(0), (5,)).entries == {"H0": 0}
    assert evaluate(rank_one(1, None), (1,)).entries == {"H0": 1}
    with pytest.raises(UnboundedFunctional):
        evaluate(D, (-1,))


def test_degree_examples():
    assert degree(rank_one(F(3, 2))) == Polyhedron([(F(3, 2),)], [(1,)])
    assert degree(rank_one(1, F(-1, 2))) == Polyhedron([(F(1, 2),)], [(1,)])
    assert degree(rank_one(1, None)).is_empty


def test_is_proper_examples():
    assert is_proper(rank_one(1, F(-1, 2)))
    assert not is_proper(rank_one(1, -1))
    assert not is_proper(rank_one(0, 0))
    assert not is_proper(rank_one(-1, F(1, 2)))  # degree escapes the tail
    with pytest.raises(ProperUndefinedOnPartialLocus):
        is_proper(rank_one(1, None))


def test_superadditivity_examples():
    D = rank_one(1, F(-1, 2))
    assert evaluate(D, (1,)) + evaluate(D, (0,)) == evaluate(D, (1,))
    assert superadditivity_check(D, (1,), (1,))
    assert superadditivity_check(rank_one(0, 0), (3,), (2,))


seeds = st.integers(0, 10**6)


@given(seeds)
def test_evaluate_matches_vertex_oracle(seed):
    rng = random.Random(seed)
    D = random_divisor(rng, rng.randint(1, 3))
    u = random_dual_lattice_point(rng, D.tail)
    got = evaluate(D, u)
    for label, coeff in D.coefficients.items():
        assert got[label] == vertex_minimum(coeff.vertices, u)


@given(seeds)
def test_positive_homogeneity_and_superadditivity(seed):
    rng = random.Random(seed)
    D = random_divisor(rng, rng.randint(1, 3))
    u = random_dual_lattice_point(rng, D.tail)
    v = random_dual_lattice_point(rng, D.tail)
    lam = rng.randint(1, 6)
    assert evaluate(D, la.scale(lam, u)) == evaluate(D, u).scaled(lam)
    assert superadditivity_check(D, u, v)


@given(seeds)
def test_degree_ignores_order_and_trivial_coefficients(seed):
    rng = random.Random(seed)
    D = random_divisor(rng, rng.randint(1, 3), n_coeffs=3)
    labels = list(D.labels)
    rng.shuffle(labels)
    shuffled = PolyhedralDivisor(HyperplaneArrangement.abstract(labels), D.tail,
                                 {l: D.coefficients[l] for l in labels})
    assert degree(shuffled) == degree(D)
    padded = PolyhedralDivisor(HyperplaneArrangement.abstract(list(D.labels) + ["T"]), D.tail,
                               {**D.coefficients, "T": Polyhedron.from_cone(D.tail)})
    assert degree(padded) == degree(D)


@given(seeds)
def test_properness_is_unimodular_invariant(seed):
    rng = random.Random(seed)
    rank = rng.randint(2, 3)
    # embeddable instances are proper, random ones mostly are not
    D = random_embeddable_divisor(rng, rank) if rng.random() < 0.5 else random_divisor(rng, rank)
    a = random_unimodular(rng, rank, steps=3)
    moved = D.map_coefficients(lambda c: c.linear_image(a), tail=D.tail.linear_image(a))
    assert is_proper(moved) == is_proper(D)
