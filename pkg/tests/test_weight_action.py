import random

import pytest
from hypothesis import given, strategies as st

from oracles import invariant_factors_sympy
from tvarkit.lattice import Cone
from tvarkit.lattice import linalg as la
from tvarkit.random_instances import random_unimodular
from tvarkit.weight_action import (WeightMatrix, complexity, dependency_relations,
                                   is_effective_ambient, positive_grading)


def test_effective_examples():
    assert is_effective_ambient(WeightMatrix(la.identity(3)))
    assert not is_effective_ambient(WeightMatrix(((2,),)))
    assert is_effective_ambient(WeightMatrix.quadric_cone(3))
    assert not is_effective_ambient(WeightMatrix(((1, 1), (1, 1))))


def test_complexity_examples():
    assert complexity(WeightMatrix.quadric_cone(3), 6) == 2
    assert complexity(WeightMatrix(la.identity(2)), 2) == 0
    assert complexity(WeightMatrix(la.identity(2)), 3) == 1
    with pytest.raises(ValueError):
        complexity(WeightMatrix(la.identity(3)), 2)


def test_positive_grading_examples():
    assert positive_grading(WeightMatrix.quadric_cone(3)) == (0, 0, 0, 1)
    assert positive_grading(WeightMatrix(((1, -1),))) is None
    assert positive_grading(WeightMatrix(((1, 0), (1, 0)))) is None
    u = positive_grading(WeightMatrix(((1, -1, 2), (-1, 2, -1))))
    assert u is not None and all(la.dot(u, c) > 0 for c in [(1, -1), (-1, 2), (2, -1)])


def test_dependency_relations_examples():
    rels = dependency_relations(WeightMatrix.quadric_cone(3))
    assert len(rels) == 3 and all(r.holds for r in rels)
    one = dependency_relations(WeightMatrix.quadric_cone(1))
    assert len(one) == 1 and one[0].holds
    bad = WeightMatrix(tuple(tuple(r) for r in la.identity(4)))
    assert not dependency_relations(bad)[0].holds
    with pytest.raises(ValueError):
        dependency_relations(WeightMatrix(((1, 2, 3),)))


weights = st.integers(1, 3).flatmap(lambda k: st.integers(1, 5).flatmap(
    lambda m: st.lists(st.lists(st.integers(-3, 3), min_size=m, max_size=m), min_size=k, max_size=k)))


@given(weights, st.integers(0, 10**6))
def test_effective_invariances(entries, seed):
    rng = random.Random(seed)
    W = WeightMatrix(tuple(map(tuple, entries)))
    eff = is_effective_ambient(W)
    factors = invariant_factors_sympy(entries)
    assert eff == (len(factors) == W.k and all(f == 1 for f in factors))
    cols = W.columns
    rng.shuffle(cols)
    assert is_effective_ambient(WeightMatrix(tuple(zip(*cols)))) == eff
    a = random_unimodular(rng, W.k, steps=3)
    assert is_effective_ambient(WeightMatrix(la.matmul(a, W.entries))) == eff


@given(weights)
def test_positive_grading_iff_pointed(entries):
    W = WeightMatrix(tuple(map(tuple, entries)))
    u = positive_grading(W)
    expected = not any(la.is_zero(c) for c in W.columns) and Cone(W.columns, rank=W.k).is_pointed
    assert (u is not None) == expected
    if u is not None:
        assert all(la.dot(u, c) > 0 for c in W.columns)
