import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from oracles import canonical_functional, mld_fixed_point_scan, non_lc_sequence_replay
from tvarkit.discrepancy import (DiscrepancyModel, ToricGermData, blowup_log_discrepancy,
                                 discrepancy_divisor, non_lc_blowup_sequence, product_formula_check,
                                 product_germ, toric_mld, toric_mld_search, toric_q_gorenstein)
from tvarkit.errors import InvalidCenter, InvalidGerm, NotNonLc, NotQGorenstein
from tvarkit.lattice import Cone
from tvarkit.random_instances import random_q_gorenstein_germ

F = Fraction
A2 = Cone([(1, 0), (1, 3)])
ONE_THIRD = Cone([(1, 0), (-1, 3)])


def test_blowup_formula_examples():
    assert blowup_log_discrepancy(5, []) == 5
    c = F(2, 7)
    assert blowup_log_discrepancy(2, [1 + c]) == 1 - c
    assert blowup_log_discrepancy(2, [0]) == 2
    with pytest.raises(ValueError):
        blowup_log_discrepancy(1, [])


@given(st.integers(2, 8), st.lists(st.fractions(-2, 2, max_denominator=5), max_size=4),
       st.lists(st.fractions(-2, 2, max_denominator=5), max_size=4))
def test_blowup_formula_is_linear(k, c1, c2):
    assert blowup_log_discrepancy(k, c1 + c2) == blowup_log_discrepancy(k, c1) - sum(c2)


def test_discrepancy_divisor_examples():
    assert discrepancy_divisor([("E", 0), ("F", 0)]).is_boundary
    edge = discrepancy_divisor([("E", -1)])
    assert edge.coefficient("E") == 1 and edge.is_boundary
    bad = discrepancy_divisor([("E", F(-3, 2))])
    assert bad.coefficient("E") == F(3, 2) and not bad.is_boundary


def test_model_validation():
    with pytest.raises(ValueError):
        DiscrepancyModel(3, (("E", 0), ("E", 1)))
    with pytest.raises(ValueError):
        DiscrepancyModel(1, ())
    with pytest.raises(ValueError):
        DiscrepancyModel(3, (("E", 0),), frozenset({"X"}))
    m = DiscrepancyModel(3, (("E", F(1, 2)), ("G", F(1, 3))), frozenset({"E", "G"}))
    assert m.blowup(3) == F(13, 6)


@pytest.mark.parametrize("n,d_e,others,ell,final,bound", [
    (3, F(-3, 2), [F(1, 4)], 1, F(5, 4), F(11, 4)),
    (3, F(-2), [], 0, F(1), F(1)),
    (4, F(-11, 10), [F(1, 2), F(1, 2)], 10, F(29, 10), F(4)),
])
def test_non_lc_examples(n, d_e, others, ell, final, bound):
    trace = non_lc_blowup_sequence(n, d_e, others)
    assert trace.length == ell
    assert trace.final_log_discrepancy == final
    assert trace.final_bound == bound
    assert trace.final_log_discrepancy <= trace.final_bound <= n
    assert (ell, final, bound) == non_lc_sequence_replay(n, d_e, others)


def test_non_lc_first_steps():
    trace = non_lc_blowup_sequence(3, F(-3, 2), [F(1, 4)])
    assert trace.steps[0].discrepancy == F(-1, 2)
    deep = non_lc_blowup_sequence(4, F(-11, 10), [F(1, 2), F(1, 2)])
    assert [s.discrepancy for s in deep.steps[:-1]] == [-F(k, 10) for k in range(1, 11)]


def test_non_lc_errors():
    with pytest.raises(NotNonLc):
        non_lc_blowup_sequence(3, -1, [])
    with pytest.raises(ValueError):
        non_lc_blowup_sequence(2, -2, [])


@given(st.integers(3, 6), st.fractions(0, 3, max_denominator=12).filter(lambda c: c > 0),
       st.lists(st.fractions(-1, 2, max_denominator=12), max_size=5))
def test_non_lc_trace_revalidates(n, c, others):
    trace = non_lc_blowup_sequence(n, -1 - c, others)
    for step in trace.steps:
        assert blowup_log_discrepancy(step.center_codim, step.coeffs_over_center) == step.log_discrepancy
    assert trace.final_log_discrepancy <= n
    replay = non_lc_sequence_replay(n, -1 - c, others)
    assert (trace.length, trace.final_log_discrepancy, trace.final_bound) == replay


def test_q_gorenstein_examples():
    assert toric_q_gorenstein(Cone.orthant(3)).u_K == (1, 1, 1)
    assert toric_q_gorenstein(Cone([(1, 0), (1, 2)])).u_K == (1, 0)
    with pytest.raises(NotQGorenstein):
        toric_q_gorenstein(Cone([(1, 0, 0), (0, 1, 0), (0, 0, 1), (2, 1, -1)]))
    with pytest.raises(InvalidGerm):
        toric_q_gorenstein(Cone([(1, 0)], rank=2))
    with pytest.raises(InvalidGerm):
        ToricGermData(Cone.orthant(2), (1, 2))


def test_named_germs():
    orth = toric_q_gorenstein(Cone.orthant(2))
    res = toric_mld_search(orth)
    assert (res.value, res.witness) == (2, (1, 1))
    res = toric_mld_search(toric_q_gorenstein(A2))
    assert (res.value, res.witness) == (1, (1, 1))
    germ = toric_q_gorenstein(ONE_THIRD)
    assert germ.u_K == (1, F(2, 3))
    res = toric_mld_search(germ)
    assert (res.value, res.witness) == (F(2, 3), (0, 1))


def test_center_faces():
    germ = toric_q_gorenstein(Cone.orthant(3))
    ray = Cone([(1, 0, 0)], rank=3)
    assert toric_mld(germ, ray) == 1
    assert toric_mld(germ, Cone.zero(3)) == 1
    assert toric_mld(germ, Cone([(1, 0, 0), (0, 1, 0)], rank=3)) == 2
    with pytest.raises(InvalidCenter):
        toric_mld(germ, Cone([(1, 1, 0)], rank=3))


def test_product_examples():
    assert product_formula_check(toric_q_gorenstein(Cone.orthant(2)), 1)
    assert product_formula_check(toric_q_gorenstein(A2), 2)
    assert product_formula_check(toric_q_gorenstein(ONE_THIRD), 1)
    prod = product_germ(toric_q_gorenstein(A2), 2)
    assert prod.rank == 4 and prod.u_K == (1, 0, 0, 0)


seeds = st.integers(0, 10**6)


@settings(max_examples=30)
@given(seeds)
def test_mld_matches_bruteforce(seed):
    rng = random.Random(seed)
    rank = rng.randint(2, 3)
    germ = random_q_gorenstein_germ(rng, rank)
    value = toric_mld(germ)
    assert 0 < value <= rank
    assert canonical_functional(list(germ.sigma.rays), rank) == germ.u_K
    assert mld_fixed_point_scan(list(germ.sigma.rays), rank, 2 * rank)[0] == value


@settings(max_examples=30)
@given(seeds)
def test_mld_monotone_in_center(seed):
    rng = random.Random(seed)
    germ = random_q_gorenstein_germ(rng, rng.randint(2, 3))
    faces = germ.sigma.faces()
    small, big = sorted(rng.sample(faces, 2), key=lambda f: f.dim)
    if big.is_face(small):
        assert toric_mld(germ, small) <= toric_mld(germ, big)
