"""Per-instance property checks and the ``verify all`` batch runner."""
import random
import zlib
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from pathlib import Path

from ..cone_singularity import Kind, classify, embed_into_cone_singularity, open_embedding_check
from ..discrepancy import blowup_log_discrepancy, product_formula_check, toric_mld_search
from ..errors import InstanceError, TvarkitError
from ..lattice import lattice_points, minkowski_sum, w_face
from ..lattice import linalg as la
from ..pdivisor import degree, evaluate, is_proper, locus_is_full, superadditivity_check, validate
from ..properties import run_properties
from ..random_instances import random_dual_lattice_point, seed_from_env
from ..weight_action import (WeightMatrix, complexity, dependency_relations, is_effective_ambient,
                             positive_grading)
from . import instances
from .report import Report

SAMPLES = 5


def _rng_for(name):
    return random.Random(seed_from_env() * 1_000_003 + zlib.crc32(name.encode("utf-8")))


def _check_round_trip(report, inst):
    text = instances.serialize(inst)
    again = instances.parse_text(text)
    report.check("serialize_round_trip", again.obj == inst.obj)
    report.check("canonical_text_stable", instances.serialize(again) == text)


def _check_cone(report, c, rng):
    report.check("duality_involution", c.dual().dual() == c)
    report.check("generators_in_cone", all(c.contains(g) for g in c.generators))
    report.check("faces_are_faces", all(c.is_face(f) for f in c.faces()))


def _check_polyhedron(report, p, rng):
    if p.is_empty:
        report.check("empty_absorbs_sum", minkowski_sum(p, p).is_empty)
        return
    report.check("vertices_contained", all(p.contains(v) for v in p.vertices))
    report.check("minkowski_sum_tail", minkowski_sum(p, p).tail == p.tail + p.tail)
    ws = [random_dual_lattice_point(rng, p.tail) for _ in range(SAMPLES)]
    bad = next((w for w in ws if w_face(p, w).tail != p.tail.intersect_hyperplane(w)), None)
    report.check("w_face_tail", bad is None, bad)


def _check_pdivisor(report, D, rng):
    problem = validate(D)
    report.check("valid", problem is None, problem)
    if problem is not None:
        return
    result = {"locus_is_full": locus_is_full(D)}
    report.result = result
    if not locus_is_full(D):
        report.check("classified_toroidal", classify(D).kind is Kind.TOROIDAL_LOCUS_AFFINE)
        return
    report.check("degree_tail", degree(D).tail == D.tail)
    pairs = [(random_dual_lattice_point(rng, D.tail), random_dual_lattice_point(rng, D.tail))
             for _ in range(SAMPLES)]
    bad = next(((u, v) for u, v in pairs if not superadditivity_check(D, u, v)), None)
    report.check("evaluation_superadditive", bad is None, bad)
    bad = next((u for u, _ in pairs if evaluate(D, la.scale(3, u)) != evaluate(D, u).scaled(3)), None)
    report.check("evaluation_homogeneous", bad is None, bad)
    proper = is_proper(D)
    result["proper"] = proper
    if not proper:
        return
    kind = classify(D).kind
    result["kind"] = kind
    if kind is Kind.EMBEDDABLE_NON_CONE:
        emb = embed_into_cone_singularity(D)
        report.check("embedding_proper", is_proper(emb.extended))
        report.check("embedding_full_dimensional", emb.extended.tail.is_full_dimensional)
        report.check("embedding_recovers", emb.recover() == D)
        u = tuple(sum(col) for col in zip(*emb.face_chain))
        report.check("embedding_open", open_embedding_check(emb.extended, D, u), u)


def _check_discrepancy_model(report, model, rng):
    report.check("discrepancy_is_minus_coefficient",
                 all(d == -model.coefficient(i) for i, d in model.discrepancies()))
    report.check("lc_iff_boundary", model.is_log_canonical == all(c <= 1 for _, c in model.divisors))
    contained = sorted(model.containments)
    expected = Fraction(model.dim_n) - sum((model.coefficient(i) for i in contained), Fraction(0))
    value = model.blowup(model.dim_n)
    report.check("blowup_formula", value == expected == blowup_log_discrepancy(
        model.dim_n, [model.coefficient(i) for i in contained]), value)
    report.result = {"blowup_log_discrepancy": value}


def _check_toric_germ(report, germ, rng):
    res = toric_mld_search(germ)
    report.result = {"mld": res.value, "witness": res.witness}
    report.check("mld_positive", res.value > 0, res.value)
    report.check("mld_at_most_rank", res.value <= germ.rank, res.value)
    wide = [v for v in lattice_points(germ.sigma, germ.u_K, 2 * germ.rank)
            if all(la.dot(h, v) > 0 for h in germ.sigma.facets)]
    best = min((la.dot(germ.u_K, v) for v in wide), default=None)
    report.check("mld_stable_at_twice_rank", best == res.value, best)
    report.check("product_formula", all(product_formula_check(germ, e) for e in (1, 2)))


def _check_weight_matrix(report, wi, rng):
    W = wi.matrix
    eff = is_effective_ambient(W)
    permuted = WeightMatrix(tuple(tuple(reversed(r)) for r in W.entries))
    report.check("effective_permutation_invariant", is_effective_ambient(permuted) == eff)
    u = positive_grading(W)
    if u is not None:
        report.check("grading_witness_positive", all(la.dot(u, c) > 0 for c in W.columns), u)
    result = {"effective": eff, "positive_grading": u}
    if wi.dim_x is not None:
        result["complexity"] = complexity(W, wi.dim_x)
    if W.m % 2 == 0 and W.m >= 4 and W == WeightMatrix.quadric_cone(W.m // 2 - 1):
        rels = dependency_relations(W)
        report.check("quadric_relations_hold", all(r.holds for r in rels))
        report.check("quadric_effective", eff)
        report.check("quadric_positively_graded", u is not None)
    report.result = result


CHECKS = {
    "cone": _check_cone,
    "polyhedron": _check_polyhedron,
    "pdivisor": _check_pdivisor,
    "discrepancy_model": _check_discrepancy_model,
    "toric_germ": _check_toric_germ,
    "weight_matrix": _check_weight_matrix,
}


def verify_instance(inst, name):
    report = Report(f"verify {inst.kind}", instances.to_document(inst))
    _check_round_trip(report, inst)
    CHECKS[inst.kind](report, inst.obj, _rng_for(name))
    return report


def verify_file(path):
    """Returns ``(name, status, report_json_or_error)``; status is ``ok``, ``fail``,
    ``input`` or ``internal``."""
    path = Path(path)
    try:
        inst = instances.load(path)
        report = verify_instance(inst, path.name)
    except InstanceError as exc:
        return path.name, "input", str(exc)
    except AssertionError as exc:
        return path.name, "internal", f"invariant breach: {exc}"
    except TvarkitError as exc:
        return path.name, "input", f"{path.name}: {exc}"
    return path.name, "ok" if report.all_passed else "fail", report.to_json()


def verify_directory(directory, jobs=1, random_count=20):
    """Verify every ``*.json`` file in ``directory`` (sorted by name) plus a
    seeded batch of random property checks."""
    files = sorted(Path(directory).glob("*.json"), key=lambda p: p.name)
    if jobs > 1 and len(files) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            outcomes = list(pool.map(verify_file, files))
    else:
        outcomes = [verify_file(f) for f in files]
    outcomes.sort(key=lambda o: o[0])
    random_results = run_properties(_rng_for("random-properties"), random_count)
    return outcomes, random_results
