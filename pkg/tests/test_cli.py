import io
import json
import random
import shutil
from fractions import Fraction

import jsonschema
import pytest
from hypothesis import given, settings, strategies as st

from tvarkit.cli import instances, run
from tvarkit.cli.main import EXIT_FALSE, EXIT_INPUT, EXIT_OK
from tvarkit.discrepancy import DiscrepancyModel
from tvarkit.errors import InstanceError
from tvarkit.random_instances import (random_cone, random_divisor, random_embeddable_divisor,
                                      random_polyhedron, random_q_gorenstein_germ)
from tvarkit.weight_action import WeightMatrix


def cli(*argv):
    out, err = io.StringIO(), io.StringIO()
    code, _ = run(list(argv), out=out, err=err)
    return code, out.getvalue(), err.getvalue()


@pytest.fixture(scope="module")
def schemas():
    from conftest import ROOT
    load = lambda name: json.loads((ROOT / "schema" / name).read_text())
    return load("instance.schema.json"), load("report.schema.json")


@pytest.fixture
def corpus(root):
    return root / "corpus"


# -- parsing ---------------------------------------------------------------------

def doc(kind, payload):
    return json.dumps({"schema_version": "1", "kind": kind, "payload": payload})


def test_syntax_error_is_located():
    with pytest.raises(InstanceError) as exc:
        instances.parse_text('{\n  "kind": "cone",\n  oops\n}')
    assert exc.value.location == "line 3, column 3"


@pytest.mark.parametrize("payload,where", [
    ({"rank": 2, "rays": [[1, 0], [0, 0.5]]}, "$.payload.rays[1][1]"),
    ({"rank": 2, "rays": [[1, 0, 0]]}, "$.payload.rays[0]"),
    ({"rank": 2}, "$.payload"),
    ({"rank": 2, "rays": [["1/0", 1]]}, "$.payload.rays[0][0]"),
    ({"rank": 2, "rays": [], "extra": 1}, "$.payload"),
])
def test_field_errors_are_located(payload, where):
    with pytest.raises(InstanceError) as exc:
        instances.parse_text(doc("cone", payload))
    assert exc.value.location == where


def test_bad_kind_and_version():
    with pytest.raises(InstanceError, match="unknown kind"):
        instances.parse_text(doc("sphere", {}))
    with pytest.raises(InstanceError, match="schema_version"):
        instances.parse_text(json.dumps({"schema_version": "9", "kind": "cone", "payload": {}}))


def test_domain_errors_are_located():
    with pytest.raises(InstanceError) as exc:
        instances.parse_text(doc("toric_germ", {"rank": 2, "rays": [[1, 0], [-1, 0]]}))
    assert exc.value.location == "$.payload"
    with pytest.raises(InstanceError, match="missing coefficient"):
        instances.parse_text(doc("pdivisor", {
            "rank": 1, "arrangement": {"dim_d": 1, "hyperplanes": [{"label": "A"}]},
            "tail": {"rays": [[1]]}, "coefficients": {}}))


def test_rationals_accept_strings():
    inst = instances.parse_text(doc("polyhedron", {"rank": 1, "vertices": [["3/6"]], "rays": [[1]]}))
    assert inst.obj.vertices == ((Fraction(1, 2),),)


# -- round trips -----------------------------------------------------------------

def _random_instance(rng):
    kind = rng.choice(instances.KINDS)
    rank = rng.randint(1, 3)
    if kind == "cone":
        return instances.Instance(kind, random_cone(rng, rank))
    if kind == "polyhedron":
        return instances.Instance(kind, random_polyhedron(rng, rank))
    if kind == "pdivisor":
        if rank >= 2 and rng.random() < 0.5:
            return instances.Instance(kind, random_embeddable_divisor(rng, rank))
        return instances.Instance(kind, random_divisor(rng, rank, allow_empty=True))
    if kind == "toric_germ":
        return instances.Instance(kind, random_q_gorenstein_germ(rng, max(rank, 2)))
    if kind == "discrepancy_model":
        divs = tuple((f"E{i}", Fraction(rng.randint(-6, 6), rng.randint(1, 4))) for i in range(rng.randint(0, 4)))
        cont = frozenset(i for i, _ in divs if rng.random() < 0.5)
        return instances.Instance(kind, DiscrepancyModel(rng.randint(2, 6), divs, cont))
    entries = tuple(tuple(rng.randint(-2, 2) for _ in range(rng.randint(1, 4))) for _ in range(1))
    dim_x = rng.choice((None, 3))
    return instances.Instance(kind, instances.WeightInstance(WeightMatrix(entries), dim_x))


@settings(max_examples=80)
@given(st.integers(0, 10**6))
def test_parse_serialize_round_trip(schemas, seed):
    inst = _random_instance(random.Random(seed))
    text = instances.serialize(inst)
    jsonschema.validate(json.loads(text), schemas[0])
    again = instances.parse_text(text)
    assert again.kind == inst.kind and again.obj == inst.obj
    assert instances.serialize(again) == text


def test_corpus_is_canonical(corpus, schemas):
    files = sorted(corpus.glob("*.json"))
    assert files
    for f in files:
        text = f.read_text()
        jsonschema.validate(json.loads(text), schemas[0])
        assert instances.serialize(instances.parse_text(text)) == text, f.name


# -- commands --------------------------------------------------------------------

def test_pdiv_check(corpus):
    code, out, _ = cli("pdiv", "check", str(corpus / "proper_rank1.json"))
    assert code == EXIT_OK and "[PASS] proper" in out
    code, out, _ = cli("pdiv", "check", str(corpus / "improper_rank1.json"))
    assert code == EXIT_FALSE and "[FAIL] proper" in out


def test_mld_toric_and_center(corpus):
    code, out, _ = cli("mld", "toric", str(corpus / "orthant2.json"), "--json")
    assert code == EXIT_OK
    assert json.loads(out)["result"]["mld"] == "2/1"
    code, out, _ = cli("mld", "toric", str(corpus / "orthant2.json"), "--center", "1,0", "--json")
    assert json.loads(out)["result"]["mld"] == "1/1"
    code, _, err = cli("mld", "toric", str(corpus / "orthant2.json"), "--center", "1,1")
    assert code == EXIT_INPUT and "InvalidCenter" in err


def test_classify_flat_tail(corpus):
    code, out, _ = cli("pdiv", "classify", str(corpus / "flat_tail.json"), "--json")
    result = json.loads(out)["result"]
    assert code == EXIT_OK
    assert result["kind"] == "EmbeddableNonCone"
    assert result["embedding"]["added_rays"] == [[0, 1]]


def test_eval_and_embed_commands(corpus, tmp_path):
    code, out, _ = cli("pdiv", "eval", str(corpus / "proper_rank1.json"), "-u", "2", "--json")
    assert json.loads(out)["result"]["entries"] == {"H0": "2/1", "H1": "-1/1"}
    code, _, err = cli("pdiv", "eval", str(corpus / "proper_rank1.json"), "-u=-1")
    assert code == EXIT_INPUT and "UnboundedFunctional" in err
    code, out, _ = cli("pdiv", "embed", str(corpus / "flat_tail.json"), "--json")
    assert code == EXIT_OK
    extended = json.loads(out)["result"]["extended"]
    ext_file = tmp_path / "ext.json"
    ext_file.write_text(json.dumps({"schema_version": "1", "kind": "pdivisor", "payload": extended}))
    code, _, _ = cli("pdiv", "embed-check", str(ext_file), str(corpus / "flat_tail.json"), "-u", "0,1")
    assert code == EXIT_OK
    code, _, _ = cli("pdiv", "embed-check", str(ext_file), str(ext_file), "-u", "0,1")
    assert code == EXIT_FALSE


def test_blowup_seq_and_product(corpus):
    code, out, _ = cli("mld", "blowup-seq", "-n", "3", "--dE=-3/2", "--others", "1/4", "--json")
    result = json.loads(out)["result"]
    assert code == EXIT_OK and result["final_log_discrepancy"] == "5/4" and result["length"] == 1
    code, _, err = cli("mld", "blowup-seq", "-n", "3", "--dE=-1/2")
    assert code == EXIT_INPUT and "NotNonLc" in err
    code, _, _ = cli("mld", "product-check", str(corpus / "one_third_1_1.json"), "--extra", "2")
    assert code == EXIT_OK


def test_action_analyze(corpus):
    code, out, _ = cli("action", "analyze", str(corpus / "quadric_n3.json"), "--json")
    result = json.loads(out)["result"]
    assert code == EXIT_OK
    assert result["complexity"] == 2 and result["effective_ambient"] is True
    assert all(r["holds"] for r in result["relations"])


def test_input_errors_exit_two(tmp_path, corpus):
    bad = tmp_path / "bad.json"
    bad.write_text("{")
    assert cli("pdiv", "check", str(bad))[0] == EXIT_INPUT
    assert cli("pdiv", "check", str(tmp_path / "missing.json"))[0] == EXIT_INPUT
    assert cli("mld", "toric", str(corpus / "proper_rank1.json"))[0] == EXIT_INPUT
    assert cli("nonsense")[0] == EXIT_INPUT


def test_json_reports_validate_and_are_deterministic(corpus, schemas):
    runs = [
        ("pdiv", "check", str(corpus / "proper_rank1.json")),
        ("pdiv", "classify", str(corpus / "cone_singularity.json")),
        ("pdiv", "classify", str(corpus / "toroidal.json")),
        ("mld", "toric", str(corpus / "a2.json")),
        ("mld", "product-check", str(corpus / "a2.json"), "--extra", "1"),
        ("action", "analyze", str(corpus / "quadric_n1.json")),
    ]
    for argv in runs:
        _, first, _ = cli(*argv, "--json")
        _, second, _ = cli(*argv, "--json")
        assert first == second
        report = json.loads(first)
        jsonschema.validate(report, schemas[1])
        _, text, _ = cli(*argv)
        for v in report["verdicts"]:
            assert f"[{'PASS' if v['pass'] else 'FAIL'}] {v['check']}" in text


def test_verify_all(corpus, tmp_path, schemas):
    code, out, _ = cli("verify", "all", str(corpus), "--json", "--random", "5")
    assert code == EXIT_OK
    report = json.loads(out)
    jsonschema.validate(report, schemas[1])
    names = [f["file"] for f in report["result"]["files"]]
    assert names == sorted(names)
    code, parallel, _ = cli("verify", "all", str(corpus), "--json", "--random", "5", "--jobs", "2")
    assert json.loads(parallel) == report

    mixed = tmp_path / "mixed"
    shutil.copytree(corpus, mixed)
    (mixed / "zz_broken.json").write_text('{"schema_version": "1"}')
    assert cli("verify", "all", str(mixed), "--random", "1")[0] == EXIT_INPUT


def test_internal_breach_exits_three(corpus, monkeypatch):
    import importlib
    main_mod = importlib.import_module("tvarkit.cli.main")

    def broken(*args, **kwargs):
        raise AssertionError("recurrence did not reach -L")
    monkeypatch.setattr(main_mod, "non_lc_blowup_sequence", broken)
    code, _, err = cli("mld", "blowup-seq", "-n", "3", "--dE=-2")
    assert code == 3 and "invariant breach" in err


def test_seed_env_controls_randomness(monkeypatch):
    from tvarkit.random_instances import make_rng
    monkeypatch.setenv("TVARKIT_SEED", "7")
    a = [make_rng(1).random() for _ in range(2)]
    monkeypatch.setenv("TVARKIT_SEED", "8")
    b = make_rng(1).random()
    assert a[0] == a[1] != b
