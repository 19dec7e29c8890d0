"""JSON instance files: parsing with located errors and canonical serialization.

An instance file is an object ``{"schema_version": "1", "kind": ..., "payload": ...}``.
Rationals are JSON integers or strings ``"p/q"``; floats are rejected so no
value ever passes through binary floating point.
"""
import json
from dataclasses import dataclass
from fractions import Fraction

from ..discrepancy import DiscrepancyModel, ToricGermData, toric_q_gorenstein
from ..errors import InstanceError, TvarkitError
from ..lattice import Cone, Polyhedron
from ..pdivisor import Hyperplane, HyperplaneArrangement, PolyhedralDivisor
from ..weight_action import WeightMatrix

SCHEMA_VERSION = "1"
KINDS = ("cone", "polyhedron", "pdivisor", "discrepancy_model", "toric_germ", "weight_matrix")


@dataclass(frozen=True)
class WeightInstance:
    """A weight matrix plus the dimension of the variety it acts on, if known."""

    matrix: WeightMatrix
    dim_x: int = None


@dataclass(frozen=True)
class Instance:
    kind: str
    obj: object


# -- encoding ----------------------------------------------------------------

def encode_rational(x):
    x = Fraction(x)
    return x.numerator if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def encode_vector(v):
    return [encode_rational(x) for x in v]


def _vectors(vs):
    return [encode_vector(v) for v in vs]


def _cone_payload(c):
    return {"rank": c.rank, "rays": _vectors(c.rays), "lineality": _vectors(c.lineality)}


def _polyhedron_payload(p):
    if p.is_empty:
        return {"rank": p.rank, "empty": True}
    return {"rank": p.rank, "vertices": _vectors(p.vertices),
            "rays": _vectors(p.rays), "lineality": _vectors(p.lineality)}


def _coefficient_payload(p, tail):
    if p.is_empty:
        return "empty"
    out = {"vertices": _vectors(p.vertices)}
    # the tail is implied unless the coefficient disagrees with it
    if tuple(p.rays) != tuple(tail.rays) or tuple(p.lineality) != tuple(tail.lineality):
        out["rays"] = _vectors(p.rays)
        out["lineality"] = _vectors(p.lineality)
    return out


def _pdivisor_payload(D):
    hyps = []
    for h in D.arrangement.hyperplanes:
        entry = {"label": h.label}
        if h.coeffs is not None:
            entry["coeffs"] = encode_vector(h.coeffs)
        hyps.append(entry)
    return {
        "rank": D.rank,
        "arrangement": {"dim_d": D.arrangement.dim_d, "hyperplanes": hyps},
        "tail": {"rays": _vectors(D.tail.rays), "lineality": _vectors(D.tail.lineality)},
        "coefficients": {l: _coefficient_payload(D.coefficients[l], D.tail) for l in D.labels},
    }


def to_payload(kind, obj):
    if kind == "cone":
        return _cone_payload(obj)
    if kind == "polyhedron":
        return _polyhedron_payload(obj)
    if kind == "pdivisor":
        return _pdivisor_payload(obj)
    if kind == "discrepancy_model":
        return {"dim_n": obj.dim_n,
                "divisors": [{"id": i, "coeff": encode_rational(c)} for i, c in obj.divisors],
                "containments": sorted(obj.containments)}
    if kind == "toric_germ":
        return {"rank": obj.rank, "rays": _vectors(obj.sigma.rays), "u_K": encode_vector(obj.u_K)}
    if kind == "weight_matrix":
        out = {"entries": [list(r) for r in obj.matrix.entries]}
        if obj.dim_x is not None:
            out["dim_x"] = obj.dim_x
        return out
    raise ValueError(f"unknown kind {kind!r}")


def to_document(inst):
    return {"schema_version": SCHEMA_VERSION, "kind": inst.kind, "payload": to_payload(inst.kind, inst.obj)}


def canonical_json(doc):
    """The one canonical text form: sorted keys, two-space indent, trailing newline."""
    return json.dumps(doc, sort_keys=True, indent=2) + "\n"


def serialize(inst):
    return canonical_json(to_document(inst))


# -- decoding ----------------------------------------------------------------

class _Reader:
    """Walks decoded JSON keeping the field path for error messages."""

    def __init__(self, value, path="$"):
        self.value = value
        self.path = path

    def fail(self, message):
        raise InstanceError(message, self.path)

    def child(self, key):
        if isinstance(key, int):
            return _Reader(self.value[key], f"{self.path}[{key}]")
        return _Reader(self.value[key], f"{self.path}.{key}")

    def obj(self, required=(), optional=()):
        if not isinstance(self.value, dict):
            self.fail("expected an object")
        missing = [k for k in required if k not in self.value]
        if missing:
            self.fail(f"missing field {missing[0]!r}")
        extra = sorted(set(self.value) - set(required) - set(optional))
        if extra:
            self.fail(f"unexpected field {extra[0]!r}")
        return self

    def get(self, key, default=None):
        return self.child(key) if key in self.value else default

    def list(self):
        if not isinstance(self.value, list):
            self.fail("expected a list")
        return [self.child(i) for i in range(len(self.value))]

    def integer(self, minimum=None):
        v = self.value
        if isinstance(v, bool) or not isinstance(v, int):
            self.fail("expected an integer")
        if minimum is not None and v < minimum:
            self.fail(f"expected an integer >= {minimum}")
        return v

    def string(self):
        if not isinstance(self.value, str):
            self.fail("expected a string")
        return self.value

    def rational(self):
        v = self.value
        if isinstance(v, bool):
            self.fail("booleans are not rationals")
        if isinstance(v, int):
            return Fraction(v)
        if isinstance(v, str):
            try:
                return Fraction(v.strip())
            except (ValueError, ZeroDivisionError):
                pass
            self.fail(f"cannot read {v!r} as a rational p/q")
        if isinstance(v, float):
            self.fail("floats are not allowed; write rationals as \"p/q\" strings")
        self.fail("expected an integer or a \"p/q\" string")

    def vector(self, rank=None):
        entries = [r.rational() for r in self.list()]
        if rank is not None and len(entries) != rank:
            self.fail(f"expected {rank} entries, got {len(entries)}")
        return tuple(entries)

    def vectors(self, rank):
        return [r.vector(rank) for r in self.list()]


def _build(reader, make):
    """Run a constructor, relocating domain errors to the current field."""
    try:
        return make()
    except InstanceError:
        raise
    except (TvarkitError, ValueError, ZeroDivisionError) as exc:
        reader.fail(str(exc))


def _parse_cone(r):
    r.obj(("rank", "rays"), ("lineality",))
    rank = r.child("rank").integer(0)
    rays = r.child("rays").vectors(rank)
    lin = r.get("lineality")
    lin = lin.vectors(rank) if lin else []
    return _build(r, lambda: Cone(rays, rank=rank, lineality=lin))


def _parse_polyhedron(r):
    r.obj(("rank",), ("vertices", "rays", "lineality", "empty"))
    rank = r.child("rank").integer(0)
    empty = r.get("empty")
    if empty is not None:
        if empty.value is not True:
            empty.fail("'empty' may only be true")
        if any(k in r.value for k in ("vertices", "rays", "lineality")):
            r.fail("an empty polyhedron has no vertices or rays")
        return Polyhedron.empty(rank)
    if "vertices" not in r.value:
        r.fail("missing field 'vertices'")
    verts = r.child("vertices").vectors(rank)
    if not verts:
        r.child("vertices").fail("need at least one vertex (or \"empty\": true)")
    rays = r.get("rays")
    lin = r.get("lineality")
    return _build(r, lambda: Polyhedron(verts, rays.vectors(rank) if rays else [], rank=rank,
                                        lineality=lin.vectors(rank) if lin else []))


def _parse_pdivisor(r):
    r.obj(("rank", "arrangement", "tail", "coefficients"))
    rank = r.child("rank").integer(0)
    ar = r.child("arrangement").obj(("dim_d", "hyperplanes"))
    dim_d = ar.child("dim_d").integer(1)
    hyps = []
    for h in ar.child("hyperplanes").list():
        h.obj(("label",), ("coeffs",))
        label = h.child("label").string()
        coeffs = h.get("coeffs")
        hyps.append(Hyperplane(label, coeffs.vector(dim_d + 1) if coeffs else None))
    labels = [h.label for h in hyps]
    if len(set(labels)) != len(labels):
        ar.child("hyperplanes").fail("hyperplane labels must be unique")
    arrangement = HyperplaneArrangement(dim_d, tuple(hyps))

    t = r.child("tail").obj(("rays",), ("lineality",))
    t_lin = t.get("lineality")
    tail = _build(t, lambda: Cone(t.child("rays").vectors(rank), rank=rank,
                                  lineality=t_lin.vectors(rank) if t_lin else []))

    cs = r.child("coefficients")
    if not isinstance(cs.value, dict):
        cs.fail("expected an object mapping labels to coefficients")
    for extra in sorted(set(cs.value) - set(labels)):
        cs.fail(f"coefficient for unknown label {extra!r}")
    coeffs = {}
    for label in labels:
        if label not in cs.value:
            cs.fail(f"missing coefficient for label {label!r}")
        c = cs.child(label)
        if c.value == "empty":
            coeffs[label] = Polyhedron.empty(rank)
            continue
        c.obj(("vertices",), ("rays", "lineality"))
        verts = c.child("vertices").vectors(rank)
        if not verts:
            c.child("vertices").fail("need at least one vertex (or the string \"empty\")")
        rays = c.child("rays").vectors(rank) if "rays" in c.value else list(tail.rays)
        lin = c.child("lineality").vectors(rank) if "lineality" in c.value else list(tail.lineality)
        coeffs[label] = _build(c, lambda: Polyhedron(verts, rays, rank=rank, lineality=lin))
    return _build(r, lambda: PolyhedralDivisor(arrangement, tail, coeffs))


def _parse_discrepancy_model(r):
    r.obj(("dim_n", "divisors"), ("containments",))
    dim_n = r.child("dim_n").integer(2)
    divisors = []
    for d in r.child("divisors").list():
        d.obj(("id", "coeff"))
        divisors.append((d.child("id").string(), d.child("coeff").rational()))
    cont = r.get("containments")
    contained = [c.string() for c in cont.list()] if cont else []
    return _build(r, lambda: DiscrepancyModel(dim_n, tuple(divisors), frozenset(contained)))


def _parse_toric_germ(r):
    r.obj(("rank", "rays"), ("u_K",))
    rank = r.child("rank").integer(1)
    rays = r.child("rays").vectors(rank)
    sigma = _build(r, lambda: Cone(rays, rank=rank))
    u = r.get("u_K")
    if u is None:
        return _build(r, lambda: toric_q_gorenstein(sigma))
    u_vec = u.vector(rank)
    return _build(u, lambda: ToricGermData(sigma, u_vec))


def _parse_weight_matrix(r):
    r.obj(("entries",), ("dim_x",))
    rows = [[e.integer() for e in row.list()] for row in r.child("entries").list()]
    dim_x = r.get("dim_x")
    dim_x = dim_x.integer(0) if dim_x else None
    return WeightInstance(_build(r.child("entries"), lambda: WeightMatrix(tuple(map(tuple, rows)))), dim_x)


_PARSERS = {
    "cone": _parse_cone,
    "polyhedron": _parse_polyhedron,
    "pdivisor": _parse_pdivisor,
    "discrepancy_model": _parse_discrepancy_model,
    "toric_germ": _parse_toric_germ,
    "weight_matrix": _parse_weight_matrix,
}


def from_document(doc):
    root = _Reader(doc).obj(("schema_version", "kind", "payload"))
    version = root.child("schema_version").string()
    if version != SCHEMA_VERSION:
        root.child("schema_version").fail(f"unsupported schema_version {version!r}")
    kind = root.child("kind").string()
    if kind not in _PARSERS:
        root.child("kind").fail(f"unknown kind {kind!r}; expected one of {', '.join(KINDS)}")
    return Instance(kind, _PARSERS[kind](root.child("payload")))


def parse_text(text):
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InstanceError(exc.msg, f"line {exc.lineno}, column {exc.colno}") from None
    return from_document(doc)


def load(path):
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise InstanceError(exc.strerror or str(exc), str(path)) from None
    try:
        return parse_text(text)
    except InstanceError as exc:
        raise InstanceError(str(exc), str(path)) from None
