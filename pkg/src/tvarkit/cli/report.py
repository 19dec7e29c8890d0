"""Command reports: a deterministic JSON document plus a plain-text rendering."""
import hashlib
import json
from dataclasses import dataclass, field
from fractions import Fraction


def to_jsonable(x):
    """Exact JSON form of a result value.

    Fractions always become ``"p/q"`` strings (``2`` is ``"2/1"``) so rational
    results are never confused with integer counts.
    """
    if isinstance(x, Fraction):
        return f"{x.numerator}/{x.denominator}"
    if isinstance(x, bool) or x is None or isinstance(x, (int, str)):
        return x
    if isinstance(x, dict):
        return {str(k): to_jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [to_jsonable(v) for v in x]
    if isinstance(x, (set, frozenset)):
        return sorted(to_jsonable(v) for v in x)
    if hasattr(x, "value"):  # enums
        return x.value
    raise TypeError(f"cannot put {type(x).__name__} into a report")


def digest(inputs):
    text = json.dumps(to_jsonable(inputs), sort_keys=True, separators=(",", ":"))
    return "sha256:" + hashlib.sha256(text.encode("utf-8")).hexdigest()


@dataclass
class Verdict:
    check: str
    passed: bool
    witness: object = None

    def to_json(self):
        return {"check": self.check, "pass": self.passed, "witness": to_jsonable(self.witness)}


@dataclass
class Report:
    command: str
    inputs: object
    result: object = None
    verdicts: list = field(default_factory=list)
    summary: object = None  # shorter result for the text rendering, if set

    def check(self, name, passed, witness=None):
        self.verdicts.append(Verdict(name, bool(passed), witness))
        return bool(passed)

    @property
    def all_passed(self):
        return all(v.passed for v in self.verdicts)

    def to_json(self):
        return {
            "command": self.command,
            "inputs_digest": digest(self.inputs),
            "result": to_jsonable(self.result),
            "verdicts": [v.to_json() for v in self.verdicts],
        }

    def render_json(self):
        return json.dumps(self.to_json(), sort_keys=True, indent=2)

    def render_text(self):
        lines = [f"command: {self.command}"]
        result = to_jsonable(self.result if self.summary is None else self.summary)
        if isinstance(result, dict):
            for k in sorted(result):
                lines.append(f"  {k}: {_short(result[k])}")
        elif result is not None:
            lines.append(f"  result: {_short(result)}")
        for v in self.verdicts:
            mark = "PASS" if v.passed else "FAIL"
            wit = "" if v.witness is None else f"  witness={_short(to_jsonable(v.witness))}"
            lines.append(f"[{mark}] {v.check}{wit}")
        return "\n".join(lines)


def _short(x):
    return x if isinstance(x, str) else json.dumps(x, sort_keys=True)
