"""General-arrangement polyhedral divisors on (P^d, N).

A polyhedral divisor assigns to every hyperplane of an arrangement in P^d a
coefficient polyhedron in N_Q; all nonempty coefficients share the tail cone
of the divisor.  Empty coefficients are allowed and shrink the locus.
"""
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Mapping, Optional

from .errors import (InvalidDivisor, ProperUndefinedOnPartialLocus, RankMismatch,
                     UnboundedFunctional)
from .lattice import Cone, Polyhedron, minkowski_sum
from .lattice import linalg as la


@dataclass(frozen=True)
class Hyperplane:
    label: str
    coeffs: Optional[tuple] = None  # linear form on C^{d+1}, if known


@dataclass(frozen=True)
class HyperplaneArrangement:
    """Labelled hyperplanes in P^d.

    Coordinates are optional; an arrangement without them is taken to be in
    general position.
    """

    dim_d: int
    hyperplanes: tuple

    def __post_init__(self):
        hs = tuple(h if isinstance(h, Hyperplane) else Hyperplane(*h) for h in self.hyperplanes)
        hs = tuple(Hyperplane(h.label, None if h.coeffs is None else la.rational_vector(h.coeffs))
                   for h in hs)
        object.__setattr__(self, "hyperplanes", hs)

    @classmethod
    def abstract(cls, labels, dim_d=1):
        return cls(dim_d, tuple(Hyperplane(l) for l in labels))

    @property
    def labels(self):
        return tuple(h.label for h in self.hyperplanes)

    def general_position_violation(self):
        """``None`` if in general position, else a description of the failure."""
        coords = [h.coeffs for h in self.hyperplanes]
        if any(c is None for c in coords):
            return None
        n = self.dim_d + 1
        for h, c in zip(self.hyperplanes, coords):
            if len(c) != n:
                return f"hyperplane {h.label} has {len(c)} coordinates, expected {n}"
        k = min(len(coords), n)
        for sub in combinations(range(len(coords)), k):
            if la.rank([coords[i] for i in sub], n) < k:
                labels = ", ".join(self.hyperplanes[i].label for i in sub)
                return f"not general position: {labels} meet in too high dimension"
        return None


@dataclass(frozen=True)
class EvaluatedDivisor:
    """A Q-divisor on the locus: label -> coefficient."""

    entries: Mapping[str, Fraction] = field(default_factory=dict)

    def __getitem__(self, label):
        return self.entries[label]

    def __iter__(self):
        return iter(self.entries)

    def __len__(self):
        return len(self.entries)

    def __add__(self, other):
        keys = set(self.entries) | set(other.entries)
        return EvaluatedDivisor({k: self.entries.get(k, Fraction(0)) + other.entries.get(k, Fraction(0))
                                 for k in sorted(keys)})

    def scaled(self, c):
        return EvaluatedDivisor({k: c * v for k, v in self.entries.items()})

    def dominates(self, other):
        """Entrywise ``self >= other``."""
        return all(self.entries.get(k, 0) >= v for k, v in other.entries.items())

    @property
    def degree(self):
        return sum(self.entries.values(), Fraction(0))


@dataclass(frozen=True)
class PolyhedralDivisor:
    """``D = sum_Z Delta_Z ⊗ Z`` over a hyperplane arrangement in P^d.

    ``coefficients`` maps each hyperplane label to a :class:`Polyhedron`
    (possibly :meth:`Polyhedron.empty`).  Construction does not validate; use
    :func:`validate`.
    """

    arrangement: HyperplaneArrangement
    tail: Cone
    coefficients: Mapping[str, Polyhedron]

    def __post_init__(self):
        object.__setattr__(self, "coefficients", dict(self.coefficients))

    @property
    def rank(self):
        return self.tail.rank

    @property
    def labels(self):
        return self.arrangement.labels

    def coefficient(self, label):
        return self.coefficients[label]

    def map_coefficients(self, fn, tail=None):
        """A new divisor on the same arrangement with ``fn`` applied to each coefficient."""
        return PolyhedralDivisor(self.arrangement, self.tail if tail is None else tail,
                                 {k: fn(v) for k, v in self.coefficients.items()})

    def __eq__(self, other):
        if not isinstance(other, PolyhedralDivisor):
            return NotImplemented
        return (self.arrangement == other.arrangement and self.tail == other.tail
                and self.coefficients == other.coefficients)

    def __hash__(self):
        return hash((self.arrangement, self.tail, tuple(sorted(self.coefficients.items()))))


def validate(D):
    """Return ``None`` if ``D`` is a valid divisor, else the first violation found."""
    labels = D.arrangement.labels
    if len(set(labels)) != len(labels):
        return "duplicate hyperplane label"
    if set(D.coefficients) != set(labels):
        missing = sorted(set(labels) - set(D.coefficients))
        extra = sorted(set(D.coefficients) - set(labels))
        if missing:
            return f"no coefficient at label {missing[0]}"
        return f"coefficient at unknown label {extra[0]}"
    if not D.tail.is_pointed:
        return "tail cone is not pointed"
    for label in labels:
        c = D.coefficients[label]
        if c.rank != D.rank:
            return f"rank mismatch at label {label}"
        if not c.is_empty and c.tail != D.tail:
            return f"tail mismatch at label {label}"
    return D.arrangement.general_position_violation()


def require_valid(D):
    problem = validate(D)
    if problem is not None:
        raise InvalidDivisor(problem)


def support(D):
    """Labels whose coefficient differs from the tail cone."""
    sigma = Polyhedron.from_cone(D.tail)
    return {label for label, c in D.coefficients.items() if c != sigma}


def locus_is_full(D):
    return not any(c.is_empty for c in D.coefficients.values())


def evaluate(D, u):
    """``D(u) = sum_Z min <Delta_Z, u> Z`` restricted to the locus."""
    u = la.rational_vector(u)
    if len(u) != D.rank:
        raise RankMismatch(f"functional of rank {len(u)} for a divisor of rank {D.rank}")
    if not D.tail.dual().contains(u):
        raise UnboundedFunctional("u is not in the dual of the tail cone")
    return EvaluatedDivisor({label: Fraction(c.min_pairing(u))
                             for label, c in sorted(D.coefficients.items()) if not c.is_empty})


def degree(D):
    """Minkowski sum of all coefficients (empty if any coefficient is)."""
    total = Polyhedron.from_cone(D.tail)
    for label in D.labels:
        total = minkowski_sum(total, D.coefficients[label])
    return total


def is_proper(D):
    """Properness of a general-arrangement divisor: ``deg D`` is a proper subset of the tail."""
    require_valid(D)
    if not locus_is_full(D):
        raise ProperUndefinedOnPartialLocus("divisor has an empty coefficient")
    deg = degree(D)
    sigma = Polyhedron.from_cone(D.tail)
    if not deg.is_subset(sigma):
        return False
    # deg has tail sigma, so it equals sigma exactly when it contains the apex
    return not deg.contains((0,) * D.rank)


def superadditivity_check(D, u, v):
    """``D(u + v) >= D(u) + D(v)`` entrywise."""
    u = la.rational_vector(u)
    v = la.rational_vector(v)
    return evaluate(D, la.add(u, v)).dominates(evaluate(D, u) + evaluate(D, v))
