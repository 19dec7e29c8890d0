"""Cone singularity / toroidal / embeddable trichotomy for affine general
arrangement varieties, and the open embedding into a cone singularity.
"""
from dataclasses import dataclass
from enum import Enum
from typing import Any, Optional

from .errors import EmptyCoefficient, NotProper, SupportMismatch, UnboundedFunctional, WrongBranch
from .lattice import Cone, Polyhedron, w_face
from .lattice import linalg as la
from .pdivisor import PolyhedralDivisor, is_proper, locus_is_full, require_valid


class Kind(str, Enum):
    CONE_SINGULARITY = "ConeSingularity"
    TOROIDAL_LOCUS_AFFINE = "ToroidalLocusAffine"
    EMBEDDABLE_NON_CONE = "EmbeddableNonCone"


@dataclass(frozen=True)
class Classification:
    kind: Kind
    witness: Optional[Any] = None


@dataclass(frozen=True)
class EmbeddingResult:
    extended: PolyhedralDivisor
    added_rays: tuple
    face_chain: tuple

    def recover(self):
        """Apply the face chain to the extended divisor, innermost functional first."""
        steps = face_chain_steps(self)
        return steps[-1][1] if steps else self.extended


def classify(D):
    """Decide which branch of the trichotomy ``TV(D)`` falls in.

    * an empty coefficient removes hyperplanes from P^d, the locus becomes
      affine and the variety is toroidal;
    * otherwise a full-dimensional tail means a cone singularity; the witness
      is an interior lattice point of the tail, i.e. a one-parameter subgroup
      pairing positively with every nonzero weight;
    * otherwise the divisor embeds into one with full-dimensional tail.
    """
    require_valid(D)
    if not locus_is_full(D):
        empty = sorted(l for l, c in D.coefficients.items() if c.is_empty)
        return Classification(Kind.TOROIDAL_LOCUS_AFFINE, tuple(empty))
    if not is_proper(D):
        raise NotProper("classification needs a proper divisor")
    if D.tail.is_full_dimensional:
        return Classification(Kind.CONE_SINGULARITY, D.tail.relint_point())
    return Classification(Kind.EMBEDDABLE_NON_CONE, None)


def complement_basis(tail):
    """Lattice vectors completing a basis of ``span(tail) ∩ N`` to a basis of N.

    Returns ``(added, duals)`` where ``duals[i]`` is the dual covector of
    ``added[i]``: it vanishes on ``span(tail)`` and on the other added vectors.
    """
    s = tail.rank
    gens = [tuple(int(x) for x in g) for g in tail.rays + tail.lineality]
    if not gens:
        gens = [(0,) * s]
    d, _, v = la.smith_normal_form(gens)
    r = sum(1 for i in range(min(len(d), s)) if d[i][i])
    # rows of v^-1 form a basis of N whose first r vectors saturate span(tail)
    vinv = la.unimodular_inverse(v)
    added = tuple(tuple(vinv[i]) for i in range(r, s))
    duals = tuple(tuple(row[i] for row in v) for i in range(r, s))
    return added, duals


def embed_into_cone_singularity(D):
    """Extend a divisor with lower-dimensional tail to one with full-dimensional tail.

    With ``e_{r+1}, ..., e_s`` completing a lattice basis of ``span(tail)``,
    every coefficient becomes ``Delta + Cone(e_{r+1}, ..., e_s)``.  The face
    chain holds the dual covectors; taking faces along them recovers ``D``.
    """
    require_valid(D)
    if not locus_is_full(D) or D.tail.is_full_dimensional:
        raise WrongBranch("embedding applies only to full-locus divisors with lower-dimensional tail")
    added, duals = complement_basis(D.tail)
    extra = Polyhedron.from_cone(Cone(added, rank=D.rank))
    ext = D.map_coefficients(lambda c: c + extra, tail=D.tail + Cone(added, rank=D.rank))
    return EmbeddingResult(ext, added, duals)


def open_embedding_check(D1, D2, u):
    """Is every coefficient of ``D2`` the ``u``-face of the one of ``D1``?

    On P^d the semiampleness side condition always holds, so this face
    relation alone decides whether ``TV(D2) -> TV(D1)`` is an open embedding.
    """
    if set(D1.labels) != set(D2.labels):
        raise SupportMismatch("divisors live on different arrangements")
    if not locus_is_full(D1):
        raise EmptyCoefficient("the ambient divisor must have nonempty coefficients")
    u = la.rational_vector(u)
    if not D1.tail.dual().contains(u):
        raise UnboundedFunctional("u is not in the dual of the tail cone")
    return all(D2.coefficients[l] == w_face(D1.coefficients[l], u) for l in D1.labels)


def face_chain_steps(result):
    """Successive divisors ``D'_s, ..., D'_r = D`` obtained along the face chain.

    Returns pairs ``(functional, divisor)``; the divisor is the face of the
    previous one along the functional.
    """
    steps = []
    d = result.extended
    for w in reversed(result.face_chain):
        d = d.map_coefficients(lambda c, w=w: w_face(c, w), tail=d.tail.intersect_hyperplane(w))
        steps.append((w, d))
    return steps
