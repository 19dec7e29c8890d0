"""Log-discrepancy bookkeeping and exact toric minimal log discrepancies."""
from dataclasses import dataclass, field
from fractions import Fraction
from math import ceil

from .errors import InvalidCenter, InvalidGerm, NotNonLc, NotQGorenstein
from .lattice import Cone, lattice_points
from .lattice import linalg as la


def blowup_log_discrepancy(k, coeffs):
    """Log discrepancy ``k - sum(coeffs)`` of the blow-up of a smooth codim-``k`` center.

    ``coeffs`` are the boundary coefficients of exactly those divisors that
    contain the center.
    """
    if k < 2:
        raise ValueError(f"blow-up centers have codimension at least 2, got {k}")
    return Fraction(k) - sum((la.to_fraction(a) for a in coeffs), Fraction(0))


@dataclass(frozen=True)
class DiscrepancyModel:
    """Boundary data on a log resolution.

    ``divisors`` is a tuple of ``(id, coeff)``; ``containments`` lists the ids
    of the divisors that contain the center currently under consideration.
    """

    dim_n: int
    divisors: tuple
    containments: frozenset = frozenset()

    def __post_init__(self):
        divs = tuple((str(i), la.to_fraction(c)) for i, c in self.divisors)
        object.__setattr__(self, "divisors", divs)
        object.__setattr__(self, "containments", frozenset(self.containments))
        ids = [i for i, _ in divs]
        if len(set(ids)) != len(ids):
            raise ValueError("divisor ids must be unique")
        if self.dim_n < 2:
            raise ValueError("dimension must be at least 2")
        unknown = self.containments - set(ids)
        if unknown:
            raise ValueError(f"containment refers to unknown divisor {sorted(unknown)[0]}")

    @property
    def is_boundary(self):
        return all(c <= 1 for _, c in self.divisors)

    @property
    def is_log_canonical(self):
        """All discrepancies ``-coeff`` are at least ``-1``."""
        return self.is_boundary

    def coefficient(self, ident):
        return dict(self.divisors)[ident]

    def discrepancies(self):
        return tuple((i, -c) for i, c in self.divisors)

    def blowup(self, k, containing=None):
        """Log discrepancy of blowing up a codim-``k`` center inside ``containing``."""
        ids = self.containments if containing is None else containing
        coeffs = dict(self.divisors)
        return blowup_log_discrepancy(k, [coeffs[i] for i in sorted(ids)])


def discrepancy_divisor(resolution, dim_n=2):
    """The boundary ``sum -d_E E`` on a resolution, given ``(id, d_E)`` pairs."""
    return DiscrepancyModel(dim_n, tuple((i, -la.to_fraction(d)) for i, d in resolution))


@dataclass(frozen=True)
class BlowupStep:
    center_codim: int
    coeffs_over_center: tuple
    log_discrepancy: Fraction
    label: str = ""

    @property
    def discrepancy(self):
        return self.log_discrepancy - 1


@dataclass(frozen=True)
class BlowupTrace:
    dim_n: int
    c: Fraction
    other_sum: Fraction
    steps: tuple = field(default_factory=tuple)
    final_log_discrepancy: Fraction = Fraction(0)
    final_bound: Fraction = Fraction(0)

    @property
    def length(self):
        """Number of codimension-two blow-ups before the final one."""
        return len(self.steps) - 1


def non_lc_blowup_sequence(n, d_E, other_d):
    """Replay the blow-up recipe bounding the mld over a non-log-canonical point.

    ``d_E = -1 - c`` with ``c > 0`` is the discrepancy of the bad divisor E,
    ``other_d`` those of the remaining exceptional divisors over the point.
    Codimension-two blow-ups inside E push the discrepancy of the newest
    divisor down by ``c`` until it is at most ``-L`` (``L = sum(other_d)``);
    then a point of ``E_l ∩ E`` lying on every other exceptional divisor is
    blown up.  Its log discrepancy is at most ``n + d_{E_l} + L <= n``.
    """
    if n < 3:
        raise ValueError("the recipe assumes dimension at least 3")
    d_E = la.to_fraction(d_E)
    if d_E >= -1:
        raise NotNonLc(f"d_E = {d_E} is not below -1")
    others = [la.to_fraction(d) for d in other_d]
    c = -1 - d_E
    L = sum(others, Fraction(0))
    e_coeff = 1 + c  # coefficient of E in the discrepancy divisor
    ell = 0 if L <= 0 else ceil(L / c)

    steps = []
    d_last = d_E
    for i in range(1, ell + 1):
        # blow up E_{i-1} ∩ E (for i = 1 a codim-2 center inside E only)
        coeffs = (e_coeff,) if i == 1 else (e_coeff, -d_last)
        a = blowup_log_discrepancy(2, coeffs)
        steps.append(BlowupStep(2, coeffs, a, f"E_{i}"))
        d_last = a - 1
    if d_last > -L and ell:
        raise AssertionError("recurrence did not reach -L")

    final_coeffs = ((-d_last,) if ell == 0 else (-d_last, e_coeff)) + tuple(-d for d in others)
    a_final = blowup_log_discrepancy(n, final_coeffs)
    steps.append(BlowupStep(n, final_coeffs, a_final, f"E_{ell + 1}"))
    bound = n + d_last + L
    if not (a_final <= bound <= n):
        raise AssertionError(f"final log discrepancy {a_final} breaks the bound {bound} <= {n}")
    return BlowupTrace(n, c, L, tuple(steps), a_final, bound)


@dataclass(frozen=True)
class ToricGermData:
    """A toric germ: a pointed cone and its canonical functional ``u_K``.

    ``u_K`` takes the value 1 on every primitive ray generator.
    """

    sigma: Cone
    u_K: tuple

    def __post_init__(self):
        object.__setattr__(self, "u_K", la.rational_vector(self.u_K))
        if not self.sigma.is_pointed:
            raise InvalidGerm("the cone is not pointed")
        if any(la.dot(self.u_K, r) != 1 for r in self.sigma.rays):
            raise InvalidGerm("u_K is not 1 on every ray generator")
        if not self.sigma.is_zero and not self.sigma.dual().relint_contains(self.u_K):
            raise InvalidGerm("u_K is not in the interior of the dual cone")

    @property
    def rank(self):
        return self.sigma.rank


def toric_q_gorenstein(sigma):
    """Solve ``<u, v_i> = 1`` on the rays; raise :class:`NotQGorenstein` if impossible."""
    if not sigma.is_pointed or not sigma.is_full_dimensional:
        raise InvalidGerm("germ cones must be pointed and full-dimensional")
    rays = list(sigma.rays)
    u = la.solve(rays, [1] * len(rays), sigma.rank)
    if u is None:
        raise NotQGorenstein(f"no linear functional is 1 on all rays of {sigma!r}")
    return ToricGermData(sigma, u)


@dataclass(frozen=True)
class MldResult:
    value: Fraction
    witness: tuple
    bound: Fraction


def _center_predicate(sigma, center):
    # facets not vanishing on the whole center must stay positive at v
    strict = [h for h in sigma.facets
              if any(la.dot(h, g) != 0 for g in center.generators)]

    def ok(v):
        return all(la.dot(h, v) > 0 for h in strict)
    return ok


def toric_mld_search(germ, center_face=None, bound=None):
    """Exact minimal log discrepancy along the orbit closure of ``center_face``.

    Minimizes ``<u_K, v>`` over nonzero lattice points ``v`` of ``sigma``
    whose minimal face contains ``center_face`` (default: ``sigma`` itself,
    i.e. the torus fixed point).  The scan starts at ``bound`` (default the
    rank) and doubles until a candidate appears, so the answer never depends
    on an a priori upper bound.
    """
    sigma = germ.sigma
    center = sigma if center_face is None else center_face
    if not sigma.is_face(center):
        raise InvalidCenter(f"{center!r} is not a face of {sigma!r}")
    ok = _center_predicate(sigma, center)
    b = Fraction(sigma.rank if bound is None else bound)
    if b <= 0:
        b = Fraction(1)
    u_int = la.integral_row(germ.u_K)
    while True:
        cands = [v for v in lattice_points(sigma, germ.u_K, b) if ok(v)]
        if cands:
            # integer pairing with a rescaled u_K orders the candidates identically
            _, witness = min((sum(a * x for a, x in zip(u_int, v)), v) for v in cands)
            return MldResult(Fraction(la.dot(germ.u_K, witness)), witness, b)
        b *= 2


def toric_mld(germ, center_face=None):
    return toric_mld_search(germ, center_face).value


def product_germ(germ, extra_rank):
    """``sigma x {0}`` inside ``N + Z^extra_rank`` with ``u_K`` extended by zeros."""
    if extra_rank < 1:
        raise ValueError("extra_rank must be positive")
    pad = (0,) * extra_rank
    sigma = Cone([r + pad for r in germ.sigma.rays], rank=germ.rank + extra_rank)
    return ToricGermData(sigma, tuple(germ.u_K) + (Fraction(0),) * extra_rank)


def product_formula_check(germ, extra_rank):
    """mld of X at its fixed point equals the mld of X x T along the orbit over it."""
    prod = product_germ(germ, extra_rank)
    return toric_mld(prod, prod.sigma) == toric_mld(germ)
