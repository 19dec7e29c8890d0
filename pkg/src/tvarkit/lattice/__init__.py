"""Exact lattices, cones and polyhedra over N and its dual M."""
from .linalg import to_fraction, rational_vector, primitive, smith_normal_form
from .cone import Cone, pairing, dual_cone, is_pointed, relint_contains
from .polyhedron import Polyhedron, minkowski_sum, w_face, contains
from .points import lattice_points

__all__ = [
    "Cone", "Polyhedron", "pairing", "dual_cone", "is_pointed", "relint_contains",
    "minkowski_sum", "w_face", "contains", "lattice_points", "to_fraction",
    "rational_vector", "primitive", "smith_normal_form",
]
