"""Exact checks on the Kummer surface Km(E x F) and its automorphisms.

Submodules:

``curves``        the 24-curve configuration and its Gram matrix
``lattice``       divisor classes, intersection pairing, nefness, rank
``fibration``     elliptic fibre classes, Kodaira types, Euler/Hurwitz counts
``elliptic``      Weierstrass arithmetic with rational 2-torsion
``translations``  affine maps on C and subgroups of (Q, +)
``blowup``        the two-stage blow-up and its canonical class
``conjugacy``     separating the involutions iota_n
``manifest``      claims manifests and reports
"""

from .curves import CurveConfiguration, adjacency, build_standard_configuration
from .lattice import D1, D2, D2_PRIME, DivisorClass, lattice_rank, pair, self_intersection
from .manifest import parse_manifest, run_manifest

__all__ = [
    "CurveConfiguration",
    "D1",
    "D2",
    "D2_PRIME",
    "DivisorClass",
    "adjacency",
    "build_standard_configuration",
    "lattice_rank",
    "pair",
    "parse_manifest",
    "run_manifest",
    "self_intersection",
]
