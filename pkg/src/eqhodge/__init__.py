"""Delocalized Hodge theory on finite covers of simplicial complexes.

Core objects: exact integer/rational linear algebra (`exact`), simplicial
complexes with integer boundary maps (`complexes`), finite groups and
voltage covers with signed deck actions (`groups`, `cover`), Hodge
Laplacian spectra (`hodge`), delocalized traces and Betti numbers with an
exact character oracle (`delocalized`), Witten deformations (`witten`),
discrete Morse matchings (`morse`), closed 1-cochain towers (`oneform`),
and the corpus verification battery (`suite`, `cli`).
"""

from .complexes import (
    SimplicialComplex,
    betti_exact,
    betti_vector,
    boundary_matrix,
    build_complex,
    builtin_complex,
)
from .cover import CoverComplex, VoltageAssignment, build_cover, deck_matrix
from .delocalized import (
    beta_delocalized,
    beta_oracle,
    character_oracle,
    euler_delocalized,
    gamma,
    t_trace,
    tr_delocalized,
)
from .groups import FiniteGroup, conjugacy_classes, cyclic_group, symmetric_group
from .hodge import harmonic_projector, laplacian, spectrum
from .morse import (
    MorseMatching,
    lift_matching,
    matching_from_vertex_function,
    validate_matching,
)
from .oneform import ClosedOneCochain, cyclic_cover, periods, verify_delahgar
from .witten import DeformationParameters, deformed_laplacian, mu

__version__ = "0.1.0"

__all__ = [
    "SimplicialComplex", "betti_exact", "betti_vector", "boundary_matrix",
    "build_complex", "builtin_complex", "CoverComplex", "VoltageAssignment",
    "build_cover", "deck_matrix", "beta_delocalized", "beta_oracle",
    "character_oracle", "euler_delocalized", "gamma", "t_trace",
    "tr_delocalized", "FiniteGroup", "conjugacy_classes", "cyclic_group",
    "symmetric_group", "harmonic_projector", "laplacian", "spectrum",
    "MorseMatching", "lift_matching", "matching_from_vertex_function",
    "validate_matching", "ClosedOneCochain", "cyclic_cover", "periods",
    "verify_delahgar", "DeformationParameters", "deformed_laplacian", "mu",
    "__version__",
]
