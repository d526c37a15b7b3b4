"""Isomorphism invariants for p-groups of class 2 and exponent p.

A group of this kind is encoded by a skew-symmetric matrix of linear forms
over F_p (:class:`LinFormMatrix`).  Its rank loci, and those of the adjoint,
give point counts, dimensions, degrees and span dimensions that are
unchanged under isomorphism; :func:`fingerprint` collects them and
:func:`partition` groups a family by them.
"""

from .families import MatrixFamily, MatrixTemplate, builtin_family, load_family
from .fingerprint import Fingerprint, FingerprintOptions, fingerprint, partition
from .groups import GroupSpec, centre_dim, derived_dim, structural_report
from .ideals import RankIdealVector, minors
from .isom import IsoResult, IsoWitness, isomorphic_bruteforce, verify_witness
from .linforms import LinFormMatrix, Tensor3, act, adjoint, flatten, transform
from .rankloci import BudgetExceeded, RankProfile, adjoint_rank_profile, chain_counts, rank_profile

__version__ = "0.1.0"

__all__ = [
    "BudgetExceeded",
    "Fingerprint",
    "FingerprintOptions",
    "GroupSpec",
    "IsoResult",
    "IsoWitness",
    "LinFormMatrix",
    "MatrixFamily",
    "MatrixTemplate",
    "RankIdealVector",
    "RankProfile",
    "Tensor3",
    "act",
    "adjoint",
    "adjoint_rank_profile",
    "builtin_family",
    "centre_dim",
    "chain_counts",
    "derived_dim",
    "fingerprint",
    "flatten",
    "isomorphic_bruteforce",
    "load_family",
    "minors",
    "partition",
    "rank_profile",
    "structural_report",
    "transform",
    "verify_witness",
]
