"""Exact resolutions of lattice-plus-monomial ideals via Scarf complexes."""
from __future__ import annotations

from .chain import (
    FreeChainComplex,
    Generator,
    cellular_differential,
    check_minimality,
    quotient_pi,
    strand_homology,
    taylor_complex,
    verify_dd_zero,
    verify_strands,
)
from .errors import NotAntichainError, NotGenericError, PreconditionError, ScarfresError, VerificationError
from .hull import compare_scarf_hull, embed, hull_faces
from .lambda_set import LambdaSet
from .lattice import AntichainLattice, enumerate_fiber, is_generic, markov_basis, membership, neighbors_of_origin
from .laurent import LaurentPolynomial, binomial_of, parse_polynomial, strand_basis
from .lift3 import assemble_horseshoe, lattice_resolution_z3, markov_path_decompose
from .scarf import build_scarf, is_neighborly, is_strongly_neighborly

__version__ = "0.1.0"
