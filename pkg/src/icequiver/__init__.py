"""Exact computation with ice quivers with potential.

Combinatorial ice quivers and extended Fomin-Zelevinsky mutation, truncated
complete path algebras over the rationals, reduction and mutation of ice
quivers with potential, truncated frozen Jacobian algebras, and dimer models
with boundary.
"""

from .algebra import (CyclicWord, NCPoly, Path, Potential, STRIP_LEFTMOST,
                      STRIP_RIGHTMOST, Substitution, TensorTerm, bullet,
                      bullet_sum, cyclic_derivative, cyclic_word, cyclify,
                      default_truncation, delta, edge_derivative, idempotent,
                      make_path, multiply, paths_up_to, potential_validate,
                      substitute)
from .errors import (IceQuiverError, ParseError, PreconditionError,
                     TruncationTooSmall, ValidationFailure)
from .jacobian import (DEFAULT_EDGE_CONVENTION, RigidityReport, TraceReport,
                       TruncatedAlgebra, gabriel_quiver, hom_dims,
                       hom_dims_matrix, rigidity, trace_space_dims,
                       truncated_algebra, verify_derivative_identities)
from .mutation import (InvolutionReport, MutationStep, NondegeneracyReport,
                       check_involution, fz_agreement, mutate,
                       nondegeneracy_search, premutate)
from .quiver import (Arrow, IceQuiver, Vertex, canonical_form, composite_name,
                     star_name)
from .reduction import (NeatNormalForm, NeatPair, ReductionResult,
                        is_irredundant, is_reduced, neat_normal_form,
                        reduce_iqp, split_irredundant)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
