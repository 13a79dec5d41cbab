"""Exact rational linear symplectic geometry.

Subspace calculus over Q, symplectic orthogonality, Lagrangian
complements by averaging, coisotropic reduction with certified
complements, composition of canonical relations, and an exact
polynomial-truncation model of sigma-model boundary fields.
"""

from .errors import (InputError, NeatnessError, PreconditionError,
                     SplitlagError)
from .linalg import (Matrix, Subspace, block_diag, direct_product,
                     format_scalar, hstack, is_direct_sum, kernel_basis,
                     parse_scalar, vstack)
from .symplectic import (SubspaceClass, SymplecticSpace, SplittingLPair,
                         average_complement, classify, direct_sum,
                         lagrangian_complement, make_standard, opposite,
                         random_lagrangian, sample_lagrangian,
                         symp_orthogonal)
from .relations import (CanonicalRelation, SplitCanonicalRelation, diagonal,
                        from_lagrangian, graph_of_map, tensor, tensor_split,
                        transpose)
from .reduction import (NeatSearchResult, ReducedSpace, SplittingCTriple,
                        c_triple_from_lagrangian_form, check_neat, dim_counts,
                        find_neat_complement, minus_relation,
                        neat_reduction_is_split, phi, product_triple,
                        quotient_coords, reduce_lagrangian, reduce_space,
                        reduction_relation, validate_c_triple)
from .compose import (compose, compose_split, composition_coisotropic,
                      is_strongly_transversal, is_transversal, neatly_related)
from .psm import (PolyTruncation, PSMBoundarySpace, PSMReport, build_space,
                  c_m, fiber_addition_graph, l1, l2, l3,
                  symplectic_target_obstruction, verify_psm, zero_section)

__all__ = [name for name in dir() if not name.startswith("_")]

__version__ = "0.1.0"
