"""fusionkit: fusion rules of LSU(N) at level l, KZ transport and braiding.

Submodules
----------
repcore     signatures, permissibility, Casimir constants, paths
symchar     Weyl characters, Pieri rule, classical tensor products
fusionring  fusion by affine Weyl folding and by Verlinde points
numerics    Gamma, polynomial roots, eigenpairs, ODE integration, quadrature
transport   transport matrices of ``f' = A f/z + B f/(1-z)``
braiding    braiding coefficients from KZ transport
verify      cross-method sweeps
cli         command line front end (``python -m fusionkit``)
"""
from .errors import *  # noqa: F401,F403
from .repcore import (LevelContext, add_boxes, casimir_delta, conjugate, covers,
                      enumerate_permissible, is_permissible, lower_covers_su, normalize, paths)
from .symchar import (TensorDecomposition, dimension, eval_character, jacobi_trudi_expand,
                      pieri, tensor_decompose)
from .fusionring import (FusionElement, FusionTable, fuse, fuse_numeric, fusion_table,
                         theta, verlinde_points, weyl_fold)
from .transport import (TransportProblem, problem_from_spectrum, random_problem, spectral,
                        transport_formula, transport_numeric, validate)
from .braiding import BraidContext, abelian_coefficients, braid_matrix, kz_parameters, vanishing_report

__version__ = '0.1.0'
