"""Exact computations with derivation DGLs of Sullivan models."""

from .algebra import AlgElement, Generator, GradedAlgebra, leibniz_extend, monomial_basis, multiply
from .cohomology import (
    FiniteGradedRing,
    borel_extend,
    cdga_cohomology,
    f0_certify,
    halperin_test,
    neg_derivations_of_ring,
)
from .derivations import (
    DerComplex,
    Derivation,
    HomologyClass,
    cstar_model,
    der_boundary,
    der_bracket,
    der_homology,
    derivation_basis,
    pi_aut_dims,
)
from .dsl import Workspace, format_workspace, parse
from .fibration import (
    b_f_project,
    connecting_delta,
    fiber_dims_formula,
    odd_sphere_triviality,
    pi_odd_vanishing,
    rel_der_homology,
    section_exists,
    strict_projection_check,
)
from .lie import DglMapData, LieBracket, LieGen, LieScale, LieSum, QuillenData, dgl_map_check, lie_eval
from .linalg import RatMatrix, in_span, kernel_basis, rank, rref
from .models import RelativeModel, SullivanModel, classify, is_pi_q_separable, validate_model
from .obstruction import obstruction_class, skeletal_lift_scan

__version__ = "0.1.0"
