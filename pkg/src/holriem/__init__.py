"""Exact verification toolkit for left-invariant holomorphic Riemannian
metrics on low-dimensional complex Lie algebras."""

from .scalars import CPoly, GaussianRational, as_gr, gr, rational_sqrt
from .linalg import (
    CMatrix,
    LinearSolution,
    is_nilpotent_matrix,
    is_semisimple_matrix,
    kernel,
    min_poly,
    solve_linear,
)
from .forms import DegenerateForm, QuadraticForm
from .liealg import (
    AlgebraClass,
    LieAlgebra,
    NotUnimodular,
    WrongDimension,
    ad,
    bracket,
    center,
    classify_3d_unimodular,
    conjugate,
    derived_series,
    is_nilpotent,
    is_semisimple,
    is_solvable,
    is_unimodular,
    jacobi_defect,
    killing_form,
    lower_central_series,
    subalgebra,
)
from .geometry import (
    AdaptedBasis,
    BasisKind,
    ConnectionTable,
    CurvatureTensor,
    build_adapted_basis,
    constant_curvature,
    curvature,
    divergence,
    isotropic_lines,
    levi_civita,
    ricci,
    sectional_curvature,
    skew_algebra,
    stabilizer_in_skew,
    unipotent_isotropy_matrix,
)
from .models import (
    HomogeneousModel,
    IsotropyType,
    center_check_semisimple_isotropy,
    check_invariance,
    induced_ad,
    invariant_forms,
    isotropy_type,
    subalgebra_stabilizing,
)
from .catalog import (
    CatalogEntry,
    ParamExtension,
    VerifyReport,
    build_catalog,
    build_param_extension,
    check_prop_iv,
    mobius_invariance_check,
    verify_all,
)

__version__ = "0.1.0"
