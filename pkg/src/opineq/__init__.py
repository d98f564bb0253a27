"""Finite-dimensional toolkit for (alpha, beta)-normal operators.

An operator T is (alpha, beta)-normal when alpha^2 T*T <= TT* <= beta^2 T*T.
The package certifies the tightest constants, computes numerical radii,
builds pseudo-inverses and Douglas-type factorizations, and checks a family
of norm / numerical-radius inequalities numerically.
"""

__version__ = "0.1.0"

from .errors import (  # noqa: E402
    AlphaZero,
    BadParams,
    BadSpec,
    KernelMismatch,
    MatrixParseError,
    NoConvergence,
    NotHermitian,
    NotMajorized,
    NotSquare,
    OpIneqError,
    ZeroOperator,
)
from .generators import EnsembleKind, EnsembleSpec, generate, random_unit_vectors  # noqa: E402
from .lemmas import LemmaId, check_vector_lemma  # noqa: E402
from .linalg import (  # noqa: E402
    DEFAULT_TOL,
    Tolerances,
    adjoint,
    hermitian_eig,
    is_psd,
    kernel_basis,
    operator_norm,
    range_basis,
    subspaces_equal,
    svd,
)
from .operators import (  # noqa: E402
    construct_s1_s2,
    douglas_factorization,
    is_ab_normal,
    majorizes,
    numerical_radius,
    profile,
    pseudo_inverse,
    tightest_alpha_beta,
)
from .reports import InequalityParams, InequalityReport, Mode  # noqa: E402
from .sweep import sweep  # noqa: E402
from .theorems import TheoremId, verify_theorem  # noqa: E402

__all__ = [
    "__version__",
    "AlphaZero",
    "BadParams",
    "BadSpec",
    "KernelMismatch",
    "MatrixParseError",
    "NoConvergence",
    "NotHermitian",
    "NotMajorized",
    "NotSquare",
    "OpIneqError",
    "ZeroOperator",
    "EnsembleKind",
    "EnsembleSpec",
    "generate",
    "random_unit_vectors",
    "LemmaId",
    "check_vector_lemma",
    "DEFAULT_TOL",
    "Tolerances",
    "adjoint",
    "hermitian_eig",
    "is_psd",
    "kernel_basis",
    "operator_norm",
    "range_basis",
    "subspaces_equal",
    "svd",
    "construct_s1_s2",
    "douglas_factorization",
    "is_ab_normal",
    "majorizes",
    "numerical_radius",
    "profile",
    "pseudo_inverse",
    "tightest_alpha_beta",
    "InequalityParams",
    "InequalityReport",
    "Mode",
    "sweep",
    "TheoremId",
    "verify_theorem",
]
