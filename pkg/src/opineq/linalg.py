"""Dense complex linear algebra kernel.

Matrices are plain ``numpy`` arrays of dtype ``complex128``.  Every public
function validates its input through :func:`as_matrix` and never mutates it.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import NoConvergence, NotHermitian, NotSquare

__all__ = [
    "Tolerances",
    "DEFAULT_TOL",
    "HermitianEigenDecomposition",
    "SingularValueDecomposition",
    "as_matrix",
    "adjoint",
    "hermitian_part",
    "hermitian_eig",
    "jacobi_eigh",
    "svd",
    "operator_norm",
    "rank_threshold",
    "numerical_rank",
    "is_psd",
    "min_eigenvalue",
    "range_basis",
    "kernel_basis",
    "principal_angles",
    "max_principal_angle",
    "containment_angle",
    "subspaces_equal",
    "projector",
]


@dataclass(frozen=True)
class Tolerances:
    """Numeric policy shared by every check.

    ``tol_rank_factor`` enters the rank threshold as
    ``max(rows, cols) * sigma_max * tol_rank_factor``.  ``tol_slack`` is the
    absolute negative slack an inequality may show and still pass.
    """

    tol_eig: float = 1e-12
    tol_psd: float = 1e-10
    tol_rank_factor: float = 1e-12
    tol_slack: float = 1e-8

    def __post_init__(self):
        for name in ("tol_eig", "tol_psd", "tol_rank_factor", "tol_slack"):
            value = getattr(self, name)
            if not (np.isfinite(value) and value > 0):
                raise ValueError(f"{name} must be a positive finite number, got {value!r}")

    @property
    def angle_tol(self) -> float:
        """Largest principal angle (radians) still counted as 'same subspace'."""
        return 100.0 * self.tol_psd


DEFAULT_TOL = Tolerances()


@dataclass(frozen=True)
class HermitianEigenDecomposition:
    eigenvalues: np.ndarray  # ascending
    eigenvectors: np.ndarray  # orthonormal columns


@dataclass(frozen=True)
class SingularValueDecomposition:
    u: np.ndarray
    singular_values: np.ndarray  # descending
    v: np.ndarray
    numerical_rank: int

    @property
    def sigma_max(self) -> float:
        return float(self.singular_values[0]) if self.singular_values.size else 0.0


def as_matrix(a) -> np.ndarray:
    """Coerce ``a`` to a finite 2-D complex128 array."""
    m = np.array(a, dtype=np.complex128)
    if m.ndim == 0:
        m = m.reshape(1, 1)
    if m.ndim != 2 or m.shape[0] < 1 or m.shape[1] < 1:
        raise ValueError(f"expected a non-empty 2-D matrix, got shape {m.shape}")
    if not np.all(np.isfinite(m)):
        raise ValueError("matrix entries must be finite")
    return m


def _require_square(a: np.ndarray) -> None:
    if a.shape[0] != a.shape[1]:
        raise NotSquare(f"expected a square matrix, got shape {a.shape}")


def adjoint(a) -> np.ndarray:
    a = as_matrix(a)
    return a.conj().T.copy()


def hermitian_part(a) -> np.ndarray:
    """(a + a*) / 2."""
    a = as_matrix(a)
    return 0.5 * (a + a.conj().T)


def _check_hermitian(a: np.ndarray, tol: Tolerances) -> None:
    _require_square(a)
    asym = np.linalg.norm(a - a.conj().T, 2)
    if asym > tol.tol_eig * np.linalg.norm(a, 2):
        raise NotHermitian(f"asymmetry {asym:.3e} exceeds tol_eig * ||a||")


def jacobi_eigh(a, tol: Tolerances = DEFAULT_TOL, max_sweeps: int = 100) -> HermitianEigenDecomposition:
    """Cyclic Jacobi eigensolver for a Hermitian matrix.

    Each pivot (p, q) is first made real by a diagonal phase and then
    annihilated by a real plane rotation.  Sweeps stop once the off-diagonal
    Frobenius mass is at most ``0.01 * tol.tol_eig * ||a||_F``, which keeps
    the reconstruction residual well inside ``tol.tol_eig``.
    """
    a = as_matrix(a)
    _check_hermitian(a, tol)
    n = a.shape[0]
    A = hermitian_part(a)
    V = np.eye(n, dtype=np.complex128)
    scale = np.linalg.norm(A)
    target = 0.01 * tol.tol_eig * scale

    def off(m):
        return np.linalg.norm(m - np.diag(np.diag(m)))

    for _ in range(max_sweeps):
        if off(A) <= target:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = A[p, q]
                mag = abs(apq)
                if mag == 0.0:
                    continue
                phase = apq / mag
                app, aqq = A[p, p].real, A[q, q].real
                tau = (aqq - app) / (2.0 * mag)
                t = (1.0 if tau >= 0 else -1.0) / (abs(tau) + np.sqrt(1.0 + tau * tau))
                c = 1.0 / np.sqrt(1.0 + t * t)
                s = t * c
                # G = diag(1, conj(phase)) @ [[c, s], [-s, c]]
                g = np.array([[c, s], [-s * np.conj(phase), c * np.conj(phase)]])
                idx = [p, q]
                A[:, idx] = A[:, idx] @ g
                A[idx, :] = g.conj().T @ A[idx, :]
                A[p, q] = A[q, p] = 0.0
                A[p, p] = A[p, p].real
                A[q, q] = A[q, q].real
                V[:, idx] = V[:, idx] @ g
    else:
        if off(A) > target:
            raise NoConvergence(f"Jacobi did not converge in {max_sweeps} sweeps")

    w = np.real(np.diag(A))
    order = np.argsort(w, kind="stable")
    return HermitianEigenDecomposition(w[order], V[:, order])


def hermitian_eig(a, tol: Tolerances = DEFAULT_TOL, method: str = "lapack") -> HermitianEigenDecomposition:
    """Eigendecomposition of a Hermitian matrix, eigenvalues ascending.

    ``method="lapack"`` (default) calls ``numpy.linalg.eigh``;
    ``method="jacobi"`` runs :func:`jacobi_eigh`.
    """
    a = as_matrix(a)
    if method == "jacobi":
        return jacobi_eigh(a, tol)
    if method != "lapack":
        raise ValueError(f"unknown method {method!r}")
    _check_hermitian(a, tol)
    try:
        w, q = np.linalg.eigh(hermitian_part(a))
    except np.linalg.LinAlgError as exc:
        raise NoConvergence(str(exc)) from exc
    return HermitianEigenDecomposition(w, q)


def rank_threshold(a, tol: Tolerances = DEFAULT_TOL, sigma_max: float | None = None) -> float:
    a = np.asarray(a)
    if sigma_max is None:
        sigma_max = operator_norm(a)
    return max(a.shape) * sigma_max * tol.tol_rank_factor


def svd(a, tol: Tolerances = DEFAULT_TOL) -> SingularValueDecomposition:
    """Thin SVD ``a = u @ diag(s) @ v*`` with the numerical rank attached."""
    a = as_matrix(a)
    try:
        u, s, vh = np.linalg.svd(a, full_matrices=True)
    except np.linalg.LinAlgError as exc:
        raise NoConvergence(str(exc)) from exc
    smax = float(s[0]) if s.size else 0.0
    rank = int(np.sum(s > rank_threshold(a, tol, smax)))
    return SingularValueDecomposition(u, s, vh.conj().T, rank)


def operator_norm(a) -> float:
    a = np.asarray(a, dtype=np.complex128)
    if a.size == 0:
        return 0.0
    return float(np.linalg.norm(a, 2))


def numerical_rank(a, tol: Tolerances = DEFAULT_TOL) -> int:
    return svd(a, tol).numerical_rank


def min_eigenvalue(a, tol: Tolerances = DEFAULT_TOL) -> float:
    return float(hermitian_eig(a, tol).eigenvalues[0])


def is_psd(a, tol: Tolerances = DEFAULT_TOL) -> bool:
    """Loewner test ``a >= 0`` with relative slack ``tol_psd * max(1, ||a||)``."""
    a = as_matrix(a)
    lam = hermitian_eig(a, tol).eigenvalues
    return bool(lam[0] >= -tol.tol_psd * max(1.0, float(np.max(np.abs(lam)))))


def range_basis(a, tol: Tolerances = DEFAULT_TOL) -> np.ndarray:
    """Orthonormal basis of ran(a), shape (rows, rank)."""
    d = svd(a, tol)
    return d.u[:, : d.numerical_rank]


def kernel_basis(a, tol: Tolerances = DEFAULT_TOL) -> np.ndarray:
    """Orthonormal basis of ker(a), shape (cols, cols - rank)."""
    d = svd(a, tol)
    return d.v[:, d.numerical_rank :]


def projector(basis: np.ndarray) -> np.ndarray:
    return basis @ basis.conj().T


def principal_angles(b1: np.ndarray, b2: np.ndarray) -> np.ndarray:
    """Principal angles between span(b1) and span(b2), both orthonormal.

    Small angles come from the sine formulation so they stay accurate near 0.
    Returns ``min(k1, k2)`` angles in ascending order.
    """
    k = min(b1.shape[1], b2.shape[1])
    if k == 0:
        return np.zeros(0)
    if b1.shape[1] < b2.shape[1]:
        b1, b2 = b2, b1
    # sines of the angles between span(b2) and its projection onto span(b1)
    resid = b2 - b1 @ (b1.conj().T @ b2)
    sines = np.linalg.svd(resid, compute_uv=False)
    cosines = np.linalg.svd(b1.conj().T @ b2, compute_uv=False)
    sines = np.sort(np.clip(sines, 0.0, 1.0))[:k]
    cosines = np.sort(np.clip(cosines, 0.0, 1.0))[::-1][:k]
    angles = np.where(sines < np.sqrt(0.5), np.arcsin(sines), np.arccos(cosines))
    return np.sort(angles)


def max_principal_angle(b1: np.ndarray, b2: np.ndarray) -> float:
    if b1.shape[1] != b2.shape[1]:
        return float(np.pi / 2)
    angles = principal_angles(b1, b2)
    return float(angles[-1]) if angles.size else 0.0


def containment_angle(inner: np.ndarray, outer: np.ndarray) -> float:
    """Largest angle between a vector of span(inner) and span(outer).

    Zero exactly when span(inner) is a subspace of span(outer).
    """
    if inner.shape[1] == 0:
        return 0.0
    if outer.shape[1] == 0:
        return float(np.pi / 2)
    resid = inner - outer @ (outer.conj().T @ inner)
    s = float(np.clip(np.linalg.norm(resid, 2), 0.0, 1.0))
    return float(np.arcsin(s))


def subspaces_equal(b1: np.ndarray, b2: np.ndarray, tol: Tolerances = DEFAULT_TOL) -> bool:
    if b1.shape[1] != b2.shape[1]:
        return False
    return max_principal_angle(b1, b2) <= tol.angle_tol
