"""Operator-level norm / numerical-radius inequalities for (alpha, beta)-normal T.

Each :class:`TheoremId` has an operator-level form (what gets reported) and a
pointwise ancestor in a unit vector ``x`` whose supremum yields it.  The
pointwise forms drive the witness search: when an operator-level check fails
we look for a unit ``x`` at which the ancestor itself is violated.

Two readings exist for three ids.  ``printed`` evaluates the statement as it
is usually quoted; ``corrected`` evaluates what the supremum argument
actually delivers:

* PARALLELOGRAM_POWER drops the factor 1/2 on the right-hand side;
* DS_LOWER uses alpha in the first coefficient and ``max(..., 0) ** p`` in
  the second;
* GRC_POWER is checked pointwise, at the least favourable vector of the
  search set, because its operator form does not follow from the pointwise
  one by a supremum step alone.

For every other id the two modes coincide.
"""

from __future__ import annotations

import enum
import math
from dataclasses import replace
from functools import cached_property, lru_cache

import numpy as np

from .errors import BadParams
from .generators import random_unit_vectors
from .linalg import DEFAULT_TOL, Tolerances, as_matrix, operator_norm
from .operators import AlphaBetaCertificate, _square, numerical_radius_detail, tightest_alpha_beta
from .reports import InequalityParams, InequalityReport, Mode, make_report

__all__ = [
    "TheoremId",
    "OperatorData",
    "verify_theorem",
    "pointwise_sides",
    "search_witness",
    "WITNESS_SAMPLES",
    "WITNESS_SEED",
]

WITNESS_SAMPLES = 10_000
WITNESS_SEED = 0x5EED_0F_1DE5


class TheoremId(str, enum.Enum):
    GRC_POWER = "GRC_POWER"
    BUZANO_RADIUS = "BUZANO_RADIUS"
    DUNKL_WILLIAMS = "DUNKL_WILLIAMS"
    QUAD_REVERSE = "QUAD_REVERSE"
    SCHWARZ_REV_QUAD = "SCHWARZ_REV_QUAD"
    SCHWARZ_REV_LIN = "SCHWARZ_REV_LIN"
    PARALLELOGRAM_POWER = "PARALLELOGRAM_POWER"
    HALF_SUM_NORM = "HALF_SUM_NORM"
    DS_LOWER = "DS_LOWER"

    @classmethod
    def parse(cls, name: str) -> "TheoremId":
        try:
            return cls(name.strip().upper())
        except ValueError:
            raise BadParams(f"unknown theorem {name!r}; choose from {[t.value for t in cls]}") from None


MODE_SENSITIVE = frozenset({TheoremId.GRC_POWER, TheoremId.PARALLELOGRAM_POWER, TheoremId.DS_LOWER})


@lru_cache(maxsize=64)
def _cached_unit_vectors(dim: int, count: int, seed: int) -> np.ndarray:
    x = random_unit_vectors(dim, count, seed)
    x.setflags(write=False)
    return x


class OperatorData:
    """Lazily computed quantities of one square operator, shared across checks."""

    def __init__(self, t, tol: Tolerances = DEFAULT_TOL, samples: int = WITNESS_SAMPLES):
        self.t = _square(t)
        self.tol = tol
        self.samples = samples
        self.ts = self.t.conj().T
        self.t2 = self.t @ self.t
        self.n = self.t.shape[0]

    @cached_property
    def op_norm(self) -> float:
        return operator_norm(self.t)

    @cached_property
    def certificate(self) -> AlphaBetaCertificate:
        return tightest_alpha_beta(self.t, self.tol)

    @property
    def alpha(self) -> float:
        return self.certificate.alpha

    @property
    def beta(self) -> float:
        return self.certificate.beta

    @cached_property
    def radius(self):
        return numerical_radius_detail(self.t, self.tol)

    @cached_property
    def radius_sq(self):
        return numerical_radius_detail(self.t2, self.tol)

    @cached_property
    def sigma_min_adjoint(self) -> float:
        """inf{||T* x|| : ||x|| = 1}."""
        return float(np.linalg.svd(self.ts, compute_uv=False)[-1])

    def norm_of(self, m) -> float:
        return operator_norm(m)

    @cached_property
    def search_set(self) -> np.ndarray:
        """Candidate unit vectors (rows): structured candidates, then random ones."""
        cands = []
        _, _, vh = np.linalg.svd(self.t)
        cands.extend(vh.conj())  # right singular vectors of T
        _, _, vh = np.linalg.svd(self.ts)
        cands.extend(vh.conj())
        cands.append(self.radius.vector)
        cands.append(self.radius_sq.vector)
        for m in (self.ts @ self.t, self.t @ self.ts):
            _, q = np.linalg.eigh(0.5 * (m + m.conj().T))
            cands.extend(q.T)
        try:
            cands.append(self.certificate.minimizing_vector)
            cands.append(self.certificate.maximizing_vector)
        except Exception:
            pass
        structured = np.array(cands, dtype=np.complex128)
        structured /= np.linalg.norm(structured, axis=1, keepdims=True)
        rand = _cached_unit_vectors(self.n, self.samples, WITNESS_SEED)
        return np.vstack([structured, rand])


def _data(t, tol) -> OperatorData:
    if isinstance(t, OperatorData):
        return t
    return OperatorData(as_matrix(t), tol)


def _lam_nonzero(params: InequalityParams, tid: TheoremId) -> complex:
    lam = complex(params.lam)
    if lam == 0:
        raise BadParams(f"{tid.value} needs lambda != 0")
    return lam


def _need_p(params, tid, lo, hi, closed_lo=True):
    if params.p is None:
        raise BadParams(f"{tid.value} needs parameter p")
    p = float(params.p)
    ok = (p >= lo if closed_lo else p > lo) and p < hi
    if not ok:
        raise BadParams(f"{tid.value}: p={p} outside its domain")
    return p


def _radius_param(data: OperatorData, params: InequalityParams, lam: complex) -> float:
    if params.r is None:
        return data.norm_of(lam * data.ts - data.t)
    r = float(params.r)
    if r < 0:
        raise BadParams("r must be >= 0")
    return r


def _ds_coefficient(alpha, beta, lam, mu, p, mode):
    la, ma = abs(lam), abs(mu)
    if mode is Mode.PRINTED:
        return (la + beta * ma) ** p + max(la - ma * beta, alpha * ma - la)
    return (la + alpha * ma) ** p + max(la - beta * ma, alpha * ma - la, 0.0) ** p


def resolved_params(tid: TheoremId, data: OperatorData, params: InequalityParams) -> InequalityParams:
    """Fill in operator-dependent defaults (the minimal admissible radius)."""
    if tid in (TheoremId.SCHWARZ_REV_QUAD, TheoremId.SCHWARZ_REV_LIN):
        lam = _lam_nonzero(params, tid)
        r = _radius_param(data, params, lam)
        return params if params.r is not None else replace(params, r=r)
    return params


# ---------------------------------------------------------------------------
# pointwise ancestors


def pointwise_sides(tid, t, params: InequalityParams, mode, x, tol: Tolerances = DEFAULT_TOL):
    """Vectorized pointwise (lhs, rhs) at the unit vectors in the rows of ``x``.

    Entries where a negative power of ||Tx|| or ||T*x|| would be taken at a
    (numerically) zero vector come back as ``nan`` and should be skipped.
    """
    tid = TheoremId(tid)
    mode = Mode(mode)
    data = _data(t, tol)
    params = resolved_params(tid, data, params)
    x = np.atleast_2d(np.asarray(x, dtype=np.complex128))
    T, Ts = data.t, data.ts
    tx = x @ T.T
    tsx = x @ Ts.T

    def nrm(v):
        return np.linalg.norm(v, axis=1)

    def quad(m):
        # <M x, x> for each row x
        return np.einsum("ij,ij->i", x @ m.T, x.conj())

    ntx, ntsx = nrm(tx), nrm(tsx)
    q2 = np.abs(quad(data.t2))

    if tid is TheoremId.HALF_SUM_NORM:
        p = _need_p(params, tid, 2.0, math.inf)
        m = 0.5 * (Ts @ T + T @ Ts)
        lhs = np.abs(quad(m).real) ** (p / 2)
        rhs = 0.25 * (nrm(tx + tsx) ** p + nrm(tx - tsx) ** p)
        return lhs, rhs

    a, b = data.alpha, data.beta
    if tid is TheoremId.GRC_POWER:
        r = _grc_r(params)
        d = nrm(b * tx - tsx) ** 2
        if mode is Mode.PRINTED:
            lhs = (a ** (2 * r) + b ** (2 * r)) * ntx**2
            rhs = 2 * b**r * q2 + (r * r * b ** (2 * r - 2) if r >= 1 else 1.0) * d
            return lhs, rhs
        tiny = 1e-12 * max(data.op_norm, np.finfo(float).tiny)
        good = (ntx > tiny) & (ntsx > tiny)
        with np.errstate(divide="ignore", invalid="ignore"):
            lhs = (a ** (2 * r) + b ** (2 * r)) * ntx ** (2 * r)
            cross = 2 * b**r * ntx ** (r - 1) * ntsx ** (r - 1) * q2
            if r >= 1:
                rhs = cross + r * r * b ** (2 * r - 2) * ntx ** (2 * r - 2) * d
            else:
                rhs = cross + ntsx ** (2 * r - 2) * d
        return np.where(good, lhs, np.nan), np.where(good, rhs, np.nan)

    if tid is TheoremId.BUZANO_RADIUS:
        return np.abs(quad(T)) ** 2, 0.5 * (b * ntx**2 + q2)
    if tid is TheoremId.DUNKL_WILLIAMS:
        lam = complex(params.lam)
        return a * ntx**2, q2 + 2 * b * nrm(tx - lam * tsx) ** 2 / (1 + abs(lam) * a) ** 2
    if tid is TheoremId.QUAD_REVERSE:
        lam = _lam_nonzero(params, tid)
        return (a * a - (1 / abs(lam) + b) ** 2) * ntx**4, q2**2
    if tid is TheoremId.SCHWARZ_REV_QUAD:
        lam = _lam_nonzero(params, tid)
        r = float(params.r)
        return a * a * ntx**4, q2**2 + r * r * ntx**2 / abs(lam) ** 2
    if tid is TheoremId.SCHWARZ_REV_LIN:
        lam = _lam_nonzero(params, tid)
        r = float(params.r)
        return a * ntx**2, q2 + r * r / (2 * abs(lam)) + 0 * ntx
    if tid is TheoremId.PARALLELOGRAM_POWER:
        p = _need_p(params, tid, 2.0, math.inf)
        rhs = nrm(tx + tsx) ** p + nrm(tx - tsx) ** p
        if mode is Mode.PRINTED:
            rhs = 0.5 * rhs
        return 2 * (1 + a**p) * ntx**p, rhs
    if tid is TheoremId.DS_LOWER:
        p = _need_p(params, tid, 1.0, 2.0, closed_lo=False)
        lam, mu = complex(params.lam), complex(params.mu)
        coef = _ds_coefficient(a, b, lam, mu, p, mode)
        rhs = nrm(lam * tx + mu * tsx) ** p + nrm(lam * tx - mu * tsx) ** p
        return coef * ntx**p, rhs
    raise BadParams(f"unknown theorem {tid}")  # pragma: no cover


def _grc_r(params) -> float:
    if params.r is None:
        raise BadParams("GRC_POWER needs parameter r")
    r = float(params.r)
    if r < 0:
        # the alpha-substitution ||T*x||^{2r} >= alpha^{2r} ||Tx||^{2r} needs r >= 0
        raise BadParams("GRC_POWER needs r >= 0")
    return r


def search_witness(tid, t, params, mode, tol: Tolerances = DEFAULT_TOL):
    """Unit vector with the most negative pointwise slack, if below -tol_slack."""
    data = _data(t, tol)
    x = data.search_set
    lhs, rhs = pointwise_sides(tid, data, params, mode, x, tol)
    slack = rhs - lhs
    slack = np.where(np.isnan(slack), np.inf, slack)
    k = int(np.argmin(slack))
    if slack[k] < -tol.tol_slack:
        return x[k].copy(), float(slack[k])
    return None, None


# ---------------------------------------------------------------------------
# operator-level verification


def verify_theorem(
    tid: TheoremId | str,
    t,
    params: InequalityParams = InequalityParams(),
    mode: Mode | str = Mode.CORRECTED,
    tol: Tolerances = DEFAULT_TOL,
    find_witness: bool = True,
) -> InequalityReport:
    """Evaluate one theorem on operator ``t`` (a matrix or :class:`OperatorData`)."""
    tid = TheoremId(tid)
    mode = Mode(mode)
    data = _data(t, tol)
    eval_mode = mode if tid in MODE_SENSITIVE else Mode.CORRECTED
    T, Ts = data.t, data.ts
    N = data.op_norm
    notes: list[str] = []
    ok = True
    sample = None

    if tid is TheoremId.HALF_SUM_NORM:
        p = _need_p(params, tid, 2.0, math.inf)
        lhs = data.norm_of(0.5 * (Ts @ T + T @ Ts)) ** (p / 2)
        rhs = 0.25 * (data.norm_of(T + Ts) ** p + data.norm_of(T - Ts) ** p)
        return _finish(tid, mode, eval_mode, params, lhs, rhs, ok, notes, data, tol, find_witness)

    a, b = data.alpha, data.beta  # raises KernelMismatch / ZeroOperator
    w1 = data.radius.value
    w2 = data.radius_sq.value

    if tid is TheoremId.GRC_POWER:
        r = _grc_r(params)
        if eval_mode is Mode.PRINTED:
            lhs = (a ** (2 * r) + b ** (2 * r)) * N**2
            d = data.norm_of(b * T - Ts) ** 2
            rhs = 2 * b**r * w2 + (r * r * b ** (2 * r - 2) if r >= 1 else 1.0) * d
        else:
            x = data.search_set
            lx, rx = pointwise_sides(tid, data, params, Mode.CORRECTED, x, tol)
            slack = np.where(np.isnan(rx - lx), np.inf, rx - lx)
            k = int(np.argmin(slack))
            if not np.isfinite(slack[k]):
                lhs = rhs = 0.0
            else:
                lhs, rhs = float(lx[k]), float(rx[k])
                sample = x[k].copy()
            notes.append(f"pointwise check over {x.shape[0]} unit vectors")

    elif tid is TheoremId.BUZANO_RADIUS:
        lhs = w1**2
        rhs = 0.5 * (b * N**2 + w2)

    elif tid is TheoremId.DUNKL_WILLIAMS:
        lam = complex(params.lam)
        lhs = a * N**2
        rhs = w2 + 2 * b * data.norm_of(T - lam * Ts) ** 2 / (1 + abs(lam) * a) ** 2

    elif tid is TheoremId.QUAD_REVERSE:
        lam = _lam_nonzero(params, tid)
        coef = a * a - (1 / abs(lam) + b) ** 2
        lhs = coef * N**4
        rhs = w2
        if coef <= 0:
            notes.append("structurally vacuous: coefficient is never positive when alpha <= 1 <= beta")

    elif tid is TheoremId.SCHWARZ_REV_QUAD:
        lam = _lam_nonzero(params, tid)
        params = resolved_params(tid, data, params)
        r = float(params.r)
        gap = data.norm_of(lam * Ts - T)
        slop = 1e-12 * max(1.0, r)
        ok = gap <= r + slop and r / abs(lam) <= data.sigma_min_adjoint + slop
        lhs = a * a * N**4
        rhs = w2**2 + r * r / abs(lam) ** 2 * N**2

    elif tid is TheoremId.SCHWARZ_REV_LIN:
        lam = _lam_nonzero(params, tid)
        params = resolved_params(tid, data, params)
        r = float(params.r)
        ok = data.norm_of(lam * Ts - T) <= r + 1e-12 * max(1.0, r)
        lhs = a * N**2
        rhs = w2 + r * r / (2 * abs(lam))

    elif tid is TheoremId.PARALLELOGRAM_POWER:
        p = _need_p(params, tid, 2.0, math.inf)
        lhs = 2 * (1 + a**p) * N**p
        rhs = data.norm_of(T + Ts) ** p + data.norm_of(T - Ts) ** p
        if eval_mode is Mode.PRINTED:
            rhs = 0.5 * rhs

    elif tid is TheoremId.DS_LOWER:
        p = _need_p(params, tid, 1.0, 2.0, closed_lo=False)
        lam, mu = complex(params.lam), complex(params.mu)
        lhs = _ds_coefficient(a, b, lam, mu, p, eval_mode) * N**p
        rhs = data.norm_of(lam * T + mu * Ts) ** p + data.norm_of(lam * T - mu * Ts) ** p

    else:  # pragma: no cover
        raise BadParams(f"unknown theorem {tid}")

    rep = _finish(tid, mode, eval_mode, params, lhs, rhs, ok, notes, data, tol, find_witness, sample)
    return rep


def _finish(tid, mode, eval_mode, params, lhs, rhs, ok, notes, data, tol, find_witness, sample=None):
    rep = make_report(tid, mode, params, lhs, rhs, tol.tol_slack, preconditions_met=ok, notes=notes)
    if rep.passed or not find_witness:
        return rep
    if sample is not None:
        witness, wslack = sample, rep.slack
    else:
        witness, wslack = search_witness(tid, data, params, eval_mode, tol)
    if witness is None:
        return replace(rep, notes=rep.notes + ("no pointwise witness found: the supremum passage is loose",))
    return replace(rep, witness=witness, witness_slack=wslack)
