"""Batch evaluation of theorem checks over seeded ensembles."""

from __future__ import annotations

from typing import Iterable, Sequence

from .errors import OpIneqError
from .generators import EnsembleSpec, generate_one
from .linalg import DEFAULT_TOL, Tolerances
from .reports import InequalityParams, InequalityReport, Mode, error_report, summarize
from .theorems import OperatorData, TheoremId, verify_theorem

__all__ = ["default_params", "default_grid", "expand_modes", "sweep_operators", "sweep", "summarize"]

LAMBDAS = (1 + 0j, 1j, 1 + 1j, 2 + 0j)
MUS = (1 + 0j, 1j)


def default_params(tid: TheoremId) -> list[InequalityParams]:
    """Parameter grid used when the caller gives none."""
    tid = TheoremId(tid)
    if tid is TheoremId.GRC_POWER:
        return [InequalityParams(r=r) for r in (0.5, 1.0, 2.0)]
    if tid is TheoremId.BUZANO_RADIUS:
        return [InequalityParams()]
    if tid in (TheoremId.DUNKL_WILLIAMS, TheoremId.QUAD_REVERSE):
        return [InequalityParams(lam=lam) for lam in LAMBDAS]
    if tid in (TheoremId.SCHWARZ_REV_QUAD, TheoremId.SCHWARZ_REV_LIN):
        # r=None: smallest admissible radius ||lambda T* - T||
        return [InequalityParams(lam=1)]
    if tid in (TheoremId.PARALLELOGRAM_POWER, TheoremId.HALF_SUM_NORM):
        return [InequalityParams(p=p) for p in (2.0, 3.0, 4.0)]
    if tid is TheoremId.DS_LOWER:
        return [InequalityParams(p=p, lam=lam, mu=mu) for p in (1.25, 1.5, 1.75) for lam in LAMBDAS for mu in MUS]
    raise ValueError(tid)  # pragma: no cover


def default_grid(theorems: Iterable[TheoremId] = tuple(TheoremId)) -> list[tuple[TheoremId, InequalityParams]]:
    return [(TheoremId(t), p) for t in theorems for p in default_params(t)]


def expand_modes(grid, modes: Sequence[Mode]) -> list[tuple[TheoremId, InequalityParams, Mode]]:
    return [(tid, params, Mode(m)) for tid, params in grid for m in modes]


def sweep_operators(operators, checks, tol: Tolerances = DEFAULT_TOL, start_index: int = 0) -> list[InequalityReport]:
    """One report per (operator, check), ordered by operator then check.

    Errors raised by a single check become failed reports carrying the error
    text; the batch never aborts.
    """
    reports = []
    for k, t in enumerate(operators, start=start_index):
        data = OperatorData(t, tol)
        for tid, params, mode in checks:
            try:
                rep = verify_theorem(tid, data, params, mode, tol)
            except OpIneqError as exc:
                rep = error_report(tid, mode, params, exc)
            reports.append(rep.with_index(k))
    return reports


def sweep(spec: EnsembleSpec, checks, tol: Tolerances = DEFAULT_TOL) -> list[InequalityReport]:
    """Run ``checks`` (triples of theorem, params, mode) on every ensemble member."""
    operators = (generate_one(spec, k) for k in range(spec.count))
    return sweep_operators(operators, checks, tol)
