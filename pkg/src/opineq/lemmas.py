"""Classical vector inequalities used as proof ingredients.

Every check evaluates ``lhs <= rhs`` for vectors ``a``, ``b`` in C^n.  For the
two reverse-Schwarz lemmas the second vector plays the role of ``y`` in
``||y - a|| <= r``.  Inner products are linear in the first slot:
``<a, b> = sum a_i conj(b_i)``.
"""

from __future__ import annotations

import enum
import math

import numpy as np

from .errors import BadParams
from .linalg import DEFAULT_TOL, Tolerances
from .reports import InequalityParams, InequalityReport, Mode, make_report

__all__ = ["LemmaId", "check_vector_lemma", "inner"]


class LemmaId(str, enum.Enum):
    GRC_VEC = "GRC_VEC"
    BUZANO = "BUZANO"
    DUNKL_WILLIAMS_VEC = "DUNKL_WILLIAMS_VEC"
    DRAGOMIR_QUAD = "DRAGOMIR_QUAD"
    DRAGOMIR_R = "DRAGOMIR_R"
    DRAGOMIR_RRR = "DRAGOMIR_RRR"
    DS_UPPER = "DS_UPPER"
    DS_LOWER_VEC = "DS_LOWER_VEC"
    POWER_MEAN = "POWER_MEAN"


def inner(a, b) -> complex:
    return complex(np.vdot(b, a))


def _norm(v) -> float:
    # cheaper than numpy.linalg.norm on the short vectors used here
    return math.sqrt(np.vdot(v, v).real)


def _vec(v, name) -> np.ndarray:
    v = np.asarray(v, dtype=np.complex128).ravel()
    if v.size == 0 or not math.isfinite(np.abs(v).max()):
        raise BadParams(f"{name} must be a non-empty finite vector")
    return v


def _need(value, name, lemma):
    if value is None:
        raise BadParams(f"{lemma.value} needs parameter {name}")
    return value


def check_vector_lemma(
    lemma: LemmaId | str,
    a,
    b,
    params: InequalityParams = InequalityParams(),
    tol: Tolerances = DEFAULT_TOL,
    e=None,
) -> InequalityReport:
    """Evaluate one classical vector inequality at ``(a, b)``.

    A failed hypothesis (for instance ``||a|| < ||b||`` for GRC_VEC) is not an
    error: the report comes back as a vacuous pass with
    ``preconditions_met=False``.  Out-of-domain parameters raise
    :class:`BadParams`.
    """
    lemma = LemmaId(lemma)
    a = _vec(a, "a")
    b = _vec(b, "b")
    if a.shape != b.shape:
        raise BadParams(f"a and b differ in length: {a.size} vs {b.size}")
    na, nb = _norm(a), _norm(b)
    ok = True
    notes = ()

    if lemma is LemmaId.GRC_VEC:
        r = float(_need(params.r, "r", lemma))
        if na == 0.0 or nb == 0.0:
            raise BadParams("GRC_VEC divides by ||a|| ||b||; both must be nonzero")
        ok = na >= nb
        lhs = na ** (2 * r) + nb ** (2 * r) - 2.0 * na**r * nb**r * inner(a, b).real / (na * nb)
        if r >= 1.0:
            rhs = r * r * na ** (2 * r - 2) * _norm(a - b) ** 2
        else:
            rhs = nb ** (2 * r - 2) * _norm(a - b) ** 2

    elif lemma is LemmaId.BUZANO:
        if e is None:
            raise BadParams("BUZANO needs a unit vector e")
        e = _vec(e, "e")
        if e.shape != a.shape:
            raise BadParams("e must have the same length as a and b")
        if abs(_norm(e) - 1.0) > 1e-12:
            raise BadParams(f"e must be a unit vector, ||e|| = {_norm(e)!r}")
        lhs = abs(inner(a, e) * inner(e, b))
        rhs = 0.5 * (na * nb + abs(inner(a, b)))

    elif lemma is LemmaId.DUNKL_WILLIAMS_VEC:
        if na == 0.0 or nb == 0.0:
            raise BadParams("DUNKL_WILLIAMS_VEC needs nonzero a and b")
        lhs = 0.5 * (na + nb) * _norm(a / na - b / nb)
        rhs = _norm(a - b)

    elif lemma is LemmaId.DRAGOMIR_QUAD:
        lam = complex(params.lam)
        if lam == 0:
            raise BadParams("DRAGOMIR_QUAD needs lambda != 0")
        lhs = na**2 * nb**2 - abs(inner(a, b)) ** 2
        rhs = na**2 * _norm(a - lam * b) ** 2 / abs(lam) ** 2

    elif lemma is LemmaId.DRAGOMIR_R:
        r = float(_need(params.r, "r", lemma))
        if r < 0:
            raise BadParams("DRAGOMIR_R needs r >= 0")
        y = b
        ok = _norm(y - a) <= r <= na
        lhs = nb**2 * na**2 - inner(y, a).real ** 2
        rhs = r * r * nb**2

    elif lemma is LemmaId.DRAGOMIR_RRR:
        r = float(_need(params.r, "r", lemma))
        if r < 0:
            raise BadParams("DRAGOMIR_RRR needs r >= 0")
        y = b
        ok = _norm(y - a) <= r
        lhs = nb * na - inner(y, a).real
        rhs = 0.5 * r * r

    elif lemma is LemmaId.DS_UPPER:
        p = float(_need(params.p, "p", lemma))
        if p < 2:
            raise BadParams("DS_UPPER needs p >= 2")
        lhs = 2.0 * (na**p + nb**p)
        rhs = _norm(a + b) ** p + _norm(a - b) ** p

    elif lemma is LemmaId.DS_LOWER_VEC:
        p = float(_need(params.p, "p", lemma))
        if not 1 < p < 2:
            raise BadParams("DS_LOWER_VEC needs 1 < p < 2")
        lhs = (na + nb) ** p + abs(na - nb) ** p
        rhs = _norm(a + b) ** p + _norm(a - b) ** p

    elif lemma is LemmaId.POWER_MEAN:
        # scalars are the norms of a and b; the exponent is params.p
        q = float(_need(params.p, "p", lemma))
        if q < 1:
            raise BadParams("POWER_MEAN needs exponent >= 1")
        lhs = (0.5 * (na + nb)) ** q
        rhs = 0.5 * (na**q + nb**q)
        notes = ("scalars are ||a|| and ||b||",)

    else:  # pragma: no cover
        raise BadParams(f"unknown lemma {lemma}")

    return make_report(lemma, Mode.CORRECTED, params, lhs, rhs, tol.tol_slack, preconditions_met=ok, notes=notes)
