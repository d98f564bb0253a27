"""Report records shared by the lemma checks, theorem verifiers and the CLI."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field, replace

import numpy as np

__all__ = ["Mode", "InequalityParams", "InequalityReport", "Summary", "summarize"]


class Mode(str, enum.Enum):
    PRINTED = "printed"
    CORRECTED = "corrected"


def _complex_to_json(z: complex) -> list[float]:
    return [float(z.real), float(z.imag)]


def _complex_from_json(v) -> complex:
    if isinstance(v, (list, tuple)):
        return complex(float(v[0]), float(v[1]))
    return complex(v)


def _float_to_json(x):
    if x is None:
        return None
    x = float(x)
    if math.isnan(x):
        return "nan"
    if math.isinf(x):
        return "inf" if x > 0 else "-inf"
    return x


def _float_from_json(x):
    if x is None:
        return None
    return float(x)


@dataclass(frozen=True)
class InequalityParams:
    """Free parameters of a check.

    ``r`` is the power in the Goldstein-Ryff-Clarke family and the radius in
    the reverse-Schwarz theorems (``None`` there means "use the smallest
    admissible radius").  ``p`` is the exponent of the norm inequalities and
    the power-mean exponent.
    """

    r: float | None = None
    lam: complex = 1.0 + 0.0j
    mu: complex = 1.0 + 0.0j
    p: float | None = None

    def __post_init__(self):
        object.__setattr__(self, "lam", complex(self.lam))
        object.__setattr__(self, "mu", complex(self.mu))
        if self.r is not None:
            object.__setattr__(self, "r", float(self.r))
        if self.p is not None:
            object.__setattr__(self, "p", float(self.p))

    def to_dict(self) -> dict:
        return {
            "r": _float_to_json(self.r),
            "lambda": _complex_to_json(complex(self.lam)),
            "mu": _complex_to_json(complex(self.mu)),
            "p": _float_to_json(self.p),
        }

    @classmethod
    def from_dict(cls, d: dict) -> "InequalityParams":
        return cls(
            r=_float_from_json(d.get("r")),
            lam=_complex_from_json(d.get("lambda", [1.0, 0.0])),
            mu=_complex_from_json(d.get("mu", [1.0, 0.0])),
            p=_float_from_json(d.get("p")),
        )


@dataclass(frozen=True)
class InequalityReport:
    """Outcome of one inequality check ``lhs <= rhs``.

    ``passed`` is ``slack >= -tol_slack`` when the hypotheses hold; a check
    whose hypotheses fail is a vacuous pass (``preconditions_met=False``,
    ``passed=True``) and still carries the evaluated sides for inspection.
    ``witness`` is a unit vector at which the pointwise ancestor inequality is
    violated, and is only attached to failed checks.
    """

    theorem: str
    mode: Mode
    params: InequalityParams
    lhs: float
    rhs: float
    slack: float
    passed: bool
    preconditions_met: bool = True
    witness: np.ndarray | None = None
    witness_slack: float | None = None
    operator_index: int | None = None
    error: str | None = None
    notes: tuple[str, ...] = field(default_factory=tuple)

    @property
    def vacuous(self) -> bool:
        return self.error is None and not self.preconditions_met

    @property
    def violation(self) -> bool:
        return not self.passed

    def with_index(self, index: int) -> "InequalityReport":
        return replace(self, operator_index=index)

    def to_dict(self) -> dict:
        return {
            "theorem": self.theorem,
            "mode": self.mode.value,
            "params": self.params.to_dict(),
            "lhs": _float_to_json(self.lhs),
            "rhs": _float_to_json(self.rhs),
            "slack": _float_to_json(self.slack),
            "passed": bool(self.passed),
            "preconditions_met": bool(self.preconditions_met),
            "witness": None if self.witness is None else [_complex_to_json(z) for z in self.witness],
            "witness_slack": _float_to_json(self.witness_slack),
            "operator_index": self.operator_index,
            "error": self.error,
            "notes": list(self.notes),
        }

    @classmethod
    def from_dict(cls, d: dict) -> "InequalityReport":
        w = d.get("witness")
        return cls(
            theorem=d["theorem"],
            mode=Mode(d["mode"]),
            params=InequalityParams.from_dict(d["params"]),
            lhs=_float_from_json(d["lhs"]),
            rhs=_float_from_json(d["rhs"]),
            slack=_float_from_json(d["slack"]),
            passed=bool(d["passed"]),
            preconditions_met=bool(d.get("preconditions_met", True)),
            witness=None if w is None else np.array([_complex_from_json(z) for z in w]),
            witness_slack=_float_from_json(d.get("witness_slack")),
            operator_index=d.get("operator_index"),
            error=d.get("error"),
            notes=tuple(d.get("notes", ())),
        )

    def same_values(self, other: "InequalityReport") -> bool:
        """Equality of everything but ``mode`` (witness arrays compared exactly)."""
        a, b = self.to_dict(), other.to_dict()
        a.pop("mode")
        b.pop("mode")
        return a == b


def make_report(theorem, mode, params, lhs, rhs, tol_slack, preconditions_met=True, notes=()) -> InequalityReport:
    lhs = float(lhs)
    rhs = float(rhs)
    slack = rhs - lhs
    passed = (slack >= -tol_slack) if preconditions_met else True
    return InequalityReport(
        theorem=str(theorem.value if isinstance(theorem, enum.Enum) else theorem),
        mode=Mode(mode),
        params=params,
        lhs=lhs,
        rhs=rhs,
        slack=slack,
        passed=bool(passed),
        preconditions_met=bool(preconditions_met),
        notes=tuple(notes),
    )


def error_report(theorem, mode, params, exc: Exception, operator_index=None) -> InequalityReport:
    return InequalityReport(
        theorem=str(theorem.value if isinstance(theorem, enum.Enum) else theorem),
        mode=Mode(mode),
        params=params,
        lhs=math.nan,
        rhs=math.nan,
        slack=math.nan,
        passed=False,
        preconditions_met=False,
        operator_index=operator_index,
        error=f"{type(exc).__name__}: {exc}",
    )


@dataclass(frozen=True)
class Summary:
    passed: int = 0
    failed: int = 0
    vacuous: int = 0
    errors: int = 0

    def to_dict(self) -> dict:
        return dict(self.__dict__)

    @classmethod
    def from_dict(cls, d: dict) -> "Summary":
        return cls(**d)


def summarize(reports) -> Summary:
    """Tally reports: ``passed`` counts non-vacuous passes; errors count as failed."""
    passed = failed = vacuous = errors = 0
    for rep in reports:
        if rep.error is not None:
            errors += 1
            failed += 1
        elif not rep.passed:
            failed += 1
        elif not rep.preconditions_met:
            vacuous += 1
        else:
            passed += 1
    return Summary(passed, failed, vacuous, errors)
