"""JSON report document emitted by the command-line tool."""

from __future__ import annotations

import hashlib
import json
import math
from dataclasses import dataclass, field

import numpy as np

from . import __version__
from .operators import FactorizationResult, OperatorProfile
from .reports import InequalityReport, Summary, summarize

__all__ = ["ReportDocument", "factorization_to_dict", "digest_bytes", "digest_json"]


def digest_bytes(data: bytes) -> str:
    return "sha256:" + hashlib.sha256(data).hexdigest()


def digest_json(obj) -> str:
    return digest_bytes(json.dumps(obj, sort_keys=True, separators=(",", ":")).encode())


def _num(x):
    if x is None:
        return None
    x = float(x)
    if math.isinf(x):
        return "inf" if x > 0 else "-inf"
    if math.isnan(x):
        return "nan"
    return x


def factorization_to_dict(f: FactorizationResult) -> dict:
    m = np.asarray(f.factor)
    return {
        "label": f.label,
        "factor": {
            "rows": m.shape[0],
            "cols": m.shape[1],
            "entries": [[float(z.real), float(z.imag)] for z in m.ravel()],
        },
        "residual": _num(f.residual),
        "factor_norm": _num(f.factor_norm),
        "factor_norm_sq": _num(f.factor_norm_sq),
        "certified_infimum": _num(f.certified_infimum),
        "stated_constant": _num(f.stated_constant),
        "norm_sq_matches_infimum": f.norm_sq_matches_infimum(),
        "norm_matches_infimum": f.norm_matches_infimum(),
        "kernel_match": bool(f.kernel_match),
        "range_containment": bool(f.range_containment),
        "range_angle": _num(f.range_angle),
    }


@dataclass
class ReportDocument:
    input_digest: str
    reports: list[InequalityReport] = field(default_factory=list)
    profile: OperatorProfile | None = None
    factorizations: list[dict] = field(default_factory=list)
    ensemble: dict | None = None
    tool_version: str = __version__
    summary: Summary | None = None

    def __post_init__(self):
        if self.summary is None:
            self.summary = summarize(self.reports)

    def to_dict(self) -> dict:
        return {
            "tool_version": self.tool_version,
            "input_digest": self.input_digest,
            "ensemble": self.ensemble,
            "profile": None if self.profile is None else self.profile.to_dict(),
            "reports": [r.to_dict() for r in self.reports],
            "factorizations": self.factorizations,
            "summary": self.summary.to_dict(),
        }

    def to_json(self, indent: int | None = 2) -> str:
        return json.dumps(self.to_dict(), indent=indent, sort_keys=False)

    @classmethod
    def from_dict(cls, d: dict) -> "ReportDocument":
        return cls(
            input_digest=d["input_digest"],
            reports=[InequalityReport.from_dict(r) for r in d.get("reports", [])],
            profile=None if d.get("profile") is None else OperatorProfile.from_dict(d["profile"]),
            factorizations=list(d.get("factorizations", [])),
            ensemble=d.get("ensemble"),
            tool_version=d.get("tool_version", ""),
            summary=Summary.from_dict(d["summary"]) if d.get("summary") else None,
        )

    @classmethod
    def from_json(cls, text: str) -> "ReportDocument":
        return cls.from_dict(json.loads(text))

    def exit_code(self) -> int:
        return 0 if self.summary.failed == 0 else 1
