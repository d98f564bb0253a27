"""Command-line front end.

Exit codes: 0 when every non-vacuous check passed, 1 on a violation (or a
failed majorization), 2 on input or usage errors.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import replace
from pathlib import Path
from typing import Sequence

from .document import ReportDocument, digest_bytes, digest_json, factorization_to_dict
from .errors import BadParams, BadSpec, MatrixParseError, NotMajorized, NotSquare, OpIneqError
from .generators import EnsembleKind, EnsembleSpec
from .linalg import Tolerances
from .matrix_io import parse_matrix, serialize_matrix
from .operators import douglas_factorization, profile, pseudo_inverse
from .reports import InequalityParams, Mode
from .sweep import default_grid, expand_modes, sweep, sweep_operators
from .theorems import TheoremId

EXIT_OK, EXIT_VIOLATION, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def parse_complex(text: str) -> complex:
    s = text.strip().replace(" ", "").replace("i", "j").replace("I", "j")
    if s in ("j", "+j", "-j"):
        s = s.replace("j", "1j")
    try:
        return complex(s)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a complex number: {text!r}") from None


def _tolerances(args) -> Tolerances:
    try:
        return Tolerances(tol_eig=args.tol_eig, tol_psd=args.tol_psd, tol_slack=args.tol_slack)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _load(path: str):
    p = Path(path)
    try:
        data = p.read_bytes()
    except OSError as exc:
        raise UsageError(f"{path}: {exc.strerror}") from None
    try:
        m = parse_matrix(data.decode())
    except MatrixParseError as exc:
        raise UsageError(f"{path}: {exc}") from None
    except UnicodeDecodeError:
        raise UsageError(f"{path}: not a text file") from None
    return m, digest_bytes(data)


def _emit(doc: ReportDocument, as_json: bool, human: str) -> None:
    if as_json:
        print(doc.to_json())
    else:
        print(human)


def _fmt(x) -> str:
    return "undefined" if x is None else f"{x:.12g}"


def _format_profile(pr) -> str:
    rows = [
        ("alpha_sq", _fmt(pr.alpha_sq)),
        ("beta_sq", _fmt(pr.beta_sq)),
        ("alpha_opt", _fmt(pr.alpha_opt)),
        ("beta_opt", _fmt(pr.beta_opt)),
        ("numerical_radius", _fmt(pr.numerical_radius)),
        ("numerical_radius_of_square", _fmt(pr.numerical_radius_of_square)),
        ("op_norm", _fmt(pr.op_norm)),
        ("kernel_dim", str(pr.kernel_dim)),
        ("kernels_equal", str(pr.kernels_equal)),
        ("is_ab_normal", str(pr.is_ab_normal)),
    ]
    width = max(len(k) for k, _ in rows)
    return "\n".join(f"{k:<{width}}  {v}" for k, v in rows)


def _format_reports(doc: ReportDocument) -> str:
    lines = []
    for r in doc.reports:
        if r.error:
            tag = "ERROR"
        elif not r.preconditions_met:
            tag = "VACUOUS"
        else:
            tag = "PASS" if r.passed else "FAIL"
        idx = "" if r.operator_index is None else f"#{r.operator_index} "
        p = r.params
        par = f"r={p.r} lambda={p.lam} mu={p.mu} p={p.p}"
        if r.error:
            lines.append(f"[{tag}] {idx}{r.theorem} ({r.mode.value}) {par}: {r.error}")
        else:
            lines.append(
                f"[{tag}] {idx}{r.theorem} ({r.mode.value}) {par}: "
                f"lhs={r.lhs:.12g} rhs={r.rhs:.12g} slack={r.slack:.3e}"
            )
            if r.witness is not None:
                vec = ", ".join(f"{z.real:.6g}{z.imag:+.6g}i" for z in r.witness)
                lines.append(f"        witness (pointwise slack {r.witness_slack:.3e}): [{vec}]")
    s = doc.summary
    lines.append(f"summary: passed={s.passed} failed={s.failed} vacuous={s.vacuous} errors={s.errors}")
    return "\n".join(lines)


def _modes(mode: str):
    return [Mode.PRINTED, Mode.CORRECTED] if mode == "both" else [Mode(mode)]


def _theorems(spec: str):
    if spec.strip().lower() == "all":
        return list(TheoremId)
    try:
        return [TheoremId.parse(s) for s in spec.split(",") if s.strip()]
    except BadParams as exc:
        raise UsageError(str(exc)) from None


def cmd_analyze(args) -> int:
    tol = _tolerances(args)
    t, digest = _load(args.path)
    try:
        pr = profile(t, tol)
    except NotSquare as exc:
        raise UsageError(f"{args.path}: {exc}") from None
    doc = ReportDocument(input_digest=digest, profile=pr)
    _emit(doc, args.json, _format_profile(pr))
    return EXIT_OK


def cmd_verify(args) -> int:
    tol = _tolerances(args)
    t, digest = _load(args.path)
    if t.shape[0] != t.shape[1]:
        raise UsageError(f"{args.path}: expected a square matrix, got {t.shape[0]}x{t.shape[1]}")
    ids = _theorems(args.theorem)
    explicit = any(v is not None for v in (args.r, args.lam, args.mu, args.p))
    if explicit:
        params = InequalityParams(
            r=args.r,
            lam=1 if args.lam is None else args.lam,
            mu=1 if args.mu is None else args.mu,
            p=args.p,
        )
        grid = [(tid, params) for tid in ids]
    else:
        grid = default_grid(ids)
    checks = expand_modes(grid, _modes(args.mode))
    reports = sweep_operators([t], checks, tol)
    bad = [r for r in reports if r.error and r.error.startswith("BadParams")]
    if bad:
        raise UsageError(bad[0].error)
    reports = [replace(r, operator_index=None) for r in reports]
    doc = ReportDocument(input_digest=digest, reports=reports)
    _emit(doc, args.json, _format_reports(doc))
    return doc.exit_code()


def cmd_sweep(args) -> int:
    tol = _tolerances(args)
    try:
        spec = EnsembleSpec(EnsembleKind.parse(args.kind), args.dim, args.count, args.seed, args.scale)
    except BadSpec as exc:
        raise UsageError(f"BadSpec: {exc}") from None
    checks = expand_modes(default_grid(_theorems(args.theorems)), _modes(args.mode))
    reports = sweep(spec, checks, tol)
    bad = [r for r in reports if r.error and r.error.startswith("BadParams")]
    if bad:
        raise UsageError(bad[0].error)
    header = spec.to_dict()
    digest = digest_json(
        {
            "ensemble": header,
            "checks": [[tid.value, p.to_dict(), m.value] for tid, p, m in checks],
            "tolerances": tol.__dict__,
        }
    )
    doc = ReportDocument(input_digest=digest, reports=reports, ensemble=header)
    if args.json:
        print(doc.to_json())
    else:
        s = doc.summary
        failed = [r for r in reports if not r.passed]
        lines = [f"ensemble: {header}", f"checks per operator: {len(checks)}"]
        lines.extend(_format_reports(ReportDocument(input_digest=digest, reports=failed)).splitlines()[:-1])
        lines.append(f"summary: passed={s.passed} failed={s.failed} vacuous={s.vacuous} errors={s.errors}")
        print("\n".join(lines))
    return doc.exit_code()


def cmd_douglas(args) -> int:
    tol = _tolerances(args)
    t, dt = _load(args.path_t)
    s, ds = _load(args.path_s)
    if t.shape != s.shape:
        raise UsageError(f"shape mismatch: T is {t.shape[0]}x{t.shape[1]}, S is {s.shape[0]}x{s.shape[1]}")
    digest = digest_json({"T": dt, "S": ds})
    try:
        f = douglas_factorization(t, s, tol)
    except NotMajorized as exc:
        print(f"not majorized: {exc}", file=sys.stderr)
        if args.json:
            print(ReportDocument(input_digest=digest).to_json())
        return EXIT_VIOLATION
    fd = factorization_to_dict(f)
    doc = ReportDocument(input_digest=digest, factorizations=[fd])
    human = "\n".join(
        [
            "R =",
            serialize_matrix(f.factor).rstrip(),
            f"residual ||SR - T||        {f.residual:.3e}",
            f"||R||                      {f.factor_norm:.12g}",
            f"||R||^2                    {f.factor_norm_sq:.12g}",
            f"inf{{mu : TT* <= mu SS*}}    {f.certified_infimum:.12g}",
            f"||R||^2 matches infimum    {fd['norm_sq_matches_infimum']}",
            f"ker(R) = ker(T)            {f.kernel_match}",
            f"ran(R) in ran(S*)          {f.range_containment}",
        ]
    )
    _emit(doc, args.json, human)
    return EXIT_OK


def cmd_pinv(args) -> int:
    tol = _tolerances(args)
    t, _ = _load(args.path)
    text = serialize_matrix(pseudo_inverse(t, tol))
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    tolp = argparse.ArgumentParser(add_help=False)
    d = Tolerances()
    tolp.add_argument("--tol-eig", type=float, default=d.tol_eig)
    tolp.add_argument("--tol-psd", type=float, default=d.tol_psd)
    tolp.add_argument("--tol-slack", type=float, default=d.tol_slack)

    parser = argparse.ArgumentParser(prog="opineq", description="(alpha, beta)-normal operator toolkit")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", parents=[tolp], help="profile one operator")
    p.add_argument("path")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("verify", parents=[tolp], help="check theorems on one operator")
    p.add_argument("path")
    p.add_argument("--theorem", default="all", help="theorem id, comma list, or 'all'")
    p.add_argument("--mode", choices=["printed", "corrected", "both"], default="both")
    p.add_argument("--r", type=float)
    p.add_argument("--lambda", dest="lam", type=parse_complex)
    p.add_argument("--mu", type=parse_complex)
    p.add_argument("--p", type=float)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("sweep", parents=[tolp], help="check theorems over a seeded ensemble")
    p.add_argument("--kind", default="Invertible", help=", ".join(k.value for k in EnsembleKind))
    p.add_argument("--dim", type=int, default=4)
    p.add_argument("--count", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--scale", type=float, default=1.0)
    p.add_argument("--theorems", default="all")
    p.add_argument("--mode", choices=["printed", "corrected", "both"], default="corrected")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("douglas", parents=[tolp], help="factor T = S R")
    p.add_argument("path_t")
    p.add_argument("path_s")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_douglas)

    p = sub.add_parser("pinv", parents=[tolp], help="Moore-Penrose pseudo-inverse")
    p.add_argument("path")
    p.add_argument("--out")
    p.set_defaults(func=cmd_pinv)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OpIneqError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_VIOLATION


def run() -> None:
    raise SystemExit(main())


if __name__ == "__main__":
    run()
