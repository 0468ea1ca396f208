"""Command line interface: ``twistfuse {list,fuse,nimrep,verify}``.

Exit codes: 0 ok, 1 verification failure, 2 usage or domain error,
3 internal invariant breach.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from . import folding
from .folding import AUTOMORPHISM_NAMES, FoldingError, enumerate_B, enumerate_P, enumerate_S
from .fusion import NegativeCoefficientError, nimrep, twisted_fusion
from .oracle import DEFAULT_TOLERANCE, fusion_numeric_matrix
from .rootdata import AlgebraError, as_weight, parse_algebra

EXIT_OK = 0
EXIT_VERIFY = 1
EXIT_USAGE = 2
EXIT_INTERNAL = 3

IMAG_TOLERANCE = 1e-9


class UsageError(Exception):
    pass


def format_label(x) -> str:
    return str(Fraction(x))


def format_labels(w: Sequence) -> str:
    return ",".join(format_label(x) for x in w)


def parse_labels(text: str, fractional: bool = False) -> tuple:
    try:
        vals = [Fraction(t.strip()) for t in text.split(",")]
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"cannot parse labels {text!r}") from None
    if not fractional and any(v.denominator != 1 for v in vals):
        raise UsageError(f"fractional labels only allowed for boundary weights: {text!r}")
    return as_weight(vals)


@dataclass(frozen=True)
class JobSpec:
    algebra: str
    automorphism: str = "trivial"
    level: int = 0
    rep: tuple | None = None
    boundary: tuple | None = None
    format: str = "text"

    def to_argv(self) -> list[str]:
        argv = ["--algebra", self.algebra, "--automorphism", self.automorphism,
                "--level", str(self.level), "--format", self.format]
        if self.rep is not None:
            argv += ["--rep", format_labels(self.rep)]
        if self.boundary is not None:
            argv += ["--boundary", format_labels(self.boundary)]
        return argv

    @classmethod
    def from_args(cls, args) -> "JobSpec":
        return cls(
            algebra=args.algebra,
            automorphism=args.automorphism,
            level=args.level,
            rep=parse_labels(args.rep) if args.rep is not None else None,
            boundary=parse_labels(args.boundary, fractional=True)
            if args.boundary is not None else None,
            format=args.format,
        )

    def resolve(self):
        try:
            spec = parse_algebra(self.algebra)
            aut = folding.named_automorphism(spec, self.automorphism)
        except AlgebraError as e:
            raise UsageError(str(e)) from None
        if self.level < 0:
            raise UsageError("level must be non-negative")
        return spec, aut


def _header(job: JobSpec) -> dict:
    return {"algebra": job.algebra, "automorphism": job.automorphism, "level": job.level}


def _json_weights(ws) -> list:
    return [[format_label(x) for x in w] for w in ws]


def _text_weight(w) -> str:
    return "[" + ", ".join(format_label(x) for x in w) + "]"


def _emit(payload: dict, lines: list[str], fmt: str) -> None:
    if fmt == "json":
        print(json.dumps(payload, indent=2))
    else:
        print("\n".join(lines))


def cmd_list(job: JobSpec, what: str) -> int:
    spec, aut = job.resolve()
    tables = {
        "reps": lambda: enumerate_P(spec, job.level),
        "symmetric": lambda: enumerate_S(aut, job.level),
        "boundaries": lambda: enumerate_B(aut, job.level),
    }
    kinds = list(tables) if what == "all" else [what]
    payload = _header(job)
    lines = [f"{spec.name} {aut.name} level {job.level}"]
    for kind in kinds:
        ws = tables[kind]()
        payload[kind] = _json_weights(ws)
        lines.append(f"{kind} ({len(ws)}):")
        lines += [f"  {n:3d}  {_text_weight(w)}" for n, w in enumerate(ws)]
    _emit(payload, lines, job.format)
    return EXIT_OK


def _require_rep(job: JobSpec, spec):
    if job.rep is None:
        raise UsageError("--rep is required")
    if not folding.in_P(job.rep, spec, job.level):
        raise UsageError(f"rep {_text_weight(job.rep)} is not in P_{job.level}^+ of {spec.name}")
    return job.rep


def cmd_fuse(job: JobSpec) -> int:
    spec, aut = job.resolve()
    rep = _require_rep(job, spec)
    if job.boundary is None:
        raise UsageError("--boundary is required")
    if not folding.in_B(job.boundary, aut, job.level):
        raise UsageError(f"boundary {_text_weight(job.boundary)} is not in B_{job.level}^+")
    coeffs = twisted_fusion(rep, job.boundary, job.level, aut)
    index = enumerate_B(aut, job.level)
    payload = _header(job)
    payload.update(rep=_json_weights([rep])[0], boundary=_json_weights([job.boundary])[0],
                   index_order=_json_weights(index),
                   coefficients=[coeffs.get(b, 0) for b in index])
    lines = [f"{_text_weight(rep)} * {_text_weight(job.boundary)} "
             f"({spec.name} {aut.name} level {job.level}):"]
    lines += [f"  {c} x {_text_weight(b)}" for b, c in coeffs.items()]
    _emit(payload, lines, job.format)
    return EXIT_OK


def cmd_nimrep(job: JobSpec) -> int:
    spec, aut = job.resolve()
    reps = [_require_rep(job, spec)] if job.rep is not None else enumerate_P(spec, job.level)
    index = enumerate_B(aut, job.level)
    mats = [nimrep(i, job.level, aut) for i in reps]
    payload = _header(job)
    payload.update(index_order=_json_weights(index),
                   matrices=[{"rep": _json_weights([m.rep])[0],
                              "matrix": m.entries.tolist()} for m in mats])
    lines = [f"{spec.name} {aut.name} level {job.level}; index order:"]
    lines += [f"  {n:3d}  {_text_weight(b)}" for n, b in enumerate(index)]
    for m in mats:
        lines.append(f"N_{_text_weight(m.rep)} =")
        lines += ["  " + " ".join(f"{x:3d}" for x in row) for row in m.entries]
    _emit(payload, lines, job.format)
    return EXIT_OK


def verify_level(aut, k: int, tolerance: float) -> dict:
    """Compare the folding algorithm with the S-matrix oracle at one level."""
    spec = aut.spec
    index = enumerate_B(aut, k)
    report = {"level": k, "triples": 0, "max_residual": 0.0, "max_imag": 0.0,
              "mismatch": None, "negative": None, "error": None}
    for i in enumerate_P(spec, k):
        try:
            M = nimrep(i, k, aut, strict=False).entries
            V = fusion_numeric_matrix(i, k, aut)
        except (FoldingError, AlgebraError) as e:
            report["error"] = f"rep {format_labels(i)}: {e}"
            return report
        report["triples"] += M.size
        resid = np.abs(V - np.round(V.real))
        report["max_residual"] = max(report["max_residual"], float(resid.max()))
        report["max_imag"] = max(report["max_imag"], float(np.abs(V.imag).max()))
        for b, a in np.ndindex(M.shape):
            triple = [format_labels(i), format_labels(index[a]), format_labels(index[b])]
            if report["negative"] is None and M[b, a] < 0:
                report["negative"] = triple + [int(M[b, a])]
            if report["mismatch"] is None and (
                    round(V[b, a].real) != M[b, a] or resid[b, a] >= tolerance
                    or abs(V[b, a].imag) >= IMAG_TOLERANCE):
                report["mismatch"] = triple + [int(M[b, a]), f"{V[b, a].real:.12g}"]
    return report


def _passed(r: dict) -> bool:
    return r["mismatch"] is None and r["negative"] is None and r["error"] is None


def cmd_verify(job: JobSpec, max_level: int | None, tolerance: float) -> int:
    spec, aut = job.resolve()
    top = max_level if max_level is not None else job.level
    lo = 1 if max_level is not None else job.level
    if top < lo:
        raise UsageError("nothing to verify: use --max-level >= 1 or --level")
    reports = [verify_level(aut, k, tolerance) for k in range(lo, top + 1)]
    ok = all(_passed(r) for r in reports)
    payload = _header(job)
    payload.pop("level")
    payload.update(tolerance=tolerance, levels=reports, status="pass" if ok else "fail")
    lines = []
    for r in reports:
        status = "pass" if _passed(r) else "FAIL"
        lines.append(f"{spec.name} {aut.name} level {r['level']}: {status}  "
                     f"triples={r['triples']} max_residual={r['max_residual']:.3e} "
                     f"max_imag={r['max_imag']:.3e}")
        if r["error"]:
            lines.append(f"  error: {r['error']}")
        if r["negative"]:
            lines.append("  negative entry N_{%s,%s}^%s = %d" % tuple(r["negative"]))
        if r["mismatch"]:
            lines.append("  first mismatch (i, alpha, beta) = (%s; %s; %s): "
                         "folding %d, oracle %s" % tuple(r["mismatch"]))
    _emit(payload, lines, job.format)
    return EXIT_OK if ok else EXIT_VERIFY


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--algebra", required=True, help="e.g. A2, D4, E6")
    common.add_argument("--automorphism", default="trivial", choices=AUTOMORPHISM_NAMES)
    common.add_argument("--level", type=int, default=0)
    common.add_argument("--format", default="text", choices=("text", "json"))

    parser = argparse.ArgumentParser(prog="twistfuse", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    p = sub.add_parser("list", parents=[common], help="enumerate P_k^+, S_k^+, B_k^+")
    p.add_argument("what", nargs="?", default="all",
                   choices=("all", "reps", "symmetric", "boundaries"))
    p = sub.add_parser("fuse", parents=[common], help="twisted fusion rep * boundary")
    p.add_argument("--rep", required=True)
    p.add_argument("--boundary", required=True)
    p = sub.add_parser("nimrep", parents=[common], help="annulus matrices")
    p.add_argument("--rep")
    p = sub.add_parser("verify", parents=[common], help="compare with the S-matrix oracle")
    p.add_argument("--max-level", type=int)
    p.add_argument("--tolerance", type=float, default=DEFAULT_TOLERANCE)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_USAGE if e.code else EXIT_OK
    try:
        args.rep = getattr(args, "rep", None)
        args.boundary = getattr(args, "boundary", None)
        job = JobSpec.from_args(args)
        if args.command == "list":
            return cmd_list(job, args.what)
        if args.command == "fuse":
            return cmd_fuse(job)
        if args.command == "nimrep":
            return cmd_nimrep(job)
        return cmd_verify(job, args.max_level, args.tolerance)
    except (UsageError, AlgebraError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except (NegativeCoefficientError, FoldingError) as e:
        print(f"internal error: {e}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
