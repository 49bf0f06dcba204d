"""Command line entry point: ``python -m higgs_spectra <command> ...``.

Exit codes: 0 when every hard check passes, 1 on a numerical breach, 2 on a
usage or configuration error.
"""
from __future__ import annotations

import argparse
import sys
from dataclasses import asdict, dataclass

import numpy as np

from . import bargmann, published_tables
from .expr_io import eigenvalues_csv, emit_report, scan_csv
from .operator_zoo import (
    InvalidParams,
    DeformationParams,
    diff_h1_table,
    dyson_maleev_sign,
    non_hermiticity_witnesses,
    verify_algebra,
)
from .pt_symmetry import ConjugationSpec, biorthogonality_check, classify_states

EXIT_OK, EXIT_BREACH, EXIT_USAGE = 0, 1, 2
DEFAULT_SPECS = "1,2,3,13,23,12,123"


@dataclass(frozen=True)
class RunConfig:
    command: str
    gamma: float = 0.6
    c: float = 3.0
    beta: float = 1.0
    p: float = 1.0
    n: int = 2
    specs: tuple[str, ...] = tuple(DEFAULT_SPECS.split(","))
    fmt: str = "json"
    out: str | None = None
    c_min: float = -1.0
    c_max: float = 4.0
    c_step: float = 0.25
    imag_tol: float = 1e-9
    block_tol: float = bargmann.BLOCK_TOL
    check_paper: bool = False
    strict: bool = False
    source: str = "operator"

    def __post_init__(self) -> None:
        if not 0 <= self.gamma < 1:
            raise InvalidParams(f"gamma must lie in [0, 1), got {self.gamma}")
        if self.n < 0:
            raise InvalidParams("n must be non-negative")
        if self.imag_tol <= 0 or self.block_tol <= 0:
            raise InvalidParams("tolerances must be positive")
        if self.c_step <= 0:
            raise InvalidParams("c-step must be positive")

    def params(self) -> DeformationParams:
        return DeformationParams.from_gamma(self.gamma, c=self.c, p=self.p, beta=self.beta)


def _parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--gamma", type=float, default=0.6)
    common.add_argument("--c", type=float, default=3.0)
    common.add_argument("--beta", type=float, default=1.0)
    common.add_argument("--p", type=float, default=1.0)
    common.add_argument("--n", type=int, default=2, help="degree of the homogeneous space")
    common.add_argument("--format", dest="fmt", choices=("json", "csv"), default=None)
    common.add_argument("--out", default=None, help="write output here instead of stdout")
    common.add_argument("--imag-tol", type=float, default=1e-9)
    common.add_argument("--block-tol", type=float, default=bargmann.BLOCK_TOL)

    ap = argparse.ArgumentParser(prog="higgs-spectra", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)
    sub.add_parser("verify-algebra", parents=[common], help="commutation-relation residuals")
    sp = sub.add_parser("spectrum", parents=[common], help="block spectrum of H1")
    sp.add_argument("--check-paper", action="store_true")
    sp.add_argument("--strict", action="store_true", help="exit 1 when tabulated eigenvalues are missing")
    pt = sub.add_parser("classify-pt", parents=[common], help="partial PT classification")
    pt.add_argument("--specs", default=DEFAULT_SPECS, help="comma separated mode sets, e.g. 1,13,123")
    pt.add_argument("--check-paper", action="store_true")
    sc = sub.add_parser("scan", parents=[common], help="degeneracy scan over c")
    sc.add_argument("--c-min", type=float, default=-1.0)
    sc.add_argument("--c-max", type=float, default=4.0)
    sc.add_argument("--c-step", type=float, default=0.25)
    sc.add_argument("--source", choices=("operator", "table"), default="operator",
                    help="eigenvalues from H1 or from the tabulated formulas")
    return ap


def config_from_args(ns: argparse.Namespace) -> RunConfig:
    fmt = ns.fmt or ("csv" if ns.command == "scan" else "json")
    kw = dict(
        command=ns.command, gamma=ns.gamma, c=ns.c, beta=ns.beta, p=ns.p, n=ns.n, fmt=fmt, out=ns.out,
        imag_tol=ns.imag_tol, block_tol=ns.block_tol,
    )
    if ns.command in ("spectrum", "classify-pt"):
        kw["check_paper"] = ns.check_paper
    if ns.command == "spectrum":
        kw["strict"] = ns.strict
    if ns.command == "classify-pt":
        kw["specs"] = tuple(s.strip() for s in ns.specs.split(",") if s.strip())
    if ns.command == "scan":
        kw.update(c_min=ns.c_min, c_max=ns.c_max, c_step=ns.c_step, source=ns.source)
    return RunConfig(**kw)


# -- commands -----------------------------------------------------------------


def cmd_verify_algebra(cfg: RunConfig) -> tuple[int, dict]:
    params = cfg.params()
    checks = verify_algebra(params)
    hard_failures = [ch.name for ch in checks if ch.hard and not ch.passed]
    ledger = [
        {"kind": "identity", "name": ch.name, "residual": ch.residual, "first_failing_term": ch.first_failing_term,
         "detail": ch.detail}
        for ch in checks
        if not ch.hard and not ch.passed
    ]
    table = diff_h1_table(params)
    ledger.append({"kind": "h1_table", **table.to_dict()})
    basis = bargmann.monomial_basis(cfg.n)
    literal = bargmann.assemble_action_matrix(basis, params, literal=True).entries
    ledger.append({
        "kind": "action_coefficients_literal",
        "degree": cfg.n,
        "max_entry_difference": float(np.abs(literal - bargmann.h1_matrix(cfg.n, params).entries).max()),
    })
    report = {
        "command": cfg.command,
        "config": asdict(cfg),
        "params": params.to_dict(),
        "checks": [ch.to_dict() for ch in checks],
        "hard_passed": not hard_failures,
        "first_failing_identity": hard_failures[0] if hard_failures else None,
        "dyson_maleev_sign": dyson_maleev_sign(params),
        "non_hermiticity": non_hermiticity_witnesses(params),
        "paper_discrepancies": ledger,
    }
    return (EXIT_BREACH if hard_failures else EXIT_OK), report


def _spectral(cfg: RunConfig):
    params = cfg.params()
    report = bargmann.spectrum(bargmann.h1_matrix(cfg.n, params), params)
    breaches = []
    if report.cross_block_max >= cfg.block_tol:
        breaches.append(f"cross-block entry {report.cross_block_max:.3g} exceeds {cfg.block_tol:g}")
    if report.max_imag >= cfg.imag_tol:
        breaches.append(f"max |Im lambda| {report.max_imag:.3g} exceeds {cfg.imag_tol:g}")
    return params, report, breaches


def cmd_spectrum(cfg: RunConfig) -> tuple[int, dict | str]:
    params, report, breaches = _spectral(cfg)
    if cfg.fmt == "csv":
        return (EXIT_BREACH if breaches else EXIT_OK), eigenvalues_csv(report)
    out = {"command": cfg.command, "config": asdict(cfg), **report.to_dict(), "breaches": breaches}
    ledger = []
    if cfg.check_paper:
        if cfg.n in published_tables.TABLES:
            ledger = published_tables.check_spectrum(cfg.n, params, report)
        else:
            out["published_check"] = f"no published table for degree {cfg.n}"
    out["paper_discrepancies"] = ledger
    missing = [d for d in ledger if d["kind"] == "eigenvalue"]
    code = EXIT_BREACH if breaches or (cfg.strict and missing) else EXIT_OK
    return code, out


def cmd_classify_pt(cfg: RunConfig) -> tuple[int, dict]:
    try:
        specs = [ConjugationSpec.parse(s) for s in cfg.specs]
    except ValueError as exc:
        raise InvalidParams(str(exc)) from exc
    params, report, breaches = _spectral(cfg)
    reps, notes = (None, [])
    if cfg.n in published_tables.TABLES:
        reps, notes = published_tables.representatives(cfg.n, params)
    sym = classify_states(report, specs, representatives=reps)
    if cfg.check_paper and reps is not None:
        sym.paper_discrepancies = published_tables.compare_pt(cfg.n, sym)
    out = {
        "command": cfg.command,
        "config": asdict(cfg),
        **sym.to_dict(),
        "biorthogonality": biorthogonality_check(report).to_dict(),
        "representative_notes": notes,
        "breaches": breaches,
    }
    return EXIT_OK, out


def _table_source(n, prm):
    return published_tables.table_eigenvalues(n, prm)


def cmd_scan(cfg: RunConfig) -> tuple[int, dict | str]:
    params = cfg.params()
    grid = bargmann.scan_grid(cfg.c_min, cfg.c_max, cfg.c_step)
    source = None
    if cfg.source == "table":
        published_tables.table_rows(cfg.n)
        source = _table_source
    rows = bargmann.degeneracy_scan(cfg.n, params, grid, eigenvalue_source=source)
    points = [
        p for p in published_tables.special_points(cfg.n) if any(abs(p.c - c) < 1e-9 for c in grid)
    ]
    special = {(p.c, round(p.eigenvalue, 9)) for p in points}
    if cfg.fmt == "csv":
        return EXIT_OK, scan_csv(rows, special)
    summary = []
    for p in points:
        mult = bargmann.multiplicity_at(rows, p.c, p.eigenvalue) or 0
        jump = any(r.jump for r in rows if abs(r.c - p.c) < 1e-12 and abs(r.eigenvalue - p.eigenvalue) < 1e-8)
        summary.append({**asdict(p), "computed_multiplicity": mult, "jump_detected": jump})
    out = {
        "command": cfg.command,
        "config": asdict(cfg),
        "rows": [
            {"c": r.c, "eigenvalue": {"re": r.eigenvalue.real, "im": r.eigenvalue.imag},
             "multiplicity": r.multiplicity, "jump": r.jump}
            for r in rows
        ],
        "special_points": summary,
    }
    return EXIT_OK, out


COMMANDS = {
    "verify-algebra": cmd_verify_algebra,
    "spectrum": cmd_spectrum,
    "classify-pt": cmd_classify_pt,
    "scan": cmd_scan,
}


def run(cfg: RunConfig) -> tuple[int, bytes]:
    code, payload = COMMANDS[cfg.command](cfg)
    blob = payload.encode() if isinstance(payload, str) else emit_report(payload)
    return code, blob


def main(argv: list[str] | None = None) -> int:
    ap = _parser()
    ns = ap.parse_args(argv)
    try:
        cfg = config_from_args(ns)
        code, blob = run(cfg)
    except (InvalidParams, ValueError) as exc:
        print(f"higgs-spectra: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if cfg.out:
        with open(cfg.out, "wb") as fh:
            fh.write(blob)
    else:
        sys.stdout.buffer.write(blob)
        sys.stdout.flush()
    return code
