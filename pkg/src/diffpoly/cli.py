"""Command line driver: read a scenario, run the requested analysis, print a report.

Exit codes: 0 when the analysis completed (whatever the verdict), 1 for input
errors (syntax, labels, bounds), 2 when an internal cross-check failed.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from . import __version__
from .analyzer import (
    check_witness,
    commutative_quotient_evidence,
    decompose_max_ideal,
    enumerate_max_ideals,
    quasi_duo,
    two_sided_check,
    verify_instance,
)
from .config import DEFAULT_BOUNDS
from .errors import DiffPolyError, InvariantError
from .ideals import quotient_ring
from .multivar import MContext, corner_closure_report, multivar_quasi_duo
from .orepoly import OreRing
from .report import VOLATILE, Report, emit
from .scenario import (
    ScenarioSpec,
    SemanticError,
    build_derivation,
    build_ring,
    effective_bounds,
    parse_spec,
    ring_text,
    spec_text,
)

EXIT_OK, EXIT_INPUT, EXIT_INTERNAL = 0, 1, 2


class VerificationFailed(Exception):
    def __init__(self, report: Report):
        self.report = report
        super().__init__("invariant checks failed")


def _status(check) -> str:
    return "pass" if check else "fail"


def _labels(R, elems) -> list[str]:
    return [R.short_label(a) for a in elems]


def _verdict_fields(report: Report, R, verdict) -> None:
    report.add("quasi_duo", verdict.quasi_duo)
    report.add("witness_kind", verdict.witness_kind)
    report.add("witness_elements", _labels(R, verdict.witness))
    report.add("reason", verdict.reason or None)


def _radical_fields(report: Report, R, rep) -> None:
    report.add("j_R_size", len(rep.j_R))
    report.add("t_core_size", len(rep.t_core))
    report.add("k_size", len(rep.k))
    report.add("m_r_count", len(rep.m_r))
    report.add("k_equals_core", rep.k_equals_core)


def _analyze(report: Report, R, delta, bounds) -> None:
    verdict = quasi_duo(R, delta, bounds)
    _verdict_fields(report, R, verdict)
    report.add("witness_check", _status(check_witness(R, delta, verdict)))
    _radical_fields(report, R, verdict.report)
    report.add("t_core_elements", _labels(R, verdict.report.t_core.sorted))
    if verdict.quasi_duo:
        Q = quotient_ring(R, verdict.report.t_core)
        report.add("quotient_order", Q.ring.order)
        report.add("quotient_evidence", _status(commutative_quotient_evidence(R, delta, verdict.report.t_core)))


def _radical(report: Report, R, delta, bounds) -> None:
    verdict = quasi_duo(R, delta, bounds)
    rep = verdict.report
    report.add("quasi_duo", verdict.quasi_duo)
    _radical_fields(report, R, rep)
    report.add("j_R_elements", _labels(R, rep.j_R.sorted))
    report.add("t_core_elements", _labels(R, rep.t_core.sorted))
    report.add("k_elements", _labels(R, rep.k.sorted))
    for I in rep.m_r:
        report.add_row("max_field_ideals", ideal=I.label(), size=len(I), residue_order=R.order // len(I))


def _handle_row(report: Report, h, d: int) -> None:
    q = h.phi.field.order
    report.add_row(
        "maxideals",
        ideal=h.i.label(),
        ideal_size=len(h.i),
        degree=h.p.degree,
        poly=h.p.labels(),
        lift=str(h.lift),
        field_order=q ** h.p.degree,
        two_sided_check=_status(two_sided_check(h, d)),
    )


def _maxideals(report: Report, S, dmax, bounds) -> None:
    handles = enumerate_max_ideals(S, dmax, bounds)
    counts = [sum(1 for h in handles if h.p.degree == k) for k in range(1, dmax + 1)]
    report.add("handle_count", len(handles))
    report.add("counts_by_degree", counts)
    for h in handles:
        _handle_row(report, h, dmax)


def _decompose(report: Report, spec: ScenarioSpec, S, dmax, bounds) -> None:
    R = S.base
    if not spec.generators:
        raise SemanticError("decompose needs a 'generators' line")
    try:
        gens = [S([R.element(c) for c in g]) for g in spec.generators]
    except DiffPolyError as exc:
        raise SemanticError(f"generators: {exc}") from exc
    report.add("generators", [str(g) for g in gens])
    h = decompose_max_ideal(S, gens, dmax, bounds)
    report.add("ideal", h.i.label())
    report.add("ideal_size", len(h.i))
    report.add("poly", h.p.labels())
    report.add("lift", str(h.lift))
    report.add("field_order", h.phi.field.order ** h.p.degree)


def _multivar(report: Report, spec: ScenarioSpec, R, bounds) -> None:
    derivations = [build_derivation(R, spec.derivation_for(k)) for k in range(1, spec.vars + 1)]
    ctx = MContext(R, derivations)
    report.add("vars", ctx.m)
    report.add("derivations", [d.name for d in derivations])
    verdict = multivar_quasi_duo(ctx, bounds)
    _verdict_fields(report, R, verdict)
    if verdict.report is not None:
        _radical_fields(report, R, verdict.report)
    if spec.corner is not None:
        d = spec.option("degree", 3)
        literal = bool(spec.option("literal", False))
        cr = corner_closure_report(ctx, [k - 1 for k in spec.corner], d, literal, bounds)
        report.add("corner", list(spec.corner))
        report.add("corner_degree", d)
        report.add("corner_literal", literal)
        report.add("products_checked", cr.products)
        for name, check in (("S_J*C in C", cr.left), ("C*S_J in C", cr.right)):
            left, right, prod, term = check.witness or (None, None, None, None)
            report.add_row("corner_closure", direction=name, result=_status(check),
                           left=left, right=right, product=prod, term=term)


def _verify(report: Report, S, dmax, bounds) -> bool:
    ok = True
    for name, check in verify_instance(S, dmax, bounds):
        ok &= bool(check)
        report.add_row("invariants", name=name, result=_status(check), detail=check.detail or None)
    return ok


def run(spec: ScenarioSpec, dmax: int | None = None, order_cap: int | None = None, verify: bool = False) -> Report:
    """Run one scenario. Raises VerificationFailed (carrying the report) when an invariant fails."""
    start = time.perf_counter()
    bounds, degree = effective_bounds(spec, dmax, order_cap, DEFAULT_BOUNDS)
    report = Report()
    report.add("version", __version__)
    report.add("scenario", spec_text(spec))
    report.add("command", spec.command)
    R = build_ring(spec, bounds)
    report.add("ring", ring_text(spec.ring))
    report.add("ring_order", R.order)
    report.add("dmax", degree)
    ok = True
    if spec.command == "multivar":
        _multivar(report, spec, R, bounds)
        if verify and spec.vars == 1:
            ok = _verify(report, OreRing(build_derivation(R, spec.derivation_for(1))), degree, bounds)
    else:
        if spec.vars > 1:
            raise SemanticError(f"command {spec.command} takes one indeterminate; use command multivar")
        delta = build_derivation(R, spec.derivation)
        S = OreRing(delta)
        report.add("derivation", delta.name)
        if spec.command == "analyze":
            _analyze(report, R, delta, bounds)
        elif spec.command == "radical":
            _radical(report, R, delta, bounds)
        elif spec.command == "maxideals":
            _maxideals(report, S, degree, bounds)
        elif spec.command == "decompose":
            _decompose(report, spec, S, degree, bounds)
        if spec.command == "verify" or verify:
            ok = _verify(report, S, degree, bounds)
    report.add("timing_ms", round((time.perf_counter() - start) * 1000, 3))
    if not ok:
        raise VerificationFailed(report)
    return report


def execute(text: str, fmt: str = "human", dmax=None, order_cap=None, verify=False) -> tuple[int, str, str]:
    """Parse and run a scenario document; returns (exit code, stdout text, stderr text)."""
    try:
        spec = parse_spec(text)
        report = run(spec, dmax, order_cap, verify)
    except VerificationFailed as exc:
        return EXIT_INTERNAL, emit(exc.report, fmt), "error: invariant checks failed\n"
    except InvariantError as exc:
        return EXIT_INTERNAL, "", f"internal error: {exc}\n"
    except DiffPolyError as exc:
        return EXIT_INPUT, "", f"error: {exc}\n"
    return EXIT_OK, emit(report, fmt), ""


def golden(text: str) -> str:
    """Machine output of a scenario with the exit code and any error, minus volatile fields."""
    code, out, err = execute(text, fmt="machine")
    lines = [f"exit={code}"]
    if err:
        lines.append(f"error={json.dumps(err.strip())}")
    lines += [ln for ln in out.split("\n") if ln and ln.split("=", 1)[0] not in VOLATILE]
    return "\n".join(lines) + "\n"


def _execute_path(args: tuple) -> tuple[int, str, str]:
    path, fmt, dmax, order_cap, verify = args
    try:
        text = Path(path).read_text()
    except OSError as exc:
        return EXIT_INPUT, "", f"error: {exc}\n"
    return execute(text, fmt, dmax, order_cap, verify)


def batch_paths(batch_file: str) -> list[str]:
    """Scenario paths listed one per line (relative to the batch file); '#' starts a comment."""
    base = Path(batch_file).parent
    out = []
    for line in Path(batch_file).read_text().splitlines():
        line = line.split("#", 1)[0].strip()
        if line:
            p = Path(line)
            out.append(str(p if p.is_absolute() else base / p))
    return out


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="diffpoly", description="Analyse R[x; d] for a finite ring R.")
    ap.add_argument("scenario", nargs="?", help="scenario file ('-' for stdin)")
    ap.add_argument("--dmax", type=int, default=None, help="degree bound (default 3, or the scenario's dmax)")
    ap.add_argument("--order-cap", type=int, default=None, help="largest ring order to build (default 4096)")
    ap.add_argument("--format", choices=("human", "machine"), default="human")
    ap.add_argument("--batch", metavar="FILE", help="file listing scenario paths, one per line")
    ap.add_argument("--verify", action="store_true", help="also run the invariant suite")
    ap.add_argument("--jobs", type=int, default=None, help="worker processes for --batch")
    return ap


def main(argv: list[str] | None = None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    if args.dmax is not None and args.dmax < 1:
        ap.error("--dmax must be positive")
    if args.order_cap is not None and args.order_cap < 1:
        ap.error("--order-cap must be positive")
    if (args.scenario is None) == (args.batch is None):
        ap.error("give exactly one of a scenario file or --batch")
    opts = (args.format, args.dmax, args.order_cap, args.verify)
    if args.batch:
        try:
            paths = batch_paths(args.batch)
        except OSError as exc:
            print(f"error: {exc}", file=sys.stderr)
            return EXIT_INPUT
        jobs = args.jobs or os.cpu_count() or 1
        work = [(p,) + opts for p in paths]
        if jobs > 1 and len(work) > 1:
            with ProcessPoolExecutor(max_workers=jobs) as pool:
                results = list(pool.map(_execute_path, work))
        else:
            results = [_execute_path(w) for w in work]
        code = EXIT_OK
        for path, (c, out, err) in zip(paths, results):
            if args.format == "human":
                sys.stdout.write(f"== {path}\n")
            sys.stdout.write(out)
            if err:
                sys.stderr.write(f"{path}: {err}")
            code = max(code, c)
        return code
    if args.scenario == "-":
        text = sys.stdin.read()
    else:
        try:
            text = Path(args.scenario).read_text()
        except OSError as exc:
            print(f"error: {exc}", file=sys.stderr)
            return EXIT_INPUT
    code, out, err = execute(text, *opts)
    sys.stdout.write(out)
    sys.stderr.write(err)
    return code
