"""Command-line front end.

Subcommands wrap the library: ortho, recover, moments, psd, fcalc,
specmap, gmres, equiv, symmetrize, krylov-decompose.  Documents are JSON
(see docio); convergence tables are CSV with a header row, comma
delimiter, and '.' decimal separator.  Exit codes: 0 ok, 2 invalid input,
3 numerical breakdown, 4 invariant violated.
"""

from __future__ import annotations

import argparse
import sys

import numpy as np

from . import docio
from .coneig import jacobi_to_measure
from .errors import NumericalBreakdown, ValidationError
from .funcalc import BiradialFunction, LaurentCoeffs, antilinear_spectrum, norm_formula_check, specmap_check
from .jacobi import krylov_decompose, orthogonalize, psd_check
from .measures import PlanarAtomicMeasure, are_equivalent, canonicalize, equivalent_sample, measure_moments, symmetrize
from .rlgmres import residual_oracle, solve, staircase_demo

STAGNATION_FLAG = "stagnation"


def _read_text(path: str | None) -> str:
    if path is None or path == "-":
        return sys.stdin.read()
    with open(path, "r", encoding="utf-8") as fh:
        return fh.read()


def _write_text(text: str, path: str | None) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)


def _load_doc(args) -> dict:
    return docio.loads(_read_text(args.infile))


def _parse_complex_list(text: str) -> list[complex]:
    if not text.strip():
        return []
    try:
        return [complex(tok.strip().replace("i", "j")) for tok in text.split(",")]
    except ValueError as exc:
        raise ValidationError(f"bad complex list {text!r}") from exc


def _parse_float_list(text: str) -> list[float]:
    if not text.strip():
        return []
    try:
        return [float(tok) for tok in text.split(",")]
    except ValueError as exc:
        raise ValidationError(f"bad number list {text!r}") from exc


def _measure_from_doc(doc: dict):
    return canonicalize(docio.doc_to_planar(doc))


def _function_from_args(args) -> BiradialFunction:
    return BiradialFunction(
        LaurentCoeffs(_parse_complex_list(args.u), args.u_min),
        LaurentCoeffs(_parse_complex_list(args.v), args.v_min),
    )


def _convergence_csv(residuals: np.ndarray) -> str:
    lines = ["k,residual,ratio,flag"]
    for k in range(1, len(residuals)):
        ratio = residuals[k] / residuals[k - 1] if residuals[k - 1] > 0 else 1.0
        flag = STAGNATION_FLAG if ratio >= 1.0 - 1e-10 else ""
        lines.append(f"{k},{residuals[k]!r},{ratio!r},{flag}")
    return "\n".join(lines) + "\n"


def cmd_ortho(args) -> int:
    rho = _measure_from_doc(_load_doc(args))
    params, system = orthogonalize(rho)
    J = params.matrix()
    D = np.diag(rho.points)
    Q = system.values
    residual = np.linalg.norm(D @ np.conj(Q) - Q @ J) / max(1.0, np.linalg.norm(J))
    print(f"model residual: {residual:.3e}", file=sys.stderr)
    _write_text(docio.dumps(docio.jacobi_to_doc(params)), args.outfile)
    return 0


def cmd_recover(args) -> int:
    params = docio.doc_to_jacobi(_load_doc(args))
    rho = jacobi_to_measure(params)
    back, _ = orthogonalize(rho)
    err = float(np.max(np.abs(back.alphas - params.alphas)))
    if params.n > 1:
        err = max(err, float(np.max(np.abs(back.betas - params.betas))))
    print(f"round-trip parameter error: {err:.3e}", file=sys.stderr)
    _write_text(docio.dumps(docio.measure_to_doc(rho)), args.outfile)
    return 0


def _moments_from_doc(doc: dict, order: int | None) -> np.ndarray:
    if doc.get("schema") == "measure":
        rho = canonicalize(docio.doc_to_planar(doc))
        K = order if order is not None else 2 * rho.n - 1
        return measure_moments(rho, K).m
    m = docio.doc_to_moments(doc)
    if order is not None:
        if order + 1 > len(m):
            raise ValidationError(f"moments document holds only {len(m)} entries")
        m = m[: order + 1]
    return m


def cmd_moments(args) -> int:
    m = _moments_from_doc(_load_doc(args), args.order)
    _write_text(docio.dumps(docio.moments_to_doc(m)), args.outfile)
    return 0


def cmd_psd(args) -> int:
    doc = _load_doc(args)
    if doc.get("schema") == "measure":
        rho = canonicalize(docio.doc_to_planar(doc))
        order = args.order if args.order is not None else rho.n
        m = measure_moments(rho, max(2 * order - 2, 0)).m
    else:
        m = docio.doc_to_moments(doc)
        order = args.order if args.order is not None else (len(m) + 1) // 2
    ok, lam_min = psd_check(m, order)
    report = docio.report_doc("psd", True, psd=bool(ok), min_eigenvalue=lam_min, order=order)
    _write_text(docio.dumps(report), args.outfile)
    return 0


def cmd_symmetrize(args) -> int:
    planar = docio.doc_to_planar(_load_doc(args))
    rho = symmetrize(planar)
    total = float(np.sum(planar.weights))
    normalized = PlanarAtomicMeasure(planar.points, planar.weights / total)
    K = 20
    before = measure_moments(normalized, K).m
    after = measure_moments(rho, K).m
    err = float(np.max(np.abs(before - after)))
    print(f"moment preservation error (order {K}): {err:.3e}", file=sys.stderr)
    _write_text(docio.dumps(docio.measure_to_doc(rho)), args.outfile)
    return 0


def cmd_equiv(args) -> int:
    rho = _measure_from_doc(_load_doc(args))
    angles = _parse_float_list(args.angles)
    rho2 = equivalent_sample(rho, angles)
    params1, _ = orthogonalize(rho)
    params2, _ = orthogonalize(rho2)
    perr = float(np.max(np.abs(params1.alphas - params2.alphas)))
    if params1.n > 1:
        perr = max(perr, float(np.max(np.abs(params1.betas - params2.betas))))
    ok = are_equivalent(rho, rho2) and perr <= 1e-8
    print(f"parameter deviation across the class: {perr:.3e}", file=sys.stderr)
    _write_text(docio.dumps(docio.measure_to_doc(rho2)), args.outfile)
    if not ok:
        print("invariant violated: equivalent_sample output is not equivalent", file=sys.stderr)
        return 4
    return 0


def cmd_fcalc(args) -> int:
    G = docio.doc_to_matrix(_load_doc(args))
    f = _function_from_args(args)
    lhs, rhs = norm_formula_check(G, f)
    rel = abs(lhs - rhs) / max(rhs, 1e-300)
    ok = rel <= args.tol
    report = docio.report_doc(
        "fcalc",
        ok,
        radii=list(antilinear_spectrum(G).radii),
        op_norm=lhs,
        circle_max=rhs,
        relative_error=rel,
        seed=args.seed,
    )
    _write_text(docio.dumps(report), args.outfile)
    if not ok:
        print(f"invariant violated: norm formula off by {rel:.3e}", file=sys.stderr)
        return 4
    return 0


def cmd_specmap(args) -> int:
    G = docio.doc_to_matrix(_load_doc(args))
    f = _function_from_args(args)
    rep = specmap_check(G, f, samples=args.samples, tol=args.tol)
    report = docio.report_doc(
        "specmap",
        rep.ok,
        radii=list(rep.radii),
        samples=rep.samples,
        violations=rep.violations,
        max_violation=rep.max_violation,
        converse_tested=rep.converse_tested,
        converse_failures=rep.converse_failures,
        seed=args.seed,
    )
    _write_text(docio.dumps(report), args.outfile)
    if not rep.ok:
        print(f"invariant violated: {rep.violations} inclusion / {rep.converse_failures} converse failures", file=sys.stderr)
        return 4
    return 0


def cmd_gmres(args) -> int:
    if args.demo == "staircase":
        radii = _parse_float_list(args.radii) if args.radii else [1.0, 2.0]
        rep = staircase_demo(radii)
        residuals = np.array([1.0] + [row[1] for row in rep.rows]) if rep.rows else np.array([1.0])
        if rep.rows:
            res0 = rep.rows[0][1] / rep.rows[0][2] if rep.rows[0][2] > 0 else 1.0
            residuals = np.array([res0] + [row[1] for row in rep.rows])
        csv = _convergence_csv(residuals)
        ok = rep.odd_steps_stagnated and rep.final_relative_residual <= args.tol
        report = docio.report_doc(
            "gmres",
            ok,
            demo="staircase",
            radii=list(rep.radii),
            iterations=len(rep.rows),
            odd_steps_stagnated=rep.odd_steps_stagnated,
            final_relative_residual=rep.final_relative_residual,
            seed=args.seed,
        )
    elif args.infile is not None:
        M = docio.doc_to_matrix(_load_doc(args))
        n = M.shape[0]
        b = np.ones(n) / np.sqrt(n)
        result = solve(M, b, tol=args.tol, maxit=args.maxit)
        csv = _convergence_csv(result.residuals)
        worst = 0.0
        for k in range(1, min(result.iterations, 8) + 1):
            oracle = residual_oracle(M, b, k)
            worst = max(worst, abs(result.residuals[k] - oracle) / result.residuals[0])
        ok = worst <= 1e-6
        report = docio.report_doc(
            "gmres",
            ok,
            iterations=result.iterations,
            final_relative_residual=float(result.residuals[-1] / result.residuals[0]),
            stagnated=result.stagnated,
            oracle_deviation=worst,
            seed=args.seed,
        )
    else:
        raise ValidationError("gmres needs --demo staircase or an input matrix")
    if args.csv:
        _write_text(csv, args.csv)
    _write_text(docio.dumps(report), args.outfile)
    if not report["ok"]:
        print("invariant violated: residual history inconsistent", file=sys.stderr)
        return 4
    return 0


def cmd_krylov_decompose(args) -> int:
    G = docio.doc_to_matrix(_load_doc(args))
    blocks = krylov_decompose(G)
    payload = [
        {
            "start": [docio.complex_to_obj(z) for z in blk.start],
            "alphas": [docio.complex_to_obj(a) for a in blk.params.alphas],
            "betas": [float(b) for b in blk.params.betas],
        }
        for blk in blocks
    ]
    report = docio.report_doc("krylov-decompose", True, blocks=payload)
    _write_text(docio.dumps(report), args.outfile)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="biradial", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, order=False, samples=False, tol=None):
        p.add_argument("--in", dest="infile", default=None, help="input document (default stdin)")
        p.add_argument("--out", dest="outfile", default=None, help="output path (default stdout)")
        p.add_argument("--seed", type=int, default=0, help="seed recorded in reports")
        if order:
            p.add_argument("--order", type=int, default=None)
        if samples:
            p.add_argument("--samples", type=int, default=32)
        if tol is not None:
            p.add_argument("--tol", type=float, default=tol)

    def function_flags(p):
        p.add_argument("--u", default="", help="comma-separated coefficients of u in t = |lam|^2")
        p.add_argument("--v", default="", help="comma-separated coefficients of v in t = |lam|^2")
        p.add_argument("--u-min", dest="u_min", type=int, default=0, help="lowest power of t in u")
        p.add_argument("--v-min", dest="v_min", type=int, default=0, help="lowest power of t in v")

    p = sub.add_parser("ortho", help="measure file -> jacobi file")
    common(p)
    p.set_defaults(func=cmd_ortho)

    p = sub.add_parser("recover", help="jacobi file -> measure file")
    common(p)
    p.set_defaults(func=cmd_recover)

    p = sub.add_parser("moments", help="measure (or moments) file -> moments file")
    common(p, order=True)
    p.set_defaults(func=cmd_moments)

    p = sub.add_parser("psd", help="moment-matrix positivity report")
    common(p, order=True)
    p.set_defaults(func=cmd_psd)

    p = sub.add_parser("symmetrize", help="planar measure file -> symmetric biradial measure file")
    common(p)
    p.set_defaults(func=cmd_symmetrize)

    p = sub.add_parser("equiv", help="sample the equivalence class of a measure")
    common(p)
    p.add_argument("--angles", default="", help="one chord angle per two-point circle")
    p.set_defaults(func=cmd_equiv)

    p = sub.add_parser("fcalc", help="norm-formula report for a function of a symmetric matrix")
    common(p, tol=1e-8)
    function_flags(p)
    p.set_defaults(func=cmd_fcalc)

    p = sub.add_parser("specmap", help="sampled spectral-mapping verification")
    common(p, samples=True, tol=1e-6)
    function_flags(p)
    p.set_defaults(func=cmd_specmap)

    p = sub.add_parser("gmres", help="antilinear GMRES demo / solve with convergence CSV")
    common(p, tol=1e-10)
    p.add_argument("--demo", choices=["staircase"], default=None)
    p.add_argument("--radii", default="", help="circle radii for the staircase demo")
    p.add_argument("--maxit", type=int, default=None)
    p.add_argument("--csv", default=None, help="write the convergence table to this path")
    p.set_defaults(func=cmd_gmres)

    p = sub.add_parser("krylov-decompose", help="invariant-block decomposition of a symmetric matrix")
    common(p)
    p.set_defaults(func=cmd_krylov_decompose)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ValidationError as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    except NumericalBreakdown as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
