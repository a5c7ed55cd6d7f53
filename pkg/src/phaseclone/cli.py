"""Command-line interface.

Subcommands: ``factor`` (decomposition form of one entry), ``check``
(relation + hermiticity + positivity, exit 1 on any failure), ``classify``
(case verdict and report summary), ``profile`` (CSV of minimum-eigenvalue
sweeps), ``search`` (randomized theorem search, exit 1 on violations) and
``catalog`` (emit a built-in entry as PMAP).  Exit codes: 0 success,
1 failed checks, 2 parse/input errors.
"""

from __future__ import annotations

import argparse
import json
import sys

from .trigpoly import AffineForm, FullForm, ZeroPolynomialError, factorize
from .operators import (
    UncorrelatedTriple,
    trace_poly,
)
from .positivity import (
    DEFAULT_GRID,
    DEFAULT_TOL,
    NotHermitianError,
    PositivityVerdict,
    min_eigenvalue_profile,
)
from .analysis import analyze
from .search import theorem_search
from .catalog import UnknownNameError, builtin
from .pmap import (
    DimensionMismatchError,
    ParseError,
    document_from_operator,
    document_from_triple,
    parse_pmap,
    serialize_pmap,
)

_INPUT_ERRORS = (
    ParseError,
    DimensionMismatchError,
    UnknownNameError,
    OSError,
    ValueError,
)


def _load_document(path: str):
    with open(path, "r", encoding="utf-8") as fh:
        return parse_pmap(fh.read())


def _load_triple(path: str) -> UncorrelatedTriple:
    return _load_document(path).triple()


def _fmt(x: float) -> str:
    if x == 0.0:
        x = 0.0  # avoid printing -0
    return f"{x:.6g}"


def _fmtc(z: complex) -> str:
    z = complex(z.real if z.real != 0.0 else 0.0, z.imag if z.imag != 0.0 else 0.0)
    return f"{z:.12g}"


def _bool(x) -> str:
    return "true" if x else "false"


def _verdict_line(name: str, v: PositivityVerdict | None) -> str:
    if v is None:
        return f"positivity_{name}: skipped (not hermitian-preserving)"
    if v.positive:
        return f"positivity_{name}: true (lambda_min={_fmt(v.min_eigenvalue)})"
    return (
        f"positivity_{name}: false "
        f"(lambda_min={_fmt(v.min_eigenvalue)} at phi={_fmt(v.witness_phi)})"
    )


def _write_text(path: str | None, text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)


def _cmd_factor(args) -> int:
    doc = _load_document(args.file)
    if args.block is not None:
        if args.block not in doc.blocks:
            raise ParseError(f"no block named {args.block!r} in {args.file}")
        name = args.block
    elif len(doc.blocks) == 1:
        name = next(iter(doc.blocks))
    elif "lambda1" in doc.blocks:
        name = "lambda1"
    else:
        raise ParseError("ambiguous document; select a block with --block")
    op = doc.blocks[name]
    i, j = args.entry
    if not (0 <= i < op.dim and 0 <= j < op.dim):
        raise ParseError(f"entry ({i}, {j}) out of range for dim {op.dim}")
    try:
        form = factorize(op.entry(i, j))
    except ZeroPolynomialError:
        print(f"entry ({i}, {j}) of {name}: zero polynomial, no decomposition form")
        return 1
    if isinstance(form, FullForm):
        print(
            f"entry ({i}, {j}) of {name}: full scale={_fmtc(form.scale)} "
            f"w0={_fmtc(form.w0)} w1={_fmtc(form.w1)}"
        )
    elif isinstance(form, AffineForm):
        print(f"entry ({i}, {j}) of {name}: affine scale={_fmtc(form.scale)} w={_fmtc(form.w)}")
    else:
        print(f"entry ({i}, {j}) of {name}: pure-negative b={_fmtc(form.b)}")
    return 0


def _cmd_check(args) -> int:
    t = _load_triple(args.file)
    report = analyze(t, args.tol)
    rel = report.relation
    print(f"file: {args.file}")
    if rel is None:
        print("relation: unavailable (zero probability)")
    else:
        print(f"traces_equal: {_bool(rel.traces_equal)}")
        print(
            f"relation_holds: {_bool(rel.relation_holds)} "
            f"(max_residual={rel.max_residual:.3e})"
        )
        print(f"partial_traces_consistent: {_bool(rel.partial_traces_consistent)}")
    print(
        "hermitian_preserving: "
        f"joint={_bool(report.hp_joint)} out1={_bool(report.hp_out1)} "
        f"out2={_bool(report.hp_out2)}"
    )
    if isinstance(report.probability, str):
        print(f"probability: {report.probability}")
    else:
        p = report.probability
        print(
            f"probability: |alpha|={_fmt(p.alpha_abs)} theta={_fmt(p.theta)} "
            f"R={_fmt(p.R)} r={_fmt(p.r)}"
        )
    for name, verdict in (
        ("out1", report.positivity_out1),
        ("out2", report.positivity_out2),
        ("joint", report.positivity_joint),
    ):
        print(_verdict_line(name, verdict))
    passed = (
        rel is not None
        and rel.all_ok
        and report.hp_ok
        and report.all_positive
    )
    print(f"result: {'PASS' if passed else 'FAIL'}")
    return 0 if passed else 1


def _cmd_classify(args) -> int:
    t = _load_triple(args.file)
    report = analyze(t, args.tol)

    def dep_word(flag) -> str:
        if flag is None:
            return "unknown"
        return "phase-dependent" if flag else "phase-independent"

    case_text = str(report.case) if report.case is not None else "unclassified"
    print(f"{case_text}; out1 {dep_word(report.out1_phase_dependent)}; "
          f"out2 {dep_word(report.out2_phase_dependent)}")
    print(f"hermitian_preserving: {_bool(report.hp_ok)}")
    print(f"relation_ok: {_bool(report.relation_ok)}")
    if isinstance(report.probability, str):
        print(f"probability: {report.probability}")
    else:
        print(f"probability: r={report.probability.r:.12g}")
    print(f"all_positive: {_bool(report.all_positive)}")
    print(f"theorem_consistent: {_bool(report.theorem_consistent)}")
    return 0 if report.case is not None else 1


def _cmd_profile(args) -> int:
    t = _load_triple(args.file)
    n = args.samples
    try:
        prof1 = min_eigenvalue_profile(t.out1, n)
        prof2 = min_eigenvalue_profile(t.out2, n)
        profj = min_eigenvalue_profile(t.joint, n)
    except NotHermitianError as err:
        print(f"error: {err}", file=sys.stderr)
        return 1
    P = trace_poly(t.out1)
    lines = ["phi,P,lmin_out1,lmin_out2,lmin_joint"]
    for (phi, l1), (_, l2), (_, lj) in zip(prof1, prof2, profj):
        p = P.eval(phi)
        lines.append(
            f"{phi:.17g},{p.real:.17g},{l1:.17g},{l2:.17g},{lj:.17g}"
        )
    _write_text(args.out, "\n".join(lines) + "\n")
    return 0


def _cmd_search(args) -> int:
    report = theorem_search(args.trials, seed=args.seed, tol=args.tol)
    print(f"trials: {report.trials}")
    print(f"seed: {report.seed}")
    print(f"accepted: {report.accepted}")
    print(f"rejected: {report.rejected}")
    print(f"acceptance_rate: {report.acceptance_rate:.4f}")
    print(f"case_counts: {json.dumps(report.case_counts)}")
    print(f"both_phase_dependent: {report.both_phase_dependent}")
    if report.max_witness_lambda_min is None:
        print("max_witness_lambda_min: n/a")
    else:
        print(f"max_witness_lambda_min: {report.max_witness_lambda_min:.6e}")
    print(f"witness_failures: {len(report.witness_failures)}")
    print(f"violations: {len(report.violations)}")
    for v in report.violations:
        print(f"violation: trial={v.trial} {v.detail}")
    for k in report.witness_failures:
        print(f"witness_failure: trial={k}")
    return 0 if report.ok else 1


def _cmd_catalog(args) -> int:
    entry = builtin(args.name, q=args.q)
    if isinstance(entry.payload, UncorrelatedTriple):
        doc = document_from_triple(entry.payload)
    else:
        doc = document_from_operator(entry.name, entry.payload)
    _write_text(args.out, serialize_pmap(doc))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="phaseclone",
        description="Verify uncorrelated cloning maps on the phase-set of qubit states.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("factor", help="print the decomposition form of one matrix entry")
    p.add_argument("file")
    p.add_argument("--entry", nargs=2, type=int, default=(0, 0), metavar=("I", "J"))
    p.add_argument("--block", default=None, help="block name (default: lambda1 or the only block)")
    p.set_defaults(func=_cmd_factor)

    p = sub.add_parser("check", help="validate a triple; exit 1 on any failed check")
    p.add_argument("file")
    p.add_argument("--tol", type=float, default=DEFAULT_TOL)
    p.set_defaults(func=_cmd_check)

    p = sub.add_parser("classify", help="print the case verdict and report summary")
    p.add_argument("file")
    p.add_argument("--tol", type=float, default=DEFAULT_TOL)
    p.set_defaults(func=_cmd_classify)

    p = sub.add_parser("profile", help="write a CSV of minimum-eigenvalue sweeps")
    p.add_argument("file")
    p.add_argument("--samples", type=int, default=DEFAULT_GRID)
    p.add_argument("--out", default=None, help="output path (default: stdout)")
    p.set_defaults(func=_cmd_profile)

    p = sub.add_parser("search", help="randomized theorem search; exit 1 on violations")
    p.add_argument("--trials", type=int, default=10000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--tol", type=float, default=DEFAULT_TOL)
    p.set_defaults(func=_cmd_search)

    p = sub.add_parser("catalog", help="emit a built-in map as PMAP text")
    p.add_argument("name")
    p.add_argument("--q", type=float, default=0.5, help="parameter for the q-dependent entries")
    p.add_argument("--out", default=None, help="output path (default: stdout)")
    p.set_defaults(func=_cmd_catalog)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except _INPUT_ERRORS as err:
        print(f"error: {err}", file=sys.stderr)
        return 2


def entrypoint() -> None:
    raise SystemExit(main())
