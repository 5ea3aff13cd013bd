"""Command-line front end.

Subcommands:
    gen-measure      seeded admissible measure -> measure file
    verify           run the claim suite on a measure (generated or loaded)
    lsop             emit the monic family and its orthonormal scale squares
    pencil           emit both pencil layouts with residual and symplectic checks
    butterfly        emit butterfly parameters, matrix, and spectrum comparison
    solve-butterfly  structured eigensolver for a butterfly parameter file

Exit status: 0 when everything passed, 2 when any claim or comparison was
flagged, 1 on usage errors (including precondition refusals).  The scalar
mode defaults to the LSOPKIT_MODE environment variable, then to "double".
"""

from __future__ import annotations

import argparse
import os
import sys
from typing import Dict, List, Optional, Sequence

from . import serialize
from .errors import LsopkitError
from .lsolp import GaugeParams, gauge_transform_scaled, lsolp_from_values, multiplication_matrix
from .lsop import evaluate_family, lsop_via_recurrence, recurrence_from_measure
from .moments import DiscreteMeasure, random_measure
from .numerics import dense_eigs, spectra_distance, sym_tridiag_eigs
from .spectra import (ButterflyParams, build_butterfly, build_pencil,
                      butterfly_from_params, butterfly_params, butterfly_to_tridiagonal,
                      canonical_z_list, determine_diagonal_convention, eig_correspondence,
                      pencil_eigenvalues, pencil_residual, symplectic_pencil_check)
from .verify import DEFAULT_TOLERANCES, RunConfig, run_verification

EXIT_PASS = 0
EXIT_USAGE = 1
EXIT_FLAGGED = 2


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else 0
    if not hasattr(args, "func"):
        parser.print_help()
        return EXIT_USAGE
    try:
        return args.func(args)
    except (LsopkitError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="lsopkit",
        description="Laurent skew orthogonal polynomials and symplectic spectra over discrete measures",
    )
    sub = parser.add_subparsers(dest="command")

    def common(p: argparse.ArgumentParser, measure_arg: bool = False) -> None:
        p.add_argument("--seed", type=int, default=1, help="RNG seed (default 1)")
        p.add_argument("--order", type=int, default=4, help="family order N (default 4)")
        p.add_argument("--mode", choices=["double", "rational"], default=None,
                       help="scalar backend (default: LSOPKIT_MODE or double)")
        p.add_argument("--out", type=str, default=None, help="output path (default stdout)")
        if measure_arg:
            p.add_argument("measure", nargs="?", default=None,
                           help="measure file (default: generate from seed/order)")

    p = sub.add_parser("gen-measure", help="generate an admissible measure file")
    common(p)
    p.set_defaults(func=cmd_gen_measure)

    p = sub.add_parser("verify", help="run the verification suite")
    common(p, measure_arg=True)
    p.add_argument("--tol", action="append", default=[], metavar="NAME=VALUE",
                   help="tolerance override, repeatable")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("lsop", help="emit the monic family and scale squares")
    common(p, measure_arg=True)
    p.set_defaults(func=cmd_lsop)

    p = sub.add_parser("pencil", help="emit pencil layouts, residuals, symplectic checks")
    common(p, measure_arg=True)
    p.set_defaults(func=cmd_pencil)

    p = sub.add_parser("butterfly", help="emit butterfly parameters, matrix, spectra")
    common(p, measure_arg=True)
    p.add_argument("--gauge-seed", type=int, default=None,
                   help="seed for a random gauge (default: trivial gauge)")
    p.set_defaults(func=cmd_butterfly)

    p = sub.add_parser("solve-butterfly", help="eigensolve a butterfly parameter file")
    p.add_argument("params", help="butterfly parameter file")
    p.add_argument("--mode", choices=["double", "rational"], default=None)
    p.add_argument("--out", type=str, default=None)
    p.set_defaults(func=cmd_solve_butterfly)

    return parser


def _mode(args) -> str:
    if getattr(args, "mode", None):
        return args.mode
    env = os.environ.get("LSOPKIT_MODE", "").strip()
    if env:
        if env not in ("double", "rational"):
            raise ValueError(f"LSOPKIT_MODE must be 'double' or 'rational', got {env!r}")
        return env
    return "double"


def _emit(args, text: str) -> None:
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _measure(args, mode: str) -> DiscreteMeasure:
    if getattr(args, "measure", None):
        with open(args.measure) as fh:
            return serialize.load_measure(fh.read(), mode)
    return random_measure(args.seed, args.order, mode)


def _order_of(args, m: DiscreteMeasure) -> int:
    return m.size if getattr(args, "measure", None) else args.order


def cmd_gen_measure(args) -> int:
    mode = _mode(args)
    m = random_measure(args.seed, args.order, mode)
    rec = recurrence_from_measure(m, args.order)
    metadata = {
        "seed": args.seed,
        "order": args.order,
        "mode": mode,
        "node_range": [1.2, 5.0],
        "tau": list(rec.tau),
    }
    _emit(args, serialize.save_measure(m, metadata))
    return EXIT_PASS


def cmd_verify(args) -> int:
    mode = _mode(args)
    tolerances = _parse_tolerances(args.tol)
    m = _measure(args, mode)
    cfg = RunConfig(seed=args.seed, order=_order_of(args, m), mode=mode, tolerances=tolerances)
    report = run_verification(cfg, m)
    _emit(args, report.render())
    return EXIT_PASS if report.all_pass else EXIT_FLAGGED


def _parse_tolerances(items: List[str]) -> Dict[str, float]:
    out: Dict[str, float] = {}
    for item in items:
        name, sep, value = item.partition("=")
        if not sep:
            raise ValueError(f"--tol expects NAME=VALUE, got {item!r}")
        if name not in DEFAULT_TOLERANCES:
            known = ", ".join(sorted(DEFAULT_TOLERANCES))
            raise ValueError(f"unknown tolerance {name!r}; known names: {known}")
        out[name] = float(value)
    return out


def cmd_lsop(args) -> int:
    mode = _mode(args)
    m = _measure(args, mode)
    n = _order_of(args, m)
    rec = recurrence_from_measure(m, n)
    qs = lsop_via_recurrence(rec, n)
    doc = {
        "order": n,
        "mode": mode,
        "monic": [serialize.poly_pairs(q) for q in qs],
        "alpha": list(rec.alpha),
        "beta": list(rec.beta),
        "tau": list(rec.tau),
        "scale_squares": list(rec.scale_squares()),
    }
    _emit(args, serialize.dumps(doc))
    return EXIT_PASS


def cmd_pencil(args) -> int:
    mode = _mode(args)
    m = _measure(args, mode)
    n = _order_of(args, m)
    rec = recurrence_from_measure(m, n)
    rec_f = rec.as_float() if mode == "rational" else rec
    fv = evaluate_family(m, n)
    textbook = build_pencil(rec_f)
    report = pencil_residual(textbook, fv, rec_f)
    res_textbook = symplectic_pencil_check(textbook)
    res_corrected = symplectic_pencil_check(report.corrected)
    eigs = pencil_eigenvalues(report.corrected)
    expected = sorted([complex(float(z)) for z in m.nodes]
                      + [complex(1.0 / float(z)) for z in m.nodes],
                      key=lambda c: (c.real, c.imag))
    doc = {
        "order": n,
        "textbook_layout": {
            "U": serialize.matrix_document(textbook.u),
            "V": serialize.matrix_document(textbook.v),
            "support_residual": report.residual_given,
            "pencil_symplecticity": res_textbook[0],
            "transfer_symplecticity": res_textbook[1],
        },
        "recurrence_layout": {
            "U": serialize.matrix_document(report.corrected.u),
            "V": serialize.matrix_document(report.corrected.v),
            "support_residual": report.residual_corrected,
            "pencil_symplecticity": res_corrected[0],
            "transfer_symplecticity": res_corrected[1],
        },
        "largest_entry_difference": report.entry_difference,
        "generalized_eigenvalues": _complex_list(eigs),
        "eigenvalue_mismatch": spectra_distance(eigs, expected),
    }
    _emit(args, serialize.dumps(doc))
    return EXIT_PASS


def cmd_butterfly(args) -> int:
    mode = _mode(args)
    m = _measure(args, mode)
    n = _order_of(args, m)
    rec = recurrence_from_measure(m, n)
    rec_f = rec.as_float() if mode == "rational" else rec
    if args.gauge_seed is None:
        gauge = GaugeParams.trivial(n)
    else:
        import random as _random

        rng = _random.Random(args.gauge_seed)
        gauge = GaugeParams(r=tuple(rng.choice([-1, 1]) * rng.uniform(0.5, 2.0) for _ in range(n)),
                            lam=tuple(rng.uniform(-2.0, 2.0) for _ in range(n)))
    bp = butterfly_params(rec_f, gauge)
    bt = build_butterfly(rec_f, gauge)
    fam = gauge_transform_scaled(lsolp_from_values(evaluate_family(m, n)), gauge)
    mult = multiplication_matrix(fam)
    convention, residuals = determine_diagonal_convention(mult, rec_f, gauge)
    eigs = dense_eigs(bt)
    expected = sorted([complex(float(z)) for z in m.nodes]
                      + [complex(1.0 / float(z)) for z in m.nodes],
                      key=lambda c: (c.real, c.imag))
    doc = {
        "order": n,
        "gauge": {"r": list(gauge.r), "lambda": list(gauge.lam)},
        "params": {"a": list(bp.a), "b": list(bp.b), "c": list(bp.c), "d": list(bp.d)},
        "matrix": serialize.matrix_document(bt),
        "diagonal_convention": convention,
        "convention_residuals": {k: v for k, v in sorted(residuals.items())},
        "spectrum": _complex_list(eigs),
        "spectrum_mismatch": spectra_distance(eigs, expected),
    }
    _emit(args, serialize.dumps(doc))
    return EXIT_PASS


def cmd_solve_butterfly(args) -> int:
    mode = _mode(args)
    with open(args.params) as fh:
        a, b, c, d = serialize.load_butterfly_params(fh.read(), mode)
    bp = ButterflyParams(a=tuple(a), b=tuple(b), c=tuple(c), d=tuple(d))
    if not bp.hypothesis_holds():
        print("error: reduction hypothesis a_i * a_{i+1} > 0 violated; "
              "the symmetric tridiagonal reduction does not apply", file=sys.stderr)
        return EXIT_USAGE
    tri = butterfly_to_tridiagonal(bp)
    lams = sym_tridiag_eigs(tri)
    pairs = eig_correspondence(lams)
    recovered = canonical_z_list(pairs)
    direct = dense_eigs(butterfly_from_params(bp))
    mismatch = spectra_distance(recovered, direct)
    doc = {
        "order": bp.order,
        "tridiagonal": {"diag": list(tri.diag), "offdiag": list(tri.offdiag)},
        "folded_eigenvalues": list(lams),
        "pairs": [_complex_list(p) for p in pairs],
        "dense_spectrum": _complex_list(direct),
        "max_mismatch": mismatch,
    }
    _emit(args, serialize.dumps(doc))
    return EXIT_PASS if mismatch <= 1e-7 else EXIT_FLAGGED


def _complex_list(zs) -> List[List[float]]:
    return [[z.real, z.imag] for z in zs]


if __name__ == "__main__":
    sys.exit(main())
