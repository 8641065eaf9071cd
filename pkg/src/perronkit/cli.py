"""Command-line front end: partition, radii, classification and Perron vectors."""

from __future__ import annotations

import argparse
import csv
import json
import sys

from . import __version__
from .examples import FOUR_BLOCKS_REFERENCE, four_blocks_tensor
from .generator import GeneratorSpec, generate
from .graph import majorization
from .partition import canonical_partition
from .perron import (
    FixedPointConfig,
    MonotonicityViolated,
    NotStronglyNonnegative,
    classify,
    positive_perron_vector,
)
from .spectral import NotConverged, PowerMethodConfig, block_spectra
from .tensor import read_tensor, write_tensor

USAGE_ERROR = 64


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(USAGE_ERROR, f"{self.prog}: error: {message}\n")


def _emit(payload, fmt: str) -> None:
    if fmt == "json":
        print(json.dumps(payload))
        return
    _emit_plain(payload)


def _emit_plain(payload, indent: str = "") -> None:
    if isinstance(payload, dict):
        for key, value in payload.items():
            if isinstance(value, (dict, list)):
                print(f"{indent}{key}:")
                _emit_plain(value, indent + "  ")
            else:
                print(f"{indent}{key}: {value}")
    elif isinstance(payload, list):
        for value in payload:
            if isinstance(value, (dict, list)):
                _emit_plain(value, indent + "  ")
            else:
                print(f"{indent}{value}")
    else:
        print(f"{indent}{payload}")


def _add_format(p: argparse.ArgumentParser) -> None:
    p.add_argument("--format", choices=("json", "plain"), default="json")


def _build_parser() -> _Parser:
    parser = _Parser(prog="perronkit", description=__doc__)
    parser.add_argument("--version", action="version", version=f"perronkit {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("partition", help="canonical nonnegative partition")
    p.add_argument("file")
    _add_format(p)

    p = sub.add_parser("majorization", help="majorization matrix as a dense JSON array")
    p.add_argument("file")
    _add_format(p)

    p = sub.add_parser("radius", help="spectral radius and per-block radii")
    p.add_argument("file")
    p.add_argument("--tol", type=float, default=1e-6)
    p.add_argument("--max-iter", type=int, default=10000)
    _add_format(p)

    p = sub.add_parser("classify", help="strong-nonnegativity classification")
    p.add_argument("file")
    p.add_argument("--rho-tol", type=float, default=1e-6)
    _add_format(p)

    p = sub.add_parser("perron", help="positive Perron vector via fixed-point iteration")
    p.add_argument("file")
    p.add_argument("--gamma", type=float, default=1e-3)
    p.add_argument("--tol", type=float, default=1e-6)
    p.add_argument("--max-iter", type=int, default=100000)
    p.add_argument("--rho-tol", type=float, default=1e-6)
    p.add_argument("--trace", metavar="CSV", help="write per-iteration residuals to CSV")
    _add_format(p)

    p = sub.add_parser("gen", help="generate a random strongly nonnegative instance")
    p.add_argument("--blocks", required=True, help="comma-separated block sizes, e.g. 8,9,10,10")
    p.add_argument("--rt", type=float, required=True)
    p.add_argument("--den", type=float, default=0.1)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("-o", "--out", required=True)
    _add_format(p)

    p = sub.add_parser("verify", help="run the brute-force oracle equivalence suite")
    _add_format(p)

    p = sub.add_parser("repro-example", help="compare the bundled example against its reference values")
    p.add_argument("--gamma", type=float, default=FOUR_BLOCKS_REFERENCE["gamma"])
    p.add_argument("--tol", type=float, default=FOUR_BLOCKS_REFERENCE["tolerance"])
    _add_format(p)

    return parser


def _cmd_partition(args) -> int:
    P = canonical_partition(read_tensor(args.file))
    _emit(
        {
            "blocks": [list(b) for b in P.blocks],
            "genuine": list(P.genuine),
            "s": P.s,
        },
        args.format,
    )
    return 0


def _cmd_majorization(args) -> int:
    M = majorization(read_tensor(args.file))
    payload = [list(row) for row in M.tolist()]
    if args.format == "json":
        print(json.dumps(payload))
    else:
        for row in payload:
            print(" ".join(str(v) for v in row))
    return 0


def _cmd_radius(args) -> int:
    cfg = PowerMethodConfig(tolerance=args.tol, max_iterations=args.max_iter)
    P, spectra = block_spectra(read_tensor(args.file), cfg)
    _emit(
        {
            "rho": max(sp.rho for sp in spectra),
            "blocks": [list(b) for b in P.blocks],
            "block_radii": [sp.rho for sp in spectra],
        },
        args.format,
    )
    return 0


def _cmd_classify(args) -> int:
    cfg = FixedPointConfig(rho_equality_tol=args.rho_tol)
    cls = classify(read_tensor(args.file), cfg, PowerMethodConfig(tolerance=1e-6))
    _emit(
        {
            "status": cls.outcome.value,
            "lambda": cls.lam,
            "blocks": [list(b) for b in cls.partition.blocks],
            "genuine": list(cls.partition.genuine),
            "block_radii": [sp.rho for sp in cls.block_spectra],
        },
        args.format,
    )
    return 0 if cls.is_strong else 2


def _cmd_perron(args) -> int:
    cfg = FixedPointConfig(
        gamma=args.gamma,
        tolerance=args.tol,
        max_iterations=args.max_iter,
        rho_equality_tol=args.rho_tol,
    )
    power_cfg = PowerMethodConfig(tolerance=min(1e-6, args.tol))
    try:
        result = positive_perron_vector(read_tensor(args.file), cfg, power_cfg)
    except NotStronglyNonnegative as exc:
        _emit(
            {
                "status": exc.classification.outcome.value,
                "lambda": exc.classification.lam,
                "vector": None,
                "residual": None,
                "iterations": None,
            },
            args.format,
        )
        return 2
    if args.trace:
        with open(args.trace, "w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(["iteration", "step_norm", "residual"])
            for rec in result.trace:
                writer.writerow([rec.iteration, repr(rec.step_norm), repr(rec.residual)])
    _emit(
        {
            "status": "strong",
            "lambda": result.lam,
            "vector": [float(v) for v in result.z],
            "residual": result.residual,
            "iterations": result.iterations,
        },
        args.format,
    )
    return 0


def _cmd_gen(args) -> int:
    sizes = tuple(int(tok) for tok in args.blocks.split(","))
    spec = GeneratorSpec(block_sizes=sizes, rt=args.rt, den=args.den, seed=args.seed)
    A = generate(spec)
    write_tensor(A, args.out)
    _emit({"path": args.out, "order": A.order, "dim": A.dim, "nnz": A.nnz}, args.format)
    return 0


def _cmd_verify(args) -> int:
    from .selfcheck import run_selfcheck

    report = run_selfcheck()
    _emit(report, args.format)
    return 0 if report["passed"] else 1


def _cmd_repro(args) -> int:
    ref = FOUR_BLOCKS_REFERENCE
    A = four_blocks_tensor()
    power_cfg = PowerMethodConfig(tolerance=1e-6)
    _, spectra = block_spectra(A, power_cfg)
    rows = []
    for j, (expected, sp) in enumerate(zip(ref["block_radii"], spectra), start=1):
        rows.append(_repro_row(f"block {j} radius", expected, sp.rho, ref["block_radii_tol"]))
    cfg = FixedPointConfig(gamma=args.gamma, tolerance=args.tol)
    result = positive_perron_vector(A, cfg, power_cfg)
    rows.append(_repro_row("lambda", ref["rho"], result.lam, ref["rho_tol"]))
    for i, expected in enumerate(ref["perron_vector"], start=1):
        rows.append(
            _repro_row(f"vector[{i}]", expected, float(result.z[i - 1]), ref["perron_vector_tol"])
        )
    rows.append(
        {
            "quantity": "residual",
            "expected": f"< {ref['residual_bound']}",
            "computed": result.residual,
            "ok": result.residual < ref["residual_bound"],
        }
    )
    lo, hi = ref["iteration_range"]
    rows.append(
        {
            "quantity": "iterations",
            "expected": f"[{lo}, {hi}]",
            "computed": result.iterations,
            "ok": lo <= result.iterations <= hi,
        }
    )
    passed = all(row["ok"] for row in rows)
    payload = {"passed": passed, "rows": rows}
    if args.format == "json":
        print(json.dumps(payload))
    else:
        width = max(len(r["quantity"]) for r in rows)
        for r in rows:
            mark = "ok" if r["ok"] else "MISMATCH"
            print(f"{r['quantity']:<{width}}  expected {r['expected']!s:>12}  got {r['computed']:<22}  {mark}")
        print("all values reproduced" if passed else "some values did not reproduce")
    return 0 if passed else 1


def _repro_row(quantity: str, expected: float, computed: float, tol: float) -> dict:
    return {
        "quantity": quantity,
        "expected": expected,
        "computed": computed,
        "tolerance": tol,
        "ok": bool(abs(computed - expected) <= tol),
    }


_COMMANDS = {
    "partition": _cmd_partition,
    "majorization": _cmd_majorization,
    "radius": _cmd_radius,
    "classify": _cmd_classify,
    "perron": _cmd_perron,
    "gen": _cmd_gen,
    "verify": _cmd_verify,
    "repro-example": _cmd_repro,
}


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except (OSError, ValueError, NotConverged, MonotonicityViolated) as exc:
        print(f"perronkit: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
