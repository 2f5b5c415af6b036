"""Command-line surface: verification suites, operator checks, data dumps.

Subcommands
-----------
verify             run every suite and emit a machine-readable report
op-check EXPR      evaluate ``LHS == RHS`` over the operator grammar
dump eigenfunction sampled wave function as CSV
dump gram          dual-family Gram matrix as CSV plus a JSON defect line
dump coherent      coherent-state observables as JSON
dump evolve        label trajectory (or grid expectation) vs classical orbit
dump decay         growth factor and mixed pairing over time

Exit codes: 0 success, 1 failed checks or runtime failure, 2 usage error.
Output is deterministic for a fixed configuration; the environment
variable ``IWQM_SEED`` (default 0) seeds the sampled label grid.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

import numpy as np

from .algebra import BRA, KET, DualVector, dual_pairing
from .coherent import (
    TruncationError,
    build_coherent,
    eigen_residual,
    expectation,
    mutual_pairing,
    uncertainty_product,
)
from .dynamics import (
    classical_orbit,
    gaussian_packet,
    grid_split_step,
    integrate_alpha,
    propagate_coeffs,
    propagate_fock,
)
from .eigenfunctions import eigenfunction, evaluate
from .expressions import ExpressionParseError, equation_residual
from .quadrature import gram_matrix
from .verify import RunConfig, SuiteReport, determine_bra_phase, report_csv_lines, report_dict, run_all


def _complex_pair(z: complex) -> list[float]:
    return [float(z.real), float(z.imag)]


def _emit(text: str, out_path: str | None) -> None:
    if out_path:
        with open(out_path, "w", encoding="utf-8") as handle:
            handle.write(text if text.endswith("\n") else text + "\n")
    else:
        print(text)


def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--nmax", type=int, default=64, help="Fock truncation (default 64)")
    parser.add_argument("--omega", type=float, default=1.0, help="well curvature (default 1.0)")
    parser.add_argument("--tol", type=float, default=1e-10, help="pass tolerance (default 1e-10)")
    parser.add_argument("--format", dest="fmt", choices=("json", "csv"), default="json")
    parser.add_argument("--sigma", type=int, choices=(1, -1), default=-1,
                        help="adjoint sign: generators map to sigma*i times themselves")
    parser.add_argument("--strict", action="store_true",
                        help="escalate truncation warnings to errors")
    parser.add_argument("--out", type=str, default=None, help="write the payload to a file")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="iwqm",
                                     description="inverted-well quantum mechanics toolkit")
    sub = parser.add_subparsers(dest="command", required=True)

    p_verify = sub.add_parser("verify", help="run all verification suites")
    _add_common(p_verify)
    p_verify.set_defaults(handler=cmd_verify)

    p_op = sub.add_parser("op-check", help="check an operator identity LHS == RHS")
    p_op.add_argument("expression", type=str)
    _add_common(p_op)
    p_op.set_defaults(handler=cmd_op_check)

    p_dump = sub.add_parser("dump", help="emit plot-ready data")
    dump_sub = p_dump.add_subparsers(dest="what", required=True)

    p_eig = dump_sub.add_parser("eigenfunction")
    p_eig.add_argument("--set", dest="family", choices=(KET, BRA), default=KET)
    p_eig.add_argument("--n", type=int, default=0)
    p_eig.add_argument("--xmin", type=float, default=-5.0)
    p_eig.add_argument("--xmax", type=float, default=5.0)
    p_eig.add_argument("--samples", type=int, default=1001)
    _add_common(p_eig)
    p_eig.set_defaults(handler=cmd_dump_eigenfunction)

    p_gram = dump_sub.add_parser("gram")
    p_gram.add_argument("--nodes", type=int, default=64)
    _add_common(p_gram)
    p_gram.set_defaults(handler=cmd_dump_gram)

    p_coh = dump_sub.add_parser("coherent")
    p_coh.add_argument("--alpha-re", type=float, default=1.0)
    p_coh.add_argument("--alpha-im", type=float, default=0.0)
    _add_common(p_coh)
    p_coh.set_defaults(handler=cmd_dump_coherent)

    p_evolve = dump_sub.add_parser("evolve")
    p_evolve.add_argument("--v", type=float, default=0.5, help="initial velocity")
    p_evolve.add_argument("--tfinal", type=float, default=1.5)
    p_evolve.add_argument("--dt", type=float, default=None)
    p_evolve.add_argument("--grid", action="store_true",
                          help="use the spectral grid oracle instead of the label equation")
    _add_common(p_evolve)
    p_evolve.set_defaults(handler=cmd_dump_evolve)

    p_decay = dump_sub.add_parser("decay")
    p_decay.add_argument("--n", type=int, default=0)
    p_decay.add_argument("--set", dest="family", choices=(KET, BRA), default=KET)
    p_decay.add_argument("--tfinal", type=float, default=1.0)
    p_decay.add_argument("--dt", type=float, default=0.01)
    _add_common(p_decay)
    p_decay.set_defaults(handler=cmd_dump_decay)

    return parser


def config_from_args(args: argparse.Namespace) -> RunConfig:
    seed = int(os.environ.get("IWQM_SEED", "0"))
    return RunConfig(nmax=args.nmax, omega=args.omega, tol=args.tol, fmt=args.fmt,
                     sigma=args.sigma, strict=args.strict, seed=seed)


def _render_report(cfg: RunConfig, suites: list[SuiteReport], out_path: str | None) -> int:
    if cfg.fmt == "json":
        _emit(json.dumps(report_dict(cfg, suites), indent=2), out_path)
    else:
        _emit("\n".join(report_csv_lines(suites)), out_path)
    return 0 if all(s.passed for s in suites) else 1


def cmd_verify(args: argparse.Namespace, cfg: RunConfig) -> int:
    return _render_report(cfg, run_all(cfg), args.out)


def cmd_op_check(args: argparse.Namespace, cfg: RunConfig) -> int:
    residual = equation_residual(args.expression, cfg.nmax, cfg.sigma, cfg.omega)
    report = SuiteReport("op-check")
    report.add("expression", args.expression, residual, cfg.tol)
    return _render_report(cfg, [report], args.out)


def cmd_dump_eigenfunction(args: argparse.Namespace, cfg: RunConfig) -> int:
    if args.n < 0:
        raise ValueError(f"level must be nonnegative, got {args.n}")
    if args.samples < 2 or args.xmax <= args.xmin:
        raise ValueError("need samples >= 2 and xmax > xmin")
    f = eigenfunction(args.family, args.n)
    x = np.linspace(args.xmin, args.xmax, args.samples)
    values = evaluate(f, x)
    lines = ["x,re_psi,im_psi,abs2_psi"]
    for xi, vi in zip(x, values):
        lines.append(f"{float(xi)!r},{float(vi.real)!r},{float(vi.imag)!r},{float(abs(vi) ** 2)!r}")
    _emit("\n".join(lines), args.out)
    return 0


def cmd_dump_gram(args: argparse.Namespace, cfg: RunConfig) -> int:
    gram = gram_matrix(cfg.nmax, node_count=args.nodes)
    lines = []
    for row in gram:
        cells = []
        for z in row:
            cells.append(repr(float(z.real)))
            cells.append(repr(float(z.imag)))
        lines.append(",".join(cells))
    _emit("\n".join(lines), args.out)
    defect = float(np.max(np.abs(gram - np.eye(cfg.nmax + 1))))
    print(json.dumps({"nmax": cfg.nmax, "nodes": args.nodes, "max_defect": defect,
                      "passed": defect <= 1e-8}))
    return 0


def cmd_dump_coherent(args: argparse.Namespace, cfg: RunConfig) -> int:
    alpha = complex(args.alpha_re, args.alpha_im)
    strict = cfg.strict
    ket = build_coherent(KET, alpha, cfg.nmax, strict=strict)
    bra = build_coherent(BRA, alpha, cfg.nmax, strict=strict)
    unc = uncertainty_product(alpha, cfg.nmax, strict=strict)
    payload = {
        "alpha": _complex_pair(alpha),
        "nmax": cfg.nmax,
        "bra_phase": determine_bra_phase(cfg.nmax),
        "pairing": _complex_pair(mutual_pairing(bra, ket)),
        "eigen_residual": max(eigen_residual(ket), eigen_residual(bra)),
        "x": _complex_pair(expectation("x", alpha, cfg.nmax, strict=strict)),
        "p": _complex_pair(expectation("p", alpha, cfg.nmax, strict=strict)),
        "x2": _complex_pair(expectation("x2", alpha, cfg.nmax, strict=strict)),
        "p2": _complex_pair(expectation("p2", alpha, cfg.nmax, strict=strict)),
        "dx2": _complex_pair(unc.dx2),
        "dp2": _complex_pair(unc.dp2),
        "product": unc.product,
    }
    _emit(json.dumps(payload, indent=2), args.out)
    return 0


def cmd_dump_evolve(args: argparse.Namespace, cfg: RunConfig) -> int:
    if args.tfinal <= 0:
        raise ValueError(f"tfinal must be positive, got {args.tfinal}")
    dt = args.dt if args.dt is not None else 1e-3 / cfg.omega
    if args.grid:
        steps = int(round(args.tfinal / dt))
        trajectory = grid_split_step(gaussian_packet(args.v, cfg.omega), dt, steps)
    else:
        trajectory = integrate_alpha(args.v, cfg.omega, args.tfinal, dt)
    classical = classical_orbit(args.v, cfg.omega, 1, trajectory.times)
    lines = ["t,re_x,im_x,classical_x,abs_error"]
    for t, z, c in zip(trajectory.times, trajectory.values, classical):
        lines.append(f"{float(t)!r},{float(z.real)!r},{float(z.imag)!r},"
                     f"{float(c)!r},{float(abs(z - c))!r}")
    _emit("\n".join(lines), args.out)
    return 0


def cmd_dump_decay(args: argparse.Namespace, cfg: RunConfig) -> int:
    if args.n < 0:
        raise ValueError(f"level must be nonnegative, got {args.n}")
    if args.tfinal <= 0 or args.dt <= 0:
        raise ValueError("tfinal and dt must be positive")
    dim = args.n + 2
    base_ket = np.zeros(dim, dtype=complex)
    base_ket[args.n] = 1.0
    steps = int(round(args.tfinal / args.dt))
    lines = ["t,factor,mixed_pairing"]
    for k in range(steps + 1):
        t = k * args.dt
        factor = propagate_fock(args.family, args.n, cfg.omega, t)
        ket = DualVector(KET, propagate_coeffs(KET, base_ket, cfg.omega, t))
        bra = DualVector(BRA, propagate_coeffs(BRA, base_ket, cfg.omega, t))
        pairing = dual_pairing(bra, ket)
        lines.append(f"{float(t)!r},{factor!r},{float(pairing.real)!r}")
    _emit("\n".join(lines), args.out)
    return 0


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = config_from_args(args)
        return args.handler(args, cfg)
    except ExpressionParseError as err:
        print(f"parse error: {err}", file=sys.stderr)
        return 2
    except TruncationError as err:
        print(f"truncation error: {err}", file=sys.stderr)
        return 1
    except ValueError as err:
        print(f"usage error: {err}", file=sys.stderr)
        return 2
    except OSError as err:
        print(str(err), file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
