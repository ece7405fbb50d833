from __future__ import annotations

import argparse
import sys
from pathlib import Path
from typing import Callable, Optional, Sequence

from lab_common.errors import DomainError, InvalidParameterError
from lab_common.outputs import SEED_ENV, default_seed

EXIT_OK, EXIT_INVALID, EXIT_DOMAIN, EXIT_FAILED = 0, 2, 3, 4


def _sizes(text: str) -> list[int]:
    try:
        return [int(v) for v in text.split(",") if v.strip()]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers (got {text!r})") from exc


def _common(p: argparse.ArgumentParser, threads: bool = True) -> None:
    p.add_argument("--seed", type=int, default=None, help=f"base seed (default: ${SEED_ENV} or 0)")
    p.add_argument("--out", type=Path, default=None, help="output directory (default: outputs/<command>)")
    if threads:
        p.add_argument("--threads", type=int, default=1)


def _sle(p: argparse.ArgumentParser, t_max: float) -> None:
    p.add_argument("--kappa", type=float, required=True)
    p.add_argument("--step", type=float, default=1e-3)
    p.add_argument("--t-max", type=float, default=t_max)


def _run_trace(a: argparse.Namespace) -> int:
    from loewner.run import cmd_trace

    return cmd_trace(a.kappa, a.step, a.t_max, a.seed, a.out, constant_driving=a.constant_driving)


def _run_field(a: argparse.Namespace) -> int:
    from analytic_prob.run import cmd_field

    return cmd_field(a.kappa, a.grid, a.out)


def _run_endpoints(a: argparse.Namespace) -> int:
    from loewner.run import cmd_sle_endpoints

    return cmd_sle_endpoints(
        a.kappa, a.n_traces, a.seed, a.out, step=a.step, t_max=a.t_max, threads=a.threads, mirrored=a.mirrored
    )


def _run_ising(a: argparse.Namespace) -> int:
    from ising_lab.run import cmd_ising

    return cmd_ising(a.L, a.n_samples, a.seed, a.out, a.threads, a.replicas, a.full_scale)


def _run_scaling(a: argparse.Namespace) -> int:
    from ising_lab.run import cmd_ising_scaling

    return cmd_ising_scaling(a.L, a.n_samples, a.seed, a.out, a.threads, a.replicas, a.full_scale)


def _run_verify(a: argparse.Namespace) -> int:
    from verification.run import cmd_verify

    return cmd_verify(a.checks, a.scale, a.seed, a.out, a.threads)


def _run_report(a: argparse.Namespace) -> int:
    from reporting.run import cmd_report

    return cmd_report(a.findings, a.out, pdf=not a.no_pdf)


def build_parser(prog: Optional[str] = None, commands: Optional[Sequence[str]] = None) -> argparse.ArgumentParser:
    from analytic_prob.run import DEFAULT_GRID
    from ising_lab.run import DEFAULT_SAMPLES, DEFAULT_SIZES
    from reporting.report_md import FINDINGS_CSV
    from verification.checks import CHECKS, SCALES

    parser = argparse.ArgumentParser(prog=prog or "dipolar-lab", description="Dipolar SLE and critical Ising lab.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name: str, handler: Callable[[argparse.Namespace], int], help_text: str) -> argparse.ArgumentParser:
        p = sub.add_parser(name, help=help_text)
        p.set_defaults(handler=handler)
        return p

    wanted = set(commands) if commands else None

    if wanted is None or "trace" in wanted:
        p = add("trace", _run_trace, "reconstruct one SLE trace")
        _sle(p, t_max=10.0)
        _common(p, threads=False)
        p.add_argument("--constant-driving", action="store_true", help="freeze the driving at 0 (vertical slit)")

    if wanted is None or "field" in wanted:
        p = add("field", _run_field, "tabulate p_left / p_right / p_in on a grid")
        p.add_argument("--kappa", type=float, required=True)
        p.add_argument("--grid", default=DEFAULT_GRID, help="xmin:xmax:nx,ymin:ymax:ny")
        p.add_argument("--out", type=Path, default=None)

    if wanted is None or "sle-endpoints" in wanted:
        p = add("sle-endpoints", _run_endpoints, "upper-boundary endpoints against p_up")
        _sle(p, t_max=25.0)
        p.add_argument("--n-traces", type=int, default=5000)
        p.add_argument("--mirrored", action="store_true", help="also run the negated driving of every trace")
        _common(p)

    for name, handler, help_text in (
        ("ising", _run_ising, "critical Ising interface endpoints at one L"),
        ("ising-scaling", _run_scaling, "delta against L and the scaling fit"),
    ):
        if wanted is not None and name not in wanted:
            continue
        p = add(name, handler, help_text)
        if name == "ising":
            p.add_argument("--L", type=int, required=True)
        else:
            p.add_argument("--L", type=_sizes, default=list(DEFAULT_SIZES), help="comma-separated sizes")
        p.add_argument("--n-samples", type=int, default=DEFAULT_SAMPLES)
        p.add_argument("--replicas", type=int, default=1)
        p.add_argument(
            "--paper-scale", "--full-scale", dest="full_scale", action="store_true",
            help="320,000 samples per size (and the full size list)",
        )
        _common(p)

    if wanted is None or "verify" in wanted:
        p = add("verify", _run_verify, "run the acceptance checks")
        p.add_argument("--checks", type=lambda s: s.split(","), default=None, help=",".join(CHECKS))
        p.add_argument("--scale", choices=sorted(SCALES), default="quick")
        _common(p)

    if wanted is None or "report" in wanted:
        p = add("report", _run_report, "markdown / HTML / PDF verification report")
        p.add_argument("--findings", type=Path, default=FINDINGS_CSV)
        p.add_argument("--out", type=Path, default=None, help="outputs root to read comparisons from and write into")
        p.add_argument("--no-pdf", action="store_true")

    return parser


def main(
    argv: Optional[Sequence[str]] = None, commands: Optional[Sequence[str]] = None, prog: Optional[str] = None
) -> int:
    parser = build_parser(prog, commands)
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        if getattr(args, "seed", 0) is None:
            args.seed = default_seed()
        if getattr(args, "threads", 1) < 1:
            raise InvalidParameterError(f"--threads must be >= 1 (got {args.threads})")
        return int(args.handler(args))
    except InvalidParameterError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INVALID
    except DomainError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_DOMAIN
