"""Command line for the frame multiplier toolkit.

Subcommands::

    framecheck FRAME
    invert --phi FILE (--psi FILE | --L --a --M --window SPEC [--psi-window SPEC | --g-window SPEC])
           --symbol SPEC --method prop8|prop9|prop11|direct [--e E] [--out FILE] [--companion-out FILE] [--report FILE]
    bench-convergence --L --a --M --phi-window SPEC --g-window SPEC --symbol SPEC --out CSV
    apply-mask SIGNAL --L --a --M --window SPEC --mask FILE --out SIGNAL [--invert-after --recovered SIGNAL]
    duals --phi FILE --psi FILE --symbol SPEC --psi-out FILE --phi-out FILE

Every command writes a JSON payload to stdout and logs to stderr. Defaults
for the tolerance, target error, seed and log level come from FRAMEMULT_*
environment variables (see settings.py); flags win.
"""

import argparse
import csv
import json
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Optional

import numpy as np

import duality
import inversion
import multiplier
from errors import (
    ConditionViolatedError,
    FrameMultError,
    ShapeMismatchError,
    SymbolError,
    UsageError,
    exit_code_for,
)
from frames import FiniteFrame, Symbol, canonical_dual, canonical_tight, frame_bounds, is_frame
from gabor import GaborLattice, GaborSystem, parse_window_spec
from log_helpers import configure_logging, get_logger
from matrix_io_helpers import MaskGrid, parse_symbol_spec, read_frame, read_mask, write_matrix
from settings import Settings, load_settings
from wav_helpers import Signal, read_wav, write_wav

log = get_logger(__name__)

ERROR = "error"
EXIT_CODE = "exit_code"
CSV_HEADER = ["iteration", "measured_error", "predicted_bound"]
# absolute rounding allowance when comparing measured errors to bounds
DOMINANCE_FLOOR = 1e-10


def output_json(a_dict: dict) -> None:
    sys.stdout.write(json.dumps(a_dict) + "\n")


# ---------------------------------------------------------------------------
# framecheck
# ---------------------------------------------------------------------------

def cmd_framecheck(args: argparse.Namespace, settings: Settings) -> dict:
    frame = read_frame(args.frame)
    bounds = frame_bounds(frame)
    return {
        "d": frame.dim,
        "N": frame.count,
        "A": bounds.lower,
        "B": bounds.upper,
        "is_frame": is_frame(frame, settings.tol_frame),
        "condition": bounds.condition,
    }


# ---------------------------------------------------------------------------
# invert
# ---------------------------------------------------------------------------

def lattice_from_args(args: argparse.Namespace) -> GaborLattice:
    if args.L is None or args.a is None or args.M is None:
        raise ShapeMismatchError("--L, --a and --M are all required for a Gabor system")
    return GaborLattice(args.L, args.a, args.M)


def frames_from_args(args: argparse.Namespace, settings: Settings) -> tuple[FiniteFrame, FiniteFrame, Symbol, dict]:
    """Phi, Psi and m from either matrix files or a Gabor description."""
    extra: dict = {}
    if args.L is None:
        if not args.phi or not args.psi:
            raise ShapeMismatchError("give --phi and --psi files, or a Gabor spec with --L --a --M")
        phi, psi = read_frame(args.phi), read_frame(args.psi)
        return phi, psi, parse_symbol_spec(args.symbol, phi.count, settings.seed), extra

    lattice = lattice_from_args(args)
    phi_system = GaborSystem(lattice, parse_window_spec(args.window, lattice))
    symbol = parse_symbol_spec(args.symbol, lattice.count, settings.seed)
    if args.g_window:
        psi_system, delta = inversion.gabor_perturbation(
            phi_system, parse_window_spec(args.g_window, lattice), symbol, settings.perturbation_ratio
        )
        extra["delta"] = delta
    elif args.psi_window:
        psi_system = GaborSystem(lattice, parse_window_spec(args.psi_window, lattice))
    else:
        psi_system = phi_system
    return phi_system.frame, psi_system.frame, symbol, extra


def cmd_invert(args: argparse.Namespace, settings: Settings) -> dict:
    phi, psi, symbol, extra = frames_from_args(args, settings)
    oracle = None
    if args.oracle:
        matrix = multiplier.multiplier_matrix(symbol, psi, phi) if args.swap else multiplier.multiplier_matrix(symbol, phi, psi)
        oracle = inversion.direct_invert(matrix)
    if args.swap:
        inverse, report = inversion.invert_swapped(args.method, phi, psi, symbol, settings.e, oracle)
    else:
        inverse, report = inversion.invert(args.method, phi, psi, symbol, settings.e, oracle)

    payload = {
        "method": report.method,
        "swapped": bool(args.swap),
        "n_planned": report.n_planned,
        "converged": report.converged,
        "final_bound": report.final_bound,
        "final_residual": report.final_residual,
        "constants": {**report.constants, **extra},
    }
    if args.out:
        payload["out"] = str(write_matrix(args.out, inverse))
    if args.companion_out and report.companion is not None:
        payload["companion_out"] = str(write_matrix(args.companion_out, report.companion))
    if args.report:
        Path(args.report).write_text("\n".join(report.to_lines()) + "\n", encoding="utf-8")
        payload["report"] = args.report
    return payload


# ---------------------------------------------------------------------------
# bench-convergence
# ---------------------------------------------------------------------------

def bench_convergence(
    lattice: GaborLattice,
    phi_window: np.ndarray,
    g_window: np.ndarray,
    symbol: Symbol,
    e: float,
    ratio: float,
) -> inversion.InversionReport:
    phi_system = GaborSystem(lattice, phi_window)
    _, report, _ = inversion.prop8_invert_gabor(phi_system, g_window, symbol, e, ratio, measure=True)
    return report


def write_convergence_csv(path, report: inversion.InversionReport) -> Path:
    path = Path(path)
    with path.open("w", newline="", encoding="utf-8") as handle:
        writer = csv.writer(handle, lineterminator="\n")
        writer.writerow(CSV_HEADER)
        for k, (measured, bound) in enumerate(zip(report.residuals, report.bounds)):
            writer.writerow([k, f"{measured:.17g}", f"{bound:.17g}"])
    return path


def cmd_bench_convergence(args: argparse.Namespace, settings: Settings) -> dict:
    lattice = lattice_from_args(args)
    symbol = parse_symbol_spec(args.symbol, lattice.count, settings.seed)
    report = bench_convergence(
        lattice,
        parse_window_spec(args.phi_window, lattice),
        parse_window_spec(args.g_window, lattice),
        symbol,
        settings.e,
        settings.perturbation_ratio,
    )
    write_convergence_csv(args.out, report)
    return {
        "rows": len(report.bounds),
        "n_planned": report.n_planned,
        "final_measured": report.final_residual,
        "final_bound": report.final_bound,
        "dominated": report.dominated(floor=DOMINANCE_FLOOR),
        "constants": report.constants,
        "out": args.out,
    }


# ---------------------------------------------------------------------------
# apply-mask
# ---------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class MaskResult:
    masked: np.ndarray
    recovered: Optional[np.ndarray] = None
    method: Optional[str] = None
    report: Optional[inversion.InversionReport] = None


def apply_mask_pipeline(
    block: np.ndarray,
    lattice: GaborLattice,
    window: np.ndarray,
    mask: MaskGrid,
    invert_after: bool = False,
    e: float = 1e-8,
) -> MaskResult:
    """Mask a signal block with M_{m, dual, Psi} on the Parseval Gabor frame Psi."""
    if mask.shape != (lattice.M, lattice.n_time):
        raise ShapeMismatchError(f"mask is {mask.shape}, lattice needs {(lattice.M, lattice.n_time)}")
    tight = canonical_tight(GaborSystem(lattice, window).frame)
    dual = canonical_dual(tight)
    symbol = Symbol(mask.flatten())
    masked = multiplier.apply(multiplier.build(symbol, dual, tight), block)
    if not invert_after:
        return MaskResult(masked)

    try:
        pre = inversion.prop8_precompute(dual, symbol)
        recovered, report = inversion.prop8_apply(pre, tight, masked, e)
        return MaskResult(masked, recovered, "prop8", report)
    except (SymbolError, ConditionViolatedError) as exc:
        log.info("prop8 not applicable to mask", reason=str(exc))
    try:
        inverse, report = inversion.prop11_invert(dual, tight, symbol, e)
        return MaskResult(masked, inverse @ masked, "prop11", report)
    except ConditionViolatedError as exc:
        log.warning("mask inversion skipped, no scheme applies", reason=str(exc))
    return MaskResult(masked)


def cmd_apply_mask(args: argparse.Namespace, settings: Settings) -> dict:
    lattice = lattice_from_args(args)
    signal = read_wav(args.signal)
    if len(signal) < lattice.L:
        raise ShapeMismatchError(f"signal has {len(signal)} samples, lattice needs L={lattice.L}")
    # only the leading block of L samples is processed
    block = signal.samples[: lattice.L]
    mask = read_mask(args.mask, lattice.M, lattice.n_time)
    result = apply_mask_pipeline(
        block,
        lattice,
        parse_window_spec(args.window, lattice),
        mask,
        args.invert_after,
        settings.e,
    )
    write_wav(args.out, Signal(result.masked.real, signal.sample_rate))
    payload = {
        "samples": lattice.L,
        "input_energy": float(np.sum(block**2)),
        "masked_energy": float(np.sum(np.abs(result.masked) ** 2)),
        "out": args.out,
        "recovered": None,
    }
    if args.invert_after:
        payload["method"] = result.method
        if result.recovered is not None:
            payload["recovery_error"] = float(np.linalg.norm(result.recovered - block) / np.linalg.norm(block))
            if args.recovered:
                write_wav(args.recovered, Signal(result.recovered.real, signal.sample_rate))
                payload["recovered"] = args.recovered
    return payload


# ---------------------------------------------------------------------------
# duals
# ---------------------------------------------------------------------------

def cmd_duals(args: argparse.Namespace, settings: Settings) -> dict:
    phi, psi = read_frame(args.phi), read_frame(args.psi)
    symbol = parse_symbol_spec(args.symbol, phi.count, settings.seed)
    op = multiplier.build(symbol, phi, psi)
    pair = duality.dual_pair(op, inversion.direct_invert(op.matrix))
    payload = dict(pair.verification)
    if args.psi_out:
        payload["psi_out"] = str(write_matrix(args.psi_out, pair.psi_dagger))
    if args.phi_out:
        payload["phi_out"] = str(write_matrix(args.phi_out, pair.phi_dagger))
    return payload


# ---------------------------------------------------------------------------
# entry point
# ---------------------------------------------------------------------------

def _add_lattice_args(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--L", type=int, help="signal length")
    parser.add_argument("--a", type=int, help="time shift")
    parser.add_argument("--M", type=int, help="frequency channels")


class FrameMultParser(argparse.ArgumentParser):
    # usage errors map to exit 3
    def error(self, message: str):
        self.print_usage(sys.stderr)
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    parser = FrameMultParser(
        prog="framemult",
        description="Frame multiplier toolkit",
        epilog="exit codes: 0 ok, 2 condition violated, 3 I/O, parse or usage error, 4 shape mismatch",
    )
    parser.add_argument("--seed", type=int, help="seed for every random draw")
    parser.add_argument("--e", type=float, help="target error of the iterative inverses")
    parser.add_argument("--tol-frame", type=float, help="relative eigenvalue threshold of the frame test")
    parser.add_argument("--perturbation-ratio", type=float, help="contraction ratio of the Gabor perturbation")
    parser.add_argument("--log-level", choices=["DEBUG", "INFO", "WARNING", "ERROR"])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("framecheck", help="frame bounds of a matrix file")
    p.add_argument("frame")
    p.set_defaults(handler=cmd_framecheck)

    p = sub.add_parser("invert", help="invert a multiplier")
    p.add_argument("--phi")
    p.add_argument("--psi")
    _add_lattice_args(p)
    p.add_argument("--window", default="hann", help="window of Phi: hann:<wlen>|gauss|delta|file:<path>")
    p.add_argument("--psi-window", help="window of Psi")
    p.add_argument("--g-window", help="perturbation window, Psi = Phi + delta*G")
    p.add_argument("--symbol", required=True, help="file:<path>|const:<c>|uniform:<lo>:<hi>|harmonic|blocks")
    p.add_argument("--method", choices=inversion.METHODS, default="prop8")
    p.add_argument("--swap", action="store_true", help="invert M_{m,Psi,Phi} instead")
    p.add_argument("--oracle", action="store_true", help="measure errors against a direct inverse")
    p.add_argument("--out")
    p.add_argument("--report")
    p.add_argument("--companion-out", help="inverse of the multiplier with Phi and Psi exchanged")
    p.set_defaults(handler=cmd_invert)

    p = sub.add_parser("bench-convergence", help="measured error vs predicted bound per iteration")
    _add_lattice_args(p)
    p.add_argument("--phi-window", default="hann")
    p.add_argument("--g-window", default="gauss")
    p.add_argument("--symbol", default="uniform:0.5:1")
    p.add_argument("--out", required=True)
    p.set_defaults(handler=cmd_bench_convergence)

    p = sub.add_parser("apply-mask", help="mask a WAV block in the Gabor domain")
    p.add_argument("signal")
    _add_lattice_args(p)
    p.add_argument("--window", default="hann")
    p.add_argument("--mask", required=True)
    p.add_argument("--invert-after", action="store_true")
    p.add_argument("--out", required=True)
    p.add_argument("--recovered")
    p.set_defaults(handler=cmd_apply_mask)

    p = sub.add_parser("duals", help="write the dual frames induced by a multiplier")
    p.add_argument("--phi", required=True)
    p.add_argument("--psi", required=True)
    p.add_argument("--symbol", required=True)
    p.add_argument("--psi-out")
    p.add_argument("--phi-out")
    p.set_defaults(handler=cmd_duals)
    return parser


def main(argv: Optional[list[str]] = None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except UsageError as exc:
        output_json({ERROR: str(exc), EXIT_CODE: exc.exit_code})
        return exc.exit_code
    settings = load_settings(
        seed=args.seed,
        e=args.e,
        tol_frame=args.tol_frame,
        perturbation_ratio=args.perturbation_ratio,
        log_level=args.log_level,
    )
    configure_logging(settings.log_level)
    log.debug("command", command=args.command, e=settings.e, seed=settings.seed)

    try:
        output_json(args.handler(args, settings))
    except (FrameMultError, OSError, ValueError) as exc:
        code = exit_code_for(exc)
        log.error("command failed", command=args.command, error=str(exc), exit_code=code)
        payload = {ERROR: str(exc), EXIT_CODE: code}
        if isinstance(exc, ConditionViolatedError):
            payload["constants"] = exc.constants
        output_json(payload)
        return code
    return 0


def do() -> None:
    sys.exit(main())


if __name__ == "__main__":
    do()
