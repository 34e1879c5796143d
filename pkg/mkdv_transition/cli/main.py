#!/usr/bin/env python3
"""
Command-line surface of the mkdv-transition pipeline.

Subcommands:
- scatter:   profile CSV → ScatteringData JSON
- phase:     ScatteringData JSON → p and both φ₀ variants
- painleve:  p → PII table
- asymptote: phase JSON → q_asym sweep over (t, s)
- simulate:  profile CSV → snapshots at the requested times
- compare:   profile CSV → comparison report JSON and CSV
- signature: ξ → sign table of Re(2iθ)

Exit codes: 0 success, 2 input validation failure, 3 numerical failure. Failures print a single
``{"error": {...}}`` JSON line on stderr.
"""

import argparse
import json
import logging
import os
import sys
from pathlib import Path
from typing import Callable, Dict, List, Optional

import numpy as np
from returns.result import Failure, Result, Success

from .. import __version__
from ..core.base_models import StageError, numerical_failure, validation_failure
from ..core.problem_types import ErrorKind, Stage
from ..models.report_models import RunManifest
from ..models.scattering_models import ScatteringData
from ..solvers.cauchy_delta import phi0_and_amp
from ..solvers.mkdv_sim import evolve
from ..solvers.painleve2 import solve_pii
from ..solvers.scattering import default_zgrid, scattering_data, validate_symmetries
from ..solvers.spectral_plane import saddle_points, signature_grid
from ..solvers.transition_asymptotics import ERROR_EXPONENT, transition_sweep
from . import io
from .config import PipelineConfig, resolve_config
from .pipeline import compare_asymptotics, dedupe_times

logger = logging.getLogger(__name__)

LOG_FORMAT = "%(asctime)s %(levelname)s %(name)s: %(message)s"


class _WarningCollector(logging.Handler):
    """Keeps the warnings of a run for its manifest."""

    def __init__(self) -> None:
        super().__init__(level=logging.WARNING)
        self.messages: List[str] = []

    def emit(self, record: logging.LogRecord) -> None:
        self.messages.append(record.getMessage())


class _Run:
    """Outputs written so far by one command."""

    def __init__(self, command: str, config: PipelineConfig, inputs: Dict[str, str]):
        self.command = command
        self.config = config
        self.inputs = inputs
        self.outputs: List[Path] = []

    def track(self, path: Path) -> Path:
        self.outputs.append(Path(path))
        return Path(path)

    def manifest(self, summary: Dict, warnings: List[str]) -> RunManifest:
        return RunManifest(
            command=self.command,
            inputs=self.inputs,
            config_hash=self.config.config_hash(),
            tool_version=__version__,
            tolerances=self.config.tolerances(),
            outputs=[str(p) for p in self.outputs],
            summary=io.rounded(summary),
            warnings=warnings,
        )


def _required(value: Optional[str], flag: str, stage: Stage) -> Result[Path, StageError]:
    if not value:
        return validation_failure(stage, f"{flag} is required")
    return Success(Path(value))


def cmd_scatter(args: argparse.Namespace, run: _Run) -> Result[Dict, StageError]:
    config = run.config
    profile_path = _required(args.profile, "--profile", Stage.SCATTER)
    if isinstance(profile_path, Failure):
        return profile_path
    profile = io.read_profile(profile_path.unwrap())
    if isinstance(profile, Failure):
        return profile
    if args.zgrid:
        zgrid = io.read_zgrid(Path(args.zgrid))
        if isinstance(zgrid, Failure):
            return zgrid
        grid = zgrid.unwrap()
    else:
        grid = default_zgrid(config.zgrid_options())

    result = scattering_data(profile.unwrap(), grid, config.jost_options(), config.scan_options())
    if isinstance(result, Failure):
        return result
    data = result.unwrap()
    io.write_json(data.to_payload(), run.track(args.out))

    table = data.table
    summary: Dict = {
        "poles": [{"re": p.eta.real, "im": p.eta.imag, "velocity": p.velocity} for p in data.spectrum.poles],
        "notes": data.spectrum.notes,
        "mass": data.mass,
        "r_at_one": table.r_at_one,
        "generic": table.generic,
        "margin": table.margin,
        "grid_points": int(table.grid.size),
    }
    if table.a is not None:
        defect = np.abs(np.abs(table.a) ** 2 * (1.0 - np.abs(table.r) ** 2) - 1.0)
        summary["unitarity_defect"] = float(np.max(defect))
    match validate_symmetries(table):
        case Success(report):
            summary["symmetry_deviations"] = report.deviations
        case Failure(error):
            logger.info("symmetry check skipped: %s", error.message)
    return Success(summary)


def cmd_phase(args: argparse.Namespace, run: _Run) -> Result[Dict, StageError]:
    path = _required(args.scattering, "--scattering", Stage.PHASE)
    if isinstance(path, Failure):
        return path
    data = io.read_scattering(path.unwrap())
    if isinstance(data, Failure):
        return data
    data = data.unwrap()
    result = phi0_and_amp(data.table, data.spectrum, options=run.config.cauchy_options())
    if isinstance(result, Failure):
        return result
    phase = result.unwrap()
    payload = phase.to_payload() | {"refinement_history": phase.refinement_history}
    io.write_json(payload, run.track(args.out))
    return Success(payload)


def cmd_painleve(args: argparse.Namespace, run: _Run) -> Result[Dict, StageError]:
    config = run.config
    if config.p is None:
        return validation_failure(Stage.PAINLEVE, "--p is required")
    result = solve_pii(config.pii_config(config.p))
    if isinstance(result, Failure):
        return result
    sol = result.unwrap()
    io.write_table(sol.to_frame(), run.track(args.out))
    return Success(
        {
            "p": sol.p,
            "s_range": list(sol.s_range),
            "s_start": sol.s_start,
            "method": sol.method.value,
            "residual_sup": sol.residual_sup,
            "boundary_case": sol.boundary_case,
        }
    )


def cmd_asymptote(args: argparse.Namespace, run: _Run) -> Result[Dict, StageError]:
    config = run.config
    path = _required(args.phase, "--phase", Stage.ASYMPTOTE)
    if isinstance(path, Failure):
        return path
    phase = io.read_phase(path.unwrap())
    if isinstance(phase, Failure):
        return phase
    phase = phase.unwrap()
    pii = solve_pii(config.pii_config(phase.p))
    if isinstance(pii, Failure):
        return pii
    times, _ = dedupe_times(config.tlist)
    result = transition_sweep(
        times, config.swindow, phase, pii.unwrap(), config.band_c, config.s_points, config.phi_variant
    )
    if isinstance(result, Failure):
        return result
    sweep = result.unwrap()
    io.write_table(sweep.to_frame(), run.track(args.out))
    return Success(
        {
            "variant": config.phi_variant.value,
            "phi0": phase.phase(config.phi_variant),
            "p": phase.p,
            "points": len(sweep.results),
            "outside_band": sum(1 for r in sweep.results if not r.in_band),
            "error_exponent": ERROR_EXPONENT,
        }
    )


def _snapshot_path(out: Path, t: float) -> Path:
    return out.with_name(f"{out.stem}_t{t:g}{out.suffix or '.csv'}")


def cmd_simulate(args: argparse.Namespace, run: _Run) -> Result[Dict, StageError]:
    config = run.config
    path = _required(args.profile, "--profile", Stage.SIMULATE)
    if isinstance(path, Failure):
        return path
    profile = io.read_profile(path.unwrap())
    if isinstance(profile, Failure):
        return profile
    times = dedupe_times(config.tlist)[0] if "tlist" in config.model_fields_set else [config.final_time]
    sim_config = config.sim_config(0.0)
    result = evolve(profile.unwrap(), sim_config, times)
    if isinstance(result, Failure):
        return result
    history = result.unwrap()
    out = Path(args.out)
    for state in history.snapshots:
        io.write_table(state.to_frame(), run.track(_snapshot_path(out, state.t)))
    return Success(
        {
            "config": sim_config.model_dump(mode="json"),
            "steps": history.steps,
            "mass_ledger": [list(entry) for entry in history.mass_ledger],
            "mass_drift": history.mass_drift,
        }
    )


def cmd_compare(args: argparse.Namespace, run: _Run) -> Result[Dict, StageError]:
    config = run.config
    path = _required(args.profile, "--profile", Stage.COMPARE)
    if isinstance(path, Failure):
        return path
    profile = io.read_profile(path.unwrap())
    if isinstance(profile, Failure):
        return profile
    profile = profile.unwrap()
    out = Path(args.out)
    stem = out.with_suffix("")

    if args.scattering:
        injected = io.read_scattering(Path(args.scattering))
        if isinstance(injected, Failure):
            return injected
        data: ScatteringData = injected.unwrap()
    else:
        computed = scattering_data(
            profile, default_zgrid(config.zgrid_options()), config.jost_options(), config.scan_options()
        )
        if isinstance(computed, Failure):
            return computed
        data = computed.unwrap()
        io.write_json(data.to_payload(), run.track(Path(f"{stem}.scattering.json")))

    phase = phi0_and_amp(data.table, data.spectrum, options=config.cauchy_options())
    if isinstance(phase, Failure):
        return phase
    phase = phase.unwrap()
    io.write_json(phase.to_payload(), run.track(Path(f"{stem}.phase.json")))

    pii = solve_pii(config.pii_config(phase.p))
    if isinstance(pii, Failure):
        return pii
    pii = pii.unwrap()
    io.write_table(pii.to_frame(), run.track(Path(f"{stem}.pii.csv")))

    result = compare_asymptotics(profile, phase, pii, config.sim_config(-6.0), config.compare_options())
    if isinstance(result, Failure):
        return result
    report = result.unwrap()
    io.write_json(report.to_payload(), run.track(out))
    io.write_table(report.to_frame(), run.track(out.with_suffix(".csv")))
    return Success(report.to_payload() | {"injected_scattering": bool(args.scattering)})


def cmd_signature(args: argparse.Namespace, run: _Run) -> Result[Dict, StageError]:
    config = run.config
    result = signature_grid(config.xi, config.bounds, config.resolution)
    if isinstance(result, Failure):
        return result
    io.write_table(result.unwrap().to_frame(), run.track(args.out))
    return Success({"xi": config.xi, "saddles": saddle_points(config.xi).to_payload()})


COMMANDS: Dict[str, tuple[Stage, Callable[[argparse.Namespace, _Run], Result[Dict, StageError]], str]] = {
    "scatter": (Stage.SCATTER, cmd_scatter, "Scattering data of a sampled profile"),
    "phase": (Stage.PHASE, cmd_phase, "Amplitude p and phase φ₀ from scattering data"),
    "painleve": (Stage.PAINLEVE, cmd_painleve, "Ablowitz–Segur solution of Painlevé II"),
    "asymptote": (Stage.ASYMPTOTE, cmd_asymptote, "Transition-region asymptotics over a (t, s) sweep"),
    "simulate": (Stage.SIMULATE, cmd_simulate, "Reference simulation of the mKdV equation"),
    "compare": (Stage.COMPARE, cmd_compare, "Asymptotics versus simulation"),
    "signature": (Stage.SIGNATURE, cmd_signature, "Sign table of Re(2iθ)"),
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="mkdv-transition", description=__doc__.split("\n\n")[0].strip())
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(sp: argparse.ArgumentParser) -> None:
        sp.add_argument("--config", default=None, help="key = value configuration file")
        sp.add_argument("--out", required=True, help="Primary output path")
        for name, info in PipelineConfig.model_fields.items():
            key = info.alias or name
            sp.add_argument(f"--{key}", dest=f"cfg_{name}", default=None, metavar="VALUE", help=info.description)

    for name, (_, _, help_text) in COMMANDS.items():
        sp = sub.add_parser(name, help=help_text)
        add_common(sp)
        if name in ("scatter", "simulate", "compare"):
            sp.add_argument("--profile", default=None, help="Profile CSV with columns x,q")
        if name == "scatter":
            sp.add_argument("--zgrid", default=None, help="CSV with a column z replacing the default grid")
        if name in ("phase", "compare"):
            sp.add_argument("--scattering", default=None, help="ScatteringData JSON")
        if name == "asymptote":
            sp.add_argument("--phase", default=None, help="Phase JSON from the phase command")
    return parser


def _configure_logging(level: str) -> None:
    logging.basicConfig(stream=sys.stderr, format=LOG_FORMAT, level=getattr(logging, level.upper(), logging.INFO))


def _report_failure(error: StageError) -> int:
    print(json.dumps(io.rounded(error.to_payload())), file=sys.stderr)
    return error.exit_code


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    stage, handler, _ = COMMANDS[args.command]

    overrides = {
        (info.alias or name): getattr(args, f"cfg_{name}")
        for name, info in PipelineConfig.model_fields.items()
    }
    if overrides.get("log_level") is None and os.environ.get("MKDV_TRANSITION_LOG_LEVEL"):
        overrides["log_level"] = os.environ["MKDV_TRANSITION_LOG_LEVEL"]
    resolved = resolve_config(Path(args.config) if args.config else None, overrides)
    if isinstance(resolved, Failure):
        return _report_failure(resolved.failure())
    config = resolved.unwrap()
    _configure_logging(config.log_level)

    inputs = {
        key: str(getattr(args, key))
        for key in ("profile", "scattering", "phase", "zgrid", "config")
        if getattr(args, key, None)
    }
    run = _Run(args.command, config, inputs)
    collector = _WarningCollector()
    package_logger = logging.getLogger("mkdv_transition")
    package_logger.addHandler(collector)
    try:
        try:
            result = handler(args, run)
        except Exception as e:
            logger.exception("unexpected error in %s", args.command)
            result = numerical_failure(stage, f"Error in {args.command}: {e}")
    finally:
        package_logger.removeHandler(collector)

    match result:
        case Success(summary):
            out = Path(args.out)
            path = io.write_manifest(run.manifest(summary, collector.messages), out)
            logger.info("%s finished: %d output(s), manifest %s", args.command, len(run.outputs), path)
            return 0
        case Failure(error):
            io.remove_outputs(run.outputs)
            if error.kind == ErrorKind.VALIDATION:
                logger.error("%s", error)
            else:
                logger.error("numerical failure: %s", error)
            return _report_failure(error)
    return 3


def run() -> None:
    """Console entry point."""
    sys.exit(main())


if __name__ == "__main__":
    run()
