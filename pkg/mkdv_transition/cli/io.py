"""
File I/O of the command-line pipeline: profile CSV, scattering/phase JSON, tables and run manifests.
"""

import json
import logging
import math
from pathlib import Path
from typing import Any, Iterable, List

import numpy as np
import pandas as pd
from pydantic import ValidationError
from returns.result import Result, Success

from ..core.base_models import StageError, validation_failure
from ..core.problem_types import Stage
from ..models.delta_models import PhaseAtOne
from ..models.report_models import RunManifest
from ..models.scattering_models import InitialProfile, ScatteringData

logger = logging.getLogger(__name__)

FLOAT_FORMAT = "%.12g"


def rounded(value: Any) -> Any:
    """Round every float in a JSON-ready structure to 12 significant digits."""
    if isinstance(value, (float, np.floating)):
        value = float(value)
        return value if not math.isfinite(value) else float(f"{value:.12g}")
    if isinstance(value, (np.integer,)):
        return int(value)
    if isinstance(value, complex):
        return {"re": rounded(value.real), "im": rounded(value.imag)}
    if isinstance(value, dict):
        return {str(k): rounded(v) for k, v in value.items()}
    if isinstance(value, (list, tuple, np.ndarray)):
        return [rounded(v) for v in value]
    return value


def write_json(payload: Any, path: Path) -> Path:
    path = Path(path)
    path.write_text(json.dumps(rounded(payload), indent=2, sort_keys=False) + "\n", encoding="utf-8")
    return path


def write_table(frame: pd.DataFrame, path: Path) -> Path:
    """CSV in the frame's column order, 12 significant digits, no index."""
    path = Path(path)
    frame.to_csv(path, index=False, float_format=FLOAT_FORMAT)
    return path


def manifest_path(output: Path) -> Path:
    output = Path(output)
    return output.with_name(output.name + ".manifest.json")


def write_manifest(manifest: RunManifest, output: Path) -> Path:
    return write_json(manifest.model_dump(mode="json"), manifest_path(output))


def remove_outputs(paths: Iterable[Path]) -> None:
    for path in paths:
        try:
            Path(path).unlink(missing_ok=True)
        except OSError as e:
            logger.warning("could not remove partial output %s: %s", path, e)


def read_numeric_csv(path: Path, columns: List[str], stage: Stage) -> Result[pd.DataFrame, StageError]:
    """Read a CSV with the given numeric columns; diagnostics carry 1-based file line numbers."""
    path = Path(path)
    try:
        frame = pd.read_csv(path, dtype=str, skipinitialspace=True)
    except FileNotFoundError:
        return validation_failure(stage, f"file not found: {path}", path=str(path))
    except pd.errors.EmptyDataError:
        return validation_failure(stage, f"{path}: file is empty", path=str(path))
    except pd.errors.ParserError as e:
        return validation_failure(stage, f"{path}: malformed CSV: {e}", path=str(path))

    missing = [c for c in columns if c not in frame.columns]
    if missing:
        return validation_failure(
            stage, f"{path}: missing column(s) {missing}, header is {list(frame.columns)}", path=str(path)
        )
    if frame.empty:
        return validation_failure(stage, f"{path}: no data rows", path=str(path))

    numeric = frame[columns].apply(pd.to_numeric, errors="coerce")
    bad = numeric.isna()
    if bad.to_numpy().any():
        row, col = np.argwhere(bad.to_numpy())[0]
        line = int(row) + 2
        cell = frame[columns].iloc[row, col]
        return validation_failure(
            stage,
            f"{path}:{line}: missing or non-numeric value {cell!r} in column '{columns[col]}'",
            path=str(path),
            line=line,
            column=columns[col],
        )
    return Success(numeric)


def read_profile(path: Path) -> Result[InitialProfile, StageError]:
    """Profile CSV with columns ``x,q``."""

    def build(frame: pd.DataFrame) -> Result[InitialProfile, StageError]:
        try:
            return Success(
                InitialProfile(x=frame["x"].to_numpy(), q=frame["q"].to_numpy(), label=Path(path).stem)
            )
        except ValidationError as e:
            message = "; ".join(err["msg"] for err in e.errors())
            return validation_failure(Stage.IO, f"{path}: invalid profile: {message}", path=str(path))

    return read_numeric_csv(path, ["x", "q"], Stage.IO).bind(build)


def read_zgrid(path: Path) -> Result[np.ndarray, StageError]:
    """Real z grid CSV with a single column ``z``."""
    return read_numeric_csv(path, ["z"], Stage.IO).map(lambda frame: frame["z"].to_numpy(dtype=float))


def _read_json(path: Path, stage: Stage) -> Result[dict, StageError]:
    try:
        return Success(json.loads(Path(path).read_text(encoding="utf-8")))
    except FileNotFoundError:
        return validation_failure(stage, f"file not found: {path}", path=str(path))
    except json.JSONDecodeError as e:
        return validation_failure(stage, f"{path}:{e.lineno}: invalid JSON: {e.msg}", path=str(path), line=e.lineno)


def read_scattering(path: Path) -> Result[ScatteringData, StageError]:
    def build(payload: dict) -> Result[ScatteringData, StageError]:
        try:
            return Success(ScatteringData.from_payload(payload))
        except (KeyError, TypeError, ValueError) as e:
            return validation_failure(Stage.IO, f"{path}: invalid scattering data: {e}", path=str(path))

    return _read_json(path, Stage.IO).bind(build)


def read_phase(path: Path) -> Result[PhaseAtOne, StageError]:
    def build(payload: dict) -> Result[PhaseAtOne, StageError]:
        try:
            return Success(PhaseAtOne.from_payload(payload))
        except (KeyError, TypeError, ValueError) as e:
            return validation_failure(Stage.IO, f"{path}: invalid phase data: {e}", path=str(path))

    return _read_json(path, Stage.IO).bind(build)
