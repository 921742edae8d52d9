"""File formats: JSON for matrices, states, observables, assignment
problems and measurement statistics; CSV for correlation tables.

Matrices and vectors split into flat row-major "re"/"im" lists alongside
their dimension.  All numeric output is rounded to 12 significant digits
so that a report is byte-identical across runs with the same inputs.
"""

from __future__ import annotations

import csv
import json
from typing import Any

import numpy as np

from .contexts import Observable, observable
from .contextuality import ValueAssignmentProblem
from .correlations import CorrelationRecord
from .mub import MeasurementStatistics
from .states import DensityOperator, PureState


def round_sig(x: float, digits: int = 12) -> float:
    """Round to a fixed number of significant digits."""
    if x == 0.0 or not np.isfinite(x):
        return 0.0 if x == 0.0 else float(x)
    return float(f"{x:.{digits}g}")


def jsonable(value: Any) -> Any:
    """Recursively convert numbers, arrays and containers for JSON output."""
    if isinstance(value, dict):
        return {str(k): jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [jsonable(v) for v in value]
    if isinstance(value, np.ndarray):
        return jsonable(value.tolist())
    if isinstance(value, (bool, np.bool_)):
        return bool(value)
    if isinstance(value, (int, np.integer)):
        return int(value)
    if isinstance(value, (float, np.floating)):
        return round_sig(float(value))
    if isinstance(value, complex):
        return {"re": round_sig(value.real), "im": round_sig(value.imag)}
    return value


def matrix_to_json(m) -> dict:
    a = np.asarray(m, dtype=complex)
    n = a.shape[0]
    return {
        "dim": int(n),
        "re": [round_sig(float(x)) for x in a.real.reshape(-1)],
        "im": [round_sig(float(x)) for x in a.imag.reshape(-1)],
    }


def matrix_from_json(obj: dict) -> np.ndarray:
    n = int(obj["dim"])
    re = np.asarray(obj["re"], dtype=float)
    im = np.asarray(obj["im"], dtype=float)
    if re.size != n * n or im.size != n * n:
        raise ValueError(
            f"matrix of dimension {n} needs {n * n} entries, "
            f"got {re.size} re / {im.size} im"
        )
    return (re + 1j * im).reshape(n, n)


def vector_to_json(v) -> dict:
    a = np.asarray(v, dtype=complex).reshape(-1)
    return {
        "dim": int(a.size),
        "re": [round_sig(float(x)) for x in a.real],
        "im": [round_sig(float(x)) for x in a.imag],
    }


def vector_from_json(obj: dict) -> np.ndarray:
    n = int(obj["dim"])
    re = np.asarray(obj["re"], dtype=float)
    im = np.asarray(obj["im"], dtype=float)
    if re.size != n or im.size != n:
        raise ValueError(
            f"vector of dimension {n} needs {n} entries, "
            f"got {re.size} re / {im.size} im"
        )
    return re + 1j * im


def load_state_json(obj: dict):
    """Dispatch a state file to PureState or DensityOperator by entry count.

    A file with dim entries per part is a pure state; dim^2 entries make
    a density matrix.  Both come back validated.
    """
    n = int(obj["dim"])
    size = len(obj["re"])
    if size == n:
        return PureState(vector_from_json(obj))
    if size == n * n:
        return DensityOperator(matrix_from_json(obj))
    raise ValueError(
        f"state file with dim {n} must carry {n} (vector) or {n * n} "
        f"(matrix) entries, got {size}"
    )


def observable_to_json(obs: Observable) -> dict:
    out = matrix_to_json(obs.matrix)
    out["label"] = obs.label
    return out


def observable_from_json(obj: dict) -> Observable:
    label = str(obj.get("label", ""))
    return observable(matrix_from_json(obj), label=label)


def problem_to_json(problem: ValueAssignmentProblem) -> dict:
    return {
        "observables": [matrix_to_json(m) for m in problem.observables],
        "labels": list(problem.labels),
        "contexts": [list(ctx) for ctx in problem.contexts],
        "signs": list(problem.signs),
    }


def problem_from_json(obj: dict) -> ValueAssignmentProblem:
    observables = tuple(matrix_from_json(m) for m in obj["observables"])
    labels = tuple(str(s) for s in obj["labels"])
    contexts = tuple(tuple(int(i) for i in ctx) for ctx in obj["contexts"])
    signs = tuple(int(s) for s in obj["signs"])
    return ValueAssignmentProblem(
        observables=observables, labels=labels, contexts=contexts, signs=signs
    )


def statistics_to_json(stats: MeasurementStatistics) -> dict:
    return {
        "dim": stats.dim,
        "tables": [[round_sig(p) for p in row] for row in stats.tables],
        "samples": stats.samples,
        "seed": stats.seed,
    }


def statistics_from_json(obj: dict) -> MeasurementStatistics:
    samples = obj.get("samples")
    seed = obj.get("seed")
    return MeasurementStatistics(
        dim=int(obj["dim"]),
        tables=tuple(tuple(float(p) for p in row) for row in obj["tables"]),
        samples=None if samples is None else int(samples),
        seed=None if seed is None else int(seed),
    )


def dump_json(obj: Any, path: str | None = None) -> str:
    """Serialise deterministically; optionally also write to a file."""
    text = json.dumps(jsonable(obj), indent=2) + "\n"
    if path is not None:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    return text


def load_json(path: str) -> Any:
    with open(path, "r", encoding="utf-8") as fh:
        return json.load(fh)


CSV_COLUMNS = ("theta_degrees", "E", "p_pp", "p_pm", "p_mp", "p_mm")


def write_correlation_csv(
    path: str, rows: list[tuple[float, CorrelationRecord]]
) -> None:
    """Correlation sweep as CSV with one row per relative angle."""
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(CSV_COLUMNS)
        for theta_degrees, record in rows:
            writer.writerow(
                [
                    round_sig(theta_degrees),
                    round_sig(record.expectation),
                    round_sig(record.joint[(1, 1)]),
                    round_sig(record.joint[(1, -1)]),
                    round_sig(record.joint[(-1, 1)]),
                    round_sig(record.joint[(-1, -1)]),
                ]
            )
