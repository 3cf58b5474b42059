"""JSON and CSV reading/writing for requests, reports and entropy tables."""

import csv
import io
import json
import logging
import sys
from pathlib import Path
from typing import Iterable, List, Optional, Sequence, Union

import numpy as np

from spin_maxent.config import SolverOptions
from spin_maxent.core.density import entropy_report
from spin_maxent.core.obslevel import custom_level
from spin_maxent.models.levels import ConstraintSet
from spin_maxent.models.reports import (
    ComplexEntry,
    ObservableMean,
    PredictedMean,
    ReconstructionReport,
    ReconstructionRequest,
)
from spin_maxent.models.results import Method, ReconstructionResult
from spin_maxent.utils.obs_parser import format_observable, parse_observable

logger = logging.getLogger(__name__)

STDIO = "-"
PREDICTION_TOL = 1e-9

PathLike = Union[str, Path]


def ensure_parent(path: Path) -> Path:
    """Ensure the directory holding path exists, creating it if necessary."""
    path.parent.mkdir(parents=True, exist_ok=True)
    return path


def read_text(source: PathLike) -> str:
    """File contents, or stdin for '-'."""
    if str(source) == STDIO:
        return sys.stdin.read()
    with open(source, "r", encoding="utf-8") as f:
        return f.read()


def write_text(text: str, target: PathLike) -> None:
    """Write text to a file (parents created), or stdout for '-'."""
    if str(target) == STDIO:
        sys.stdout.write(text)
        return
    path = ensure_parent(Path(target))
    with open(path, "w", encoding="utf-8") as f:
        f.write(text)
    logger.debug(f"Wrote {len(text)} characters to {path}")


def read_request(source: PathLike) -> ReconstructionRequest:
    """Parse and validate a request.

    Raises:
        pydantic.ValidationError: malformed JSON or schema violation
    """
    return ReconstructionRequest.model_validate_json(read_text(source))


def request_to_constraints(request: ReconstructionRequest) -> ConstraintSet:
    """Parse the request's expressions into a level and align the means with it.

    Raises:
        ObservableSyntaxError, SiteOutOfRange, DuplicateSite: bad expression
        DuplicateObservable: two expressions denote the same string
    """
    n = request.n_spins
    observables = [parse_observable(item.expr, n) for item in request.observables]
    level = custom_level(observables, n=n, name=request.level)
    return ConstraintSet(level=level, means=tuple(item.mean for item in request.observables))


def constraints_to_request(
    c: ConstraintSet, options: Optional[SolverOptions] = None
) -> ReconstructionRequest:
    """Request that reproduces c; the inverse of request_to_constraints."""
    return ReconstructionRequest(
        n_spins=c.n,
        level=c.level.name,
        observables=[
            ObservableMean(expr=format_observable(obs), mean=mean)
            for obs, mean in zip(c.level.observables, c.means)
        ],
        options=options or SolverOptions(),
    )


def matrix_to_json(matrix: np.ndarray) -> List[List[ComplexEntry]]:
    return [
        [ComplexEntry(re=float(z.real), im=float(z.imag)) for z in row]
        for row in np.asarray(matrix, dtype=complex)
    ]


def matrix_from_json(rows: Sequence[Sequence[ComplexEntry]]) -> np.ndarray:
    return np.array([[complex(z.re, z.im) for z in row] for row in rows], dtype=complex)


def build_report(result: ReconstructionResult) -> ReconstructionReport:
    """Serializable summary of a reconstruction."""
    measured = set(result.level.labels) if result.level is not None else set()
    predicted = [
        PredictedMean(expr=format_observable(label), value=value, measured=label in measured)
        for label, value in result.predicted.nonzero(PREDICTION_TOL).items()
    ]
    spectrum = entropy_report(result.rho)
    return ReconstructionReport(
        n_spins=result.n,
        method=Method(result.method).value,
        entropy=result.entropy,
        linear_entropy=spectrum.linear,
        eigenvalues=spectrum.eigenvalues,
        residual=result.residual,
        multipliers=result.multipliers,
        predicted=predicted,
        rho=matrix_to_json(result.rho.matrix),
    )


def dump_model(model) -> str:
    """Indented JSON with shortest round-trip floats."""
    return json.dumps(model.model_dump(mode="json"), indent=2) + "\n"


def write_report(report: ReconstructionReport, target: PathLike) -> None:
    write_text(dump_model(report), target)


def read_report(source: PathLike) -> ReconstructionReport:
    return ReconstructionReport.model_validate_json(read_text(source))


def format_csv(header: Sequence[str], rows: Iterable[Sequence[float]]) -> str:
    """Comma-separated table with a header row."""
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([repr(float(v)) for v in row])
    return buffer.getvalue()


def parse_grid(text: str) -> List[float]:
    """'start:stop:step' (stop included when hit) or a single value.

    Raises:
        ValueError: malformed grid or non-positive step
    """
    parts = text.split(":")
    if len(parts) == 1:
        return [float(parts[0])]
    if len(parts) != 3:
        raise ValueError(f"Grid must be 'start:stop:step' or a single value, got {text!r}")
    start, stop, step = (float(p) for p in parts)
    if step <= 0:
        raise ValueError(f"Grid step must be positive, got {step}")
    if stop < start:
        raise ValueError(f"Grid stop {stop} is below start {start}")
    count = int(np.floor((stop - start) / step + 1e-9)) + 1
    return [start + k * step for k in range(count)]
