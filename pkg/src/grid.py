"""
Rectangular grid evaluation of the density and CSV/JSON export.
"""

import csv
import json
import logging
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass
from pathlib import Path
from typing import List, Tuple

from src.config import log_and_status
from src.conemetric import rho_with_diagnostics
from src.errors import DomainError
from src.models import SignatureParam
from src.utils import format_number, round_to_digits

CSV_HEADER = ["re", "im", "rho", "method", "est_rel_err"]
GRID_FORMATS = ("csv", "json")

# Nodes this close (relative to the grid span) to 0 or 1 are skipped.
SINGULAR_NODE_TOL = 1e-12


@dataclass(frozen=True)
class GridSpec:
    """Rectangle [re_min, re_max] x [im_min, im_max] sampled at nx * ny nodes."""

    re_min: float
    re_max: float
    im_min: float
    im_max: float
    nx: int
    ny: int
    alpha: float

    def __post_init__(self):
        if not (self.re_min < self.re_max and self.im_min < self.im_max):
            raise DomainError("grid needs re_min < re_max and im_min < im_max")
        if self.nx < 2 or self.ny < 2:
            raise DomainError(f"grid needs nx, ny >= 2, got {self.nx}x{self.ny}")
        if not (0.0 <= self.alpha < 1.0):
            raise DomainError(f"cone angle alpha={self.alpha} must lie in [0, 1)")

    def nodes(self) -> List[complex]:
        """Nodes in output order: im-major, then re ascending."""
        dx = (self.re_max - self.re_min) / (self.nx - 1)
        dy = (self.im_max - self.im_min) / (self.ny - 1)
        return [complex(self.re_min + i * dx, self.im_min + j * dy)
                for j in range(self.ny) for i in range(self.nx)]

    def is_singular(self, z: complex) -> bool:
        scale = SINGULAR_NODE_TOL * max(1.0, self.re_max - self.re_min, self.im_max - self.im_min)
        return abs(z) <= scale or abs(z - 1) <= scale


@dataclass(frozen=True)
class GridRecord:
    """One exported grid row."""

    re: float
    im: float
    rho: float
    method: str
    est_rel_err: float


def _evaluate_node(task: Tuple[float, complex]) -> GridRecord:
    alpha, z = task
    value, method, err = rho_with_diagnostics(SignatureParam.from_alpha(alpha), z)
    return GridRecord(z.real, z.imag, value, method, err)


def evaluate_grid(spec: GridSpec, workers: int = 1, status_fn=None) -> List[GridRecord]:
    """
    Evaluate rho at every non-singular node of the grid.

    Args:
        spec: Grid description
        workers: Worker processes; 1 evaluates in-process
        status_fn: Optional progress callback

    Returns:
        Records in the deterministic im-major / re-ascending order
    """
    tasks = []
    for z in spec.nodes():
        if spec.is_singular(z):
            log_and_status(status_fn, f"Skipping grid node {z.real:g}{z.imag:+g}i: singular point of the metric",
                           level="warning")
            continue
        tasks.append((spec.alpha, z))

    log_and_status(status_fn, f"Evaluating {len(tasks)} grid nodes (alpha={spec.alpha:g}, workers={workers})")
    if workers > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            records = list(pool.map(_evaluate_node, tasks, chunksize=max(1, len(tasks) // (4 * workers))))
    else:
        records = [_evaluate_node(task) for task in tasks]
    return records


def _rows(records: List[GridRecord], digits: int):
    for record in records:
        yield [
            format_number(record.re, digits),
            format_number(record.im, digits),
            format_number(record.rho, digits),
            record.method,
            format_number(record.est_rel_err, 3),
        ]


def write_grid(records: List[GridRecord], path, fmt: str = "csv", digits: int = 15) -> Path:
    """
    Write records atomically; a failed write leaves no partial file behind.

    Raises:
        DomainError: unknown format
        OSError: the target cannot be written
    """
    if fmt not in GRID_FORMATS:
        raise DomainError(f"unknown grid format {fmt!r}; expected one of {GRID_FORMATS}")
    path = Path(path)
    partial = path.with_name(path.name + ".partial")
    try:
        with open(partial, "w", encoding="utf-8", newline="") as f:
            if fmt == "csv":
                writer = csv.writer(f, lineterminator="\n")
                writer.writerow(CSV_HEADER)
                writer.writerows(_rows(records, digits))
            else:
                payload = []
                for record in records:
                    row = asdict(record)
                    for key in ("re", "im", "rho"):
                        row[key] = round_to_digits(row[key], digits)
                    row["est_rel_err"] = round_to_digits(row["est_rel_err"], 3)
                    payload.append(row)
                json.dump(payload, f, indent=2)
                f.write("\n")
        os.replace(partial, path)
    except Exception:
        if partial.exists():
            partial.unlink()
        logging.error(f"Failed to write grid to {path}; partial output removed")
        raise
    logging.info(f"✓ Wrote {len(records)} grid records to {path}")
    return path
