"""
CSV emitters for sweeps, residual grids and solved rules
"""
from pathlib import Path
from typing import Dict, Sequence, Union
import pandas as pd
from src.config.constants import CSV_FLOAT_FORMAT, SWEEP_COLUMNS, GRID_COLUMNS, SOLUTION_COLUMNS
from src.domain.entities.records import GridScan, RuleSolution, SweepRow
from src.utilities.logger import get_logger

logger = get_logger(__name__)

PathLike = Union[str, Path]


def _write(frame: pd.DataFrame, path: PathLike) -> Path:
    target = Path(path)
    frame.to_csv(target, index=False, float_format=CSV_FLOAT_FORMAT, lineterminator="\n")
    logger.info(f"Wrote {len(frame)} rows to {target}")
    return target


def sweep_frame(rows: Sequence[SweepRow]) -> pd.DataFrame:
    return pd.DataFrame([row.as_tuple() for row in rows], columns=SWEEP_COLUMNS)


def write_sweep_csv(rows: Sequence[SweepRow], path: PathLike) -> Path:
    return _write(sweep_frame(rows), path)


def write_grid_csv(scans: Dict[str, GridScan], path: PathLike) -> Path:
    """
    Residual grids, one block per rule

    A single scan is written with columns q1, q2, residual; several scans get
    a leading rule column.
    """
    frames = []
    for name, scan in scans.items():
        frame = pd.DataFrame(scan.to_rows(), columns=GRID_COLUMNS)
        if len(scans) > 1:
            frame.insert(0, "rule", name)
        frames.append(frame)
    return _write(pd.concat(frames, ignore_index=True), path)


def write_solution_csv(solution: RuleSolution, path: PathLike) -> Path:
    return _write(pd.DataFrame(solution.to_rows(), columns=SOLUTION_COLUMNS), path)
