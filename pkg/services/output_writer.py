"""Grid output: CSV for plotting tools, JSON OutputDoc for round trips"""
import csv
import json
import logging
from pathlib import Path
from typing import Any, Dict, Optional, Union

import numpy as np
from pydantic import ValidationError

from models.phase_space import GridSpec, OutputDoc
from utils.error_handler import ConfigurationValidationError

logger = logging.getLogger(__name__)

CSV_HEADER = ('q', 'p', 'w')

PathLike = Union[str, Path]


def build_output_doc(params: Dict[str, Any], grid: GridSpec, method: str, values: np.ndarray,
                     diagnostics: Dict[str, float], version: str,
                     preset: Optional[str] = None) -> OutputDoc:
    """Assemble the OutputDoc of a grid run; values is n_p x n_q"""
    return OutputDoc(
        params=params,
        grid=grid,
        method=method,
        values=np.asarray(values, dtype=float).tolist(),
        diagnostics=diagnostics,
        version=version,
        preset=preset,
    )


def write_csv(path: PathLike, doc: OutputDoc) -> None:
    """
    One `q,p,w` row per grid point, p in the outer loop and q in the inner one

    Floats are written with repr so they read back bit-exactly.
    """
    q_values = doc.grid.q_values()
    p_values = doc.grid.p_values()
    with open(path, 'w', newline='', encoding='utf-8') as f:
        writer = csv.writer(f, lineterminator='\n')
        writer.writerow(CSV_HEADER)
        for p, row in zip(p_values, doc.values):
            for q, w in zip(q_values, row):
                writer.writerow((repr(float(q)), repr(float(p)), repr(float(w))))
    logger.info(f"Wrote CSV grid to {path}", extra={'operation': 'write_csv', 'points': len(q_values) * len(p_values)})


def write_json(path: PathLike, doc: OutputDoc) -> None:
    with open(path, 'w', encoding='utf-8') as f:
        f.write(doc.model_dump_json(indent=2))
        f.write('\n')
    logger.info(f"Wrote JSON grid to {path}", extra={'operation': 'write_json'})


def write_output(path: PathLike, doc: OutputDoc, fmt: str = 'csv') -> None:
    """Write doc as 'csv' or 'json'"""
    if fmt == 'csv':
        write_csv(path, doc)
    elif fmt == 'json':
        write_json(path, doc)
    else:
        raise ValueError(f"unknown output format: {fmt}")


def read_output_doc(path: PathLike) -> OutputDoc:
    """
    Read a JSON OutputDoc back

    Raises:
        ConfigurationValidationError: If the file is not a valid OutputDoc
    """
    with open(path, 'r', encoding='utf-8') as f:
        try:
            payload = json.load(f)
        except json.JSONDecodeError as e:
            raise ConfigurationValidationError(f"Invalid JSON in {path}: {str(e)}") from e
    try:
        return OutputDoc(**payload)
    except ValidationError as e:
        logger.error(f"Output document validation failed: {e}")
        raise ConfigurationValidationError(f"Invalid output document {path}: {str(e)}") from e
