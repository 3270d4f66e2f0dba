from collections.abc import Iterable
from pathlib import Path
from typing import Any

import numpy as np
import pandas as pd

from core.exceptions import NetVisionError

FLOAT_FORMAT = "%.17g"


def write_csv(table: pd.DataFrame, path: Path) -> None:
    """Write a CSV whose bytes depend only on the table contents."""
    path.parent.mkdir(parents=True, exist_ok=True)
    table.to_csv(path, index=False, float_format=FLOAT_FORMAT, lineterminator="\n")


def read_csv_table(
    path: Path,
    error: type[NetVisionError],
    columns: Iterable[str],
    integer_columns: Iterable[str] = (),
    numeric_columns: Iterable[str] = (),
    **kwargs: Any,
) -> pd.DataFrame:
    """Load a headed CSV, raising ``error`` when it is unreadable, incomplete or mistyped."""
    try:
        table = pd.read_csv(path, **kwargs)
    except (OSError, ValueError) as exc:
        raise error(f"Cannot read table {path}", {"reason": str(exc)}) from exc

    missing = set(columns) - set(table.columns)
    if missing:
        raise error(f"Table {path} lacks columns", {"missing": sorted(missing)})
    integer_columns, numeric_columns = list(integer_columns), list(numeric_columns)
    if table.empty:
        dtypes = {col: "int64" for col in integer_columns}
        dtypes.update({col: "float64" for col in numeric_columns})
        return table.astype(dtypes)
    for col in integer_columns:
        if not pd.api.types.is_integer_dtype(table[col]):
            raise error(f"Column '{col}' of {path} must hold integers")
    for col in numeric_columns:
        if not pd.api.types.is_numeric_dtype(table[col]) or table[col].isna().any():
            raise error(f"Column '{col}' of {path} must hold numbers")
    return table


def convert_types(obj: Any) -> Any:
    if isinstance(obj, np.integer):
        return int(obj)
    if isinstance(obj, np.floating):
        return float(obj)
    if isinstance(obj, np.ndarray):
        return obj.tolist()
    return obj
