"""CSV and Markdown table output."""

from __future__ import annotations

import csv
import math
from typing import Iterable, Mapping, Sequence

import numpy as np

FORMATS = ("csv", "markdown")


def _csv_cell(v):
    if v is None:
        return ""
    if isinstance(v, (bool, np.bool_)):
        return "pass" if v else "FAIL"
    if isinstance(v, (float, np.floating)):
        return repr(float(v))
    return v


def _md_cell(v, digits):
    if v is None:
        return "---"
    if isinstance(v, (bool, np.bool_)):
        return "pass" if v else "FAIL"
    if isinstance(v, (float, np.floating)):
        v = float(v)
        if math.isinf(v):
            return "inf"
        return f"{v:.{digits}f}" if digits is not None else f"{v:.6g}"
    return str(v)


def write_table(rows: Iterable[Mapping], columns: Sequence[str], fh, fmt: str = "csv",
                digits: Mapping[str, int] | None = None) -> None:
    """Write ``rows`` as CSV (full float precision) or a Markdown table (rounded)."""
    rows = list(rows)
    if fmt == "csv":
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(columns)
        for row in rows:
            writer.writerow([_csv_cell(row.get(c)) for c in columns])
    elif fmt == "markdown":
        digits = digits or {}
        fh.write("| " + " | ".join(columns) + " |\n")
        fh.write("|" + "|".join("---" for _ in columns) + "|\n")
        for row in rows:
            fh.write("| " + " | ".join(_md_cell(row.get(c), digits.get(c)) for c in columns) + " |\n")
    else:
        raise ValueError(f"format must be one of {FORMATS}, got {fmt!r}")
