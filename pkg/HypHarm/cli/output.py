"""Serialization of run reports to JSON, CSV and rich terminal tables."""

import csv
import io
import json
import math
from typing import Any, Dict, List, Sequence

import numpy as np
from rich import box
from rich.console import Console
from rich.table import Table

from ..models.reports import TableRow
from ..utils.formatting import format_quantity

SCHEMA = "hypharm/1"
CHECK_COLUMNS = ("suite", "name", "passed", "measured", "tolerance")
TABLE_WIDTH = 160


def to_jsonable(value: Any) -> Any:
    """Recursively convert numpy values and non-finite floats for strict JSON."""
    if isinstance(value, dict):
        return {str(k): to_jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [to_jsonable(v) for v in value]
    if isinstance(value, np.ndarray):
        return to_jsonable(value.tolist())
    if isinstance(value, np.generic):
        value = value.item()
    if isinstance(value, float) and not math.isfinite(value):
        if math.isnan(value):
            return "nan"
        return "inf" if value > 0 else "-inf"
    return value


def render_json(report: Dict[str, Any]) -> str:
    document = {"schema": SCHEMA, **report}
    return json.dumps(to_jsonable(document), indent=2, allow_nan=False) + "\n"


def _flatten(prefix: str, value: Any, rows: List[Sequence[Any]]):
    if isinstance(value, dict):
        for key, item in value.items():
            _flatten(f"{prefix}.{key}" if prefix else str(key), item, rows)
    elif isinstance(value, (list, tuple)):
        rows.append((prefix, " ".join(str(item) for item in value)))
    else:
        rows.append((prefix, value))


def _csv(header: Sequence[str], rows: Sequence[Sequence[Any]]) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([_csv_cell(cell) for cell in row])
    return buffer.getvalue()


def _csv_cell(value: Any) -> Any:
    value = to_jsonable(value)
    if isinstance(value, float):
        return repr(value)
    return value


def render_csv(report: Dict[str, Any]) -> str:
    """Rows for sweeps and checks; quantity/value pairs for single-point reports."""
    if "rows" in report:
        return _csv(TableRow.COLUMNS, [row.values() for row in report["rows"]])
    if "checks" in report:
        rows = [
            [getattr(check, column) for column in CHECK_COLUMNS]
            for check in report["checks"]
        ]
        return _csv(CHECK_COLUMNS, rows)
    rows: List[Sequence[Any]] = []
    _flatten("", report.get("values", {}), rows)
    return _csv(("quantity", "value"), rows)


def _cell(value: Any) -> str:
    if isinstance(value, bool):
        return "yes" if value else "no"
    if isinstance(value, float):
        return format_quantity(value)
    return str(value)


def render_table(report: Dict[str, Any]) -> str:
    """A rich table, rendered without colour so the text is stable."""
    title = f"hypharm {report['command']}"
    table = Table(title=title, box=box.SIMPLE_HEAVY)
    if "rows" in report:
        for column in TableRow.COLUMNS:
            table.add_column(column, justify="right")
        for row in report["rows"]:
            table.add_row(*(_cell(value) for value in row.values()))
    elif "checks" in report:
        for column in CHECK_COLUMNS:
            justify = "left" if column in ("suite", "name") else "right"
            table.add_column(column, justify=justify)
        for check in report["checks"]:
            table.add_row(*(_cell(getattr(check, column)) for column in CHECK_COLUMNS))
    else:
        table.add_column("quantity")
        table.add_column("value", justify="right")
        rows: List[Sequence[Any]] = []
        _flatten("", report.get("values", {}), rows)
        for name, value in rows:
            table.add_row(name, _cell(value))

    buffer = io.StringIO()
    console = Console(
        file=buffer, width=TABLE_WIDTH, color_system=None, highlight=False
    )
    console.print(table)
    if "timing" in report:
        console.print(f"wall time: {report['timing']['formatted']}")
    return buffer.getvalue()


def render(report: Dict[str, Any], fmt: str) -> str:
    """Render a report built by the runner in the requested format."""
    if fmt == "csv":
        return render_csv(report)
    if fmt == "table":
        return render_table(report)
    document = dict(report)
    if "rows" in document:
        document["rows"] = [row.to_dict() for row in document["rows"]]
    if "checks" in document:
        document["checks"] = [check.to_dict() for check in document["checks"]]
    return render_json(document)
