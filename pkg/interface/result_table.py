"""
Tabular command output: a pandas DataFrame plus a unit per column and a
provenance block, written as CSV with a '#' header or as a JSON document.
"""

import json
import numpy as np
import pandas as pd

from typing import Any, Dict, List, Optional

FLOAT_FORMAT = "%.10g"
TIMESTAMP_KEY = "timestamp"


class ResultTable:
    """
    Result of one figure command.

    Attributes:
    -----------
    name : str
        Table name, also used by the renderer to pick a plot.
    data : pd.DataFrame
        Row-major data; every column has an entry in units.
    units : Dict[str, str]
        Unit of every column ("1" for dimensionless, "bool" and "label" for flags and names).
    provenance : Dict[str, Any]
        Config hash, tool version, timestamp and the echoed configuration.
    flag_column : str, optional
        Boolean column marking rows that are valid (e.g. solver convergence).
    """

    def __init__(
        self,
        name: str,
        data: pd.DataFrame,
        units: Dict[str, str],
        provenance: Optional[Dict[str, Any]] = None,
        flag_column: Optional[str] = "converged",
    ) -> None:
        missing = [column for column in data.columns if column not in units]
        if missing:
            raise ValueError(f"Columns {missing} of table '{name}' carry no unit.")
        self.name = name
        self.data = data.reset_index(drop=True)
        self.units = {column: units[column] for column in data.columns}
        self.provenance = dict(provenance or {})
        self.flag_column = flag_column if flag_column in data.columns else None

    def __len__(self) -> int:
        return len(self.data)

    @property
    def flagged_fraction(self) -> float:
        """
        Fraction of rows whose flag column is False.
        """
        if self.flag_column is None or len(self.data) == 0:
            return 0.0
        return float((~self.data[self.flag_column].astype(bool)).mean())

    def header_lines(self, include_timestamp: bool = True) -> List[str]:
        lines = [f"# table: {self.name}"]
        for key, value in self.provenance.items():
            if key == TIMESTAMP_KEY and not include_timestamp:
                continue
            if isinstance(value, (dict, list)):
                value = json.dumps(value, sort_keys=True, separators=(",", ":"))
            lines.append(f"# {key}: {value}")
        lines += [f"# column: {column} [{unit}]" for column, unit in self.units.items()]
        return lines

    def to_csv_text(self, include_timestamp: bool = True) -> str:
        header = "\n".join(self.header_lines(include_timestamp))
        body = self.data.to_csv(index=False, float_format=FLOAT_FORMAT, lineterminator="\n")
        return f"{header}\n{body}"

    def payload(self) -> str:
        """
        CSV text without the timestamp; identical configurations give identical payloads.
        """
        return self.to_csv_text(include_timestamp=False)

    def to_doc(self) -> Dict[str, Any]:
        records = self.data.astype(object).where(pd.notnull(self.data), None)
        return {
            "table": self.name,
            "provenance": self.provenance,
            "columns": [{"name": c, "unit": u} for c, u in self.units.items()],
            "data": [[_plain(v) for v in row] for row in records.itertuples(index=False)],
        }

    def write(self, path: str, fmt: str = "csv") -> None:
        """
        Write the table as "csv" or as its JSON "doc" twin.
        """
        if fmt == "csv":
            with open(path, "w", newline="") as file:
                file.write(self.to_csv_text())
        elif fmt == "doc":
            with open(path, "w") as file:
                json.dump(self.to_doc(), file, indent=2, sort_keys=False)
                file.write("\n")
        else:
            raise ValueError(f"Invalid value for 'fmt': {fmt}. Use 'csv' or 'doc'.")

    @classmethod
    def read_csv(cls, path: str) -> "ResultTable":
        """
        Read a table written by write(path, "csv").
        """
        name, provenance, units = None, {}, {}
        header_count = 0
        with open(path, "r") as file:
            for line in file:
                if not line.startswith("#"):
                    break
                header_count += 1
                key, _, value = line[1:].strip().partition(": ")
                if key == "table":
                    name = value
                elif key == "column":
                    column, _, unit = value.rpartition(" [")
                    units[column] = unit.rstrip("]")
                elif key == "config":
                    provenance[key] = json.loads(value)
                else:
                    provenance[key] = value
        data = pd.read_csv(path, skiprows=header_count)
        return cls(name or "table", data, units, provenance)


def _plain(value: Any) -> Any:
    # numpy scalars are not JSON serialisable
    if isinstance(value, np.generic):
        return value.item()
    return value
