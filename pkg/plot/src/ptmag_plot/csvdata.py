"""CSV loading with named-column diagnostics.

Tables are read eagerly; numeric columns become float arrays, anything that
fails to parse as float (e.g. the phase labels) stays a tuple of strings.
"""
from __future__ import annotations

import csv
from dataclasses import dataclass
from pathlib import Path

import numpy as np


class SpecError(Exception):
    """A figure spec or the data it references cannot be used."""


@dataclass(frozen=True)
class Table:
    """One parsed CSV: column names in file order plus per-column data."""

    path: Path
    names: tuple[str, ...]
    columns: dict[str, np.ndarray | tuple[str, ...]]

    @property
    def n_rows(self) -> int:
        first = self.columns[self.names[0]]
        return len(first)

    def numeric(self, name: str, context: str) -> np.ndarray:
        """Return a float column, with a diagnostic if it is not numeric."""
        require_columns(self, [name], context)
        col = self.columns[name]
        if not isinstance(col, np.ndarray):
            raise SpecError(f"{context}: column {name} in {self.path.name} "
                            "is not numeric")
        return col


def load_table(path: Path) -> Table:
    """Read a CSV with a header row into a Table."""
    if not path.is_file():
        raise SpecError(f"CSV not found: {path}")
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise SpecError(f"{path.name}: empty file, no header row") from None
        rows = list(reader)
    if not header or any(not name for name in header):
        raise SpecError(f"{path.name}: malformed header row")
    if not rows:
        raise SpecError(f"{path.name}: empty data, header only")
    for i, row in enumerate(rows):
        if len(row) != len(header):
            raise SpecError(f"{path.name}: row {i + 2} has {len(row)} cells, "
                            f"expected {len(header)}")

    columns: dict[str, np.ndarray | tuple[str, ...]] = {}
    for j, name in enumerate(header):
        cells = [row[j] for row in rows]
        try:
            columns[name] = np.array([float(c) for c in cells])
        except ValueError:
            columns[name] = tuple(cells)
    return Table(path=path, names=tuple(header), columns=columns)


def require_columns(table: Table, names, context: str) -> None:
    """Raise a diagnostic naming every requested column the table lacks."""
    missing = [n for n in names if n not in table.columns]
    if missing:
        raise SpecError(f"{context}: {table.path.name} is missing columns: "
                        f"{', '.join(missing)} (has: {', '.join(table.names)})")
