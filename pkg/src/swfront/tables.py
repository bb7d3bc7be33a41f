"""Delimited data files: UTF-8, one header row, ``%.17g`` floats."""

from __future__ import annotations

import csv
import hashlib
from dataclasses import dataclass

import numpy as np

FLOAT_FORMAT = "%.17g"
DELIMITER = ","


@dataclass
class Table:
    """Named columns of equal length; string columns are allowed."""

    columns: dict

    def __post_init__(self):
        lengths = {len(v) for v in self.columns.values()}
        if len(lengths) > 1:
            raise ValueError(f"columns differ in length: {sorted(lengths)}")

    @property
    def header(self):
        return list(self.columns)

    def __len__(self):
        return len(next(iter(self.columns.values()))) if self.columns else 0

    def __getitem__(self, name):
        return self.columns[name]

    def where(self, name, value):
        """Rows whose column ``name`` equals ``value``."""
        mask = np.asarray(self.columns[name]) == value
        return Table({k: np.asarray(v)[mask] for k, v in self.columns.items()})


def _fmt(v):
    if isinstance(v, str):
        return v
    if isinstance(v, (bool, np.bool_)):
        return "1" if v else "0"
    return FLOAT_FORMAT % float(v)


def write_table(path, table: Table):
    """Write ``table``; returns the SHA-256 of the bytes written."""
    rows = [DELIMITER.join(table.header)]
    cols = [table.columns[h] for h in table.header]
    for i in range(len(table)):
        rows.append(DELIMITER.join(_fmt(c[i]) for c in cols))
    data = ("\n".join(rows) + "\n").encode("utf-8")
    with open(path, "wb") as fh:
        fh.write(data)
    return hashlib.sha256(data).hexdigest()


def read_table(path) -> Table:
    """Read a file written by :func:`write_table`; numeric columns become float arrays."""
    with open(path, encoding="utf-8", newline="") as fh:
        reader = csv.reader(fh, delimiter=DELIMITER)
        header = next(reader)
        raw = list(zip(*reader)) if header else []
    cols = {}
    for j, name in enumerate(header):
        values = raw[j] if raw else ()
        try:
            cols[name] = np.array([float(v) for v in values])
        except ValueError:
            cols[name] = np.array(values, dtype=object)
    return Table(cols)
