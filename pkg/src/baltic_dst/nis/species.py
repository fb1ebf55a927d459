"""Species occurrence and salinity tolerance records."""

from __future__ import annotations

import csv
from dataclasses import dataclass
from pathlib import Path

from ..model.catalog import AREAS, AREA_CODES

__all__ = ["SpeciesRecord", "load_species_table", "default_species_path"]

_AREA_COLS = ("present_GoB", "present_GoF", "present_GoR",
              "present_BP", "present_SWB", "present_NS")
_COLUMNS = ("name", "sal_min_tol", "sal_max_tol") + _AREA_COLS
_TRUTHY = {"yes", "true", "1", "y"}
_FALSY = {"no", "false", "0", "n"}


@dataclass(frozen=True)
class SpeciesRecord:
    name: str
    sal_min_tol: float
    sal_max_tol: float
    presence: tuple  # booleans ordered like catalog.AREAS

    def __post_init__(self):
        if not 0.0 <= self.sal_min_tol <= self.sal_max_tol:
            raise ValueError(
                f"{self.name}: tolerance interval "
                f"[{self.sal_min_tol}, {self.sal_max_tol}] is invalid")
        if len(self.presence) != len(AREAS):
            raise ValueError(f"{self.name}: presence must cover all {len(AREAS)} areas")

    def present_in(self, area: str) -> bool:
        return self.presence[AREAS.index(area)]


def default_species_path() -> Path:
    return Path(__file__).resolve().parent.parent / "data" / "species_table.csv"


def load_species_table(path) -> list[SpeciesRecord]:
    """Parse the delimiter-separated species table.

    Raises ValueError with the offending line number on malformed rows.
    An empty file yields an empty list.
    """
    path = Path(path)
    records: list[SpeciesRecord] = []
    with path.open(newline="") as fh:
        reader = csv.reader(fh)
        rows = [(i, r) for i, r in enumerate(reader, start=1)
                if r and not r[0].lstrip().startswith("#")]
    if not rows:
        return records
    header_no, header = rows[0]
    if tuple(h.strip() for h in header) != _COLUMNS:
        raise ValueError(
            f"{path}:{header_no}: header must be {','.join(_COLUMNS)}")
    for lineno, row in rows[1:]:
        if len(row) != len(_COLUMNS):
            raise ValueError(f"{path}:{lineno}: expected {len(_COLUMNS)} fields, "
                             f"got {len(row)}")
        name = row[0].strip()
        try:
            lo = float(row[1])
            hi = float(row[2])
        except ValueError:
            raise ValueError(f"{path}:{lineno}: non-numeric tolerance") from None
        flags = []
        for col, cell in zip(_AREA_COLS, row[3:]):
            v = cell.strip().lower()
            if v in _TRUTHY:
                flags.append(True)
            elif v in _FALSY:
                flags.append(False)
            else:
                raise ValueError(f"{path}:{lineno}: bad {col} value {cell!r}")
        try:
            records.append(SpeciesRecord(name, lo, hi, tuple(flags)))
        except ValueError as exc:
            raise ValueError(f"{path}:{lineno}: {exc}") from None
    return records
