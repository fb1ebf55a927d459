"""Monthly area salinity observations feeding the hierarchical model."""

from __future__ import annotations

import csv
from dataclasses import dataclass
from pathlib import Path

from ..model.catalog import AREAS, AREA_CODES

__all__ = ["SalinityObservation", "load_salinity_observations",
           "default_salinity_path"]


@dataclass(frozen=True)
class SalinityObservation:
    area: str       # full area name from catalog.AREAS
    month: int      # 1..12
    x_min: float    # monthly mean of the minimum-salinity field, PSU
    y_max: float    # monthly mean of the maximum-salinity field, PSU

    def __post_init__(self):
        if self.area not in AREAS:
            raise ValueError(f"unknown area {self.area!r}")
        if not 0.0 <= self.x_min <= self.y_max <= 40.0:
            raise ValueError(
                f"{self.area} month {self.month}: need 0 <= x_min <= y_max <= 40, "
                f"got ({self.x_min}, {self.y_max})")


def default_salinity_path() -> Path:
    return Path(__file__).resolve().parent.parent / "data" / "salinity_observations.csv"


def load_salinity_observations(path) -> list[SalinityObservation]:
    """Parse (area, month, x_min, y_max) rows; '#' lines are comments and
    area accepts either the short code or the full name."""
    path = Path(path)
    out: list[SalinityObservation] = []
    with path.open(newline="") as fh:
        rows = [(i, r) for i, r in enumerate(csv.reader(fh), start=1)
                if r and not r[0].lstrip().startswith("#")]
    if not rows:
        return out
    header = tuple(h.strip() for h in rows[0][1])
    if header != ("area", "month", "x_min", "y_max"):
        raise ValueError(f"{path}:{rows[0][0]}: header must be area,month,x_min,y_max")
    for lineno, row in rows[1:]:
        if len(row) != 4:
            raise ValueError(f"{path}:{lineno}: expected 4 fields, got {len(row)}")
        area = row[0].strip()
        area = AREA_CODES.get(area, area)
        try:
            obs = SalinityObservation(area, int(row[1]), float(row[2]), float(row[3]))
        except ValueError as exc:
            raise ValueError(f"{path}:{lineno}: {exc}") from None
        out.append(obs)
    return out
