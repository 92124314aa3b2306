"""Role Skew Index: (deg_int - deg_fin) / (deg_int + deg_fin) over active edges."""

from __future__ import annotations

import datetime as dt
from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

import numpy as np

from .temporal_graph import Role, RoleNode, TemporalGraph, active_mask, degree

__all__ = [
    "RsiPoint",
    "EmptyBins",
    "rsi_value",
    "rsi_at",
    "rsi_series",
    "rsi_snapshot",
    "year_end_bins",
    "rsi_rows",
]


class EmptyBins(ValueError):
    pass


@dataclass(frozen=True)
class RsiPoint:
    country: str
    t: dt.date
    deg_int: int
    deg_fin: int
    rsi: Optional[float]  # None when the country has no active edges

    def row(self) -> list[str]:
        return [
            self.country,
            self.t.isoformat(),
            str(self.deg_int),
            str(self.deg_fin),
            "" if self.rsi is None else f"{self.rsi:.4f}",
        ]


def rsi_value(deg_int: int, deg_fin: int) -> Optional[float]:
    total = deg_int + deg_fin
    if total == 0:
        return None
    return (deg_int - deg_fin) / total


def rsi_at(g: TemporalGraph, country: str, t: dt.date) -> RsiPoint:
    a = degree(g, RoleNode(country, Role.INTERMEDIATE), t)
    b = degree(g, RoleNode(country, Role.FINAL), t)
    return RsiPoint(country, t, a, b, rsi_value(a, b))


def rsi_series(g: TemporalGraph, country: str, bins: Sequence[dt.date]) -> list[RsiPoint]:
    bins = list(bins)
    if not bins:
        raise EmptyBins("at least one bin date is required")
    if any(b2 <= b1 for b1, b2 in zip(bins, bins[1:])):
        raise ValueError("bin dates must be strictly increasing")
    return [rsi_at(g, country, t) for t in bins]


def rsi_snapshot(g: TemporalGraph, t: dt.date) -> dict[str, RsiPoint]:
    """RSI for every country with at least one active edge at ``t``."""
    deg_int: Counter = Counter()
    deg_fin: Counter = Counter()
    for i in np.flatnonzero(active_mask(g, t)):
        e = g.edges[i]
        deg_int[e.u.country] += 1
        deg_fin[e.v.country] += 1
    out = {}
    for c in sorted(set(deg_int) | set(deg_fin)):
        a, b = deg_int[c], deg_fin[c]
        out[c] = RsiPoint(c, t, a, b, rsi_value(a, b))
    return out


def year_end_bins(first_year: int, last_year: int) -> list[dt.date]:
    return [dt.date(y, 12, 31) for y in range(first_year, last_year + 1)]


def rsi_rows(points: Iterable[RsiPoint]) -> list[list[str]]:
    rows = [["country", "t", "deg_int", "deg_fin", "rsi"]]
    rows.extend(p.row() for p in points)
    return rows
