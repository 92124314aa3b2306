"""Two-edge delta-temporal motifs anchored on one role-node.

Each edge ``e`` at a node is weighted by the number of earlier edges at the
same node whose start lies within ``delta`` days before it. A bin's count
sums those weights over edges starting in the bin, keeping only pairs
where both edges are in force at the observation time.

Counting runs per node over edges already sorted by ``(t_add, edge_key)``,
so window bounds come from binary search instead of pair enumeration.
"""

from __future__ import annotations

import datetime as dt
import json
from dataclasses import asdict, dataclass
from enum import Enum
from typing import Iterable, Optional, Sequence

import numpy as np

from .temporal_graph import Role, RoleNode, TemporalGraph

__all__ = [
    "ObservationRule",
    "Bin",
    "MotifParams",
    "MotifCount",
    "UnknownEdge",
    "DEFAULT_DELTA_DAYS",
    "yearly_bins",
    "resolve_bins",
    "event_weight",
    "node_bin_counts",
    "motif_counts",
    "campaign_table",
    "motif_rows",
]

DEFAULT_DELTA_DAYS = 1461  # four years


class UnknownEdge(KeyError):
    pass


class ObservationRule(str, Enum):
    BIN_END = "bin-end"
    EVENT_TIME = "event-time"


@dataclass(frozen=True, order=True)
class Bin:
    """Inclusive day interval."""

    start: dt.date
    end: dt.date

    def __post_init__(self):
        if self.end < self.start:
            raise ValueError(f"bin ends before it starts: {self.start}..{self.end}")

    def __contains__(self, t: dt.date) -> bool:
        return self.start <= t <= self.end

    @classmethod
    def year(cls, year: int) -> "Bin":
        return cls(dt.date(year, 1, 1), dt.date(year, 12, 31))


@dataclass(frozen=True)
class MotifParams:
    delta_days: int = DEFAULT_DELTA_DAYS
    bins: Optional[tuple[Bin, ...]] = None  # None: calendar years spanning the data
    observation_rule: ObservationRule = ObservationRule.BIN_END
    include_same_day: bool = True

    def __post_init__(self):
        if self.delta_days <= 0:
            raise ValueError("delta_days must be positive")
        if self.bins is not None:
            bins = tuple(sorted(self.bins))
            for a, b in zip(bins, bins[1:]):
                if b.start <= a.end:
                    raise ValueError(f"bins overlap: {a} and {b}")
            object.__setattr__(self, "bins", bins)
        object.__setattr__(self, "observation_rule", ObservationRule(self.observation_rule))

    def to_json(self) -> str:
        d = asdict(self)
        d["observation_rule"] = self.observation_rule.value
        d["bins"] = None if self.bins is None else [[b.start.isoformat(), b.end.isoformat()] for b in self.bins]
        return json.dumps(d, indent=2, sort_keys=True)


@dataclass(frozen=True)
class MotifCount:
    country: str
    role: Role
    bin: Bin
    count: int

    def row(self) -> list[str]:
        return [
            self.country,
            self.role.value,
            self.bin.start.isoformat(),
            self.bin.end.isoformat(),
            str(self.count),
        ]


def yearly_bins(first_year: int, last_year: int) -> tuple[Bin, ...]:
    return tuple(Bin.year(y) for y in range(first_year, last_year + 1))


def resolve_bins(g: TemporalGraph, params: MotifParams) -> tuple[Bin, ...]:
    if params.bins is not None:
        return params.bins
    span = g.year_range()
    if span is None:
        return ()
    return yearly_bins(*span)


def _node(country: str, role: Role) -> RoleNode:
    return RoleNode(country, Role(role))


def event_weight(g: TemporalGraph, edge_key: str, role: Role, params: MotifParams) -> int:
    """Number of earlier edges at the same role-node within ``delta`` days.

    Ignores removal dates; activity is applied only when counting bins.
    """
    if edge_key not in g.key_index:
        raise UnknownEdge(edge_key)
    e = g.edge(edge_key)
    node = e.u if Role(role) is Role.INTERMEDIATE else e.v
    pos = np.asarray(g.incident(node))
    t = g.t_add_ord[pos]
    k = int(np.searchsorted(pos, g.key_index[edge_key]))
    t_e = t[k]
    lo = int(np.searchsorted(t, t_e - params.delta_days, side="left"))
    hi = k if params.include_same_day else int(np.searchsorted(t, t_e, side="left"))
    return max(hi - lo, 0)


def node_bin_counts(
    t_add: np.ndarray,
    t_remove: np.ndarray,
    bins: Sequence[tuple[int, int]],
    delta: int,
    rule: ObservationRule,
    same_day: bool,
) -> list[int]:
    """Motif count per bin for one node.

    ``t_add``/``t_remove`` are day ordinals of the node's edges, sorted by
    ``(t_add, edge_key)``; ``bins`` are inclusive ordinal intervals.
    """
    n = len(t_add)
    out = []
    if n == 0:
        return [0] * len(bins)
    if rule is ObservationRule.BIN_END:
        for start, end in bins:
            active = (t_add <= end) & (t_remove > end)
            sub = t_add[active]
            first = int(np.searchsorted(sub, start, side="left"))
            if first == len(sub):
                out.append(0)
                continue
            targets = sub[first:]
            lo = np.searchsorted(sub, targets - delta, side="left")
            if same_day:
                hi = np.arange(first, len(sub))
            else:
                hi = np.searchsorted(sub, targets, side="left")
            out.append(int(np.sum(hi - lo)))
        return out

    lo_all = np.searchsorted(t_add, t_add - delta, side="left")
    hi_all = np.arange(n) if same_day else np.searchsorted(t_add, t_add, side="left")
    for start, end in bins:
        i0 = int(np.searchsorted(t_add, start, side="left"))
        i1 = int(np.searchsorted(t_add, end, side="right"))
        total = 0
        for i in range(i0, i1):
            t_i = t_add[i]
            if t_remove[i] <= t_i:
                continue
            lo, hi = lo_all[i], hi_all[i]
            if hi > lo:
                total += int(np.count_nonzero(t_remove[lo:hi] > t_i))
        out.append(total)
    return out


def _bins_ord(bins: Sequence[Bin]) -> list[tuple[int, int]]:
    return [(b.start.toordinal(), b.end.toordinal()) for b in bins]


def _node_arrays(g: TemporalGraph, node: RoleNode) -> tuple[np.ndarray, np.ndarray]:
    pos = np.asarray(g.incident(node), dtype=np.int64)
    return g.t_add_ord[pos], g.t_remove_ord[pos]


def motif_counts(
    g: TemporalGraph, country: str, role: Role, params: MotifParams = MotifParams()
) -> list[MotifCount]:
    role = Role(role)
    bins = resolve_bins(g, params)
    t_add, t_rem = _node_arrays(g, _node(country, role))
    counts = node_bin_counts(
        t_add, t_rem, _bins_ord(bins), params.delta_days,
        params.observation_rule, params.include_same_day,
    )
    return [MotifCount(country, role, b, c) for b, c in zip(bins, counts)]


def campaign_table(
    g: TemporalGraph,
    countries: Optional[Iterable[str]] = None,
    params: MotifParams = MotifParams(),
) -> list[MotifCount]:
    """Long-form counts for both roles of each country (all countries by default)."""
    if len(g) == 0:
        return []
    countries = g.countries() if countries is None else list(countries)
    rows: list[MotifCount] = []
    for c in countries:
        for role in (Role.INTERMEDIATE, Role.FINAL):
            rows.extend(motif_counts(g, c, role, params))
    return rows


def motif_rows(counts: Iterable[MotifCount]) -> list[list[str]]:
    rows = [["country", "role", "bin_start", "bin_end", "count"]]
    rows.extend(m.row() for m in counts)
    return rows
