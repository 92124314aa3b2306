"""One-hop detection networks around an intermediate or final anchor."""

from __future__ import annotations

import datetime as dt
from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Optional

import numpy as np

from .temporal_graph import Role, RoleNode, TemporalGraph

__all__ = [
    "DetectionNetwork",
    "NetworkRow",
    "intermediate_target_network",
    "final_target_network",
    "network_table",
    "network_rows",
]


@dataclass(frozen=True)
class DetectionNetwork:
    anchor: RoleNode
    t: dt.date
    members: dict  # country -> number of linking edges

    def total(self) -> int:
        return sum(self.members.values())

    def ranked(self) -> list[tuple[str, int]]:
        return sorted(self.members.items(), key=lambda kv: (-kv[1], kv[0]))


@dataclass(frozen=True)
class NetworkRow:
    anchor: str
    role: Role
    member: str
    case_count: int
    t: dt.date

    def row(self) -> list[str]:
        return [self.anchor, self.role.value, self.member, str(self.case_count), self.t.isoformat()]


def _network(g: TemporalGraph, anchor: RoleNode, t: dt.date, cumulative: bool) -> DetectionNetwork:
    pos = np.asarray(g.incident(anchor), dtype=np.int64)
    o = t.toordinal()
    keep = g.t_add_ord[pos] <= o
    if not cumulative:
        keep &= o < g.t_remove_ord[pos]
    members: Counter = Counter()
    for i in pos[keep]:
        e = g.edges[i]
        other = e.v if anchor.role is Role.INTERMEDIATE else e.u
        members[other.country] += 1
    return DetectionNetwork(anchor, t, dict(sorted(members.items())))


def intermediate_target_network(
    g: TemporalGraph, country: str, t: dt.date, cumulative: bool = False
) -> DetectionNetwork:
    """Final targets linked to ``country`` as intermediate, with edge counts.

    With ``cumulative`` every edge added by ``t`` counts, removed or not.
    """
    return _network(g, RoleNode(country, Role.INTERMEDIATE), t, cumulative)


def final_target_network(
    g: TemporalGraph, country: str, t: dt.date, cumulative: bool = False
) -> DetectionNetwork:
    return _network(g, RoleNode(country, Role.FINAL), t, cumulative)


def network_table(
    g: TemporalGraph,
    countries: Optional[Iterable[str]],
    t: dt.date,
    cumulative: bool = False,
) -> list[NetworkRow]:
    """Rows for each anchor's two networks, largest member first.

    ``countries=None`` means every country in the graph.
    """
    countries = g.countries() if countries is None else list(countries)
    rows = []
    for c in countries:
        for net in (
            intermediate_target_network(g, c, t, cumulative),
            final_target_network(g, c, t, cumulative),
        ):
            rows.extend(NetworkRow(c, net.anchor.role, m, k, t) for m, k in net.ranked())
    return rows


def network_rows(rows: Iterable[NetworkRow]) -> list[list[str]]:
    out = [["anchor", "role", "member", "case_count", "t"]]
    out.extend(r.row() for r in rows)
    return out
