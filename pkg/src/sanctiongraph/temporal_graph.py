"""Temporal bipartite graph of designation life-cycles.

Intermediate and final targets are distinct node sets even when they name
the same country. Edges are active on the half-open interval
``[t_add, t_remove)``; an open edge never expires.
"""

from __future__ import annotations

import datetime as dt
from collections import defaultdict
from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, Optional, Sequence

import numpy as np

from .countries import UNKNOWN
from .events import Lifecycle

__all__ = [
    "Role",
    "RoleNode",
    "TemporalEdge",
    "TemporalGraph",
    "BuildDiagnostic",
    "OPEN_ORDINAL",
    "build_graph",
    "active_edges",
    "active_mask",
    "degree",
    "edge_list_csv",
]

# Removal ordinal used for open edges in array form.
OPEN_ORDINAL = np.iinfo(np.int64).max


class Role(str, Enum):
    INTERMEDIATE = "Intermediate"
    FINAL = "Final"


@dataclass(frozen=True, order=True)
class RoleNode:
    country: str
    role: Role

    def __str__(self) -> str:
        suffix = "int" if self.role is Role.INTERMEDIATE else "fin"
        return f"{self.country}^{suffix}"


@dataclass(frozen=True)
class TemporalEdge:
    u: RoleNode
    v: RoleNode
    t_add: dt.date
    t_remove: Optional[dt.date]
    edge_key: str

    def __post_init__(self):
        if self.u.role is not Role.INTERMEDIATE or self.v.role is not Role.FINAL:
            raise ValueError("edges run from an intermediate node to a final node")
        if self.t_remove is not None and self.t_remove < self.t_add:
            raise ValueError(f"edge {self.edge_key} removed before it was added")

    def is_active(self, t: dt.date) -> bool:
        return self.t_add <= t and (self.t_remove is None or t < self.t_remove)

    @property
    def duration(self) -> Optional[int]:
        if self.t_remove is None:
            return None
        return (self.t_remove - self.t_add).days


@dataclass(frozen=True)
class BuildDiagnostic:
    kind: str  # NeverActive | UnknownCountry
    edge_key: str
    message: str

    def to_record(self) -> dict:
        return {"kind": self.kind, "edge_key": self.edge_key, "message": self.message}


@dataclass(frozen=True, eq=False)
class TemporalGraph:
    """Immutable edge sequence sorted by ``(t_add, edge_key)`` plus indexes.

    The numpy views (``t_add_ord``, ``t_remove_ord``) hold day ordinals, with
    :data:`OPEN_ORDINAL` for open edges.
    """

    edges: tuple[TemporalEdge, ...]
    diagnostics: tuple[BuildDiagnostic, ...] = ()
    node_index: dict = field(init=False, repr=False)
    key_index: dict = field(init=False, repr=False)
    t_add_ord: np.ndarray = field(init=False, repr=False)
    t_remove_ord: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        index = defaultdict(list)
        for pos, e in enumerate(self.edges):
            index[e.u].append(pos)
            index[e.v].append(pos)
        object.__setattr__(self, "node_index", {k: tuple(v) for k, v in index.items()})
        object.__setattr__(self, "key_index", {e.edge_key: i for i, e in enumerate(self.edges)})
        t_add = np.fromiter((e.t_add.toordinal() for e in self.edges), dtype=np.int64, count=len(self.edges))
        t_rem = np.fromiter(
            (OPEN_ORDINAL if e.t_remove is None else e.t_remove.toordinal() for e in self.edges),
            dtype=np.int64,
            count=len(self.edges),
        )
        t_add.flags.writeable = False
        t_rem.flags.writeable = False
        object.__setattr__(self, "t_add_ord", t_add)
        object.__setattr__(self, "t_remove_ord", t_rem)

    def __len__(self) -> int:
        return len(self.edges)

    def __eq__(self, other) -> bool:
        return isinstance(other, TemporalGraph) and self.edges == other.edges

    __hash__ = None  # type: ignore[assignment]

    @property
    def nodes(self) -> frozenset:
        return frozenset(self.node_index)

    def countries(self) -> list[str]:
        return sorted({n.country for n in self.node_index})

    def incident(self, node: RoleNode) -> tuple[int, ...]:
        """Edge positions touching ``node``, in graph order."""
        return self.node_index.get(node, ())

    def edge(self, edge_key: str) -> TemporalEdge:
        return self.edges[self.key_index[edge_key]]

    def year_range(self) -> Optional[tuple[int, int]]:
        if not self.edges:
            return None
        return self.edges[0].t_add.year, self.edges[-1].t_add.year

    @classmethod
    def from_edges(cls, edges: Iterable[TemporalEdge], diagnostics=()) -> "TemporalGraph":
        ordered = sorted(edges, key=lambda e: (e.t_add, e.edge_key))
        return cls(tuple(ordered), tuple(diagnostics))


def build_graph(lifecycles: Sequence[Lifecycle], keep_unknown: bool = False) -> TemporalGraph:
    """One edge per lifecycle, sorted deterministically.

    Lifecycles touching the unknown country code are dropped (and reported
    in ``diagnostics``) unless ``keep_unknown`` is set. Same-day add/remove
    pairs are kept but flagged, since they are never active.
    """
    edges = []
    diags = []
    for lc in lifecycles:
        if not keep_unknown and UNKNOWN in (lc.intermediate, lc.final):
            diags.append(BuildDiagnostic(
                "UnknownCountry", lc.edge_key,
                f"{lc.intermediate}->{lc.final} excluded from role analytics",
            ))
            continue
        if lc.t_remove is not None and lc.t_remove == lc.t_add:
            diags.append(BuildDiagnostic(
                "NeverActive", lc.edge_key, f"added and removed on {lc.t_add.isoformat()}",
            ))
        edges.append(TemporalEdge(
            u=RoleNode(lc.intermediate, Role.INTERMEDIATE),
            v=RoleNode(lc.final, Role.FINAL),
            t_add=lc.t_add,
            t_remove=lc.t_remove,
            edge_key=lc.edge_key,
        ))
    diags.sort(key=lambda d: (d.edge_key, d.kind))
    return TemporalGraph.from_edges(edges, diags)


def active_mask(g: TemporalGraph, t: dt.date) -> np.ndarray:
    o = t.toordinal()
    return (g.t_add_ord <= o) & (o < g.t_remove_ord)


def active_edges(g: TemporalGraph, t: dt.date) -> set[str]:
    mask = active_mask(g, t)
    return {g.edges[i].edge_key for i in np.flatnonzero(mask)}


def degree(g: TemporalGraph, node: RoleNode, t: dt.date) -> int:
    pos = g.incident(node)
    if not pos:
        return 0
    o = t.toordinal()
    idx = np.asarray(pos)
    return int(np.count_nonzero((g.t_add_ord[idx] <= o) & (o < g.t_remove_ord[idx])))


def edge_list_csv(g: TemporalGraph) -> list[list[str]]:
    """Rows for the edge-list export, header first."""
    rows = [["edge_key", "u_country", "v_country", "t_add", "t_remove"]]
    for e in g.edges:
        rows.append([
            e.edge_key,
            e.u.country,
            e.v.country,
            e.t_add.isoformat(),
            "" if e.t_remove is None else e.t_remove.isoformat(),
        ])
    return rows
