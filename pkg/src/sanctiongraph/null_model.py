"""Case-shuffled null model and permutation test for motif peaks.

A realization keeps every edge slot's start date and duration and permutes
the country pairs across slots, so yearly activity is unchanged and only
which countries are involved moves. The term statistic is the largest
yearly motif count within a term over both roles of a country.

Each replicate draws from its own Philox stream keyed by
``(seed, replicate_index)``, so results do not depend on scheduling.
"""

from __future__ import annotations

import csv
import datetime as dt
import io
import json
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Optional, Sequence

import numpy as np

from .motifs import MotifParams, node_bin_counts
from .temporal_graph import OPEN_ORDINAL, Role, RoleNode, TemporalEdge, TemporalGraph

__all__ = [
    "Term",
    "PermutationReport",
    "EmptyGraph",
    "EmptyTerm",
    "NULL_MODELS",
    "DEFAULT_TERMS",
    "SIG_LEVEL",
    "load_terms",
    "validate_terms",
    "replicate_rng",
    "shuffle_realization",
    "term_bins",
    "term_statistic",
    "permutation_test",
    "p_value",
    "report_rows",
]

SIG_LEVEL = 0.005
NULL_MODELS = ("case", "time")


class EmptyGraph(ValueError):
    pass


class EmptyTerm(ValueError):
    pass


@dataclass(frozen=True)
class Term:
    label: str
    start_year: int
    end_year: int  # inclusive

    def __post_init__(self):
        if self.start_year > self.end_year:
            raise ValueError(f"term {self.label!r} ends before it starts")

    def years(self) -> range:
        return range(self.start_year, self.end_year + 1)


# Inauguration falls in January, so each term maps onto whole calendar years.
DEFAULT_TERMS = (
    Term("Clinton-2", 1997, 2000),
    Term("Bush-1", 2001, 2004),
    Term("Bush-2", 2005, 2008),
    Term("Obama-1", 2009, 2012),
    Term("Obama-2", 2013, 2016),
    Term("Trump-1", 2017, 2020),
    Term("Biden", 2021, 2024),
    Term("Trump-2", 2025, 2028),
)


def validate_terms(terms: Sequence[Term]) -> tuple[Term, ...]:
    ordered = tuple(sorted(terms, key=lambda t: t.start_year))
    for a, b in zip(ordered, ordered[1:]):
        if b.start_year <= a.end_year:
            raise ValueError(f"terms overlap: {a.label} and {b.label}")
    labels = [t.label for t in ordered]
    if len(set(labels)) != len(labels):
        raise ValueError("term labels must be unique")
    return ordered


def load_terms(path) -> tuple[Term, ...]:
    """Read terms from JSON (list of objects) or CSV (``label,start_year,end_year``)."""
    path = Path(path)
    text = path.read_text(encoding="utf-8")
    if path.suffix.lower() == ".json":
        items = json.loads(text)
    else:
        items = list(csv.DictReader(io.StringIO(text)))
    terms = [Term(str(it["label"]), int(it["start_year"]), int(it["end_year"])) for it in items]
    return validate_terms(terms)


@dataclass(frozen=True)
class PermutationReport:
    country: str
    term: Term
    t_obs: int
    null_mean: float
    null_std: float  # sample std (R - 1 denominator); nan when R == 1
    replicates: int
    p_value: float
    seed: int
    null_model: str = "case"
    null_samples: tuple[int, ...] = ()

    @property
    def significant(self) -> bool:
        return self.p_value < SIG_LEVEL

    def row(self) -> list[str]:
        std = "" if math.isnan(self.null_std) else f"{self.null_std:.6f}"
        return [
            self.country,
            self.term.label,
            str(self.t_obs),
            f"{self.null_mean:.6f}",
            std,
            str(self.replicates),
            repr(self.p_value),
            "***" if self.significant else "n.s.",
            str(self.seed),
        ]


def report_rows(reports: Iterable[PermutationReport]) -> list[list[str]]:
    out = [["country", "term", "t_obs", "null_mean", "null_std", "R", "p_value", "sig", "seed"]]
    out.extend(r.row() for r in reports)
    return out


def p_value(t_obs: int, null_samples: Sequence[int]) -> float:
    exceed = sum(1 for s in null_samples if s >= t_obs)
    return (1 + exceed) / (len(null_samples) + 1)


def replicate_rng(seed: int, replicate_index: int) -> np.random.Generator:
    if seed < 0 or replicate_index < 0:
        raise ValueError("seed and replicate_index must be non-negative")
    key = np.array([seed & 0xFFFFFFFFFFFFFFFF, replicate_index], dtype=np.uint64)
    return np.random.Generator(np.random.Philox(key=key))


class _SlotArrays:
    """Array form of a graph for fast resampling."""

    def __init__(self, g: TemporalGraph):
        if len(g) == 0:
            raise EmptyGraph("cannot shuffle an empty graph")
        self.g = g
        self.n = len(g)
        self.t_add = np.asarray(g.t_add_ord)
        self.t_rem = np.asarray(g.t_remove_ord)
        self.is_open = self.t_rem == OPEN_ORDINAL
        self.duration = np.where(self.is_open, 0, self.t_rem - self.t_add)
        self.countries = g.countries()
        code = {c: i for i, c in enumerate(self.countries)}
        self.u = np.array([code[e.u.country] for e in g.edges], dtype=np.int64)
        self.v = np.array([code[e.v.country] for e in g.edges], dtype=np.int64)
        keys = [e.edge_key for e in g.edges]
        self.key_rank = np.empty(self.n, dtype=np.int64)
        self.key_rank[np.argsort(np.array(keys, dtype=object), kind="stable")] = np.arange(self.n)

    def realize(self, seed: int, replicate_index: int, null: str):
        """Return ``(order, t_add, t_rem, u, v)`` arrays in (t_add, key) order.

        ``order[i]`` is the original slot now at position ``i``.
        """
        rng = replicate_rng(seed, replicate_index)
        if null == "case":
            perm = rng.permutation(self.n)
            return np.arange(self.n), self.t_add, self.t_rem, self.u[perm], self.v[perm]
        if null == "time":
            lo, hi = int(self.t_add.min()), int(self.t_add.max())
            t_add = rng.integers(lo, hi + 1, size=self.n, dtype=np.int64)
            t_rem = np.where(self.is_open, OPEN_ORDINAL, t_add + self.duration)
            order = np.lexsort((self.key_rank, t_add))
            return order, t_add[order], t_rem[order], self.u[order], self.v[order]
        raise ValueError(f"unknown null model {null!r}; expected one of {NULL_MODELS}")


def shuffle_realization(
    g: TemporalGraph, seed: int, replicate_index: int, null: str = "case"
) -> TemporalGraph:
    """One null-model graph, deterministic in ``(seed, replicate_index)``.

    Edge keys stay with their slots. ``null="time"`` instead redraws start
    dates uniformly over the observed window, keeping pairs and durations.
    """
    slots = _SlotArrays(g)
    order, t_add, t_rem, u, v = slots.realize(seed, replicate_index, null)
    edges = []
    for i in range(slots.n):
        src = g.edges[order[i]]
        start = dt.date.fromordinal(int(t_add[i]))
        end = None if t_rem[i] == OPEN_ORDINAL else dt.date.fromordinal(int(t_rem[i]))
        edges.append(TemporalEdge(
            u=RoleNode(slots.countries[u[i]], Role.INTERMEDIATE),
            v=RoleNode(slots.countries[v[i]], Role.FINAL),
            t_add=start,
            t_remove=end,
            edge_key=src.edge_key,
        ))
    return TemporalGraph.from_edges(edges, g.diagnostics)


def term_bins(g: TemporalGraph, term: Term) -> list[tuple[int, int]]:
    """Ordinal yearly bins of ``term`` that fall inside the graph's year span."""
    span = g.year_range()
    if span is None:
        raise EmptyTerm(f"term {term.label} has no data (empty graph)")
    years = [y for y in term.years() if span[0] <= y <= span[1]]
    if not years:
        raise EmptyTerm(f"term {term.label} ({term.start_year}-{term.end_year}) "
                        f"is outside the data range {span[0]}-{span[1]}")
    return [(dt.date(y, 1, 1).toordinal(), dt.date(y, 12, 31).toordinal()) for y in years]


def _peak(t_add, t_rem, u, v, ci, bins, params: MotifParams) -> int:
    best = 0
    for labels in (u, v):
        mask = labels == ci
        if not mask.any():
            continue
        counts = node_bin_counts(
            t_add[mask], t_rem[mask], bins, params.delta_days,
            params.observation_rule, params.include_same_day,
        )
        best = max(best, max(counts))
    return best


def term_statistic(
    g: TemporalGraph, country: str, term: Term, params: MotifParams = MotifParams()
) -> int:
    """Largest yearly motif count inside ``term`` over both roles of ``country``."""
    bins = term_bins(g, term)
    best = 0
    for role in (Role.INTERMEDIATE, Role.FINAL):
        pos = np.asarray(g.incident(RoleNode(country, role)), dtype=np.int64)
        if len(pos) == 0:
            continue
        counts = node_bin_counts(
            g.t_add_ord[pos], g.t_remove_ord[pos], bins, params.delta_days,
            params.observation_rule, params.include_same_day,
        )
        best = max(best, max(counts))
    return best


def permutation_test(
    g: TemporalGraph,
    country: str,
    term: Term,
    params: MotifParams = MotifParams(),
    replicates: int = 1000,
    seed: int = 0,
    null: str = "case",
    workers: Optional[int] = None,
) -> PermutationReport:
    """One-sided test of a term's motif peak against ``replicates`` realizations.

    ``p = (1 + #{T_r >= T_obs}) / (R + 1)``. ``workers`` only changes
    wall-clock time; the report is identical for any value.
    """
    if replicates < 1:
        raise ValueError("replicates must be at least 1")
    if null not in NULL_MODELS:
        raise ValueError(f"unknown null model {null!r}; expected one of {NULL_MODELS}")
    slots = _SlotArrays(g)
    bins = term_bins(g, term)
    t_obs = term_statistic(g, country, term, params)
    ci = slots.countries.index(country) if country in slots.countries else -1

    def one(r: int) -> int:
        if ci < 0:
            return 0
        _, t_add, t_rem, u, v = slots.realize(seed, r, null)
        return _peak(t_add, t_rem, u, v, ci, bins, params)

    if workers and workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            samples = list(pool.map(one, range(replicates)))
    else:
        samples = [one(r) for r in range(replicates)]

    arr = np.asarray(samples, dtype=np.float64)
    std = float(np.std(arr, ddof=1)) if replicates > 1 else float("nan")
    return PermutationReport(
        country=country,
        term=term,
        t_obs=int(t_obs),
        null_mean=float(np.mean(arr)),
        null_std=std,
        replicates=replicates,
        p_value=p_value(t_obs, samples),
        seed=seed,
        null_model=null,
        null_samples=tuple(int(s) for s in samples),
    )
