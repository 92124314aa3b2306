"""Seeded synthetic sanction-event generator for fixtures and benchmarks."""

from __future__ import annotations

import datetime as dt
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .events import Action, ReasonCategory, SanctionEvent
from .temporal_graph import Role

__all__ = [
    "Burst",
    "SynthConfig",
    "InfeasibleConfig",
    "PAPER_ACTION_MIX",
    "ROUNDED_ACTION_MIX",
    "INTERMEDIATE_POOL",
    "FINAL_POOL",
    "apportion",
    "generate",
]

# Event-type counts of the reference corpus (3,547 adds, 1,192 revisions,
# 69 removals out of 4,808), kept as exact fractions.
PAPER_ACTION_MIX = {
    Action.ADD: 3547 / 4808,
    Action.REVISE: 1192 / 4808,
    Action.REMOVE: 69 / 4808,
}
ROUNDED_ACTION_MIX = {Action.ADD: 0.738, Action.REVISE: 0.248, Action.REMOVE: 0.014}

# Shares of the ten largest intermediate and final targets, remainder spread
# over a short tail.
INTERMEDIATE_POOL = {
    "CN": 33.2, "RU": 28.3, "AE": 6.0, "PK": 5.5, "IR": 3.7,
    "TR": 2.2, "MY": 1.5, "GB": 1.5, "IN": 1.5, "SG": 1.3,
    "HK": 3.0, "DE": 2.0, "FI": 1.0, "AM": 1.0,
}
FINAL_POOL = {
    "RU": 36.9, "CN": 24.8, "IR": 15.5, "PK": 6.1, "AF": 2.8,
    "UA": 2.4, "SY": 1.7, "IQ": 1.6, "IN": 1.2, "AE": 0.8,
    "KP": 1.5, "BY": 1.0,
}


class InfeasibleConfig(ValueError):
    pass


@dataclass(frozen=True)
class Burst:
    country: str
    role: Role
    year: int
    size: int
    window_days: int = 60


@dataclass(frozen=True)
class SynthConfig:
    seed: int = 0
    n_events: int = 1000
    action_mix: dict = field(default_factory=lambda: dict(PAPER_ACTION_MIX))
    country_pool: dict = field(default_factory=lambda: dict(INTERMEDIATE_POOL))
    final_pool: Optional[dict] = field(default_factory=lambda: dict(FINAL_POOL))
    year_range: tuple[int, int] = (2000, 2024)
    bursts: tuple[Burst, ...] = ()
    multi_final_rate: float = 0.0

    def __post_init__(self):
        mix = {Action(k): float(v) for k, v in self.action_mix.items()}
        object.__setattr__(self, "action_mix", mix)
        if any(v < 0 for v in mix.values()) or abs(sum(mix.values()) - 1.0) > 1e-9:
            raise InfeasibleConfig("action proportions must be non-negative and sum to 1")
        if self.n_events < 0:
            raise InfeasibleConfig("n_events must be non-negative")
        lo, hi = self.year_range
        if lo > hi:
            raise InfeasibleConfig("year_range is empty")
        for b in self.bursts:
            if not lo <= b.year <= hi:
                raise InfeasibleConfig(f"burst year {b.year} outside {self.year_range}")
            if b.size < 1:
                raise InfeasibleConfig("burst size must be positive")
        if not self.country_pool:
            raise InfeasibleConfig("country_pool is empty")


def apportion(n: int, mix: dict) -> dict:
    """Largest-remainder split of ``n`` over ``mix`` (ties broken by action order)."""
    actions = list(Action)
    raw = [n * mix.get(a, 0.0) for a in actions]
    counts = [int(np.floor(x)) for x in raw]
    rest = n - sum(counts)
    order = sorted(range(len(actions)), key=lambda i: (-(raw[i] - counts[i]), i))
    for i in order[:rest]:
        counts[i] += 1
    return dict(zip(actions, counts))


def _pool(pool: dict) -> tuple[list[str], np.ndarray]:
    codes = sorted(pool)
    w = np.array([float(pool[c]) for c in codes])
    return codes, w / w.sum()


def generate(config: SynthConfig) -> list[SanctionEvent]:
    """Deterministic event list in ``(date, event_id)`` order.

    Removals and revisions only refer to earlier adds, each entity is
    removed at most once, and entity names are unique, so linking the
    output produces no warnings. Burst adds come on top of ``n_events``.
    """
    rng = np.random.Generator(np.random.Philox(key=config.seed & 0xFFFFFFFFFFFFFFFF))
    counts = apportion(config.n_events, config.action_mix)
    n_add, n_rev, n_rem = counts[Action.ADD], counts[Action.REVISE], counts[Action.REMOVE]
    if (n_rev or n_rem) and n_add == 0 and not config.bursts:
        raise InfeasibleConfig("revisions or removals requested without any adds")

    int_codes, int_w = _pool(config.country_pool)
    fin_codes, fin_w = _pool(config.final_pool or config.country_pool)
    lo = dt.date(config.year_range[0], 1, 1).toordinal()
    hi = dt.date(config.year_range[1], 12, 31).toordinal()
    categories = [c for c in ReasonCategory if c is not ReasonCategory.UNSPECIFIED]

    # (ordinal, action rank, seq, entity, intermediate, finals)
    adds = []
    for _ in range(n_add):
        finals = [fin_codes[rng.choice(len(fin_codes), p=fin_w)]]
        if config.multi_final_rate and rng.random() < config.multi_final_rate:
            extra = fin_codes[rng.choice(len(fin_codes), p=fin_w)]
            if extra not in finals:
                finals.append(extra)
        adds.append([
            int(rng.integers(lo, hi + 1)),
            int_codes[rng.choice(len(int_codes), p=int_w)],
            tuple(finals),
        ])
    for b in config.bursts:
        ystart = dt.date(b.year, 1, 1).toordinal()
        yend = dt.date(b.year, 12, 31).toordinal()
        span = min(b.window_days, yend - ystart)
        w0 = int(rng.integers(ystart, yend - span + 1))
        for _ in range(b.size):
            day = int(rng.integers(w0, w0 + span + 1))
            if Role(b.role) is Role.FINAL:
                u = int_codes[rng.choice(len(int_codes), p=int_w)]
                adds.append([day, u, (b.country,)])
            else:
                v = fin_codes[rng.choice(len(fin_codes), p=fin_w)]
                adds.append([day, b.country, (v,)])

    entities = [f"Synthetic Entity {i:06d}" for i in range(len(adds))]
    rows = [(a[0], 0, i, entities[i], a[1], a[2]) for i, a in enumerate(adds)]

    # Removals: uniformly among adds that still have a later day available.
    removable = [i for i, a in enumerate(adds) if a[0] < hi]
    if n_rem > len(removable):
        raise InfeasibleConfig(f"{n_rem} removals requested but only {len(removable)} removable adds")
    removed_on = {}
    if n_rem:
        picks = rng.choice(len(removable), size=n_rem, replace=False)
        for k in sorted(int(p) for p in picks):
            i = removable[k]
            day = int(rng.integers(adds[i][0] + 1, hi + 1))
            removed_on[i] = day
            rows.append((day, 2, i, entities[i], adds[i][1], ()))

    # Revisions: any add, dated while the designation is still open.
    if n_rev and not adds:
        raise InfeasibleConfig("revisions requested without any adds")
    for _ in range(n_rev):
        i = int(rng.integers(0, len(adds)))
        end = removed_on.get(i, hi + 1) - 1
        day = int(rng.integers(adds[i][0], end + 1))
        rows.append((day, 1, i, entities[i], adds[i][1], adds[i][2]))

    rows.sort(key=lambda r: (r[0], r[1], r[2]))
    kinds = (Action.ADD, Action.REVISE, Action.REMOVE)
    width = max(6, len(str(len(rows))))
    events = []
    for n, (day, rank, i, entity, inter, finals) in enumerate(rows):
        events.append(SanctionEvent(
            event_id=f"SYN-{n:0{width}d}",
            date=dt.date.fromordinal(day),
            entity_name=entity,
            intermediate=inter,
            finals=finals,
            action=kinds[rank],
            reason="synthetic designation",
            reason_category=categories[i % len(categories)],
            source_doc=f"synthetic-{config.seed}",
        ))
    return events
