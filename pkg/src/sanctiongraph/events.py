"""Sanction-event records and designation life-cycles.

A :class:`SanctionEvent` is one regulatory action on one entity. Adds,
revisions and removals are linked by :func:`link_lifecycles` into
:class:`Lifecycle` intervals, which are the edges of the temporal graph.
"""

from __future__ import annotations

import csv
import datetime as dt
import hashlib
import io
import json
from collections import Counter
from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, Iterator, Optional, Sequence

from .countries import BadCountryCode, normalize_country

__all__ = [
    "Action",
    "ReasonCategory",
    "SanctionEvent",
    "Lifecycle",
    "LinkWarning",
    "DatasetSummary",
    "EventError",
    "MalformedDate",
    "BadCountryCode",
    "MissingFinal",
    "UnknownAction",
    "MissingField",
    "UnknownReasonCategory",
    "DuplicateEventId",
    "parse_event_record",
    "event_to_record",
    "link_lifecycles",
    "summarize",
    "read_events",
    "iter_records",
    "write_events_jsonl",
    "RECORD_FIELDS",
]

RECORD_FIELDS = (
    "event_id",
    "date",
    "entity_name",
    "entity_aliases",
    "intermediate",
    "finals",
    "reason",
    "reason_category",
    "action",
    "source_doc",
)


class Action(str, Enum):
    ADD = "Add"
    REVISE = "Revise"
    REMOVE = "Remove"


class ReasonCategory(str, Enum):
    EVASION = "Evasion & Supply-Chain Facilitation"
    MILITARY = "Conventional Military & Defense Systems"
    WMD = "WMD Programs & Delivery Systems"
    SEMICONDUCTORS = "Semiconductors & Advanced Computing"
    OTHER = "Other/Unknown"
    HUMAN_RIGHTS = "Human Rights & Surveillance"
    ENERGY = "Energy & Critical Infrastructure"
    CYBER = "Cyber & Secure Communications"
    UNSPECIFIED = "Unspecified"


class EventError(ValueError):
    """Base class for record validation failures."""


class MalformedDate(EventError):
    pass


class MissingFinal(EventError):
    pass


class UnknownAction(EventError):
    pass


class MissingField(EventError):
    pass


class UnknownReasonCategory(EventError):
    pass


class DuplicateEventId(EventError):
    pass


@dataclass(frozen=True)
class SanctionEvent:
    event_id: str
    date: dt.date
    entity_name: str
    intermediate: str
    finals: tuple[str, ...]
    action: Action
    entity_aliases: tuple[str, ...] = ()
    reason: str = ""
    reason_category: ReasonCategory = ReasonCategory.UNSPECIFIED
    source_doc: str = ""


@dataclass(frozen=True)
class Lifecycle:
    """One designation edge. ``t_remove is None`` means still open."""

    edge_key: str
    entity_name: str
    intermediate: str
    final: str
    t_add: dt.date
    t_remove: Optional[dt.date] = None
    revisions: tuple[str, ...] = ()

    @property
    def is_open(self) -> bool:
        return self.t_remove is None


@dataclass(frozen=True)
class LinkWarning:
    kind: str  # UnmatchedRemove | UnmatchedRevise | ReAddition | DuplicateAdd
    event_id: str
    date: dt.date
    message: str

    def to_record(self) -> dict:
        return {
            "kind": self.kind,
            "event_id": self.event_id,
            "date": self.date.isoformat(),
            "message": self.message,
        }


@dataclass(frozen=True)
class DatasetSummary:
    action_counts: dict = field(default_factory=dict)
    total: int = 0
    intermediate_countries: int = 0
    final_countries: int = 0
    first_date: Optional[dt.date] = None
    last_date: Optional[dt.date] = None

    def to_record(self) -> dict:
        return {
            "Add": self.action_counts.get(Action.ADD, 0),
            "Revise": self.action_counts.get(Action.REVISE, 0),
            "Remove": self.action_counts.get(Action.REMOVE, 0),
            "total": self.total,
            "intermediate_countries": self.intermediate_countries,
            "final_countries": self.final_countries,
            "first_date": self.first_date.isoformat() if self.first_date else None,
            "last_date": self.last_date.isoformat() if self.last_date else None,
        }


def _parse_date(value) -> dt.date:
    if isinstance(value, dt.datetime):
        return value.date()
    if isinstance(value, dt.date):
        return value
    if not isinstance(value, str):
        raise MalformedDate(f"date must be YYYY-MM-DD text, got {value!r}")
    try:
        return dt.date.fromisoformat(value.strip())
    except ValueError:
        raise MalformedDate(f"unparseable date: {value!r}") from None


def _parse_action(value) -> Action:
    if isinstance(value, Action):
        return value
    text = str(value).strip().lower()
    for action in Action:
        if text == action.value.lower():
            return action
    raise UnknownAction(f"unknown action: {value!r}")


def _parse_category(value) -> ReasonCategory:
    if value is None or (isinstance(value, str) and not value.strip()):
        return ReasonCategory.UNSPECIFIED
    if isinstance(value, ReasonCategory):
        return value
    text = " ".join(str(value).split()).lower()
    for cat in ReasonCategory:
        if text in (cat.value.lower(), cat.name.lower()):
            return cat
    raise UnknownReasonCategory(f"unknown reason category: {value!r}")


def _split_list(value) -> list:
    if value is None:
        return []
    if isinstance(value, str):
        return [part for part in (p.strip() for p in value.split("|")) if part]
    return [str(v).strip() for v in value if str(v).strip()]


def _first(record: dict, *keys):
    for key in keys:
        if key in record and record[key] is not None:
            return record[key]
    return None


def _derived_id(date, entity, intermediate, finals, action) -> str:
    payload = "|".join([date.isoformat(), entity.lower(), intermediate, ",".join(finals), action.value])
    return "evt-" + hashlib.sha1(payload.encode("utf-8")).hexdigest()[:12]


def parse_event_record(record: dict) -> SanctionEvent:
    """Validate one structured record and return a normalized event.

    Accepts the dataset field names plus the aliases ``entity`` and
    ``final_target_countries`` produced by upstream extraction. Finals may
    be a list or a ``|``-separated string (CSV variant). A missing
    ``event_id`` is replaced by a content digest.
    """
    raw_date = _first(record, "date")
    if raw_date is None:
        raise MissingField("record has no date")
    date = _parse_date(raw_date)

    entity = _first(record, "entity_name", "entity")
    if entity is None or not str(entity).strip():
        raise MissingField("record has no entity_name")
    entity = " ".join(str(entity).split())

    raw_int = _first(record, "intermediate", "intermediate_target")
    if raw_int is None:
        raise MissingField("record has no intermediate")
    intermediate = normalize_country(raw_int)

    raw_action = _first(record, "action")
    if raw_action is None:
        raise MissingField("record has no action")
    action = _parse_action(raw_action)

    finals = tuple(
        normalize_country(f)
        for f in _split_list(_first(record, "finals", "final_target_countries"))
    )
    if action is Action.ADD and not finals:
        raise MissingFinal(f"Add event for {entity!r} has no final target")

    event_id = _first(record, "event_id")
    if event_id is None or not str(event_id).strip():
        event_id = _derived_id(date, entity, intermediate, finals, action)

    return SanctionEvent(
        event_id=str(event_id).strip(),
        date=date,
        entity_name=entity,
        intermediate=intermediate,
        finals=finals,
        action=action,
        entity_aliases=tuple(_split_list(_first(record, "entity_aliases"))),
        reason=str(_first(record, "reason", "reasons_for_listing") or "").strip(),
        reason_category=_parse_category(_first(record, "reason_category")),
        source_doc=str(_first(record, "source_doc") or "").strip(),
    )


def event_to_record(event: SanctionEvent) -> dict:
    return {
        "event_id": event.event_id,
        "date": event.date.isoformat(),
        "entity_name": event.entity_name,
        "entity_aliases": list(event.entity_aliases),
        "intermediate": event.intermediate,
        "finals": list(event.finals),
        "reason": event.reason,
        "reason_category": event.reason_category.value,
        "action": event.action.value,
        "source_doc": event.source_doc,
    }


def link_lifecycles(
    events: Iterable[SanctionEvent],
) -> tuple[list[Lifecycle], list[LinkWarning]]:
    """Pair adds with later revisions and removals.

    Events are processed in ``(date, event_id)`` order. An Add with k
    finals opens k lifecycles; a Remove closes every open lifecycle of the
    same (entity, intermediate) pair; a Revise is attached to the open
    lifecycles it matches. Anomalies become warnings.
    """
    ordered = sorted(events, key=lambda e: (e.date, e.event_id))
    # Lifecycles are built mutably here and frozen at the end.
    records: list[dict] = []
    open_by_key: dict[tuple[str, str], list[int]] = {}
    closed_keys: set[tuple[str, str]] = set()
    warnings: list[LinkWarning] = []

    for ev in ordered:
        key = (ev.entity_name.casefold(), ev.intermediate)
        if ev.action is Action.ADD:
            if open_by_key.get(key):
                warnings.append(LinkWarning(
                    "DuplicateAdd", ev.event_id, ev.date,
                    f"{ev.entity_name} ({ev.intermediate}) added while already listed",
                ))
            elif key in closed_keys:
                warnings.append(LinkWarning(
                    "ReAddition", ev.event_id, ev.date,
                    f"{ev.entity_name} ({ev.intermediate}) re-added after removal",
                ))
            for i, final in enumerate(ev.finals):
                open_by_key.setdefault(key, []).append(len(records))
                records.append({
                    "edge_key": f"{ev.event_id}#{i}",
                    "entity_name": ev.entity_name,
                    "intermediate": ev.intermediate,
                    "final": final,
                    "t_add": ev.date,
                    "t_remove": None,
                    "revisions": [],
                })
        elif ev.action is Action.REMOVE:
            idx = open_by_key.pop(key, [])
            if not idx:
                warnings.append(LinkWarning(
                    "UnmatchedRemove", ev.event_id, ev.date,
                    f"no open designation for {ev.entity_name} ({ev.intermediate})",
                ))
                continue
            for i in idx:
                records[i]["t_remove"] = ev.date
            closed_keys.add(key)
        else:
            idx = open_by_key.get(key, [])
            if not idx:
                warnings.append(LinkWarning(
                    "UnmatchedRevise", ev.event_id, ev.date,
                    f"no open designation for {ev.entity_name} ({ev.intermediate})",
                ))
                continue
            for i in idx:
                records[i]["revisions"].append(ev.event_id)

    lifecycles = [
        Lifecycle(**{**r, "revisions": tuple(r["revisions"])}) for r in records
    ]
    return lifecycles, warnings


def summarize(events: Iterable[SanctionEvent]) -> DatasetSummary:
    counts: Counter = Counter()
    ints: set[str] = set()
    fins: set[str] = set()
    dates = []
    for ev in events:
        counts[ev.action] += 1
        dates.append(ev.date)
        ints.add(ev.intermediate)
        fins.update(ev.finals)
    return DatasetSummary(
        action_counts={a: counts.get(a, 0) for a in Action},
        total=sum(counts.values()),
        intermediate_countries=len(ints),
        final_countries=len(fins),
        first_date=min(dates) if dates else None,
        last_date=max(dates) if dates else None,
    )


def iter_records(text: str, fmt: str) -> Iterator[tuple[int, dict]]:
    """Yield ``(line_number, record)`` from JSONL or CSV text.

    JSON decode errors are raised as :class:`EventError` carrying the line.
    """
    if fmt == "jsonl":
        for lineno, line in enumerate(text.splitlines(), start=1):
            if not line.strip():
                continue
            try:
                obj = json.loads(line)
            except json.JSONDecodeError as exc:
                raise EventError(f"line {lineno}: invalid JSON ({exc.msg})") from None
            if not isinstance(obj, dict):
                raise EventError(f"line {lineno}: expected a JSON object")
            yield lineno, obj
    elif fmt == "csv":
        reader = csv.DictReader(io.StringIO(text, newline=""))
        for row in reader:
            # header is line 1
            yield reader.line_num, {k: (v if v != "" else None) for k, v in row.items()}
    else:
        raise ValueError(f"unknown record format {fmt!r}")


def read_events(text: str, fmt: str = "jsonl") -> tuple[list[SanctionEvent], list[str]]:
    """Parse every record, collecting line-numbered errors instead of stopping."""
    events: list[SanctionEvent] = []
    errors: list[str] = []
    seen: dict[str, int] = {}
    try:
        for lineno, rec in iter_records(text, fmt):
            try:
                ev = parse_event_record(rec)
            except (EventError, BadCountryCode) as exc:
                errors.append(f"line {lineno}: {type(exc).__name__}: {exc}")
                continue
            if ev.event_id in seen:
                errors.append(
                    f"line {lineno}: DuplicateEventId: {ev.event_id!r} "
                    f"already used on line {seen[ev.event_id]}"
                )
                continue
            seen[ev.event_id] = lineno
            events.append(ev)
    except EventError as exc:
        errors.append(str(exc))
    return events, errors


def write_events_jsonl(events: Sequence[SanctionEvent]) -> str:
    return "".join(
        json.dumps(event_to_record(ev), ensure_ascii=False) + "\n" for ev in events
    )
