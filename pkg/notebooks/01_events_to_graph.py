"""
From sanction events to a temporal bipartite graph
==================================================

Parse a few records, link them into designation life-cycles and query
which designations are in force on a given day.
"""

# %%
import datetime as dt

from sanctiongraph import build_graph, link_lifecycles, parse_event_record, summarize
from sanctiongraph.temporal_graph import Role, RoleNode, active_edges, degree

records = [
    {"event_id": "n1", "date": "2024-05-09", "entity_name": "ICW-Industrial Components Weirich",
     "intermediate": "Germany", "final_target_countries": ["Russia"], "action": "Add"},
    {"event_id": "n2", "date": "2024-05-09", "entity_name": "Asia Pacific Links Ltd.",
     "intermediate": "CN", "finals": ["RU"], "action": "Add"},
    {"event_id": "n3", "date": "2019-08-14", "entity_name": "Example Trading", "intermediate": "ae",
     "finals": ["IR", "PK"], "action": "Add"},
    {"event_id": "n4", "date": "2021-02-01", "entity_name": "example trading", "intermediate": "AE",
     "action": "Remove"},
]
events = [parse_event_record(r) for r in records]
print(summarize(events).to_record())

# %%
# One Add with two final targets opens two edges; the Remove closes both.
lifecycles, warnings = link_lifecycles(events)
for lc in lifecycles:
    print(lc.edge_key, lc.intermediate, "->", lc.final, lc.t_add, lc.t_remove)

g = build_graph(lifecycles)

# %%
# Activity is half-open: an edge removed on 2021-02-01 is gone that day.
for day in ("2021-01-31", "2021-02-01", "2024-06-01"):
    print(day, sorted(active_edges(g, dt.date.fromisoformat(day))))

print("deg(RU^fin) on 2024-06-01:", degree(g, RoleNode("RU", Role.FINAL), dt.date(2024, 6, 1)))
