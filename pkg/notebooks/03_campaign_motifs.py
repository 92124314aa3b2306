"""
Campaign intensity with temporal motifs
=======================================

Three scattered designations and then four in quick succession: with a
one-year window and yearly bins the later events are weighted 0, 1, 2, 3.
"""

# %%
import datetime as dt

from sanctiongraph import Lifecycle, MotifParams, build_graph, campaign_table, event_weight
from sanctiongraph.temporal_graph import Role

dates = ["2017-06-01", "2019-03-01", "2021-01-15", "2022-02-01", "2022-04-01", "2022-06-01", "2022-09-01"]
g = build_graph([
    Lifecycle(f"e{i}", f"entity {i}", "SG", "IR", dt.date.fromisoformat(d)) for i, d in enumerate(dates)
])
params = MotifParams(delta_days=365)

print([event_weight(g, f"e{i}", Role.FINAL, params) for i in range(len(dates))])
for row in campaign_table(g, ["IR"], params):
    if row.role is Role.FINAL:
        print(row.bin.start.year, row.count)

# %%
# The defaults use a four-year window; same-day designations count as pairs
# unless include_same_day is switched off.
strict = MotifParams(include_same_day=False)
print(sum(m.count for m in campaign_table(g, ["IR"], strict)))
