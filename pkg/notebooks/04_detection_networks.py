"""
Intermediate and final target networks
======================================

Who is linked to an anchor country by designations in force at a date.
"""

# %%
import datetime as dt

from sanctiongraph import build_graph, generate, link_lifecycles, network_table
from sanctiongraph.synth import SynthConfig

g = build_graph(link_lifecycles(generate(SynthConfig(seed=4, n_events=2500)))[0])
for row in network_table(g, ["CN"], dt.date(2024, 12, 31))[:12]:
    print(row.role.value, row.member, row.case_count)
