"""
Role Skew Index over time
=========================

RSI is +1 for a country seen only as an intermediate target, -1 for one
seen only as a final target. Here on a synthetic corpus.
"""

# %%
from sanctiongraph import build_graph, generate, link_lifecycles, rsi_series, rsi_snapshot
from sanctiongraph.rsi import year_end_bins
from sanctiongraph.synth import SynthConfig

events = generate(SynthConfig(seed=1, n_events=3000, year_range=(2005, 2024)))
g = build_graph(link_lifecycles(events)[0])

# %%
snap = rsi_snapshot(g, year_end_bins(2024, 2024)[0])
for country, p in sorted(snap.items(), key=lambda kv: kv[1].rsi):
    print(f"{country}  int={p.deg_int:4d}  fin={p.deg_fin:4d}  rsi={p.rsi:+.3f}")

# %%
for p in rsi_series(g, "CN", year_end_bins(2005, 2024))[::4]:
    print(p.t, p.rsi)
