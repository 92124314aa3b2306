"""Fixture builders and brute-force oracles shared by the tests.

The oracles deliberately avoid the library's sorted-window machinery: they
enumerate every ordered pair of edges directly.
"""

import datetime as dt

import numpy as np

from sanctiongraph.events import Lifecycle
from sanctiongraph.temporal_graph import build_graph

D = dt.date.fromisoformat


def lc(key, u, v, add, remove=None):
    return Lifecycle(key, f"entity {key}", u, v, D(add), D(remove) if remove else None)


def graph(*rows):
    """``graph(("k1", "CN", "IR", "2010-01-01", None), ...)``."""
    return build_graph([lc(*r) for r in rows], keep_unknown=True)


FIG3_DATES = [
    "2017-06-01", "2019-03-01", "2021-01-15",
    "2022-02-01", "2022-04-01", "2022-06-01", "2022-09-01",
]


def fig3_graph():
    """Three scattered designations against one final target, then four in 2022."""
    inters = ["SG", "AE", "TR", "HK", "MY", "IN", "PK"]
    return graph(*[(f"e{i}", inters[i], "IR", d, None) for i, d in enumerate(FIG3_DATES)])


def random_lifecycles(rng, n, countries=("CN", "RU", "IR", "AE", "HK"), years=(2015, 2020),
                      remove_rate=0.3):
    lo = dt.date(years[0], 1, 1).toordinal()
    hi = dt.date(years[1], 12, 31).toordinal()
    out = []
    for i in range(n):
        a = int(rng.integers(lo, hi + 1))
        # coarse day grid so same-day ties are common
        a -= a % 7
        r = None
        if rng.random() < remove_rate:
            r = a + int(rng.integers(0, 900))
        u = countries[rng.integers(len(countries))]
        v = countries[rng.integers(len(countries))]
        out.append(Lifecycle(f"k{i:05d}", f"ent{i}", u, v, dt.date.fromordinal(a),
                             dt.date.fromordinal(r) if r is not None else None))
    return out


def brute_active(edges, t):
    return {e.edge_key for e in edges if e.t_add <= t and (e.t_remove is None or t < e.t_remove)}


def oracle_motif_counts(g, country, role, bins, delta, rule, same_day):
    """All-pairs motif count per bin, one n-by-n comparison matrix per bin.

    ``rule`` is "bin-end" or "event-time"; ``bins`` are (start, end) dates.
    """
    edges = g.edges
    n = len(edges)
    if n == 0:
        return [0] * len(bins)
    big = 10**9
    t_add = np.array([e.t_add.toordinal() for e in edges])
    t_rem = np.array([big if e.t_remove is None else e.t_remove.toordinal() for e in edges])
    keys = np.array([e.edge_key for e in edges])
    if role == "Intermediate":
        at_node = np.array([e.u.country == country for e in edges])
    else:
        at_node = np.array([e.v.country == country for e in edges])

    # prior[j, i]: edge j is a qualifying earlier partner of edge i
    gap = t_add[None, :] - t_add[:, None]
    prior = (gap > 0) & (gap <= delta)
    if same_day:
        prior |= (gap == 0) & (keys[:, None] < keys[None, :])
    prior &= at_node[:, None] & at_node[None, :]

    out = []
    for start, end in bins:
        s, e_ = start.toordinal(), end.toordinal()
        in_bin = (t_add >= s) & (t_add <= e_)
        if rule == "bin-end":
            obs = np.full(n, e_)
        else:
            obs = t_add
        # active_j_at[j, i]: edge j is in force at edge i's observation time
        active_j = (t_add[:, None] <= obs[None, :]) & (obs[None, :] < t_rem[:, None])
        active_i = (t_add <= obs) & (obs < t_rem)
        valid = prior & active_j & (active_i & in_bin)[None, :]
        out.append(int(valid.sum()))
    return out


def oracle_pairs_python(g, country, role, delta, same_day):
    """Plain double loop over ordered pairs, ignoring activity (small inputs)."""
    edges = [e for e in g.edges if (e.u if role == "Intermediate" else e.v).country == country]
    total = 0
    for e in edges:
        for f in edges:
            gap = (e.t_add - f.t_add).days
            if 0 < gap <= delta or (same_day and gap == 0 and f.edge_key < e.edge_key):
                total += 1
    return total


def oracle_campaign(g, bins, delta, rule, same_day):
    """All-pairs counts for every (country, role, bin) at once.

    Returns ``{(country, role, bin_index): count}`` with zero entries omitted.
    """
    edges = g.edges
    n = len(edges)
    out = {}
    if n == 0:
        return out
    big = 10**9
    t_add = np.array([e.t_add.toordinal() for e in edges])
    t_rem = np.array([big if e.t_remove is None else e.t_remove.toordinal() for e in edges])
    keys = np.array([e.edge_key for e in edges])
    bin_of = np.full(n, -1)
    for b, (start, end) in enumerate(bins):
        bin_of[(t_add >= start.toordinal()) & (t_add <= end.toordinal())] = b

    gap = t_add[None, :] - t_add[:, None]
    base = (gap > 0) & (gap <= delta)
    if same_day:
        base |= (gap == 0) & (keys[:, None] < keys[None, :])

    for role in ("Intermediate", "Final"):
        labels = np.array([(e.u if role == "Intermediate" else e.v).country for e in edges])
        prior = base & (labels[:, None] == labels[None, :])
        col = np.zeros(n, dtype=np.int64)
        if rule == "event-time":
            obs = t_add
            active_j = (t_add[:, None] <= obs[None, :]) & (obs[None, :] < t_rem[:, None])
            active_i = obs < t_rem
            col = (prior & active_j).sum(axis=0) * active_i
        else:
            for b, (start, end) in enumerate(bins):
                o = end.toordinal()
                act = (t_add <= o) & (o < t_rem)
                cols = (bin_of == b) & act
                col[cols] = (prior[:, cols] & act[:, None]).sum(axis=0)
        for i in np.flatnonzero((col > 0) & (bin_of >= 0)):
            k = (str(labels[i]), role, int(bin_of[i]))
            out[k] = out.get(k, 0) + int(col[i])
    return out
