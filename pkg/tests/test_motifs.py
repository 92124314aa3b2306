import datetime as dt
import itertools

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from sanctiongraph.events import Lifecycle
from sanctiongraph.motifs import (
    Bin,
    MotifParams,
    ObservationRule,
    UnknownEdge,
    campaign_table,
    event_weight,
    motif_counts,
    motif_rows,
    yearly_bins,
)
from sanctiongraph.temporal_graph import Role, build_graph

from helpers import (
    D,
    FIG3_DATES,
    fig3_graph,
    graph,
    oracle_motif_counts,
    oracle_pairs_python,
    random_lifecycles,
)

YEAR = MotifParams(delta_days=365)
RULES = [ObservationRule.BIN_END, ObservationRule.EVENT_TIME]


def test_fig3_worked_example():
    counts = motif_counts(fig3_graph(), "IR", Role.FINAL, YEAR)
    assert [(c.bin.start.year, c.count) for c in counts] == [
        (2017, 0), (2018, 0), (2019, 0), (2020, 0), (2021, 0), (2022, 6)
    ]


@pytest.mark.parametrize("rule", RULES)
@pytest.mark.parametrize("same_day", [True, False])
def test_fig3_all_modes(rule, same_day):
    p = MotifParams(365, observation_rule=rule, include_same_day=same_day)
    assert [c.count for c in motif_counts(fig3_graph(), "IR", Role.FINAL, p)] == [0, 0, 0, 0, 0, 6]


def test_fig3_weights():
    g = fig3_graph()
    assert [event_weight(g, f"e{i}", Role.FINAL, YEAR) for i in range(7)] == [0, 0, 0, 0, 1, 2, 3]


def test_weight_examples():
    g = graph(("a", "CN", "IR", "2010-01-01", None), ("b", "SG", "IR", "2010-04-11", None),
              ("c", "SG", "IR", "2011-05-16", None))
    assert event_weight(g, "a", Role.FINAL, YEAR) == 0
    assert event_weight(g, "b", Role.FINAL, YEAR) == 1  # 100 days
    assert event_weight(g, "c", Role.FINAL, YEAR) == 0  # 400 days
    assert event_weight(g, "c", Role.INTERMEDIATE, YEAR) == 0
    with pytest.raises(UnknownEdge):
        event_weight(g, "nope", Role.FINAL, YEAR)


def test_same_day_switch():
    g = graph(("a", "CN", "IR", "2010-01-01", None), ("b", "SG", "IR", "2010-01-01", None))
    assert event_weight(g, "b", Role.FINAL, MotifParams(365, include_same_day=True)) == 1
    assert event_weight(g, "a", Role.FINAL, MotifParams(365, include_same_day=True)) == 0
    assert event_weight(g, "b", Role.FINAL, MotifParams(365, include_same_day=False)) == 0


def test_isolated_events():
    g = graph(*[(f"k{y}", "CN", "IR", f"{y}-06-01", None) for y in range(2010, 2016, 2)])
    assert all(c.count == 0 for c in motif_counts(g, "IR", Role.FINAL, YEAR))


@pytest.mark.parametrize("n", [2, 5, 9])
def test_burst_is_n_choose_2(n):
    g = graph(*[(f"k{i}", "CN", "IR", (D("2015-01-10") + dt.timedelta(days=3 * i)).isoformat(), None)
                for i in range(n)])
    expected = sum(1 for _ in itertools.combinations(range(n), 2))
    assert [c.count for c in motif_counts(g, "IR", Role.FINAL, YEAR)] == [expected]
    assert expected == n * (n - 1) // 2


def test_removed_partner_not_counted_at_bin_end():
    g = graph(("a", "CN", "IR", "2015-02-01", "2015-06-01"), ("b", "SG", "IR", "2015-03-01", None))
    assert motif_counts(g, "IR", Role.FINAL, YEAR)[0].count == 0
    p = MotifParams(365, observation_rule=ObservationRule.EVENT_TIME)
    assert motif_counts(g, "IR", Role.FINAL, p)[0].count == 1


def test_custom_bins_and_overlap_rejected():
    g = fig3_graph()
    p = MotifParams(365, bins=(Bin(D("2017-01-01"), D("2021-12-31")), Bin(D("2022-01-01"), D("2022-06-30"))))
    assert [c.count for c in motif_counts(g, "IR", Role.FINAL, p)] == [0, 3]
    with pytest.raises(ValueError):
        MotifParams(365, bins=(Bin(D("2017-01-01"), D("2021-12-31")), Bin(D("2021-01-01"), D("2022-01-01"))))
    with pytest.raises(ValueError):
        MotifParams(0)


def test_campaign_table():
    assert campaign_table(build_graph([]), ["CN"], YEAR) == []
    g = fig3_graph()
    table = campaign_table(g, ["IR"], YEAR)
    assert table == motif_counts(g, "IR", Role.INTERMEDIATE, YEAR) + motif_counts(g, "IR", Role.FINAL, YEAR)
    rows = motif_rows(table)
    assert rows[0] == ["country", "role", "bin_start", "bin_end", "count"]
    assert ["IR", "Final", "2022-01-01", "2022-12-31", "6"] in rows


@pytest.mark.parametrize("seed", range(6))
def test_campaign_table_matches_oracle(seed):
    rng = np.random.default_rng(100 + seed)
    g = build_graph(random_lifecycles(rng, 200))
    for rule in RULES:
        for same_day in (True, False):
            p = MotifParams(365 * 2, observation_rule=rule, include_same_day=same_day)
            bins = [(b.start, b.end) for b in yearly_bins(*g.year_range())]
            for row_country in g.countries():
                for role in Role:
                    got = [c.count for c in motif_counts(g, row_country, role, p)]
                    want = oracle_motif_counts(g, row_country, role.value, bins, p.delta_days,
                                               rule.value, same_day)
                    assert got == want, (row_country, role, rule, same_day)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 2**32 - 1), st.integers(1, 60), st.integers(1, 800))
def test_weights_sum_to_pairs(seed, n, delta):
    # with every edge open and bins covering everything, the total is the raw pair count
    rng = np.random.default_rng(seed)
    g = build_graph(random_lifecycles(rng, n, remove_rate=0.0))
    for same_day in (True, False):
        p = MotifParams(delta, include_same_day=same_day, observation_rule=ObservationRule.EVENT_TIME)
        for c in g.countries():
            total = sum(m.count for m in motif_counts(g, c, Role.FINAL, p))
            assert total == oracle_pairs_python(g, c, "Final", delta, same_day)
            assert total == sum(event_weight(g, e.edge_key, Role.FINAL, p)
                                for e in g.edges if e.v.country == c)


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 2**32 - 1), st.sampled_from(RULES), st.booleans())
def test_monotone_in_delta(seed, rule, same_day):
    rng = np.random.default_rng(seed)
    g = build_graph(random_lifecycles(rng, 80))
    prev = None
    for delta in (30, 180, 365, 1000, 3000):
        cur = [m.count for m in campaign_table(g, None, MotifParams(delta, observation_rule=rule,
                                                                    include_same_day=same_day))]
        if prev is not None:
            assert all(a <= b for a, b in zip(prev, cur))
        prev = cur


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 2**32 - 1), st.sampled_from(RULES))
def test_removal_never_increases(seed, rule):
    rng = np.random.default_rng(seed)
    lcs = random_lifecycles(rng, 80)
    p = MotifParams(730, observation_rule=rule)
    before = campaign_table(build_graph(lcs), None, p)
    i = int(rng.integers(len(lcs)))
    x = lcs[i]
    cut = x.t_add + dt.timedelta(days=int(rng.integers(0, 400)))
    if x.t_remove is None or cut < x.t_remove:
        lcs[i] = Lifecycle(x.edge_key, x.entity_name, x.intermediate, x.final, x.t_add, cut)
    after = campaign_table(build_graph(lcs), None, p)
    assert [a.bin for a in after] == [b.bin for b in before]
    assert all(a.count <= b.count for a, b in zip(after, before))


def test_isolation():
    rng = np.random.default_rng(8)
    lcs = random_lifecycles(rng, 150)
    g = build_graph(lcs)
    only = build_graph([l for l in lcs if l.final == "IR"])
    p = MotifParams(730, bins=tuple(yearly_bins(2015, 2020)))
    assert motif_counts(g, "IR", Role.FINAL, p) == motif_counts(only, "IR", Role.FINAL, p)
