import datetime as dt

import numpy as np

from sanctiongraph.networks import (
    final_target_network,
    intermediate_target_network,
    network_rows,
    network_table,
)
from sanctiongraph.temporal_graph import Role, RoleNode, build_graph, degree

from helpers import D, graph, random_lifecycles

T = D("2011-01-01")


def test_itn_counts():
    g = graph(("a", "CN", "IR", "2010-01-01", None), ("b", "CN", "IR", "2010-01-01", None),
              ("c", "CN", "RU", "2010-01-01", None), ("d", "CN", "KP", "2010-01-01", "2010-06-01"))
    assert intermediate_target_network(g, "CN", T).members == {"IR": 2, "RU": 1}
    assert intermediate_target_network(g, "CN", T, cumulative=True).members == {"IR": 2, "KP": 1, "RU": 1}


def test_empty_cases():
    g = graph(("a", "CN", "IR", "2010-01-01", None))
    assert intermediate_target_network(g, "IR", T).members == {}
    assert final_target_network(build_graph([]), "CN", T).members == {}


def test_self_pair_in_own_ftn():
    g = graph(("a", "CN", "CN", "2010-01-01", None), ("b", "HK", "CN", "2010-01-01", None))
    ftn = final_target_network(g, "CN", T)
    assert ftn.members == {"CN": 1, "HK": 1}
    assert "CN" in intermediate_target_network(g, "CN", T).members


def brute_ftn(g, c, t):
    out = {}
    for e in g.edges:
        if e.v.country == c and e.t_add <= t and (e.t_remove is None or t < e.t_remove):
            out[e.u.country] = out.get(e.u.country, 0) + 1
    return out


def test_ftn_matches_brute_force():
    rng = np.random.default_rng(4)
    g = build_graph(random_lifecycles(rng, 300))
    for t in (D("2016-01-01"), D("2018-06-30"), D("2022-01-01")):
        for c in g.countries():
            assert final_target_network(g, c, t).members == brute_ftn(g, c, t)


def test_identities_random():
    rng = np.random.default_rng(9)
    g = build_graph(random_lifecycles(rng, 200))
    t = D("2018-06-30")
    for c in g.countries():
        itn = intermediate_target_network(g, c, t)
        ftn = final_target_network(g, c, t)
        assert itn.total() == degree(g, RoleNode(c, Role.INTERMEDIATE), t)
        assert ftn.total() == degree(g, RoleNode(c, Role.FINAL), t)
        for m, k in itn.members.items():
            assert final_target_network(g, m, t).members[c] == k


def test_table_order_and_totals():
    g = graph(("a", "CN", "RU", "2010-01-01", None), ("b", "CN", "IR", "2010-01-01", None),
              ("c", "CN", "KP", "2010-01-01", None), ("d", "CN", "KP", "2010-01-01", None),
              ("e", "HK", "CN", "2010-01-01", None))
    rows = network_table(g, ["CN"], T)
    assert [(r.role.value, r.member, r.case_count) for r in rows] == [
        ("Intermediate", "KP", 2), ("Intermediate", "IR", 1), ("Intermediate", "RU", 1),
        ("Final", "HK", 1),
    ]
    assert sum(r.case_count for r in rows if r.role is Role.INTERMEDIATE) == degree(
        g, RoleNode("CN", Role.INTERMEDIATE), T)
    assert network_rows(rows)[0] == ["anchor", "role", "member", "case_count", "t"]
    assert network_rows(rows)[1] == ["CN", "Intermediate", "KP", "2", "2011-01-01"]


def test_before_all_adds_is_empty():
    g = graph(("a", "CN", "RU", "2010-01-01", None))
    assert network_table(g, None, D("2000-01-01")) == []
