import random

import pytest
from hypothesis import given, settings, strategies as st

from conftest import random_small_instance
from ruleplace.placement import GreedyMode, PlacementResult, greedy_place, group_cost_on_switch, random_place
from ruleplace.rules import CapacityViolation, materialize_tables, render_tables, synthesize_group_rules
from ruleplace.topology import NetworkProfile, build_topology
from ruleplace.workload import ApplicationGroup

TABLE_II = [
    "IF IP = 10.0.0.1 THEN MAC ← 00:00:00:01, PORT ← 1",
    "IF IP = 10.0.0.2 THEN MAC ← 00:00:00:02, PORT ← 2",
    "IF IP = 10.0.0.3 THEN MAC ← 00:00:00:03, PORT ← 3",
    "IF IP = 10.0.0.4 THEN MAC ← 00:00:00:04, PORT ← 4",
]


def test_four_node_switch_rules_verbatim():
    topo = build_topology(NetworkProfile("one-switch", 1, 4, 10))
    rules = synthesize_group_rules(topo, ApplicationGroup(0, (0, 1, 2, 3)))
    assert [r.render("←", 4) for r in rules] == TABLE_II


def test_ascii_rendering():
    topo = build_topology(NetworkProfile("one-switch", 1, 4, 10))
    (rule,) = synthesize_group_rules(topo, ApplicationGroup(0, (1,)))
    assert rule.render() == "IF IP = 10.0.0.2 THEN MAC <- 00:00:00:00:00:02, PORT <- 2"


def test_empty_group_has_no_rules():
    topo = build_topology(NetworkProfile("p", 1, 1, 1))
    assert synthesize_group_rules(topo, ApplicationGroup(0, ())) == []


def test_nothing_placed(contended):
    empty = PlacementResult(frozenset(), (2, 2), (), "none", True)
    assert all(t.rules == [] for t in materialize_tables(contended, empty))


def test_contended_tables(contended):
    tables = materialize_tables(contended, greedy_place(contended))
    assert [r.match_dst_ip & 0xFF for r in tables[0].rules] == [1]
    assert [r.match_dst_ip & 0xFF for r in tables[1].rules] == [4, 5]
    assert render_tables(tables).splitlines()[0] == "# switch 0"


def test_capacity_violation_detected(contended):
    bogus = PlacementResult(frozenset({0, 1}), (0, 2), (), "bogus", True)
    with pytest.raises(CapacityViolation):
        materialize_tables(contended, bogus)


def test_faithful_result_materializes(contended):
    tables = materialize_tables(contended, greedy_place(contended, GreedyMode(False)))
    assert [t.used for t in tables] == [0, 2]


@settings(max_examples=200, deadline=None)
@given(seed=st.integers(0, 2**32))
def test_rule_accounting_matches_placement(seed):
    inst = random_small_instance(random.Random(seed))
    topo = inst.topology
    for g in inst.groups:
        rules = synthesize_group_rules(topo, g, inst.rule_cost)
        assert len(rules) == len(g.nodes)
        for sw in topo.switches:
            cost = inst.rule_cost * sum(1 for r in rules if r.switch == sw.id)
            assert cost == group_cost_on_switch(inst, g, sw.id)
    for result in (greedy_place(inst), random_place(inst, seed)):
        tables = materialize_tables(inst, result)
        for t, left in zip(tables, result.residual):
            assert t.used == t.capacity - left
            keys = [(r.switch, r.group, r.match_dst_ip) for r in t.rules]
            assert len(set(keys)) == len(keys)
        # isolation: each placed pair (src, dst) has a rule on dst's switch to dst's port only
        by_switch = {t.switch: t.rules for t in tables}
        for g in inst.groups:
            if g.id not in result.placed:
                continue
            for dst in g.nodes:
                node = topo.nodes[dst]
                hits = [r for r in by_switch[node.attached_switch]
                        if r.group == g.id and r.match_dst_ip == node.ip]
                assert len(hits) == 1
                assert hits[0].action_out_port == node.port
                assert hits[0].action_set_mac == node.mac
        for t in tables:
            for r in t.rules:
                owner = next(n for n in topo.nodes if n.ip == r.match_dst_ip)
                assert owner.attached_switch == t.switch and owner.port == r.action_out_port
                assert owner.id in next(g for g in inst.groups if g.id == r.group).nodes
