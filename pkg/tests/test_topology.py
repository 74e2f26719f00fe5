import pytest
from hypothesis import given, settings, strategies as st

from ruleplace.topology import (CLOUD, NORMAL, NetworkProfile, TopologyError, build_topology,
                                connected, dump_topology, format_ip, format_mac, load_topology,
                                switch_set)


def test_normal_profile_counts():
    topo = build_topology(NORMAL)
    assert topo.switch_count == 50
    assert topo.node_count == 1000
    assert {sw.capacity for sw in topo.switches} == {1000}


def test_cloud_profile_counts():
    topo = build_topology(CLOUD)
    assert topo.switch_count == 50
    assert topo.node_count == 20000


def test_single_node_topology():
    topo = build_topology(NetworkProfile("tiny", 1, 1, 0))
    (node,) = topo.nodes
    assert node.attached_switch == 0
    assert node.port == 1  # ports are 1-based; first port on switch 0
    assert format_ip(node.ip) == "10.0.0.1"


def test_block_attachment():
    topo = build_topology(NetworkProfile("p", 3, 4, 5))
    assert [n.attached_switch for n in topo.nodes] == [0] * 4 + [1] * 4 + [2] * 4
    assert [n.port for n in topo.nodes[:4]] == [1, 2, 3, 4]


def test_connected(fig5):
    topo = fig5.topology
    assert connected(topo, 0, 0) == 1
    assert connected(topo, 0, 1) == 0
    # n3 on s2, n1 not on s2
    assert connected(topo, 2, 1) == 1
    assert connected(topo, 0, 1) == 0
    with pytest.raises(TopologyError):
        connected(topo, 99, 0)
    with pytest.raises(TopologyError):
        connected(topo, 0, 7)


def test_switch_set(fig5):
    topo = fig5.topology
    assert switch_set(topo, fig5.groups[0]) == [0, 1]
    assert switch_set(topo, fig5.groups[1]) == [1]
    assert switch_set(topo, []) == []
    with pytest.raises(TopologyError):
        switch_set(topo, [0, 42])


def test_bad_profiles():
    with pytest.raises(TopologyError):
        NetworkProfile("x", 0, 1, 1)
    with pytest.raises(TopologyError):
        NetworkProfile("x", 1, 1, -1)


def test_text_format():
    topo = build_topology(NetworkProfile("p", 2, 2, 7))
    text = dump_topology(topo)
    assert text.splitlines()[0] == "switches=2 capacity=7"
    assert text.splitlines()[1] == "node=0 switch=0 port=1 ip=10.0.0.1 mac=00:00:00:00:00:01"
    assert load_topology(text) == topo


def test_parse_error_has_line_number():
    with pytest.raises(TopologyError, match="line 2"):
        load_topology("switches=1 capacity=3\nnode=0 switch=0 port=x ip=10.0.0.1 mac=00:00:00:00:00:01\n")


def test_mac_rendering():
    assert format_mac(1) == "00:00:00:00:00:01"
    assert format_mac(0x0A0B, 4) == "00:00:0a:0b"


@settings(max_examples=200, deadline=None)
@given(switches=st.integers(1, 12), per=st.integers(1, 30), cap=st.integers(0, 50))
def test_topology_invariants(switches, per, cap):
    prof = NetworkProfile("p", switches, per, cap)
    topo = build_topology(prof)
    for node in topo.nodes:
        assert sum(connected(topo, node.id, s) for s in range(switches)) == 1
    assert len({n.ip for n in topo.nodes}) == topo.node_count
    assert len({n.mac for n in topo.nodes}) == topo.node_count
    assert len({(n.attached_switch, n.port) for n in topo.nodes}) == topo.node_count
    assert dump_topology(build_topology(prof)) == dump_topology(topo)
    some = list(range(0, topo.node_count, 3))
    assert len(switch_set(topo, some)) <= min(len(some), switches)
