"""Destination-based isolation rules and per-switch rule tables."""

from __future__ import annotations

from dataclasses import dataclass, field

from .placement import PlacementResult
from .topology import Topology, format_ip, format_mac
from .workload import Instance


class CapacityViolation(RuntimeError):
    pass


@dataclass(frozen=True)
class ForwardingRule:
    switch: int
    group: int
    match_dst_ip: int
    action_set_mac: int
    action_out_port: int

    def render(self, arrow: str = "<-", mac_octets: int = 6) -> str:
        # mac_octets=4 gives the short form used in the classic example table
        return (f"IF IP = {format_ip(self.match_dst_ip)} THEN MAC {arrow} "
                f"{format_mac(self.action_set_mac, mac_octets)}, PORT {arrow} {self.action_out_port}")


@dataclass
class SwitchRuleTable:
    switch: int
    capacity: int
    rule_cost: int = 1
    rules: list = field(default_factory=list)

    @property
    def used(self) -> int:
        return self.rule_cost * len(self.rules)

    def render(self, arrow: str = "<-", mac_octets: int = 6) -> str:
        lines = [f"# switch {self.switch}"]
        lines.extend(r.render(arrow, mac_octets) for r in self.rules)
        return "\n".join(lines) + "\n"


def synthesize_group_rules(topology: Topology, group, rule_cost: int = 1) -> list[ForwardingRule]:
    """One rule per member node, installed on the node's own leaf switch.

    Each rule costs ``rule_cost`` slots; the caller accounts for that.
    """
    out = []
    for x in group.nodes:
        node = topology.nodes[x]
        out.append(ForwardingRule(node.attached_switch, group.id, node.ip, node.mac, node.port))
    return out


def materialize_tables(instance: Instance, placement: PlacementResult) -> list[SwitchRuleTable]:
    topo = instance.topology
    tables = [SwitchRuleTable(sw.id, sw.capacity, instance.rule_cost) for sw in topo.switches]
    for g in instance.groups:
        if g.id in placement.placed:
            for rule in synthesize_group_rules(topo, g, instance.rule_cost):
                tables[rule.switch].rules.append(rule)
    for t, left in zip(tables, placement.residual):
        if t.used > t.capacity:
            raise CapacityViolation(f"switch {t.switch}: {t.used} slots used, capacity {t.capacity}")
        # stranded slots make faithful-mode residual smaller than the real slack
        if placement.rollback and t.used != t.capacity - left:
            raise CapacityViolation(
                f"switch {t.switch}: tables use {t.used} slots, solver accounted {t.capacity - left}")
    return tables


def render_tables(tables, arrow: str = "<-", mac_octets: int = 6) -> str:
    return "".join(t.render(arrow, mac_octets) for t in tables)
