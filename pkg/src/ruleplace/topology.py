"""Leaf-switch network model: switches, nodes and node/switch attachment."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable


class TopologyError(ValueError):
    pass


@dataclass(frozen=True)
class NetworkProfile:
    name: str
    switch_count: int
    nodes_per_switch: int
    capacity: int

    def __post_init__(self):
        if self.switch_count < 1 or self.nodes_per_switch < 1:
            raise TopologyError(f"profile {self.name!r}: need at least one switch and one node per switch")
        if self.capacity < 0:
            raise TopologyError(f"profile {self.name!r}: capacity must be non-negative")

    @property
    def node_count(self) -> int:
        return self.switch_count * self.nodes_per_switch


NORMAL = NetworkProfile("normal", 50, 20, 1000)
CLOUD = NetworkProfile("cloud", 50, 400, 1000)
NETWORK_PROFILES = {p.name: p for p in (NORMAL, CLOUD)}


@dataclass(frozen=True)
class Switch:
    id: int
    capacity: int


@dataclass(frozen=True)
class Node:
    id: int
    attached_switch: int
    ip: int
    mac: int
    port: int


def format_ip(ip: int) -> str:
    return ".".join(str((ip >> shift) & 0xFF) for shift in (24, 16, 8, 0))


def parse_ip(text: str) -> int:
    parts = text.split(".")
    if len(parts) != 4 or not all(p.isdigit() and int(p) < 256 for p in parts):
        raise ValueError(f"bad IPv4 address {text!r}")
    value = 0
    for p in parts:
        value = (value << 8) | int(p)
    return value


def format_mac(mac: int, octets: int = 6) -> str:
    """Render the low ``octets`` bytes of ``mac`` as colon-separated hex."""
    return ":".join(f"{(mac >> (8 * i)) & 0xFF:02x}" for i in reversed(range(octets)))


def parse_mac(text: str) -> int:
    parts = text.split(":")
    if len(parts) != 6:
        raise ValueError(f"bad MAC address {text!r}")
    value = 0
    for p in parts:
        value = (value << 8) | int(p, 16)
    return value


def node_ip(node_id: int) -> int:
    # 10.0.0.0/8 with id + 1 in the low 24 bits
    return (10 << 24) | ((node_id + 1) & 0xFFFFFF)


def node_mac(node_id: int) -> int:
    return (node_id + 1) & 0xFFFFFFFFFFFF


@dataclass(frozen=True)
class Topology:
    switches: tuple[Switch, ...]
    nodes: tuple[Node, ...]

    def __post_init__(self):
        for i, sw in enumerate(self.switches):
            if sw.id != i:
                raise TopologyError(f"switch ids must be dense, got {sw.id} at position {i}")
            if sw.capacity < 0:
                raise TopologyError(f"switch {sw.id} has negative capacity")
        seen_ports, seen_ip, seen_mac = set(), set(), set()
        for i, node in enumerate(self.nodes):
            if node.id != i:
                raise TopologyError(f"node ids must be dense, got {node.id} at position {i}")
            if not 0 <= node.attached_switch < len(self.switches):
                raise TopologyError(f"node {node.id} attached to unknown switch {node.attached_switch}")
            key = (node.attached_switch, node.port)
            if key in seen_ports or node.ip in seen_ip or node.mac in seen_mac:
                raise TopologyError(f"node {node.id} duplicates a port, IP or MAC")
            seen_ports.add(key)
            seen_ip.add(node.ip)
            seen_mac.add(node.mac)

    @property
    def switch_count(self) -> int:
        return len(self.switches)

    @property
    def node_count(self) -> int:
        return len(self.nodes)

    @property
    def capacities(self) -> list[int]:
        return [sw.capacity for sw in self.switches]

    def attachment(self) -> list[int]:
        """Attached switch of every node, indexed by node id."""
        return [n.attached_switch for n in self.nodes]

    def with_capacity(self, capacity: int) -> "Topology":
        if capacity < 0:
            raise TopologyError("capacity must be non-negative")
        switches = tuple(Switch(sw.id, capacity) for sw in self.switches)
        # skip re-validation of unchanged nodes
        obj = object.__new__(Topology)
        object.__setattr__(obj, "switches", switches)
        object.__setattr__(obj, "nodes", self.nodes)
        return obj

    def _check_node(self, node: int) -> None:
        if not 0 <= node < len(self.nodes):
            raise TopologyError(f"unknown node {node}")

    def _check_switch(self, switch: int) -> None:
        if not 0 <= switch < len(self.switches):
            raise TopologyError(f"unknown switch {switch}")


def build_topology(profile: NetworkProfile) -> Topology:
    """Attach nodes to switches in contiguous blocks of ``nodes_per_switch``."""
    switches = tuple(Switch(j, profile.capacity) for j in range(profile.switch_count))
    nodes = []
    for k in range(profile.node_count):
        sw, offset = divmod(k, profile.nodes_per_switch)
        nodes.append(Node(k, sw, node_ip(k), node_mac(k), offset + 1))
    return Topology(switches, tuple(nodes))


def connected(topology: Topology, node: int, switch: int) -> int:
    """Connection indicator: 1 iff ``node`` hangs off ``switch``."""
    topology._check_node(node)
    topology._check_switch(switch)
    return int(topology.nodes[node].attached_switch == switch)


def switch_set(topology: Topology, nodes: Iterable[int]) -> list[int]:
    """Sorted leaf switches touched by ``nodes``.

    Accepts a group object (anything with a ``nodes`` attribute) or a plain
    iterable of node ids.
    """
    nodes = getattr(nodes, "nodes", nodes)
    out = set()
    for n in nodes:
        topology._check_node(n)
        out.add(topology.nodes[n].attached_switch)
    return sorted(out)


# --- text format -----------------------------------------------------------

def dump_topology(topology: Topology) -> str:
    caps = {sw.capacity for sw in topology.switches}
    if len(caps) > 1:
        raise TopologyError("text format requires uniform switch capacity")
    cap = caps.pop() if caps else 0
    lines = [f"switches={topology.switch_count} capacity={cap}"]
    for n in topology.nodes:
        lines.append(f"node={n.id} switch={n.attached_switch} port={n.port} "
                     f"ip={format_ip(n.ip)} mac={format_mac(n.mac)}")
    return "\n".join(lines) + "\n"


def _fields(line: str, lineno: int) -> dict[str, str]:
    out = {}
    for tok in line.split():
        key, sep, value = tok.partition("=")
        if not sep:
            raise TopologyError(f"line {lineno}: expected key=value, got {tok!r}")
        out[key] = value
    return out


def parse_topology_lines(lines: list[tuple[int, str]]) -> Topology:
    """Parse ``(lineno, text)`` pairs: one header then node lines."""
    if not lines:
        raise TopologyError("line 1: missing topology header")
    lineno, header = lines[0]
    try:
        f = _fields(header, lineno)
        n_switches, cap = int(f["switches"]), int(f["capacity"])
    except (KeyError, ValueError) as exc:
        raise TopologyError(f"line {lineno}: bad topology header: {exc}") from None
    switches = tuple(Switch(j, cap) for j in range(n_switches))
    nodes = []
    for lineno, line in lines[1:]:
        f = _fields(line, lineno)
        try:
            nodes.append(Node(int(f["node"]), int(f["switch"]), parse_ip(f["ip"]),
                              parse_mac(f["mac"]), int(f["port"])))
        except (KeyError, ValueError) as exc:
            raise TopologyError(f"line {lineno}: bad node line: {exc}") from None
    try:
        return Topology(switches, tuple(nodes))
    except TopologyError as exc:
        raise TopologyError(f"line {lineno}: {exc}") from None


def load_topology(text: str) -> Topology:
    lines = [(i, ln.strip()) for i, ln in enumerate(text.splitlines(), 1)
             if ln.strip() and not ln.lstrip().startswith("#")]
    return parse_topology_lines(lines)


def topology_from_attachment(attachment: list[int], capacity: int | list[int],
                             switch_count: int | None = None) -> Topology:
    """Topology with node ``k`` on switch ``attachment[k]``; ports numbered per switch from 1."""
    n_sw = switch_count if switch_count is not None else (max(attachment) + 1 if attachment else 1)
    caps = capacity if isinstance(capacity, list) else [capacity] * n_sw
    switches = tuple(Switch(j, caps[j]) for j in range(n_sw))
    next_port = [1] * n_sw
    nodes = []
    for k, sw in enumerate(attachment):
        if not 0 <= sw < n_sw:
            raise TopologyError(f"node {k} attached to unknown switch {sw}")
        nodes.append(Node(k, sw, node_ip(k), node_mac(k), next_port[sw]))
        next_port[sw] += 1
    return Topology(switches, tuple(nodes))
