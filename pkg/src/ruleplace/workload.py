"""Application groups, seeded workload generation and the instance file format."""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path

from . import kernels
from .topology import Topology, TopologyError, dump_topology, parse_topology_lines


class InstanceError(ValueError):
    pass


@dataclass(frozen=True)
class WorkloadProfile:
    name: str
    min_nodes: int
    max_nodes: int

    def validate(self, topology: Topology) -> None:
        if not 1 <= self.min_nodes <= self.max_nodes:
            raise InstanceError(f"workload {self.name!r}: need 1 <= min_nodes <= max_nodes")
        if self.max_nodes > topology.node_count:
            raise InstanceError(
                f"workload {self.name!r}: max_nodes={self.max_nodes} exceeds "
                f"topology node count {topology.node_count}")


LIGHT = WorkloadProfile("light", 10, 100)
HEAVY = WorkloadProfile("heavy", 100, 200)
WORKLOAD_PROFILES = {p.name: p for p in (LIGHT, HEAVY)}


@dataclass(frozen=True)
class ApplicationGroup:
    id: int
    nodes: tuple[int, ...]

    def __post_init__(self):
        nodes = tuple(sorted(self.nodes))
        if len(set(nodes)) != len(nodes):
            raise InstanceError(f"group {self.id} lists a node twice")
        object.__setattr__(self, "nodes", nodes)


@dataclass(frozen=True)
class Instance:
    topology: Topology
    groups: tuple[ApplicationGroup, ...]
    rule_cost: int = 1
    # flattened attached-switch lists, built once for the kernels
    _flat: tuple = field(default=None, init=False, repr=False, compare=False)

    def __post_init__(self):
        if self.rule_cost < 1:
            raise InstanceError("rule_cost must be >= 1")
        object.__setattr__(self, "groups", tuple(self.groups))
        seen = set()
        n = self.topology.node_count
        for g in self.groups:
            if g.id in seen:
                raise InstanceError(f"duplicate group id {g.id}")
            seen.add(g.id)
            if not g.nodes:
                raise InstanceError(f"group {g.id} is empty")
            if g.nodes[0] < 0 or g.nodes[-1] >= n:
                bad = next(x for x in g.nodes if not 0 <= x < n)
                raise InstanceError(f"group {g.id}: unknown node {bad}")

    def __len__(self):
        return len(self.groups)

    def flat(self):
        """``(offsets, node_switch)`` arrays in group order, for the kernels."""
        if self._flat is None:
            from array import array
            attach = self.topology.attachment()
            offsets = array("q", [0])
            node_switch = array("q")
            for g in self.groups:
                node_switch.extend(attach[x] for x in g.nodes)
                offsets.append(len(node_switch))
            object.__setattr__(self, "_flat", (offsets, node_switch))
        return self._flat

    def with_capacity(self, capacity: int) -> "Instance":
        inst = Instance.__new__(Instance)
        object.__setattr__(inst, "topology", self.topology.with_capacity(capacity))
        object.__setattr__(inst, "groups", self.groups)
        object.__setattr__(inst, "rule_cost", self.rule_cost)
        object.__setattr__(inst, "_flat", self._flat)
        return inst


def generate_groups(topology: Topology, profile: WorkloadProfile, count: int,
                    seed: int) -> list[ApplicationGroup]:
    """Draw ``count`` groups with uniform size and uniform distinct members.

    Fully determined by ``seed`` (xoshiro256** seeded through splitmix64).
    Groups may share nodes with each other.
    """
    if count < 0:
        raise InstanceError("count must be non-negative")
    profile.validate(topology)
    offsets, members = kernels.sample_groups(seed, topology.node_count,
                                             profile.min_nodes, profile.max_nodes, count)
    return [ApplicationGroup(k, tuple(members[offsets[k]:offsets[k + 1]]))
            for k in range(count)]


def generate_instance(topology, profile, count, seed, rule_cost=1) -> Instance:
    return Instance(topology, tuple(generate_groups(topology, profile, count, seed)), rule_cost)


# --- text format -----------------------------------------------------------

def dump_instance(instance: Instance) -> str:
    out = [dump_topology(instance.topology), f"rule_cost={instance.rule_cost}\n"]
    for g in instance.groups:
        out.append(f"group={g.id} nodes={','.join(map(str, g.nodes))}\n")
    return "".join(out)


def parse_instance(text: str) -> Instance:
    lines = [(i, ln.strip()) for i, ln in enumerate(text.splitlines(), 1)
             if ln.strip() and not ln.lstrip().startswith("#")]
    split = next((k for k, (_, ln) in enumerate(lines) if ln.startswith("rule_cost=")), None)
    if split is None:
        last = lines[-1][0] if lines else 1
        raise InstanceError(f"line {last}: missing rule_cost line")
    try:
        topology = parse_topology_lines(lines[:split])
    except TopologyError as exc:
        raise InstanceError(str(exc)) from None
    lineno, line = lines[split]
    try:
        rule_cost = int(line.partition("=")[2])
    except ValueError:
        raise InstanceError(f"line {lineno}: bad rule_cost") from None
    groups = []
    for lineno, line in lines[split + 1:]:
        toks = dict(t.partition("=")[::2] for t in line.split())
        try:
            gid = int(toks["group"])
            raw = toks["nodes"]
            nodes = tuple(int(x) for x in raw.split(",")) if raw else ()
        except (KeyError, ValueError):
            raise InstanceError(f"line {lineno}: bad group line {line!r}") from None
        if gid != len(groups):
            raise InstanceError(f"line {lineno}: group ids must be dense, expected {len(groups)}")
        for x in nodes:
            if not 0 <= x < topology.node_count:
                raise InstanceError(f"line {lineno}: unknown node {x}")
        try:
            groups.append(ApplicationGroup(gid, nodes))
        except InstanceError as exc:
            raise InstanceError(f"line {lineno}: {exc}") from None
        if not nodes:
            raise InstanceError(f"line {lineno}: group {gid} is empty")
    return Instance(topology, tuple(groups), rule_cost)


def save_instance(instance: Instance, path) -> None:
    Path(path).write_text(dump_instance(instance))


def load_instance(path) -> Instance:
    return parse_instance(Path(path).read_text())
