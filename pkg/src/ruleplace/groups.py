"""Application/node table driven by submit, update and complete events.

Each generation of the table is re-solved from scratch.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from types import MappingProxyType
from typing import Mapping, Sequence

from .placement import GreedyMode, brute_force_optimum, greedy_place, random_place, PlacementResult
from .topology import Topology
from .workload import ApplicationGroup, Instance


class EventError(ValueError):
    pass


SUBMIT, UPDATE, COMPLETE = "submit", "update", "complete"


@dataclass(frozen=True)
class Event:
    seq: int
    kind: str
    group_id: int
    nodes: tuple = ()

    def __post_init__(self):
        if self.kind not in (SUBMIT, UPDATE, COMPLETE):
            raise EventError(f"unknown event kind {self.kind!r}")


@dataclass(frozen=True)
class GroupTable:
    groups: Mapping[int, ApplicationGroup] = field(default_factory=dict)
    generation: int = 0

    def __post_init__(self):
        object.__setattr__(self, "groups", MappingProxyType(dict(self.groups)))

    def __eq__(self, other):
        if not isinstance(other, GroupTable):
            return NotImplemented
        return self.generation == other.generation and dict(self.groups) == dict(other.groups)

    def snapshot(self) -> tuple[ApplicationGroup, ...]:
        return tuple(self.groups[k] for k in sorted(self.groups))


def apply_event(table: GroupTable, event: Event) -> GroupTable:
    """Return the table after ``event``; ``table`` itself is never modified."""
    groups = dict(table.groups)
    gid = event.group_id
    if event.kind == SUBMIT:
        if gid in groups:
            raise EventError(f"event {event.seq}: duplicate submit of group {gid}")
        groups[gid] = _group(event)
    elif event.kind == UPDATE:
        if gid not in groups:
            raise EventError(f"event {event.seq}: unknown id {gid}")
        groups[gid] = _group(event)
    else:
        if gid not in groups:
            raise EventError(f"event {event.seq}: unknown id {gid}")
        del groups[gid]
    return GroupTable(groups, table.generation + 1)


def _group(event):
    if not event.nodes:
        raise EventError(f"event {event.seq}: group {event.group_id} has no nodes")
    try:
        return ApplicationGroup(event.group_id, tuple(event.nodes))
    except ValueError as exc:
        raise EventError(f"event {event.seq}: {exc}") from None


@dataclass(frozen=True)
class SolverConfig:
    solver: str = "greedy-rollback"
    seed: int = 0
    rule_cost: int = 1
    on_error: str = "abort"  # or "skip"


def solve(instance: Instance, config: SolverConfig) -> PlacementResult:
    if config.solver == "greedy-rollback":
        return greedy_place(instance, GreedyMode(rollback=True))
    if config.solver == "greedy-faithful":
        return greedy_place(instance, GreedyMode(rollback=False))
    if config.solver == "random":
        return random_place(instance, config.seed)
    if config.solver == "oracle":
        _, witness = brute_force_optimum(instance)
        return _oracle_result(instance, witness)
    raise ValueError(f"unknown solver {config.solver!r}")


def _oracle_result(instance, witness):
    from .placement import switch_loads
    load = switch_loads(instance, witness)
    residual = tuple(sw.capacity - u for sw, u in zip(instance.topology.switches, load))
    rejected = tuple((g.id, -1) for g in instance.groups if g.id not in witness)
    return PlacementResult(frozenset(witness), residual, rejected, "oracle", True,
                           tuple(g.id for g in instance.groups))


def replay(events: Sequence[Event], topology: Topology,
           config: SolverConfig = SolverConfig()) -> list[tuple[int, PlacementResult]]:
    """Apply ``events`` in order and place every resulting generation."""
    last = None
    for ev in events:
        if last is not None and ev.seq <= last:
            raise EventError(f"event {ev.seq}: sequence numbers must increase")
        last = ev.seq
    table = GroupTable()
    out = []
    for ev in events:
        try:
            nxt = apply_event(table, ev)
            instance = Instance(topology, nxt.snapshot(), config.rule_cost)
        except ValueError as exc:
            if config.on_error == "skip":
                continue
            raise EventError(str(exc)) from None
        table = nxt
        out.append((table.generation, solve(instance, config)))
    return out


def fold(events: Sequence[Event], table: GroupTable | None = None) -> GroupTable:
    table = table or GroupTable()
    for ev in events:
        table = apply_event(table, ev)
    return table


# --- text format -----------------------------------------------------------

def format_event(ev: Event) -> str:
    if ev.kind == COMPLETE:
        return f"{ev.seq} complete {ev.group_id}"
    return f"{ev.seq} {ev.kind} {ev.group_id} nodes={','.join(map(str, ev.nodes))}"


def parse_events(text: str) -> list[Event]:
    events = []
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        try:
            seq, kind, gid = int(parts[0]), parts[1], int(parts[2])
            if kind == COMPLETE:
                if len(parts) != 3:
                    raise ValueError("complete takes no node list")
                nodes = ()
            else:
                if len(parts) != 4 or not parts[3].startswith("nodes="):
                    raise ValueError("expected nodes=<id,...>")
                raw = parts[3][len("nodes="):]
                nodes = tuple(int(x) for x in raw.split(",")) if raw else ()
            events.append(Event(seq, kind, gid, nodes))
        except (IndexError, ValueError) as exc:
            raise EventError(f"line {lineno}: {exc}") from None
    return events
