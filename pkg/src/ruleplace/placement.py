"""Capacity-constrained rule placement: greedy, random baseline, exact oracle.

Every solver admits whole groups only. A group costs ``rule_cost`` slots on
a switch for each of its nodes attached to that switch.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Iterable

from . import kernels
from .workload import Instance

ORACLE_LIMIT = 20


class OracleRefused(RuntimeError):
    pass


@dataclass(frozen=True)
class GreedyMode:
    rollback: bool = True


@dataclass(frozen=True)
class PlacementResult:
    placed: frozenset
    residual: tuple
    rejected: tuple  # (group id, first switch without room)
    solver: str
    rollback: bool
    order: tuple = ()  # group ids in processing order

    @property
    def size(self) -> int:
        return len(self.placed)


def group_cost_on_switch(instance: Instance, group, switch: int) -> int:
    attach = instance.topology.nodes
    nodes = getattr(group, "nodes", None)
    if nodes is None:
        nodes = _by_id(instance)[group].nodes
    return instance.rule_cost * sum(1 for x in nodes if attach[x].attached_switch == switch)


def _by_id(instance):
    return {g.id: g for g in instance.groups}


def switch_loads(instance: Instance, group_ids: Iterable[int]) -> list[int]:
    """Slots each switch needs to host every group in ``group_ids``."""
    by_id = _by_id(instance)
    attach = instance.topology.attachment()
    load = [0] * instance.topology.switch_count
    for gid in group_ids:
        for x in by_id[gid].nodes:
            load[attach[x]] += instance.rule_cost
    return load


def is_feasible(instance: Instance, candidate: Iterable[int]) -> bool:
    load = switch_loads(instance, candidate)
    return all(u <= sw.capacity for u, sw in zip(load, instance.topology.switches))


def capacity_shortfall(instance: Instance) -> list[int]:
    """Total demand of all groups minus capacity, per switch."""
    load = switch_loads(instance, (g.id for g in instance.groups))
    return [u - sw.capacity for u, sw in zip(load, instance.topology.switches)]


def _run(instance: Instance, order: list[int], rollback: bool, solver: str) -> PlacementResult:
    offsets, node_switch = instance.flat()
    placed, residual, fail = kernels.admit(order, offsets, node_switch,
                                           instance.topology.capacities,
                                           instance.rule_cost, rollback)
    groups = instance.groups
    return PlacementResult(
        placed=frozenset(groups[i].id for i in order if placed[i]),
        residual=tuple(residual),
        rejected=tuple((groups[i].id, fail[i]) for i in order if not placed[i]),
        solver=solver,
        rollback=rollback,
        order=tuple(groups[i].id for i in order),
    )


def greedy_order(instance: Instance) -> list[int]:
    """Group positions sorted by switch-set size, ties by group id."""
    offsets, node_switch = instance.flat()
    key = []
    for i, g in enumerate(instance.groups):
        width = len(set(node_switch[offsets[i]:offsets[i + 1]]))
        key.append((width, g.id, i))
    key.sort()
    return [i for _, _, i in key]


def greedy_place(instance: Instance, mode: GreedyMode = GreedyMode()) -> PlacementResult:
    """Admit groups from the narrowest switch set to the widest.

    With ``mode.rollback`` off, slots consumed by a group that fails
    part-way stay consumed, exactly as the classic pseudocode reads.
    """
    name = "greedy-rollback" if mode.rollback else "greedy-faithful"
    return _run(instance, greedy_order(instance), mode.rollback, name)


def random_place(instance: Instance, seed: int) -> PlacementResult:
    """Same admission test as greedy, in a seeded uniformly random order."""
    order = kernels.permutation(seed, len(instance.groups))
    return _run(instance, order, True, "random")


def brute_force_optimum(instance: Instance, limit: int = ORACLE_LIMIT) -> tuple[int, frozenset]:
    """Largest feasible group subset by exhaustive include/exclude search.

    Independent of the admission kernel: works from per-group switch
    demand vectors. Raises :class:`OracleRefused` above ``limit`` groups.
    """
    n = len(instance.groups)
    if n > limit:
        raise OracleRefused(f"oracle refuses {n} groups (limit {limit})")
    attach = instance.topology.attachment()
    cap = instance.topology.capacities
    demands = []
    for g in instance.groups:
        c = Counter(attach[x] for x in g.nodes)
        demands.append({s: k * instance.rule_cost for s, k in c.items()})
    # groups that cannot fit alone never help
    usable = [i for i in range(n) if all(v <= cap[s] for s, v in demands[i].items())]
    load = [0] * len(cap)
    best: list = [0, ()]
    chosen: list[int] = []

    def search(k):
        if len(chosen) + (len(usable) - k) <= best[0]:
            return
        if k == len(usable):
            best[0], best[1] = len(chosen), tuple(chosen)
            return
        i = usable[k]
        d = demands[i]
        if all(load[s] + v <= cap[s] for s, v in d.items()):
            for s, v in d.items():
                load[s] += v
            chosen.append(i)
            search(k + 1)
            chosen.pop()
            for s, v in d.items():
                load[s] -= v
        search(k + 1)

    search(0)
    return best[0], frozenset(instance.groups[i].id for i in best[1])


def format_result(instance: Instance, result: PlacementResult) -> str:
    lines = [f"placed={result.size}/{len(instance.groups)}"]
    for sw, left in zip(instance.topology.switches, result.residual):
        lines.append(f"switch={sw.id} used={sw.capacity - left} capacity={sw.capacity}")
    lines.append("placed_groups=" + ",".join(map(str, sorted(result.placed))))
    lines.append("rejected_groups=" + ",".join(f"{g}@{s}" for g, s in result.rejected))
    return "\n".join(lines) + "\n"
