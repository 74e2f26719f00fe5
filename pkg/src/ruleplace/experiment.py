"""Capacity sweeps comparing solvers over seeded instances."""

from __future__ import annotations

import configparser
import csv
import io
import time
from collections import defaultdict
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from statistics import fmean

from ._pykernels import splitmix64
from .groups import SolverConfig, solve
from .placement import ORACLE_LIMIT, OracleRefused
from .topology import NETWORK_PROFILES, NetworkProfile, build_topology
from .workload import WORKLOAD_PROFILES, WorkloadProfile, generate_instance

SOLVERS = ("greedy-faithful", "greedy-rollback", "oracle", "random")
CSV_HEADER = ["profile", "workload", "capacity", "rule_cost", "seed", "solver",
              "offered", "supported", "wall_ms"]


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class ExperimentConfig:
    network: NetworkProfile
    workload: WorkloadProfile
    capacities: tuple
    seeds: tuple
    solvers: tuple = ("greedy-rollback", "random")
    rule_cost: int = 1
    offered: int = 5000
    timing: bool = True
    jobs: int = 1

    def validate(self):
        if not self.capacities or not self.seeds:
            raise ConfigError("capacity sweep and seed list must be non-empty")
        if any(c < 0 for c in self.capacities):
            raise ConfigError("capacities must be non-negative")
        if self.rule_cost < 1 or self.offered < 0:
            raise ConfigError("rule_cost must be >= 1 and offered >= 0")
        for s in self.solvers:
            if s not in SOLVERS:
                raise ConfigError(f"unknown solver {s!r}")
        if "oracle" in self.solvers and self.offered > ORACLE_LIMIT:
            raise OracleRefused(f"oracle refuses {self.offered} offered groups (limit {ORACLE_LIMIT})")
        if self.workload.max_nodes > self.network.node_count or self.workload.min_nodes < 1 \
                or self.workload.min_nodes > self.workload.max_nodes:
            raise ConfigError(f"workload bounds {self.workload.min_nodes}..{self.workload.max_nodes} "
                              f"invalid for {self.network.node_count} nodes")


@dataclass(frozen=True)
class SweepRow:
    profile: str
    workload: str
    capacity: int
    rule_cost: int
    seed: int
    solver: str
    offered: int
    supported: int
    wall_ms: float = field(default=0.0, compare=False)

    def key(self):
        return (self.profile, self.workload, self.capacity, self.seed, self.solver)

    def as_csv(self):
        return [self.profile, self.workload, self.capacity, self.rule_cost, self.seed,
                self.solver, self.offered, self.supported, f"{self.wall_ms:.3f}"]


def order_seed(seed: int) -> int:
    """Seed for the random admission order, decorrelated from generation."""
    return splitmix64(seed ^ 0x5EED)[1]


def _seed_rows(config: ExperimentConfig, seed: int) -> list[SweepRow]:
    topo = build_topology(config.network)
    base = generate_instance(topo, config.workload, config.offered, seed, config.rule_cost)
    rows = []
    for cap in sorted(config.capacities):
        inst = base.with_capacity(cap)
        for solver in sorted(config.solvers):
            t0 = time.perf_counter()
            result = solve(inst, SolverConfig(solver, order_seed(seed), config.rule_cost))
            ms = (time.perf_counter() - t0) * 1000.0 if config.timing else 0.0
            rows.append(SweepRow(config.network.name, config.workload.name, cap, config.rule_cost,
                                 seed, solver, config.offered, result.size, ms))
    return rows


def run_experiment(config: ExperimentConfig, sink=None) -> list[SweepRow]:
    """One row per (capacity, seed, solver), in canonical order.

    ``sink`` (a CSV writer target) receives the header and every row.
    """
    config.validate()
    seeds = sorted(config.seeds)
    if config.jobs > 1:
        with ProcessPoolExecutor(config.jobs) as pool:
            per_seed = list(pool.map(_seed_rows, [config] * len(seeds), seeds))
    else:
        per_seed = [_seed_rows(config, s) for s in seeds]
    rows = sorted((r for rs in per_seed for r in rs), key=SweepRow.key)
    if sink is not None:
        write_csv(rows, sink)
    return rows


def write_csv(rows, sink) -> None:
    w = csv.writer(sink, lineterminator="\n")
    w.writerow(CSV_HEADER)
    for r in rows:
        w.writerow(r.as_csv())


def rows_to_csv(rows) -> str:
    buf = io.StringIO()
    write_csv(rows, buf)
    return buf.getvalue()


def read_csv(text: str) -> list[SweepRow]:
    out = []
    for rec in csv.DictReader(io.StringIO(text)):
        out.append(SweepRow(rec["profile"], rec["workload"], int(rec["capacity"]),
                            int(rec["rule_cost"]), int(rec["seed"]), rec["solver"],
                            int(rec["offered"]), int(rec["supported"]), float(rec["wall_ms"])))
    return out


def mean_supported(rows) -> dict:
    """``{(profile, workload): {capacity: {solver: mean}}}`` over seeds."""
    acc = defaultdict(lambda: defaultdict(lambda: defaultdict(list)))
    for r in rows:
        acc[(r.profile, r.workload)][r.capacity][r.solver].append(r.supported)
    return {pw: {c: {s: fmean(v) for s, v in by_s.items()} for c, by_s in by_c.items()}
            for pw, by_c in acc.items()}


def emit_plot_data(rows, path) -> list[Path]:
    """Write one ``<profile>_<workload>.dat`` file per series into ``path``."""
    rows = list(rows)
    if not rows:
        raise ValueError("no rows to plot")
    outdir = Path(path)
    outdir.mkdir(parents=True, exist_ok=True)
    written = []
    for (profile, workload), by_c in sorted(mean_supported(rows).items()):
        solvers = sorted({s for by_s in by_c.values() for s in by_s})
        lines = ["# capacity " + " ".join(solvers)]
        for c in sorted(by_c):
            vals = " ".join(_num(by_c[c].get(s, float("nan"))) for s in solvers)
            lines.append(f"{c} {vals}")
        target = outdir / f"{profile}_{workload}.dat"
        target.write_text("\n".join(lines) + "\n")
        written.append(target)
    return written


def _num(x):
    return repr(float(x))


# --- config file -----------------------------------------------------------

def _int_list(text):
    out = []
    for part in text.replace(",", " ").split():
        lo, sep, hi = part.partition("-")
        if sep:
            out.extend(range(int(lo), int(hi) + 1))
        else:
            out.append(int(part))
    return tuple(out)


def parse_config(text: str) -> ExperimentConfig:
    cp = configparser.ConfigParser()
    try:
        cp.read_string(text)
    except configparser.Error as exc:
        raise ConfigError(str(exc)) from None
    if not cp.has_section("experiment"):
        raise ConfigError("missing [experiment] section")
    ex = cp["experiment"]
    try:
        net_name = ex.get("network", "normal")
        if net_name == "custom":
            sec = cp["network"]
            network = NetworkProfile("custom", sec.getint("switches"), sec.getint("nodes_per_switch"),
                                     sec.getint("capacity", 1000))
        else:
            network = NETWORK_PROFILES[net_name]
        wl_name = ex.get("workload", "light")
        if wl_name == "custom":
            sec = cp["workload"]
            workload = WorkloadProfile("custom", sec.getint("min_nodes"), sec.getint("max_nodes"))
        else:
            workload = WORKLOAD_PROFILES[wl_name]
        config = ExperimentConfig(
            network=network,
            workload=workload,
            capacities=_int_list(ex.get("capacities", "1000")),
            seeds=_int_list(ex.get("seeds", "0")),
            solvers=tuple(s.strip() for s in ex.get("solvers", "greedy-rollback, random").split(",")
                          if s.strip()),
            rule_cost=ex.getint("rule_cost", 1),
            offered=ex.getint("offered", 5000),
            timing=ex.getboolean("timing", True),
            jobs=ex.getint("jobs", 1),
        )
    except KeyError as exc:
        raise ConfigError(f"unknown or missing profile/section {exc}") from None
    except (TypeError, ValueError) as exc:
        raise ConfigError(str(exc)) from None
    config.validate()
    return config
