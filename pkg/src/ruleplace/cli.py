"""Command-line entry point: ``ruleplace <subcommand> ...``.

Exit codes: 0 success, 1 usage error, 2 infeasible or refused oracle, 3 I/O.
"""

from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path

from . import kernels
from .experiment import ConfigError, emit_plot_data, parse_config, read_csv, run_experiment
from .groups import EventError, SolverConfig, parse_events, replay, solve
from .placement import OracleRefused, format_result
from .rules import CapacityViolation, materialize_tables, render_tables
from .topology import NETWORK_PROFILES, NetworkProfile, TopologyError, build_topology, dump_topology, load_topology
from .workload import WORKLOAD_PROFILES, InstanceError, WorkloadProfile, dump_instance, generate_instance, load_instance

log = logging.getLogger("ruleplace")

EXIT_USAGE, EXIT_REFUSED, EXIT_IO = 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _emit(text, out):
    if out in (None, "-"):
        sys.stdout.write(text)
    else:
        Path(out).write_text(text)


def _network(args) -> NetworkProfile:
    base = NETWORK_PROFILES[args.network]
    return NetworkProfile(
        args.network if not (args.switches or args.nodes_per_switch or args.capacity is not None) else "custom",
        args.switches or base.switch_count,
        args.nodes_per_switch or base.nodes_per_switch,
        base.capacity if args.capacity is None else args.capacity)


def _add_network(p):
    p.add_argument("--network", choices=sorted(NETWORK_PROFILES), default="normal")
    p.add_argument("--switches", type=int)
    p.add_argument("--nodes-per-switch", type=int)
    p.add_argument("--capacity", type=int)


def _add_solver(p):
    p.add_argument("--solver", choices=["greedy", "random", "oracle"], default="greedy")
    g = p.add_mutually_exclusive_group()
    g.add_argument("--rollback", dest="rollback", action="store_true", default=True)
    g.add_argument("--faithful", dest="rollback", action="store_false")
    p.add_argument("--seed", type=int, default=0)


def _solver_config(args, rule_cost=1, on_error="abort"):
    name = args.solver
    if name == "greedy":
        name = "greedy-rollback" if args.rollback else "greedy-faithful"
    return SolverConfig(name, args.seed, rule_cost, on_error)


def cmd_gen_topology(args):
    _emit(dump_topology(build_topology(_network(args))), args.output)


def cmd_gen_instance(args):
    topo = build_topology(_network(args))
    wl = WORKLOAD_PROFILES[args.workload]
    if args.min_nodes or args.max_nodes:
        wl = WorkloadProfile("custom", args.min_nodes or wl.min_nodes, args.max_nodes or wl.max_nodes)
    inst = generate_instance(topo, wl, args.count, args.seed, args.rule_cost)
    _emit(dump_instance(inst), args.output)


def cmd_place(args):
    inst = load_instance(args.instance)
    result = solve(inst, _solver_config(args, inst.rule_cost))
    _emit(format_result(inst, result), args.output)


def cmd_rules(args):
    inst = load_instance(args.instance)
    result = solve(inst, _solver_config(args, inst.rule_cost))
    tables = materialize_tables(inst, result)
    if args.classic:
        text = render_tables(tables, arrow="←", mac_octets=4)
    else:
        text = render_tables(tables)
    _emit(text, args.output)


def cmd_replay(args):
    topo = load_topology(Path(args.topology).read_text())
    events = parse_events(Path(args.events).read_text())
    config = _solver_config(args, args.rule_cost, "skip" if args.skip_errors else "abort")
    lines = []
    for gen, result in replay(events, topo, config):
        lines.append(f"generation={gen} placed={result.size} "
                     f"groups={','.join(map(str, sorted(result.placed)))}")
    _emit("\n".join(lines) + ("\n" if lines else ""), args.output)


def cmd_sweep(args):
    config = parse_config(Path(args.config).read_text())
    if args.jobs:
        config = _replace(config, jobs=args.jobs)
    if args.no_timing:
        config = _replace(config, timing=False)
    log.info("sweep on %s backend", kernels.BACKEND)
    if args.output in (None, "-"):
        run_experiment(config, sys.stdout)
    else:
        with open(args.output, "w", newline="") as fh:
            run_experiment(config, fh)


def _replace(config, **kw):
    from dataclasses import replace
    return replace(config, **kw)


def cmd_plot_data(args):
    rows = read_csv(Path(args.csv).read_text())
    for path in emit_plot_data(rows, args.output):
        print(path)


def build_parser():
    p = _Parser(prog="ruleplace", description=__doc__.splitlines()[0])
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("gen-topology", help="write a leaf-switch topology")
    _add_network(s)
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_gen_topology)

    s = sub.add_parser("gen-instance", help="write a seeded placement instance")
    _add_network(s)
    s.add_argument("--workload", choices=sorted(WORKLOAD_PROFILES), default="light")
    s.add_argument("--min-nodes", type=int)
    s.add_argument("--max-nodes", type=int)
    s.add_argument("--count", type=int, default=5000)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--rule-cost", type=int, default=1)
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_gen_instance)

    s = sub.add_parser("place", help="solve an instance file")
    s.add_argument("instance")
    _add_solver(s)
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_place)

    s = sub.add_parser("rules", help="emit per-switch rule tables for a placement")
    s.add_argument("instance")
    _add_solver(s)
    s.add_argument("--classic", action="store_true",
                   help="arrow glyph and 4-octet MACs, as in the classic example table")
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_rules)

    s = sub.add_parser("replay", help="replay a group event log")
    s.add_argument("topology")
    s.add_argument("events")
    _add_solver(s)
    s.add_argument("--rule-cost", type=int, default=1)
    s.add_argument("--skip-errors", action="store_true")
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_replay)

    s = sub.add_parser("sweep", help="run a capacity sweep from a config file")
    s.add_argument("config")
    s.add_argument("-o", "--output")
    s.add_argument("--jobs", type=int)
    s.add_argument("--no-timing", action="store_true", help="write wall_ms as 0 for byte-stable output")
    s.set_defaults(func=cmd_sweep)

    s = sub.add_parser("plot-data", help="average a sweep CSV into per-series data files")
    s.add_argument("csv")
    s.add_argument("-o", "--output", default=".")
    s.set_defaults(func=cmd_plot_data)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(message)s")
    try:
        args.func(args)
    except (OracleRefused, CapacityViolation) as exc:
        print(f"ruleplace: {exc}", file=sys.stderr)
        return EXIT_REFUSED
    except OSError as exc:
        print(f"ruleplace: {exc}", file=sys.stderr)
        return EXIT_IO
    except (ConfigError, EventError, InstanceError, TopologyError, ValueError) as exc:
        print(f"ruleplace: {exc}", file=sys.stderr)
        return EXIT_USAGE
    return 0


if __name__ == "__main__":
    sys.exit(main())
