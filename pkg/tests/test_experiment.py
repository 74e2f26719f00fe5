import io
from statistics import fmean

import pytest
from hypothesis import given, settings, strategies as st

from ruleplace.experiment import (CSV_HEADER, ConfigError, ExperimentConfig, SweepRow, emit_plot_data,
                                  parse_config, read_csv, rows_to_csv, run_experiment)
from ruleplace.placement import OracleRefused
from ruleplace.topology import NetworkProfile
from ruleplace.workload import WorkloadProfile

TINY_NET = NetworkProfile("custom", 4, 5, 10)
TINY_WL = WorkloadProfile("custom", 1, 4)


def tiny(**kw):
    base = dict(network=TINY_NET, workload=TINY_WL, capacities=(3,), seeds=(0,),
                solvers=("greedy-rollback", "random"), offered=12, timing=False)
    base.update(kw)
    return ExperimentConfig(**base)


def test_row_cardinality():
    rows = run_experiment(tiny())
    assert len(rows) == 2
    assert {r.solver for r in rows} == {"greedy-rollback", "random"}
    assert all(r.supported <= r.offered for r in rows)


def test_rows_per_capacity_seed_solver():
    rows = run_experiment(tiny(capacities=(2, 4, 6), seeds=(1, 2), solvers=("greedy-faithful", "greedy-rollback", "random")))
    assert len(rows) == 18
    assert rows == sorted(rows, key=SweepRow.key)


def test_oracle_refused_before_run():
    with pytest.raises(OracleRefused):
        run_experiment(tiny(solvers=("oracle",), offered=21))
    rows = run_experiment(tiny(solvers=("oracle", "greedy-rollback"), offered=10, seeds=(0, 1, 2)))
    by = {(r.seed, r.solver): r.supported for r in rows}
    assert all(by[(s, "greedy-rollback")] <= by[(s, "oracle")] for s in (0, 1, 2))


def test_invalid_configs():
    with pytest.raises(ConfigError):
        run_experiment(tiny(seeds=()))
    with pytest.raises(ConfigError):
        run_experiment(tiny(solvers=("magic",)))
    with pytest.raises(ConfigError):
        run_experiment(tiny(workload=WorkloadProfile("w", 1, 500)))


def test_csv_header_and_streaming():
    buf = io.StringIO()
    rows = run_experiment(tiny(), buf)
    lines = buf.getvalue().splitlines()
    assert lines[0] == ",".join(CSV_HEADER)
    assert len(lines) == 1 + len(rows)
    assert read_csv(buf.getvalue()) == rows


def test_parallel_matches_serial():
    cfg = tiny(capacities=(2, 5), seeds=(0, 1, 2, 3))
    assert rows_to_csv(run_experiment(cfg)) == rows_to_csv(run_experiment(tiny(capacities=(2, 5), seeds=(0, 1, 2, 3), jobs=2)))


def test_plot_data_shape(tmp_path):
    rows = run_experiment(tiny(capacities=(2, 4, 6), seeds=(0, 1, 2, 3, 4)))
    (path,) = emit_plot_data(rows, tmp_path)
    lines = path.read_text().splitlines()
    assert lines[0] == "# capacity greedy-rollback random"
    data = [ln.split() for ln in lines[1:]]
    assert len(data) == 3 and all(len(d) == 3 for d in data)
    for d in data:
        c = int(d[0])
        for col, solver in ((1, "greedy-rollback"), (2, "random")):
            vals = [r.supported for r in rows if r.capacity == c and r.solver == solver]
            assert len(vals) == 5
            assert float(d[col]) == pytest.approx(sum(vals) / 5, abs=1e-12)


def test_plot_data_single_row(tmp_path):
    row = SweepRow("normal", "light", 1000, 1, 0, "random", 10, 7)
    (path,) = emit_plot_data([row], tmp_path)
    assert path.name == "normal_light.dat"
    assert path.read_text().splitlines()[1] == "1000 7.0"
    with pytest.raises(ValueError):
        emit_plot_data([], tmp_path)


def test_parse_config():
    cfg = parse_config("""
[experiment]
network = custom
workload = custom
capacities = 200, 400
seeds = 0-3, 9
solvers = greedy-rollback, random
offered = 50
timing = false

[network]
switches = 3
nodes_per_switch = 4

[workload]
min_nodes = 2
max_nodes = 5
""")
    assert cfg.seeds == (0, 1, 2, 3, 9)
    assert cfg.capacities == (200, 400)
    assert cfg.network.node_count == 12
    assert cfg.workload.max_nodes == 5
    assert not cfg.timing
    named = parse_config("[experiment]\nnetwork = cloud\nworkload = heavy\n")
    assert named.network.nodes_per_switch == 400 and named.workload.min_nodes == 100
    with pytest.raises(ConfigError):
        parse_config("[experiment]\nnetwork = mars\n")
    with pytest.raises(ConfigError):
        parse_config("no section here")


@settings(max_examples=200, deadline=None)
@given(seed=st.integers(0, 10**6), offered=st.integers(0, 30), cap=st.integers(0, 12))
def test_csv_deterministic(seed, offered, cap):
    cfg = tiny(seeds=(seed, seed + 1), offered=offered, capacities=(cap, cap + 3))
    a, b = io.StringIO(), io.StringIO()
    run_experiment(cfg, a)
    run_experiment(cfg, b)
    assert a.getvalue() == b.getvalue()
    rows = read_csv(a.getvalue())
    greedy = [r.supported for r in rows if r.solver == "greedy-rollback"]
    assert fmean(greedy) >= 0
