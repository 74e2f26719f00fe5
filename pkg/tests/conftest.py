import random

import pytest

from ruleplace.topology import topology_from_attachment
from ruleplace.workload import ApplicationGroup, Instance

ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


def make_instance(attachment, capacity, groups, rule_cost=1, switch_count=None):
    topo = topology_from_attachment(attachment, capacity, switch_count)
    return Instance(topo, tuple(ApplicationGroup(i, tuple(g)) for i, g in enumerate(groups)), rule_cost)


@pytest.fixture
def fig5():
    # n1,n2 on s1 and n3,n4 on s2, with ids shifted to 0-based
    return make_instance([0, 0, 1, 1], 10, [[0, 1, 2], [2, 3]])


@pytest.fixture
def contended():
    # s1,s2 with C=2; n1..n3 on s1, n4,n5 on s2
    # G1={n1,n2,n3}, G2={n1}, G3={n4,n5}, G4={n2,n3}
    return make_instance([0, 0, 0, 1, 1], 2, [[0, 1, 2], [0], [3, 4], [1, 2]])


def random_small_instance(rng: random.Random, max_groups=12, max_switches=6, max_cap=10,
                          rule_cost=None):
    n_sw = rng.randint(1, max_switches)
    attachment = []
    for sw in range(n_sw):
        attachment += [sw] * rng.randint(1, 5)
    rng.shuffle(attachment)
    n_groups = rng.randint(0, max_groups)
    groups = [rng.sample(range(len(attachment)), rng.randint(1, min(6, len(attachment))))
              for _ in range(n_groups)]
    r = rule_cost if rule_cost is not None else rng.choice([1, 1, 1, 2])
    return make_instance(attachment, rng.randint(0, max_cap), groups, r, n_sw)
