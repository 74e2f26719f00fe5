"""Rule placement for SDN-isolated MapReduce networks."""

from .kernels import BACKEND
from .placement import (GreedyMode, OracleRefused, PlacementResult, brute_force_optimum,
                        capacity_shortfall, greedy_place, group_cost_on_switch, is_feasible,
                        random_place)
from .topology import CLOUD, NORMAL, NetworkProfile, Topology, build_topology, connected, switch_set
from .workload import (HEAVY, LIGHT, ApplicationGroup, Instance, WorkloadProfile, generate_groups,
                       load_instance, save_instance)

__version__ = "0.1.0"
