"""Compare the compiled and pure-Python kernels on full-size sweep workloads.

    python bench/bench_kernels.py [--repeat 3]
"""

import argparse
import time

from ruleplace import _pykernels
from ruleplace.placement import greedy_order
from ruleplace.topology import CLOUD, NORMAL, build_topology
from ruleplace.workload import HEAVY, LIGHT, generate_instance

try:
    from ruleplace import _ckernels
except ImportError:
    _ckernels = None


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        times.append(time.perf_counter() - t0)
    return min(times), out


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--offered", type=int, default=5000)
    args = ap.parse_args()
    backends = [("python", _pykernels)] + ([("cython", _ckernels)] if _ckernels else [])
    if _ckernels is None:
        print("compiled kernels not built; timing the Python backend only")

    print(f"{'workload':<16}{'kernel':<15}" + "".join(f"{n:>12}" for n, _ in backends) + f"{'speedup':>10}")
    for net in (NORMAL, CLOUD):
        topo = build_topology(net)
        for wl in (LIGHT, HEAVY):
            inst = generate_instance(topo, wl, args.offered, 0)
            offsets, node_switch = inst.flat()
            order = greedy_order(inst)
            cases = {
                "sample_groups": lambda k: k.sample_groups(0, topo.node_count, wl.min_nodes,
                                                           wl.max_nodes, args.offered),
                "admit": lambda k: k.admit(order, offsets, node_switch, topo.capacities, 1, True),
                "permutation": lambda k: k.permutation(0, args.offered),
            }
            for name, fn in cases.items():
                results = [best_of(lambda k=k: fn(k), args.repeat) for _, k in backends]
                outs = [r[1] for r in results]
                same = all(_norm(o) == _norm(outs[0]) for o in outs)
                cols = "".join(f"{t * 1000:>10.1f}ms" for t, _ in results)
                speed = f"{results[0][0] / results[-1][0]:>9.1f}x" if len(results) > 1 else ""
                flag = "" if same else "  MISMATCH"
                print(f"{net.name + '/' + wl.name:<16}{name:<15}{cols}{speed}{flag}")


def _norm(out):
    if isinstance(out, tuple):
        return tuple(bytes(x) if isinstance(x, bytearray) else list(x) for x in out)
    return out


if __name__ == "__main__":
    main()
