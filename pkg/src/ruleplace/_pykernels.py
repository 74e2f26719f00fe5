"""Pure-Python kernels. Must stay output-identical to ``_ckernels.pyx``."""

from array import array

MASK64 = 0xFFFFFFFFFFFFFFFF


def splitmix64(state):
    """Return ``(next_state, output)`` of one splitmix64 step."""
    state = (state + 0x9E3779B97F4A7C15) & MASK64
    z = state
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
    return state, z ^ (z >> 31)


class Xoshiro256:
    """xoshiro256** seeded from a 64-bit integer through splitmix64."""

    __slots__ = ("s0", "s1", "s2", "s3")

    def __init__(self, seed):
        sm = seed & MASK64
        words = []
        for _ in range(4):
            sm, out = splitmix64(sm)
            words.append(out)
        self.s0, self.s1, self.s2, self.s3 = words

    def next_u64(self):
        s0, s1, s2, s3 = self.s0, self.s1, self.s2, self.s3
        x = (s1 * 5) & MASK64
        result = (((x << 7) | (x >> 57)) & MASK64) * 9 & MASK64
        t = (s1 << 17) & MASK64
        s2 ^= s0
        s3 ^= s1
        s1 ^= s2
        s0 ^= s3
        s2 ^= t
        s3 = ((s3 << 45) | (s3 >> 19)) & MASK64
        self.s0, self.s1, self.s2, self.s3 = s0, s1, s2, s3
        return result

    def below(self, bound):
        """Uniform integer in ``[0, bound)``; rejects the biased low tail."""
        if bound <= 0:
            raise ValueError("bound must be positive")
        threshold = (MASK64 + 1 - bound) % bound
        while True:
            r = self.next_u64()
            if r >= threshold:
                return r % bound


def sample_groups(seed, node_count, min_nodes, max_nodes, count):
    """Draw ``count`` node sets; returns ``(offsets, members)`` arrays.

    Group ``k`` is ``members[offsets[k]:offsets[k + 1]]``, sorted ascending.
    Size is uniform on ``[min_nodes, max_nodes]``, members are drawn
    without replacement with Floyd's algorithm.
    """
    rng = Xoshiro256(seed)
    offsets = array("q", [0])
    members = array("q")
    span = max_nodes - min_nodes + 1
    for _ in range(count):
        k = min_nodes + rng.below(span)
        chosen = set()
        for j in range(node_count - k, node_count):
            t = rng.below(j + 1)
            if t in chosen:
                chosen.add(j)
            else:
                chosen.add(t)
        members.extend(sorted(chosen))
        offsets.append(len(members))
    return offsets, members


def permutation(seed, n):
    """Fisher-Yates shuffle of ``range(n)``."""
    rng = Xoshiro256(seed)
    perm = list(range(n))
    for i in range(n - 1, 0, -1):
        j = rng.below(i + 1)
        perm[i], perm[j] = perm[j], perm[i]
    return perm


def admit(order, offsets, node_switch, capacity, rule_cost, rollback):
    """Run the per-node admission loop over groups in ``order``.

    ``node_switch[offsets[g]:offsets[g + 1]]`` lists the attached switch of
    every node of group ``g``. Returns ``(placed, residual, fail_switch)``
    where ``fail_switch[g]`` is -1 for placed groups.
    """
    residual = list(capacity)
    n = len(offsets) - 1
    placed = bytearray(n)
    fail_switch = [-1] * n
    for g in order:
        start, stop = offsets[g], offsets[g + 1]
        pos = start
        while pos < stop:
            sw = node_switch[pos]
            if residual[sw] >= rule_cost:
                residual[sw] -= rule_cost
            else:
                break
            pos += 1
        if pos == stop:
            placed[g] = 1
        else:
            fail_switch[g] = node_switch[pos]
            if rollback:
                for q in range(start, pos):
                    residual[node_switch[q]] += rule_cost
    return placed, residual, fail_switch
