"""Independent reference implementations used as test oracles.

Everything here is written against the published algorithm definitions, not
against the package code, and stays that way: tests compare package output
to these oracles rather than to itself.
"""

from __future__ import annotations

import math

M64 = 0xFFFFFFFFFFFFFFFF


def oracle_splitmix64_stream(seed, n):
    """First n splitmix64 outputs for a seed."""
    out = []
    x = seed & M64
    for _ in range(n):
        x = (x + 0x9E3779B97F4A7C15) & M64
        z = x
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & M64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & M64
        out.append(z ^ (z >> 31))
    return out


class OracleXoshiro:
    """Reference xoshiro256** with splitmix64 seeding."""

    def __init__(self, seed):
        self.s = oracle_splitmix64_stream(seed, 4)

    def u64(self):
        s0, s1, s2, s3 = self.s
        x = (s1 * 5) & M64
        result = ((((x << 7) | (x >> 57)) & M64) * 9) & M64
        t = (s1 << 17) & M64
        s2 ^= s0
        s3 ^= s1
        s1 ^= s2
        s0 ^= s3
        s2 ^= t
        s3 = ((s3 << 45) | (s3 >> 19)) & M64
        self.s = [s0, s1, s2, s3]
        return result

    def float01(self):
        return (self.u64() >> 11) / 9007199254740992.0  # 2**53

    def below(self, n):
        m = self.u64() * n
        low = m & M64
        if low < n:
            threshold = ((1 << 64) - n) % n
            while low < threshold:
                m = self.u64() * n
                low = m & M64
        return m >> 64

    def shuffle(self, seq):
        for i in range(len(seq) - 1, 0, -1):
            j = self.below(i + 1)
            seq[i], seq[j] = seq[j], seq[i]
        return seq


def brute_force_neighbors(positions, query, r, extent=None):
    """All ids within euclidean r of query by exhaustive scan.

    ``positions`` maps id -> coordinate tuple; ``extent`` enables torus
    distances.
    """
    r2 = r * r
    hits = set()
    for aid, pos in positions.items():
        s = 0.0
        for a, b, i in zip(query, pos, range(len(query))):
            d = abs(a - b)
            if extent is not None:
                d = min(d, extent[i] - d)
            s += d * d
        if s <= r2:
            hits.add(aid)
    return hits


def grid_metric_within(a, b, r, dims, periodic, metric):
    """Whether two grid cells lie within distance r under a grid metric."""
    deltas = []
    for x, y, d in zip(a, b, dims):
        delta = abs(x - y)
        if periodic:
            delta = min(delta, d - delta)
        deltas.append(delta)
    if metric == "euclidean":
        return sum(d * d for d in deltas) <= r * r
    return max(deltas) <= r


def logistic_closed_form(t, s0, k):
    """Logistic growth s' = s (1 - s/k) from s0."""
    return k / (1.0 + (k / s0 - 1.0) * math.exp(-t))


def burnt_tree_fraction_oracle(green, seed_column=0):
    """Fraction of trees 4-connected to the ignition column (cluster labels)."""
    import numpy as np
    from scipy import ndimage

    structure = np.array([[0, 1, 0], [1, 1, 1], [0, 1, 0]])
    labels, _ = ndimage.label(green, structure=structure)
    ignited = np.unique(labels[seed_column, :])
    ignited = ignited[ignited != 0]
    trees = int(green.sum())
    if trees == 0:
        return 0.0
    return float(np.isin(labels, ignited).sum()) / trees
