"""Deterministic, portable pseudo-random source.

xoshiro256** seeded through splitmix64, with bounded draws done by
Lemire-style rejection and shuffles by descending-index Fisher-Yates.
Every algorithm here is pinned bit-for-bit so that simulations, shuffles,
and samples reproduce exactly across machines and implementations.
"""

from __future__ import annotations

MASK64 = (1 << 64) - 1

# splitmix64 increment and output-mixing constants (Steele, Lea & Flood).
_SM_GAMMA = 0x9E3779B97F4A7C15
_SM_MIX1 = 0xBF58476D1CE4E5B9
_SM_MIX2 = 0x94D049BB133111EB


def _rotl(x: int, k: int) -> int:
    return ((x << k) | (x >> (64 - k))) & MASK64


def splitmix64(state: int) -> tuple[int, int]:
    """Advance a splitmix64 state once; return ``(new_state, output)``."""
    state = (state + _SM_GAMMA) & MASK64
    z = state
    z = ((z ^ (z >> 30)) * _SM_MIX1) & MASK64
    z = ((z ^ (z >> 27)) * _SM_MIX2) & MASK64
    return state, z ^ (z >> 31)


def mix_seed(base: int, *indices: int) -> int:
    """Derive an independent 64-bit seed from a base seed plus integer indices.

    The mixing is pinned: one splitmix64 output of ``base``, then for each
    index ``k`` (in order) one splitmix64 output of ``previous ^ k``.
    Ensemble runs use this so that per-run seeds depend only on
    (base seed, setting index, replicate index), never on scheduling order.
    """
    _, x = splitmix64(base & MASK64)
    for k in indices:
        _, x = splitmix64(x ^ (k & MASK64))
    return x


class Rng:
    """xoshiro256** generator with a fully pinned draw protocol.

    State is four 64-bit words, never all zero.  One instance belongs to
    one model; parallel workers each seed their own.
    """

    __slots__ = ("s0", "s1", "s2", "s3")

    def __init__(self, seed: int = 0):
        sm = seed & MASK64
        sm, self.s0 = splitmix64(sm)
        sm, self.s1 = splitmix64(sm)
        sm, self.s2 = splitmix64(sm)
        sm, self.s3 = splitmix64(sm)
        if self.s0 == self.s1 == self.s2 == self.s3 == 0:  # pragma: no cover
            self.s0 = 1

    @classmethod
    def from_words(cls, words) -> "Rng":
        """Restore a generator from four serialized state words."""
        w = [int(x) & MASK64 for x in words]
        if len(w) != 4:
            raise ValueError(f"expected 4 state words, got {len(w)}")
        if w == [0, 0, 0, 0]:
            raise ValueError("all-zero rng state is invalid")
        rng = cls.__new__(cls)
        rng.s0, rng.s1, rng.s2, rng.s3 = w
        return rng

    def state_words(self) -> tuple[int, int, int, int]:
        """Current state as four unsigned 64-bit integers (checkpoint form)."""
        return (self.s0, self.s1, self.s2, self.s3)

    def next_u64(self) -> int:
        """Next raw 64-bit draw (xoshiro256** output function)."""
        s0, s1, s2, s3 = self.s0, self.s1, self.s2, self.s3
        result = (_rotl((s1 * 5) & MASK64, 7) * 9) & MASK64
        t = (s1 << 17) & MASK64
        s2 ^= s0
        s3 ^= s1
        s1 ^= s2
        s0 ^= s3
        s2 ^= t
        s3 = _rotl(s3, 45)
        self.s0, self.s1, self.s2, self.s3 = s0, s1, s2, s3
        return result

    def next_float(self) -> float:
        """Uniform float in [0, 1) built from the top 53 bits of one draw."""
        return (self.next_u64() >> 11) * (1.0 / (1 << 53))

    def next_below(self, n: int) -> int:
        """Unbiased uniform integer in [0, n) by Lemire multiply-rejection.

        Protocol (pinned): draw x, form the 128-bit product m = x*n; let
        l = m mod 2^64.  If l < n, compute t = (2^64 - n) mod n and redraw
        while l < t.  The result is m >> 64.
        """
        if n < 1:
            raise ValueError(f"next_below requires n >= 1, got {n}")
        m = self.next_u64() * n
        low = m & MASK64
        if low < n:
            threshold = ((1 << 64) - n) % n
            while low < threshold:
                m = self.next_u64() * n
                low = m & MASK64
        return m >> 64

    def bernoulli(self, p: float) -> bool:
        """True with probability p (one next_float draw)."""
        return self.next_float() < p

    def shuffle(self, seq: list) -> list:
        """In-place Fisher-Yates shuffle, descending index, via next_below."""
        for i in range(len(seq) - 1, 0, -1):
            j = self.next_below(i + 1)
            seq[i], seq[j] = seq[j], seq[i]
        return seq

    def choice(self, seq):
        """Uniform element of a non-empty sequence."""
        return seq[self.next_below(len(seq))]

    def __repr__(self):
        return f"Rng(state={self.state_words()})"


def seed_rng(seed: int) -> Rng:
    """Build a generator whose state is four splitmix64 outputs of ``seed``."""
    return Rng(seed)
