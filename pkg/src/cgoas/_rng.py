"""Deterministic random streams shared by Python code and compiled kernels.

Each agent (and the interactive center) owns an independent stream derived
from a single master seed plus a small stream id, so runs are reproducible
regardless of how work is interleaved.  The generator is xoshiro256++ with
splitmix64 state expansion; both are tiny, fast, and portable, and the
njit-compiled step functions can be called from inside other compiled
kernels as well as from Python.
"""

import numpy as np
from numba import njit

_U64_MAX = np.uint64(0xFFFFFFFFFFFFFFFF)
_SM64_GAMMA = np.uint64(0x9E3779B97F4A7C15)
_SM64_MIX1 = np.uint64(0xBF58476D1CE4E5B9)
_SM64_MIX2 = np.uint64(0x94D049BB133111EB)
_DOUBLE_SCALE = 1.0 / 9007199254740992.0  # 2**-53


@njit(cache=True)
def _splitmix64(x):
    """One splitmix64 step: returns (advanced state, output)."""
    x = x + _SM64_GAMMA
    z = x
    z = (z ^ (z >> np.uint64(30))) * _SM64_MIX1
    z = (z ^ (z >> np.uint64(27))) * _SM64_MIX2
    z = z ^ (z >> np.uint64(31))
    return x, z


@njit(cache=True)
def seed_state(master, stream_id):
    """Expand (master seed, stream id) into a 4-word xoshiro256++ state."""
    _, scrambled = _splitmix64(stream_id)
    x = master ^ scrambled
    s = np.empty(4, np.uint64)
    for i in range(4):
        x, z = _splitmix64(x)
        s[i] = z
    if s[0] == 0 and s[1] == 0 and s[2] == 0 and s[3] == 0:
        s[0] = np.uint64(1)
    return s


@njit(cache=True)
def _rotl(x, k):
    return (x << k) | (x >> (np.uint64(64) - k))


@njit(cache=True)
def next_u64(s):
    """xoshiro256++ step; mutates the state array in place."""
    result = _rotl(s[0] + s[3], np.uint64(23)) + s[0]
    t = s[1] << np.uint64(17)
    s[2] ^= s[0]
    s[3] ^= s[1]
    s[1] ^= s[2]
    s[0] ^= s[3]
    s[2] ^= t
    s[3] = _rotl(s[3], np.uint64(45))
    return result


@njit(cache=True)
def next_double(s):
    """Uniform double in [0, 1) with 53 random bits."""
    return (next_u64(s) >> np.uint64(11)) * _DOUBLE_SCALE


@njit(cache=True)
def next_below(s, n):
    """Uniform integer in [0, n)."""
    r = int(next_double(s) * n)
    if r >= n:
        r = n - 1
    return r


@njit(cache=True)
def next_gauss(s):
    """Standard normal deviate (Box-Muller, cosine branch)."""
    u1 = 1.0 - next_double(s)  # (0, 1], keeps log() finite
    u2 = next_double(s)
    return np.sqrt(-2.0 * np.log(u1)) * np.cos(2.0 * np.pi * u2)


@njit(cache=True)
def random_permutation(n, s):
    """Fisher-Yates shuffle of 0..n-1 driven by the stream."""
    perm = np.empty(n, np.int32)
    for i in range(n):
        perm[i] = i
    for i in range(n - 1, 0, -1):
        j = next_below(s, i + 1)
        tmp = perm[i]
        perm[i] = perm[j]
        perm[j] = tmp
    return perm


class RandomStream:
    """Thin Python handle over a mutable xoshiro256++ state array.

    The ``state`` array is what compiled kernels consume directly; drawing
    from the Python side and from kernels advances the same sequence.
    """

    def __init__(self, master_seed: int, stream_id: int = 0):
        self.master_seed = int(master_seed)
        self.stream_id = int(stream_id)
        self.state = seed_state(
            np.uint64(master_seed & 0xFFFFFFFFFFFFFFFF),
            np.uint64(stream_id & 0xFFFFFFFFFFFFFFFF),
        )

    def random(self) -> float:
        return float(next_double(self.state))

    def randint(self, n: int) -> int:
        """Uniform integer in [0, n)."""
        if n <= 0:
            raise ValueError("n must be positive")
        return int(next_below(self.state, n))

    def gauss(self) -> float:
        return float(next_gauss(self.state))

    def permutation(self, n: int) -> np.ndarray:
        return random_permutation(n, self.state)

    def spawn(self, stream_id: int) -> "RandomStream":
        """Derive a sibling stream from the same master seed."""
        return RandomStream(self.master_seed, stream_id)


def derive_seed(*parts: int) -> int:
    """Fold integers (master seed, indices, ...) into one 64-bit seed."""
    x = np.uint64(0x9E3779B97F4A7C15)
    for p in parts:
        mixed = np.uint64((int(x) ^ (int(p) & 0xFFFFFFFFFFFFFFFF)) & 0xFFFFFFFFFFFFFFFF)
        _, z = _splitmix64(mixed)
        x = np.uint64(int(z) & 0xFFFFFFFFFFFFFFFF)
    _, z = _splitmix64(x)
    return int(z)
