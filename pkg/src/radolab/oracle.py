"""The ambient random graph on ℕ: a seeded PRF over canonicalized vertex pairs.

The edge recipe is normative so that runs, fixtures, and independent
implementations agree bit for bit: with a = min(u,v), b = max(u,v),

    h = mix64(seed XOR mix64((a * GOLDEN) XOR rotl(b, 32)))

where ``mix64`` is the SplitMix64 finalizer and GOLDEN is the odd 64-bit
golden-ratio constant.  The edge is present iff the top 53 bits of h,
read as a dyadic fraction in [0,1), fall below the edge probability.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Sequence

import numpy as np

from .graphs import FiniteGraph
from .sets import VertexSet

MASK64 = (1 << 64) - 1
GOLDEN = 0x9E3779B97F4A7C15
_MIX_MUL_1 = 0xBF58476D1CE4E5B9
_MIX_MUL_2 = 0x94D049BB133111EB

# Stream tags keep the auxiliary counter-based bit streams (Monte Carlo
# trial graphs, mu_p sampling, sampled verification) disjoint from each
# other and from the ambient edge PRF.
TAG_TRIAL_GRAPHS = 1 << 40
TAG_MU_P = 2 << 40
TAG_VERIFY = 3 << 40


def mix64(z: int) -> int:
    """SplitMix64 finalizer: xor-shift/multiply avalanche of a 64-bit word."""
    z &= MASK64
    z = ((z ^ (z >> 30)) * _MIX_MUL_1) & MASK64
    z = ((z ^ (z >> 27)) * _MIX_MUL_2) & MASK64
    return z ^ (z >> 31)


def rotl64(x: int, k: int) -> int:
    x &= MASK64
    return ((x << k) | (x >> (64 - k))) & MASK64


def _mix64_np(z: np.ndarray) -> np.ndarray:
    z = z.astype(np.uint64, copy=True)
    z ^= z >> np.uint64(30)
    z *= np.uint64(_MIX_MUL_1)
    z ^= z >> np.uint64(27)
    z *= np.uint64(_MIX_MUL_2)
    z ^= z >> np.uint64(31)
    return z


def probability_threshold(p: Fraction) -> int:
    """Integer T with: (h >> 11) < T  iff  (top 53 bits of h)/2^53 < p."""
    return -((-p.numerator << 53) // p.denominator)


def _as_probability(p) -> Fraction:
    frac = Fraction(p) if not isinstance(p, Fraction) else p
    if not 0 < frac <= 1:
        raise ValueError("edge probability must lie in (0, 1]")
    return frac


@dataclass(frozen=True)
class EdgeOracle:
    """The fixed random graph on ℕ: pure, symmetric, seed-determined edges.

    Immutable and safely shareable; every method is a pure function of
    (seed, arguments).  Vertices are 1-based.
    """

    seed: int
    edge_probability: Fraction = Fraction(1, 2)

    def __post_init__(self):
        if not 0 <= self.seed <= MASK64:
            raise ValueError("seed must be an unsigned 64-bit integer")
        object.__setattr__(self, "edge_probability", _as_probability(self.edge_probability))

    @cached_property
    def _threshold(self) -> int:
        return probability_threshold(self.edge_probability)

    def edge(self, u: int, v: int) -> bool:
        """Whether {u, v} is an edge of the ambient graph."""
        if u == v or u < 1 or v < 1:
            raise ValueError("edge requires two distinct vertices >= 1")
        a, b = (u, v) if u < v else (v, u)
        h = mix64(self.seed ^ mix64(((a * GOLDEN) & MASK64) ^ rotl64(b, 32)))
        return (h >> 11) < self._threshold

    def edge_many(self, u: int, vs: np.ndarray) -> np.ndarray:
        """Vectorized ``edge(u, v)`` for every v in vs.  Positions where
        v == u yield an unspecified bit; callers must mask them out."""
        return self.edge_pairs(np.full(len(vs), u, dtype=np.int64), vs)

    def edge_pairs(self, us: np.ndarray, vs: np.ndarray) -> np.ndarray:
        """Elementwise edges for paired vertex arrays; exact match of edge()."""
        us = np.asarray(us, dtype=np.uint64)
        vs = np.asarray(vs, dtype=np.uint64)
        a = np.minimum(us, vs)
        b = np.maximum(us, vs)
        key = (a * np.uint64(GOLDEN)) ^ ((b << np.uint64(32)) | (b >> np.uint64(32)))
        h = _mix64_np(np.uint64(self.seed) ^ _mix64_np(key))
        return (h >> np.uint64(11)) < np.uint64(self._threshold)

    def edge_grid(self, us, pool_sorted: np.ndarray) -> np.ndarray:
        """Edges of every u against a sorted pool, as a (len(us), len(pool))
        matrix.  Bit-identical to edge_pairs; the sortedness lets the pair
        canonicalization be precomputed once for the whole grid."""
        pool_u = np.asarray(pool_sorted, dtype=np.uint64)
        pool_g = pool_u * np.uint64(GOLDEN)
        pool_rot = (pool_u << np.uint64(32)) | (pool_u >> np.uint64(32))
        seed_u = np.uint64(self.seed)
        thresh = np.uint64(self._threshold)
        out = np.empty((len(us), len(pool_u)), dtype=bool)
        key = np.empty(len(pool_u), dtype=np.uint64)
        for row, c in enumerate(us):
            c = int(c)
            i = int(np.searchsorted(pool_sorted, c))
            key[:i] = pool_g[:i] ^ np.uint64(rotl64(c, 32))
            key[i:] = np.uint64((c * GOLDEN) & MASK64) ^ pool_rot[i:]
            h = _mix64_np(seed_u ^ _mix64_np(key))
            out[row] = (h >> np.uint64(11)) < thresh
        return out


def stream_values(seed: int, tag: int, count: int, offset: int = 0) -> np.ndarray:
    """Counter-based 53-bit uniforms, reproducible from (seed, tag, index).

    Independent of the ambient edge PRF: a different derivation chain is
    used, so Monte Carlo trial graphs never alias ambient edges.
    """
    key = mix64((seed ^ mix64((tag * GOLDEN) & MASK64)) & MASK64)
    idx = np.arange(offset + 1, offset + count + 1, dtype=np.uint64)
    return _mix64_np(np.uint64(key) + idx * np.uint64(GOLDEN)) >> np.uint64(11)


def stream_matrix(seed: int, tags: np.ndarray, count: int) -> np.ndarray:
    """stream_values for many tags at once; shape (len(tags), count)."""
    tags = np.asarray(tags, dtype=np.uint64)
    keys = _mix64_np(np.uint64(seed) ^ _mix64_np(tags * np.uint64(GOLDEN)))
    idx = np.arange(1, count + 1, dtype=np.uint64)
    return _mix64_np(keys[:, None] + idx[None, :] * np.uint64(GOLDEN)) >> np.uint64(11)


@dataclass(frozen=True)
class TypeSpec:
    """A type over an ordered finite vertex list: bit i of mask = "connects
    to base[i]"."""

    base: tuple[int, ...]
    mask: int

    def __post_init__(self):
        if len(set(self.base)) != len(self.base):
            raise ValueError("type base must not repeat vertices")
        if not 0 <= self.mask < (1 << len(self.base)):
            raise ValueError("mask out of range for base of size %d" % len(self.base))

    def __len__(self) -> int:
        return len(self.base)

    @property
    def bits(self) -> str:
        """Mask rendered with bit 0 (first base vertex) leftmost."""
        return "".join("1" if self.mask >> i & 1 else "0" for i in range(len(self.base)))

    @classmethod
    def from_bits(cls, base: Sequence[int], bits: str) -> "TypeSpec":
        mask = 0
        for i, ch in enumerate(bits):
            if ch == "1":
                mask |= 1 << i
        return cls(tuple(base), mask)

    @classmethod
    def nonadjacent(cls, base: Sequence[int]) -> "TypeSpec":
        """The type stating that a vertex connects to nothing in base."""
        return cls(tuple(base), 0)


def type_of(oracle: EdgeOracle, m: int, base: VertexSet) -> TypeSpec:
    """The type of vertex m over the base set (ascending base order)."""
    if m in base:
        raise ValueError("vertex %d lies inside the base set" % m)
    mask = 0
    if len(base):
        bits = oracle.edge_many(m, base.as_array)
        for i in range(len(base)):
            if bits[i]:
                mask |= 1 << i
    return TypeSpec(tuple(base.elements), mask)


def _type_keys(oracle: EdgeOracle, base: Sequence[int], pool: np.ndarray) -> np.ndarray:
    """Type masks over `base` for every pool vertex, as integer keys."""
    keys = np.zeros(len(pool), dtype=np.int64)
    for i, b in enumerate(base):
        keys |= oracle.edge_many(b, pool).astype(np.int64) << i
    return keys


def vertices_of_type(oracle: EdgeOracle, t: TypeSpec, pool: VertexSet) -> VertexSet:
    """The subset of pool whose type over t.base equals t (base removed first)."""
    pool = pool.minus(t.base)
    if len(pool) == 0:
        return pool
    keys = _type_keys(oracle, t.base, pool.as_array)
    elems = tuple(int(v) for v in pool.as_array[keys == t.mask])
    return VertexSet(elems, pool.prefix_bound)


def extension_check(oracle: EdgeOracle, f: VertexSet, bound: int) -> dict:
    """Least witness <= bound for each of the 2^|F| types over F.

    Passes iff every type is witnessed; absence of witnesses is data,
    not an error.
    """
    if len(f) and f.elements[-1] > bound:
        raise ValueError("base set must lie within [1, bound]")
    candidates = np.setdiff1d(np.arange(1, bound + 1, dtype=np.int64), f.as_array, assume_unique=True)
    k = len(f)
    witnesses: list[int | None] = [None] * (1 << k)
    if len(candidates):
        keys = _type_keys(oracle, f.elements, candidates)
        order = np.argsort(candidates, kind="stable")
        for pos in order:
            key = int(keys[pos])
            if witnesses[key] is None:
                witnesses[key] = int(candidates[pos])
    types = [
        {"mask": TypeSpec(f.elements, m).bits, "witness": witnesses[m]}
        for m in range(1 << k)
    ]
    return {
        "f": list(f.elements),
        "bound": bound,
        "types": types,
        "pass": all(w["witness"] is not None for w in types),
    }


def induced_subgraph(oracle: EdgeOracle, a: VertexSet) -> FiniteGraph:
    """The induced subgraph on A; vertex i is the i-th smallest element."""
    n = len(a)
    rows = [0] * n
    if n >= 2:
        iu, iv = np.triu_indices(n, k=1)
        bits = oracle.edge_pairs(a.as_array[iu], a.as_array[iv])
        for i, j, b in zip(iu, iv, bits):
            if b:
                rows[i] |= 1 << j
                rows[j] |= 1 << i
    return FiniteGraph(n, tuple(rows))
