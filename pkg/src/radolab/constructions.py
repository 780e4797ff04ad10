"""Block constructions over the ambient graph: thick edgeless sets, thick
copies of a finite target, and family members with finite components.

Every returned structure carries certificates recomputed from raw oracle
queries, never from construction bookkeeping.  All scans are leftmost-
first, so outputs are deterministic per seed.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .embed import Embedding, StepRecord, verify_embedding
from .graphs import FiniteGraph
from .largeness import FamilyDescriptor, pi02_force
from .oracle import EdgeOracle
from .sets import VertexSet

_SCAN_CHUNK = 1 << 16


class PrefixExhausted(RuntimeError):
    """The materialized prefix ran out before a block could be placed."""

    def __init__(self, block: int, scanned_to: int, per_candidate_probability: float):
        super().__init__(
            "prefix exhausted at block %d (scanned to %d; per-candidate success "
            "probability %.3g)" % (block, scanned_to, per_candidate_probability)
        )
        self.block = block
        self.scanned_to = scanned_to
        self.per_candidate_probability = per_candidate_probability


class TypeClassEmpty(RuntimeError):
    """No vertex of the required isolation type remains in the prefix."""

    def __init__(self, level: int, base_size: int, expected: float):
        super().__init__(
            "type class empty before forcing at level %d (base [1,%d]; "
            "about %.3g candidates were expected in the prefix)" % (level, base_size, expected)
        )
        self.level = level
        self.expected = expected


class ForcingFailed(RuntimeError):
    """The forcing oracle found no sufficient horizon within the prefix."""

    def __init__(self, level: int, horizon: int):
        super().__init__("forcing failed at level %d within prefix bound %d" % (level, horizon))
        self.level = level
        self.horizon = horizon


def _scan_block(
    oracle: EdgeOracle,
    scan_from: int,
    length: int,
    prefix_bound: int,
    internal_want: list[tuple[int, int, bool]],
    cross_want: list[tuple[int, int, bool]],
) -> int | None:
    """Least start k >= scan_from of a window [k, k+length-1] <= prefix_bound
    whose internal pairs and (previous-vertex, offset) pairs carry exactly
    the required edge bits.  Chunked, vectorized left-to-right scan."""
    last_start = prefix_bound - length + 1
    lo = scan_from
    while lo <= last_start:
        hi = min(lo + _SCAN_CHUNK - 1, last_start)
        ks = np.arange(lo, hi + 1, dtype=np.int64)
        ok = np.ones(len(ks), dtype=bool)
        for d1, d2, want in internal_want:
            ok &= oracle.edge_pairs(ks + d1, ks + d2) == want
            if not ok.any():
                break
        surv = ks[ok]
        if len(surv):
            for u, d, want in cross_want:
                keep = oracle.edge_many(u, surv + d) == want
                surv = surv[keep]
                if len(surv) == 0:
                    break
        if len(surv):
            return int(surv[0])
        lo = hi + 1
    return None


@dataclass(frozen=True)
class ThickResult:
    intervals: tuple[tuple[int, int], ...]  # (start, length)
    union: VertexSet
    verified: bool

    def to_json(self) -> dict:
        return {
            "intervals": [[s, l] for s, l in self.intervals],
            "union": list(self.union.elements),
            "verified": self.verified,
        }


def _assert_edgeless(oracle: EdgeOracle, vertices: np.ndarray) -> None:
    if len(vertices) >= 2:
        iu, iv = np.triu_indices(len(vertices), k=1)
        if oracle.edge_pairs(vertices[iu], vertices[iv]).any():
            raise AssertionError("edgeless verification failed")


def construct_thick_edgeless(oracle: EdgeOracle, blocks: int, prefix_bound: int) -> ThickResult:
    """Disjoint intervals I_1..I_m with |I_j| = j whose union has no edges.

    Each block is the leftmost window beyond the previous one with no
    internal edges and no edges to the union so far.  Per-candidate success
    probability for block j is p^(C(j,2) + j·|union|), so the prefix demand
    grows doubly exponentially in m.
    """
    if blocks < 1:
        raise ValueError("need at least one block")
    intervals: list[tuple[int, int]] = []
    union: list[int] = []
    scan_from = 1
    p = float(oracle.edge_probability)
    for j in range(1, blocks + 1):
        internal = [(d1, d2, False) for d2 in range(j) for d1 in range(d2)]
        cross = [(u, d, False) for u in union for d in range(j)]
        k = _scan_block(oracle, scan_from, j, prefix_bound, internal, cross)
        if k is None:
            prob = (1 - p) ** (j * (j - 1) // 2 + j * len(union))
            raise PrefixExhausted(j, prefix_bound, prob)
        intervals.append((k, j))
        union.extend(range(k, k + j))
        scan_from = k + j
    verts = np.asarray(union, dtype=np.int64)
    _assert_edgeless(oracle, verts)
    return ThickResult(tuple(intervals), VertexSet(tuple(union), prefix_bound), True)


@dataclass(frozen=True)
class ThickCopyResult:
    intervals: tuple[tuple[int, int], ...]
    embedding: Embedding
    verified: bool

    def to_json(self) -> dict:
        return {
            "intervals": [[s, l] for s, l in self.intervals],
            "images": list(self.embedding.images),
            "verified": self.verified,
        }


def construct_thick_copy(
    oracle: EdgeOracle,
    target: FiniteGraph,
    blocks: int,
    prefix_bound: int,
) -> ThickCopyResult:
    """Intervals I_1..I_m of lengths 1..m whose concatenation induces the
    target prefix: every internal and cross-block pair matches the target."""
    if blocks < 1:
        raise ValueError("need at least one block")
    needed = blocks * (blocks + 1) // 2
    if target.order < needed:
        raise ValueError("target must supply at least %d vertices" % needed)
    intervals: list[tuple[int, int]] = []
    images: list[int] = []
    scan_from = 1
    p = float(oracle.edge_probability)
    for j in range(1, blocks + 1):
        offset = len(images)
        internal = [
            (d1, d2, target.has_edge(offset + d1, offset + d2))
            for d2 in range(j)
            for d1 in range(d2)
        ]
        cross = [
            (u, d, target.has_edge(i, offset + d))
            for i, u in enumerate(images)
            for d in range(j)
        ]
        k = _scan_block(oracle, scan_from, j, prefix_bound, internal, cross)
        if k is None:
            # every required bit is an independent p-or-(1-p) event
            prob = min(p, 1 - p) ** (j * (j - 1) // 2 + j * len(images))
            raise PrefixExhausted(j, prefix_bound, prob)
        intervals.append((k, j))
        images.extend(range(k, k + j))
        scan_from = k + j
    prefix = target.induced(list(range(needed)))
    verify_embedding(oracle, prefix, tuple(images))
    embedding = Embedding(
        target=prefix,
        images=tuple(images),
        steps=tuple(
            StepRecord(i + 1, "", v, 0) for i, v in enumerate(images)
        ),
        verified=True,
    )
    return ThickCopyResult(tuple(intervals), embedding, True)


@dataclass(frozen=True)
class Pi02Result:
    ks: tuple[int, ...]
    blocks: tuple[tuple[int, ...], ...]
    union: VertexSet
    certificates: dict
    verified: bool

    def to_json(self) -> dict:
        return {
            "ks": list(self.ks),
            "blocks": [list(b) for b in self.blocks],
            "union": list(self.union.elements),
            "certificates": self.certificates,
            "verified": self.verified,
        }


def construct_pi02_member(
    oracle: EdgeOracle,
    family: FamilyDescriptor,
    levels: int,
    prefix_bound: int,
) -> Pi02Result:
    """Level-by-level recursion producing a family member whose connected
    components are confined to finite blocks.

    At stage n the vertices connecting to nothing in [1, k_{n-1}] are
    collected, merged with the earlier blocks, and the family's forcing
    oracle picks the least sufficient horizon; the new block is the slice
    up to that horizon.  The isolation type thins like p^k_{n-1}, so the
    prefix demand explodes after a few levels.
    """
    if levels < 0:
        raise ValueError("levels must be non-negative")
    k_prev = 0
    ks: list[int] = []
    fs: list[tuple[int, ...]] = []
    earlier: list[int] = []
    p = float(oracle.edge_probability)
    for n in range(1, levels + 1):
        cands = np.arange(k_prev + 1, prefix_bound + 1, dtype=np.int64)
        for b in range(1, k_prev + 1):
            if len(cands) == 0:
                break
            cands = cands[~oracle.edge_many(b, cands)]
        if len(cands) == 0:
            raise TypeClassEmpty(n, k_prev, (prefix_bound - k_prev) * (1 - p) ** k_prev)
        t_prime = VertexSet(tuple(earlier) + tuple(int(v) for v in cands), prefix_bound)
        k_forced = pi02_force(family, n, t_prime, prefix_bound)
        if k_forced is None:
            raise ForcingFailed(n, prefix_bound)
        k_n = max(k_forced, k_prev + 1)
        f_n = tuple(v for v in t_prime.elements if k_prev < v <= k_n)
        ks.append(k_n)
        fs.append(f_n)
        earlier.extend(f_n)
        k_prev = k_n
    union = VertexSet(tuple(earlier), prefix_bound)

    # certificates recomputed from scratch: each prefix forces its level
    certificates = {}
    for n in range(1, levels + 1):
        prefix = union.restrict(1, ks[n - 1])
        reforced = pi02_force(family, n, prefix, ks[n - 1])
        if reforced is None:
            raise AssertionError("level %d certificate failed re-validation" % n)
        certificates[str(n)] = {"k": ks[n - 1], "forced_at": reforced}

    # zero cross-block edges, re-queried exhaustively
    block_of = {}
    for bi, f_n in enumerate(fs):
        for v in f_n:
            block_of[v] = bi
    verts = union.as_array
    if len(verts) >= 2:
        iu, iv = np.triu_indices(len(verts), k=1)
        edges = oracle.edge_pairs(verts[iu], verts[iv])
        parent = list(range(len(verts)))

        def find(x: int) -> int:
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for i, j, e in zip(iu, iv, edges):
            if e:
                if block_of[int(verts[i])] != block_of[int(verts[j])]:
                    raise AssertionError("cross-block edge between %d and %d" % (verts[i], verts[j]))
                parent[find(int(i))] = find(int(j))
        for i in range(len(verts)):
            if block_of[int(verts[find(i)])] != block_of[int(verts[i])]:
                raise AssertionError("component escapes its block")

    return Pi02Result(tuple(ks), tuple(fs), union, certificates, True)
