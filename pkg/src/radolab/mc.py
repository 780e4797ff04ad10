"""Monte Carlo and exhaustive verification of the probability bounds:
density of type-avoiding vertices, pattern-free probability decay, the
log-sized pattern-free-subset bound, and product-measure statistics.

Trial graphs come from a counter-based bit stream keyed by (seed, trial,
pair-index), independent of the ambient edge oracle: the sampled-graph
statements quantify over fresh random graphs, not the fixed ambient one.
"""

from __future__ import annotations

import math
from fractions import Fraction
from itertools import combinations

import numpy as np

from .audit import _exact_gfree, _greedy_gfree
from .graphs import FiniteGraph, pair_index, pattern_orbit_table
from .oracle import (
    MASK64,
    TAG_MU_P,
    TAG_TRIAL_GRAPHS,
    EdgeOracle,
    TypeSpec,
    probability_threshold,
    stream_matrix,
    stream_values,
)
from .sets import VertexSet

MC_PATTERN_ORDER_CAP = 6
MC_N_CAP = 32
EXACT_N_CAP = 6
FN_EXACT_CAP = 16

_FAIR_BIT_THRESHOLD = np.uint64(1 << 52)  # p = 1/2 over 53-bit uniforms


def mc_density_star(seed: int, k: int, n: int, pool_size: int, trials: int) -> dict:
    """Estimate the density of vertices avoiding n fixed types over disjoint
    size-k bases, against the analytic target (1 - p^k)^n.

    Trial t uses ambient seed (seed + t); the bases are the first n*k
    vertices split consecutively, each with the all-ones type, and the
    pool is the next pool_size vertices.
    """
    if k < 1 or n < 1:
        raise ValueError("need k >= 1 and n >= 1")
    if pool_size < 1:
        raise ValueError("pool too small")
    if trials < 2:
        raise ValueError("need at least 2 trials for a standard error")
    pool = np.arange(n * k + 1, n * k + pool_size + 1, dtype=np.int64)
    fractions = []
    for t in range(trials):
        oracle = EdgeOracle((seed + t) & MASK64)
        p = float(oracle.edge_probability)
        avoid = np.ones(pool_size, dtype=bool)
        for i in range(n):
            base = range(i * k + 1, (i + 1) * k + 1)
            hit = np.ones(pool_size, dtype=bool)
            for b in base:
                hit &= oracle.edge_many(b, pool)
            avoid &= ~hit
        fractions.append(float(avoid.mean()))
    arr = np.asarray(fractions)
    target = (1 - 0.5**k) ** n
    return {
        "k": k,
        "n": n,
        "pool_size": pool_size,
        "trials": trials,
        "estimate": float(arr.mean()),
        "stderr": float(arr.std(ddof=1) / math.sqrt(trials)),
        "target": target,
        "trial_values": fractions,
    }


def _gfree_flags(pattern: FiniteGraph, n: int) -> np.ndarray:
    """Boolean table over all labeled graphs on n vertices (upper-triangle
    masks): True where the graph has no induced copy of the pattern."""
    npairs = n * (n - 1) // 2
    masks = np.arange(1 << npairs, dtype=np.int64)
    contains = np.zeros(len(masks), dtype=bool)
    r = pattern.order
    orbit = np.asarray(pattern_orbit_table(pattern), dtype=bool)
    for sub in combinations(range(n), r):
        submask = np.zeros(len(masks), dtype=np.int64)
        bit = 0
        for b in range(r):
            for a in range(b):
                src = pair_index(sub[a], sub[b])
                submask |= ((masks >> src) & 1) << bit
                bit += 1
        contains |= orbit[submask]
    return ~contains


def exact_gfree_count(pattern: FiniteGraph, n: int) -> dict:
    """Exact probability that a uniform labeled n-vertex graph is pattern-free."""
    if not 1 <= n <= EXACT_N_CAP:
        raise ValueError("exact enumeration capped at n = %d" % EXACT_N_CAP)
    if not 1 <= pattern.order <= n:
        raise ValueError("pattern order must lie in [1, n]")
    flags = _gfree_flags(pattern, n)
    count = int(flags.sum())
    total = len(flags)
    return {"n": n, "count": count, "total": total, "probability": Fraction(count, total)}


def _trial_graph_bits(seed: int, first_trial: int, trials: int, npairs: int) -> np.ndarray:
    tags = TAG_TRIAL_GRAPHS + np.arange(first_trial, first_trial + trials, dtype=np.uint64)
    return stream_matrix(seed, tags, npairs) < _FAIR_BIT_THRESHOLD


def _rows_from_bits(bits: np.ndarray, n: int) -> list[int]:
    rows = [0] * n
    p = 0
    for j in range(1, n):
        for i in range(j):
            if bits[p]:
                rows[i] |= 1 << j
                rows[j] |= 1 << i
            p += 1
    return rows


def _has_induced_copy(rows: list[int], n: int, pattern: FiniteGraph) -> bool:
    """Bitset backtracking over pattern vertices in descending-degree order."""
    r = pattern.order
    if r > n:
        return False
    porder = sorted(range(r), key=lambda v: (-pattern.degree(v), v))
    full = (1 << n) - 1
    images = [0] * r

    def dfs(depth: int, used: int) -> bool:
        if depth == r:
            return True
        p = porder[depth]
        cand = full & ~used
        for q in porder[:depth]:
            cand = cand & rows[images[q]] if pattern.has_edge(p, q) else cand & ~rows[images[q]]
        while cand:
            low = cand & -cand
            cand ^= low
            images[p] = low.bit_length() - 1
            if dfs(depth + 1, used | low):
                return True
        return False

    return dfs(0, 0)


def mc_gfree_probability(
    pattern: FiniteGraph,
    n: int,
    trials: int,
    seed: int,
    c: float | None = None,
) -> dict:
    """Monte Carlo estimate of the pattern-free probability for uniform
    labeled n-vertex graphs, with the 2^(-c n^2) envelope when c is given."""
    if pattern.order > MC_PATTERN_ORDER_CAP:
        raise ValueError("pattern order capped at %d" % MC_PATTERN_ORDER_CAP)
    if not pattern.order <= n <= MC_N_CAP:
        raise ValueError("n must lie in [pattern order, %d]" % MC_N_CAP)
    if trials < 1:
        raise ValueError("need at least one trial")
    npairs = n * (n - 1) // 2
    bits = _trial_graph_bits(seed, 0, trials, npairs)
    if n <= EXACT_N_CAP:
        flags = _gfree_flags(pattern, n)
        masks = bits @ (1 << np.arange(npairs, dtype=np.int64))
        hits = flags[masks]
    else:
        hits = np.array(
            [not _has_induced_copy(_rows_from_bits(bits[t], n), n, pattern) for t in range(trials)]
        )
    est = float(hits.mean())
    out = {
        "n": n,
        "trials": trials,
        "estimate": est,
        "stderr": float(math.sqrt(est * (1 - est) / trials)),
    }
    if n <= EXACT_N_CAP:
        out["exact"] = exact_gfree_count(pattern, n)["probability"]
    if c is not None:
        out["envelope"] = 2.0 ** (-c * n * n)
    return out


def fn_size(n: int, n_param: int) -> int:
    """ceil(N * log2 n): the pattern-free subset size the bound tracks."""
    if n < 1:
        raise ValueError("n must be >= 1")
    return math.ceil(n_param * math.log2(n)) if n > 1 else 0


def mc_fn_bound(
    pattern: FiniteGraph,
    n_list: list[int],
    n_param: int,
    trials: int,
    seed: int,
) -> list[dict]:
    """Per n: the probability that a uniform n-vertex graph contains a
    pattern-free induced subgraph of size f(n) = ceil(N log2 n).

    Exact subset search decides each trial up to n = 16; beyond that a
    greedy witness search gives a lower-bound estimate only.
    """
    rows_out = []
    for n in n_list:
        f = fn_size(n, n_param)
        row = {"n": n, "f": f, "envelope": float(n) ** (-2 * f) if n > 1 else 1.0}
        if f == 0:
            row.update(estimate=1.0, stderr=0.0, mode="degenerate")
        elif f > n:
            row.update(estimate=0.0, stderr=0.0, mode="degenerate")
        else:
            npairs = n * (n - 1) // 2
            bits = _trial_graph_bits(seed, 0, trials, npairs)
            wins = 0
            for t in range(trials):
                g_rows = _rows_from_bits(bits[t], n)
                if n <= FN_EXACT_CAP:
                    ok = len(_exact_gfree(g_rows, n, pattern, stop_at=f)) >= f
                else:
                    ok = len(_greedy_gfree(g_rows, n, pattern)) >= f
                wins += ok
            est = wins / trials
            row.update(
                estimate=est,
                stderr=math.sqrt(est * (1 - est) / trials),
                mode="exact" if n <= FN_EXACT_CAP else "greedy-lower-bound",
            )
        rows_out.append(row)
    return rows_out


def sample_mu_p(p, bound: int, seed: int) -> VertexSet:
    """Include each n <= bound independently with probability p."""
    frac = Fraction(p) if not isinstance(p, Fraction) else p
    if not 0 < frac < 1:
        raise ValueError("p must lie strictly between 0 and 1")
    thresh = np.uint64(probability_threshold(frac))
    vals = stream_values(seed, TAG_MU_P, bound)
    elems = np.arange(1, bound + 1, dtype=np.int64)[vals < thresh]
    return VertexSet(tuple(int(v) for v in elems), bound)


def type_frequency_check(oracle: EdgeOracle, f: VertexSet, t: TypeSpec, bound: int) -> dict:
    """Empirical frequency of type-t vertices in (max F, bound], with the
    3-sigma binomial band around p^{|F|} and a runs-test for independence."""
    if tuple(t.base) != tuple(f.elements):
        raise ValueError("type must be over the given base set")
    start = (f.elements[-1] if len(f) else 0) + 1
    pool = np.arange(start, bound + 1, dtype=np.int64)
    total = len(pool)
    if total == 0:
        raise ValueError("no vertices beyond the base within the bound")
    keys = np.zeros(total, dtype=np.int64)
    for i, b in enumerate(f.elements):
        keys |= oracle.edge_many(b, pool).astype(np.int64) << i
    indicator = keys == t.mask
    count = int(indicator.sum())
    freq = count / total
    # class probability is a product over mask bits (2^-|F| at p = 1/2)
    pe = float(oracle.edge_probability)
    p = 1.0
    for i in range(len(f)):
        p *= pe if t.mask >> i & 1 else (1 - pe)
    sigma = math.sqrt(p * (1 - p) / total) if 0 < p < 1 else 0.0
    z = (freq - p) / sigma if sigma else 0.0
    n1 = count
    n0 = total - count
    runs = 1 + int((indicator[1:] != indicator[:-1]).sum()) if total > 1 else 1
    runs_expected = 1 + 2 * n1 * n0 / total
    runs_var = (runs_expected - 1) * (runs_expected - 2) / (total - 1) if total > 1 else 0.0
    runs_z = (runs - runs_expected) / math.sqrt(runs_var) if runs_var > 0 else 0.0
    return {
        "f": list(f.elements),
        "mask": t.bits,
        "bound": bound,
        "total": total,
        "count": count,
        "frequency": freq,
        "expected": p,
        "sigma": sigma,
        "z": z,
        "band_ok": abs(freq - p) <= 3 * sigma if sigma else freq == p,
        "runs": {"observed": runs, "expected": runs_expected, "z": runs_z},
    }
