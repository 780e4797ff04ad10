"""Finite simple graphs: bitset adjacency, graph6 I/O, canonical forms,
and the catalog of unlabeled graphs on up to seven vertices."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations, permutations
from typing import Iterable, Iterator, Sequence


@dataclass(frozen=True)
class FiniteGraph:
    """A finite simple graph; ``rows[i]`` is the neighbor bitmask of vertex i."""

    order: int
    rows: tuple[int, ...]

    def __post_init__(self):
        if len(self.rows) != self.order:
            raise ValueError("adjacency rows must match order")
        full = (1 << self.order) - 1
        for i, r in enumerate(self.rows):
            if r & ~full:
                raise ValueError("row %d has bits outside the vertex range" % i)
            if r >> i & 1:
                raise ValueError("diagonal must be zero (vertex %d)" % i)
            for j in range(self.order):
                if (r >> j & 1) != (self.rows[j] >> i & 1):
                    raise ValueError("adjacency must be symmetric (%d,%d)" % (i, j))

    def has_edge(self, i: int, j: int) -> bool:
        return bool(self.rows[i] >> j & 1)

    @property
    def edge_count(self) -> int:
        return sum(r.bit_count() for r in self.rows) // 2

    def edges(self) -> Iterator[tuple[int, int]]:
        for i in range(self.order):
            for j in range(i + 1, self.order):
                if self.has_edge(i, j):
                    yield (i, j)

    def degree(self, i: int) -> int:
        return self.rows[i].bit_count()

    def complement(self) -> "FiniteGraph":
        full = (1 << self.order) - 1
        return FiniteGraph(self.order, tuple((~r & full & ~(1 << i)) for i, r in enumerate(self.rows)))

    def induced(self, vertices: Sequence[int]) -> "FiniteGraph":
        """Subgraph induced on the given vertex positions, in the given order."""
        rows = []
        for a in vertices:
            r = 0
            for q, b in enumerate(vertices):
                if a != b and self.has_edge(a, b):
                    r |= 1 << q
            rows.append(r)
        return FiniteGraph(len(vertices), tuple(rows))

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "FiniteGraph":
        rows = [0] * n
        for i, j in edges:
            if i == j:
                raise ValueError("loops are not allowed")
            rows[i] |= 1 << j
            rows[j] |= 1 << i
        return cls(n, tuple(rows))


def pair_index(i: int, j: int) -> int:
    """Column-major upper-triangle position of the pair i < j."""
    if not i < j:
        raise ValueError("pair_index requires i < j")
    return j * (j - 1) // 2 + i


def upper_mask(g: FiniteGraph) -> int:
    """The upper triangle packed into an integer, column-major bit order."""
    m = 0
    for j in range(1, g.order):
        for i in range(j):
            if g.has_edge(i, j):
                m |= 1 << pair_index(i, j)
    return m


def from_upper_mask(n: int, mask: int) -> FiniteGraph:
    rows = [0] * n
    for j in range(1, n):
        for i in range(j):
            if mask >> pair_index(i, j) & 1:
                rows[i] |= 1 << j
                rows[j] |= 1 << i
    return FiniteGraph(n, tuple(rows))


def relabel(g: FiniteGraph, order: Sequence[int]) -> FiniteGraph:
    """The graph with new vertex p = old vertex order[p]."""
    return g.induced(list(order))


# --- named graphs -----------------------------------------------------------

def complete(n: int) -> FiniteGraph:
    full = (1 << n) - 1
    return FiniteGraph(n, tuple(full & ~(1 << i) for i in range(n)))


def empty_graph(n: int) -> FiniteGraph:
    return FiniteGraph(n, (0,) * n)


def cycle(n: int) -> FiniteGraph:
    if n < 3:
        raise ValueError("a cycle needs at least 3 vertices")
    return FiniteGraph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def path(n: int) -> FiniteGraph:
    return FiniteGraph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def petersen() -> FiniteGraph:
    edges = [(i, (i + 1) % 5) for i in range(5)]
    edges += [(i, i + 5) for i in range(5)]
    edges += [(i + 5, (i + 2) % 5 + 5) for i in range(5)]
    return FiniteGraph.from_edges(10, edges)


# --- graph6 -----------------------------------------------------------------

GRAPH6_HEADER = ">>graph6<<"


class Graph6Error(ValueError):
    """Malformed graph6 text; carries the byte offset of the defect."""

    def __init__(self, message: str, offset: int):
        super().__init__("%s (offset %d)" % (message, offset))
        self.offset = offset


def graph6_encode(g: FiniteGraph) -> str:
    n = g.order
    if n <= 62:
        head = chr(n + 63)
    elif n <= 258047:
        head = "~" + chr(63 + (n >> 12 & 63)) + chr(63 + (n >> 6 & 63)) + chr(63 + (n & 63))
    else:
        raise ValueError("graph6 encoding supported up to 258047 vertices")
    bits = []
    for j in range(1, n):
        for i in range(j):
            bits.append(1 if g.has_edge(i, j) else 0)
    while len(bits) % 6:
        bits.append(0)
    body = []
    for p in range(0, len(bits), 6):
        v = 0
        for b in bits[p : p + 6]:
            v = v << 1 | b
        body.append(chr(63 + v))
    return head + "".join(body)


def graph6_decode(text: str) -> FiniteGraph:
    s = text.strip()
    if s.startswith(GRAPH6_HEADER):
        s = s[len(GRAPH6_HEADER) :]
    if not s:
        raise Graph6Error("empty graph6 string", 0)
    data = [ord(c) for c in s]
    for off, byte in enumerate(data):
        if not 63 <= byte <= 126:
            raise Graph6Error("byte out of range", off)
    pos = 0
    if data[0] != 126:
        n = data[0] - 63
        pos = 1
    elif len(data) >= 2 and data[1] != 126:
        if len(data) < 4:
            raise Graph6Error("truncated size block", len(data))
        n = ((data[1] - 63) << 12) | ((data[2] - 63) << 6) | (data[3] - 63)
        pos = 4
    else:
        if len(data) < 8:
            raise Graph6Error("truncated size block", len(data))
        n = 0
        for k in range(2, 8):
            n = n << 6 | (data[k] - 63)
        pos = 8
    npairs = n * (n - 1) // 2
    nbytes = (npairs + 5) // 6
    if len(data) - pos != nbytes:
        raise Graph6Error("edge block has wrong length", pos)
    bits = []
    for k in range(pos, len(data)):
        v = data[k] - 63
        for shift in range(5, -1, -1):
            bits.append(v >> shift & 1)
    for extra in range(npairs, len(bits)):
        if bits[extra]:
            raise Graph6Error("nonzero padding bit", pos + extra // 6)
    rows = [0] * n
    p = 0
    for j in range(1, n):
        for i in range(j):
            if bits[p]:
                rows[i] |= 1 << j
                rows[j] |= 1 << i
            p += 1
    return FiniteGraph(n, tuple(rows))


# --- canonical form ---------------------------------------------------------

CANONICAL_MAX_ORDER = 8


def _canonical_order(g: FiniteGraph) -> tuple[list[int], list[int]]:
    """Lexicographically minimal column-major upper-triangle bits, with the
    vertex ordering that attains it.  DFS over orderings; a branch is cut as
    soon as its forced prefix exceeds the best known."""
    n = g.order
    rows = g.rows
    best: list[int] | None = None
    best_order: list[int] | None = None
    order: list[int] = []
    used = [False] * n
    acc: list[int] = []

    def dfs():
        nonlocal best, best_order
        depth = len(order)
        if depth == n:
            if best is None or acc < best:
                best = acc.copy()
                best_order = order.copy()
            return
        start = len(acc)
        options = []
        for u in range(n):
            if not used[u]:
                options.append(([(rows[v] >> u) & 1 for v in order], u))
        options.sort()
        # pruning against best is only sound while the accumulated prefix
        # ties with best; a strictly smaller prefix beats best regardless
        # of later segments
        tied = best is not None and acc == best[:start]
        for seg, u in options:
            if tied and seg > best[start : start + depth]:
                break
            used[u] = True
            order.append(u)
            acc.extend(seg)
            dfs()
            del acc[start:]
            order.pop()
            used[u] = False
            tied = best is not None and acc == best[:start]

    dfs()
    assert best is not None and best_order is not None
    return best, best_order


def canonical_form(g: FiniteGraph) -> str:
    """Order-prefixed minimal upper-triangle bitstring; two graphs are
    isomorphic iff their canonical forms are equal."""
    if g.order > CANONICAL_MAX_ORDER:
        raise ValueError("canonicalization bound exceeded (order %d > %d)" % (g.order, CANONICAL_MAX_ORDER))
    if g.order == 0:
        return "0:"
    bits, _ = _canonical_order(g)
    return "%d:%s" % (g.order, "".join(map(str, bits)))


def canonical_representative(g: FiniteGraph) -> FiniteGraph:
    """An isomorphic copy relabeled into its canonical ordering."""
    if g.order == 0:
        return g
    _, order = _canonical_order(g)
    return relabel(g, order)


@lru_cache(maxsize=None)
def enumerate_unlabeled(k: int) -> tuple[FiniteGraph, ...]:
    """One canonical representative per isomorphism class on k vertices.

    Built by extending the (k-1)-catalog with every possible neighborhood
    of a fresh vertex, deduplicating through canonical_form.
    """
    if not 1 <= k <= 7:
        raise ValueError("unlabeled enumeration supported for 1 <= k <= 7")
    if k == 1:
        return (FiniteGraph(1, (0,)),)
    seen: dict[str, FiniteGraph] = {}
    for g in enumerate_unlabeled(k - 1):
        for nb in range(1 << (k - 1)):
            rows = [r | ((nb >> i & 1) << (k - 1)) for i, r in enumerate(g.rows)]
            rows.append(nb)
            h = FiniteGraph(k, tuple(rows))
            form = canonical_form(h)
            if form not in seen:
                seen[form] = canonical_representative(h)
    return tuple(seen[f] for f in sorted(seen))


def pattern_orbit_table(pattern: FiniteGraph) -> "list[bool]":
    """Boolean table over all upper-triangle masks of the pattern's order:
    True where the mask is a labeled copy of the pattern.  Capped at order
    7 to keep the table (2^C(r,2) entries) desk-sized."""
    r = pattern.order
    if r > 7:
        raise ValueError("orbit table supported up to order 7")
    table = [False] * (1 << (r * (r - 1) // 2))
    for perm in permutations(range(r)):
        table[upper_mask(relabel(pattern, perm))] = True
    return table


def contains_induced_copy(g: FiniteGraph, pattern: FiniteGraph) -> bool:
    """Exhaustive check that g has an induced copy of the pattern."""
    r = pattern.order
    if r > g.order:
        return False
    table = pattern_orbit_table(pattern)
    for sub in combinations(range(g.order), r):
        if table[upper_mask(g.induced(sub))]:
            return True
    return False
