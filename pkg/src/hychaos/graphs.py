"""Small directed-graph routines over adjacency rows stored as bit masks.

Graphs here are tiny (symbols of a shift, or words at a low level), so the
routines favour exactness and determinism over asymptotics.
"""

from __future__ import annotations

from math import gcd

from .metric import iter_bits


def out_masks(matrix) -> tuple[int, ...]:
    """Adjacency rows of a 0/1 matrix as bit masks."""
    rows = []
    for row in matrix:
        mask = 0
        for j, v in enumerate(row):
            if v:
                mask |= 1 << j
        rows.append(mask)
    return tuple(rows)


def transpose_masks(adj: tuple[int, ...]) -> tuple[int, ...]:
    n = len(adj)
    cols = [0] * n
    for i in range(n):
        for j in iter_bits(adj[i]):
            cols[j] |= 1 << i
    return tuple(cols)


def step_mask(adj: tuple[int, ...], frontier: int) -> int:
    """One-step successor set of a vertex set."""
    out = 0
    for i in iter_bits(frontier):
        out |= adj[i]
    return out


def forward_closure(adj: tuple[int, ...], start: int) -> int:
    """Vertices reachable from ``start`` in one or more steps."""
    seen = 0
    frontier = step_mask(adj, start)
    while frontier & ~seen:
        seen |= frontier
        frontier = step_mask(adj, frontier)
    return seen


def exact_reach(adj: tuple[int, ...], start: int, steps: int) -> int:
    """Vertex set reachable from ``start`` in exactly ``steps`` steps."""
    frontier = start
    for _ in range(steps):
        frontier = step_mask(adj, frontier)
        if not frontier:
            break
    return frontier


def bool_mat_mul(a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, ...]:
    return tuple(step_mask(b, row) for row in a)


def bool_mat_power(adj: tuple[int, ...], exponent: int) -> tuple[int, ...]:
    n = len(adj)
    result = tuple(1 << i for i in range(n))  # identity
    base = adj
    e = exponent
    while e:
        if e & 1:
            result = bool_mat_mul(result, base)
        base = bool_mat_mul(base, base)
        e >>= 1
    return result


def all_positive(adj: tuple[int, ...]) -> bool:
    full = (1 << len(adj)) - 1
    return all(row == full for row in adj)


def is_strongly_connected(adj: tuple[int, ...]) -> tuple[bool, tuple[int, int] | None]:
    """Strong connectivity; on failure returns a witness pair (src, dst) with
    dst unreachable from src."""
    n = len(adj)
    for i in range(n):
        reach = forward_closure(adj, 1 << i)
        missing = ((1 << n) - 1) & ~reach
        if missing:
            j = next(iter_bits(missing))
            return False, (i, j)
    return True, None


def scc_closure_failure(adj: tuple[int, ...]) -> tuple[int, int] | None:
    """First ordered pair (a, b) with b reachable from a but a not from b.

    ``None`` means reachability is symmetric, i.e. the graph is a disjoint
    union of strongly connected pieces with no cross edges.
    """
    n = len(adj)
    reach = [forward_closure(adj, 1 << i) for i in range(n)]
    for a in range(n):
        for b in iter_bits(reach[a]):
            if not (reach[b] >> a) & 1:
                return a, b
    return None


def graph_period(adj: tuple[int, ...]) -> int:
    """Gcd of cycle lengths of a strongly connected graph.

    Computed from breadth-first levels: every edge u -> v contributes
    level(u) + 1 - level(v) to the gcd.
    """
    n = len(adj)
    level = [-1] * n
    level[0] = 0
    frontier = [0]
    while frontier:
        nxt = []
        for u in frontier:
            for v in iter_bits(adj[u]):
                if level[v] < 0:
                    level[v] = level[u] + 1
                    nxt.append(v)
        frontier = nxt
    period = 0
    for u in range(n):
        for v in iter_bits(adj[u]):
            period = gcd(period, level[u] + 1 - level[v])
    return abs(period) if period else 0


def cyclic_classes(adj: tuple[int, ...], period: int) -> tuple[tuple[int, ...], ...]:
    """Partition of a strongly connected graph into ``period`` classes that
    every edge advances by one (mod period)."""
    n = len(adj)
    cls = [-1] * n
    cls[0] = 0
    frontier = [0]
    while frontier:
        nxt = []
        for u in frontier:
            for v in iter_bits(adj[u]):
                if cls[v] < 0:
                    cls[v] = (cls[u] + 1) % period
                    nxt.append(v)
        frontier = nxt
    groups = [[] for _ in range(period)]
    for v in range(n):
        groups[cls[v]].append(v)
    return tuple(tuple(g) for g in groups)


def shortest_path(adj: tuple[int, ...], src: int, dst: int) -> list[int] | None:
    """Shortest path from src to dst using at least one edge.

    Neighbours are scanned in index order, so among shortest paths the
    lexicographically smallest is returned.  The path includes both endpoints.
    """
    seen = set()
    queue = [(s, [src, s]) for s in iter_bits(adj[src])]
    while queue:
        nxt = []
        for vertex, path in queue:
            if vertex == dst:
                return path
            if vertex in seen:
                continue
            seen.add(vertex)
            for s in iter_bits(adj[vertex]):
                if s not in seen:
                    nxt.append((s, path + [s]))
        queue = nxt
    return None
