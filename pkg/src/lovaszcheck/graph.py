"""Core graph type, graph6 codec and BFS distance machinery.

Adjacency is stored as one Python ``int`` bitset per vertex; bit ``j`` of
``rows[i]`` is set iff ``{i, j}`` is an edge.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Sequence

MAX_VERTICES = 512
INF = math.inf

GRAPH6_HEADER = ">>graph6<<"


def bits(mask: int) -> Iterable[int]:
    """Yield the indices of set bits of ``mask`` in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def popcount(mask: int) -> int:
    return bin(mask).count("1")


@dataclass(frozen=True)
class Graph:
    """Immutable simple undirected graph on vertices ``0..n-1``."""

    n: int
    rows: tuple[int, ...]
    edges: tuple[tuple[int, int], ...] = field(init=False, compare=False)
    nbrs: tuple[tuple[int, ...], ...] = field(init=False, compare=False, repr=False)

    def __post_init__(self):
        if self.n < 0 or self.n > MAX_VERTICES:
            raise ValueError(f"vertex count {self.n} outside 0..{MAX_VERTICES}")
        if len(self.rows) != self.n:
            raise ValueError("need exactly one adjacency row per vertex")
        full = (1 << self.n) - 1
        for i, row in enumerate(self.rows):
            if row & ~full:
                raise ValueError(f"row {i} has bits beyond vertex {self.n - 1}")
            if row >> i & 1:
                raise ValueError(f"self-loop at vertex {i}")
            for j in bits(row):
                if not self.rows[j] >> i & 1:
                    raise ValueError(f"adjacency not symmetric at ({i}, {j})")
        edges = tuple(
            (i, j) for i in range(self.n) for j in bits(self.rows[i] >> (i + 1) << (i + 1))
        )
        object.__setattr__(self, "edges", edges)
        object.__setattr__(self, "nbrs", tuple(tuple(bits(r)) for r in self.rows))

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        rows = [0] * n
        for u, v in edges:
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u}, {v}) out of range for n={n}")
            rows[u] |= 1 << v
            rows[v] |= 1 << u
        return cls(n, tuple(rows))

    @property
    def m(self) -> int:
        return len(self.edges)

    @property
    def all_mask(self) -> int:
        return (1 << self.n) - 1

    def degree(self, v: int) -> int:
        return len(self.nbrs[v])

    def degrees(self) -> list[int]:
        return [len(nb) for nb in self.nbrs]

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.rows[u] >> v & 1)

    def regular_degree(self) -> int | None:
        degs = set(self.degrees())
        return degs.pop() if len(degs) == 1 else None

    def is_cubic(self) -> bool:
        return self.n > 0 and self.regular_degree() == 3

    def relabel(self, perm: Sequence[int]) -> "Graph":
        """Return the image graph with vertex ``v`` renamed ``perm[v]``."""
        return Graph.from_edges(self.n, ((perm[u], perm[v]) for u, v in self.edges))


# -- named small graphs -----------------------------------------------------


def cycle_graph(n: int) -> Graph:
    return Graph.from_edges(n, ((i, (i + 1) % n) for i in range(n)))


def path_graph(n: int) -> Graph:
    return Graph.from_edges(n, ((i, i + 1) for i in range(n - 1)))


def complete_graph(n: int) -> Graph:
    return Graph.from_edges(n, ((i, j) for i in range(n) for j in range(i + 1, n)))


def empty_graph(n: int) -> Graph:
    return Graph(n, (0,) * n)


def star_graph(leaves: int) -> Graph:
    return Graph.from_edges(leaves + 1, ((0, i) for i in range(1, leaves + 1)))


def petersen_graph() -> Graph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return Graph.from_edges(10, outer + spokes + inner)


# -- graph6 -------------------------------------------------------------------


class Graph6Error(ValueError):
    """Malformed graph6 input; ``offset`` is the byte position of the fault."""

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (byte {offset})")
        self.offset = offset


class Graph6HeaderError(Graph6Error):
    pass


class Graph6ByteError(Graph6Error):
    pass


class Graph6TruncatedError(Graph6Error):
    pass


class Graph6SizeError(Graph6Error):
    pass


def _decode_size(data: bytes, start: int) -> tuple[int, int]:
    """Return ``(n, offset of first adjacency byte)``."""
    if start >= len(data):
        raise Graph6HeaderError("empty graph6 record", start)
    first = data[start]
    if first < 63 or first > 126:
        raise Graph6ByteError(f"byte {first} outside printable range 63..126", start)
    if first != 126:
        return first - 63, start + 1
    if start + 1 < len(data) and data[start + 1] == 126:
        width, body = 6, start + 2
    else:
        width, body = 3, start + 1
    if body + width > len(data):
        raise Graph6HeaderError("truncated vertex-count field", len(data))
    n = 0
    for k in range(width):
        b = data[body + k]
        if b < 63 or b > 126:
            raise Graph6ByteError(f"byte {b} outside printable range 63..126", body + k)
        n = (n << 6) | (b - 63)
    return n, body + width


def parse_graph6(text: str | bytes, cap: int = MAX_VERTICES) -> Graph:
    """Decode one graph6 record (optionally prefixed by ``>>graph6<<``)."""
    data = text.encode("ascii", errors="replace") if isinstance(text, str) else bytes(text)
    data = data.rstrip(b"\r\n")
    start = len(GRAPH6_HEADER) if data.startswith(GRAPH6_HEADER.encode()) else 0
    n, pos = _decode_size(data, start)
    if n > cap:
        raise Graph6SizeError(f"graph has {n} vertices, cap is {cap}", start)
    nbits = n * (n - 1) // 2
    nbytes = (nbits + 5) // 6
    if len(data) - pos < nbytes:
        raise Graph6TruncatedError(
            f"expected {nbytes} adjacency bytes, found {len(data) - pos}", len(data)
        )
    if len(data) - pos > nbytes:
        raise Graph6TruncatedError("trailing bytes after adjacency data", pos + nbytes)
    rows = [0] * n
    k = 0
    i, j = 0, 1
    for off in range(pos, pos + nbytes):
        b = data[off]
        if b < 63 or b > 126:
            raise Graph6ByteError(f"byte {b} outside printable range 63..126", off)
        val = b - 63
        for shift in range(5, -1, -1):
            if k >= nbits:
                break
            if val >> shift & 1:
                rows[i] |= 1 << j
                rows[j] |= 1 << i
            k += 1
            i += 1
            if i == j:
                i, j = 0, j + 1
    return Graph(n, tuple(rows))


def write_graph6(g: Graph, header: bool = False) -> str:
    """Encode ``g`` as a graph6 string (no trailing newline)."""
    n = g.n
    if n <= 62:
        out = [chr(63 + n)]
    else:
        out = [chr(126)] + [chr(63 + (n >> s & 63)) for s in (12, 6, 0)]
    acc, nacc = 0, 0
    for j in range(1, n):
        row = g.rows[j]
        for i in range(j):
            acc = (acc << 1) | (row >> i & 1)
            nacc += 1
            if nacc == 6:
                out.append(chr(63 + acc))
                acc, nacc = 0, 0
    if nacc:
        out.append(chr(63 + (acc << (6 - nacc))))
    s = "".join(out)
    return GRAPH6_HEADER + s if header else s


# -- distances ----------------------------------------------------------------


@dataclass(frozen=True)
class LevelDecomposition:
    root: int
    dist: tuple[float, ...]
    levels: tuple[frozenset[int], ...]

    def level_sizes(self) -> list[int]:
        return [len(lv) for lv in self.levels]

    def level_of(self, v: int) -> float:
        return self.dist[v]


def bfs_distances(g: Graph, root: int) -> list[float]:
    dist: list[float] = [INF] * g.n
    dist[root] = 0
    queue = deque([root])
    nbrs = g.nbrs
    while queue:
        u = queue.popleft()
        du = dist[u] + 1
        for w in nbrs[u]:
            if dist[w] == INF:
                dist[w] = du
                queue.append(w)
    return dist


def bfs_levels(g: Graph, root: int) -> LevelDecomposition:
    if not 0 <= root < g.n:
        raise ValueError(f"root {root} out of range")
    dist = bfs_distances(g, root)
    depth = max(int(d) for d in dist if d != INF)
    levels: list[set[int]] = [set() for _ in range(depth + 1)]
    for v, d in enumerate(dist):
        if d != INF:
            levels[int(d)].add(v)
    return LevelDecomposition(root, tuple(dist), tuple(frozenset(lv) for lv in levels))


def distance_matrix(g: Graph) -> list[list[float]]:
    return [bfs_distances(g, v) for v in range(g.n)]


def is_connected(g: Graph) -> bool:
    return g.n == 0 or INF not in bfs_distances(g, 0)


def girth(g: Graph) -> float:
    """Length of a shortest cycle, ``inf`` for forests."""
    best = INF
    nbrs = g.nbrs
    for root in range(g.n):
        dist = [-1] * g.n
        parent = [-1] * g.n
        dist[root] = 0
        queue = deque([root])
        while queue:
            u = queue.popleft()
            if 2 * dist[u] + 1 >= best:
                break
            for w in nbrs[u]:
                if dist[w] < 0:
                    dist[w] = dist[u] + 1
                    parent[w] = u
                    queue.append(w)
                elif w != parent[u]:
                    best = min(best, dist[u] + dist[w] + 1)
    return best


@dataclass(frozen=True)
class DistanceInvariants:
    regular_degree: int | None
    girth: float
    diameter: float
    intersection_array: tuple[tuple[int, ...], tuple[int, ...]] | None

    def as_dict(self) -> dict:
        def fin(x):
            return None if x == INF else int(x)

        arr = self.intersection_array
        return {
            "regular_degree": self.regular_degree,
            "girth": fin(self.girth),
            "diameter": fin(self.diameter),
            "intersection_array": None if arr is None else [list(arr[0]), list(arr[1])],
        }


def intersection_array(g: Graph, dmat: list[list[float]] | None = None):
    """Return ``(b, c)`` if ``g`` is connected and distance-regular, else None."""
    if g.n == 0 or not is_connected(g):
        return None
    dmat = dmat if dmat is not None else distance_matrix(g)
    diam = int(max(max(row) for row in dmat))
    b: list[int | None] = [None] * (diam + 1)
    c: list[int | None] = [None] * (diam + 1)
    for root in range(g.n):
        dr = dmat[root]
        for v in range(g.n):
            i = int(dr[v])
            up = down = 0
            for w in g.nbrs[v]:
                if dr[w] == i + 1:
                    up += 1
                elif dr[w] == i - 1:
                    down += 1
            if b[i] is None:
                b[i], c[i] = up, down
            elif b[i] != up or c[i] != down:
                return None
    return tuple(b[:diam]), tuple(c[1:])


def distance_invariants(g: Graph) -> DistanceInvariants:
    connected = g.n > 0 and is_connected(g)
    dmat = distance_matrix(g) if connected else None
    diameter = int(max(max(row) for row in dmat)) if connected else INF
    arr = intersection_array(g, dmat) if connected else None
    return DistanceInvariants(g.regular_degree(), girth(g), diameter, arr)


def delete_vertices(g: Graph, removed: Iterable[int]) -> tuple[Graph, list[int]]:
    """Induced subgraph on the remaining vertices.

    Returns the new graph and ``old_index``, where ``old_index[new] = old``.
    """
    removed = set(removed)
    bad = [v for v in removed if not 0 <= v < g.n]
    if bad:
        raise ValueError(f"vertices {bad} not in graph")
    keep = [v for v in range(g.n) if v not in removed]
    new_index = {old: new for new, old in enumerate(keep)}
    edges = [(new_index[u], new_index[v]) for u, v in g.edges if u in new_index and v in new_index]
    return Graph.from_edges(len(keep), edges), keep


def geodesic_count(g: Graph, root: int) -> tuple[list[float], list[int]]:
    """BFS distances from ``root`` and the number of shortest paths to each vertex."""
    dist = bfs_distances(g, root)
    order = sorted((v for v in range(g.n) if dist[v] != INF), key=lambda v: dist[v])
    count = [0] * g.n
    count[root] = 1
    for v in order:
        if v == root:
            continue
        count[v] = sum(count[w] for w in g.nbrs[v] if dist[w] == dist[v] - 1)
    return dist, count


def is_path(g: Graph, seq: Sequence[int]) -> bool:
    """True iff ``seq`` lists distinct vertices joined consecutively by edges."""
    return len(set(seq)) == len(seq) and all(
        g.has_edge(seq[k], seq[k + 1]) for k in range(len(seq) - 1)
    )


def is_cycle(g: Graph, seq: Sequence[int]) -> bool:
    return len(seq) >= 3 and is_path(g, seq) and g.has_edge(seq[-1], seq[0])
