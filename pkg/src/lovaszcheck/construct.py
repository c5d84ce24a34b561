"""H-graph expansions and the labelled Biggs-Smith graph.

Vertex ``i t`` (``i`` in ``1..n``, ``t`` in ``abcdef``) has index
``6*(i-1) + code(t)`` with ``a=0, ..., f=5``.  Inside each copy ``e`` is
joined to ``a``, ``b``, ``f`` and ``f`` to ``c``, ``d``; the leaves of letter
``t`` form a cycle joining ``i t`` to ``(i + offset_t) t``.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from functools import cached_property

from .graph import Graph, bfs_levels, bfs_distances, geodesic_count
from .report import VerificationReport

LETTERS = "abcdef"
LEAF_LETTERS = "abcd"
BIGGS_SMITH_N = 17
BIGGS_SMITH_OFFSETS = (1, 4, 2, 8)

_LABEL_RE = re.compile(r"^\s*(\d+)\s*([a-f])\s*$")


@dataclass(frozen=True)
class HExpansionSpec:
    n: int
    offsets: tuple[int, int, int, int]

    def validate(self) -> None:
        if self.n < 5 or self.n % 2 == 0:
            raise ValueError(f"number of H-copies must be odd and >= 5, got {self.n}")
        if len(self.offsets) != 4:
            raise ValueError("need exactly four offsets (a, b, c, d)")
        for t, o in zip(LEAF_LETTERS, self.offsets):
            if not 1 <= o <= self.n // 2:
                raise ValueError(f"{t}-offset {o} outside 1..{self.n // 2}")

    def split_cycles(self) -> list[str]:
        """Letters whose offset is not coprime to ``n`` (several short cycles)."""
        return [t for t, o in zip(LEAF_LETTERS, self.offsets) if math.gcd(o, self.n) != 1]


def vertex_index(i: int, t: str) -> int:
    return 6 * (i - 1) + LETTERS.index(t)


def build_h_expansion(spec: HExpansionSpec) -> Graph:
    spec.validate()
    n = spec.n
    edges = []
    for i in range(1, n + 1):
        e, f = vertex_index(i, "e"), vertex_index(i, "f")
        edges += [(e, f), (vertex_index(i, "a"), e), (vertex_index(i, "b"), e),
                  (vertex_index(i, "c"), f), (vertex_index(i, "d"), f)]
        for t, o in zip(LEAF_LETTERS, spec.offsets):
            j = (i - 1 + o) % n + 1
            edges.append((vertex_index(i, t), vertex_index(j, t)))
    return Graph.from_edges(6 * n, edges)


@dataclass(frozen=True)
class LabeledBS:
    graph: Graph
    n_sets: int = BIGGS_SMITH_N

    def index(self, label: str) -> int:
        m = _LABEL_RE.match(label)
        if not m:
            raise ValueError(f"bad vertex label {label!r}")
        i, t = int(m.group(1)), m.group(2)
        if not 1 <= i <= self.n_sets:
            raise ValueError(f"H-set index {i} outside 1..{self.n_sets}")
        return vertex_index(i, t)

    def label(self, v: int) -> str:
        return f"{self.hset(v)}{self.letter(v)}"

    def hset(self, v: int) -> int:
        return v // 6 + 1

    def letter(self, v: int) -> str:
        return LETTERS[v % 6]

    def part(self, v: int) -> str:
        return self.letter(v).upper()

    def idx(self, *labels: str) -> list[int]:
        return [self.index(s) for s in labels]

    def labels(self, vertices) -> list[str]:
        return [self.label(v) for v in sorted(vertices)]

    def label_map(self) -> dict[int, str]:
        return {v: self.label(v) for v in range(self.graph.n)}

    @cached_property
    def dist(self) -> list[list[float]]:
        return [bfs_distances(self.graph, v) for v in range(self.graph.n)]

    def d(self, x: str, y: str) -> float:
        return self.dist[self.index(x)][self.index(y)]


def build_biggs_smith() -> LabeledBS:
    return LabeledBS(build_h_expansion(HExpansionSpec(BIGGS_SMITH_N, BIGGS_SMITH_OFFSETS)))


def letter_cycle(bs: LabeledBS, t: str) -> list[int]:
    """Vertices of the ``t``-cycle in traversal order starting at ``1t``."""
    g = bs.graph
    start = bs.index(f"1{t}")
    order = [start]
    prev, cur = None, start
    while True:
        nxt = [w for w in g.nbrs[cur] if bs.letter(w) == t and w != prev]
        if not nxt or nxt[0] == start:
            break
        prev, cur = cur, nxt[0]
        order.append(cur)
    return order


def verify_acycle_geodesics(bs: LabeledBS) -> VerificationReport:
    rep = VerificationReport("a-cycle paths of length <= 7 are geodesics")
    n = bs.n_sets
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            cyc = min((i - j) % n, (j - i) % n)
            if cyc > 7:
                continue
            got = bs.d(f"{i}a", f"{j}a")
            rep.expect(got == cyc, pair=(f"{i}a", f"{j}a"), cyclic=cyc, distance=got)
    return rep


def geodesic_to_root(g: Graph, dist: list[float], x: int) -> list[int]:
    """The (unique, where levels have c_i = 1) descending path from ``x`` to the root."""
    path = [x]
    while dist[path[-1]] > 0:
        cur = path[-1]
        down = [w for w in g.nbrs[cur] if dist[w] == dist[cur] - 1]
        path.append(down[0])
    return path


def displaced_path(g: Graph, dist: list[float], x: int) -> list[int] | None:
    """Geodesic from ``x`` down to level 4, the intra-level edge there, then down to the root."""
    head = geodesic_to_root(g, dist, x)
    k = int(dist[x]) - 4
    z0 = head[k]
    mates = [w for w in g.nbrs[z0] if dist[w] == 4]
    if len(mates) != 1:
        return None
    return head[: k + 1] + geodesic_to_root(g, dist, mates[0])


def verify_displaced_paths(bs: LabeledBS) -> VerificationReport:
    g = bs.graph
    rep = VerificationReport("merging geodesics and disjoint 4-displaced paths")
    for u in range(g.n):
        dist, count = geodesic_count(g, u)
        lv = bfs_levels(g, u)
        for i in (4, 5, 6):
            level = lv.levels[i] if i < len(lv.levels) else frozenset()
            for x in sorted(level):
                mates = [y for y in g.nbrs[x] if y in level]
                rep.expect(len(mates) == 1, u=bs.label(u), x=bs.label(x), level=i,
                           problem="no unique intra-level edge")
                for y in mates:
                    if y < x:
                        continue
                    if count[x] != 1 or count[y] != 1:
                        rep.fail(u=bs.label(u), x=bs.label(x), y=bs.label(y),
                                 problem="geodesic not unique")
                        continue
                    px = geodesic_to_root(g, dist, x)
                    py = set(geodesic_to_root(g, dist, y))
                    meet = next(w for w in px if w in py)
                    rep.expect(dist[meet] == i - 4, u=bs.label(u), x=bs.label(x),
                               y=bs.label(y), meet=bs.label(meet), meet_level=dist[meet])
                    if i == 6:
                        qx = displaced_path(g, dist, x)
                        qy = displaced_path(g, dist, y)
                        ok = qx is not None and qy is not None and set(qx) & set(qy) == {u}
                        rep.expect(ok, u=bs.label(u), x=bs.label(x), y=bs.label(y),
                                   problem="4-displaced paths meet away from root")
    return rep
