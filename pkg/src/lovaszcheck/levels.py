"""Level-set properties of a distance-regular graph with array
(3,2,2,2,1,1,1; 1,1,1,1,1,1,3), checked from every root.

Parts:
  1. for 1 <= i < 7 each vertex of D_i has exactly one neighbour in D_{i-1}
  2. for i < 7 each vertex of D_i has exactly one geodesic to the root
  3. D_i is independent for i <= 3 and for i = 7
  4. D_i (4 <= i <= 6) is non-empty and induces a perfect matching on itself
  5. no two vertices of D_7 share a neighbour
  6. for 5 <= i <= 7, z in D_i and each down-neighbour x of z, the neighbour
     of x off the geodesic through x and z lies in D_{i-1}
  7. on every 9-cycle through the root, each cycle vertex at distance 4 has
     its off-cycle neighbour in D_5
"""

from __future__ import annotations

from .graph import Graph, geodesic_count
from .report import VerificationReport

PART_NAMES = {
    1: "unique down-neighbour",
    2: "unique geodesic",
    3: "independent levels",
    4: "levels induce a matching",
    5: "no common neighbour in top level",
    6: "sibling of last geodesic vertex stays in level",
    7: "9-cycle off-neighbour in level 5",
}


def cycles_through(g: Graph, root: int, length: int) -> list[list[int]]:
    """All cycles of the given length through ``root``, one orientation each."""
    out = []
    nbrs = g.nbrs
    path = [root]
    on_path = {root}

    def extend():
        cur = path[-1]
        if len(path) == length:
            if root in nbrs[cur] and path[1] < path[-1]:
                out.append(list(path))
            return
        for w in nbrs[cur]:
            if w not in on_path:
                path.append(w)
                on_path.add(w)
                extend()
                path.pop()
                on_path.discard(w)

    extend()
    return out


def verify_level_set_properties(g: Graph, names=None, parts=range(1, 8)) -> VerificationReport:
    name = names or (lambda v: v)
    rep = VerificationReport("level-set properties (1)-(7)")
    parts = set(parts)
    per_part = {p: 0 for p in parts}

    def check(part, ok, **w):
        per_part[part] += 1
        rep.expect(ok, part=part, **w)

    for v in range(g.n):
        dist, count = geodesic_count(g, v)
        depth = max(int(d) for d in dist if d != float("inf"))
        levels = [set() for _ in range(max(depth, 7) + 1)]
        for x, d in enumerate(dist):
            if d != float("inf"):
                levels[int(d)].add(x)

        def down(x):
            return [w for w in g.nbrs[x] if dist[w] == dist[x] - 1]

        if 1 in parts:
            for i in range(1, 7):
                for x in levels[i]:
                    check(1, len(down(x)) == 1, root=name(v), vertex=name(x), level=i)
        if 2 in parts:
            for i in range(0, 7):
                for x in levels[i]:
                    check(2, count[x] == 1, root=name(v), vertex=name(x), geodesics=count[x])
        if 3 in parts:
            for i in (0, 1, 2, 3, 7):
                for x in levels[i]:
                    inside = [w for w in g.nbrs[x] if w in levels[i]]
                    check(3, not inside, root=name(v), vertex=name(x), level=i)
        if 4 in parts:
            for i in (4, 5, 6):
                check(4, bool(levels[i]), root=name(v), level=i, problem="empty level")
                for x in levels[i]:
                    inside = [w for w in g.nbrs[x] if w in levels[i]]
                    check(4, len(inside) == 1, root=name(v), vertex=name(x), level=i)
        if 5 in parts:
            seen: dict[int, int] = {}
            for x in levels[7]:
                for w in g.nbrs[x]:
                    other = seen.get(w)
                    check(5, other is None, root=name(v), vertex=name(x),
                          common=name(w), other=None if other is None else name(other))
                    seen[w] = x
        if 6 in parts:
            for i in (5, 6, 7):
                for z in levels[i]:
                    for x in down(z):
                        parent = down(x)
                        rest = [y for y in g.nbrs[x] if y != z and y not in parent]
                        check(6, bool(rest) and all(dist[y] == i - 1 for y in rest),
                              root=name(v), z=name(z), x=name(x))
        if 7 in parts:
            for cyc in cycles_through(g, v, 9):
                on = set(cyc)
                for z in cyc:
                    if dist[z] != 4:
                        continue
                    off = [w for w in g.nbrs[z] if w not in on]
                    check(7, bool(off) and all(dist[w] == 5 for w in off),
                          root=name(v), cycle=[name(c) for c in cyc], vertex=name(z))
    rep.details["checks_per_part"] = per_part
    rep.details["failed_parts"] = sorted({f["part"] for f in rep.failures})
    return rep
