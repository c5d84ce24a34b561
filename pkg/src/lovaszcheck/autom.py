"""Automorphism groups by individualization-refinement, and edge-pair symmetry.

The group search follows the classic first-path scheme: refine the degree
partition to an equitable one, descend by individualizing a vertex of the
first smallest non-singleton cell until the partition is discrete, then, level
by level from the bottom, look for a leaf below every other vertex of that
level's target cell that yields an automorphism.  Vertices already in the
orbit of the first-path vertex (under generators found so far, all of which
fix the earlier base points) are skipped.  The group order is the product of
the base-point orbit sizes.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Sequence

from .graph import Graph, bits, distance_matrix, popcount

Permutation = tuple[int, ...]


class SearchBudgetExceeded(RuntimeError):
    pass


def check_permutation(p: Sequence[int], n: int) -> None:
    if len(p) != n or sorted(p) != list(range(n)):
        raise ValueError("not a bijection on the vertex set")


def is_automorphism(g: Graph, p: Sequence[int]) -> bool:
    check_permutation(p, g.n)
    return all(g.has_edge(p[u], p[v]) for u, v in g.edges)


def compose(p: Sequence[int], q: Sequence[int]) -> Permutation:
    """``p`` after ``q``: ``v -> p[q[v]]``."""
    return tuple(p[x] for x in q)


def inverse(p: Sequence[int]) -> Permutation:
    inv = [0] * len(p)
    for i, x in enumerate(p):
        inv[x] = i
    return tuple(inv)


def cycle_notation(p: Sequence[int], names=None) -> str:
    name = names or str
    seen = set()
    out = []
    for i in range(len(p)):
        if i in seen or p[i] == i:
            continue
        cyc = [i]
        seen.add(i)
        j = p[i]
        while j != i:
            seen.add(j)
            cyc.append(j)
            j = p[j]
        out.append("(" + " ".join(name(v) for v in cyc) + ")")
    return "".join(out) or "()"


class _UnionFind:
    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, x: int) -> int:
        parent = self.parent
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(self, a: int, b: int) -> None:
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            if ra < rb:
                self.parent[rb] = ra
            else:
                self.parent[ra] = rb

    def classes(self) -> list[list[int]]:
        groups: dict[int, list[int]] = {}
        for x in range(len(self.parent)):
            groups.setdefault(self.find(x), []).append(x)
        return sorted(groups.values())


def orbits(n: int, generators: Sequence[Sequence[int]]) -> list[list[int]]:
    uf = _UnionFind(n)
    for p in generators:
        for v in range(n):
            uf.union(v, p[v])
    return uf.classes()


def orbit_of(point: int, generators: Sequence[Sequence[int]]) -> set[int]:
    orb = {point}
    stack = [point]
    while stack:
        x = stack.pop()
        for p in generators:
            y = p[x]
            if y not in orb:
                orb.add(y)
                stack.append(y)
    return orb


def edge_orbits(g: Graph, generators: Sequence[Sequence[int]]) -> list[list[tuple[int, int]]]:
    index = {e: k for k, e in enumerate(g.edges)}
    uf = _UnionFind(g.m)
    for p in generators:
        for k, (u, v) in enumerate(g.edges):
            a, b = p[u], p[v]
            uf.union(k, index[(a, b) if a < b else (b, a)])
    return [[g.edges[k] for k in cls] for cls in uf.classes()]


# -- refinement -----------------------------------------------------------------


def refine(g: Graph, cells: list[tuple[int, ...]]) -> list[tuple[int, ...]]:
    """Coarsest equitable refinement, splitting by neighbour counts into each cell.

    Fragments replace their parent cell in place, ordered by increasing count,
    so the result is isomorphism-invariant.
    """
    rows = g.rows
    cells = list(cells)
    k = 0
    while k < len(cells):
        wmask = 0
        for v in cells[k]:
            wmask |= 1 << v
        out: list[tuple[int, ...]] = []
        split = False
        for cell in cells:
            if len(cell) == 1:
                out.append(cell)
                continue
            groups: dict[int, list[int]] = {}
            for v in cell:
                groups.setdefault(popcount(rows[v] & wmask), []).append(v)
            if len(groups) == 1:
                out.append(cell)
            else:
                split = True
                out.extend(tuple(groups[c]) for c in sorted(groups))
        if split:
            cells = out
            k = 0
        else:
            k += 1
    return cells


def individualize(cells: list[tuple[int, ...]], v: int) -> list[tuple[int, ...]]:
    out = []
    for cell in cells:
        if v in cell:
            out.append((v,))
            rest = tuple(x for x in cell if x != v)
            if rest:
                out.append(rest)
        else:
            out.append(cell)
    return out


def target_cell(cells: list[tuple[int, ...]]) -> int:
    best, best_len = -1, None
    for i, cell in enumerate(cells):
        if len(cell) > 1 and (best_len is None or len(cell) < best_len):
            best, best_len = i, len(cell)
    return best


def _shape(cells) -> tuple[int, ...]:
    return tuple(len(c) for c in cells)


@dataclass
class GroupDescription:
    n: int
    generators: list[Permutation]
    order: int
    base: list[int]
    basic_orbit_sizes: list[int]
    vertex_orbits: list[list[int]]
    edge_orbits: list[list[tuple[int, int]]]
    nodes: int = 0

    @property
    def is_vertex_transitive(self) -> bool:
        return len(self.vertex_orbits) == 1

    @property
    def is_edge_transitive(self) -> bool:
        return len(self.edge_orbits) <= 1


def automorphism_group(g: Graph, node_budget: int | None = None) -> GroupDescription:
    """Generators, exact order and orbits of Aut(g).

    Raises ``SearchBudgetExceeded`` if more than ``node_budget`` refinement
    nodes are needed.
    """
    n = g.n
    nodes = 0

    def tick():
        nonlocal nodes
        nodes += 1
        if node_budget is not None and nodes > node_budget:
            raise SearchBudgetExceeded(f"automorphism search exceeded {node_budget} nodes")

    by_degree: dict[int, list[int]] = {}
    for v in range(n):
        by_degree.setdefault(g.degree(v), []).append(v)
    start = refine(g, [tuple(by_degree[d]) for d in sorted(by_degree)]) if n else []

    # first path
    path_parts = [start]
    path_targets: list[int] = []
    base: list[int] = []
    cur = start
    while True:
        tick()
        t = target_cell(cur)
        if t < 0:
            break
        v = cur[t][0]
        path_targets.append(t)
        base.append(v)
        cur = refine(g, individualize(cur, v))
        path_parts.append(cur)
    first_leaf = [c[0] for c in cur]
    shapes = [_shape(p) for p in path_parts]

    def leaf_perm(leaf_cells) -> Permutation:
        p = [0] * n
        for a, c in zip(first_leaf, leaf_cells):
            p[a] = c[0]
        return tuple(p)

    def explore(cells, level) -> Permutation | None:
        """Search below ``cells`` (at depth ``level``) for a leaf giving an automorphism."""
        tick()
        if _shape(cells) != shapes[level]:
            return None
        t = target_cell(cells)
        if t < 0:
            p = leaf_perm(cells)
            return p if is_automorphism(g, p) else None
        if t != path_targets[level]:
            return None
        for w in cells[t]:
            found = explore(refine(g, individualize(cells, w)), level + 1)
            if found is not None:
                return found
        return None

    generators: list[Permutation] = []
    orbit_sizes = [0] * len(base)
    for level in range(len(base) - 1, -1, -1):
        parent = path_parts[level]
        b = base[level]
        orb = orbit_of(b, generators)
        for w in parent[path_targets[level]]:
            if w in orb:
                continue
            found = explore(refine(g, individualize(parent, w)), level + 1)
            if found is not None:
                generators.append(found)
                orb = orbit_of(b, generators)
        orbit_sizes[level] = len(orb)

    order = 1
    for s in orbit_sizes:
        order *= s
    return GroupDescription(
        n=n,
        generators=generators,
        order=order,
        base=base,
        basic_orbit_sizes=orbit_sizes,
        vertex_orbits=orbits(n, generators),
        edge_orbits=edge_orbits(g, generators),
        nodes=nodes,
    )


def pair_orbits_by_distance(g: Graph, group: GroupDescription, dmat=None) -> dict[int, int]:
    """Number of orbits on ordered vertex pairs at each finite distance."""
    n = g.n
    dmat = dmat or distance_matrix(g)
    uf = _UnionFind(n * n)
    for p in group.generators:
        for u in range(n):
            pu = p[u] * n
            for v in range(n):
                uf.union(u * n + v, pu + p[v])
    per_d: dict[int, set[int]] = {}
    for u in range(n):
        for v in range(n):
            d = dmat[u][v]
            if d != float("inf"):
                per_d.setdefault(int(d), set()).add(uf.find(u * n + v))
    return {d: len(s) for d, s in sorted(per_d.items())}


# -- edge-pair profiles ---------------------------------------------------------------


@dataclass(frozen=True)
class PairProfile:
    d_ux: int
    d_uy: int
    d_vx: int
    d_vy: int
    canonical: tuple[int, int, int, int]

    @property
    def exact(self) -> tuple[int, int, int, int]:
        return (self.d_ux, self.d_uy, self.d_vx, self.d_vy)


def canonical_profile(t: tuple[int, int, int, int]) -> tuple[int, int, int, int]:
    """Lexicographic minimum over swapping inside each edge and swapping the edges."""
    a, b, c, d = t  # rows = endpoints of e, columns = endpoints of f
    forms = []
    for m in (((a, b), (c, d)), ((a, c), (b, d))):  # identity, transpose
        for r in (m, (m[1], m[0])):
            for rr in (r, ((r[0][1], r[0][0]), (r[1][1], r[1][0]))):
                forms.append((rr[0][0], rr[0][1], rr[1][0], rr[1][1]))
    return min(forms)


def pair_profile(g: Graph, e: tuple[int, int], f: tuple[int, int], dmat=None) -> PairProfile:
    for u, v in (e, f):
        if not g.has_edge(u, v):
            raise ValueError(f"({u}, {v}) is not an edge")
    dmat = dmat or distance_matrix(g)
    (u, v), (x, y) = e, f
    t = (int(dmat[u][x]), int(dmat[u][y]), int(dmat[v][x]), int(dmat[v][y]))
    return PairProfile(*t, canonical=canonical_profile(t))


def verify_pair_transitivity(g: Graph, group: GroupDescription, dmat=None):
    """Each class of distance-equivalent edge pairs (and edge-vertex pairs) is one orbit."""
    from .report import VerificationReport

    dmat = dmat or distance_matrix(g)
    rep = VerificationReport("distance-equivalent edge pairs form single orbits")
    arcs = [(u, v) for u, v in g.edges] + [(v, u) for u, v in g.edges]
    arc_index = {a: k for k, a in enumerate(arcs)}
    na, n = len(arcs), g.n

    uf = _UnionFind(na * na)
    for p in group.generators:
        img = [arc_index[(p[u], p[v])] for u, v in arcs]
        for i in range(na):
            base_i, base_j = i * na, img[i] * na
            for j in range(na):
                uf.union(base_i + j, base_j + img[j])
    classes: dict[tuple, set[int]] = {}
    for i, (u, v) in enumerate(arcs):
        du, dv = dmat[u], dmat[v]
        for j, (x, y) in enumerate(arcs):
            key = (du[x], du[y], dv[x], dv[y])
            classes.setdefault(key, set()).add(uf.find(i * na + j))
    for key, roots in sorted(classes.items()):
        rep.expect(len(roots) == 1, kind="edge-pair", profile=list(map(int, key)), orbits=len(roots))

    uf2 = _UnionFind(na * n)
    for p in group.generators:
        img = [arc_index[(p[u], p[v])] for u, v in arcs]
        for i in range(na):
            for x in range(n):
                uf2.union(i * n + x, img[i] * n + p[x])
    ev_classes: dict[tuple, set[int]] = {}
    for i, (u, v) in enumerate(arcs):
        for x in range(n):
            ev_classes.setdefault((dmat[u][x], dmat[v][x]), set()).add(uf2.find(i * n + x))
    for key, roots in sorted(ev_classes.items()):
        rep.expect(len(roots) == 1, kind="edge-vertex", profile=list(map(int, key)), orbits=len(roots))

    # unordered pairs of distinct edges: canonical profiles vs group orbits
    m = g.m
    pair_index = {}
    pairs = list(combinations(range(m), 2))
    for k, pr in enumerate(pairs):
        pair_index[pr] = k
    edge_index = {e: k for k, e in enumerate(g.edges)}
    uf3 = _UnionFind(len(pairs))
    for p in group.generators:
        eimg = []
        for u, v in g.edges:
            a, b = p[u], p[v]
            eimg.append(edge_index[(a, b) if a < b else (b, a)])
        for k, (i, j) in enumerate(pairs):
            a, b = eimg[i], eimg[j]
            uf3.union(k, pair_index[(a, b) if a < b else (b, a)])
    canon = set()
    for i, j in pairs:
        (u, v), (x, y) = g.edges[i], g.edges[j]
        canon.add(canonical_profile((int(dmat[u][x]), int(dmat[u][y]), int(dmat[v][x]), int(dmat[v][y]))))
    n_orbits = len({uf3.find(k) for k in range(len(pairs))})
    rep.details.update(
        ordered_pair_classes=len(classes),
        edge_vertex_classes=len(ev_classes),
        unordered_canonical_classes=len(canon),
        unordered_pair_orbits=n_orbits,
    )
    rep.expect(len(canon) == n_orbits, kind="unordered-count",
               canonical=len(canon), orbits=n_orbits)
    return rep


# letter -> cycle step in the Biggs-Smith H-expansion
_STEPS = {"a": 1, "b": 4, "c": 2, "d": 8}
MULTIPLIERS = (1, 2, 4, 8)


def residue(x: int, n: int = 17) -> int:
    """Representative in 1..n (0 is written as n)."""
    return (x - 1) % n + 1


def letter_action(k: int, n: int = 17) -> dict[str, str]:
    """How ``i -> k*i`` permutes the letters: a step-s cycle becomes a step-(k*s) cycle."""
    by_step = {}
    for t, s in _STEPS.items():
        by_step[s % n] = t
        by_step[(-s) % n] = t
    out = {t: by_step[(k * s) % n] for t, s in _STEPS.items()}
    if out["a"] in "ab":
        out.update(e="e", f="f")
    else:
        out.update(e="f", f="e")
    return out


def index_maps(n: int = 17, multipliers=MULTIPLIERS):
    """All ``(shift, sign, k)`` with index map ``i -> shift + sign*k*i`` (mod n, in 1..n)."""
    for k in multipliers:
        for sign in (1, -1):
            for shift in range(n):
                yield shift, sign, k


def index_perm(shift: int, sign: int, k: int, n: int = 17) -> dict[int, int]:
    return {i: residue(shift + sign * k * i, n) for i in range(1, n + 1)}


def h_preserving_group(bs) -> list[Permutation]:
    """The 136 automorphisms permuting the H-sets: a dihedral map after ``i -> k*i``."""
    from .construct import LETTERS, vertex_index

    n = bs.n_sets
    perms = []
    for shift, sign, k in index_maps(n):
        imap = index_perm(shift, sign, k, n)
        lmap = letter_action(k, n)
        p = [0] * bs.graph.n
        for i in range(1, n + 1):
            for t in LETTERS:
                p[vertex_index(i, t)] = vertex_index(imap[i], lmap[t])
        perms.append(tuple(p))
    return perms
