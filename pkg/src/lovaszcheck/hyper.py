"""Line hypergraphs, 3-edge-colourings and the matching-number deletion checks.

For a graph G the line hypergraph L(G) has one vertex per edge of G and one
hyperedge per vertex v of G (the edges incident to v), so a matching of L(G)
is an independent set of G.  Deleting hypergraph vertices removes every
hyperedge through them, which gives

    nu(L(G) - {e, f}) = alpha(G - (V(e) | V(f)))

and reduces every deletion question to an ``alpha_avoiding`` call.
"""

from __future__ import annotations

import logging
import os
import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import combinations
from typing import Sequence

import networkx as nx

from .graph import Graph, bits, distance_matrix, is_connected, popcount
from .mis import MisSolver, alpha_avoiding
from .autom import canonical_profile, automorphism_group, SearchBudgetExceeded

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class Hypergraph:
    n_vertices: int
    edges: tuple[frozenset[int], ...]
    parts: tuple[frozenset[int], ...] | None = None

    def __post_init__(self):
        for e in self.edges:
            if any(not 0 <= x < self.n_vertices for x in e):
                raise ValueError("hyperedge refers to a missing vertex")

    @property
    def rank(self) -> int:
        return max((len(e) for e in self.edges), default=0)

    def is_uniform(self, r: int | None = None) -> bool:
        sizes = {len(e) for e in self.edges}
        return len(sizes) <= 1 and (r is None or sizes <= {r})

    def partition_valid(self, parts=None) -> bool:
        """Every edge meets every part exactly once."""
        parts = parts if parts is not None else self.parts
        if parts is None:
            return False
        covered = set().union(*parts) if parts else set()
        if covered != set(range(self.n_vertices)) or sum(map(len, parts)) != self.n_vertices:
            return False
        return all(len(e & p) == 1 for e in self.edges for p in parts)

    def delete_vertices(self, removed) -> "Hypergraph":
        """Drop the given vertices and every hyperedge containing one (indices are kept)."""
        removed = frozenset(removed)
        edges = tuple(e for e in self.edges if not e & removed)
        parts = None if self.parts is None else tuple(p - removed for p in self.parts)
        return Hypergraph(self.n_vertices, edges, parts)


@dataclass(frozen=True)
class LineHypergraph:
    base: Graph
    hyper: Hypergraph


def line_hypergraph(g: Graph) -> LineHypergraph:
    isolated = [v for v in range(g.n) if g.degree(v) == 0]
    if isolated:
        raise ValueError(f"isolated vertices {isolated} would give empty hyperedges")
    index = {e: k for k, e in enumerate(g.edges)}
    hedges = []
    for v in range(g.n):
        hedges.append(frozenset(index[(min(v, w), max(v, w))] for w in g.nbrs[v]))
    return LineHypergraph(g, Hypergraph(g.m, tuple(hedges)))


# -- Hamilton cycles and edge colourings ------------------------------------------


def hamilton_cycle(g: Graph, node_budget: int | None = None) -> list[int] | None:
    """A Hamiltonian cycle as a vertex list, or None if none exists.

    Depth-first path extension from vertex 0; a branch dies as soon as some
    unvisited vertex has fewer than two usable neighbours.  Raises
    ``SearchBudgetExceeded`` when the budget runs out.
    """
    n = g.n
    if n < 3 or not is_connected(g) or min(g.degrees()) < 2:
        return None
    rows = g.rows
    path = [0]
    visited = 1
    nodes = 0

    def viable(end: int) -> bool:
        free = ~visited & ((1 << n) - 1)
        ok_mask = free | (1 << end) | 1
        for w in bits(free):
            if popcount(rows[w] & ok_mask) < 2:
                return False
        return True

    def extend() -> bool:
        nonlocal visited, nodes
        nodes += 1
        if node_budget is not None and nodes > node_budget:
            raise SearchBudgetExceeded(f"Hamilton search exceeded {node_budget} nodes")
        end = path[-1]
        if len(path) == n:
            return bool(rows[end] & 1)
        free = ~visited & ((1 << n) - 1)
        nxt = sorted(bits(rows[end] & free), key=lambda w: (popcount(rows[w] & free), w))
        for w in nxt:
            path.append(w)
            visited |= 1 << w
            if viable(w) and extend():
                return True
            path.pop()
            visited &= ~(1 << w)
        return False

    return list(path) if extend() else None


def _coloring_from_cycle(g: Graph, cycle: Sequence[int]) -> dict[tuple[int, int], int]:
    colour = {}
    for k in range(len(cycle)):
        u, v = cycle[k], cycle[(k + 1) % len(cycle)]
        colour[(min(u, v), max(u, v))] = k % 2
    for e in g.edges:
        colour.setdefault(e, 2)
    return colour


def is_proper_edge_coloring(g: Graph, colour: dict[tuple[int, int], int]) -> bool:
    if set(colour) != set(g.edges):
        return False
    for v in range(g.n):
        seen = [colour[(min(v, w), max(v, w))] for w in g.nbrs[v]]
        if len(seen) != len(set(seen)):
            return False
    return True


def three_edge_coloring(g: Graph, node_budget: int | None = 2_000_000):
    """A proper 3-edge-colouring ``{edge: 0|1|2}`` of a cubic graph, or None."""
    if not g.is_cubic():
        raise ValueError("three_edge_coloring needs a cubic graph")
    if g.n % 2 == 0:
        try:
            cyc = hamilton_cycle(g, node_budget=20_000)
        except SearchBudgetExceeded:
            cyc = None
        if cyc is not None:
            colour = _coloring_from_cycle(g, cyc)
            if is_proper_edge_coloring(g, colour):
                return colour
    return _backtrack_coloring(g, node_budget)


def _backtrack_coloring(g: Graph, node_budget: int | None):
    # edges in BFS order so each new edge touches coloured ones
    order: list[tuple[int, int]] = []
    seen_e = set()
    seen_v = set()
    for root in range(g.n):
        if root in seen_v:
            continue
        queue = [root]
        seen_v.add(root)
        while queue:
            u = queue.pop(0)
            for w in g.nbrs[u]:
                e = (min(u, w), max(u, w))
                if e not in seen_e:
                    seen_e.add(e)
                    order.append(e)
                if w not in seen_v:
                    seen_v.add(w)
                    queue.append(w)
    used = [0] * g.n  # bitmask of colours at each vertex
    colour: dict[tuple[int, int], int] = {}
    nodes = 0

    def place(k: int) -> bool:
        nonlocal nodes
        nodes += 1
        if node_budget is not None and nodes > node_budget:
            raise SearchBudgetExceeded(f"edge colouring exceeded {node_budget} nodes")
        if k == len(order):
            return True
        u, v = order[k]
        for c in range(3):
            bit = 1 << c
            if used[u] & bit or used[v] & bit:
                continue
            used[u] |= bit
            used[v] |= bit
            colour[(u, v)] = c
            if place(k + 1):
                return True
            used[u] &= ~bit
            used[v] &= ~bit
            del colour[(u, v)]
        return False

    return dict(colour) if place(0) else None


def tripartite_line_hypergraph(g: Graph, colour=None) -> Hypergraph:
    """L(g) with parts given by the colour classes of a 3-edge-colouring."""
    colour = colour if colour is not None else three_edge_coloring(g)
    if colour is None:
        raise ValueError("graph has no 3-edge-colouring")
    lh = line_hypergraph(g).hyper
    index = {e: k for k, e in enumerate(g.edges)}
    parts = tuple(frozenset(index[e] for e, c in colour.items() if c == col) for col in range(3))
    return Hypergraph(lh.n_vertices, lh.edges, parts)


# -- matching and cover numbers -----------------------------------------------------


def hypergraph_matching_number(h: Hypergraph) -> int:
    """Exact nu by branch and bound over hyperedges (independent of the MIS engine)."""
    edges = [e for e in h.edges]
    m = len(edges)
    conflict = [0] * m
    for i in range(m):
        for j in range(m):
            if i != j and edges[i] & edges[j]:
                conflict[i] |= 1 << j
    # an empty hyperedge never conflicts; it can always be added
    best = 0

    def go(avail: int, size: int):
        nonlocal best
        if size > best:
            best = size
        if size + popcount(avail) <= best or not avail:
            return
        i = (avail & -avail).bit_length() - 1
        go(avail & ~conflict[i] & ~(1 << i), size + 1)
        go(avail & ~(1 << i), size)

    go((1 << m) - 1, 0)
    return best


def hypergraph_cover_number(h: Hypergraph, vertex_cap: int = 200) -> int:
    """Exact tau (minimum hitting set) by branch and bound.

    Branches on the unhit edge with fewest vertices; singleton edges therefore
    propagate first.  A disjoint packing of unhit edges is the lower bound.
    """
    if h.n_vertices > vertex_cap:
        raise ValueError(f"exact cover limited to {vertex_cap} vertices")
    if any(len(e) == 0 for e in h.edges):
        raise ValueError("an empty hyperedge cannot be covered")
    edges = [sum(1 << x for x in e) for e in h.edges]
    best = h.n_vertices + 1

    def packing_bound(unhit: list[int]) -> int:
        used = 0
        count = 0
        for e in sorted(unhit, key=popcount):
            if not e & used:
                used |= e
                count += 1
        return count

    def go(chosen: int, size: int):
        nonlocal best
        unhit = [e for e in edges if not e & chosen]
        if not unhit:
            best = min(best, size)
            return
        if size + packing_bound(unhit) >= best:
            return
        e = min(unhit, key=popcount)
        for x in bits(e):
            go(chosen | (1 << x), size + 1)

    go(0, 0)
    return best


def maximum_matching_size(g: Graph) -> int:
    nxg = nx.Graph()
    nxg.add_nodes_from(range(g.n))
    nxg.add_edges_from(g.edges)
    return len(nx.max_weight_matching(nxg, maxcardinality=True))


def matching_and_cover(h) -> tuple[int, int]:
    """``(nu, tau)``.  Line hypergraphs use alpha of the base and n - mu(base)."""
    if isinstance(h, LineHypergraph):
        nu = alpha_avoiding(h.base).size
        tau = h.base.n - maximum_matching_size(h.base)
        return nu, tau
    return hypergraph_matching_number(h), hypergraph_cover_number(h)


# -- deletion checks ---------------------------------------------------------------


@dataclass
class LovaszReport:
    alpha: int
    mode: str
    pairs_checked: int = 0
    pruned: int = 0
    failures: list[dict] = field(default_factory=list)
    bad_edges: list[tuple[int, int]] = field(default_factory=list)
    solver_calls: int = 0
    pool_hits: int = 0
    witnesses: int = 0
    elapsed: float = 0.0
    orbit_fallback: bool = False

    @property
    def passed(self) -> bool:
        return not self.failures

    def summary(self) -> dict:
        return {
            "alpha": self.alpha,
            "mode": self.mode,
            "passed": self.passed,
            "pairs_checked": self.pairs_checked,
            "pruned": self.pruned,
            "failures": len(self.failures),
            "solver_calls": self.solver_calls,
            "pool_hits": self.pool_hits,
            "witnesses": self.witnesses,
            "orbit_fallback": self.orbit_fallback,
            "elapsed": round(self.elapsed, 3),
        }


def _emask(*edges) -> int:
    m = 0
    for u, v in edges:
        m |= (1 << u) | (1 << v)
    return m


class _PairChecker:
    """Decides alpha(g - U) >= alpha with a pool of certified witnesses."""

    def __init__(self, g: Graph, alpha: int, solver: MisSolver | None = None):
        self.g = g
        self.alpha = alpha
        self.solver = solver or MisSolver(g)
        self.pool: list[int] = []
        self.calls = 0
        self.hits = 0

    def avoiding_witness(self, forbidden: int) -> int | None:
        for w in self.pool:
            if not w & forbidden:
                self.hits += 1
                return w
        self.calls += 1
        w = self.solver.reach_mask(self.g.all_mask & ~forbidden, self.alpha)
        if w is not None:
            self.pool.append(w)
        return w

    def exact(self, forbidden: int) -> int:
        return self.solver.solve_mask(self.g.all_mask & ~forbidden)[0]


def _check_pairs(g: Graph, alpha: int, pairs, bad: set[int], stop_early: bool, dmat,
                 seed_pool=(), checker: _PairChecker | None = None):
    """Worker body: returns (checked, pruned, failures, calls, hits, new witnesses)."""
    if checker is None:
        checker = _PairChecker(g, alpha)
        checker.pool.extend(seed_pool)
    calls0, hits0, pool0 = checker.calls, checker.hits, len(checker.pool)
    edges = g.edges
    failures = []
    checked = pruned = 0
    for idx, (i, j) in pairs:
        checked += 1
        e, f = edges[i], edges[j]
        (u, v), (x, y) = e, f
        profile = canonical_profile((int(dmat[u][x]), int(dmat[u][y]), int(dmat[v][x]), int(dmat[v][y])))
        if i in bad or j in bad:
            pruned += 1
            failures.append({"index": idx, "pair": [list(e), list(f)], "achieved": None,
                             "reason": "edge", "profile": list(profile)})
        else:
            w = checker.avoiding_witness(_emask(e, f))
            if w is None:
                failures.append({"index": idx, "pair": [list(e), list(f)],
                                 "achieved": checker.exact(_emask(e, f)),
                                 "reason": "pair", "profile": list(profile)})
        if failures and stop_early:
            break
    return (checked, pruned, failures, checker.calls - calls0, checker.hits - hits0,
            len(checker.pool) - pool0)


def _chunks(seq, k):
    size = max(1, -(-len(seq) // k))
    return [seq[s:s + size] for s in range(0, len(seq), size)]


def default_jobs() -> int:
    try:
        return max(1, int(os.environ.get("RF_THREADS", "1")))
    except ValueError:
        return 1


def verify_lovasz_property(
    g: Graph,
    mode: str = "brute",
    jobs: int = 1,
    stop_early: bool = False,
    group=None,
    group_budget: int | None = 200_000,
) -> LovaszReport:
    """Check alpha(g - V(e) - V(f)) = alpha(g) for every unordered pair of distinct edges.

    ``mode="orbit"`` fixes one representative per edge orbit as the first
    edge; if the automorphism search exceeds ``group_budget`` it falls back to
    brute mode.
    """
    if mode not in ("brute", "orbit"):
        raise ValueError(f"unknown mode {mode!r}")
    t0 = time.perf_counter()
    solver = MisSolver(g)
    alpha = solver.solve_mask(g.all_mask)[0]
    rep = LovaszReport(alpha=alpha, mode=mode)
    checker = _PairChecker(g, alpha, solver)
    dmat = distance_matrix(g)

    bad: set[int] = set()
    for i, e in enumerate(g.edges):
        if checker.avoiding_witness(_emask(e)) is None:
            bad.add(i)
    rep.bad_edges = [g.edges[i] for i in sorted(bad)]

    m = g.m
    if mode == "orbit":
        try:
            group = group or automorphism_group(g, node_budget=group_budget)
        except SearchBudgetExceeded:
            log.warning("automorphism search over budget; using brute mode")
            rep.orbit_fallback = True
            group = None
    if mode == "orbit" and group is not None:
        index = {e: k for k, e in enumerate(g.edges)}
        reps = sorted(index[orb[0]] for orb in group.edge_orbits)
        pairs = [(i, j) for i in reps for j in range(m) if j != i]
    else:
        pairs = list(combinations(range(m), 2))
    indexed = list(enumerate(pairs))

    rep.solver_calls, rep.pool_hits, rep.witnesses = checker.calls, checker.hits, len(checker.pool)
    if jobs <= 1 or len(indexed) < 2 * jobs:
        results = [_check_pairs(g, alpha, indexed, bad, stop_early, dmat, checker=checker)]
    else:
        seed = list(checker.pool)
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            futs = [pool.submit(_check_pairs, g, alpha, chunk, bad, stop_early, dmat, seed)
                    for chunk in _chunks(indexed, jobs * 4)]
            results = [f.result() for f in futs]

    failures = []
    for checked, pruned, fails, calls, hits, npool in results:
        rep.pairs_checked += checked
        rep.pruned += pruned
        rep.solver_calls += calls
        rep.pool_hits += hits
        rep.witnesses += npool
        failures.extend(fails)
    failures.sort(key=lambda f: f["index"])
    if stop_early and failures:
        failures = failures[:1]
    rep.failures = failures
    rep.elapsed = time.perf_counter() - t0
    return rep


@dataclass
class WeakWitness:
    edges: list[tuple[int, int]]
    removed: frozenset[int]
    alpha: int
    achieved: int

    @property
    def drop(self) -> int:
        return self.alpha - self.achieved


@dataclass
class WeakSearchResult:
    k: int
    witness: WeakWitness | None
    exhausted: bool
    nodes: int


def weak_conjecture_witness(g: Graph, k: int, node_budget: int | None = 200_000,
                            group=None, seed: int = 0) -> WeakSearchResult:
    """Search for ``2k`` edges whose endpoints' deletion lowers alpha by at least ``k``.

    Edges are ranked by their single-edge drop, ties broken by a seeded
    shuffle (deterministic, but avoids exploring clusters of neighbouring
    edges first).  Subsets are enumerated as increasing rank sequences.  With
    ``group`` the first edge is an edge-orbit representative (every subset is
    equivalent to one containing a representative) and the rest are
    increasing ranks among the other edges.  A partial subset whose single-edge drops already sum to ``k`` is
    tested early: alpha can only fall as edges are added, so a hit there is
    completed with arbitrary further edges.  ``exhausted`` distinguishes a
    finished search from a budget stop.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    size = 2 * k
    if g.m < size:
        return WeakSearchResult(k, None, True, 0)
    solver = MisSolver(g)
    alpha = solver.solve_mask(g.all_mask)[0]
    target = alpha - k
    edges = list(g.edges)

    def edge_drop(e) -> int:
        rest = g.all_mask & ~_emask(e)
        if solver.reach_mask(rest, alpha) is not None:
            return 0
        return alpha - solver.solve_mask(rest)[0]

    # the drop is constant on edge orbits
    orbit_of = {}
    if group is not None:
        for orb in group.edge_orbits:
            for e in orb:
                orbit_of[e] = orb[0]
    by_rep: dict = {}
    drop1 = []
    for e in edges:
        rep_e = orbit_of.get(e, e)
        if rep_e not in by_rep:
            by_rep[rep_e] = edge_drop(rep_e)
        drop1.append(by_rep[rep_e])
    tiebreak = list(range(len(edges)))
    random.Random(seed).shuffle(tiebreak)
    order = sorted(range(len(edges)), key=lambda i: (-drop1[i], tiebreak[i]))
    firsts = range(len(order))
    if group is not None:
        index = {e: q for q, e in enumerate(edges)}
        reps = {index[orb[0]] for orb in group.edge_orbits}
        firsts = [r for r in range(len(order)) if order[r] in reps]

    nodes = 0

    def low_enough(mask: int) -> bool:
        return solver.reach_mask(g.all_mask & ~mask, target + 1) is None

    def finish(chosen: list[int], mask: int) -> WeakWitness:
        rest = [i for i in order if i not in chosen][: size - len(chosen)]
        fmask = mask | _emask(*(edges[i] for i in rest))
        got = solver.solve_mask(g.all_mask & ~fmask)[0]
        return WeakWitness([edges[i] for i in sorted(chosen + rest)], frozenset(bits(fmask)),
                           alpha, got)

    def dfs(chosen: list[int], mask: int, start: int, seeded: int) -> WeakWitness | None:
        nonlocal nodes
        nodes += 1
        if node_budget is not None and nodes > node_budget:
            raise SearchBudgetExceeded
        if len(chosen) == size or (chosen and seeded >= k):
            if low_enough(mask):
                return finish(chosen, mask)
            if len(chosen) == size:
                return None
        ranks = firsts if not chosen else range(start, len(order))
        for r in ranks:
            i = order[r]
            if i in chosen:
                continue
            # an orbit representative need not be the lowest-ranked edge of its
            # subset, so the remaining edges range over all ranks
            nxt = 0 if not chosen and group is not None else r + 1
            found = dfs(chosen + [i], mask | _emask(edges[i]), nxt, seeded + drop1[i])
            if found is not None:
                return found
        return None

    try:
        w = dfs([], 0, 0, 0)
    except SearchBudgetExceeded:
        return WeakSearchResult(k, None, False, nodes)
    return WeakSearchResult(k, w, w is None, nodes)
