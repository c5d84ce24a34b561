"""Exact maximum independent set by branch and bound on bitset rows.

The search works on a vertex mask.  Each node applies the sound reductions
(degree 0/1 vertices are always taken), splits into connected components,
solves components of maximum degree <= 2 in closed form (paths and cycles),
and otherwise branches on a vertex of maximum residual degree (lowest index on
ties): first "take v" (drop N[v]), then "drop v".  A greedy clique cover of
the candidate set bounds each branch.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

from .graph import Graph, bits, popcount


@dataclass
class MisResult:
    size: int
    witness: frozenset[int]
    nodes_explored: int = 0
    bound_calls: int = 0


@dataclass
class _Stats:
    nodes: int = 0
    bounds: int = 0


class MisSolver:
    """Reusable solver bound to one graph; caches exact values of subproblems."""

    def __init__(self, g: Graph, cache_limit: int = 200_000):
        self.g = g
        self.rows = g.rows
        self.cache: dict[int, tuple[int, int]] = {}
        self.cache_limit = cache_limit
        self.stats = _Stats()

    # -- helpers -----------------------------------------------------------

    def _component(self, mask: int) -> int:
        rows = self.rows
        low = mask & -mask
        comp = low
        frontier = low
        while frontier:
            nxt = 0
            for v in bits(frontier):
                nxt |= rows[v]
            nxt &= mask & ~comp
            comp |= nxt
            frontier = nxt
        return comp

    def _small_degree(self, mask: int) -> tuple[int, int]:
        """Solve a mask whose induced graph has max degree <= 2 (paths/cycles)."""
        rows = self.rows
        taken = 0
        rest = mask
        while rest:
            comp = self._component(rest)
            rest &= ~comp
            ends = [v for v in bits(comp) if popcount(rows[v] & comp) <= 1]
            if ends:
                start = ends[0]
            else:
                start = (comp & -comp).bit_length() - 1
            # walk the path/cycle, taking every other vertex from an endpoint
            order = [start]
            seen = 1 << start
            cur = start
            while True:
                nxt = rows[cur] & comp & ~seen
                if not nxt:
                    break
                cur = (nxt & -nxt).bit_length() - 1
                seen |= 1 << cur
                order.append(cur)
            pick = order[0::2]
            if not ends and len(order) % 2 == 1:
                pick = pick[:-1]
            for v in pick:
                taken |= 1 << v
        return popcount(taken), taken

    def _bound(self, mask: int) -> int:
        """Greedy clique cover size of the induced subgraph (an upper bound on alpha)."""
        self.stats.bounds += 1
        rows = self.rows
        count = 0
        rest = mask
        while rest:
            v = (rest & -rest).bit_length() - 1
            clique = 1 << v
            cand = rows[v] & rest
            while cand:
                w = (cand & -cand).bit_length() - 1
                clique |= 1 << w
                cand &= rows[w]
            rest &= ~clique
            count += 1
        return count

    # -- search ------------------------------------------------------------

    def _solve(self, mask: int) -> tuple[int, int]:
        """Exact (alpha, witness mask) of the subgraph induced by ``mask``."""
        rows = self.rows
        taken = 0
        size = 0
        # degree <= 1 reduction
        changed = True
        while changed and mask:
            changed = False
            for v in bits(mask):
                if not mask >> v & 1:
                    continue
                if popcount(rows[v] & mask) <= 1:
                    taken |= 1 << v
                    size += 1
                    mask &= ~((1 << v) | rows[v])
                    changed = True
        if not mask:
            return size, taken
        hit = self.cache.get(mask)
        if hit is not None:
            return size + hit[0], taken | hit[1]
        self.stats.nodes += 1

        comp = self._component(mask)
        if comp != mask:
            a1, w1 = self._solve(comp)
            a2, w2 = self._solve(mask & ~comp)
            res = (a1 + a2, w1 | w2)
        else:
            best_v, best_d = -1, -1
            for v in bits(mask):
                d = popcount(rows[v] & mask)
                if d > best_d:
                    best_v, best_d = v, d
            if best_d <= 2:
                res = self._small_degree(mask)
            else:
                v = best_v
                a_in, w_in = self._solve(mask & ~((1 << v) | rows[v]))
                a_in += 1
                w_in |= 1 << v
                res = (a_in, w_in)
                rest = mask & ~(1 << v)
                if self._bound(rest) > a_in:
                    a_out, w_out = self._solve(rest)
                    if a_out > a_in:
                        res = (a_out, w_out)
        if len(self.cache) < self.cache_limit:
            self.cache[mask] = res
        return size + res[0], taken | res[1]

    def solve_mask(self, mask: int) -> tuple[int, int]:
        return self._solve(mask)

    def _reach(self, mask: int, need: int) -> int | None:
        """Witness mask of an independent set of size >= ``need`` inside ``mask``, or None."""
        rows = self.rows
        taken = 0
        changed = True
        while changed and mask and need > 0:
            changed = False
            for v in bits(mask):
                if not mask >> v & 1:
                    continue
                if popcount(rows[v] & mask) <= 1:
                    taken |= 1 << v
                    need -= 1
                    mask &= ~((1 << v) | rows[v])
                    changed = True
        if need <= 0:
            return taken
        if not mask:
            return None
        hit = self.cache.get(mask)
        if hit is not None:
            return taken | hit[1] if hit[0] >= need else None
        self.stats.nodes += 1
        if self._bound(mask) < need:
            return None
        comp = self._component(mask)
        if comp != mask:
            # exact on the smaller side, decision on the larger
            other = mask & ~comp
            small, big = (comp, other) if popcount(comp) <= popcount(other) else (other, comp)
            a_small, w_small = self._solve(small)
            sub = self._reach(big, need - a_small)
            return None if sub is None else taken | w_small | sub
        best_v, best_d = -1, -1
        for v in bits(mask):
            d = popcount(rows[v] & mask)
            if d > best_d:
                best_v, best_d = v, d
        if best_d <= 2:
            a, w = self._small_degree(mask)
            return taken | w if a >= need else None
        v = best_v
        sub = self._reach(mask & ~((1 << v) | rows[v]), need - 1)
        if sub is not None:
            return taken | sub | (1 << v)
        sub = self._reach(mask & ~(1 << v), need)
        return None if sub is None else taken | sub

    def reach_mask(self, mask: int, need: int) -> int | None:
        return self._reach(mask, need)


def _to_mask(vertices) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


def max_independent_set(g: Graph) -> MisResult:
    return alpha_avoiding(g, ())


def alpha_avoiding(g: Graph, forbidden=(), solver: MisSolver | None = None,
                   threshold: int | None = None) -> MisResult:
    """Maximum independent set of ``g`` disjoint from ``forbidden``.

    With ``threshold`` the search stops as soon as an independent set of that
    size is found; the result then certifies ``alpha >= threshold`` only.  If
    no such set exists the exact value is returned.
    """
    forbidden = set(forbidden)
    bad = [v for v in forbidden if not 0 <= v < g.n]
    if bad:
        raise ValueError(f"forbidden vertices {bad} not in graph")
    solver = solver or MisSolver(g)
    n0, b0 = solver.stats.nodes, solver.stats.bounds
    mask = g.all_mask & ~_to_mask(forbidden)
    if threshold is not None:
        hit = solver.reach_mask(mask, threshold)
        if hit is not None:
            wit = frozenset(bits(hit))
            return MisResult(len(wit), wit, solver.stats.nodes - n0, solver.stats.bounds - b0)
    size, wit = solver.solve_mask(mask)
    return MisResult(size, frozenset(bits(wit)), solver.stats.nodes - n0, solver.stats.bounds - b0)


def check_independent(g: Graph, s) -> bool:
    m = _to_mask(s)
    return all(not (g.rows[v] & m) for v in s)


def brute_force_alpha(g: Graph, cap: int = 24) -> int:
    """Exhaustive alpha by growing independent sets vertex by vertex."""
    if g.n > cap:
        raise ValueError(f"brute force limited to {cap} vertices, got {g.n}")
    rows = g.rows
    best = 0

    def grow(start: int, size: int, blocked: int):
        nonlocal best
        best = max(best, size)
        for v in range(start, g.n):
            if not blocked >> v & 1:
                grow(v + 1, size + 1, blocked | rows[v])

    grow(0, 0, 0)
    return best
