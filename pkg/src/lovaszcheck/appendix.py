"""Finite enumerations behind the hand proof that alpha(BS) = 43.

Index sets live in [17] = {1..17} (0 is written as 17).  For an independent
set I of BS, J_t = {i : it in I} for each letter t.  J_a is independent in the
step-1 cycle, J_b in the step-4 cycle, so J_a & J_b is independent in the
circulant C(17, {1, 4}).  "Symmetries" are the index maps i -> s + sign*k*i:
k in {1, 4} preserves E and the circulant (k = 4 swaps the a- and b-cycles),
k in {2, 8} additionally swaps E and F.

A configuration (J_a, J_b, J_e) is *left-maximal* when every i in J_e has i-1
or i+1 in J_a and i-4 or i+4 in J_b, so no e-vertex can be traded for an
a- or b-vertex.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

from .autom import index_maps, index_perm, letter_action, residue
from .graph import Graph
from .mis import max_independent_set
from .report import VerificationReport

N = 17
STEP_A, STEP_B = 1, 4
EQUIVALENCE_MULTIPLIERS = (1, 4)
FULL_MULTIPLIERS = (1, 2, 4, 8)

IndexSet = frozenset


@dataclass(frozen=True)
class CirculantSpec:
    n: int
    diffs: frozenset[int]

    def validate(self) -> None:
        if self.n < 3:
            raise ValueError("circulant needs n >= 3")
        bad = [s for s in self.diffs if not 1 <= s <= self.n // 2]
        if bad or not self.diffs:
            raise ValueError(f"differences must lie in 1..{self.n // 2}, got {sorted(self.diffs)}")


def circulant_graph(spec: CirculantSpec) -> Graph:
    """Circulant on vertices 0..n-1 (vertex i-1 stands for index i)."""
    spec.validate()
    edges = {tuple(sorted((i, (i + s) % spec.n))) for i in range(spec.n) for s in spec.diffs}
    return Graph.from_edges(spec.n, edges)


def circular_distance(i: int, j: int, n: int = N) -> int:
    k = (i - j) % n
    return min(k, n - k)


def _independent(js, steps, n: int = N) -> bool:
    js = set(js)
    return all(residue(i + s, n) not in js for i in js for s in steps)


def independent_sets(size: int, steps=(STEP_A, STEP_B), n: int = N) -> list[IndexSet]:
    """All ``size``-subsets of [n] with no two elements at a circular distance in ``steps``."""
    return [frozenset(c) for c in combinations(range(1, n + 1), size) if _independent(c, steps, n)]


# -- symmetries ----------------------------------------------------------------


@dataclass(frozen=True)
class Symmetry:
    shift: int
    sign: int
    k: int

    @property
    def imap(self) -> dict[int, int]:
        return index_perm(self.shift, self.sign, self.k, N)

    def __call__(self, js) -> IndexSet:
        m = self.imap
        return frozenset(m[i] for i in js)

    @property
    def swaps_ab(self) -> bool:
        return letter_action(self.k, N)["a"] == "b"

    def act_config(self, cfg: tuple) -> tuple:
        """Image of (J_a, J_b, J_e) under an E-preserving symmetry."""
        ja, jb, je = (self(x) for x in cfg)
        return (jb, ja, je) if self.swaps_ab else (ja, jb, je)


def symmetries(multipliers=EQUIVALENCE_MULTIPLIERS) -> list[Symmetry]:
    return [Symmetry(*t) for t in index_maps(N, multipliers)]


def _key(js) -> tuple[int, ...]:
    return tuple(sorted(js))


def canonical_set(js, group) -> tuple[int, ...]:
    return min(_key(g(js)) for g in group)


def canonical_config(cfg, group) -> tuple:
    return min(tuple(_key(x) for x in g.act_config(cfg)) for g in group)


# -- equivalence classes ---------------------------------------------------------


@dataclass
class IndexSetClass:
    representative: tuple[int, ...]
    members: list[tuple[int, ...]]
    group_order: int


def enumerate_classes(size: int, multipliers=EQUIVALENCE_MULTIPLIERS) -> list[IndexSetClass]:
    """Independent ``size``-sets of C(17,{1,4}) grouped into symmetry classes.

    Only multipliers that map the circulant to itself are allowed (k = 2 and
    k = 8 send it to C(17,{2,8})), otherwise classes would not be closed.
    """
    if size > N:
        raise ValueError("size must be <= 17")
    for k in multipliers:
        if {circular_distance(k * s, 0) for s in (STEP_A, STEP_B)} != {STEP_A, STEP_B}:
            raise ValueError(f"multiplier {k} does not preserve C(17,{{1,4}})")
    group = symmetries(multipliers)
    classes: dict[tuple[int, ...], set] = {}
    for js in independent_sets(size):
        classes.setdefault(canonical_set(js, group), set()).add(_key(js))
    return [IndexSetClass(rep, sorted(mem), len(group)) for rep, mem in sorted(classes.items())]


# -- extensions of J_a & J_b --------------------------------------------------------


def _candidates(core, step) -> list[int]:
    return [i for i in range(1, N + 1)
            if i not in core and residue(i + step) not in core and residue(i - step) not in core]


def candidates_a(core) -> list[int]:
    return _candidates(core, STEP_A)


def candidates_b(core) -> list[int]:
    return _candidates(core, STEP_B)


def _independent_subsets(cands, step):
    out = []

    def grow(start, chosen):
        out.append(frozenset(chosen))
        for q in range(start, len(cands)):
            c = cands[q]
            if all(circular_distance(c, x) != step for x in chosen):
                chosen.append(c)
                grow(q + 1, chosen)
                chosen.pop()

    grow(0, [])
    return out


def extensions(core):
    """All (J_a, J_b) with J_a & J_b == core, J_a a-independent and J_b b-independent."""
    core = frozenset(core)
    out = []
    for sa in _independent_subsets(candidates_a(core), STEP_A):
        for sb in _independent_subsets(candidates_b(core), STEP_B):
            if not sa & sb:
                out.append((core | sa, core | sb))
    return out


def covered(ja, jb) -> IndexSet:
    """Indices whose e-vertex cannot be traded for an a- or b-vertex."""
    return frozenset(
        i for i in range(1, N + 1)
        if (residue(i - 1) in ja or residue(i + 1) in ja)
        and (residue(i - 4) in jb or residue(i + 4) in jb)
    )


def complement(*sets) -> IndexSet:
    used = frozenset().union(*sets)
    return frozenset(range(1, N + 1)) - used


def is_left_maximal(ja, jb, je) -> bool:
    return set(je) <= covered(ja, jb)


def left_maximal_configs(core, min_j0: int):
    """Left-maximal (J_a, J_b, J_e) with J_a & J_b == core and j_a + j_b + j_e >= min_j0."""
    out = []
    for ja, jb in extensions(core):
        room = sorted(complement(ja, jb) & covered(ja, jb))
        need = max(0, min_j0 - len(ja) - len(jb))
        for size in range(len(room), need - 1, -1):
            for je in combinations(room, size):
                out.append((ja, jb, frozenset(je)))
    return out


# -- published tables (as data) ---------------------------------------------------

# Table 1: rows (J_a & J_b, J_a \ J_b, J_b \ J_a, J_e); row 6.1 drops one element x.
SIX_CORE = (1, 3, 6, 8, 11, 13)
SIX_A_EXTRA = (15,)
SIX_JE = (2, 4, 5, 7, 9, 10, 12, 14, 16, 17)

TABLE_ONE = {
    "5.1": ((1, 3, 6, 8, 11), [
        ((13, 15), (9, 17), (2, 4, 5, 7, 10, 12, 14, 16)),
        ((13, 16), (9, 17), (2, 4, 5, 7, 10, 12, 14, 15)),
        ((14, 16), (9, 17), (2, 4, 5, 7, 10, 12, 13, 15)),
        ((14, 16), (13,), (2, 4, 5, 7, 10, 12, 9, 15, 17)),
    ]),
    "5.2": ((1, 3, 6, 9, 11), [
        ((13, 15), (4, 12), (2, 5, 7, 10, 8, 14, 16, 17)),
        ((13, 16), (4, 12), (2, 5, 7, 10, 8, 14, 15, 17)),
        ((14, 16), (4, 12), (2, 5, 7, 10, 8, 13, 15, 17)),
        ((13, 15), (8, 17), (2, 5, 7, 10, 4, 12, 14, 16)),
        ((13, 16), (8, 17), (2, 5, 7, 10, 4, 12, 14, 15)),
        ((14, 16), (8, 17), (2, 5, 7, 10, 4, 12, 13, 15)),
        ((13, 15), (12, 17), (2, 5, 7, 10, 4, 8, 14, 16)),
        ((13, 16), (12, 17), (2, 5, 7, 10, 4, 8, 14, 15)),
        ((14, 16), (12, 17), (2, 5, 7, 10, 4, 8, 13, 15)),
    ]),
    "5.3": ((1, 3, 6, 9, 12), [
        ((14, 16), (4, 11), (2, 5, 7, 8, 10, 13, 15, 17)),
        ((14, 16), (11, 17), (2, 5, 7, 8, 10, 13, 4, 15)),
        ((14, 16), (4, 15), (2, 5, 7, 8, 10, 13, 11, 17)),
        ((14, 16), (15, 17), (2, 5, 7, 8, 10, 13, 4, 11)),
        ((15,), (4, 11), (2, 5, 7, 8, 10, 13, 14, 16, 17)),
        ((15,), (11, 17), (2, 5, 7, 8, 10, 13, 4, 14, 16)),
    ]),
    "5.4": ((1, 3, 6, 8, 13), [
        ((10, 15), (11,), (2, 4, 5, 7, 9, 12, 14, 17, 16)),
        ((10, 16), (11,), (2, 4, 5, 7, 9, 12, 14, 17, 15)),
        ((10, 16), (15,), (2, 4, 5, 7, 9, 12, 14, 17, 16)),
        ((11, 16), (15,), (2, 4, 5, 7, 9, 12, 14, 17, 10)),
    ]),
}


def _span(lo, hi):
    return tuple(range(lo, hi + 1))


# Table 2: core -> (pair at distance 2 or None, pair at distance 8 or None,
# candidates for J_a \ J_b, candidates for J_b \ J_a)
TABLE_TWO = {
    "4.1": ((1, 3, 6, 8), (2, 4), None, _span(10, 16), (9, 11, 13, 17)),
    "4.2": ((1, 3, 8, 10), None, None, (5, 6) + _span(12, 16), (2, 9, 11, 13, 15, 17)),
    "4.3": ((1, 3, 9, 11), None, None, _span(5, 7) + _span(13, 16), (2, 4, 6, 8, 10, 12, 17)),
    "4.4": ((1, 3, 6, 9), (5, 7), (2, 10), _span(11, 16), (4, 8, 11, 12, 15, 17)),
    "4.5": ((1, 3, 8, 11), None, (4, 12), (5, 6) + _span(13, 16), (2, 6, 9, 10, 13, 17)),
    "4.6": ((1, 3, 8, 13), (12, 14), (4, 12), (5, 6, 10, 11, 15, 16), (2, 6, 10, 11, 15)),
    "4.7": ((1, 3, 6, 13), (5, 7), (5, 14), _span(8, 11) + (15, 16), (4, 8, 11, 12, 15)),
    "4.8": ((1, 3, 6, 15), (5, 7), (7, 16), _span(8, 13), (4, 8, 9, 12, 13, 17)),
}


def _row(core, extra_a, extra_b, je):
    core = frozenset(core)
    return (core | frozenset(extra_a), core | frozenset(extra_b), frozenset(je))


def _has_pair_at(js, dist: int) -> bool:
    return any(circular_distance(i, j) == dist for i, j in combinations(sorted(js), 2))


# -- the claims ----------------------------------------------------------------------


def _check_structure(rep: VerificationReport, bs) -> None:
    """Condition (1): the only H-local edges are e-f, a-e, b-e, c-f, d-f."""
    g = bs.graph
    want = {frozenset("ef"), frozenset("ae"), frozenset("be"), frozenset("cf"), frozenset("df")}
    for i in range(1, bs.n_sets + 1):
        local = {frozenset((bs.letter(u), bs.letter(v)))
                 for u in bs.idx(*(f"{i}{t}" for t in "abcdef"))
                 for v in g.nbrs[u] if bs.hset(v) == i}
        rep.expect(local == want, claim="(1)", hset=i, got=sorted("".join(sorted(p)) for p in local))
    for t, step in zip("abcd", (1, 4, 2, 8)):
        ok = all(g.has_edge(*bs.idx(f"{i}{t}", f"{residue(i + step)}{t}")) for i in range(1, N + 1))
        rep.expect(ok, claim="(2)", cycle=t, step=step)


def _check_inequalities(rep: VerificationReport, bs) -> None:
    """(2)-(4) on every maximum independent set in the symmetric orbit of a solver witness."""
    from .autom import h_preserving_group

    best = max_independent_set(bs.graph).witness
    for t, step in zip("abcd", (1, 4, 2, 8)):
        rep.expect(not independent_sets(9, steps=(step,)), claim="(2)", cycle=t,
                   problem="cycle has an independent set of size 9")
    seen = set()
    for p in h_preserving_group(bs):
        image = frozenset(p[v] for v in best)
        if image in seen:
            continue
        seen.add(image)
        js = {t: frozenset(bs.hset(v) for v in image if bs.letter(v) == t) for t in "abcdef"}
        j = {t: len(s) for t, s in js.items()}
        ok = (not js["e"] & js["f"] and not js["e"] & (js["a"] | js["b"])
              and not js["f"] & (js["c"] | js["d"])
              and max(j[t] for t in "abcd") <= 8 and j["e"] + j["f"] <= 17
              and j["a"] + j["b"] + j["e"] <= 17 + len(js["a"] & js["b"])
              and j["c"] + j["d"] + j["f"] <= 17 + len(js["c"] & js["d"]))
        rep.expect(ok, claim="(1)-(4)", sizes=j)
    rep.details["sampled_maximum_sets"] = len(seen)


def _check_claim1(rep: VerificationReport) -> None:
    full_b = independent_sets(8, steps=(STEP_B,))
    rep.expect(frozenset({1, 9, 17, 8, 16, 7, 15, 6}) in full_b, claim=1,
               problem="listed J_b is not a maximum b-cycle independent set")
    a_sets = [s for k in range(9) for s in independent_sets(k, steps=(STEP_A,))]
    worst = max(len(ja & jb) for jb in full_b for ja in a_sets)
    rep.expect(worst <= 4, claim=1, max_intersection=worst)
    rep.details["claim1_max_intersection"] = worst


def _check_claim2(rep: VerificationReport) -> None:
    g = circulant_graph(CirculantSpec(N, frozenset({1, 4})))
    alpha = max_independent_set(g).size
    rep.expect(alpha == 6, claim=2, alpha_circulant=alpha)
    window = max(
        len({residue(start + q) for q in range(5)} & js)
        for k in range(1, 7) for js in independent_sets(k) for start in range(1, N + 1)
    )
    rep.expect(window <= 2, claim=2, max_in_window=window)


def _check_claim3(rep: VerificationReport, group) -> dict:
    six = enumerate_classes(6, (1,))
    rep.expect([c.representative for c in six] == [(1, 3, 6, 8, 11, 13), (1, 3, 6, 9, 12, 15)],
               claim=3, dihedral_classes=[c.representative for c in six])
    rep.expect(canonical_set({1, 3, 6, 9, 12, 15}, group) == (1, 3, 6, 8, 11, 13), claim=3,
               problem="size-6 classes not merged by i -> 4i")

    target_a = frozenset(SIX_CORE + SIX_A_EXTRA)
    target_b = frozenset(SIX_CORE)
    target = canonical_config((target_a, target_b, frozenset(SIX_JE)), group)
    minus_one = {canonical_config((target_a, target_b, frozenset(SIX_JE) - {x}), group)
                 for x in SIX_JE}
    top = 0
    for ja, jb, je in left_maximal_configs(SIX_CORE, 22):
        j0 = len(ja) + len(jb) + len(je)
        top = max(top, j0)
        key = canonical_config((ja, jb, je), group)
        if j0 == 23:
            rep.expect(key == target and len(je) == 10, claim=3, j0=23, config=key)
        elif j0 == 22:
            rep.expect(key in minus_one, claim=3, j0=22, config=key)
    rep.expect(top <= 23, claim=3, max_j0=top)
    return {"claim3_max_j0": top}


def _check_claim4(rep: VerificationReport, group) -> tuple[list, dict]:
    """Every left-maximal j_0 = 22 configuration with j_e < 10 against Table 1."""
    fives = enumerate_classes(5)
    reps = [c.representative for c in fives]
    published = [TABLE_ONE[c][0] for c in sorted(TABLE_ONE)]
    rep.expect(len(fives) == 4, claim=4, classes=reps)
    rep.expect({canonical_set(c, group) for c in published} == set(reps), claim=4,
               table_cores=published, classes=reps)

    errata = []
    rows_found = []
    min_je = 17
    for case in sorted(TABLE_ONE):
        core, _ = TABLE_ONE[case]
        found = set()
        for ja, jb, je in left_maximal_configs(core, 22):
            j0 = len(ja) + len(jb) + len(je)
            if j0 != 22:
                continue
            min_je = min(min_je, len(je))
            if len(je) < 10:
                found.add((ja, jb, je))
        stab = [g for g in group if g(core) == frozenset(core)]
        canon_found = {canonical_config(c, stab) for c in found}
        listed = [_row(core, *r) for r in TABLE_ONE[case][1]]
        canon_listed = {}
        for r, (ea, eb, je) in zip(listed, TABLE_ONE[case][1]):
            ja, jb, _ = r
            consistent = r[2] == complement(ja, jb)
            if not consistent:
                fixed = (ja, jb, complement(ja, jb))
                errata.append({"table": 1, "case": case, "row": [list(ea), list(eb)],
                               "listed_je": list(je), "consistent_je": _key(fixed[2])})
                r = fixed
            canon_listed[canonical_config(r, stab)] = r
        rep.expect(set(canon_listed) == canon_found, claim=4, case=case,
                   missing=sorted(canon_found - set(canon_listed)),
                   extra=sorted(set(canon_listed) - canon_found))
        rows_found.extend((case, r) for r in sorted(found, key=lambda c: tuple(map(_key, c))))
    rep.expect(min_je >= 8, claim=4, min_je=min_je)
    # j_ab <= 4 forces j_0 <= 21 by (4): re-checked by the 4-core sweep in claim 5
    return rows_found, {"claim4_errata": errata, "claim4_min_je": min_je}


def _check_claim5(rep: VerificationReport, group) -> dict:
    fours = enumerate_classes(4)
    reps = [c.representative for c in fours]
    published = {case: row[0] for case, row in TABLE_TWO.items()}
    rep.expect(len(fours) == 8, claim=5, classes=reps)
    rep.expect({canonical_set(c, group) for c in published.values()} == set(reps), claim=5,
               table_cores=list(published.values()), classes=reps)

    errata = []
    configs = 0
    j0_max = 0
    for case, (core, pair2, pair8, cand_a, cand_b) in sorted(TABLE_TWO.items()):
        got_a, got_b = tuple(candidates_a(core)), tuple(candidates_b(core))
        for column, listed, got in (("J_a\\J_b", cand_a, got_a), ("J_b\\J_a", cand_b, got_b)):
            if tuple(sorted(listed)) != got:
                errata.append({"table": 2, "case": case, "column": column,
                               "listed": list(listed), "rule": list(got),
                               "missing": sorted(set(got) - set(listed)),
                               "extra": sorted(set(listed) - set(got))})
                rep.expect(set(listed) <= set(got), claim=5, case=case, column=column,
                           problem="listed candidate violates independence")
        forced = complement(core, got_a, got_b)
        for listed, dist in ((pair2, 2), (pair8, 8)):
            if listed is None:
                rep.expect(not _has_pair_at(forced, dist), claim=5, case=case, distance=dist,
                           problem="blank cell although a forced pair exists")
            else:
                rep.expect(set(listed) <= forced and circular_distance(*listed) == dist,
                           claim=5, case=case, pair=list(listed), distance=dist)
        for ja, jb in extensions(core):
            je = complement(ja, jb)
            configs += 1
            j0_max = max(j0_max, len(ja) + len(jb) + len(je))
            rep.expect(_has_pair_at(je, 2) and _has_pair_at(je, 8), claim=5, case=case,
                       j_a=_key(ja), j_b=_key(jb), j_e=_key(je))
    rep.expect(j0_max <= 21, claim=5, max_j0=j0_max)
    return {"claim5_configs": configs, "claim5_errata": errata}


def verify_claims(bs) -> VerificationReport:
    """Conditions (1)-(4) and Claims 1-5, each by exhaustive enumeration over [17]."""
    rep = VerificationReport("independence number 43: appendix claims")
    group = symmetries()
    _check_structure(rep, bs)
    _check_inequalities(rep, bs)
    _check_claim1(rep)
    _check_claim2(rep)
    rep.details.update(_check_claim3(rep, group))
    rows, info = _check_claim4(rep, group)
    rep.details.update(info)
    rep.details.update(_check_claim5(rep, group))
    rep.details["table_one_rows"] = len(rows)
    rep.details["failed_claims"] = sorted({str(f.get("claim")) for f in rep.failures})
    return rep


# -- closing intersection check -------------------------------------------------------


@dataclass
class Candidates:
    sets: list[IndexSet]
    labels: list[str] = field(default_factory=list)


def je_candidates(six_variant: str = "all") -> Candidates:
    """J_e candidates from Table 1, with the J_e column recomputed from the row.

    ``six_variant`` selects the removed element x in row 6.1: ``"all"`` takes
    every x, ``"left-maximal"`` only those x after whose removal no vertex
    of H_x can be added back to I.
    """
    sets, labels = [], []
    for case in sorted(TABLE_ONE):
        core, rows = TABLE_ONE[case]
        for q, r in enumerate(rows):
            ja, jb, _ = _row(core, *r)
            sets.append(complement(ja, jb))
            labels.append(f"{case}#{q + 1}")
    ja = frozenset(SIX_CORE + SIX_A_EXTRA)
    jb = frozenset(SIX_CORE)
    for x in SIX_JE:
        if six_variant == "left-maximal" and x not in covered(ja, jb):
            continue
        sets.append(frozenset(SIX_JE) - {x})
        labels.append(f"6.1-x{x}")
    return Candidates(sets, labels)


def _swap_maps(maps: str) -> list[tuple[Symmetry, Symmetry]]:
    """Pairs (sigma, phi_2) whose composite sends a J_e candidate to a possible J_f.

    ``"coset"``: sigma over the 68 E-preserving symmetries; the composites are
    exactly the symmetries exchanging E and F.  ``"full"``: sigma over all 136,
    so half the composites keep E in place and compare two E-side sets.
    """
    group = symmetries(EQUIVALENCE_MULTIPLIERS if maps == "coset" else FULL_MULTIPLIERS)
    doubling = Symmetry(0, 1, 2)
    return [(g, doubling) for g in group]


def _exchanges_e_f(g: Symmetry) -> bool:
    # composite multiplier is 2k; it exchanges E and F iff 2k is not +-1, +-4
    return (2 * g.k) % N not in (1, 4, 13, 16)


def final_disjointness_check(six_variant: str = "all", maps: str = "coset") -> VerificationReport:
    """J_e & sigma(phi_2(J'_e)) must be non-empty for all candidate pairs and symmetries."""
    if maps not in ("coset", "full"):
        raise ValueError("maps must be 'coset' or 'full'")
    cands = je_candidates(six_variant)
    pairs = _swap_maps(maps)
    rep = VerificationReport(f"J_e and J_f cannot be disjoint ({six_variant}, {maps})")
    images = [[g(dbl(other)) for g, dbl in pairs] for other in cands.sets]
    for p, je in enumerate(cands.sets):
        for q in range(len(cands.sets)):
            for (g, _), jf in zip(pairs, images[q]):
                rep.expect(bool(je & jf), first=cands.labels[p], second=cands.labels[q],
                           symmetry=(g.shift, g.sign, g.k), exchanges_e_f=_exchanges_e_f(g))
    rep.details.update(candidates=len(cands.sets), maps=len(pairs), combinations=rep.checked,
                       failures_exchanging_e_f=sum(f["exchanges_e_f"] for f in rep.failures))
    return rep


def unbalanced_case_check() -> VerificationReport:
    """j_0 = 23 against j_1 = 21: the 23-side J_e meets every transported 21-side J_e."""
    rep = VerificationReport("j_0 = 23 and j_1 = 21 are incompatible")
    je23 = frozenset(SIX_JE)
    pairs = _swap_maps("coset")
    for cls in enumerate_classes(4):
        for ja, jb in extensions(cls.representative):
            other = complement(ja, jb)
            for g, dbl in pairs:
                rep.expect(bool(je23 & g(dbl(other))), core=cls.representative,
                           j_e=_key(other), symmetry=(g.shift, g.sign, g.k))
    return rep
