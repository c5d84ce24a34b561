"""One test per acceptance criterion, each at its stated tolerance.

Every test records a pass/fail line; the lines are printed together in the
terminal summary (and inline with ``pytest -s``).
"""

import os
import time
from collections import defaultdict
from math import comb

import networkx as nx
import pytest

from conftest import from_nx, named_small_graphs, random_cubic, random_cubic_corpus, record_criterion
from lovaszcheck.appendix import (
    CirculantSpec, canonical_set, circulant_graph, enumerate_classes, final_disjointness_check,
    symmetries, verify_claims,
)
from lovaszcheck.autom import (
    automorphism_group, h_preserving_group, is_automorphism, letter_action,
    pair_orbits_by_distance, verify_pair_transitivity,
)
from lovaszcheck.certificates import verify_case_certificates
from lovaszcheck.construct import (
    build_biggs_smith, verify_acycle_geodesics, verify_displaced_paths,
)
from lovaszcheck.graph import distance_invariants, girth, parse_graph6, petersen_graph, complete_graph
from lovaszcheck.hyper import (
    hamilton_cycle, hypergraph_matching_number, line_hypergraph, matching_and_cover,
    three_edge_coloring, tripartite_line_hypergraph, verify_lovasz_property,
    weak_conjecture_witness,
)
from lovaszcheck.levels import verify_level_set_properties
from lovaszcheck.mis import alpha_avoiding, brute_force_alpha, max_independent_set
from lovaszcheck.scan import RunConfig, ScanRecord, scan_census

BS_ARRAY = ((3, 2, 2, 2, 1, 1, 1), (1, 1, 1, 1, 1, 1, 3))


def _timed(fn, *args, **kw):
    t0 = time.perf_counter()
    out = fn(*args, **kw)
    return out, time.perf_counter() - t0


def _finish(key, checks, detail):
    ok = all(checks.values())
    bad = [name for name, v in checks.items() if not v]
    record_criterion(key, ok, detail + (f"  failed: {bad}" if bad else ""))
    assert ok, bad


def test_criterion_1_construction_invariants():
    t0 = time.perf_counter()
    bs = build_biggs_smith()
    g = bs.graph
    inv = distance_invariants(g)
    elapsed = time.perf_counter() - t0
    checks = {
        "102 vertices": g.n == 102,
        "153 edges": g.m == 153,
        "3-regular": inv.regular_degree == 3,
        "girth 9": inv.girth == 9,
        "diameter 7": inv.diameter == 7,
        "intersection array": inv.intersection_array == BS_ARRAY,
        "< 1 s": elapsed < 1.0,
    }
    _finish("1", checks, f"n={g.n} m={g.m} girth={inv.girth} diameter={inv.diameter} "
                         f"array={inv.intersection_array} in {elapsed:.2f}s (< 1 s)")


def test_criterion_2_independence_number(bs):
    res, elapsed = _timed(max_independent_set, bs.graph)
    from lovaszcheck.mis import check_independent
    checks = {"alpha = 43": res.size == 43,
              "witness independent": check_independent(bs.graph, res.witness) and len(res.witness) == 43,
              "< 10 s": elapsed < 10.0}
    _finish("2", checks, f"alpha={res.size} in {elapsed:.2f}s (< 10 s, single-threaded)")


def test_criterion_3_pair_deletion_on_biggs_smith(bs, bs_group):
    brute, t_brute = _timed(verify_lovasz_property, bs.graph, "brute", jobs=1)
    orbit, t_orbit = _timed(verify_lovasz_property, bs.graph, "orbit", jobs=1, group=bs_group)
    checks = {
        "brute checks C(153,2) pairs": brute.pairs_checked == comb(153, 2) == 11628,
        "brute zero failures": brute.passed and not brute.bad_edges,
        "brute < 30 min at jobs=1": t_brute < 1800,
        "orbit agrees": orbit.passed and orbit.pairs_checked == 152 and not orbit.orbit_fallback,
        "orbit < 1 min": t_orbit < 60,
    }
    _finish("3", checks, f"brute {brute.pairs_checked} pairs, {len(brute.failures)} failures, "
                         f"{t_brute:.0f}s at jobs=1 (< 1800 s); orbit {orbit.pairs_checked} pairs, "
                         f"{t_orbit:.1f}s (< 60 s); jobs=8 target not measurable on one core")


def test_criterion_4_level_set_suite(bs):
    levels = verify_level_set_properties(bs.graph, names=bs.label)
    parts = {f.get("part") for f in levels.failures}
    acycle = verify_acycle_geodesics(bs)
    displaced = verify_displaced_paths(bs)
    checks = {
        "parts (1)-(7) on all 102 roots": levels.passed and not parts,
        "a-cycle geodesics": acycle.passed,
        "displaced paths": displaced.passed,
    }
    _finish("4", checks, f"level sets {levels.checked} checks, a-cycle {acycle.checked}, "
                         f"displaced {displaced.checked}, failures "
                         f"{len(levels.failures) + len(acycle.failures) + len(displaced.failures)}")


def test_criterion_5_symmetry(bs):
    t0 = time.perf_counter()
    g = bs.graph
    group = automorphism_group(g)
    per_distance = pair_orbits_by_distance(g, group)
    pairs = verify_pair_transitivity(g, group)
    maps = h_preserving_group(bs)
    actions_ok = True
    for p in maps:
        # the image of an H-set's letters is one H-set with the multiplier's letter action
        for i in range(1, 18):
            block = [bs.index(f"{i}{t}") for t in "abcdef"]
            if len({bs.hset(p[v]) for v in block}) != 1:
                actions_ok = False
    k_actions = {k: letter_action(k) for k in (1, 2, 4, 8)}
    actions_ok &= k_actions[4] == {"a": "b", "b": "a", "c": "d", "d": "c", "e": "e", "f": "f"}
    actions_ok &= k_actions[2] == {"a": "c", "b": "d", "c": "b", "d": "a", "e": "f", "f": "e"}
    elapsed = time.perf_counter() - t0
    checks = {
        "order 2448": group.order == 2448,
        "one vertex orbit": len(group.vertex_orbits) == 1,
        "one edge orbit": len(group.edge_orbits) == 1,
        "one ordered-pair orbit per distance 0..7": per_distance == {d: 1 for d in range(8)},
        "pair transitivity": pairs.passed,
        "136 H-preserving automorphisms": len(set(maps)) == 136
        and all(is_automorphism(g, p) for p in maps),
        "part actions": actions_ok,
        "< 1 min": elapsed < 60,
    }
    _finish("5", checks, f"|Aut|={group.order}, orbits {len(group.vertex_orbits)}/"
                         f"{len(group.edge_orbits)}, pair classes {pairs.details}, "
                         f"{len(set(maps))} H-maps, {elapsed:.1f}s (< 60 s)")


TABLE_REPS = {
    6: [(1, 3, 6, 8, 11, 13)],
    5: [(1, 3, 6, 8, 11), (1, 3, 6, 9, 11), (1, 3, 6, 9, 12), (1, 3, 6, 8, 13)],
    4: [(1, 3, 6, 8), (1, 3, 8, 10), (1, 3, 9, 11), (1, 3, 6, 9), (1, 3, 8, 11),
        (1, 3, 8, 13), (1, 3, 6, 13), (1, 3, 6, 15)],
}


def test_criterion_6_appendix(bs):
    t0 = time.perf_counter()
    alpha_c = max_independent_set(circulant_graph(CirculantSpec(17, frozenset({1, 4})))).size
    group = symmetries()
    counts, reps_ok = {}, True
    for size, reps in TABLE_REPS.items():
        classes = enumerate_classes(size)
        counts[size] = len(classes)
        reps_ok &= sorted(c.representative for c in classes) == sorted(
            canonical_set(r, group) for r in reps)
    claims = verify_claims(bs)
    final = final_disjointness_check("all", "coset")
    final_lm = final_disjointness_check("left-maximal", "coset")
    elapsed = time.perf_counter() - t0
    checks = {
        "alpha(C(17,{1,4})) = 6": alpha_c == 6,
        "class counts 1/4/8": counts == {6: 1, 5: 4, 4: 8},
        "representatives match tables": reps_ok,
        "claims 1-5": claims.passed,
        "closing check": final.passed and final_lm.passed,
        "< 1 min": elapsed < 60,
    }
    _finish("6", checks, f"alpha={alpha_c}, classes {counts[6]}/{counts[5]}/{counts[4]}, "
                         f"claims {claims.checked} checks, closing check {final.checked} "
                         f"combinations over the {final.details['maps']} E/F-exchanging maps, "
                         f"{elapsed:.1f}s (< 60 s)")


@pytest.mark.xfail(strict=True, reason="literal x136 reading compares same-side sets; see ledger")
def test_criterion_6_literal_all_136_maps():
    rep = final_disjointness_check("all", "full")
    record_criterion("6-literal", rep.passed,
                     f"closing check with sigma over all 136 maps: {len(rep.failures)} of "
                     f"{rep.checked} combinations empty, "
                     f"{rep.details['failures_exchanging_e_f']} of them from E/F-exchanging maps "
                     f"(expected failure)")
    assert rep.passed


def test_criterion_7_case_certificates(bs):
    rep = verify_case_certificates(bs)
    bullets = sorted({f.get("bullet") for f in rep.failures})
    checks = {"every bullet": rep.passed,
              "avoiding sets of size 43": all(
                  len(s) == 43 for s in rep.details["avoiding_sets"].values())}
    _finish("7", checks, f"{rep.checked} checks over {rep.details['cases']} cases, failing "
                         f"bullets {bullets}, uncovered distance classes "
                         f"{[u['profile'] for u in rep.details['uncovered_classes']]} re-checked "
                         f"with alpha 43")


def test_criterion_8_hypergraph_layer(bs, bs_group):
    g = bs.graph
    lh = line_hypergraph(g)
    colour = three_edge_coloring(g)
    tri = tripartite_line_hypergraph(g, colour) if colour else None
    nu, tau = matching_and_cover(lh)
    res, elapsed = _timed(weak_conjecture_witness, g, 2, group=bs_group)
    w = res.witness
    recheck = alpha_avoiding(g, w.removed).size if w else None
    checks = {
        "3-uniform, 153 vertices, 102 hyperedges": lh.hyper.is_uniform(3)
        and lh.hyper.n_vertices == 153 and len(lh.hyper.edges) == 102,
        "3-edge-colouring and tripartition": tri is not None and tri.partition_valid(),
        "nu = 43": nu == 43,
        "k=2 witness, drop >= 2": w is not None and len(w.edges) == 4 and w.drop >= 2,
        "one alpha_avoiding re-check": w is not None and recheck == w.achieved <= 41,
    }
    edges = [bs.labels(e) for e in w.edges] if w else None
    _finish("8", checks, f"L(BS) {lh.hyper.n_vertices} vertices / {len(lh.hyper.edges)} edges, "
                         f"nu={nu}, tau={tau}, witness {edges} alpha {w.alpha if w else '-'}"
                         f" -> {recheck} ({elapsed:.1f}s)")


def test_criterion_9_negative_controls():
    pet, k4 = petersen_graph(), complete_graph(4)
    rep_p = verify_lovasz_property(pet, "brute")
    rep_k = verify_lovasz_property(k4, "brute")
    witnesses_ok = True
    for g, rep in ((pet, rep_p), (k4, rep_k)):
        f = next((f for f in rep.failures if f["achieved"] is not None), None)
        verts = {v for e in f["pair"] for v in e} if f else set()
        witnesses_ok &= f is not None and alpha_avoiding(g, verts).size < rep.alpha
    corpus = random_cubic_corpus(200, 24) + [g for g in named_small_graphs().values() if g.n <= 24]
    alpha_mismatch = nu_mismatch = 0
    for g in corpus:
        a = brute_force_alpha(g)
        alpha_mismatch += max_independent_set(g).size != a
        nu_mismatch += hypergraph_matching_number(line_hypergraph(g).hyper) != a
    checks = {
        "Petersen and K4 fail with witnesses": not rep_p.passed and not rep_k.passed and witnesses_ok,
        "Petersen not Hamiltonian": hamilton_cycle(pet) is None,
        "Petersen not 3-edge-colourable": three_edge_coloring(pet) is None,
        "corpus >= 200 random cubic + named": len(corpus) >= 200,
        "solver alpha = brute alpha": alpha_mismatch == 0,
        "nu(L(g)) = alpha(g)": nu_mismatch == 0,
    }
    _finish("9", checks, f"Petersen {len(rep_p.failures)} / K4 {len(rep_k.failures)} failing pairs; "
                         f"{len(corpus)} graphs (n <= 24): {alpha_mismatch} alpha and "
                         f"{nu_mismatch} nu mismatches")


KNOWN_CONNECTED_CUBIC = {4: 1, 6: 2, 8: 5, 10: 19, 12: 85}


def _distance_key(h):
    prof = []
    for v in h:
        counts = [0] * len(h)
        for d in nx.single_source_shortest_path_length(h, v).values():
            counts[d] += 1
        prof.append(tuple(counts))
    return tuple(sorted(prof))


def all_connected_cubic(n: int, max_samples: int = 100_000):
    """Every connected cubic graph on n vertices, by seeded sampling until the known count is hit."""
    buckets = defaultdict(list)
    found = 0
    for seed in range(max_samples):
        h = nx.random_regular_graph(3, n, seed=seed)
        if not nx.is_connected(h):
            continue
        key = _distance_key(h)
        if any(nx.is_isomorphic(h, o) for o in buckets[key]):
            continue
        buckets[key].append(h)
        found += 1
        if found == KNOWN_CONNECTED_CUBIC[n]:
            break
    return [h for hs in buckets.values() for h in hs]


def test_criterion_10_substitute_small_cubic_sweep():
    from lovaszcheck.graph import write_graph6
    complete = True
    lines = []
    for n in sorted(KNOWN_CONNECTED_CUBIC):
        graphs = all_connected_cubic(n)
        complete &= len(graphs) == KNOWN_CONNECTED_CUBIC[n]
        lines += [write_graph6(from_nx(h)) for h in graphs]
    exhaustive = len(lines)
    lines += [write_graph6(random_cubic(n, seed)) for n in (14, 16, 18, 20) for seed in range(40)]
    recs = list(scan_census(lines, RunConfig(timing=False)))
    holds = sum(1 for r in recs if isinstance(r, ScanRecord) and r.property_holds)
    checks = {
        "all connected cubic graphs on <= 12 vertices": complete,
        "every record scanned": len(recs) == len(lines),
        "no graph satisfies the property": holds == 0,
    }
    _finish("10-substitute", checks,
            f"{exhaustive} connected cubic graphs on <= 12 vertices (complete) + "
            f"{len(lines) - exhaustive} random cubic graphs on 14-20 vertices: {holds} pass")


def test_criterion_10_census_scan():
    path = os.environ.get("LOVASZCHECK_CENSUS")
    if not path:
        record_criterion("10", None, "no census file (set LOVASZCHECK_CENSUS); substitute runs instead")
        pytest.skip("census input not supplied")
    with open(path) as fh:
        recs = list(scan_census(fh, RunConfig(max_n=166, require_cubic=True, timing=False)))
    passing = [r for r in recs if isinstance(r, ScanRecord) and r.property_holds]
    ok = len(passing) == 1
    if ok:
        lines = open(path).read().splitlines()
        g = parse_graph6(lines[passing[0].source_line - 1])
        inv = distance_invariants(g)
        ok = g.n == 102 and girth(g) == 9 and inv.intersection_array == BS_ARRAY
    record_criterion("10", ok, f"{len(recs)} records, {len(passing)} pass the property")
    assert ok
