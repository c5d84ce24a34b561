"""Distance certificates for the edge-pair case analysis on the Biggs-Smith graph.

The representative pairs below cover the distance classes of pairs of
distinct edges (u,v),(x,y), with one exception handled separately in
``verify_case_certificates``.  For each representative we re-check the claimed
endpoint distances, the supporting geodesics or 9-cycles, and that some
maximum independent set (size 43) avoids all four endpoints.  The solver's
set stands in for the hand-drawn sets, which are not available as data.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .autom import canonical_profile
from .construct import LabeledBS
from .graph import is_cycle, is_path
from .mis import MisSolver, alpha_avoiding
from .report import VerificationReport

ALPHA_BS = 43


@dataclass(frozen=True)
class CaseCertificate:
    """One representative pair: edges (u,v),(x,y) with expected distances.

    ``distances`` maps the endpoint pairs (v,x),(v,y),(u,x),(u,y) to their
    expected values.  ``paths`` are sequences that must be geodesics between
    their ends, ``disjoint`` marks the path list as internally disjoint, and
    ``cycle_certs`` lists (cycle, off-cycle edge) 9-cycle certificates.
    """

    case: str
    u: str
    v: str
    x: str
    y: str
    distances: tuple[int, int, int, int]
    paths: tuple[tuple[str, ...], ...] = ()
    interior: tuple[str, ...] = ()
    path_ends_beside_x: bool = False
    disjoint: bool = False
    cycle_certs: tuple[tuple[tuple[str, ...], tuple[str, str]], ...] = ()


def _a_run(start: int, stop: int, step: int) -> tuple[str, ...]:
    out = []
    i = start
    while True:
        out.append(f"{(i - 1) % 17 + 1}a")
        if i == stop:
            break
        i += step
    return tuple(out)


def _case_1a() -> list[CaseCertificate]:
    rows = [
        (0, ("11a", "12a"), ("12a", "13a"), ("11a", "12a", "13a")),
        (1, ("8b", "12b"), ("12e", "12f"), ("8b", "12b", "12e", "12f")),
        (2, ("2c", "4c"), ("8c", "10c"), ("2c", "4c", "6c", "8c", "10c")),
        (3, ("16a", "15a"), ("12a", "11a"), _a_run(16, 11, -1)),
        (4, ("1a", "17a"), ("13a", "12a"), _a_run(18, 12, -1)),
        (5, ("1a", "17a"), ("12a", "11a"), _a_run(18, 11, -1)),
    ]
    return [
        CaseCertificate(f"1.a d={d}", u, v, x, y, (d, d + 1, d + 1, d + 2),
                        paths=(path,), interior=(v, x) if d else (v,))
        for d, (u, v), (x, y), path in rows
    ]


def _case_1b() -> list[CaseCertificate]:
    rows = [
        (3, ("1a", "17a"), ("14a", "14e"), _a_run(18, 13, -1)),
        (4, ("1a", "17a"), ("13a", "13e"), _a_run(18, 12, -1)),
        (5, ("13a", "12a"), ("7a", "7e"), _a_run(13, 6, -1)),
    ]
    out = []
    for d, (u, v), (x, y), path in rows:
        vy = d + 1 if d == 3 else d
        out.append(CaseCertificate(f"1.b d={d}", u, v, x, y, (d, vy, d + 1, d + 1),
                                   paths=(path,), interior=(v, x), path_ends_beside_x=True))
    return out


def _case_1c() -> CaseCertificate:
    return CaseCertificate(
        "1.c d=6", "17a", "1a", "7a", "7e", (6, 6, 7, 6),
        paths=(_a_run(17, 24, 1), ("17a", "16a", "16e", "16b", "3b", "7b", "7e", "7a")),
        disjoint=True,
    )


def _case_2() -> CaseCertificate:
    c1 = ("2e", "2f", "2c", "4c", "6c", "6f", "6e", "6b", "2b")
    c2 = ("2e", "2f", "2d", "10d", "10f", "10e", "10b", "6b", "2b")
    return CaseCertificate(
        "2 d=5", "2b", "2e", "8c", "10c", (5, 5, 5, 5),
        cycle_certs=(
            (c1, ("6c", "8c")),
            (c2, ("10f", "10c")),
            (tuple(reversed(c1)), ("6c", "8c")),
            (tuple(reversed(c2)), ("10f", "10c")),
        ),
    )


def case_certificates() -> list[CaseCertificate]:
    return _case_1a() + _case_1b() + [_case_1c(), _case_2()]


def _check_one(bs: LabeledBS, cert: CaseCertificate, rep: VerificationReport,
               solver: MisSolver) -> tuple[int, int, int, int]:
    g = bs.graph
    d = bs.d
    tag = cert.case
    rep.expect(g.has_edge(*bs.idx(cert.u, cert.v)) and g.has_edge(*bs.idx(cert.x, cert.y)),
               case=tag, bullet="edges", problem="listed pair is not two edges")
    got = (d(cert.v, cert.x), d(cert.v, cert.y), d(cert.u, cert.x), d(cert.u, cert.y))
    rep.expect(got == cert.distances, case=tag, bullet="distances",
               expected=cert.distances, got=got)
    rep.expect(min(got) == cert.distances[0], case=tag, bullet="distances",
               problem="(v,x) is not the shortest endpoint distance")

    for path in cert.paths:
        seq = bs.idx(*path)
        ok = is_path(g, seq) and d(path[0], path[-1]) == len(path) - 1
        rep.expect(ok, case=tag, bullet="geodesic", path=list(path), length=len(path) - 1)
        for w in cert.interior:
            rep.expect(w in path[1:-1], case=tag, bullet="geodesic", path=list(path),
                       problem=f"{w} is not interior")

    if cert.case.startswith("1.a"):
        path = cert.paths[0]
        rep.expect(path[0] == cert.u and path[-1] == cert.y and len(path) - 1 == cert.distances[3],
                   case=tag, bullet="geodesic", problem="path is not a (u,y)-geodesic")
    if cert.path_ends_beside_x:
        path = cert.paths[0]
        z = path[-1]
        ok = (path[0] == cert.u and len(path) - 1 == cert.distances[0] + 2
              and z != cert.y and g.has_edge(*bs.idx(z, cert.x)))
        rep.expect(ok, case=tag, bullet="geodesic", end=z,
                   problem="path must run from u to a neighbour of x other than y")
    if cert.disjoint:
        p, q = cert.paths
        ends_ok = {p[0], p[-1]} == {q[0], q[-1]} == {cert.u, cert.x}
        rep.expect(ends_ok and not set(p[1:-1]) & set(q[1:-1]), case=tag,
                   bullet="disjoint geodesics", paths=[list(p), list(q)])
        rep.expect(cert.v in p[1:-1] + q[1:-1] and cert.y in p[1:-1] + q[1:-1], case=tag,
                   bullet="disjoint geodesics", problem="v and y must both be interior")

    for cyc, (z, t) in cert.cycle_certs:
        root = cyc[0]
        seq = bs.idx(*cyc)
        rep.expect(len(cyc) == 9 and is_cycle(g, seq), case=tag, bullet="9-cycle",
                   cycle=list(cyc))
        ok = (root in (cert.u, cert.v) and t in (cert.x, cert.y) and cyc[4] == z and d(root, z) == 4 and t not in cyc
              and g.has_edge(*bs.idx(z, t)) and d(root, t) == 5)
        rep.expect(ok, case=tag, bullet="9-cycle", root=root, vertex=z, off_cycle=t)

    forbidden = bs.idx(cert.u, cert.v, cert.x, cert.y)
    res = alpha_avoiding(g, forbidden, solver=solver)
    rep.expect(res.size == ALPHA_BS, case=tag, bullet="avoiding set", achieved=res.size)
    rep.details.setdefault("avoiding_sets", {})[tag] = bs.labels(res.witness)
    return canonical_profile(got)


def verify_case_certificates(bs: LabeledBS) -> VerificationReport:
    """Replay every representative pair and compare against all distance classes.

    The listed cases do not reach every class of distinct edge pairs: the
    profile with rows (6,7),(7,6) maps to itself under the u<->v, x<->y swap,
    so it never lands in another case.  Such classes are reported in
    ``details["uncovered_classes"]`` and their first pair (edge order) is
    still required to have an avoiding set of size 43.
    """
    rep = VerificationReport("edge-pair case certificates")
    g = bs.graph
    solver = MisSolver(g)
    covered = {_check_one(bs, c, rep, solver) for c in case_certificates()}

    dist = bs.dist
    first: dict[tuple[int, int, int, int], tuple[int, int, int, int]] = {}
    for (u, v), (x, y) in combinations(g.edges, 2):
        key = canonical_profile((int(dist[v][x]), int(dist[v][y]),
                                 int(dist[u][x]), int(dist[u][y])))
        first.setdefault(key, (u, v, x, y))
    uncovered = []
    for key in sorted(set(first) - covered):
        pair = first[key]
        res = alpha_avoiding(g, pair, solver=solver)
        labels = [bs.label(w) for w in pair]
        rep.expect(res.size == ALPHA_BS, case="uncovered", bullet="avoiding set",
                   profile=key, pair=labels, achieved=res.size)
        uncovered.append({"profile": list(key), "pair": labels, "avoiding_alpha": res.size})
    rep.details["distance_classes"] = len(first)
    rep.details["cases"] = len(case_certificates())
    rep.details["uncovered_classes"] = uncovered
    return rep
