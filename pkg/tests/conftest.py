import networkx as nx
import pytest

from lovaszcheck.autom import automorphism_group
from lovaszcheck.construct import build_biggs_smith
from lovaszcheck.graph import Graph, complete_graph, cycle_graph, petersen_graph


@pytest.fixture(scope="session")
def bs():
    return build_biggs_smith()


@pytest.fixture(scope="session")
def bs_group(bs):
    return automorphism_group(bs.graph)


def from_nx(h) -> Graph:
    h = nx.convert_node_labels_to_integers(h)
    return Graph.from_edges(h.number_of_nodes(), h.edges())


def random_cubic(n: int, seed: int) -> Graph:
    return from_nx(nx.random_regular_graph(3, n, seed=seed))


def random_cubic_corpus(count: int = 200, max_n: int = 24):
    sizes = list(range(4, max_n + 1, 2))
    return [random_cubic(sizes[k % len(sizes)], seed=k) for k in range(count)]


def named_small_graphs() -> dict[str, Graph]:
    return {
        "K4": complete_graph(4),
        "K3,3": from_nx(nx.complete_bipartite_graph(3, 3)),
        "prism": from_nx(nx.circular_ladder_graph(3)),
        "cube": from_nx(nx.hypercube_graph(3)),
        "petersen": petersen_graph(),
        "heawood": from_nx(nx.heawood_graph()),
        "moebius-kantor": from_nx(nx.LCF_graph(16, [5, -5], 8)),
        "pappus": from_nx(nx.pappus_graph()),
        "dodecahedron": from_nx(nx.dodecahedral_graph()),
        "desargues": from_nx(nx.desargues_graph()),
        "frucht": from_nx(nx.frucht_graph()),
        "C5": cycle_graph(5),
        "C7": cycle_graph(7),
    }


# -- acceptance reporting ------------------------------------------------------------

ACCEPTANCE_LINES: dict[str, str] = {}


def record_criterion(key: str, ok: bool | None, detail: str) -> None:
    status = {True: "PASS", False: "FAIL", None: "SKIP"}[ok]
    line = f"criterion {key}: {status}  {detail}"
    ACCEPTANCE_LINES[key] = line
    print(line)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE_LINES, key=lambda k: (int(k.split("-")[0]), k)):
        terminalreporter.write_line(ACCEPTANCE_LINES[key])
