"""Census scan: run the pair-deletion check over a file of graph6 records."""

from __future__ import annotations

import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from typing import Iterable, Iterator

from .autom import SearchBudgetExceeded
from .graph import Graph6Error, parse_graph6
from .hyper import three_edge_coloring, verify_lovasz_property
from .mis import max_independent_set


@dataclass
class RunConfig:
    jobs: int = 1
    mode: str = "orbit"
    node_budget: int = 200_000
    min_n: int | None = None
    max_n: int | None = None
    require_cubic: bool = False
    require_colorable: bool = False
    skip: int = 0
    timing: bool = True  # False writes elapsed = 0.0 so output is byte-reproducible

    def validate(self) -> None:
        if self.jobs < 1:
            raise ValueError("jobs must be >= 1")
        if self.node_budget < 1:
            raise ValueError("node budget must be positive")
        if self.mode not in ("brute", "orbit"):
            raise ValueError(f"unknown mode {self.mode!r}")
        if self.skip < 0:
            raise ValueError("skip must be >= 0")


@dataclass
class ScanRecord:
    source_line: int
    n: int
    m: int
    cubic: bool
    colorable3: bool | None = None
    alpha: int | None = None
    property_holds: bool | None = None
    failing_pair: list | None = None
    elapsed: float = 0.0

    def as_dict(self) -> dict:
        return asdict(self)


@dataclass
class ScanError:
    source_line: int
    error: str
    offset: int | None = None
    kind: str = field(default="parse_error")

    def as_dict(self) -> dict:
        return asdict(self)


def read_records(lines: Iterable[str], skip: int = 0) -> Iterator[tuple[int, str]]:
    """(1-based line number, text) for every non-blank, non-comment line after ``skip`` records."""
    seen = 0
    for lineno, raw in enumerate(lines, start=1):
        text = raw.strip()
        if not text or text.startswith("#"):
            continue
        seen += 1
        if seen <= skip:
            continue
        yield lineno, text


def _wanted(g, cfg: RunConfig) -> bool:
    if cfg.min_n is not None and g.n < cfg.min_n:
        return False
    if cfg.max_n is not None and g.n > cfg.max_n:
        return False
    if cfg.require_cubic and not g.is_cubic():
        return False
    return True


def scan_one(lineno: int, text: str, cfg: RunConfig):
    """Record for one graph6 line, a ScanError, or None if filtered out."""
    t0 = time.perf_counter()
    try:
        g = parse_graph6(text)
    except Graph6Error as exc:
        return ScanError(lineno, str(exc), exc.offset)
    if not _wanted(g, cfg):
        return None
    rec = ScanRecord(lineno, g.n, g.m, g.is_cubic())
    if rec.cubic:
        try:
            rec.colorable3 = three_edge_coloring(g, node_budget=cfg.node_budget) is not None
        except SearchBudgetExceeded:
            rec.colorable3 = None
        if cfg.require_colorable and rec.colorable3 is not True:
            return None
        rep = verify_lovasz_property(g, cfg.mode, jobs=1, stop_early=True,
                                     group_budget=cfg.node_budget)
        rec.alpha = rep.alpha
        rec.property_holds = rep.passed
        if not rep.passed:
            rec.failing_pair = rep.failures[0]["pair"]
    else:
        if cfg.require_colorable:
            return None
        rec.alpha = max_independent_set(g).size
    rec.elapsed = round(time.perf_counter() - t0, 6) if cfg.timing else 0.0
    return rec


def _scan_chunk(chunk, cfg):
    return [scan_one(lineno, text, cfg) for lineno, text in chunk]


def scan_census(lines: Iterable[str], cfg: RunConfig) -> Iterator[ScanRecord | ScanError]:
    """Scan graph6 lines in input order; parallel over graphs when ``cfg.jobs > 1``."""
    cfg.validate()
    records = list(read_records(lines, cfg.skip))
    if cfg.jobs == 1 or len(records) < 2:
        for lineno, text in records:
            out = scan_one(lineno, text, cfg)
            if out is not None:
                yield out
        return
    chunk = max(1, len(records) // (cfg.jobs * 4))
    pieces = [records[s:s + chunk] for s in range(0, len(records), chunk)]
    with ProcessPoolExecutor(max_workers=cfg.jobs) as pool:
        for outs in pool.map(_scan_chunk, pieces, [cfg] * len(pieces)):
            for out in outs:
                if out is not None:
                    yield out
