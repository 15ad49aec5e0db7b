"""Exhaustive and sampled scans over small three-colored graphs.

Graph codes: with ``m`` edge slots per color (``n*(n-1)`` without self-loops,
``n*n`` with them, row-major ``(u, v)`` order), color ``k`` owns code bits
``[k*m, (k+1)*m)``.  Canonical order is ascending code.  Two-relation
criteria (JUMPING_AB) scan the A/B space only, with C empty.

Bulk classification runs in compiled kernels; anything a scan reports is
re-checked from scratch through the pure-Python evaluator before it is
returned.
"""

from __future__ import annotations

import logging
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace

import numpy as np

from . import _kernels as K
from .criteria import (
    CriterionUsageError,
    compiled_program,
    criterion_holds,
    get_criterion,
)
from .relation import Relation, TriGraph, is_transitive, is_well_founded

log = logging.getLogger(__name__)

DEFAULT_BUDGET = 1 << 27
CHUNK = 1 << 16  # sampled chunk size; part of the sample-sequence definition
EXHAUSTIVE_CHUNK = 1 << 20
GENERATOR = "numpy PCG64, SeedSequence(seed, spawn_key=(chunk,)), chunk=65536"


class ScanUsageError(ValueError):
    pass


@dataclass(frozen=True)
class ScanConfig:
    n: int
    mode: str = "exhaustive"  # or "sample"
    sample_count: int = 0
    seed: int = 0
    require_colors_wf: bool = True
    loops: bool = False
    workers: int = 1
    budget: int = DEFAULT_BUDGET

    def __post_init__(self):
        if self.mode not in ("exhaustive", "sample"):
            raise ScanUsageError(f"unknown scan mode {self.mode!r}")
        if not 1 <= self.n <= 8:
            raise ScanUsageError("scans support 1..8 nodes")
        if self.mode == "sample" and self.sample_count < 1:
            raise ScanUsageError("sample mode needs sample_count >= 1")
        if self.workers < 1:
            raise ScanUsageError("workers must be >= 1")


@dataclass
class ScanReport:
    command: str
    criteria: tuple[str, ...]
    config: ScanConfig
    graphs_examined: int = 0
    counts: dict = field(default_factory=dict)
    counterexamples: list = field(default_factory=list)  # (code, TriGraph)
    witnesses: dict = field(default_factory=dict)  # label -> (code, TriGraph) | None
    elapsed: float = 0.0

    def to_dict(self) -> dict:
        cfg = self.config
        return {
            "command": self.command,
            "criteria": list(self.criteria),
            "nodes": cfg.n,
            "mode": cfg.mode,
            "samples": cfg.sample_count if cfg.mode == "sample" else None,
            "seed": cfg.seed if cfg.mode == "sample" else None,
            "generator": GENERATOR if cfg.mode == "sample" else None,
            "require_colors_wf": cfg.require_colors_wf,
            "loops": cfg.loops,
            "graphs_examined": self.graphs_examined,
            "counts": dict(self.counts),
            "counterexamples": [graph_entry(c, g) for c, g in self.counterexamples],
            "witnesses": {k: None if v is None else graph_entry(*v)
                          for k, v in self.witnesses.items()},
            "elapsed": self.elapsed,
        }


def graph_entry(code: int, g: TriGraph) -> dict:
    return {
        "code": code,
        "nodes": g.n,
        "A": [f"{u} {v}" for u, v in sorted(g.a)],
        "B": [f"{u} {v}" for u, v in sorted(g.b)],
        "C": [f"{u} {v}" for u, v in sorted(g.c)],
    }


# --- graph space ----------------------------------------------------------

def slots(n: int, loops: bool) -> tuple[np.ndarray, np.ndarray]:
    pairs = [(u, v) for u in range(n) for v in range(n) if loops or u != v]
    su = np.array([u for u, _ in pairs], dtype=np.int64)
    sv = np.array([v for _, v in pairs], dtype=np.int64)
    return su, sv


def slot_count(n: int, loops: bool) -> int:
    return n * n if loops else n * (n - 1)


def graph_from_masks(n: int, masks, loops: bool) -> TriGraph:
    su, sv = slots(n, loops)
    rels = []
    for mask in masks:
        rows = [0] * n
        for j, (u, v) in enumerate(zip(su.tolist(), sv.tolist())):
            if int(mask) >> j & 1:
                rows[u] |= 1 << v
        rels.append(Relation(n, rows))
    return TriGraph(n, *rels)


def graph_from_code(n: int, code: int, loops: bool = False) -> TriGraph:
    m = slot_count(n, loops)
    full = (1 << m) - 1
    return graph_from_masks(n, [code & full, (code >> m) & full, (code >> 2 * m) & full], loops)


def graph_code(g: TriGraph, loops: bool = False) -> int:
    su, sv = slots(g.n, loops)
    m = len(su)
    code = 0
    for k, rel in enumerate(g.colors()):
        for j, (u, v) in enumerate(zip(su.tolist(), sv.tolist())):
            if (u, v) in rel:
                code |= 1 << (k * m + j)
        if not loops and any((x, x) in rel for x in range(g.n)):
            raise ValueError("graph has self-loops but the space excludes them")
    return code


def space_size(n: int, loops: bool = False, colors: int = 3) -> int:
    return 1 << (colors * slot_count(n, loops))


def enumerate_graphs(n: int, loops: bool = False, budget: int = DEFAULT_BUDGET):
    """Every graph on ``n`` nodes exactly once, in ascending code order."""
    size = space_size(n, loops)
    if size > budget:
        raise ScanUsageError(f"{size} graphs on {n} nodes exceeds the budget {budget}")
    for code in range(size):
        yield graph_from_code(n, code, loops)


def _colors_for(*cids: str) -> int:
    return 2 if any("C" in get_criterion(c).requires_empty for c in cids) else 3


# --- chunked classification -----------------------------------------------

def _chunk_masks(cfg: ScanConfig, colors: int, chunk: int) -> tuple[np.ndarray, int]:
    """Masks for one chunk, plus the code of its first graph (-1 if sampled)."""
    m = slot_count(cfg.n, cfg.loops)
    if cfg.mode == "exhaustive":
        lo = chunk * EXHAUSTIVE_CHUNK
        hi = min(lo + EXHAUSTIVE_CHUNK, 1 << (colors * m))
        codes = np.arange(lo, hi, dtype=np.int64)
        masks = np.zeros((hi - lo, 3), dtype=np.int64)
        full = (1 << m) - 1
        for k in range(colors):
            masks[:, k] = (codes >> (k * m)) & full
        return masks, lo
    lo = chunk * CHUNK
    k = min(CHUNK, cfg.sample_count - lo)
    rng = np.random.Generator(np.random.PCG64(np.random.SeedSequence(cfg.seed, spawn_key=(chunk,))))
    masks = np.zeros((k, 3), dtype=np.int64)
    masks[:, :colors] = rng.integers(0, 1 << m, size=(k, colors), dtype=np.int64)
    return masks, -1


def _n_chunks(cfg: ScanConfig, colors: int) -> int:
    if cfg.mode == "exhaustive":
        size = 1 << (colors * slot_count(cfg.n, cfg.loops))
        if size > cfg.budget:
            raise ScanUsageError(
                f"exhaustive space of {size} graphs exceeds the budget {cfg.budget}; "
                "use sample mode")
        return -(-size // EXHAUSTIVE_CHUNK)
    return -(-cfg.sample_count // CHUNK)


_EMPTY_PROGRAM = (np.zeros((0, 3), np.int64), np.zeros((0, 2), np.int64))


def _classify_chunk(args):
    cfg, colors, chunk, cid1, cid2, need_cyclic = args
    masks, lo = _chunk_masks(cfg, colors, chunk)
    su, sv = slots(cfg.n, cfg.loops)
    instr1, cl1 = compiled_program(cid1)
    instr2, cl2 = compiled_program(cid2) if cid2 else _EMPTY_PROGRAM
    flags = np.zeros(len(masks), dtype=np.uint8)
    K.classify_block(masks, cfg.n, su, sv, instr1, cl1, instr2, cl2, cid2 is not None,
                     cfg.require_colors_wf, need_cyclic, flags)
    return chunk, lo, masks, flags


def _run_chunks(cfg: ScanConfig, jobs):
    """Yield chunk results in chunk order regardless of worker count."""
    if cfg.workers == 1:
        for job in jobs:
            yield _classify_chunk(job)
        return
    with ProcessPoolExecutor(max_workers=cfg.workers) as pool:
        yield from pool.map(_classify_chunk, jobs, chunksize=1)


def _code_of(cfg: ScanConfig, masks_row, colors: int) -> int:
    m = slot_count(cfg.n, cfg.loops)
    return sum(int(masks_row[k]) << (k * m) for k in range(colors))


def _entry(cfg, masks_row, colors):
    return _code_of(cfg, masks_row, colors), graph_from_masks(cfg.n, masks_row, cfg.loops)


def revalidate_counterexample(g: TriGraph, cid: str) -> bool:
    """Independent check: colors well-founded, criterion holds, union cyclic."""
    return (all(is_well_founded(r) for r in g.colors())
            and criterion_holds(g, cid)
            and not is_well_founded(g.union()))


# --- scans ----------------------------------------------------------------

def soundness_scan(cfg: ScanConfig, cid: str) -> ScanReport:
    """Graphs with well-founded colors where a sound criterion holds but the
    union is cyclic; any hit would refute the criterion."""
    crit = get_criterion(cid)
    if not crit.sound:
        raise CriterionUsageError(f"{cid} is not a sound criterion; use find_counterexample")
    started = time.perf_counter()
    colors = _colors_for(cid)
    wf_cfg = cfg if cfg.require_colors_wf else replace(cfg, require_colors_wf=True)
    report = ScanReport("scan", (cid,), cfg)
    counts = {"colors_wf": 0, "union_cyclic": 0}
    jobs = [(wf_cfg, colors, c, cid, None, True) for c in range(_n_chunks(cfg, colors))]
    for chunk, lo, masks, flags in _run_chunks(cfg, jobs):
        report.graphs_examined += len(flags)
        counts["colors_wf"] += int(np.count_nonzero(flags & K.FLAG_COLORS_WF))
        counts["union_cyclic"] += int(np.count_nonzero(flags & K.FLAG_UNION_CYCLIC))
        for i in np.flatnonzero(flags & K.FLAG_HOLDS1):
            code, g = _entry(cfg, masks[i], colors)
            if not revalidate_counterexample(g, cid):
                raise RuntimeError(f"kernel and evaluator disagree on graph {code}")
            report.counterexamples.append((code, g))
        log.info("scan %s chunk %d: %d graphs", cid, chunk, report.graphs_examined)
    counts["counterexamples"] = len(report.counterexamples)
    report.counts = counts
    report.elapsed = time.perf_counter() - started
    return report


def _search(cfg: ScanConfig, cid: str):
    get_criterion(cid)
    examined = 0
    sizes = range(1, cfg.n + 1) if cfg.mode == "exhaustive" else (cfg.n,)
    colors = _colors_for(cid)
    for size in sizes:
        sub = replace(cfg, n=size, require_colors_wf=True)
        total = _n_chunks(sub, colors)
        step = max(1, sub.workers)
        for first in range(0, total, step):
            jobs = [(sub, colors, c, cid, None, True) for c in range(first, min(first + step, total))]
            for chunk, lo, masks, flags in _run_chunks(sub, jobs):
                hits = np.flatnonzero(flags & K.FLAG_HOLDS1)
                if not len(hits):
                    examined += len(flags)
                    continue
                examined += int(hits[0]) + 1
                code, g = _entry(sub, masks[hits[0]], colors)
                if not revalidate_counterexample(g, cid):
                    raise RuntimeError(f"kernel and evaluator disagree on graph {code}")
                return (code, g), examined
    return None, examined


def find_counterexample(cfg: ScanConfig, cid: str):
    """First graph, by (node count, code), with well-founded colors, the
    criterion holding and a cyclic union.  Exhaustive mode tries every node
    count up to ``cfg.n``; sample mode searches ``cfg.n`` only.

    Returns ``(code, TriGraph)`` or ``None``.
    """
    return _search(cfg, cid)[0]


def counterexample_report(cfg: ScanConfig, cid: str) -> ScanReport:
    started = time.perf_counter()
    report = ScanReport("scan", (cid,), cfg)
    hit, report.graphs_examined = _search(cfg, cid)
    if hit is not None:
        report.counterexamples.append(hit)
    report.counts = {"counterexamples": len(report.counterexamples)}
    report.elapsed = time.perf_counter() - started
    return report


def compare_criteria(cfg: ScanConfig, left: str, right: str) -> ScanReport:
    """Joint truth table of two criteria over the scanned space, with the
    first graph (in scan order) where exactly one of them holds."""
    started = time.perf_counter()
    colors = _colors_for(left, right)
    report = ScanReport("compare", (left, right), cfg)
    counts = {"both": 0, "left_only": 0, "right_only": 0, "neither": 0}
    first = {"left_only": None, "right_only": None}
    jobs = [(cfg, colors, c, left, right, False) for c in range(_n_chunks(cfg, colors))]
    for chunk, lo, masks, flags in _run_chunks(cfg, jobs):
        report.graphs_examined += len(flags)
        ev = (flags & K.FLAG_EVALUATED) != 0
        h1 = (flags & K.FLAG_HOLDS1) != 0
        h2 = (flags & K.FLAG_HOLDS2) != 0
        counts["both"] += int(np.count_nonzero(ev & h1 & h2))
        counts["left_only"] += int(np.count_nonzero(ev & h1 & ~h2))
        counts["right_only"] += int(np.count_nonzero(ev & ~h1 & h2))
        counts["neither"] += int(np.count_nonzero(ev & ~h1 & ~h2))
        for label, sel, want in (("left_only", ev & h1 & ~h2, (True, False)),
                                 ("right_only", ev & ~h1 & h2, (False, True))):
            if first[label] is None and sel.any():
                code, g = _entry(cfg, masks[np.flatnonzero(sel)[0]], colors)
                got = (criterion_holds(g, left), criterion_holds(g, right))
                if got != want:
                    raise RuntimeError(f"kernel and evaluator disagree on graph {code}")
                first[label] = (code, g)
    counts["evaluated"] = sum(counts[k] for k in ("both", "left_only", "right_only", "neither"))
    report.counts = counts
    report.witnesses = first
    report.elapsed = time.perf_counter() - started
    return report


# --- chain-engine sweeps --------------------------------------------------

_ST_NAMES = {
    "examined": K.ST_EXAMINED, "applicable": K.ST_APPLICABLE, "ok": K.ST_OK,
    "failed": K.ST_FAILED, "budget_exhausted": K.ST_BUDGET, "records": K.ST_RECORDS,
    "max_records": K.ST_MAX_RECORDS, "swallow-A": K.ST_SWALLOW,
    "prefer-B-detour": K.ST_DETOUR, "contract-CB": K.ST_CONTRACT,
    "rewritten": K.ST_REWRITTEN, "color_A": K.ST_COLOR_A, "color_B": K.ST_COLOR_A + 1,
    "color_C": K.ST_COLOR_A + 2,
}


def _extraction_part(args):
    n, loops, cid, lo, hi = args
    su, sv = slots(n, loops)
    instr, clauses = compiled_program(cid)
    mode = K.MODE_THREE_OF_NINE if cid == "THREE_OF_NINE" else K.MODE_TRIPARTITE
    stats = np.zeros(K.ST_SIZE, dtype=np.int64)
    stats[K.ST_FIRST_FAIL] = -1
    K.extraction_sweep(lo, hi, len(su), n, su, sv, mode, instr, clauses, stats)
    return stats


def extraction_scan(n: int, cid: str, loops: bool = True, workers: int = 1,
                    budget: int = DEFAULT_BUDGET, parts: int = 64) -> dict:
    """Run greedy construction and extraction on every graph where ``cid``
    holds and the union is cyclic; validate, replay and cross-check each
    result against the per-color cycle oracle.
    """
    if cid not in ("THREE_OF_NINE", "TRIPARTITE"):
        raise CriterionUsageError(f"no extraction procedure for {cid}")
    size = space_size(n, loops)
    if size > budget:
        raise ScanUsageError(f"{size} graphs exceeds the budget {budget}")
    started = time.perf_counter()
    bounds = [size * i // parts for i in range(parts + 1)]
    jobs = [(n, loops, cid, lo, hi) for lo, hi in zip(bounds, bounds[1:]) if hi > lo]
    if workers == 1:
        results = [_extraction_part(j) for j in jobs]
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_extraction_part, jobs))
    out = {name: 0 for name in _ST_NAMES}
    first_fail = None
    for stats in results:
        for name, slot in _ST_NAMES.items():
            if name == "max_records":
                out[name] = max(out[name], int(stats[slot]))
            else:
                out[name] += int(stats[slot])
        if first_fail is None and stats[K.ST_FIRST_FAIL] >= 0:
            first_fail = {"code": int(stats[K.ST_FIRST_FAIL]),
                          "reason": int(stats[K.ST_FIRST_FAIL_REASON])}
    out.update(criterion=cid, nodes=n, loops=loops, first_failure=first_fail,
               elapsed=time.perf_counter() - started)
    return out


def transitive_masks(n: int, loops: bool = True) -> np.ndarray:
    m = slot_count(n, loops)
    keep = []
    for mask in range(1 << m):
        g = graph_from_masks(n, [mask, 0, 0], loops)
        if is_transitive(g.a):
            keep.append(mask)
    return np.array(keep, dtype=np.int64)


def _clique_part(args):
    n, loops, trans, lo, hi = args
    su, sv = slots(n, loops)
    instr, clauses = compiled_program("THREE_OF_NINE")
    stats = np.zeros(K.CS_SIZE, dtype=np.int64)
    stats[K.CS_FIRST_FAIL] = -1
    K.clique_sweep(trans, lo, hi, n, su, sv, instr, clauses, stats)
    return stats


def clique_scan(n: int = 3, loops: bool = True, workers: int = 1) -> dict:
    """Every graph whose three colors are transitive: where THREE_OF_NINE
    holds and the union is cyclic, the clique witness must be a monochrome
    self-loop."""
    started = time.perf_counter()
    trans = transitive_masks(n, loops)
    T = len(trans)
    jobs = [(n, loops, trans, i, i + 1) for i in range(T)]
    if workers == 1:
        results = [_clique_part(j) for j in jobs]
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_clique_part, jobs))
    out = {"examined": 0, "applicable": 0, "witnessed": 0, "failed": 0}
    first_fail = None
    for stats in results:
        out["examined"] += int(stats[K.CS_EXAMINED])
        out["applicable"] += int(stats[K.CS_APPLICABLE])
        out["witnessed"] += int(stats[K.CS_WITNESSED])
        out["failed"] += int(stats[K.CS_FAILED])
        if first_fail is None and stats[K.CS_FIRST_FAIL] >= 0:
            idx = int(stats[K.CS_FIRST_FAIL])
            first_fail = [int(trans[idx // (T * T)]), int(trans[idx // T % T]), int(trans[idx % T])]
    out.update(nodes=n, transitive_relations=T, first_failure=first_fail,
               elapsed=time.perf_counter() - started)
    return out
