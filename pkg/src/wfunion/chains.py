"""Infinite chains as lassos, and the constructive monochrome extraction.

A lasso is a finite stem followed by a cycle that repeats forever.  The
extraction rewrites the cycle until a single color remains, logging every
rewrite so the result can be replayed.

Rewrite kinds:

``swallow-A``
    ``x -(B|C)-> y -A-> z`` becomes one step ``x -> z`` covered by the first
    clause.
``prefer-B-detour``
    a C-step from ``x``, and whatever follows it up to the nearest later
    chain node ``w`` that ``x`` reaches by B+, is replaced by the shortest
    B-path from ``x`` to ``w`` (TRIPARTITE only).
``contract-CB``
    ``x -C-> y -B-> z`` becomes one step ``x -> z`` covered by the CB clause.

THREE_OF_NINE: swallow every A-step, then contract CB pairs; each merge
shortens the cycle, and a cycle that is not monochrome always has a BA, CA
or CB pair.  TRIPARTITE: the same swallowing (the A·U* alternative cannot
arise on an A-preferring cycle), then B-detours until none apply, then CB
contractions, which can only land in C by then.

The work is done by compiled kernels shared with the exhaustive sweeps.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import _kernels as K
from .criteria import EXTRACTABLE_IDS, CriterionUsageError, compiled_program
from .relation import COLORS, Step, TriGraph, find_cycle

KIND_NAMES = ("swallow-A", "prefer-B-detour", "contract-CB")


class ChainError(Exception):
    pass


class MortalStartError(ChainError, ValueError):
    pass


class InvalidLassoError(ChainError, ValueError):
    pass


class CriterionNotSatisfiedError(ChainError, ValueError):
    pass


class ExtractionError(ChainError, RuntimeError):
    """The rewrite loop got stuck or ran out of budget; always a bug."""


@dataclass(frozen=True)
class Lasso:
    stem: tuple[Step, ...]
    cycle: tuple[Step, ...]

    def __post_init__(self):
        object.__setattr__(self, "stem", tuple(Step(*s) for s in self.stem))
        object.__setattr__(self, "cycle", tuple(Step(*s) for s in self.cycle))

    @property
    def colors(self) -> frozenset[str]:
        return frozenset(s.color for s in self.cycle)

    def is_monochrome(self) -> bool:
        return len(self.colors) == 1

    def unroll(self, length: int) -> list[Step]:
        """First ``length`` steps of the infinite path the lasso denotes."""
        out = list(self.stem[:length])
        i = 0
        while len(out) < length and self.cycle:
            out.append(self.cycle[i % len(self.cycle)])
            i += 1
        return out

    def to_dict(self) -> dict:
        return {"stem": [list(s) for s in self.stem], "cycle": [list(s) for s in self.cycle]}

    @classmethod
    def from_dict(cls, d: dict) -> Lasso:
        return cls(tuple(tuple(s) for s in d["stem"]), tuple(tuple(s) for s in d["cycle"]))


@dataclass(frozen=True)
class TraceRecord:
    kind: str
    position: int
    consumed: tuple[Step, ...]
    produced: tuple[Step, ...]
    clause: int | None  # covering clause; None for B-detours

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "position": self.position,
            "consumed": [list(s) for s in self.consumed],
            "produced": [list(s) for s in self.produced],
            "clause": self.clause,
        }


@dataclass(frozen=True)
class ExtractionTrace:
    criterion: str
    records: tuple[TraceRecord, ...]

    def __len__(self):
        return len(self.records)

    def to_dict(self) -> dict:
        return {"criterion": self.criterion, "records": [r.to_dict() for r in self.records]}


# --- conversions ----------------------------------------------------------

def _signed(row: int) -> int:
    return row - (1 << 64) if row >= 1 << 63 else row


def graph_rows(g: TriGraph) -> np.ndarray:
    return np.array([[_signed(r) for r in rel.rows] for rel in g.colors()],
                    dtype=np.int64).reshape(3, g.n)


def _steps_array(steps) -> np.ndarray | None:
    out = np.zeros((len(steps), 3), dtype=np.int64)
    for i, (u, tag, v) in enumerate(steps):
        if tag not in COLORS:
            return None
        out[i] = (u, COLORS.index(tag), v)
    return out


def _to_steps(arr) -> tuple[Step, ...]:
    return tuple(Step(int(u), COLORS[t], int(v)) for u, t, v in arr)


def _immortal(g: TriGraph, rows: np.ndarray) -> int:
    n = g.n
    return int(K.immortal_mask(rows, n, np.zeros(n, np.int64), np.zeros(n, np.int64)))


# --- operations -----------------------------------------------------------

def validate_lasso(g: TriGraph, lasso: Lasso) -> bool:
    if not lasso.cycle:
        return False
    arr = _steps_array(lasso.stem + lasso.cycle)
    if arr is None:
        return False
    return bool(K.validate_steps(graph_rows(g), g.n, arr, len(lasso.stem), len(arr)))


def construct_greedy_chain(g: TriGraph, start: int) -> Lasso:
    """Walk from ``start`` preferring A-steps, as long as immortality is kept.

    Ties go to color order A < B < C, then the smallest node.  The choice
    depends only on the current node, so the walk repeats from the first
    revisited node and that segment becomes the cycle.
    """
    rows = graph_rows(g)
    imm = _immortal(g, rows)
    if not (0 <= start < g.n) or not (imm >> start) & 1:
        raise MortalStartError(f"node {start} has no infinite outgoing chain")
    steps = np.zeros((g.n + 1, 3), np.int64)
    stem, total = K.greedy_chain(rows, g.n, start, imm, steps, np.zeros(g.n, np.int64))
    if stem < 0:
        raise ExtractionError("greedy walk reached a node without immortal successors")
    all_steps = _to_steps(steps[:total])
    return Lasso(all_steps[:stem], all_steps[stem:])


def is_a_preferring(g: TriGraph, lasso: Lasso) -> bool:
    """No B- or C-step of the cycle leaves a node with an immortal A-successor."""
    rows = graph_rows(g)
    arr = _steps_array(lasso.cycle)
    if arr is None:
        return False
    return bool(K.a_preferring(rows, g.n, _immortal(g, rows), arr, len(arr)))


def _anchor_stem(lasso: Lasso, start: int) -> tuple[Step, ...]:
    for i, s in enumerate(lasso.cycle):
        if s.src == start:
            return lasso.stem + lasso.cycle[:i]
    raise ExtractionError(f"extracted cycle start {start} is not on the input cycle")


_STATUS = {
    K.ERR_BUDGET: "rewrite budget exhausted",
    K.ERR_STUCK: "non-monochrome cycle with no applicable rewrite",
    K.ERR_UNCOVERED: "rewritten pair not covered by its clause",
    K.ERR_MULTISTEP: "pair covered only by a multi-step route",
}


def extract_monochrome(g: TriGraph, lasso: Lasso, cid: str):
    """Rewrite the cycle of ``lasso`` into a single color.

    Returns ``(Lasso, ExtractionTrace)``.  The result's stem is the input
    stem extended along the input cycle up to the new cycle's start.
    """
    if cid not in EXTRACTABLE_IDS:
        raise CriterionUsageError(f"no extraction procedure for {cid}")
    if not validate_lasso(g, lasso):
        raise InvalidLassoError("lasso does not lie in the graph")
    n = g.n
    rows = graph_rows(g)
    instr, clauses = compiled_program(cid)
    regs = np.zeros((instr.shape[0], n), np.int64)
    K.eval_program(rows, n, instr, regs)
    if not K.program_holds(regs, clauses, n):
        raise CriterionNotSatisfiedError(f"{cid} does not hold on this graph")
    cyc = _steps_array(lasso.cycle)
    L = len(cyc)
    mode = K.MODE_THREE_OF_NINE if cid == "THREE_OF_NINE" else K.MODE_TRIPARTITE
    if mode == K.MODE_TRIPARTITE and not K.a_preferring(rows, n, _immortal(g, rows), cyc, L):
        raise InvalidLassoError("TRIPARTITE extraction needs an A-preferring cycle")

    ws = K.Workspace(n, L)
    status, length, nrec, _, _ = K.extract_core(
        rows, n, mode, regs, clauses, cyc, L, ws.work0, ws.work1, ws.rec, ws.cons,
        ws.prod, ws.tmp, ws.path, ws.dist, ws.bplus)
    if status != K.OK:
        raise ExtractionError(_STATUS.get(status, f"status {status}"))
    cycle = _to_steps(ws.work0[:length])
    records = []
    for kind, pos, coff, clen, poff, plen, clause in ws.rec[:nrec]:
        records.append(TraceRecord(
            KIND_NAMES[kind], int(pos),
            _to_steps(ws.cons[coff:coff + clen]),
            _to_steps(ws.prod[poff:poff + plen]),
            None if clause < 0 else int(clause)))
    return (Lasso(_anchor_stem(lasso, cycle[0].src), cycle),
            ExtractionTrace(cid, tuple(records)))


def replay_trace(lasso: Lasso, trace: ExtractionTrace) -> Lasso:
    """Re-apply every recorded rewrite to ``lasso``; mismatches raise."""
    cyc = _steps_array(lasso.cycle)
    recs = trace.records
    cons = [s for r in recs for s in r.consumed]
    prod = [s for r in recs for s in r.produced]
    rec = np.zeros((len(recs), K.REC_COLS), np.int64)
    coff = poff = 0
    for i, r in enumerate(recs):
        rec[i] = (KIND_NAMES.index(r.kind), r.position, coff, len(r.consumed),
                  poff, len(r.produced), -1 if r.clause is None else r.clause)
        coff += len(r.consumed)
        poff += len(r.produced)
    cons_arr = _steps_array(cons) if cons else np.zeros((1, 3), np.int64)
    prod_arr = _steps_array(prod) if prod else np.zeros((1, 3), np.int64)
    cap = len(cyc) + len(prod) + 1
    work0 = np.zeros((cap, 3), np.int64)
    work1 = np.zeros((cap, 3), np.int64)
    status, length = K.replay(cyc, len(cyc), rec, len(recs), cons_arr, prod_arr, work0, work1)
    if status != K.OK:
        raise ExtractionError("trace does not match the lasso it is replayed on")
    cycle = _to_steps(work0[:length])
    return Lasso(_anchor_stem(lasso, cycle[0].src), cycle)


def monochrome_cycle_oracle(g: TriGraph, color: str | None = None):
    """Search each color on its own for a cycle; ``(tag, steps)`` or ``None``."""
    tags = COLORS if color is None else (color,)
    for tag in tags:
        nodes = find_cycle(g.color(tag))
        if nodes is not None:
            steps = tuple(Step(u, tag, nodes[(i + 1) % len(nodes)]) for i, u in enumerate(nodes))
            return tag, steps
    return None
