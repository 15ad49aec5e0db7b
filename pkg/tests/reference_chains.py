"""Pure-Python extraction used to cross-check the compiled kernels.

A lasso is a finite stem followed by a cycle that repeats forever.  The
extraction rewrites the cycle two steps at a time (or by B-detours) until a
single color remains, logging every rewrite so the result can be replayed.

Rewrite kinds:

``swallow-A``
    ``x -(B|C)-> y -A-> z`` becomes one step ``x -> z`` covered by the first
    clause.
``prefer-B-detour``
    a C-step from ``x``, plus whatever follows it up to some later chain node
    ``w``, is replaced by a B-path from ``x`` to ``w`` (TRIPARTITE only).
``contract-CB``
    ``x -C-> y -B-> z`` becomes one step ``x -> z`` covered by the CB clause.
"""

from __future__ import annotations

from dataclasses import dataclass

from wfunion.criteria import (
    EXTRACTABLE_IDS,
    CriterionUsageError,
    clause_violations,
    eval_expr,
    get_criterion,
)
from wfunion.relation import (
    COLORS,
    Step,
    TriGraph,
    closure,
    find_cycle,
    immortal_mask,
    shortest_path,
)


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
    clause: int | None  # index of the covering clause; None for B-detours

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


def _chains(steps) -> bool:
    return all(a.dst == b.src for a, b in zip(steps, steps[1:]))


def validate_lasso(g: TriGraph, lasso: Lasso) -> bool:
    cycle, stem = lasso.cycle, lasso.stem
    if not cycle:
        return False
    n = g.n
    for s in stem + cycle:
        if s.color not in COLORS or not (0 <= s.src < n and 0 <= s.dst < n):
            return False
        if not g.has_edge(s):
            return False
    if not (_chains(stem) and _chains(cycle)):
        return False
    if stem and stem[-1].dst != cycle[0].src:
        return False
    return cycle[-1].dst == cycle[0].src


def _greedy_step(g: TriGraph, x: int, immortal: int) -> Step:
    for tag, rel in zip(COLORS, g.colors()):
        cand = rel.rows[x] & immortal
        if cand:
            return Step(x, tag, (cand & -cand).bit_length() - 1)
    raise ExtractionError(f"immortal node {x} has no immortal successor")


def construct_greedy_chain(g: TriGraph, start: int) -> Lasso:
    """Walk from ``start`` preferring A-steps, as long as immortality is kept.

    Ties go to color order A < B < C, then the smallest node.  The rule only
    looks at the current node, so the walk is periodic from the first
    repeated node on.
    """
    immortal = immortal_mask(g)
    if not (0 <= start < g.n) or not immortal >> start & 1:
        raise MortalStartError(f"node {start} has no infinite outgoing chain")
    seen: dict[int, int] = {}
    steps: list[Step] = []
    x = start
    while x not in seen:
        seen[x] = len(steps)
        step = _greedy_step(g, x, immortal)
        steps.append(step)
        x = step.dst
    k = seen[x]
    return Lasso(tuple(steps[:k]), tuple(steps[k:]))


def is_a_preferring(g: TriGraph, lasso: Lasso) -> bool:
    """No B- or C-step of the cycle leaves a node with an immortal A-successor."""
    immortal = immortal_mask(g)
    arows = g.a.rows
    return all(s.color == "A" or not (arows[s.src] & immortal) for s in lasso.cycle)


def _rotate_replace(cycle: list[Step], pos: int, count: int, produced) -> list[Step]:
    rot = cycle[pos:] + cycle[:pos]
    return list(produced) + rot[count:]


def _consumed(cycle: list[Step], pos: int, count: int) -> tuple[Step, ...]:
    L = len(cycle)
    return tuple(cycle[(pos + k) % L] for k in range(count))


def _find_pair(cycle: list[Step], pairs) -> int | None:
    L = len(cycle)
    for i in range(L):
        if (cycle[i].color, cycle[(i + 1) % L].color) in pairs:
            return i
    return None


def _anchor_stem(lasso: Lasso, start: int) -> tuple[Step, ...]:
    for i, s in enumerate(lasso.cycle):
        if s.src == start:
            return lasso.stem + lasso.cycle[:i]
    raise ExtractionError(f"extracted cycle start {start} is not on the input cycle")


_SWALLOW = {("B", "A"), ("C", "A")}
_CB = {("C", "B")}


class _Rewriter:
    def __init__(self, g: TriGraph, cid: str, cycle, budget: int):
        self.g = g
        self.cid = cid
        self.crit = get_criterion(cid)
        self.memo: dict = {}
        self.cycle = list(cycle)
        self.records: list[TraceRecord] = []
        self.budget = budget

    def rhs(self, idx: int):
        return eval_expr(self.crit.clauses[idx].rhs, self.g, self.memo)

    def push(self, kind, pos, count, produced, clause):
        if len(self.records) >= self.budget:
            raise ExtractionError(f"rewrite budget {self.budget} exhausted")
        produced = tuple(produced)
        self.records.append(
            TraceRecord(kind, pos, _consumed(self.cycle, pos, count), produced, clause))
        self.cycle = _rotate_replace(self.cycle, pos, count, produced)

    def merge(self, kind, pos, clause, preference) -> None:
        L = len(self.cycle)
        x = self.cycle[pos].src
        z = self.cycle[(pos + 1) % L].dst
        if (x, z) not in self.rhs(clause):
            raise ExtractionError(f"pair ({x}, {z}) not covered by clause {clause}")
        for tag in preference:
            if (x, z) in self.g.color(tag):
                self.push(kind, pos, 2, [Step(x, tag, z)], clause)
                return
        raise ExtractionError(
            f"{kind} at ({x}, {z}): covered only by a multi-step route")

    def monochrome(self) -> bool:
        first = self.cycle[0].color
        return all(s.color == first for s in self.cycle)


def extract_monochrome(g: TriGraph, lasso: Lasso, cid: str):
    """Rewrite the cycle of ``lasso`` into a single color.

    Returns ``(Lasso, ExtractionTrace)``.  The stem of the result is the
    input stem extended along the input cycle to the new cycle's start.
    """
    if cid not in EXTRACTABLE_IDS:
        raise CriterionUsageError(f"no extraction procedure for {cid}")
    if not validate_lasso(g, lasso):
        raise InvalidLassoError("lasso does not lie in the graph")
    if clause_violations(g, get_criterion(cid)):
        raise CriterionNotSatisfiedError(f"{cid} does not hold on this graph")
    if cid == "TRIPARTITE" and not is_a_preferring(g, lasso):
        raise InvalidLassoError("TRIPARTITE extraction needs an A-preferring cycle")

    L, n = len(lasso.cycle), g.n
    rw = _Rewriter(g, cid, lasso.cycle, L * max(n * n, n + 3))
    if cid == "THREE_OF_NINE":
        _three_of_nine(rw)
    else:
        _tripartite(rw)
    cycle = tuple(rw.cycle)
    out = Lasso(_anchor_stem(lasso, cycle[0].src), cycle)
    return out, ExtractionTrace(cid, tuple(rw.records))


def _three_of_nine(rw: _Rewriter) -> None:
    # Each merge shortens the cycle by one step.  A cycle that is not yet
    # monochrome always has a descent BA, CA or CB somewhere around it.
    while not rw.monochrome():
        pos = _find_pair(rw.cycle, _SWALLOW)
        if pos is not None:
            rw.merge("swallow-A", pos, 0, "BCA")
            continue
        pos = _find_pair(rw.cycle, _CB)
        if pos is None:
            raise ExtractionError("non-monochrome cycle without a descent")
        rw.merge("contract-CB", pos, 0, "CBA")


def _tripartite(rw: _Rewriter) -> None:
    g = rw.g
    # A-steps: on an A-preferring cycle the A·U* cover is impossible, so the
    # first clause leaves a single B or C step.
    while not rw.monochrome():
        pos = _find_pair(rw.cycle, _SWALLOW)
        if pos is None:
            break
        rw.merge("swallow-A", pos, 0, "BC")
    if rw.monochrome():
        return

    # B-detours: a C-step whose source reaches a later chain node by B+.
    bplus = closure(g.b, reflexive=False).rows
    changed = True
    while changed and not rw.monochrome():
        changed = False
        L = len(rw.cycle)
        for i, step in enumerate(rw.cycle):
            if step.color != "C":
                continue
            x = step.src
            for j in range(1, L + 1):
                w = rw.cycle[(i + j) % L].src
                if bplus[x] >> w & 1:
                    path = shortest_path(g.b, x, w)
                    produced = [Step(u, "B", v) for u, v in zip(path, path[1:])]
                    rw.push("prefer-B-detour", i, j, produced, None)
                    changed = True
                    break
            if changed:
                break

    # CB contractions: with A·U* and BB* both excluded, CB lands in C.
    while not rw.monochrome():
        pos = _find_pair(rw.cycle, _CB)
        if pos is None:
            raise ExtractionError("non-monochrome B/C cycle without a CB descent")
        rw.merge("contract-CB", pos, 1, "C")


def replay_trace(lasso: Lasso, trace: ExtractionTrace) -> Lasso:
    """Re-apply every recorded rewrite to ``lasso``; mismatches raise."""
    cycle = list(lasso.cycle)
    for rec in trace.records:
        got = _consumed(cycle, rec.position, len(rec.consumed))
        if got != rec.consumed:
            raise ExtractionError(f"trace mismatch at position {rec.position}")
        cycle = _rotate_replace(cycle, rec.position, len(rec.consumed), rec.produced)
    return Lasso(_anchor_stem(lasso, cycle[0].src), tuple(cycle))


def monochrome_cycle_oracle(g: TriGraph, color: str | None = None):
    """Search each color on its own for a cycle; ``(tag, steps)`` or ``None``."""
    tags = COLORS if color is None else (color,)
    for tag in tags:
        nodes = find_cycle(g.color(tag))
        if nodes is not None:
            steps = tuple(Step(u, tag, nodes[(i + 1) % len(nodes)]) for i, u in enumerate(nodes))
            return tag, steps
    return None
