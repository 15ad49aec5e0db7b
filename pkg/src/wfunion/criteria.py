"""Well-foundedness criteria for A ∪ B ∪ C, written as inclusion clauses.

Every criterion is plain data: a list of ``lhs ⊆ rhs`` clauses over a small
expression language (atoms A/B/C, union, composition, star, plus).  One
generic evaluator checks them all.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from types import MappingProxyType
from typing import Mapping, Union as TypingUnion

import numpy as np

from .relation import (
    COLORS,
    Relation,
    TriGraph,
    closure,
    compose,
    find_cycle,
    immortal_mask,
    is_subset,
    is_transitive,
    is_well_founded,
)


class CriterionUsageError(ValueError):
    """Unknown criterion id, or a criterion applied outside its domain."""


# --- expression AST -------------------------------------------------------

@dataclass(frozen=True)
class Atom:
    name: str

    def __post_init__(self):
        if self.name not in COLORS:
            raise ValueError(f"unknown atom {self.name!r}")

    def __str__(self):
        return self.name


@dataclass(frozen=True)
class Union:
    children: tuple

    def __post_init__(self):
        if not self.children:
            raise ValueError("Union needs at least one child")
        object.__setattr__(self, "children", tuple(self.children))

    def __str__(self):
        return "(" + " ∪ ".join(map(str, self.children)) + ")"


@dataclass(frozen=True)
class Compose:
    left: "RelExpr"
    right: "RelExpr"

    def __str__(self):
        return f"{self.left}{self.right}"


@dataclass(frozen=True)
class Star:
    inner: "RelExpr"

    def __str__(self):
        return f"{self.inner}*"


@dataclass(frozen=True)
class Plus:
    inner: "RelExpr"

    def __str__(self):
        return f"{self.inner}+"


RelExpr = TypingUnion[Atom, Union, Compose, Star, Plus]

A, B, C = Atom("A"), Atom("B"), Atom("C")


def U(*children) -> Union:
    return Union(tuple(children))


def eval_expr(e: RelExpr, g: TriGraph, _memo: dict | None = None) -> Relation:
    memo = {} if _memo is None else _memo
    hit = memo.get(e)
    if hit is not None:
        return hit
    if isinstance(e, Atom):
        out = g.color(e.name)
    elif isinstance(e, Union):
        rows = [0] * g.n
        for child in e.children:
            for i, row in enumerate(eval_expr(child, g, memo).rows):
                rows[i] |= row
        out = Relation(g.n, rows)
    elif isinstance(e, Compose):
        out = compose(eval_expr(e.left, g, memo), eval_expr(e.right, g, memo))
    elif isinstance(e, Star):
        out = closure(eval_expr(e.inner, g, memo), reflexive=True)
    elif isinstance(e, Plus):
        out = closure(eval_expr(e.inner, g, memo), reflexive=False)
    else:
        raise TypeError(f"not a relational expression: {e!r}")
    memo[e] = out
    return out


# --- criteria table -------------------------------------------------------

@dataclass(frozen=True)
class InclusionClause:
    lhs: RelExpr
    rhs: RelExpr

    def __str__(self):
        return f"{self.lhs} ⊆ {self.rhs}"


@dataclass(frozen=True)
class Criterion:
    id: str
    clauses: tuple[InclusionClause, ...]
    sound: bool
    # colors that must be empty for the criterion to apply (two-relation form)
    requires_empty: tuple[str, ...] = ()


CRITERION_IDS = (
    "RAMSEY", "THREE_OF_NINE", "TRIPARTITE", "JUMPING_AB",
    "JUMPING_V1", "JUMPING_V2", "F1", "F2", "F3",
)
SOUND_IDS = CRITERION_IDS[:6]
EXTRACTABLE_IDS = ("THREE_OF_NINE", "TRIPARTITE")


def _table() -> Mapping[str, Criterion]:
    ABC = U(A, B, C)
    AB = U(A, B)
    BC = U(B, C)
    A_any = Compose(A, Star(ABC))  # one A-step, then anything
    crits = [
        Criterion("RAMSEY", (InclusionClause(Compose(ABC, ABC), ABC),), True),
        Criterion("THREE_OF_NINE", (
            InclusionClause(U(Compose(B, A), Compose(C, A), Compose(C, B)), ABC),), True),
        Criterion("TRIPARTITE", (
            InclusionClause(Compose(BC, A), U(A_any, B, C)),
            InclusionClause(Compose(C, B), U(A_any, Compose(B, Star(B)), C)),
        ), True),
        Criterion("JUMPING_AB", (
            InclusionClause(Compose(B, A), U(Compose(A, Star(AB)), B)),), True,
            requires_empty=("C",)),
        Criterion("JUMPING_V1", (
            InclusionClause(Compose(B, A), U(Compose(A, Star(AB)), B)),
            InclusionClause(Compose(C, AB), U(Compose(AB, Star(ABC)), C)),
        ), True),
        Criterion("JUMPING_V2", (
            InclusionClause(Compose(C, B), U(Compose(B, Star(BC)), C)),
            InclusionClause(Compose(BC, A), U(A_any, B, C)),
        ), True),
        Criterion("F1", (
            InclusionClause(Compose(BC, A), C),
            InclusionClause(Compose(C, B), U(A, Compose(B, Star(BC)))),
        ), False),
        Criterion("F2", (
            InclusionClause(Compose(BC, A), C),
            InclusionClause(Compose(C, B), Compose(B, Star(AB))),
        ), False),
        Criterion("F3", (
            InclusionClause(U(Compose(B, A), Compose(C, B)), C),
            InclusionClause(Compose(C, A), Compose(B, Star(A))),
        ), False),
    ]
    return MappingProxyType({c.id: c for c in crits})


_BUILTIN = _table()


def builtin_criteria() -> Mapping[str, Criterion]:
    return _BUILTIN


def get_criterion(cid: str) -> Criterion:
    try:
        return _BUILTIN[cid]
    except KeyError:
        raise CriterionUsageError(
            f"unknown criterion {cid!r}; expected one of {', '.join(CRITERION_IDS)}"
        ) from None


# --- evaluation -----------------------------------------------------------

@dataclass(frozen=True)
class CriterionReport:
    criterion: str
    holds: bool
    violations: tuple[tuple[tuple[int, int], int], ...]
    colors_wf: tuple[bool, bool, bool]
    union_wf: bool
    union_cycle: tuple[int, ...] | None = field(default=None)

    def to_dict(self) -> dict:
        return {
            "criterion": self.criterion,
            "holds": self.holds,
            "violations": [{"pair": list(p), "clause": i} for p, i in self.violations],
            "colors_wf": dict(zip(COLORS, self.colors_wf)),
            "union_wf": self.union_wf,
            "union_cycle": None if self.union_cycle is None else list(self.union_cycle),
        }


def clause_violations(g: TriGraph, crit: Criterion, memo: dict | None = None):
    """Every uncovered (pair, clause index), ordered by clause then pair."""
    memo = {} if memo is None else memo
    out = []
    for idx, clause in enumerate(crit.clauses):
        lhs = eval_expr(clause.lhs, g, memo)
        rhs = eval_expr(clause.rhs, g, memo)
        for x, (lrow, rrow) in enumerate(zip(lhs.rows, rhs.rows)):
            missing = lrow & ~rrow
            y = 0
            while missing:
                if missing & 1:
                    out.append(((x, y), idx))
                missing >>= 1
                y += 1
    return out


def criterion_holds(g: TriGraph, cid: str) -> bool:
    crit = get_criterion(cid)
    _check_domain(g, crit)
    memo: dict = {}
    for clause in crit.clauses:
        if not is_subset(eval_expr(clause.lhs, g, memo), eval_expr(clause.rhs, g, memo)):
            return False
    return True


def _check_domain(g: TriGraph, crit: Criterion) -> None:
    for tag in crit.requires_empty:
        if g.color(tag):
            raise CriterionUsageError(
                f"{crit.id} is a two-relation criterion; color {tag} must be empty")


def evaluate_criterion(g: TriGraph, cid: str) -> CriterionReport:
    crit = get_criterion(cid)
    _check_domain(g, crit)
    violations = clause_violations(g, crit)
    cycle = find_cycle(g.union())
    return CriterionReport(
        criterion=cid,
        holds=not violations,
        violations=tuple(violations),
        colors_wf=tuple(is_well_founded(r) for r in g.colors()),
        union_wf=cycle is None,
        union_cycle=None if cycle is None else tuple(cycle),
    )


def is_transitive_graph(g: TriGraph) -> bool:
    return all(is_transitive(r) for r in g.colors())


def clique_witness(g: TriGraph) -> tuple[str, int] | None:
    """A monochrome self-loop, found constructively where the chain argument applies.

    With every color transitive, THREE_OF_NINE holding and a cyclic union,
    greedy construction plus extraction yields a monochrome cycle, and
    transitivity folds it into a self-loop at the cycle's first node.  Outside
    that case the least self-loop in (color, node) order is returned, or None.
    """
    from . import _kernels as K
    from .chains import graph_rows

    instr, clauses = compiled_program("THREE_OF_NINE")
    ws = K.Workspace(g.n, max(g.n, 1))
    tag, x = K.clique_core(graph_rows(g), g.n, instr, clauses, ws.regs_for(instr),
                           ws.rows_a, ws.rows_b, ws.steps, ws.pos, ws.work0, ws.work1,
                           ws.rec, ws.cons, ws.prod, ws.tmp, ws.path, ws.dist, ws.bplus)
    if tag == -1:
        return None
    if tag < 0:
        raise AssertionError(f"clique extraction failed (code {tag}, {x})")
    return COLORS[tag], int(x)


def first_immortal(g: TriGraph) -> int | None:
    mask = immortal_mask(g)
    if not mask:
        return None
    return (mask & -mask).bit_length() - 1


# --- compiled form for the kernels ----------------------------------------

@lru_cache(maxsize=None)
def compiled_program(cid: str):
    """Register program for a criterion: ``(instr, clauses)`` int64 arrays.

    ``instr[k] = (op, a, b)`` writes register ``k``; ``clauses[c]`` holds the
    lhs and rhs registers of clause ``c``.  Shared subexpressions get one
    register.
    """
    from . import _kernels as K

    crit = get_criterion(cid)
    regs: dict = {}
    instr: list[tuple[int, int, int]] = []

    def put(key, row):
        if key not in regs:
            regs[key] = len(instr)
            instr.append(row)
        return regs[key]

    def emit(e) -> int:
        if isinstance(e, Atom):
            return put(e, (K.OP_ATOM, COLORS.index(e.name), 0))
        if isinstance(e, Union):
            acc = emit(e.children[0])
            for child in e.children[1:]:
                j = emit(child)
                acc = put(("union", acc, j), (K.OP_UNION, acc, j))
            return acc
        if isinstance(e, Compose):
            a, b = emit(e.left), emit(e.right)
            return put(("compose", a, b), (K.OP_COMPOSE, a, b))
        if isinstance(e, Star):
            a = emit(e.inner)
            return put(("star", a), (K.OP_STAR, a, 0))
        if isinstance(e, Plus):
            a = emit(e.inner)
            return put(("plus", a), (K.OP_PLUS, a, 0))
        raise TypeError(f"not a relational expression: {e!r}")

    clauses = [(emit(c.lhs), emit(c.rhs)) for c in crit.clauses]
    return np.array(instr, dtype=np.int64), np.array(clauses, dtype=np.int64)
