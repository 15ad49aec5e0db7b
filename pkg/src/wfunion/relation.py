"""Finite binary relations over {0..n-1}, stored as bitmask rows.

Row ``x`` of a relation is an int whose bit ``y`` is set iff ``(x, y)`` is in
the relation.  Composition reads left to right: ``compose(r, s)`` relates
``x`` to ``z`` when ``x r y`` and ``y s z`` for some ``y``.
"""

from __future__ import annotations

from collections import deque
from typing import Iterable, NamedTuple

MAX_NODES = 64
COLORS = ("A", "B", "C")


class DimensionError(ValueError):
    """Operands live on carriers of different sizes, or a carrier is too big."""


def _bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


class Relation:
    __slots__ = ("n", "rows", "_hash")

    def __init__(self, n: int, rows: Iterable[int] = ()):
        if n < 0 or n > MAX_NODES:
            raise DimensionError(f"carrier size {n} outside 0..{MAX_NODES}")
        rows = tuple(rows) or (0,) * n
        if len(rows) != n:
            raise DimensionError(f"expected {n} rows, got {len(rows)}")
        full = (1 << n) - 1
        for row in rows:
            if row & ~full:
                raise ValueError("row has bits outside the carrier")
        self.n = n
        self.rows = rows
        self._hash = None

    @classmethod
    def from_pairs(cls, n: int, pairs: Iterable[tuple[int, int]]) -> Relation:
        rows = [0] * n
        for u, v in pairs:
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"pair ({u}, {v}) outside carrier of size {n}")
            rows[u] |= 1 << v
        return cls(n, rows)

    @classmethod
    def empty(cls, n: int) -> Relation:
        return cls(n, (0,) * n)

    @classmethod
    def identity(cls, n: int) -> Relation:
        return cls(n, tuple(1 << i for i in range(n)))

    @property
    def pairs(self) -> frozenset[tuple[int, int]]:
        return frozenset(self)

    def __iter__(self):
        for x, row in enumerate(self.rows):
            for y in _bits(row):
                yield (x, y)

    def __contains__(self, pair) -> bool:
        x, y = pair
        return 0 <= x < self.n and 0 <= y < self.n and bool(self.rows[x] >> y & 1)

    def __len__(self) -> int:
        return sum(row.bit_count() for row in self.rows)

    def __bool__(self) -> bool:
        return any(self.rows)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Relation):
            return NotImplemented
        return self.n == other.n and self.rows == other.rows

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.n, self.rows))
        return self._hash

    def __or__(self, other: Relation) -> Relation:
        return union(self, other)

    def __le__(self, other: Relation) -> bool:
        return is_subset(self, other)

    def __repr__(self) -> str:
        return f"Relation({self.n}, {sorted(self)})"

    def successors(self, x: int) -> list[int]:
        return list(_bits(self.rows[x]))

    def converse(self) -> Relation:
        rows = [0] * self.n
        for x, y in self:
            rows[y] |= 1 << x
        return Relation(self.n, rows)

    def packed(self) -> int:
        """All rows in one int, row ``x`` at bit offset ``n * x``."""
        out = 0
        for x, row in enumerate(self.rows):
            out |= row << (self.n * x)
        return out

    @classmethod
    def from_packed(cls, n: int, packed: int) -> Relation:
        full = (1 << n) - 1
        return cls(n, tuple((packed >> (n * x)) & full for x in range(n)))


def _check(r: Relation, s: Relation) -> None:
    if r.n != s.n:
        raise DimensionError(f"carrier mismatch: {r.n} vs {s.n}")


def compose(r: Relation, s: Relation) -> Relation:
    _check(r, s)
    srows = s.rows
    out = []
    for row in r.rows:
        acc = 0
        while row:
            low = row & -row
            acc |= srows[low.bit_length() - 1]
            row ^= low
        out.append(acc)
    return Relation(r.n, out)


def union(r: Relation, s: Relation) -> Relation:
    _check(r, s)
    return Relation(r.n, tuple(x | y for x, y in zip(r.rows, s.rows)))


def intersection(r: Relation, s: Relation) -> Relation:
    _check(r, s)
    return Relation(r.n, tuple(x & y for x, y in zip(r.rows, s.rows)))


def difference(r: Relation, s: Relation) -> Relation:
    _check(r, s)
    return Relation(r.n, tuple(x & ~y for x, y in zip(r.rows, s.rows)))


def is_subset(r: Relation, s: Relation) -> bool:
    _check(r, s)
    return all(not (x & ~y) for x, y in zip(r.rows, s.rows))


def _warshall(rows: list[int]) -> list[int]:
    n = len(rows)
    for k in range(n):
        bit = 1 << k
        rk = rows[k]
        for i in range(n):
            if rows[i] & bit:
                rows[i] |= rk
    return rows


def closure(r: Relation, reflexive: bool) -> Relation:
    """Transitive closure; ``reflexive=True`` adds the identity (zero steps)."""
    rows = _warshall(list(r.rows))
    if reflexive:
        rows = [row | (1 << i) for i, row in enumerate(rows)]
    return Relation(r.n, rows)


def plus(r: Relation) -> Relation:
    return closure(r, reflexive=False)


def star(r: Relation) -> Relation:
    return closure(r, reflexive=True)


def is_transitive(r: Relation) -> bool:
    return is_subset(compose(r, r), r)


def cyclic_nodes(r: Relation) -> int:
    """Bitmask of nodes lying on some cycle of ``r`` (self-loops included)."""
    rows = _warshall(list(r.rows))
    mask = 0
    for i, row in enumerate(rows):
        if row >> i & 1:
            mask |= 1 << i
    return mask


def is_well_founded(r: Relation) -> bool:
    # Kahn's algorithm: acyclic iff every node can be peeled off.
    n = r.n
    indeg = [0] * n
    for x, y in r:
        indeg[y] += 1
    queue = deque(i for i in range(n) if indeg[i] == 0)
    seen = 0
    while queue:
        x = queue.popleft()
        seen += 1
        for y in _bits(r.rows[x]):
            indeg[y] -= 1
            if indeg[y] == 0:
                queue.append(y)
    return seen == n


def _dist_to(rows: tuple[int, ...], target: int, allowed: int) -> list[int | None]:
    """BFS distances (in steps) from each allowed node to ``target``."""
    n = len(rows)
    pred = [0] * n
    for x in _bits(allowed):
        for y in _bits(rows[x] & allowed):
            pred[y] |= 1 << x
    dist: list[int | None] = [None] * n
    dist[target] = 0
    frontier = [target]
    while frontier:
        nxt = []
        for y in frontier:
            for x in _bits(pred[y]):
                if dist[x] is None:
                    dist[x] = dist[y] + 1
                    nxt.append(x)
        frontier = nxt
    return dist


def find_cycle(r: Relation) -> list[int] | None:
    """Least simple cycle of ``r`` ordered by (length, node sequence).

    The cycle is returned as its node sequence starting at its smallest node;
    ``None`` when ``r`` is acyclic.
    """
    n = r.n
    rows = r.rows
    best = None
    for s in range(n):
        allowed = ((1 << n) - 1) & ~((1 << s) - 1)
        dist = _dist_to(rows, s, allowed)
        succ = rows[s] & allowed
        lengths = [dist[v] + 1 for v in _bits(succ) if dist[v] is not None]
        if not lengths:
            continue
        length = min(lengths)
        if best is not None and length >= best[0]:
            continue
        best = (length, s, dist, allowed)
        if length == 1:
            break
    if best is None:
        return None
    length, s, dist, allowed = best
    cycle = [s]
    cur, remaining = s, length
    while remaining > 1:
        for v in _bits(rows[cur] & allowed):
            if v != s and dist[v] == remaining - 1:
                cycle.append(v)
                cur = v
                break
        remaining -= 1
    return cycle


def shortest_path(r: Relation, src: int, dst: int, min_steps: int = 1) -> list[int] | None:
    """Lexicographically least shortest path from ``src`` to ``dst``.

    Paths have at least ``min_steps`` edges, so ``src == dst`` asks for a
    cycle through ``src``.  Returns the node sequence including both ends.
    """
    n = r.n
    full = (1 << n) - 1
    dist = _dist_to(r.rows, dst, full)
    if min_steps == 0 and src == dst:
        return [src]
    options = [dist[v] for v in _bits(r.rows[src]) if dist[v] is not None]
    if not options:
        return None
    path = [src]
    remaining = min(options) + 1
    cur = src
    while remaining > 0:
        for v in _bits(r.rows[cur]):
            if dist[v] == remaining - 1:
                path.append(v)
                cur = v
                break
        remaining -= 1
    return path


class Step(NamedTuple):
    src: int
    color: str
    dst: int


class TriGraph:
    """Three edge colors A, B, C over a shared carrier; colors may overlap."""

    __slots__ = ("n", "a", "b", "c", "_union")

    def __init__(self, n: int, a: Relation | None = None, b: Relation | None = None,
                 c: Relation | None = None):
        a = a if a is not None else Relation.empty(n)
        b = b if b is not None else Relation.empty(n)
        c = c if c is not None else Relation.empty(n)
        if not (a.n == b.n == c.n == n):
            raise DimensionError("all colors must share the carrier size")
        self.n = n
        self.a = a
        self.b = b
        self.c = c
        self._union = None

    @classmethod
    def from_edges(cls, n: int, a=(), b=(), c=()) -> TriGraph:
        return cls(n, Relation.from_pairs(n, a), Relation.from_pairs(n, b),
                   Relation.from_pairs(n, c))

    def color(self, tag: str) -> Relation:
        if tag == "A":
            return self.a
        if tag == "B":
            return self.b
        if tag == "C":
            return self.c
        raise KeyError(f"unknown color {tag!r}")

    def colors(self) -> tuple[Relation, Relation, Relation]:
        return (self.a, self.b, self.c)

    def union(self) -> Relation:
        if self._union is None:
            self._union = Relation(self.n, tuple(
                x | y | z for x, y, z in zip(self.a.rows, self.b.rows, self.c.rows)))
        return self._union

    def has_edge(self, step: Step) -> bool:
        if step.color not in COLORS:
            return False
        return (step.src, step.dst) in self.color(step.color)

    def edges(self) -> list[Step]:
        return [Step(x, tag, y) for tag in COLORS for x, y in sorted(self.color(tag))]

    def __eq__(self, other) -> bool:
        if not isinstance(other, TriGraph):
            return NotImplemented
        return self.n == other.n and self.colors() == other.colors()

    def __hash__(self) -> int:
        return hash((self.n, self.colors()))

    def __repr__(self) -> str:
        return (f"TriGraph(n={self.n}, A={sorted(self.a)}, B={sorted(self.b)}, "
                f"C={sorted(self.c)})")


def immortal_mask(g: TriGraph) -> int:
    """Bitmask of nodes with an infinite outgoing chain in the union."""
    u = g.union()
    reach = _warshall(list(u.rows))
    on_cycle = 0
    for i, row in enumerate(reach):
        if row >> i & 1:
            on_cycle |= 1 << i
    mask = 0
    for i, row in enumerate(reach):
        if row & on_cycle:
            mask |= 1 << i
    return mask


def immortal_nodes(g: TriGraph) -> frozenset[int]:
    return frozenset(_bits(immortal_mask(g)))
