"""Slow, obviously-correct reference implementations over Python sets.

Nothing here imports the package's algorithms; only plain pair sets.
"""

from itertools import permutations, product


def compose(r, s):
    return {(x, z) for (x, y) in r for (y2, z) in s if y == y2}


def closure(r, n, reflexive):
    out = set(r)
    while True:
        nxt = out | compose(out, out)
        if nxt == out:
            break
        out = nxt
    if reflexive:
        out |= {(i, i) for i in range(n)}
    return out


def has_cycle(r, n):
    # DFS with colors
    adj = {i: sorted(y for x, y in r if x == i) for i in range(n)}
    state = [0] * n

    def visit(u):
        state[u] = 1
        for v in adj[u]:
            if state[v] == 1 or (state[v] == 0 and visit(v)):
                return True
        state[u] = 2
        return False

    return any(state[i] == 0 and visit(i) for i in range(n))


def least_cycle(r, n):
    """Brute force over all simple cycles, ordered by (length, nodes)."""
    for length in range(1, n + 1):
        best = None
        for seq in permutations(range(n), length):
            if seq[0] != min(seq):
                continue
            if all((seq[i], seq[(i + 1) % length]) in r for i in range(length)):
                if best is None or seq < best:
                    best = seq
        if best is not None:
            return list(best)
    return None


def immortal(edges, n):
    reach = closure(edges, n, reflexive=False)
    cyc = {i for i in range(n) if (i, i) in reach}
    return {x for x in range(n) if any((x, c) in reach for c in cyc)}


def eval_expr(e, colors, n):
    """``colors`` maps 'A'/'B'/'C' to pair sets; ``e`` is a criteria AST node."""
    kind = type(e).__name__
    if kind == "Atom":
        return set(colors[e.name])
    if kind == "Union":
        out = set()
        for c in e.children:
            out |= eval_expr(c, colors, n)
        return out
    if kind == "Compose":
        return compose(eval_expr(e.left, colors, n), eval_expr(e.right, colors, n))
    if kind == "Star":
        return closure(eval_expr(e.inner, colors, n), n, True)
    if kind == "Plus":
        return closure(eval_expr(e.inner, colors, n), n, False)
    raise TypeError(kind)


def holds(crit, colors, n):
    return all(eval_expr(c.lhs, colors, n) <= eval_expr(c.rhs, colors, n) for c in crit.clauses)


def all_pairs(n, loops=False):
    return [(u, v) for u, v in product(range(n), repeat=2) if loops or u != v]
