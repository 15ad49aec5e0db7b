"""Compiled kernels over int64 bit rows.

A relation on ``n`` nodes is an int64 array of ``n`` rows; bit ``y`` of row
``x`` encodes the pair ``(x, y)``.  A graph is a ``(3, n)`` array with colors
in A, B, C order.  Steps are ``(src, color, dst)`` rows of an ``(k, 3)`` array
with colors encoded 0, 1, 2.

These are the working implementations behind the chain engine and the
scans; the public wrappers live in ``chains`` and ``search``.
"""

import numpy as np
from numba import njit

OP_ATOM, OP_UNION, OP_COMPOSE, OP_STAR, OP_PLUS = 0, 1, 2, 3, 4

KIND_SWALLOW, KIND_DETOUR, KIND_CONTRACT = 0, 1, 2
MODE_THREE_OF_NINE, MODE_TRIPARTITE = 0, 1

OK = 0
ERR_BUDGET = 1
ERR_STUCK = 2
ERR_UNCOVERED = 3
ERR_MULTISTEP = 4
ERR_REPLAY = 5
ERR_ANCHOR = 6

REC_COLS = 7  # kind, position, cons_off, cons_len, prod_off, prod_len, clause


@njit(cache=True)
def lowest_bit(x):
    i = 0
    while not (x >> i) & 1:
        i += 1
    return i


@njit(cache=True)
def compose_into(r, s, n, out):
    for x in range(n):
        row = r[x]
        acc = 0
        for y in range(n):
            if (row >> y) & 1:
                acc |= s[y]
        out[x] = acc


@njit(cache=True)
def closure_into(r, n, reflexive, out):
    for i in range(n):
        out[i] = r[i]
    for k in range(n):
        rk = out[k]
        for i in range(n):
            if (out[i] >> k) & 1:
                out[i] |= rk
    if reflexive:
        for i in range(n):
            out[i] |= 1 << i


@njit(cache=True)
def is_acyclic(r, n, scratch):
    closure_into(r, n, False, scratch)
    for i in range(n):
        if (scratch[i] >> i) & 1:
            return False
    return True


@njit(cache=True)
def eval_program(rel, n, instr, regs):
    for k in range(instr.shape[0]):
        op = instr[k, 0]
        a = instr[k, 1]
        b = instr[k, 2]
        if op == OP_ATOM:
            for i in range(n):
                regs[k, i] = rel[a, i]
        elif op == OP_UNION:
            for i in range(n):
                regs[k, i] = regs[a, i] | regs[b, i]
        elif op == OP_COMPOSE:
            compose_into(regs[a], regs[b], n, regs[k])
        elif op == OP_STAR:
            closure_into(regs[a], n, True, regs[k])
        else:
            closure_into(regs[a], n, False, regs[k])


@njit(cache=True)
def program_holds(regs, clauses, n):
    for c in range(clauses.shape[0]):
        lhs = regs[clauses[c, 0]]
        rhs = regs[clauses[c, 1]]
        for i in range(n):
            if lhs[i] & ~rhs[i]:
                return False
    return True


@njit(cache=True)
def union_rows(rel, n, out):
    for i in range(n):
        out[i] = rel[0, i] | rel[1, i] | rel[2, i]


@njit(cache=True)
def immortal_mask(rel, n, scratch_u, scratch_c):
    union_rows(rel, n, scratch_u)
    closure_into(scratch_u, n, False, scratch_c)
    on_cycle = 0
    for i in range(n):
        if (scratch_c[i] >> i) & 1:
            on_cycle |= 1 << i
    mask = 0
    for i in range(n):
        if scratch_c[i] & on_cycle:
            mask |= 1 << i
    return mask


@njit(cache=True)
def _dist_to(r, n, target, allowed, dist):
    # BFS backwards from target over nodes in ``allowed``; -1 means unreachable
    for i in range(n):
        dist[i] = -1
    dist[target] = 0
    level = 0
    changed = True
    while changed:
        changed = False
        for x in range(n):
            if dist[x] != -1 or not (allowed >> x) & 1:
                continue
            row = r[x] & allowed
            for y in range(n):
                if (row >> y) & 1 and dist[y] == level:
                    dist[x] = level + 1
                    changed = True
                    break
        level += 1


@njit(cache=True)
def find_cycle(r, n, out, dist, best_dist):
    """Least simple cycle by (length, node sequence); returns its length or 0."""
    full = -1 if n == 64 else (1 << n) - 1
    best_len = 0
    best_s = -1
    for s in range(n):
        allowed = full & ~((1 << s) - 1)
        _dist_to(r, n, s, allowed, dist)
        row = r[s] & allowed
        length = 0
        for v in range(n):
            if (row >> v) & 1 and dist[v] != -1:
                cand = dist[v] + 1
                if length == 0 or cand < length:
                    length = cand
        if length == 0:
            continue
        if best_len == 0 or length < best_len:
            best_len = length
            best_s = s
            for i in range(n):
                best_dist[i] = dist[i]
            if length == 1:
                break
    if best_len == 0:
        return 0
    allowed = full & ~((1 << best_s) - 1)
    out[0] = best_s
    cur = best_s
    for k in range(1, best_len):
        row = r[cur] & allowed
        for v in range(n):
            if (row >> v) & 1 and v != best_s and best_dist[v] == best_len - k:
                out[k] = v
                cur = v
                break
    return best_len


@njit(cache=True)
def shortest_path(r, n, src, dst, out, dist):
    """Least shortest path of >= 1 edge; returns node count, or 0 if none."""
    full = -1 if n == 64 else (1 << n) - 1
    _dist_to(r, n, dst, full, dist)
    best = -1
    row = r[src]
    for v in range(n):
        if (row >> v) & 1 and dist[v] != -1:
            if best == -1 or dist[v] < best:
                best = dist[v]
    if best == -1:
        return 0
    out[0] = src
    cur = src
    remaining = best + 1
    k = 1
    while remaining > 0:
        row = r[cur]
        for v in range(n):
            if (row >> v) & 1 and dist[v] == remaining - 1:
                out[k] = v
                cur = v
                break
        k += 1
        remaining -= 1
    return k


@njit(cache=True)
def greedy_chain(rel, n, start, imm, steps, pos):
    """A-preferring walk; fills ``steps`` and returns (stem_len, total_len).

    Returns (-1, -1) if some visited node has no immortal successor.
    """
    for i in range(n):
        pos[i] = -1
    k = 0
    x = start
    while pos[x] < 0:
        pos[x] = k
        y = -1
        for t in range(3):
            cand = rel[t, x] & imm
            if cand != 0:
                y = lowest_bit(cand)
                steps[k, 0] = x
                steps[k, 1] = t
                steps[k, 2] = y
                break
        if y < 0:
            return -1, -1
        k += 1
        x = y
    return pos[x], k


@njit(cache=True)
def validate_steps(rel, n, steps, stem_len, total):
    if total - stem_len < 1 or stem_len < 0:
        return False
    for i in range(total):
        u = steps[i, 0]
        t = steps[i, 1]
        v = steps[i, 2]
        if t < 0 or t > 2 or u < 0 or u >= n or v < 0 or v >= n:
            return False
        if not (rel[t, u] >> v) & 1:
            return False
        if i + 1 < total and steps[i + 1, 0] != v:
            return False
    return steps[total - 1, 2] == steps[stem_len, 0]


@njit(cache=True)
def a_preferring(rel, n, imm, cyc, L):
    for i in range(L):
        if cyc[i, 1] != 0 and rel[0, cyc[i, 0]] & imm:
            return False
    return True


@njit(cache=True)
def anchor_index(cyc, L, start):
    for i in range(L):
        if cyc[i, 0] == start:
            return i
    return -1


@njit(cache=True)
def _apply(cur, L, pos, count, prod, plen, other):
    idx = 0
    for k in range(plen):
        other[idx, 0] = prod[k, 0]
        other[idx, 1] = prod[k, 1]
        other[idx, 2] = prod[k, 2]
        idx += 1
    for k in range(count, L):
        j = (pos + k) % L
        other[idx, 0] = cur[j, 0]
        other[idx, 1] = cur[j, 1]
        other[idx, 2] = cur[j, 2]
        idx += 1
    return idx


@njit(cache=True)
def _find_pair(cur, L, c1a, c1b, c2):
    for i in range(L):
        a = cur[i, 1]
        b = cur[(i + 1) % L, 1]
        if (a == c1a or a == c1b) and b == c2:
            return i
    return -1


@njit(cache=True)
def _monochrome(cur, L):
    for i in range(1, L):
        if cur[i, 1] != cur[0, 1]:
            return False
    return True


@njit(cache=True)
def extraction_budget(L, n):
    return L * max(n * n, n + 3)


@njit(cache=True)
def extract_core(rel, n, mode, regs, clauses, cyc_in, L0,
                 work0, work1, rec, cons_buf, prod_buf, tmp, path, dist, bplus):
    """Rewrite ``cyc_in`` into one color.

    Preconditions (checked by callers): the criterion holds, the cycle is
    valid, and for TRIPARTITE it is A-preferring.  The result cycle ends up
    in ``work0``.  Returns (status, length, n_records, cons_used, prod_used).
    """
    budget = extraction_budget(L0, n)
    for i in range(L0):
        work0[i, 0] = cyc_in[i, 0]
        work0[i, 1] = cyc_in[i, 1]
        work0[i, 2] = cyc_in[i, 2]
    cur = work0
    other = work1
    L = L0
    nrec = 0
    cptr = 0
    pptr = 0
    # phase 0: swallow A-steps; phase 1: B-detours; phase 2: CB contractions
    phase = 0
    detour_ready = False
    swapped = False
    while not _monochrome(cur, L):
        kind = -1
        pos = -1
        count = 0
        plen = 0
        clause = -1
        if phase == 0:
            pos = _find_pair(cur, L, 1, 2, 0)
            if pos >= 0:
                kind = KIND_SWALLOW
                clause = 0
            else:
                phase = 1 if mode == MODE_TRIPARTITE else 2
                continue
        elif phase == 1:
            if not detour_ready:
                closure_into(rel[1], n, False, bplus)
                detour_ready = True
            found = False
            for i in range(L):
                if cur[i, 1] != 2:
                    continue
                x = cur[i, 0]
                for j in range(1, L + 1):
                    w = cur[(i + j) % L, 0]
                    if (bplus[x] >> w) & 1:
                        k = shortest_path(rel[1], n, x, w, path, dist)
                        for q in range(k - 1):
                            tmp[q, 0] = path[q]
                            tmp[q, 1] = 1
                            tmp[q, 2] = path[q + 1]
                        plen = k - 1
                        pos = i
                        count = j
                        kind = KIND_DETOUR
                        found = True
                        break
                if found:
                    break
            if not found:
                phase = 2
                continue
        else:
            pos = _find_pair(cur, L, 2, 2, 1)
            if pos < 0:
                return ERR_STUCK, L, nrec, cptr, pptr
            kind = KIND_CONTRACT
            clause = 0 if mode == MODE_THREE_OF_NINE else 1

        if kind != KIND_DETOUR:
            x = cur[pos, 0]
            z = cur[(pos + 1) % L, 2]
            if not (regs[clauses[clause, 1], x] >> z) & 1:
                return ERR_UNCOVERED, L, nrec, cptr, pptr
            # color preference per phase and criterion
            chosen = -1
            if kind == KIND_SWALLOW:
                if (rel[1, x] >> z) & 1:
                    chosen = 1
                elif (rel[2, x] >> z) & 1:
                    chosen = 2
                elif mode == MODE_THREE_OF_NINE and (rel[0, x] >> z) & 1:
                    chosen = 0
            else:
                if (rel[2, x] >> z) & 1:
                    chosen = 2
                elif mode == MODE_THREE_OF_NINE and (rel[1, x] >> z) & 1:
                    chosen = 1
                elif mode == MODE_THREE_OF_NINE and (rel[0, x] >> z) & 1:
                    chosen = 0
            if chosen < 0:
                return ERR_MULTISTEP, L, nrec, cptr, pptr
            tmp[0, 0] = x
            tmp[0, 1] = chosen
            tmp[0, 2] = z
            plen = 1
            count = 2

        if nrec >= budget:
            return ERR_BUDGET, L, nrec, cptr, pptr
        rec[nrec, 0] = kind
        rec[nrec, 1] = pos
        rec[nrec, 2] = cptr
        rec[nrec, 3] = count
        rec[nrec, 4] = pptr
        rec[nrec, 5] = plen
        rec[nrec, 6] = clause
        for k in range(count):
            j = (pos + k) % L
            cons_buf[cptr, 0] = cur[j, 0]
            cons_buf[cptr, 1] = cur[j, 1]
            cons_buf[cptr, 2] = cur[j, 2]
            cptr += 1
        for k in range(plen):
            prod_buf[pptr, 0] = tmp[k, 0]
            prod_buf[pptr, 1] = tmp[k, 1]
            prod_buf[pptr, 2] = tmp[k, 2]
            pptr += 1
        nrec += 1
        L = _apply(cur, L, pos, count, tmp, plen, other)
        cur, other = other, cur
        swapped = not swapped
        if mode == MODE_THREE_OF_NINE:
            # an A-colored contraction may reopen a swallow
            phase = 0

    if swapped:
        for i in range(L):
            work0[i, 0] = cur[i, 0]
            work0[i, 1] = cur[i, 1]
            work0[i, 2] = cur[i, 2]
    return OK, L, nrec, cptr, pptr


@njit(cache=True)
def replay(cyc_in, L0, rec, nrec, cons_buf, prod_buf, work0, work1):
    """Re-apply a trace; result in ``work0``.  Returns (status, length)."""
    for i in range(L0):
        work0[i, 0] = cyc_in[i, 0]
        work0[i, 1] = cyc_in[i, 1]
        work0[i, 2] = cyc_in[i, 2]
    cur = work0
    other = work1
    L = L0
    swapped = False
    for r in range(nrec):
        pos = rec[r, 1]
        coff = rec[r, 2]
        count = rec[r, 3]
        poff = rec[r, 4]
        plen = rec[r, 5]
        if L == 0 or count > L:
            return ERR_REPLAY, L
        for k in range(count):
            j = (pos + k) % L
            for c in range(3):
                if cur[j, c] != cons_buf[coff + k, c]:
                    return ERR_REPLAY, L
        L = _apply(cur, L, pos, count, prod_buf[poff:poff + plen], plen, other)
        cur, other = other, cur
        swapped = not swapped
    if swapped:
        for i in range(L):
            work0[i, 0] = cur[i, 0]
            work0[i, 1] = cur[i, 1]
            work0[i, 2] = cur[i, 2]
    return OK, L


@njit(cache=True)
def is_transitive(r, n, scratch):
    compose_into(r, r, n, scratch)
    for i in range(n):
        if scratch[i] & ~r[i]:
            return False
    return True


@njit(cache=True)
def clique_core(rel, n, instr, clauses, regs, rows_a, rows_b, steps, pos,
                work0, work1, rec, cons, prod, tmp, path, dist, bplus):
    """Monochrome self-loop witness; returns (color, node).

    (-1, -1) means no self-loop exists; other negative colors are internal
    failures: -2 extraction status, -3 missing self-loop, -4 greedy failure.
    """
    transitive = (is_transitive(rel[0], n, rows_a) and is_transitive(rel[1], n, rows_a)
                  and is_transitive(rel[2], n, rows_a))
    if transitive:
        eval_program(rel, n, instr, regs)
        if program_holds(regs, clauses, n):
            imm = immortal_mask(rel, n, rows_a, rows_b)
            if imm != 0:
                stem, total = greedy_chain(rel, n, lowest_bit(imm), imm, steps, pos)
                if stem < 0:
                    return -4, 0
                status, L, nrec, cu, pu = extract_core(
                    rel, n, MODE_THREE_OF_NINE, regs, clauses, steps[stem:total],
                    total - stem, work0, work1, rec, cons, prod, tmp, path, dist, bplus)
                if status != OK:
                    return -2, status
                tag = work0[0, 1]
                x = work0[0, 0]
                if not (rel[tag, x] >> x) & 1:
                    return -3, x
                return tag, x
    for t in range(3):
        for x in range(n):
            if (rel[t, x] >> x) & 1:
                return t, x
    return -1, -1


@njit(cache=True)
def decode_into(ma, mb, mc, n, su, sv, rel):
    for k in range(3):
        for i in range(n):
            rel[k, i] = 0
    for j in range(su.shape[0]):
        bit = 1 << sv[j]
        if (ma >> j) & 1:
            rel[0, su[j]] |= bit
        if (mb >> j) & 1:
            rel[1, su[j]] |= bit
        if (mc >> j) & 1:
            rel[2, su[j]] |= bit


FLAG_COLORS_WF = 1
FLAG_UNION_CYCLIC = 2
FLAG_HOLDS1 = 4
FLAG_HOLDS2 = 8
FLAG_EVALUATED = 16


@njit(cache=True)
def classify_block(masks, n, su, sv, instr1, cl1, instr2, cl2, has2,
                   need_wf, need_cyclic, flags):
    """Per-graph flag byte: colors well-founded, union cyclic, criteria hold.

    Criteria are evaluated only for graphs passing the requested prefilters
    (cheapest first); FLAG_EVALUATED marks those.
    """
    rel = np.zeros((3, n), np.int64)
    s1 = np.zeros(n, np.int64)
    s2 = np.zeros(n, np.int64)
    regs1 = np.zeros((instr1.shape[0], n), np.int64)
    regs2 = np.zeros((max(instr2.shape[0], 1), n), np.int64)
    for i in range(masks.shape[0]):
        decode_into(masks[i, 0], masks[i, 1], masks[i, 2], n, su, sv, rel)
        f = 0
        wf = is_acyclic(rel[0], n, s1) and is_acyclic(rel[1], n, s1) and is_acyclic(rel[2], n, s1)
        if wf:
            f |= FLAG_COLORS_WF
        if need_wf and not wf:
            flags[i] = f
            continue
        union_rows(rel, n, s2)
        cyclic = not is_acyclic(s2, n, s1)
        if cyclic:
            f |= FLAG_UNION_CYCLIC
        if need_cyclic and not cyclic:
            flags[i] = f
            continue
        f |= FLAG_EVALUATED
        eval_program(rel, n, instr1, regs1)
        if program_holds(regs1, cl1, n):
            f |= FLAG_HOLDS1
        if has2:
            eval_program(rel, n, instr2, regs2)
            if program_holds(regs2, cl2, n):
                f |= FLAG_HOLDS2
        flags[i] = f


# extraction sweep statistics slots
ST_EXAMINED = 0
ST_APPLICABLE = 1
ST_OK = 2
ST_FAILED = 3
ST_BUDGET = 4
ST_RECORDS = 5
ST_MAX_RECORDS = 6
ST_SWALLOW = 7
ST_DETOUR = 8
ST_CONTRACT = 9
ST_REWRITTEN = 10
ST_FIRST_FAIL = 11
ST_FIRST_FAIL_REASON = 12
ST_COLOR_A = 13  # 13, 14, 15: output color histogram
ST_SIZE = 16

FAIL_GREEDY = 1
FAIL_INVALID_INPUT = 2
FAIL_NOT_A_PREFERRING = 3
FAIL_EXTRACT = 4  # + 10 * status
FAIL_NOT_MONOCHROME = 5
FAIL_ANCHOR = 6
FAIL_INVALID_OUTPUT = 7
FAIL_REPLAY = 8
FAIL_ORACLE = 9


@njit(cache=True)
def _fail(stats, code, reason):
    stats[ST_FAILED] += 1
    if stats[ST_FIRST_FAIL] < 0:
        stats[ST_FIRST_FAIL] = code
        stats[ST_FIRST_FAIL_REASON] = reason


@njit(cache=True)
def extraction_sweep(lo, hi, m, n, su, sv, mode, instr, clauses, stats):
    """Greedy chain + extraction + validation + replay + oracle for every
    code in ``[lo, hi)`` whose graph satisfies the criterion with a cyclic
    union.  Accumulates into ``stats`` (see ST_* slots).
    """
    L = max(n, 1)
    budget = L * max(n * n, n + 3)
    cap = L + L * n + 2
    rel = np.zeros((3, n), np.int64)
    regs = np.zeros((instr.shape[0], n), np.int64)
    rows_a = np.zeros(n, np.int64)
    rows_b = np.zeros(n, np.int64)
    steps = np.zeros((n + 1, 3), np.int64)
    pos = np.zeros(n, np.int64)
    work0 = np.zeros((cap, 3), np.int64)
    work1 = np.zeros((cap, 3), np.int64)
    work2 = np.zeros((cap, 3), np.int64)
    work3 = np.zeros((cap, 3), np.int64)
    full = np.zeros((n + 1 + cap, 3), np.int64)
    rec = np.zeros((budget + 1, REC_COLS), np.int64)
    cons = np.zeros((2 * budget + L * cap + 2, 3), np.int64)
    prod = np.zeros((budget * (n + 1) + 2, 3), np.int64)
    tmp = np.zeros((n + 2, 3), np.int64)
    path = np.zeros(n + 2, np.int64)
    dist = np.zeros(n, np.int64)
    dist2 = np.zeros(n, np.int64)
    bplus = np.zeros(n, np.int64)
    nodes = np.zeros(n + 1, np.int64)
    fm = (1 << m) - 1
    for code in range(lo, hi):
        stats[ST_EXAMINED] += 1
        decode_into(code & fm, (code >> m) & fm, (code >> (2 * m)) & fm, n, su, sv, rel)
        imm = immortal_mask(rel, n, rows_a, rows_b)
        if imm == 0:
            continue
        eval_program(rel, n, instr, regs)
        if not program_holds(regs, clauses, n):
            continue
        stats[ST_APPLICABLE] += 1
        stem, total = greedy_chain(rel, n, lowest_bit(imm), imm, steps, pos)
        if stem < 0:
            _fail(stats, code, FAIL_GREEDY)
            continue
        if not validate_steps(rel, n, steps, stem, total):
            _fail(stats, code, FAIL_INVALID_INPUT)
            continue
        cyc = steps[stem:total]
        Lc = total - stem
        if mode == MODE_TRIPARTITE and not a_preferring(rel, n, imm, cyc, Lc):
            _fail(stats, code, FAIL_NOT_A_PREFERRING)
            continue
        status, Lo, nrec, cu, pu = extract_core(
            rel, n, mode, regs, clauses, cyc, Lc, work0, work1, rec, cons, prod,
            tmp, path, dist, bplus)
        if status != OK:
            if status == ERR_BUDGET:
                stats[ST_BUDGET] += 1
            _fail(stats, code, FAIL_EXTRACT + 10 * status)
            continue
        if not _monochrome(work0, Lo):
            _fail(stats, code, FAIL_NOT_MONOCHROME)
            continue
        a = anchor_index(cyc, Lc, work0[0, 0])
        if a < 0:
            _fail(stats, code, FAIL_ANCHOR)
            continue
        k = 0
        for q in range(stem):
            full[k] = steps[q]
            k += 1
        for q in range(a):
            full[k] = cyc[q]
            k += 1
        for q in range(Lo):
            full[k] = work0[q]
            k += 1
        if not validate_steps(rel, n, full, stem + a, k):
            _fail(stats, code, FAIL_INVALID_OUTPUT)
            continue
        rstatus, Lr = replay(cyc, Lc, rec, nrec, cons, prod, work2, work3)
        same = rstatus == OK and Lr == Lo
        if same:
            for q in range(Lo):
                for c in range(3):
                    if work2[q, c] != work0[q, c]:
                        same = False
        if not same:
            _fail(stats, code, FAIL_REPLAY)
            continue
        tag = work0[0, 1]
        if find_cycle(rel[tag], n, nodes, dist, dist2) == 0:
            _fail(stats, code, FAIL_ORACLE)
            continue
        stats[ST_OK] += 1
        stats[ST_COLOR_A + tag] += 1
        stats[ST_RECORDS] += nrec
        if nrec > 0:
            stats[ST_REWRITTEN] += 1
        if nrec > stats[ST_MAX_RECORDS]:
            stats[ST_MAX_RECORDS] = nrec
        for r in range(nrec):
            stats[ST_SWALLOW + rec[r, 0]] += 1


# clique sweep statistics slots
CS_EXAMINED = 0
CS_APPLICABLE = 1
CS_WITNESSED = 2
CS_FAILED = 3
CS_FIRST_FAIL = 4
CS_SIZE = 5


@njit(cache=True)
def clique_sweep(trans_masks, i_lo, i_hi, n, su, sv, instr, clauses, stats):
    """Every triple of transitive colors: when THREE_OF_NINE holds on a
    cyclic union, the clique witness must be a genuine monochrome self-loop.
    """
    L = max(n, 1)
    budget = L * max(n * n, n + 3)
    cap = L + L * n + 2
    rel = np.zeros((3, n), np.int64)
    regs = np.zeros((instr.shape[0], n), np.int64)
    regs2 = np.zeros((instr.shape[0], n), np.int64)
    rows_a = np.zeros(n, np.int64)
    rows_b = np.zeros(n, np.int64)
    steps = np.zeros((n + 1, 3), np.int64)
    pos = np.zeros(n, np.int64)
    work0 = np.zeros((cap, 3), np.int64)
    work1 = np.zeros((cap, 3), np.int64)
    rec = np.zeros((budget + 1, REC_COLS), np.int64)
    cons = np.zeros((2 * budget + L * cap + 2, 3), np.int64)
    prod = np.zeros((budget * (n + 1) + 2, 3), np.int64)
    tmp = np.zeros((n + 2, 3), np.int64)
    path = np.zeros(n + 2, np.int64)
    dist = np.zeros(n, np.int64)
    bplus = np.zeros(n, np.int64)
    T = trans_masks.shape[0]
    for i in range(i_lo, i_hi):
        for j in range(T):
            for k in range(T):
                stats[CS_EXAMINED] += 1
                decode_into(trans_masks[i], trans_masks[j], trans_masks[k], n, su, sv, rel)
                eval_program(rel, n, instr, regs2)
                if not program_holds(regs2, clauses, n):
                    continue
                if immortal_mask(rel, n, rows_a, rows_b) == 0:
                    continue
                stats[CS_APPLICABLE] += 1
                tag, x = clique_core(rel, n, instr, clauses, regs, rows_a, rows_b, steps,
                                     pos, work0, work1, rec, cons, prod, tmp, path,
                                     dist, bplus)
                if tag >= 0 and (rel[tag, x] >> x) & 1:
                    stats[CS_WITNESSED] += 1
                else:
                    stats[CS_FAILED] += 1
                    if stats[CS_FIRST_FAIL] < 0:
                        stats[CS_FIRST_FAIL] = (i * T + j) * T + k


class Workspace:
    """Scratch buffers sized for carrier ``n`` and input cycles up to ``L``."""

    def __init__(self, n, L):
        self.n = n
        self.L = L
        budget = L * max(n * n, n + 3)
        cap = L + L * n + 2
        self.budget = budget
        self.work0 = np.zeros((cap, 3), np.int64)
        self.work1 = np.zeros((cap, 3), np.int64)
        self.work2 = np.zeros((cap, 3), np.int64)
        self.work3 = np.zeros((cap, 3), np.int64)
        self.rec = np.zeros((budget + 1, REC_COLS), np.int64)
        self.cons = np.zeros((2 * budget + L * cap + 2, 3), np.int64)
        self.prod = np.zeros((budget * (n + 1) + 2, 3), np.int64)
        self.tmp = np.zeros((n + 2, 3), np.int64)
        self.path = np.zeros(n + 2, np.int64)
        self.dist = np.zeros(n, np.int64)
        self.dist2 = np.zeros(n, np.int64)
        self.rows_a = np.zeros(n, np.int64)
        self.rows_b = np.zeros(n, np.int64)
        self.steps = np.zeros((n + 1, 3), np.int64)
        self.pos = np.zeros(n, np.int64)
        self.nodes = np.zeros(n + 1, np.int64)
        self.bplus = np.zeros(n, np.int64)

    def regs_for(self, instr):
        return np.zeros((instr.shape[0], self.n), np.int64)
