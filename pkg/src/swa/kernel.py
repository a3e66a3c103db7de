"""Native front kernel for witness-free model checking.

A :class:`~swa.core.Compiled` automaton is lowered to flat integer arrays.
Every guard and every action becomes a short instruction stream that a
small stack machine runs under numba.  A front is a 2-D array with one node
per row: the state index in column 0 and the stopwatch values after it.
Rows are deduplicated with an open-addressing hash table.

The kernel makes the same moves as the Python closure in
:mod:`swa.modelcheck`.  Seeds are elapsed, dominated seeds are dropped,
and the rest is saturated along 0-edges, so both engines produce identical
fronts.  The tests check this against each other.
"""

from __future__ import annotations

import numpy as np

try:
    import numba
except ImportError:  # pragma: no cover - numba is a declared dependency
    numba = None

from .core import Compiled
from .errors import StructuralError
from .expr import BoundOf, Const, Min, Monus, Sgn, Sum, Var

AVAILABLE = numba is not None

# opcodes; every instruction is (op, a, b, c)
VC, VV, SET, COPY, PUSH_C, PUSH_V, ADD, MONUS, MIN, SGN, CMP, STORE = range(12)
_CMP = {"=": 0, "!=": 1, "<": 2, "<=": 3, ">": 4, ">=": 5}
_FLIP = {"=": "=", "!=": "!=", "<": ">", "<=": ">=", ">": "<", ">=": "<="}


class Lowered:
    """Array form of a compiled automaton.  Value columns are offset by one."""

    def __init__(self, c: Compiled):
        a = c.swa
        names = a.names
        col = {x: i + 1 for i, x in enumerate(names)}
        bounds = c.bounds
        self.width = len(names) + 1
        self.accept = c.accept
        self.start_row = np.array([c.start, *c.zero], dtype=np.int64)
        self.bounds = np.array([0, *bounds], dtype=np.int64)
        self.letters = c.letters
        self.alphabet = a.alphabet

        el_ptr, el_idx = [0], []
        for q in a.states:
            act = a.active_in(q) & c.live[q]
            el_idx += [col[x] for x in names if x in act and a.bounds[x] > 0]
            el_ptr.append(len(el_idx))
        self.el_ptr = np.array(el_ptr, dtype=np.int64)
        self.el_idx = np.array(el_idx, dtype=np.int64)

        code: list[tuple[int, int, int, int]] = []
        by_src: list[list[int]] = [[] for _ in a.states]
        for t_i, t in enumerate(a.transitions):
            if t.src != a.accept:
                by_src[c.state_index[t.src]].append(t_i)
        tr_ptr, tr_dst, tr_g, tr_a = [0], [], [], []

        def emit_expr(e):
            if isinstance(e, Const):
                code.append((PUSH_C, e.value, 0, 0))
            elif isinstance(e, Var):
                code.append((PUSH_V, col[e.name], 0, 0))
            elif isinstance(e, BoundOf):
                code.append((PUSH_C, a.bounds[e.name], 0, 0))
            elif isinstance(e, (Sum, Monus, Min)):
                emit_expr(e.left)
                emit_expr(e.right)
                code.append(({Sum: ADD, Monus: MONUS, Min: MIN}[type(e)], 0, 0, 0))
            elif isinstance(e, Sgn):
                emit_expr(e.arg)
                code.append((SGN, 0, 0, 0))
            else:
                raise StructuralError(f"not an expression: {e!r}")

        def const_of(e):
            if isinstance(e, Const):
                return e.value
            if isinstance(e, BoundOf):
                return a.bounds[e.name]
            return None

        for q_i, q in enumerate(a.states):
            for t_i in by_src[q_i]:
                t = a.transitions[t_i]
                g0 = len(code)
                for at in t.guard.atoms:
                    l, r, op = at.left, at.right, at.op
                    if isinstance(r, Var) and const_of(l) is not None:
                        l, r, op = r, l, _FLIP[op]
                    if isinstance(l, Var) and const_of(r) is not None:
                        code.append((VC, col[l.name], _CMP[op], const_of(r)))
                    elif isinstance(l, Var) and isinstance(r, Var):
                        code.append((VV, col[l.name], _CMP[op], col[r.name]))
                    else:
                        emit_expr(l)
                        emit_expr(r)
                        code.append((CMP, _CMP[op], 0, 0))
                a0 = len(code)
                dst = c.state_index[t.dst]
                for target, e in t.action.steps:
                    b = a.bounds[target]
                    k = const_of(e)
                    if k is not None:
                        code.append((SET, col[target], min(k, b), 0))
                    elif isinstance(e, Var):
                        code.append((COPY, col[target], col[e.name], b))
                    else:
                        emit_expr(e)
                        code.append((STORE, col[target], b, 0))
                # rows in a state already hold zeros where values are dead there
                dead = {x for x in names if x not in c.live[t.dst]}
                fresh = dead - {x for x in names if x not in c.live[q]}
                fresh |= dead & {x for x, _ in t.action.steps}
                code += [(SET, col[x], 0, 0) for x in names if x in fresh]
                tr_dst.append(dst)
                tr_g.append((g0, a0))
                tr_a.append((a0, len(code)))
            tr_ptr.append(len(tr_dst))
        self.tr_ptr = np.array(tr_ptr, dtype=np.int64)
        self.tr_dst = np.array(tr_dst, dtype=np.int64)
        self.tr_g = np.array(tr_g, dtype=np.int64).reshape(-1, 2)
        self.tr_a = np.array(tr_a, dtype=np.int64).reshape(-1, 2)
        self.code = np.array(code, dtype=np.int64).reshape(-1, 4)
        pushes = np.isin(self.code[:, 0], (PUSH_C, PUSH_V)).astype(np.int64)
        spans = [p for p in tr_g + tr_a] or [(0, 0)]
        self.stack = 1 + max(int(pushes[lo:hi].sum()) for lo, hi in spans)
        self.mono = np.array([i + 1 for i in c.monotone], dtype=np.int64)
        mono = set(c.monotone)
        self.rest = np.array([0] + [i + 1 for i in range(len(names)) if i not in mono], dtype=np.int64)

    def letter_mask(self, letter: str) -> np.ndarray:
        return np.array([letter in ls for ls in self.letters], dtype=np.bool_)

    def programs(self):
        return (self.accept, self.tr_ptr, self.tr_dst, self.tr_g, self.tr_a, self.code, self.stack)

    def initial(self) -> np.ndarray:
        rows = self.start_row.reshape(1, -1).copy()
        rows, n = _close(rows, 1, *self.programs())
        return rows[:n]

    def advance(self, front: np.ndarray, letter: str) -> np.ndarray:
        rows, n = _advance(
            front, len(front), self.letter_mask(letter), self.el_ptr, self.el_idx,
            self.mono, self.rest, self.bounds, *self.programs(),
        )
        return rows[:n]

    def nodes(self, front: np.ndarray) -> set:
        return {(int(r[0]), tuple(int(x) for x in r[1:])) for r in front}


def lowered(c: Compiled) -> Lowered:
    """The array form of ``c``, built once per compiled automaton."""
    low = c.__dict__.get("_lowered")
    if low is None:
        low = c.__dict__["_lowered"] = Lowered(c)
    return low


if AVAILABLE:
    njit = numba.njit(cache=True, nogil=True)
else:  # pragma: no cover
    def njit(f):
        return f


@njit
def _cmp(x, op, y):
    if op == 0:
        return x == y
    if op == 1:
        return x != y
    if op == 2:
        return x < y
    if op == 3:
        return x <= y
    if op == 4:
        return x > y
    return x >= y


@njit
def _run(rows, r, code, s, e, stk):
    sp = 0
    for pc in range(s, e):
        op = code[pc, 0]
        a = code[pc, 1]
        if op == VC:
            if not _cmp(rows[r, a], code[pc, 2], code[pc, 3]):
                return False
        elif op == VV:
            if not _cmp(rows[r, a], code[pc, 2], rows[r, code[pc, 3]]):
                return False
        elif op == SET:
            rows[r, a] = code[pc, 2]
        elif op == COPY:
            x = rows[r, code[pc, 2]]
            b = code[pc, 3]
            rows[r, a] = x if x < b else b
        elif op == PUSH_C:
            stk[sp] = a
            sp += 1
        elif op == PUSH_V:
            stk[sp] = rows[r, a]
            sp += 1
        elif op == ADD:
            sp -= 1
            stk[sp - 1] += stk[sp]
        elif op == MONUS:
            sp -= 1
            d = stk[sp - 1] - stk[sp]
            stk[sp - 1] = d if d > 0 else 0
        elif op == MIN:
            sp -= 1
            if stk[sp] < stk[sp - 1]:
                stk[sp - 1] = stk[sp]
        elif op == SGN:
            stk[sp - 1] = 1 if stk[sp - 1] > 0 else 0
        elif op == CMP:
            sp -= 2
            if not _cmp(stk[sp], a, stk[sp + 1]):
                return False
        else:  # STORE
            sp -= 1
            x = stk[sp]
            b = code[pc, 2]
            rows[r, a] = x if x < b else b
    return True


@njit
def _hash(rows, r, cols):
    h = -3750763034362895579
    for j in cols:
        h = (h ^ rows[r, j]) * 1099511628211
    return h ^ (h >> 29)


@njit
def _hash_row(rows, r, width):
    h = -3750763034362895579
    for j in range(width):
        h = (h ^ rows[r, j]) * 1099511628211
    return h ^ (h >> 29)


@njit
def _empty_table(n):
    size = 16
    while size < 2 * n + 2:
        size *= 2
    return np.full(size, -1, dtype=np.int64)


@njit
def _table_for(hashes, n, cap):
    table = _empty_table(max(n, cap))
    size = table.shape[0]
    mask = size - 1
    for i in range(n):
        slot = hashes[i] & mask
        while table[slot] >= 0:
            slot = (slot + 1) & mask
        table[slot] = i
    return table


@njit
def _insert(table, hashes, rows, r, width):
    """Index of the row equal to ``r``; ``r`` itself is inserted if new."""
    mask = table.shape[0] - 1
    h = hashes[r]
    slot = h & mask
    while True:
        k = table[slot]
        if k < 0:
            table[slot] = r
            return r
        if hashes[k] == h:
            same = True
            for j in range(width):
                if rows[k, j] != rows[r, j]:
                    same = False
                    break
            if same:
                return k
        slot = (slot + 1) & mask


@njit
def _grow(rows, hashes):
    out = np.empty((2 * rows.shape[0], rows.shape[1]), dtype=np.int64)
    out[: rows.shape[0]] = rows
    hs = np.empty(2 * rows.shape[0], dtype=np.int64)
    hs[: rows.shape[0]] = hashes
    return out, hs


@njit
def _close_some(rows, hashes, table, n, i, accept, tr_ptr, tr_dst, tr_g, tr_a, code, stk):
    """Expand rows from ``i`` on until done or out of room; returns ``(n, i)``."""
    width = rows.shape[1]
    room = min(rows.shape[0], table.shape[0] // 2 - 1)
    while i < n:
        q = rows[i, 0]
        if q != accept:
            lo, hi = tr_ptr[q], tr_ptr[q + 1]
            if n + hi - lo > room:
                return n, i
            for t in range(lo, hi):
                if not _run(rows, i, code, tr_g[t, 0], tr_g[t, 1], stk):
                    continue
                for j in range(1, width):
                    rows[n, j] = rows[i, j]
                rows[n, 0] = tr_dst[t]
                _run(rows, n, code, tr_a[t, 0], tr_a[t, 1], stk)
                hashes[n] = _hash_row(rows, n, width)
                if _insert(table, hashes, rows, n, width) == n:
                    n += 1
        i += 1
    return n, i


@njit
def _close(rows, n, accept, tr_ptr, tr_dst, tr_g, tr_a, code, stack):
    """Saturate the ``n`` distinct rows along 0-edges."""
    width = rows.shape[1]
    stk = np.empty(stack, dtype=np.int64)
    hashes = np.empty(rows.shape[0], dtype=np.int64)
    for i in range(n):
        hashes[i] = _hash_row(rows, i, width)
    slack = 2 * tr_dst.shape[0] + 16
    table = _table_for(hashes, n, 2 * n + slack)
    i = 0
    while True:
        n, i = _close_some(rows, hashes, table, n, i, accept, tr_ptr, tr_dst, tr_g, tr_a, code, stk)
        if i >= n:
            return rows, n
        if rows.shape[0] - n <= slack:
            rows, hashes = _grow(rows, hashes)
        if table.shape[0] // 2 - 1 - n <= slack:
            table = _table_for(hashes, n, 2 * n + slack)


@njit
def _prune(rows, n, mono, rest):
    """Keep the rows not dominated on ``mono`` by a row equal on ``rest``."""
    if mono.shape[0] == 0 or n < 2:
        return rows, n
    size = 16
    while size < 2 * n + 2:
        size *= 2
    table = np.full(size, -1, dtype=np.int64)
    mask = size - 1
    head = np.full(n, -1, dtype=np.int64)
    nxt = np.full(n, -1, dtype=np.int64)
    count = np.zeros(n, dtype=np.int64)
    for i in range(n):
        slot = _hash(rows, i, rest) & mask
        g = i
        while True:
            k = table[slot]
            if k < 0:
                table[slot] = i
                break
            same = True
            for j in rest:
                if rows[k, j] != rows[i, j]:
                    same = False
                    break
            if same:
                g = k
                break
            slot = (slot + 1) & mask
        if g != i:
            nxt[i] = head[g]
        head[g] = i
        count[g] += 1
    keep = np.ones(n, dtype=np.bool_)
    sums = np.zeros(n, dtype=np.int64)
    for i in range(n):
        for j in mono:
            sums[i] += rows[i, j]
    for g in range(n):
        if count[g] < 2:
            continue
        members = np.empty(count[g], dtype=np.int64)
        k, i = 0, head[g]
        while i >= 0:
            members[k] = i
            k += 1
            i = nxt[i]
        members = members[np.argsort(sums[members], kind="mergesort")]
        kept = np.empty(count[g], dtype=np.int64)
        nk = 0
        for i in members:
            dominated = False
            for kk in range(nk):
                j = kept[kk]
                ok = True
                for m in mono:
                    if rows[j, m] > rows[i, m]:
                        ok = False
                        break
                if ok:
                    dominated = True
                    break
            if dominated:
                keep[i] = False
            else:
                kept[nk] = i
                nk += 1
    m = 0
    for i in range(n):
        if keep[i]:
            rows[m] = rows[i]
            m += 1
    return rows, m


@njit
def _advance(front, nf, ok, el_ptr, el_idx, mono, rest, bounds, accept, tr_ptr, tr_dst, tr_g, tr_a, code, stack):
    width = front.shape[1]
    rows = np.empty((max(2 * nf, 16), width), dtype=np.int64)
    hashes = np.empty(rows.shape[0], dtype=np.int64)
    table = _empty_table(nf)
    n = 0
    for i in range(nf):
        q = front[i, 0]
        if q == accept or not ok[q]:
            continue
        for j in range(width):
            rows[n, j] = front[i, j]
        for k in range(el_ptr[q], el_ptr[q + 1]):
            j = el_idx[k]
            if rows[n, j] < bounds[j]:
                rows[n, j] += 1
        hashes[n] = _hash_row(rows, n, width)
        if _insert(table, hashes, rows, n, width) == n:
            n += 1
    rows, n = _prune(rows, n, mono, rest)
    return _close(rows, n, accept, tr_ptr, tr_dst, tr_g, tr_a, code, stack)
