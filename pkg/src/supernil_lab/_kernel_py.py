"""Pure-Python closure kernel.

Reference implementation of the subpower closure used when the compiled
extension is unavailable.  The compiled kernel in ``_kernel.pyx`` follows
the same enumeration order element for element, so both produce the same
discovery sequence and therefore the same early-stop witnesses.

Enumeration order
-----------------
General path (semi-naive): elements are processed in discovery order.  For
element ``i`` and each operation in signature order, unary operations are
applied to ``i``; an operation of arity ``r >= 2`` is applied to every index
tuple over ``[0, i]`` containing ``i``, grouped by the position ``p`` of the
first occurrence of ``i`` (``p = 0, 1, ...``), then lexicographically with
positions before ``p`` ranging over ``[0, i)`` and after ``p`` over ``[0, i]``.

Associative path: when the only operation of arity >= 2 is a single
associative binary operation, every member of the closure is a product of
"generators" (the initial tuples plus new outputs of unary operations), so
it suffices to multiply each element on the right by each generator.
"""

from __future__ import annotations

import numpy as np

from .errors import BudgetExceeded

COMPLETE, STOPPED = 0, 1


class _Halt(Exception):
    pass


def run_closure(n, ops, width, gens, budget, ceiling=0, stop=None,
                assoc=False):
    """Close ``gens`` under ``ops`` acting coordinatewise on ``A**width``.

    ``ops`` is a list of ``(arity, flat_table)``; nullary operations must
    already be folded into ``gens`` by the caller.  ``stop`` is ``None`` or a
    tuple ``("centrality", dim, delta_repr)`` / ``("targets", rows)`` (all found) /
    ``("any_target", rows)`` (one found).

    Returns ``(rows, status, stop_index)`` with rows in discovery order.
    """
    elems: list[tuple] = []
    seen: set = set()
    state = {"status": COMPLETE, "stop_index": -1}
    stop_check = _make_stop(stop)

    def add(t):
        if t in seen:
            return False
        seen.add(t)
        elems.append(t)
        if len(elems) > budget:
            raise BudgetExceeded(len(elems), budget)
        if stop_check is not None and stop_check(t):
            state["status"] = STOPPED
            state["stop_index"] = len(elems) - 1
            raise _Halt
        if ceiling and len(elems) >= ceiling:
            raise _Halt
        return True

    tables = [(r, list(tab)) for r, tab in ops]
    try:
        for g in gens:
            add(tuple(int(v) for v in g))
        if assoc:
            _assoc_loop(n, tables, width, elems, add)
        else:
            _general_loop(n, tables, width, elems, add)
    except _Halt:
        pass
    rows = np.array(elems, dtype=np.uint8).reshape(len(elems), width)
    return rows, state["status"], state["stop_index"]


def _general_loop(n, tables, width, elems, add):
    rng = range(width)
    i = 0
    while i < len(elems):
        for r, tab in tables:
            if r == 1:
                e = elems[i]
                add(tuple(tab[e[c]] for c in rng))
            elif r >= 2:
                for idx in _index_tuples(i, r):
                    args = [elems[j] for j in idx]
                    out = []
                    for c in rng:
                        off = 0
                        for a in args:
                            off = off * n + a[c]
                        out.append(tab[off])
                    add(tuple(out))
        i += 1


def _index_tuples(i, r):
    for p in range(r):
        if p > 0 and i == 0:
            break
        idx = [0] * r
        idx[p] = i
        free = [q for q in range(r) if q != p]
        limits = [i if q < p else i + 1 for q in free]
        # odometer, rightmost free position fastest
        while True:
            yield tuple(idx)
            k = len(free) - 1
            while k >= 0:
                q = free[k]
                idx[q] += 1
                if idx[q] < limits[k]:
                    break
                idx[q] = 0
                k -= 1
            if k < 0:
                break


def _assoc_loop(n, tables, width, elems, add):
    (mul,) = [tab for r, tab in tables if r == 2]
    unary = [tab for r, tab in tables if r == 1]
    rng = range(width)
    G = list(range(len(elems)))
    si = gi = 0
    while True:
        if gi < len(G):
            g = elems[G[gi]]
            for s in range(si):
                e = elems[s]
                add(tuple(mul[e[c] * n + g[c]] for c in rng))
            gi += 1
        elif si < len(elems):
            e = elems[si]
            for b in range(gi):
                g = elems[G[b]]
                add(tuple(mul[e[c] * n + g[c]] for c in rng))
            for tab in unary:
                if add(tuple(tab[e[c]] for c in rng)):
                    G.append(len(elems) - 1)
            si += 1
        else:
            break


def _make_stop(stop):
    if stop is None:
        return None
    kind = stop[0]
    if kind == "centrality":
        _, dim, delta = stop
        half = 1 << (dim - 1)
        delta = list(delta)

        def check(t):
            for v in range(half - 1):
                if delta[t[v]] != delta[t[v + half]]:
                    return False
            return delta[t[half - 1]] != delta[t[2 * half - 1]]
        return check
    if kind == "targets":
        remaining = {tuple(int(x) for x in row) for row in stop[1]}
        if not remaining:
            return None

        def check(t):
            remaining.discard(t)
            return not remaining
        return check
    if kind == "any_target":
        wanted = {tuple(int(x) for x in row) for row in stop[1]}
        if not wanted:
            return None
        return wanted.__contains__
    raise ValueError(f"unknown stop kind {kind!r}")
