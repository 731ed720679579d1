"""Principal congruences, joins and meets, and the congruence lattice."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable

import numpy as np

from .algebra import Congruence, FiniteAlgebra, canonicalize_partition
from .errors import BudgetExceeded, NotComparable

DEFAULT_LATTICE_CAP = 100_000


class UnionFind:
    """Disjoint sets over ``0..n-1``; the root of a set is its least element."""

    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, x: int) -> int:
        parent = self.parent
        root = x
        while parent[root] != root:
            root = parent[root]
        while parent[x] != root:
            parent[x], x = root, parent[x]
        return root

    def union(self, a: int, b: int) -> bool:
        """Merge the sets of ``a`` and ``b``; False if already merged."""
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        if ra < rb:
            self.parent[rb] = ra
        else:
            self.parent[ra] = rb
        return True

    def congruence(self) -> Congruence:
        return Congruence(tuple(self.find(i) for i in range(len(self.parent))))


@lru_cache(maxsize=64)
def _translations(A: FiniteAlgebra) -> tuple[np.ndarray, ...]:
    """Every one-step translation of A, stacked per (operation, position).

    Each array has shape ``(n, m)``: column ``j`` is the unary map obtained
    by fixing the other arguments to the ``j``-th assignment of constants.
    """
    n = A.size
    out = []
    for op in A.operations:
        if op.arity == 0:
            continue
        t = op.array(n)
        for pos in range(op.arity):
            out.append(np.moveaxis(t, pos, 0).reshape(n, -1))
    return tuple(out)


def congruence_generated(A: FiniteAlgebra,
                         pairs: Iterable[tuple[int, int]]) -> Congruence:
    """Least congruence containing ``pairs``.

    Only pairs that actually merge two blocks are propagated through the
    translations; compatibility on a generating set of an equivalence
    relation implies compatibility on all of it.
    """
    uf = UnionFind(A.size)
    pending = [(a, b) for a, b in pairs if uf.union(a, b)]
    trans = _translations(A)
    while pending:
        a, b = pending.pop()
        for T in trans:
            for x, y in zip(T[a].tolist(), T[b].tolist()):
                if x != y and uf.union(x, y):
                    pending.append((x, y))
    return uf.congruence()


def principal_congruence(A: FiniteAlgebra, a: int, b: int) -> Congruence:
    if not (0 <= a < A.size and 0 <= b < A.size):
        raise IndexError(f"elements must lie in [0, {A.size})")
    return congruence_generated(A, [(a, b)])


def join(t1: Congruence, t2: Congruence) -> Congruence:
    uf = UnionFind(t1.size)
    for i in range(t1.size):
        uf.union(i, t1.repr[i])
        uf.union(i, t2.repr[i])
    return uf.congruence()


def meet(t1: Congruence, t2: Congruence) -> Congruence:
    first: dict[tuple[int, int], int] = {}
    out = []
    for i in range(t1.size):
        key = (t1.repr[i], t2.repr[i])
        out.append(first.setdefault(key, i))
    return Congruence(tuple(out))


def is_congruence(A: FiniteAlgebra, theta: Congruence) -> bool:
    """Compatibility with every one-step translation."""
    r = theta.array
    for T in _translations(A):
        if not np.array_equal(r[T], r[T[r]]):
            return False
    return True


def _lattice_key(theta: Congruence):
    # 0 first, 1 last; ties broken by the repr array
    return (-theta.num_blocks, theta.repr)


@dataclass(frozen=True)
class CongruenceLattice:
    elements: tuple[Congruence, ...]
    covers: tuple[tuple[int, int], ...]

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def index(self, theta: Congruence) -> int:
        return self.elements.index(theta)

    @property
    def zero(self) -> Congruence:
        return self.elements[0]

    @property
    def one(self) -> Congruence:
        return self.elements[-1]

    def leq(self, i: int, j: int) -> bool:
        return self.elements[i].leq(self.elements[j])

    def cover_pairs(self) -> list[tuple[Congruence, Congruence]]:
        return [(self.elements[i], self.elements[j]) for i, j in self.covers]

    def is_cover(self, delta: Congruence, theta: Congruence) -> bool:
        try:
            return (self.index(delta), self.index(theta)) in self.covers
        except ValueError:
            return False

    def to_json(self) -> dict:
        return {"elements": [list(t.repr) for t in self.elements],
                "covers": [list(c) for c in self.covers]}


@lru_cache(maxsize=256)
def all_congruences(A: FiniteAlgebra,
                    cap: int = DEFAULT_LATTICE_CAP) -> CongruenceLattice:
    """Con(A) as the join-closure of the principal congruences and 0."""
    n = A.size
    zero = Congruence.zero(n)
    principals = []
    seen_p = set()
    for a in range(n):
        for b in range(a + 1, n):
            p = principal_congruence(A, a, b)
            if p not in seen_p:
                seen_p.add(p)
                principals.append(p)
    found = {zero}
    order = [zero]
    i = 0
    while i < len(order):
        cur = order[i]
        for p in principals:
            j = join(cur, p)
            if j not in found:
                found.add(j)
                order.append(j)
                if len(order) > cap:
                    raise BudgetExceeded(len(order), cap, "congruence lattice")
        i += 1
    elements = tuple(sorted(found, key=_lattice_key))
    return CongruenceLattice(elements, _covers(elements))


def _covers(elements) -> tuple[tuple[int, int], ...]:
    m = len(elements)
    below = [[i for i in range(m) if i != j and elements[i].leq(elements[j])]
             for j in range(m)]
    covers = []
    for j in range(m):
        lower = set(below[j])
        for i in below[j]:
            # i < j is a cover iff nothing strictly between
            if not any(i in below[k] for k in lower if k != i):
                covers.append((i, j))
    return tuple(sorted(covers))


def require_cover(A: FiniteAlgebra, delta: Congruence, theta: Congruence):
    if not (delta.leq(theta) and delta != theta):
        raise NotComparable(f"{delta} is not strictly below {theta}")


def as_pairs(theta: Congruence) -> frozenset:
    return frozenset(theta.pairs())


def from_blocks(n: int, blocks) -> Congruence:
    return canonicalize_partition(n, blocks=blocks)
