"""Matrix sets, term-condition centrality, and (higher) commutators.

A d-dimensional cube is a tuple of ``2**d`` elements indexed by bitmasks:
bit ``i`` of the mask says whether coordinate ``i`` takes the unprimed (0)
or primed (1) argument tuple.  For ``d = 2`` the matrix

    [[m11, m12],
     [m21, m22]]

is stored as ``(m11, m21, m12, m22)``: rows run along dimension 0 and
columns along dimension 1.  Centrality pairs entries along the last
dimension; the pair at prefix ``11..1`` is the conclusion.
"""

from __future__ import annotations

import threading
from collections import OrderedDict
from dataclasses import dataclass, field
from typing import Sequence, Union

import numpy as np

from . import closure
from .algebra import Congruence, FiniteAlgebra
from .closure import DEFAULT_BUDGET, Subpower
from .congruences import congruence_generated
from .errors import DimensionTooLarge

DEFAULT_MAX_DIM = 4

# A congruence, or any reflexive symmetric relation given as a pair set.
RelationLike = Union[Congruence, frozenset]


def relation_pairs(rel: RelationLike) -> list[tuple[int, int]]:
    if isinstance(rel, Congruence):
        return rel.pairs()
    return sorted((int(a), int(b)) for a, b in rel)


def square(subset) -> frozenset:
    """The relation ``N x N``."""
    s = sorted(subset)
    return frozenset((a, b) for a in s for b in s)


def _rel_key(rel: RelationLike):
    if isinstance(rel, Congruence):
        return ("c", rel.repr)
    return ("r", tuple(relation_pairs(rel)))


def edge_cube(dim: int, i: int, a: int, b: int) -> tuple[int, ...]:
    return tuple(b if (v >> i) & 1 else a for v in range(1 << dim))


def edge_cubes(rels: Sequence[RelationLike]) -> list[tuple[int, ...]]:
    d = len(rels)
    return [edge_cube(d, i, a, b)
            for i, rel in enumerate(rels) for a, b in relation_pairs(rel)]


def flip(cube, i: int) -> tuple[int, ...]:
    """Swap the primed and unprimed faces along dimension ``i``."""
    return tuple(cube[v ^ (1 << i)] for v in range(len(cube)))


def permute_dims(cube, perm: Sequence[int]) -> tuple[int, ...]:
    """Relabel dimensions: new dimension ``j`` is old dimension ``perm[j]``."""
    d = len(perm)
    out = []
    for v in range(1 << d):
        old = 0
        for j, p in enumerate(perm):
            if (v >> j) & 1:
                old |= 1 << p
        out.append(cube[old])
    return tuple(out)


def as_matrix(cube) -> list[list[int]]:
    """2-d cube as ``[[m11, m12], [m21, m22]]``."""
    if len(cube) != 4:
        raise ValueError("as_matrix needs a 2-dimensional cube")
    return [[cube[0], cube[2]], [cube[1], cube[3]]]


def _ceiling(A: FiniteAlgebra, rels) -> int:
    width = 1 << len(rels)
    if all(isinstance(r, Congruence) for r in rels) and len(set(rels)) == 1:
        # every entry of the cube lies in one block
        return sum(len(b) ** width for b in rels[0].blocks())
    return A.size ** width


class _MatrixCache:
    def __init__(self, maxsize=48):
        self._data: OrderedDict = OrderedDict()
        self._lock = threading.Lock()
        self.maxsize = maxsize

    def get(self, key):
        with self._lock:
            val = self._data.get(key)
            if val is not None:
                self._data.move_to_end(key)
            return val

    def put(self, key, val):
        with self._lock:
            self._data[key] = val
            self._data.move_to_end(key)
            while len(self._data) > self.maxsize:
                self._data.popitem(last=False)

    def clear(self):
        with self._lock:
            self._data.clear()


_cache = _MatrixCache()


def clear_cache():
    _cache.clear()


def _check_dim(d: int, max_dim: int):
    if d < 1:
        raise ValueError("need at least one relation")
    if d > max_dim:
        raise DimensionTooLarge(f"dimension {d} exceeds max_dim {max_dim}")


def _key(A, rels, budget):
    return (A, tuple(_rel_key(r) for r in rels), budget)


def _full_closure(A, rels, budget):
    """``(discovery_rows, Subpower)`` for the matrix set, cached."""
    key = _key(A, rels, budget)
    hit = _cache.get(key)
    if hit is None:
        res = closure.run(A, 1 << len(rels), edge_cubes(rels), budget,
                          ceiling=_ceiling(A, rels))
        hit = (res.rows, Subpower(res.rows))
        _cache.put(key, hit)
    return hit


def matrix_set(A: FiniteAlgebra, congruences: Sequence[RelationLike],
               budget: int = DEFAULT_BUDGET,
               max_dim: int = DEFAULT_MAX_DIM) -> Subpower:
    """All cubes of M(a_1, ..., a_d): the subpower generated by edge cubes."""
    rels = tuple(congruences)
    _check_dim(len(rels), max_dim)
    return _full_closure(A, rels, budget)[1]


@dataclass(frozen=True)
class CentralityQuery:
    congruences: tuple
    delta: Congruence
    holds: bool
    witness: tuple | None = None
    cube_count: int | None = field(default=None, compare=False)

    def __bool__(self):
        return self.holds


def violates(cube, delta: Congruence) -> bool:
    """Does this cube break the centrality implication modulo delta?"""
    half = len(cube) // 2
    r = delta.repr
    for v in range(half - 1):
        if r[cube[v]] != r[cube[v + half]]:
            return False
    return r[cube[half - 1]] != r[cube[2 * half - 1]]


def _violations(rows: np.ndarray, delta: Congruence) -> np.ndarray:
    half = rows.shape[1] // 2
    R = delta.array[rows]
    prem = np.all(R[:, :half - 1] == R[:, half:2 * half - 1], axis=1)
    return prem & (R[:, half - 1] != R[:, 2 * half - 1])


def centrality_holds(A: FiniteAlgebra, congruences: Sequence[RelationLike],
                     delta: Congruence, budget: int = DEFAULT_BUDGET,
                     max_dim: int = DEFAULT_MAX_DIM) -> CentralityQuery:
    """Evaluate C(a_1, ..., a_d; delta), with a failing cube on failure.

    Generation stops at the first violating cube; if none appears the full
    matrix set is cached for later queries.
    """
    rels = tuple(congruences)
    d = len(rels)
    _check_dim(d, max_dim)
    hit = _cache.get(_key(A, rels, budget))
    if hit is None and d > 1:
        res = closure.run(A, 1 << d, edge_cubes(rels), budget,
                          ceiling=_ceiling(A, rels),
                          stop=("centrality", d, delta.repr))
        if res.stopped:
            return CentralityQuery(rels, delta, False, res.stop_row, None)
        hit = (res.rows, Subpower(res.rows))
        _cache.put(_key(A, rels, budget), hit)
    elif hit is None:
        hit = _full_closure(A, rels, budget)
    # first violation in discovery order: the same cube an early stop finds
    rows, full = hit
    bad = np.flatnonzero(_violations(rows, delta))
    if len(bad):
        w = tuple(int(v) for v in rows[bad[0]])
        return CentralityQuery(rels, delta, False, w, len(full))
    return CentralityQuery(rels, delta, True, None, len(full))


@dataclass(frozen=True)
class CommutatorResult:
    value: Congruence
    cube_count: int
    rounds: int


def commutator_fixpoint(A: FiniteAlgebra, congruences: Sequence[RelationLike],
                        budget: int = DEFAULT_BUDGET,
                        max_dim: int = DEFAULT_MAX_DIM) -> CommutatorResult:
    """Least delta with C(a_1, ..., a_d; delta), plus generation statistics."""
    M = matrix_set(A, congruences, budget, max_dim)
    rows = M.rows.astype(np.int64)
    half = rows.shape[1] // 2
    delta = Congruence.zero(A.size)
    rounds = 0
    while True:
        rounds += 1
        R = delta.array[rows]
        prem = np.all(R[:, :half - 1] == R[:, half:2 * half - 1], axis=1)
        concl = rows[prem][:, [half - 1, 2 * half - 1]]
        concl = concl[concl[:, 0] != concl[:, 1]]
        new = congruence_generated(
            A, [(i, r) for i, r in enumerate(delta.repr) if i != r]
            + [tuple(p) for p in np.unique(concl, axis=0).tolist()])
        if new == delta:
            return CommutatorResult(delta, len(M), rounds)
        delta = new


def higher_commutator(A: FiniteAlgebra, congruences: Sequence[RelationLike],
                      budget: int = DEFAULT_BUDGET,
                      max_dim: int = DEFAULT_MAX_DIM) -> Congruence:
    return commutator_fixpoint(A, congruences, budget, max_dim).value


def commutator(A: FiniteAlgebra, alpha: Congruence, beta: Congruence,
               budget: int = DEFAULT_BUDGET) -> Congruence:
    return higher_commutator(A, (alpha, beta), budget)


def is_supernilpotent(A: FiniteAlgebra, beta: Congruence, k: int,
                      budget: int = DEFAULT_BUDGET,
                      max_dim: int = DEFAULT_MAX_DIM) -> CentralityQuery:
    """C(beta, ..., beta; 0) with ``k + 1`` copies of beta."""
    _check_dim(k + 1, max_dim)
    return centrality_holds(A, (beta,) * (k + 1), Congruence.zero(A.size),
                            budget, max_dim)


def left_series(A: FiniteAlgebra, beta: Congruence,
                budget: int = DEFAULT_BUDGET) -> list[Congruence]:
    """(beta]^1 >= (beta]^2 >= ... up to the first repeated term."""
    series = [beta]
    while True:
        nxt = commutator(A, beta, series[-1], budget)
        if nxt == series[-1]:
            return series
        series.append(nxt)


def right_series(A: FiniteAlgebra, beta: Congruence,
                 budget: int = DEFAULT_BUDGET) -> list[Congruence]:
    """[beta)^1 >= [beta)^2 >= ... up to the first repeated term."""
    series = [beta]
    while True:
        nxt = commutator(A, series[-1], beta, budget)
        if nxt == series[-1]:
            return series
        series.append(nxt)


def _nilpotence(series: list[Congruence]) -> tuple[bool, int | None]:
    for i, theta in enumerate(series, start=1):
        if theta.is_zero():
            return True, i
    return False, None


def is_left_nilpotent(A, beta, budget=DEFAULT_BUDGET):
    """``(nilpotent, degree)``; degree is the first index where the series is 0."""
    return _nilpotence(left_series(A, beta, budget))


def is_right_nilpotent(A, beta, budget=DEFAULT_BUDGET):
    return _nilpotence(right_series(A, beta, budget))
