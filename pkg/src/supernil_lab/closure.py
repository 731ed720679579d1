"""Subuniverses of finite powers ``A**S`` under coordinatewise operations.

This is the engine behind matrix sets, unary polynomials and twin pairs.
The inner loop lives in a compiled extension (``_kernel``); a pure-Python
kernel with the identical enumeration order is selected at import time when
the extension is missing or ``SUPERNIL_PURE_PYTHON=1`` is set.
"""

from __future__ import annotations

import logging
import os
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, NamedTuple

import numpy as np

from . import _kernel_py
from .algebra import Congruence, FiniteAlgebra, is_associative

log = logging.getLogger(__name__)

DEFAULT_BUDGET = 5_000_000

_KEY_LIMIT = 2 ** 63

if os.environ.get("SUPERNIL_PURE_PYTHON") == "1":
    _compiled = None
else:
    try:
        from . import _kernel as _compiled
    except ImportError:  # pragma: no cover - depends on the build
        _compiled = None

BACKEND = "compiled" if _compiled is not None else "python"


def _kernel_for(n: int, width: int, backend: str | None):
    backend = backend or BACKEND
    if backend == "compiled":
        if _compiled is None:
            raise RuntimeError("compiled kernel is not available")
        if n ** width < _KEY_LIMIT:
            return _compiled.run_closure
        log.debug("n**width too large for packed keys, using python kernel")
    return _kernel_py.run_closure


class UnaryMap(tuple):
    """Total self-map of ``A`` as its table ``(f(0), ..., f(n-1))``."""
    __slots__ = ()


class TwinPair(NamedTuple):
    first: tuple
    second: tuple


@dataclass(frozen=True)
class ClosureResult:
    rows: np.ndarray          # discovery order
    stopped: bool
    stop_index: int

    @property
    def stop_row(self):
        if not self.stopped:
            return None
        return tuple(int(v) for v in self.rows[self.stop_index])


class Subpower:
    """An immutable set of tuples of a fixed width, canonically sorted."""

    def __init__(self, rows: np.ndarray):
        rows = np.asarray(rows, dtype=np.uint8)
        if rows.ndim != 2:
            raise ValueError("rows must be a 2-d array")
        if len(rows):
            order = np.lexsort(rows.T[::-1])
            rows = rows[order]
        rows.setflags(write=False)
        self.rows = rows
        self._index = None

    @property
    def width(self) -> int:
        return self.rows.shape[1]

    def __len__(self):
        return len(self.rows)

    def __iter__(self):
        for row in self.rows.tolist():
            yield tuple(row)

    def _keys(self):
        if self._index is None:
            w = self.width
            buf = self.rows.tobytes()
            self._index = {buf[i:i + w] for i in range(0, len(buf), w)}
        return self._index

    def __contains__(self, item) -> bool:
        t = np.asarray(item, dtype=np.uint8)
        if t.shape != (self.width,):
            return False
        return t.tobytes() in self._keys()

    def as_set(self) -> frozenset:
        return frozenset(self)

    def __eq__(self, other):
        if isinstance(other, Subpower):
            return np.array_equal(self.rows, other.rows)
        return NotImplemented

    def __hash__(self):
        return hash(self.rows.tobytes())

    def __repr__(self):
        return f"Subpower(width={self.width}, size={len(self)})"


def kernel_signature(A: FiniteAlgebra):
    """Split the signature into kernel ops, constants and the associative flag."""
    ops = [(op.arity, op.table) for op in A.operations if op.arity > 0]
    consts = [op.table[0] for op in A.operations if op.arity == 0]
    big = [op for op in A.operations if op.arity >= 2]
    assoc = len(big) == 1 and big[0].arity == 2 and is_associative(A, big[0])
    return ops, consts, assoc


def run(A: FiniteAlgebra, width: int, generators, budget: int = DEFAULT_BUDGET,
        *, ceiling: int | None = None, stop=None,
        backend: str | None = None) -> ClosureResult:
    """Low-level closure with optional early stop.

    ``ceiling`` is a known upper bound on the closure size (defaults to
    ``n**width``); the loop halts as soon as it is reached.
    """
    n = A.size
    ops, consts, assoc = kernel_signature(A)
    gens = [tuple(int(v) for v in g) for g in generators]
    for g in gens:
        if len(g) != width:
            raise ValueError(f"generator {g} does not have width {width}")
    gens.extend((c,) * width for c in consts)
    if ceiling is None:
        full = n ** width
        ceiling = full if full < _KEY_LIMIT else 0
    rows, status, stop_index = _kernel_for(n, width, backend)(
        n, ops, width, np.asarray(gens, dtype=np.uint8).reshape(-1, width),
        budget, ceiling, stop, assoc)
    return ClosureResult(rows, bool(status), int(stop_index))


def generate_subpower(A: FiniteAlgebra, index_set_size: int,
                      generators: Iterable, budget: int = DEFAULT_BUDGET,
                      *, ceiling: int | None = None,
                      backend: str | None = None) -> Subpower:
    """The least subuniverse of ``A**index_set_size`` containing ``generators``.

    Raises :class:`BudgetExceeded` when more than ``budget`` tuples appear.
    """
    res = run(A, index_set_size, generators, budget, ceiling=ceiling,
              backend=backend)
    return Subpower(res.rows)


# --------------------------------------------------------------------------
# Specializations

@lru_cache(maxsize=256)
def unary_polynomials(A: FiniteAlgebra, budget: int = DEFAULT_BUDGET) -> Subpower:
    """All unary polynomial functions of ``A`` as tables of length ``n``."""
    n = A.size
    gens = [tuple(range(n))] + [(a,) * n for a in range(n)]
    return generate_subpower(A, n, gens, budget)


@lru_cache(maxsize=128)
def twin_pairs(A: FiniteAlgebra, beta: Congruence,
               budget: int = DEFAULT_BUDGET,
               points: tuple[int, ...] | None = None) -> Subpower:
    """Pairs ``(h_a, h_b)`` of unary polynomials with ``a beta b``.

    Each row has width ``2m``: the first map's values on ``points``
    (default: all of A) followed by the second's.  Restricting to fewer
    points is a projection, so it commutes with generation.
    """
    pts = tuple(range(A.size)) if points is None else tuple(points)
    m = len(pts)
    gens = [pts + pts]
    gens += [(a,) * m + (b,) * m for a, b in beta.pairs()]
    # (f(x), g(x)) lies in beta for every x
    ceiling = len(beta.pairs()) ** m
    return generate_subpower(A, 2 * m, gens, budget, ceiling=ceiling)


def split_pair(row, n: int) -> TwinPair:
    row = tuple(int(v) for v in row)
    return TwinPair(row[:n], row[n:])


@lru_cache(maxsize=64)
def binary_polynomials(A: FiniteAlgebra, budget: int = DEFAULT_BUDGET) -> Subpower:
    """All binary polynomial functions; coordinate ``x*n + y`` holds p(x, y)."""
    n = A.size
    px = tuple(x for x in range(n) for _ in range(n))
    py = tuple(y for _ in range(n) for y in range(n))
    gens = [px, py] + [(a,) * (n * n) for a in range(n)]
    return generate_subpower(A, n * n, gens, budget)


def compose(f, g):
    """``f o g`` as a table."""
    return tuple(f[x] for x in g)


def clear_caches():
    unary_polynomials.cache_clear()
    twin_pairs.cache_clear()
    binary_polynomials.cache_clear()
