"""Finite algebras given by operation tables, and their partitions.

Elements of an algebra of size ``n`` are the integers ``0..n-1``.  An
operation of arity ``r`` is stored as a flat table of length ``n**r`` in
row-major order, most significant argument first, so that
``f(a_0, ..., a_{r-1}) = table[sum(a_i * n**(r-1-i))]``.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from .errors import NotEquivalence, ParseError, ValidationError


@dataclass(frozen=True)
class Operation:
    name: str
    arity: int
    table: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "table", tuple(int(v) for v in self.table))

    def array(self, n: int) -> np.ndarray:
        """The table reshaped to ``(n,) * arity``."""
        return np.asarray(self.table, dtype=np.int64).reshape((n,) * self.arity)


@dataclass(frozen=True)
class FiniteAlgebra:
    name: str
    size: int
    operations: tuple[Operation, ...] = ()
    _hash: int = field(default=0, init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "operations", tuple(self.operations))
        validate_algebra(self)
        object.__setattr__(
            self, "_hash", hash((self.name, self.size, self.operations)))

    def __hash__(self):
        return self._hash

    @property
    def universe(self) -> range:
        return range(self.size)

    @property
    def signature(self) -> tuple[int, ...]:
        return tuple(op.arity for op in self.operations)

    def op(self, name: str) -> Operation:
        for o in self.operations:
            if o.name == name:
                return o
        raise KeyError(name)


def validate_algebra(A: FiniteAlgebra) -> None:
    n = A.size
    if not isinstance(n, int) or n < 1:
        raise ValidationError(f"size must be a positive integer, got {n!r}")
    for op in A.operations:
        if op.arity < 0:
            raise ValidationError(f"operation {op.name!r} has negative arity")
        expected = n ** op.arity
        if len(op.table) != expected:
            raise ValidationError(
                f"operation {op.name!r}: table has {len(op.table)} entries, "
                f"expected {expected}")
        for v in op.table:
            if not 0 <= v < n:
                raise ValidationError(
                    f"operation {op.name!r}: entry {v} outside [0, {n})")


def apply(A: FiniteAlgebra, op_index: int, args: Sequence[int]) -> int:
    """Evaluate basic operation ``op_index`` of ``A`` at ``args``."""
    if not 0 <= op_index < len(A.operations):
        raise IndexError(f"no operation with index {op_index}")
    op = A.operations[op_index]
    if len(args) != op.arity:
        raise IndexError(
            f"operation {op.name!r} has arity {op.arity}, got {len(args)} args")
    n = A.size
    idx = 0
    for a in args:
        if not 0 <= a < n:
            raise IndexError(f"argument {a} outside [0, {n})")
        idx = idx * n + a
    return op.table[idx]


def is_associative(A: FiniteAlgebra, op: Operation) -> bool:
    if op.arity != 2:
        return False
    t = op.array(A.size)
    ar = np.arange(A.size)
    lhs = t[t[:, :, None], ar[None, None, :]]   # (x*y)*z
    rhs = t[ar[:, None, None], t[None, :, :]]   # x*(y*z)
    return bool(np.array_equal(lhs, rhs))


# --------------------------------------------------------------------------
# Partitions

@dataclass(frozen=True, order=True)
class Congruence:
    """A partition of ``{0..n-1}`` stored as least block representatives.

    ``repr[i]`` is the least element of the block of ``i``.  Used both for
    congruences and for plain equivalence relations.
    """

    repr: tuple[int, ...]

    def __post_init__(self):
        r = tuple(int(v) for v in self.repr)
        object.__setattr__(self, "repr", r)
        for i, v in enumerate(r):
            if not (0 <= v <= i and r[v] == v):
                raise ValidationError(f"not a canonical partition: {list(r)}")

    @property
    def size(self) -> int:
        return len(self.repr)

    @classmethod
    def zero(cls, n: int) -> "Congruence":
        return cls(tuple(range(n)))

    @classmethod
    def one(cls, n: int) -> "Congruence":
        return cls((0,) * n)

    def related(self, a: int, b: int) -> bool:
        return self.repr[a] == self.repr[b]

    __call__ = related

    @cached_property
    def num_blocks(self) -> int:
        return sum(1 for i, v in enumerate(self.repr) if i == v)

    @cached_property
    def array(self) -> np.ndarray:
        a = np.asarray(self.repr, dtype=np.int64)
        a.setflags(write=False)
        return a

    def blocks(self) -> list[tuple[int, ...]]:
        out: dict[int, list[int]] = {}
        for i, v in enumerate(self.repr):
            out.setdefault(v, []).append(i)
        return [tuple(b) for b in out.values()]

    def pairs(self) -> list[tuple[int, int]]:
        """All ordered pairs in the relation, lexicographically."""
        return [(a, b) for a in range(self.size) for b in range(self.size)
                if self.repr[a] == self.repr[b]]

    def is_zero(self) -> bool:
        return self.num_blocks == self.size

    def is_one(self) -> bool:
        return self.num_blocks == 1

    def leq(self, other: "Congruence") -> bool:
        """Refinement order: every block of self lies in a block of other."""
        o = other.repr
        return all(o[i] == o[v] for i, v in enumerate(self.repr))

    def to_json(self) -> dict:
        return {"repr": list(self.repr)}

    def __str__(self):
        return "|".join(",".join(map(str, b)) for b in self.blocks())


def canonicalize_partition(
        n: int,
        blocks: Iterable[Iterable[int]] | None = None,
        pairs: Iterable[tuple[int, int]] | None = None) -> Congruence:
    """Canonical form of the equivalence relation generated by the input.

    Either ``blocks`` (a family of subsets) or ``pairs`` (any relation,
    closed reflexively, symmetrically and transitively here) may be given.
    """
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(a, b):
        for x in (a, b):
            if not (isinstance(x, (int, np.integer)) and 0 <= x < n):
                raise NotEquivalence(f"element {x!r} outside [0, {n})")
        ra, rb = find(a), find(b)
        if ra != rb:
            if ra < rb:
                parent[rb] = ra
            else:
                parent[ra] = rb

    if blocks is not None:
        for block in blocks:
            block = list(block)
            for x in block:
                union(block[0], x)
    if pairs is not None:
        for a, b in pairs:
            union(a, b)
    # roots are block minima because union always keeps the smaller root
    return Congruence(tuple(find(i) for i in range(n)))


def parse_congruence(text_or_obj, n: int | None = None) -> Congruence:
    obj = _loads(text_or_obj)
    if not isinstance(obj, dict) or "repr" not in obj:
        raise ParseError("congruence document must be an object with 'repr'")
    r = obj["repr"]
    if not isinstance(r, list) or not all(isinstance(v, int) for v in r):
        raise ParseError("'repr' must be a list of integers")
    if n is not None and len(r) != n:
        raise ValidationError(f"congruence has length {len(r)}, expected {n}")
    return Congruence(tuple(r))


def serialize_congruence(theta: Congruence) -> str:
    return json.dumps(theta.to_json(), separators=(", ", ": "))


# --------------------------------------------------------------------------
# File format

def _loads(text_or_obj):
    if isinstance(text_or_obj, (str, bytes, bytearray)):
        try:
            return json.loads(text_or_obj)
        except json.JSONDecodeError as exc:
            raise ParseError(f"invalid JSON: {exc}") from exc
    return text_or_obj


def parse_algebra(text) -> FiniteAlgebra:
    """Parse and validate an algebra document (JSON text or decoded dict)."""
    obj = _loads(text)
    if not isinstance(obj, dict):
        raise ParseError("algebra document must be a JSON object")
    for key in ("name", "size", "operations"):
        if key not in obj:
            raise ParseError(f"missing key {key!r}")
    name, size, ops = obj["name"], obj["size"], obj["operations"]
    if not isinstance(name, str):
        raise ParseError("'name' must be a string")
    if not isinstance(size, int) or isinstance(size, bool):
        raise ParseError("'size' must be an integer")
    if not isinstance(ops, list):
        raise ParseError("'operations' must be a list")
    parsed = []
    for i, op in enumerate(ops):
        if not isinstance(op, dict):
            raise ParseError(f"operation {i} must be an object")
        for key in ("name", "arity", "table"):
            if key not in op:
                raise ParseError(f"operation {i}: missing key {key!r}")
        table = op["table"]
        if (not isinstance(op["arity"], int) or not isinstance(table, list)
                or not all(isinstance(v, int) and not isinstance(v, bool)
                           for v in table)):
            raise ParseError(f"operation {i}: arity/table must be integers")
        parsed.append(Operation(str(op["name"]), op["arity"], tuple(table)))
    return FiniteAlgebra(name, size, tuple(parsed))


def algebra_to_json(A: FiniteAlgebra) -> dict:
    return {"name": A.name, "size": A.size,
            "operations": [{"name": op.name, "arity": op.arity,
                            "table": list(op.table)} for op in A.operations]}


def serialize_algebra(A: FiniteAlgebra) -> str:
    """Canonical text form; ``serialize_algebra(parse_algebra(s)) == s``
    for any ``s`` produced by this function."""
    ops = ",\n".join(
        "    " + json.dumps({"name": op.name, "arity": op.arity,
                             "table": list(op.table)}, separators=(", ", ": "))
        for op in A.operations)
    body = f"[\n{ops}\n  ]" if ops else "[]"
    return (f'{{\n  "name": {json.dumps(A.name)},\n  "size": {A.size},\n'
            f'  "operations": {body}\n}}\n')


def load_algebra(path) -> FiniteAlgebra:
    with open(path, encoding="utf-8") as fh:
        return parse_algebra(fh.read())


# --------------------------------------------------------------------------
# Constructors used by the corpus and tests

def algebra_from_functions(name: str, size: int, ops) -> FiniteAlgebra:
    """Build an algebra from ``(name, arity, callable)`` triples."""
    out = []
    for op_name, arity, fn in ops:
        table = [fn(*args) % size if arity else fn() % size
                 for args in itertools.product(range(size), repeat=arity)]
        out.append(Operation(op_name, arity, tuple(table)))
    return FiniteAlgebra(name, size, tuple(out))
