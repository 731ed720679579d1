"""Regenerate the bundled corpus under src/supernil_lab/corpus/."""

import itertools
from pathlib import Path

from supernil_lab.algebra import (FiniteAlgebra, Operation,
                                  algebra_from_functions, serialize_algebra)

OUT = Path(__file__).resolve().parent.parent / "src" / "supernil_lab" / "corpus"


def group_from_elements(name, elements, mul):
    """Cayley table with elements indexed in the given order (identity first)."""
    idx = {e: i for i, e in enumerate(elements)}
    n = len(elements)
    table = tuple(idx[mul(a, b)] for a in elements for b in elements)
    return FiniteAlgebra(name, n, (Operation("*", 2, table),))


def perm_group(name, gens):
    def compose(p, q):
        return tuple(p[x] for x in q)
    m = len(gens[0])
    seen = {tuple(range(m))}
    frontier = list(seen)
    while frontier:
        frontier = [compose(x, g) for x in frontier for g in gens
                    if compose(x, g) not in seen and not seen.add(compose(x, g))]
    return group_from_elements(name, sorted(seen), compose)


def cyclic(n):
    return algebra_from_functions(f"Z{n}", n, [("+", 2, lambda a, b: a + b)])


def quaternion():
    # (sign, unit) with units 1, i, j, k
    table = {("1", u): (1, u) for u in "1ijk"}
    table.update({(u, "1"): (1, u) for u in "1ijk"})
    table.update({("i", "i"): (-1, "1"), ("j", "j"): (-1, "1"), ("k", "k"): (-1, "1"),
                  ("i", "j"): (1, "k"), ("j", "k"): (1, "i"), ("k", "i"): (1, "j"),
                  ("j", "i"): (-1, "k"), ("k", "j"): (-1, "i"), ("i", "k"): (-1, "j")})

    def mul(a, b):
        s, u = table[(a[1], b[1])]
        return (a[0] * b[0] * s, u)
    els = [(1, "1"), (-1, "1")] + [(s, u) for u in "ijk" for s in (1, -1)]
    return group_from_elements("Q8", els, mul)


def algebras():
    yield algebra_from_functions("SL2", 2, [("meet", 2, min)])
    yield cyclic(2)
    yield cyclic(3)
    yield cyclic(4)
    yield algebra_from_functions(
        "Z4-full", 4, [("+", 2, lambda a, b: a + b), ("-", 1, lambda a: -a),
                       ("0", 0, lambda: 0)])
    yield group_from_elements(
        "Z2xZ2", [(a, b) for a in range(2) for b in range(2)],
        lambda x, y: ((x[0] + y[0]) % 2, (x[1] + y[1]) % 2))
    yield perm_group("S3", [(1, 0, 2), (1, 2, 0)])
    yield cyclic(6)
    yield perm_group("D4", [(1, 2, 3, 0), (3, 2, 1, 0)])
    yield quaternion()
    yield cyclic(8)
    yield algebra_from_functions(
        "SL3-abs", 3, [("m", 2, lambda a, b: 2 if 2 in (a, b) else min(a, b))])
    yield FiniteAlgebra("Set2", 2, ())
    yield algebra_from_functions("Trivial", 1, [("*", 2, lambda a, b: 0)])
    yield algebra_from_functions("Lat2", 2, [("meet", 2, min), ("join", 2, max)])
    yield algebra_from_functions("Chain3", 3, [("meet", 2, min), ("join", 2, max)])
    yield algebra_from_functions("Z3-set", 3, [("s", 1, lambda a: a + 1)])
    yield algebra_from_functions("S3-set", 3, [
        ("t", 1, lambda a: (1, 0, 2)[a]), ("c", 1, lambda a: (1, 2, 0)[a])])
    yield algebra_from_functions("Affine-Z3", 3, [("q", 3, lambda x, y, z: x - y + z)])
    yield algebra_from_functions("RPS", 3, [
        ("beats", 2, lambda a, b: a if a == b or (a - b) % 3 == 1 else b)])
    yield algebra_from_functions("Unary3", 3, [("f", 1, lambda a: (0, 0, 1)[a])])
    yield algebra_from_functions("Left-zero2", 2, [("l", 2, lambda a, b: a)])
    yield algebra_from_functions("Z2-minus", 2, [("m", 2, lambda a, b: a - b)])


def main():
    OUT.mkdir(parents=True, exist_ok=True)
    for A in algebras():
        (OUT / f"{A.name}.json").write_text(serialize_algebra(A), encoding="utf-8")
        print(A.name, A.size)


if __name__ == "__main__":
    main()
