"""Detection of k-dimensional beta-snags and tame-congruence 2-snags."""

from __future__ import annotations

from dataclasses import dataclass

from . import closure
from .algebra import Congruence, FiniteAlgebra
from .closure import DEFAULT_BUDGET
from .commutator import (DEFAULT_MAX_DIM, _ceiling, _check_dim, _key, _cache,
                         edge_cubes)
from .congruences import all_congruences

BETA_K_SNAG = "beta_k_snag"
TWO_SNAG = "two_snag"


def snag_cube(k: int, zero: int, one: int) -> tuple[int, ...]:
    """``2**k - 1`` entries equal to ``zero`` and ``one`` at mask ``11..1``."""
    width = 1 << k
    return (zero,) * (width - 1) + (one,)


@dataclass(frozen=True)
class SnagReport:
    kind: str
    pair: tuple[int, int]
    k: int
    witness: tuple

    def __post_init__(self):
        zero, one = self.pair
        if zero == one:
            raise ValueError("a snag needs two distinct elements")
        if self.kind == BETA_K_SNAG:
            ok = self.witness == snag_cube(self.k, zero, one)
        elif self.kind == TWO_SNAG:
            # restriction of the binary polynomial to {0,1}^2, same layout
            ok = self.witness == snag_cube(2, zero, one)
        else:
            ok = False
        if not ok:
            raise ValueError(f"witness does not certify a {self.kind}")

    def to_json(self) -> dict:
        return {"kind": self.kind, "pair": list(self.pair), "k": self.k,
                "witness": list(self.witness)}


def find_beta_snags(A: FiniteAlgebra, beta: Congruence, k: int,
                    budget: int = DEFAULT_BUDGET,
                    max_dim: int = DEFAULT_MAX_DIM,
                    first: bool = False) -> list[SnagReport]:
    """All pairs (0, 1) in beta whose snag cube lies in M(beta, ..., beta).

    Generation stops early once every candidate cube has appeared, or with
    ``first=True`` once any has; the result then holds that one snag.
    """
    _check_dim(k, max_dim)
    rels = (beta,) * k
    cands = {(a, b): snag_cube(k, a, b) for a, b in beta.pairs() if a != b}
    if not cands:
        return []
    hit = _cache.get(_key(A, rels, budget))
    if hit is not None:
        M = hit[1]
    else:
        res = closure.run(A, 1 << k, edge_cubes(rels), budget,
                          ceiling=_ceiling(A, rels),
                          stop=("any_target" if first else "targets",
                                sorted(cands.values())))
        M = closure.Subpower(res.rows)
        if not res.stopped:
            _cache.put(_key(A, rels, budget), (res.rows, M))
        elif first:
            cube = res.stop_row
            pair = (cube[0], cube[-1])
            return [SnagReport(BETA_K_SNAG, pair, k, cube)]
    found = [SnagReport(BETA_K_SNAG, pair, k, cube)
             for pair, cube in sorted(cands.items()) if cube in M]
    return found[:1] if first else found


def find_two_snags(A: FiniteAlgebra,
                   budget: int = DEFAULT_BUDGET) -> list[SnagReport]:
    """Pairs (0, 1) on which some binary polynomial restricts to the meet."""
    out = []
    for a in range(A.size):
        for b in range(A.size):
            if a == b:
                continue
            target = snag_cube(2, a, b)
            res = closure.run(A, 4, [(a, b, a, b), (a, a, b, b)]
                              + [(c,) * 4 for c in range(A.size)],
                              budget, stop=("targets", [target]))
            if res.stopped:
                out.append(SnagReport(TWO_SNAG, (a, b), 2, target))
    return out


def two_snag_implies_k_snag_check(A: FiniteAlgebra, k: int,
                                  budget: int = DEFAULT_BUDGET,
                                  max_dim: int = DEFAULT_MAX_DIM) -> bool:
    """Every 2-snag lying in beta is a (beta, k)-snag, for every beta."""
    _check_dim(k, max_dim)
    twos = [s.pair for s in find_two_snags(A, budget)]
    if not twos:
        return True
    for beta in all_congruences(A):
        inside = [p for p in twos if beta.related(*p)]
        if not inside:
            continue
        found = {s.pair for s in find_beta_snags(A, beta, k, budget, max_dim)}
        if not set(inside) <= found:
            return False
    return True
