"""Neighborhoods, minimal sets, traces and twin monoids.

Unary polynomials and twin pairs are handled extensionally, as tables
computed by :mod:`supernil_lab.closure`.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field

from . import closure, groups
from .algebra import Congruence, FiniteAlgebra
from .closure import DEFAULT_BUDGET, compose
from .commutator import DEFAULT_MAX_DIM, centrality_holds, square
from .congruences import require_cover
from .errors import NotMinimalSet

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class Neighborhood:
    carrier: tuple[int, ...]
    witness: tuple[int, ...] | None   # idempotent e with e(A) = carrier

    def __post_init__(self):
        e = self.witness
        if e is not None:
            if compose(e, e) != tuple(e):
                raise ValueError("neighborhood witness is not idempotent")
            if tuple(sorted(set(e))) != self.carrier:
                raise ValueError("witness image differs from the carrier")

    def __contains__(self, x):
        return x in self.carrier

    def __len__(self):
        return len(self.carrier)


@dataclass(frozen=True)
class TraceSet:
    minimal_set: Neighborhood
    traces: tuple[tuple[int, ...], ...]


@dataclass(frozen=True)
class TwinMonoid:
    neighborhood: Neighborhood
    maps: frozenset            # tables indexed by position in the carrier
    is_group: bool
    nilpotency_class: int | None = None

    def as_group(self) -> groups.PermGroup:
        if not self.is_group:
            raise ValueError("twin monoid is not a group of permutations")
        return groups.generate_group(sorted(self.maps),
                                     self.neighborhood.carrier)

    @property
    def is_nilpotent_group(self) -> bool:
        return self.is_group and self.nilpotency_class is not None


def image(f) -> tuple[int, ...]:
    return tuple(sorted(set(f)))


def neighborhoods(A: FiniteAlgebra,
                  budget: int = DEFAULT_BUDGET) -> list[Neighborhood]:
    """Images of idempotent unary polynomials, one (least) witness each."""
    best: dict[tuple, tuple] = {}
    for f in closure.unary_polynomials(A, budget):
        if compose(f, f) == f:
            U = image(f)
            if U not in best:      # iteration is in sorted order
                best[U] = f
    return [Neighborhood(U, e) for U, e in sorted(best.items(),
                                                  key=lambda kv: (len(kv[0]), kv[0]))]


def _separates(f, delta: Congruence, theta: Congruence) -> bool:
    """f(theta) is not contained in delta."""
    r = delta.repr
    n = len(f)
    return any(r[f[x]] != r[f[y]] for x in range(n) for y in range(x + 1, n)
               if theta.related(x, y))


def minimal_sets(A: FiniteAlgebra, delta: Congruence, theta: Congruence,
                 budget: int = DEFAULT_BUDGET) -> list[Neighborhood]:
    """Min_A(delta, theta): inclusion-minimal images f(A) with f(theta) not in delta."""
    require_cover(A, delta, theta)
    polys = list(closure.unary_polynomials(A, budget))
    images = {image(f) for f in polys if _separates(f, delta, theta)}
    minimal = [U for U in images
               if not any(V != U and set(V) <= set(U) for V in images)]
    idem = {}
    for f in polys:
        if compose(f, f) == f:
            idem.setdefault(image(f), f)
    return [Neighborhood(U, idem.get(U))
            for U in sorted(minimal, key=lambda U: (len(U), U))]


def traces(A: FiniteAlgebra, U: Neighborhood, delta: Congruence,
           theta: Congruence, budget: int = DEFAULT_BUDGET) -> TraceSet:
    """The theta|_U classes that meet at least two delta classes."""
    carriers = {V.carrier for V in minimal_sets(A, delta, theta, budget)}
    if U.carrier not in carriers:
        raise NotMinimalSet(f"{U.carrier} is not a ({delta}, {theta})-minimal set")
    return TraceSet(U, _trace_classes(U.carrier, delta, theta))


def _trace_classes(carrier, delta, theta):
    classes: dict[int, list[int]] = {}
    for u in carrier:
        classes.setdefault(theta.repr[u], []).append(u)
    return tuple(tuple(c) for c in classes.values()
                 if len({delta.repr[u] for u in c}) >= 2)


def twin_monoid(A: FiniteAlgebra, beta: Congruence, U: Neighborhood,
                budget: int = DEFAULT_BUDGET) -> TwinMonoid:
    """Tw_beta(A, U): restrictions f|_U of twins f of maps g with g|_U = id,
    where f(A) is inside U.

    With an idempotent witness e for U only values on U matter: (f, g) may
    be replaced by (e f, e g), so the twin closure is projected onto U.
    """
    carrier = U.carrier
    pos = {u: i for i, u in enumerate(carrier)}
    m = len(carrier)
    maps = set()
    e = U.witness
    if e is not None:
        for row in twin_pairs_rows(A, beta, budget, carrier):
            f, g = row[:m], row[m:]
            if all(e[g[i]] == u for i, u in enumerate(carrier)):
                maps.add(tuple(pos[e[x]] for x in f))
    else:
        n = A.size
        inside = set(carrier)
        for row in twin_pairs_rows(A, beta, budget):
            f, g = row[:n], row[n:]
            if all(g[u] == u for u in carrier) and set(f) <= inside:
                maps.add(tuple(pos[f[u]] for u in carrier))
    is_group = all(groups.is_bijection(p) for p in maps)
    cls = None
    if is_group:
        cls = groups.nilpotency_class(
            groups.generate_group(sorted(maps), carrier))
    return TwinMonoid(U, frozenset(maps), is_group, cls)


def twin_pairs_rows(A, beta, budget=DEFAULT_BUDGET, points=None):
    return closure.twin_pairs(A, beta, budget, points).rows.tolist()


def restrict_map(p, carrier, subset) -> tuple[int, ...]:
    """Elements ``p(x)`` for x in ``subset``, p given on carrier positions."""
    pos = {u: i for i, u in enumerate(carrier)}
    return tuple(carrier[p[pos[x]]] for x in subset)


def centrality_on_trace(A: FiniteAlgebra, beta: Congruence, N,
                        delta: Congruence, budget: int = DEFAULT_BUDGET) -> bool:
    """C(beta, N^2; delta)."""
    if not N:
        raise ValueError("trace must be nonempty")
    return centrality_holds(A, (beta, square(N)), delta, budget).holds


@dataclass(frozen=True)
class RegularityReport:
    holds: bool
    counterexample: dict | None = None
    non_group: bool = False
    warnings: tuple = field(default=())


def beta_regular(A: FiniteAlgebra, beta: Congruence, delta: Congruence,
                 theta: Congruence,
                 budget: int = DEFAULT_BUDGET) -> RegularityReport:
    """Every twin map preserving a trace with a fixed point modulo delta is
    the identity modulo delta on that trace.

    Evaluated literally on the twin monoid's maps, whatever the quotient's
    type; ``non_group`` flags minimal sets whose twin monoid is not a group.
    """
    require_cover(A, delta, theta)
    r = delta.repr
    non_group = False
    warnings = []
    for U in minimal_sets(A, delta, theta, budget):
        tw = twin_monoid(A, beta, U, budget)
        if not tw.is_group:
            non_group = True
            warnings.append(f"twin monoid on {list(U.carrier)} is not a group")
        carrier = U.carrier
        for N in _trace_classes(carrier, delta, theta):
            Nset = set(N)
            for p in sorted(tw.maps):
                img = restrict_map(p, carrier, N)
                if not set(img) <= Nset:
                    continue
                fixed = [u for u, pu in zip(N, img) if r[pu] == r[u]]
                if fixed and any(r[px] != r[x] for x, px in zip(N, img)):
                    if warnings:
                        log.info("beta_regular: %s", "; ".join(warnings))
                    return RegularityReport(
                        False,
                        {"U": list(carrier), "N": list(N),
                         "p": [carrier[i] for i in p], "u": fixed[0]},
                        non_group, tuple(warnings))
    return RegularityReport(True, None, non_group, tuple(warnings))
