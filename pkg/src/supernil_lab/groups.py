"""Small permutation groups with fully materialized element sets.

Permutations of a domain ``U`` of size ``m`` are tuples ``p`` over the
positions ``0..m-1``; ``mul(p, q)`` is the composite "apply q, then p".
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .errors import DomainMismatch, NotSubgroup

Perm = tuple


def identity(m: int) -> Perm:
    return tuple(range(m))


def mul(p: Perm, q: Perm) -> Perm:
    return tuple(p[x] for x in q)


def inverse(p: Perm) -> Perm:
    out = [0] * len(p)
    for i, v in enumerate(p):
        out[v] = i
    return tuple(out)


def comm(a: Perm, b: Perm) -> Perm:
    """``a^-1 b^-1 a b``."""
    return mul(mul(inverse(a), inverse(b)), mul(a, b))


def is_bijection(p: Sequence[int]) -> bool:
    return sorted(p) == list(range(len(p)))


@dataclass(frozen=True)
class PermGroup:
    domain: tuple
    generators: tuple
    elements: frozenset = field(compare=True)

    @property
    def degree(self) -> int:
        return len(self.domain)

    @property
    def order(self) -> int:
        return len(self.elements)

    @property
    def identity(self) -> Perm:
        return identity(self.degree)

    def __contains__(self, p) -> bool:
        return tuple(p) in self.elements

    def __iter__(self):
        return iter(sorted(self.elements))

    def __len__(self):
        return len(self.elements)

    def is_trivial(self) -> bool:
        return len(self.elements) == 1

    def is_abelian(self) -> bool:
        els = sorted(self.elements)
        return all(mul(a, b) == mul(b, a) for a, b in itertools.combinations(els, 2))

    def __eq__(self, other):
        if not isinstance(other, PermGroup):
            return NotImplemented
        return self.domain == other.domain and self.elements == other.elements

    def __hash__(self):
        return hash((self.domain, self.elements))

    def __repr__(self):
        return f"PermGroup(degree={self.degree}, order={self.order})"


def generate_group(gens: Iterable[Sequence[int]], domain=None) -> PermGroup:
    """The group generated by ``gens`` (breadth-first closure)."""
    gens = [tuple(int(x) for x in g) for g in gens]
    if domain is None:
        if not gens:
            raise DomainMismatch("empty generator list needs an explicit domain")
        domain = tuple(range(len(gens[0])))
    domain = tuple(domain)
    m = len(domain)
    for g in gens:
        if len(g) != m or not is_bijection(g):
            raise DomainMismatch(f"{g} is not a permutation of {m} points")
    e = identity(m)
    seen = {e}
    frontier = [e]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = mul(x, g)
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return PermGroup(domain, tuple(gens), frozenset(seen))


def subgroup(G: PermGroup, elements: Iterable[Perm]) -> PermGroup:
    """The subgroup of G generated by ``elements``."""
    els = [tuple(x) for x in elements]
    for x in els:
        if x not in G.elements:
            raise NotSubgroup(f"{x} is not in the group")
    return generate_group(els, G.domain)


def _require_sub(G: PermGroup, *Hs: PermGroup):
    for H in Hs:
        if H.domain != G.domain or not H.elements <= G.elements:
            raise NotSubgroup("not a subgroup of G")


def trivial(G: PermGroup) -> PermGroup:
    return generate_group([], G.domain)


def intersection(H1: PermGroup, H2: PermGroup) -> PermGroup:
    els = H1.elements & H2.elements
    return PermGroup(H1.domain, tuple(sorted(els)), frozenset(els))


def subgroup_commutator(G: PermGroup, H1: PermGroup, H2: PermGroup) -> PermGroup:
    """[H1, H2], generated by all h1^-1 h2^-1 h1 h2."""
    _require_sub(G, H1, H2)
    cs = {comm(a, b) for a in H1.elements for b in H2.elements}
    return generate_group(sorted(cs), G.domain)


def lower_central_series(G: PermGroup) -> list[PermGroup]:
    """G >= [G,G] >= [[G,G],G] >= ... ending at the first repeated term."""
    series = [G]
    while True:
        nxt = subgroup_commutator(G, series[-1], G)
        if nxt == series[-1]:
            return series
        series.append(nxt)


def nilpotency_class(G: PermGroup) -> int | None:
    """Least c with the (c+1)-th lower central term trivial; None if not
    nilpotent.  The trivial group has class 0."""
    series = lower_central_series(G)
    if not series[-1].is_trivial():
        return None
    return len(series) - 1


def center(G: PermGroup) -> PermGroup:
    els = sorted(G.elements)
    z = [g for g in els if all(mul(g, x) == mul(x, g) for x in els)]
    return PermGroup(G.domain, tuple(z), frozenset(z))


def conjugate(G_elem: Perm, H: PermGroup) -> frozenset:
    gi = inverse(G_elem)
    return frozenset(mul(mul(G_elem, h), gi) for h in H.elements)


def core(G: PermGroup, K: PermGroup) -> PermGroup:
    """Intersection of all G-conjugates of K."""
    _require_sub(G, K)
    els = set(K.elements)
    for g in G.elements:
        els &= conjugate(g, K)
    return PermGroup(G.domain, tuple(sorted(els)), frozenset(els))


def is_normal(G: PermGroup, H: PermGroup) -> bool:
    _require_sub(G, H)
    return all(conjugate(g, H) == H.elements for g in G.generators) \
        if G.generators else True


def is_maximal(G: PermGroup, K: PermGroup) -> bool:
    """K < G with no subgroup strictly between them."""
    _require_sub(G, K)
    if K.elements == G.elements:
        return False
    base = sorted(K.elements)
    for x in sorted(G.elements - K.elements):
        if generate_group(base + [x], G.domain).elements != G.elements:
            return False
    return True


def all_subgroups(G: PermGroup) -> list[PermGroup]:
    """Every subgroup of G, as joins of cyclic subgroups."""
    cyclic = {generate_group([g], G.domain) for g in G.elements}
    found = {trivial(G)}
    frontier = list(found)
    while frontier:
        nxt = []
        for H in frontier:
            for C in cyclic:
                if C.elements <= H.elements:
                    continue
                J = generate_group(sorted(H.elements | C.elements), G.domain)
                if J not in found:
                    found.add(J)
                    nxt.append(J)
        frontier = nxt
    return sorted(found, key=lambda H: (H.order, sorted(H.elements)))


def symmetric_group(m: int) -> PermGroup:
    if m < 2:
        return generate_group([], tuple(range(m)))
    gens = [tuple([1, 0] + list(range(2, m)))]
    if m > 2:
        gens.append(tuple(list(range(1, m)) + [0]))
    return generate_group(gens)


def regular_representation(table: Sequence[Sequence[int]]) -> PermGroup:
    """Right-regular action x -> x*g of a group given by its Cayley table."""
    n = len(table)
    gens = [tuple(table[x][g] for x in range(n)) for g in range(n)]
    return generate_group(gens)


@dataclass(frozen=True)
class Lemma4Result:
    applicable: bool
    conclusion_holds: bool
    details: dict


def lemma4_verify(G: PermGroup, K: PermGroup, H: PermGroup) -> Lemma4Result:
    """Check: K core-free maximal, H normal nilpotent => H abelian, H & K = 1."""
    _require_sub(G, K, H)
    core_free = core(G, K).is_trivial()
    maximal = is_maximal(G, K)
    normal = is_normal(G, H)
    cls = nilpotency_class(H)
    applicable = core_free and maximal and normal and cls is not None
    abelian = H.is_abelian()
    meet_trivial = intersection(H, K).is_trivial()
    details = {"core_free": core_free, "maximal": maximal, "normal": normal,
               "nilpotency_class": cls, "abelian": abelian,
               "meet_trivial": meet_trivial}
    return Lemma4Result(applicable, abelian and meet_trivial, details)
