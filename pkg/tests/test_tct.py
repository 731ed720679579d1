import pytest

from conftest import con, one, zero
from oracles import CayleyGroup
from supernil_lab import corpus, groups
from supernil_lab.congruences import all_congruences
from supernil_lab.errors import NotComparable, NotMinimalSet
from supernil_lab.tct import (Neighborhood, beta_regular, centrality_on_trace,
                              minimal_sets, neighborhoods, traces, twin_monoid)


def carriers(hoods):
    return {U.carrier for U in hoods}


def test_neighborhoods(alg):
    assert carriers(neighborhoods(alg("SL2"))) == {(0, 1), (0,), (1,)}
    assert carriers(neighborhoods(alg("Z2"))) == {(0, 1), (0,), (1,)}
    for name in ("S3", "RPS", "Chain3"):
        A = alg(name)
        assert tuple(range(A.size)) in carriers(neighborhoods(A))
        for U in neighborhoods(A):
            e = U.witness
            assert all(e[e[x]] == e[x] for x in range(A.size))


def test_neighborhood_validation():
    with pytest.raises(ValueError):
        Neighborhood((0, 1), (1, 0))
    with pytest.raises(ValueError):
        Neighborhood((0,), (0, 1))


def test_minimal_sets_and_traces(alg):
    for name in ("SL2", "Z2"):
        A = alg(name)
        Us = minimal_sets(A, zero(2), one(2))
        assert carriers(Us) == {(0, 1)}
        assert traces(A, Us[0], zero(2), one(2)).traces == ((0, 1),)
    with pytest.raises(NotComparable):
        minimal_sets(alg("SL2"), one(2), zero(2))
    with pytest.raises(NotMinimalSet):
        traces(alg("SL2"), Neighborhood((0,), (0, 0)), zero(2), one(2))


def test_minimal_sets_brute_force(alg):
    A = alg("Z2xZ2")
    from supernil_lab.closure import unary_polynomials
    for delta, theta in all_congruences(A).cover_pairs():
        images = set()
        for f in unary_polynomials(A):
            if any(not delta.related(f[x], f[y]) for x in range(4) for y in range(4)
                   if theta.related(x, y)):
                images.add(frozenset(f))
        mins = {tuple(sorted(U)) for U in images if not any(V < U for V in images)}
        assert carriers(minimal_sets(A, delta, theta)) == mins


def test_twin_monoid_beta_zero(alg):
    for name in ("SL2", "S3", "Chain3"):
        A = alg(name)
        for U in neighborhoods(A):
            tw = twin_monoid(A, zero(A.size), U)
            assert tw.maps == frozenset([tuple(range(len(U)))])


def test_twin_monoid_groups(alg):
    S3 = alg("S3")
    U = Neighborhood(tuple(range(6)), tuple(range(6)))
    tw = twin_monoid(S3, one(6), U)
    G = CayleyGroup.of(S3)
    right = {tuple(G.mul(x, a) for x in range(6)) for a in range(6)}
    assert right <= set(tw.maps)
    perms = groups.generate_group(sorted(p for p in tw.maps if groups.is_bijection(p)))
    assert groups.nilpotency_class(perms) is None
    # U = A is not minimal: h(x, y) = x [x, y] is a twin of h(x, e) = x
    b = 1
    comm = [G.mul(G.mul(G.inv[x], G.inv[b]), G.mul(x, b)) for x in range(6)]
    squash = tuple(G.mul(x, comm[x]) for x in range(6))
    assert squash in tw.maps and not tw.is_group
    Z4 = alg("Z4")
    tw = twin_monoid(Z4, one(4), Neighborhood(tuple(range(4)), tuple(range(4))))
    assert tw.is_group and tw.nilpotency_class == 1 and len(tw.maps) == 4
    assert tw.as_group() == groups.regular_representation(
        [[(x + y) % 4 for y in range(4)] for x in range(4)])


@pytest.mark.parametrize("name", ["SL2", "Chain3", "Z4", "S3", "RPS", "Unary3", "D4"])
def test_twin_monoid_closed(name):
    A = corpus.load(name)
    for beta in all_congruences(A).elements:
        for U in neighborhoods(A):
            maps = twin_monoid(A, beta, U).maps
            assert tuple(range(len(U))) in maps
            assert all(groups.mul(p, q) in maps for p in maps for q in maps)


def test_centrality_on_trace(alg):
    assert centrality_on_trace(alg("SL2"), one(2), [1], zero(2))
    assert centrality_on_trace(alg("Z4"), one(4), [0, 2], zero(4))
    assert not centrality_on_trace(alg("SL2"), one(2), [0, 1], zero(2))
    with pytest.raises(ValueError):
        centrality_on_trace(alg("SL2"), one(2), [], zero(2))


def test_beta_regular(alg):
    Z4 = alg("Z4")
    for delta, theta in all_congruences(Z4).cover_pairs():
        assert beta_regular(Z4, zero(4), delta, theta).holds
    assert beta_regular(Z4, one(4), zero(4), con(0, 1, 0, 1)).holds
    rep = beta_regular(alg("SL2"), one(2), zero(2), one(2))
    assert rep.non_group and rep.warnings
