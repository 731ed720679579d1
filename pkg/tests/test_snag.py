import pytest

from conftest import meet_semilattice_with_absorbing, one, zero
from oracles import numpy_subpower
from supernil_lab import corpus
from supernil_lab.commutator import is_supernilpotent, matrix_set, violates
from supernil_lab.congruences import all_congruences
from supernil_lab.snag import (BETA_K_SNAG, TWO_SNAG, SnagReport, find_beta_snags,
                               find_two_snags, snag_cube,
                               two_snag_implies_k_snag_check)


def test_snag_cube():
    assert snag_cube(2, 0, 1) == (0, 0, 0, 1)
    assert snag_cube(3, 2, 0) == (2,) * 7 + (0,)


def test_sl2_beta_snags(alg):
    A = alg("SL2")
    for k in (2, 3):
        found = find_beta_snags(A, one(2), k)
        assert [s.pair for s in found] == [(0, 1)]
        assert found[0].witness == snag_cube(k, 0, 1)


def test_z4_has_no_two_dimensional_snags(alg):
    assert find_beta_snags(alg("Z4"), one(4), 2) == []


def test_first_only(alg):
    found = find_beta_snags(alg("Chain3"), one(3), 2, first=True)
    assert len(found) == 1
    full = find_beta_snags(alg("Chain3"), one(3), 2)
    assert found[0].pair in {s.pair for s in full}


def test_two_snags(alg):
    assert [s.pair for s in find_two_snags(alg("SL2"))] == [(0, 1)]
    assert find_two_snags(alg("Z2")) == []
    assert (0, 1) in {s.pair for s in find_two_snags(meet_semilattice_with_absorbing())}


def test_two_snags_against_binary_tables(alg):
    # oracle: all binary polynomial tables of A as a subpower of A^(n*n)
    for A in [alg(n) for n in ("SL2", "Z2", "Chain3", "Lat2", "Left-zero2")] + \
            [meet_semilattice_with_absorbing()]:
        n = A.size
        gens = [tuple(x for x in range(n) for _ in range(n)),
                tuple(y for _ in range(n) for y in range(n))]
        gens += [(c,) * (n * n) for c in range(n)]
        tables = numpy_subpower(A, gens)
        expected = {(a, b) for a in range(n) for b in range(n) if a != b
                    and any(p[a * n + a] == p[a * n + b] == p[b * n + a] == a
                            and p[b * n + b] == b for p in tables)}
        assert {s.pair for s in find_two_snags(A)} == expected


def test_two_snag_implies_k_snag(alg):
    assert two_snag_implies_k_snag_check(alg("SL2"), 3)
    assert two_snag_implies_k_snag_check(alg("SL2"), 2)
    assert two_snag_implies_k_snag_check(alg("Z2"), 2)
    assert two_snag_implies_k_snag_check(alg("Chain3"), 3)


def test_report_validation():
    with pytest.raises(ValueError):
        SnagReport(BETA_K_SNAG, (0, 1), 2, (0, 1, 0, 1))
    with pytest.raises(ValueError):
        SnagReport(TWO_SNAG, (1, 1), 2, (1, 1, 1, 1))
    s = SnagReport(BETA_K_SNAG, (1, 0), 2, (1, 1, 1, 0))
    assert s.to_json() == {"kind": BETA_K_SNAG, "pair": [1, 0], "k": 2,
                           "witness": [1, 1, 1, 0]}


@pytest.mark.parametrize("name", ["SL2", "Chain3", "Lat2", "RPS", "S3", "SL3-abs"])
def test_snags_revalidate_and_break_centrality(name):
    A = corpus.load(name)
    for beta in all_congruences(A).elements:
        for k in (2, 3):
            found = find_beta_snags(A, beta, k)
            M = matrix_set(A, (beta,) * k)
            for s in found:
                assert s.witness in M
                assert violates(s.witness, zero(A.size))
            if found:
                assert not is_supernilpotent(A, beta, k - 1).holds


@pytest.mark.parametrize("name", ["SL2", "Chain3", "Z4", "S3", "RPS"])
def test_deviant_position_is_irrelevant(name):
    A = corpus.load(name)
    beta = one(A.size)
    M = matrix_set(A, (beta,) * 2).as_set()
    for a in range(A.size):
        for b in range(A.size):
            if a == b:
                continue
            cubes = [tuple(b if v == pos else a for v in range(4)) for pos in range(4)]
            assert len({c in M for c in cubes}) == 1
