import itertools

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from conftest import one, zero
from oracles import naive_subpower
from supernil_lab import closure, corpus
from supernil_lab.algebra import FiniteAlgebra, Operation
from supernil_lab.closure import compose, generate_subpower, twin_pairs, unary_polynomials
from supernil_lab.errors import BudgetExceeded
from supernil_lab.verifier import RandomSpec, random_algebra

BACKENDS = ["python"] + (["compiled"] if closure.BACKEND == "compiled" else [])


def as_set(sp):
    return set(sp)


def test_sl2_four_generators(alg):
    A = alg("SL2")
    gens = [(0, 0, 1, 1), (1, 1, 0, 0), (0, 1, 0, 1), (1, 0, 1, 0)]
    S = generate_subpower(A, 4, gens)
    assert as_set(S) == naive_subpower(A, gens)
    assert len(S) == 9          # the 4 generators and 5 proper meets
    assert len(generate_subpower(A, 4, gens + [(0,) * 4, (1,) * 4])) == 10


def test_projections_only(alg):
    A = alg("Set2")
    assert as_set(generate_subpower(A, 3, [(0, 1, 1)])) == {(0, 1, 1)}


def test_cyclic_generation(alg):
    assert as_set(generate_subpower(alg("Z4"), 1, [(1,)])) == {(0,), (1,), (2,), (3,)}


def test_budget(alg):
    with pytest.raises(BudgetExceeded) as info:
        generate_subpower(alg("Z4"), 1, [(1,)], budget=3)
    assert info.value.count > 3 and info.value.budget == 3


@pytest.mark.parametrize("backend", BACKENDS)
def test_nullary_constants_are_generators(backend, alg):
    A = alg("Z4-full")
    S = generate_subpower(A, 2, [(1, 2)], backend=backend)
    assert (0, 0) in S and as_set(S) == naive_subpower(A, [(1, 2)])


def test_unary_polynomials(alg):
    assert as_set(unary_polynomials(alg("SL2"))) == {(0, 1), (0, 0), (1, 1)}
    assert as_set(unary_polynomials(alg("Z2"))) == {(0, 1), (1, 0), (0, 0), (1, 1)}
    assert as_set(unary_polynomials(alg("Set2"))) == {(0, 1), (0, 0), (1, 1)}
    A = FiniteAlgebra("bare3", 3, ())
    assert as_set(unary_polynomials(A)) == {(0, 1, 2), (0, 0, 0), (1, 1, 1), (2, 2, 2)}


@pytest.mark.parametrize("name", ["SL2", "Z4", "S3", "Chain3", "RPS", "Unary3", "Affine-Z3"])
def test_unary_polynomials_closed_under_composition(name):
    A = corpus.load(name)
    P = as_set(unary_polynomials(A))
    assert all(compose(f, g) in P for f in P for g in P)
    assert tuple(range(A.size)) in P


def test_twin_pairs_zero_is_diagonal(alg):
    for name in ("SL2", "Z4", "S3", "RPS"):
        A = alg(name)
        n = A.size
        T = twin_pairs(A, zero(n))
        assert as_set(T) == {f + f for f in unary_polynomials(A)}


def test_twin_pairs_z2(alg):
    A = alg("Z2")
    trans = [(0, 1), (1, 0)]
    consts = [(0, 0), (1, 1)]
    expected = {f + g for f in trans for g in trans} | {f + g for f in consts for g in consts}
    assert as_set(twin_pairs(A, one(2))) == expected


def test_twin_pairs_sl2_contains_meet_twin(alg):
    # h(x, y) = x ^ y with parameters 0 and 1
    assert (0, 0, 0, 1) in twin_pairs(alg("SL2"), one(2))


def test_twin_pairs_identity_component(alg):
    for name in ("SL2", "Z4", "Chain3"):
        A = alg(name)
        n = A.size
        ident = tuple(range(n))
        for beta in (zero(n), one(n)):
            firsts = {row[:n] for row in twin_pairs(A, beta) if row[n:] == ident}
            assert ident in firsts


@pytest.mark.parametrize("name", ["SL2", "Z4", "S3", "Chain3", "RPS"])
def test_twin_pairs_on_points_is_projection(name):
    A = corpus.load(name)
    n = A.size
    beta = one(n)
    full = twin_pairs(A, beta)
    for pts in [(0,), (0, 1), tuple(range(n))[1:]]:
        proj = {tuple(row[p] for p in pts) + tuple(row[n + p] for p in pts)
                for row in full}
        assert as_set(twin_pairs(A, beta, points=pts)) == proj


def test_split_pair():
    assert closure.split_pair((0, 1, 1, 1), 2) == ((0, 1), (1, 1))


@st.composite
def small_instances(draw):
    n = draw(st.integers(1, 3))
    sig = tuple(draw(st.lists(st.integers(0, 3), min_size=1, max_size=2)))
    A = random_algebra(RandomSpec(n, sig, draw(st.integers(0, 2 ** 32))))
    width = draw(st.integers(1, 3))
    gens = draw(st.lists(st.tuples(*[st.integers(0, n - 1)] * width),
                         min_size=1, max_size=3))
    return A, width, gens


@settings(max_examples=60, deadline=None)
@given(small_instances())
def test_closure_matches_oracle(inst):
    A, width, gens = inst
    ref = naive_subpower(A, gens)
    for backend in BACKENDS:
        assert as_set(generate_subpower(A, width, gens, backend=backend)) == ref


@settings(max_examples=40, deadline=None)
@given(small_instances(), st.randoms(use_true_random=False))
def test_closure_fixed_point_and_order_free(inst, rnd):
    A, width, gens = inst
    S = generate_subpower(A, width, gens)
    shuffled = list(gens)
    rnd.shuffle(shuffled)
    assert generate_subpower(A, width, shuffled) == S
    rows = sorted(S)
    for op in A.operations:
        for args in itertools.product(rows, repeat=op.arity):
            out = tuple(op.table[sum(c * A.size ** (op.arity - 1 - j) for j, c in enumerate(col))]
                        for col in zip(*args)) if op.arity else (op.table[0],) * width
            assert out in S
    extra = rows[:1] + [tuple(0 for _ in range(width))]
    assert S.as_set() <= generate_subpower(A, width, gens + extra).as_set()


@pytest.mark.skipif(closure.BACKEND != "compiled", reason="extension not built")
@pytest.mark.parametrize("seed", range(25))
def test_backends_agree_with_stops(seed):
    rng = np.random.default_rng(seed)
    n = int(rng.integers(2, 4))
    A = random_algebra(RandomSpec(n, (2, 1), seed))
    width = 4
    gens = [tuple(int(v) for v in rng.integers(0, n, width)) for _ in range(3)]
    full = closure.run(A, width, gens, backend="python")
    for stop in [None, ("targets", [full.rows[-1].tolist()]),
                 ("any_target", [r.tolist() for r in full.rows[-3:]]),
                 ("centrality", 2, tuple(range(n)))]:
        a = closure.run(A, width, gens, stop=stop, backend="python")
        b = closure.run(A, width, gens, stop=stop, backend="compiled")
        assert a.rows.tolist() == b.rows.tolist()
        assert (a.stopped, a.stop_index) == (b.stopped, b.stop_index)


@pytest.mark.skipif(closure.BACKEND != "compiled", reason="extension not built")
def test_backends_agree_on_groups(alg):
    for name in ("S3", "Q8", "Z6"):
        A = alg(name)
        gens = [(0, 1, 2, 3), (1, 1, 0, 2)]
        a = closure.run(A, 4, gens, backend="python")
        b = closure.run(A, 4, gens, backend="compiled")
        assert a.rows.tolist() == b.rows.tolist()


def test_ceiling_halts(alg):
    A = alg("Z4")
    res = closure.run(A, 1, [(1,)], ceiling=2)
    assert len(res.rows) >= 2 and set(map(tuple, res.rows.tolist())) <= {(0,), (1,), (2,), (3,)}


def test_no_operations_unary():
    A = FiniteAlgebra("one-op", 2, (Operation("n", 1, (1, 0)),))
    assert as_set(generate_subpower(A, 2, [(0, 0)])) == {(0, 0), (1, 1)}


def test_backend_selected_at_import():
    import os
    import subprocess
    import sys
    code = "from supernil_lab import closure; print(closure.BACKEND)"
    env = dict(os.environ, SUPERNIL_PURE_PYTHON="1")
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True,
                         text=True, check=True).stdout.strip()
    assert out == "python"
    assert closure.BACKEND in ("compiled", "python")
