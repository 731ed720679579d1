"""Independent reference computations used by the tests.

Nothing here imports the closure kernels or the congruence machinery of the
package; every answer is obtained by plain brute force.
"""

import itertools

import numpy as np


def evaluate(A, op, args):
    """Nested-loop evaluation of a row-major table."""
    idx = 0
    for a in args:
        idx = idx * A.size + a
    return op.table[idx]


def naive_subpower(A, gens):
    """Least subset of A^width containing ``gens`` closed under every op."""
    S = {tuple(g) for g in gens}
    for op in A.operations:
        if op.arity == 0:
            S.add((op.table[0],) * len(next(iter(S))))
    changed = True
    while changed:
        changed = False
        cur = sorted(S)
        for op in A.operations:
            if op.arity == 0:
                continue
            for args in itertools.product(cur, repeat=op.arity):
                t = tuple(evaluate(A, op, col) for col in zip(*args))
                if t not in S:
                    S.add(t)
                    changed = True
    return S


def numpy_subpower(A, gens):
    """Vectorized version of :func:`naive_subpower` for bigger sets (arity <= 3)."""
    n = A.size
    arr = np.unique(np.array(sorted({tuple(g) for g in gens}), dtype=np.int64), axis=0)
    for op in A.operations:
        if op.arity == 0:
            row = np.full((1, arr.shape[1]), op.table[0])
            arr = np.unique(np.concatenate([arr, row]), axis=0)
    while True:
        new = [arr]
        for op in A.operations:
            t = np.array(op.table)
            if op.arity == 1:
                new.append(t[arr])
            elif op.arity == 2:
                T = t.reshape(n, n)
                new.append(T[arr[:, None, :], arr[None, :, :]].reshape(-1, arr.shape[1]))
            elif op.arity == 3:
                T = t.reshape(n, n, n)
                new.append(T[arr[:, None, None, :], arr[None, :, None, :],
                             arr[None, None, :, :]].reshape(-1, arr.shape[1]))
            elif op.arity > 3:
                raise NotImplementedError
        nxt = np.unique(np.concatenate(new), axis=0)
        if len(nxt) == len(arr):
            return {tuple(int(v) for v in r) for r in nxt}
        arr = nxt


def set_partitions(n):
    """Every partition of range(n) as a canonical repr tuple."""
    def rec(i, r):
        if i == n:
            yield tuple(r)
            return
        for b in sorted(set(r)):
            yield from rec(i + 1, r + [b])
        yield from rec(i + 1, r + [i])
    yield from rec(0, [])


def is_compatible(A, r):
    """Brute-force congruence test for a repr tuple."""
    n = A.size
    for op in A.operations:
        if op.arity == 0:
            continue
        for xs in itertools.product(range(n), repeat=op.arity):
            for ys in itertools.product(range(n), repeat=op.arity):
                if all(r[x] == r[y] for x, y in zip(xs, ys)):
                    if r[evaluate(A, op, xs)] != r[evaluate(A, op, ys)]:
                        return False
    return True


def brute_congruences(A):
    return {r for r in set_partitions(A.size) if is_compatible(A, r)}


def repr_of_blocks(n, blocks):
    r = list(range(n))
    for b in blocks:
        m = min(b)
        for x in b:
            r[x] = m
    return tuple(r)


# --------------------------------------------------------------------------
# Groups given by a Cayley table

class CayleyGroup:
    def __init__(self, table):
        self.t = [list(row) for row in table]
        self.n = len(table)
        self.e = next(e for e in range(self.n)
                      if all(self.t[e][x] == x for x in range(self.n)))
        self.inv = [next(y for y in range(self.n) if self.t[x][y] == self.e)
                    for x in range(self.n)]

    @classmethod
    def of(cls, A):
        op = next(o for o in A.operations if o.arity == 2)
        n = A.size
        return cls([[op.table[x * n + y] for y in range(n)] for x in range(n)])

    def mul(self, a, b):
        return self.t[a][b]

    def generated(self, gens):
        S = {self.e} | set(gens)
        while True:
            nxt = S | {self.mul(a, b) for a in S for b in S}
            if nxt == S:
                return frozenset(S)
            S = nxt

    def subgroups(self):
        found = {frozenset([self.e])}
        frontier = list(found)
        while frontier:
            new = []
            for H in frontier:
                for g in range(self.n):
                    if g not in H:
                        K = self.generated(H | {g})
                        if K not in found:
                            found.add(K)
                            new.append(K)
            frontier = new
        return found

    def is_normal(self, H):
        return all(self.mul(self.mul(g, h), self.inv[g]) in H
                   for g in range(self.n) for h in H)

    def normal_subgroups(self):
        return {H for H in self.subgroups() if self.is_normal(H)}

    def commutator(self, M, N):
        cs = {self.mul(self.mul(self.inv[m], self.inv[k]), self.mul(m, k))
              for m in M for k in N}
        return self.generated(cs)

    def coset_repr(self, H):
        """Partition into cosets xH, as a repr tuple."""
        blocks = {frozenset(self.mul(x, h) for h in H) for x in range(self.n)}
        return repr_of_blocks(self.n, blocks)

    def class_of_identity(self, r):
        return frozenset(x for x in range(self.n) if r[x] == r[self.e])


# --------------------------------------------------------------------------
# Polynomial-induced matrices

def polynomial_matrices(A, alpha_pairs, beta_pairs, slots=4, target=None):
    """Matrices (f(a,b), f(a',b), f(a,b'), f(a',b')) of polynomials f(x, y)
    with |x| + |y| <= ``slots``, stored in the package's cube layout.

    For every choice of the argument tuples the values of all polynomials at
    the four argument combinations are the closure of the variable columns
    and the constants; the union over all choices is returned.  With
    ``target`` the loop ends as soon as the union equals it.
    """
    VA = [(a, b, a, b) for a, b in alpha_pairs]
    VB = [(a, a, b, b) for a, b in beta_pairs]
    consts = [(c,) * 4 for c in range(A.size)]
    out, seen = set(), set()
    for p in range(1, slots):
        q = slots - p
        for xs in itertools.combinations(VA, min(p, len(VA))):
            for ys in itertools.combinations(VB, min(q, len(VB))):
                key = frozenset(xs + ys)
                if key in seen:
                    continue
                seen.add(key)
                out |= numpy_subpower(A, list(xs + ys) + consts)
                if target is not None and out == target:
                    return out
    return out
