"""Instance checks of the chain

    (1) beta is k-supernilpotent
    (2) no (k+1)-dimensional beta-snags
    (3) twin monoids on minimal sets are nilpotent groups of class <= k
    (4) C(beta, theta; delta) and C(theta, beta; delta) at every cover
    (5) beta is left and right nilpotent

on single algebras, on corpora, and on seeded random algebras.  A computed
``true`` followed by a computed ``false`` later in the chain is a theorem
violation.
"""

from __future__ import annotations

import logging
import time
from collections import Counter
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from . import commutator, snag, tct
from .algebra import Congruence, FiniteAlgebra, Operation
from .closure import DEFAULT_BUDGET
from .commutator import DEFAULT_MAX_DIM
from .congruences import CongruenceLattice, all_congruences
from .errors import BudgetExceeded, DimensionTooLarge

log = logging.getLogger(__name__)

SCHEMA = "chain-report/1"
FUZZ_SCHEMA = "fuzz-summary/1"
PRNG_NAME = "PCG64"
PROPERTIES = ("p1", "p2", "p3", "p4", "p5")

TRUE, FALSE, SKIPPED = "true", "false", "skipped"


@dataclass(frozen=True)
class PropertyResult:
    status: str
    reason: str | None = None
    witness: object = None

    @property
    def computed(self) -> bool:
        return self.status != SKIPPED

    def to_json(self) -> dict:
        out = {"status": self.status}
        if self.reason is not None:
            out["reason"] = self.reason
        if self.witness is not None:
            out["witness"] = self.witness
        return out


def _result(ok: bool, witness=None) -> PropertyResult:
    return PropertyResult(TRUE if ok else FALSE, None, None if ok else witness)


@dataclass
class Context:
    """Shared inputs for the property evaluators of one report."""
    A: FiniteAlgebra
    beta: Congruence
    k: int
    lattice: CongruenceLattice
    budget: int
    max_dim: int


def eval_p1(ctx: Context) -> PropertyResult:
    q = commutator.is_supernilpotent(ctx.A, ctx.beta, ctx.k, ctx.budget,
                                     ctx.max_dim)
    return _result(q.holds, {"cube": list(q.witness)} if q.witness else None)


def eval_p2(ctx: Context) -> PropertyResult:
    found = snag.find_beta_snags(ctx.A, ctx.beta, ctx.k + 1, ctx.budget,
                                 ctx.max_dim, first=True)
    return _result(not found, {"snags": [list(s.pair) for s in found],
                               "cube": list(found[0].witness) if found else None})


def _minimal_sets_of_covers(ctx: Context):
    carriers = {}
    for delta, theta in ctx.lattice.cover_pairs():
        for U in tct.minimal_sets(ctx.A, delta, theta, ctx.budget):
            carriers.setdefault(U.carrier, U)
    return [carriers[c] for c in sorted(carriers, key=lambda c: (len(c), c))]


def eval_p3(ctx: Context) -> PropertyResult:
    for U in _minimal_sets_of_covers(ctx):
        tw = tct.twin_monoid(ctx.A, ctx.beta, U, ctx.budget)
        if not tw.is_group:
            return _result(False, {"U": list(U.carrier),
                                   "reason": "contains a non-permutation"})
        if tw.nilpotency_class is None:
            return _result(False, {"U": list(U.carrier),
                                   "reason": "group is not nilpotent"})
        if tw.nilpotency_class > ctx.k:
            return _result(False, {"U": list(U.carrier),
                                   "reason": f"nilpotency class {tw.nilpotency_class} > k"})
    return _result(True)


def eval_p4(ctx: Context) -> PropertyResult:
    for delta, theta in ctx.lattice.cover_pairs():
        for side, order in (("C(beta,theta;delta)", (ctx.beta, theta)),
                            ("C(theta,beta;delta)", (theta, ctx.beta))):
            q = commutator.centrality_holds(ctx.A, order, delta, ctx.budget,
                                            ctx.max_dim)
            if not q.holds:
                return _result(False, {"delta": list(delta.repr),
                                       "theta": list(theta.repr),
                                       "failed": side, "cube": list(q.witness)})
    return _result(True)


def eval_p5(ctx: Context) -> PropertyResult:
    left = commutator.left_series(ctx.A, ctx.beta, ctx.budget)
    right = commutator.right_series(ctx.A, ctx.beta, ctx.budget)
    ok = left[-1].is_zero() and right[-1].is_zero()
    return _result(ok, {"left": [list(t.repr) for t in left],
                        "right": [list(t.repr) for t in right]})


DEFAULT_EVALUATORS: dict[str, Callable[[Context], PropertyResult]] = {
    "p1": eval_p1, "p2": eval_p2, "p3": eval_p3, "p4": eval_p4, "p5": eval_p5,
}


@dataclass
class ChainReport:
    algebra: str
    beta: Congruence
    k: int
    properties: dict[str, PropertyResult]
    budget: int
    max_dim: int
    timings: dict[str, float] = field(default_factory=dict)
    notes: list[str] = field(default_factory=list)

    @property
    def violations(self) -> list[tuple[str, str]]:
        """Pairs (pi, pj), i < j, with pi computed true and pj computed false."""
        out = []
        for i, a in enumerate(PROPERTIES):
            for b in PROPERTIES[i + 1:]:
                if (self.properties[a].status == TRUE
                        and self.properties[b].status == FALSE):
                    out.append((a, b))
        return out

    @property
    def violation(self) -> bool:
        return bool(self.violations)

    def profile(self) -> str:
        code = {TRUE: "T", FALSE: "F", SKIPPED: "S"}
        return "".join(code[self.properties[p].status] for p in PROPERTIES)

    def to_json(self, timings: bool = False) -> dict:
        out = {
            "algebra": self.algebra,
            "beta": list(self.beta.repr),
            "k": self.k,
            "budget": self.budget,
            "max_dim": self.max_dim,
            "properties": {p: self.properties[p].to_json() for p in PROPERTIES},
            "status": "THEOREM_VIOLATION" if self.violation else "ok",
            "violations": [list(v) for v in self.violations],
        }
        if self.notes:
            out["notes"] = list(self.notes)
        if timings:
            out["timings"] = {p: round(t, 6) for p, t in self.timings.items()}
        return out


def theorem_chain_report(A: FiniteAlgebra, beta: Congruence, k: int,
                         budget: int = DEFAULT_BUDGET,
                         max_dim: int = DEFAULT_MAX_DIM,
                         lattice: CongruenceLattice | None = None,
                         evaluators: dict | None = None) -> ChainReport:
    """Evaluate properties (1)-(5) for ``(A, beta, k)``.

    Budget and dimension limits turn the affected property into ``skipped``;
    they are never reported as ``false``.
    """
    if lattice is None:
        lattice = all_congruences(A)
    ctx = Context(A, beta, k, lattice, budget, max_dim)
    evals = dict(DEFAULT_EVALUATORS)
    if evaluators:
        evals.update(evaluators)
    props, timings = {}, {}
    for name in PROPERTIES:
        t0 = time.perf_counter()
        try:
            props[name] = evals[name](ctx)
        except BudgetExceeded as exc:
            props[name] = PropertyResult(SKIPPED, f"budget: {exc}")
        except DimensionTooLarge as exc:
            props[name] = PropertyResult(SKIPPED, f"dimension: {exc}")
        timings[name] = time.perf_counter() - t0
    report = ChainReport(A.name, beta, k, props, budget, max_dim, timings)
    if props["p1"].status == SKIPPED and props["p3"].computed:
        report.notes.append("p1 skipped; p3 class bound checked against k anyway")
    if report.violation:
        log.error("THEOREM_VIOLATION on %s beta=%s k=%d: %s", A.name,
                  list(beta.repr), k, report.violations)
    return report


def check_document(A: FiniteAlgebra, reports: Sequence[ChainReport]) -> dict:
    """The JSON document emitted by ``supernil-lab check``."""
    return {
        "schema": SCHEMA,
        "algebra": A.name,
        "size": A.size,
        "reports": [r.to_json() for r in reports],
        "violations": sum(r.violation for r in reports),
    }


def _map(fn, items, workers: int):
    if workers <= 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items))


def check_algebra(A: FiniteAlgebra, betas: Sequence[Congruence] | None,
                  ks: Sequence[int], budget: int = DEFAULT_BUDGET,
                  max_dim: int = DEFAULT_MAX_DIM, workers: int = 1,
                  evaluators: dict | None = None) -> list[ChainReport]:
    """Reports for every (beta, k); ``betas=None`` means all of Con(A)."""
    lattice = all_congruences(A)
    if betas is None:
        betas = list(lattice.elements)
    jobs = [(b, k) for b in betas for k in ks]
    return _map(lambda job: theorem_chain_report(
        A, job[0], job[1], budget, max_dim, lattice, evaluators), jobs, workers)


# --------------------------------------------------------------------------
# Random algebras

@dataclass(frozen=True)
class RandomSpec:
    size: int
    signature: tuple[int, ...]
    seed: int


def random_algebra(spec: RandomSpec) -> FiniteAlgebra:
    """Operation tables filled from a PCG64 stream seeded with ``spec.seed``.

    Entry ``j`` of the ``i``-th table is ``raw % size`` for the next raw
    64-bit PCG64 output; tables are filled in signature order.
    """
    n = spec.size
    if n < 1:
        raise ValueError("size must be positive")
    bitgen = np.random.PCG64(spec.seed & (2 ** 64 - 1))
    ops = []
    for i, r in enumerate(spec.signature):
        raw = bitgen.random_raw(n ** r)
        table = tuple(int(v) for v in np.atleast_1d(raw) % np.uint64(n))
        ops.append(Operation(f"f{i}", r, table))
    sig = "".join(map(str, spec.signature))
    return FiniteAlgebra(f"rand-n{n}-s{sig}-{spec.seed}", n, tuple(ops))


def derive_seed(seed: int, index: int) -> int:
    """Seed of the ``index``-th fuzz algebra."""
    ss = np.random.SeedSequence([seed & (2 ** 64 - 1), index])
    return int(ss.generate_state(1, np.uint64)[0])


@dataclass
class FuzzSummary:
    seed: int
    count: int
    sizes: tuple[int, ...]
    signature: tuple[int, ...]
    kmax: int
    budget: int
    max_dim: int
    algebras: int = 0
    reports: int = 0
    evaluations: int = 0
    skipped: int = 0
    profiles: Counter = field(default_factory=Counter)
    skip_reasons: Counter = field(default_factory=Counter)
    violations: list = field(default_factory=list)

    @property
    def skip_fraction(self) -> float:
        return self.skipped / self.evaluations if self.evaluations else 0.0

    def add(self, report: ChainReport):
        self.reports += 1
        self.profiles[report.profile()] += 1
        for p in PROPERTIES:
            self.evaluations += 1
            res = report.properties[p]
            if not res.computed:
                self.skipped += 1
                self.skip_reasons[f"{p}: {res.reason.split(':')[0]}"] += 1

    def to_json(self) -> dict:
        return {
            "schema": FUZZ_SCHEMA,
            "report_schema": SCHEMA,
            "prng": PRNG_NAME,
            "seed": self.seed,
            "count": self.count,
            "sizes": list(self.sizes),
            "signature": list(self.signature),
            "kmax": self.kmax,
            "budget": self.budget,
            "max_dim": self.max_dim,
            "algebras": self.algebras,
            "reports": self.reports,
            "evaluations": self.evaluations,
            "skipped": self.skipped,
            "profiles": dict(sorted(self.profiles.items())),
            "skip_reasons": dict(sorted(self.skip_reasons.items())),
            "violations": self.violations,
        }


def fuzz_specs(count: int, sizes: Sequence[int], signature: Sequence[int],
               seed: int) -> list[RandomSpec]:
    sizes = tuple(sizes)
    return [RandomSpec(sizes[i % len(sizes)], tuple(signature),
                       derive_seed(seed, i)) for i in range(count)]


def fuzz_chain(count: int, sizes: Sequence[int], signature: Sequence[int],
               k_max: int, seed: int, budget: int = DEFAULT_BUDGET,
               max_dim: int = DEFAULT_MAX_DIM, workers: int = 1,
               evaluators: dict | None = None,
               extra: Sequence[FiniteAlgebra] = ()) -> FuzzSummary:
    """Run the chain on ``count`` random algebras (plus ``extra``), every
    beta in Con and every ``1 <= k <= k_max``.

    Stops at the first algebra (in index order) producing a violation; the
    summary then records its seed for reproduction.
    """
    summary = FuzzSummary(seed, count, tuple(sizes), tuple(signature), k_max,
                          budget, max_dim)
    specs = fuzz_specs(count, sizes, signature, seed)
    items = [(i, s, random_algebra(s)) for i, s in enumerate(specs)]
    items += [(count + j, None, A) for j, A in enumerate(extra)]
    ks = list(range(1, k_max + 1))

    def work(item):
        _, _, A = item
        return check_algebra(A, None, ks, budget, max_dim, 1, evaluators)

    results = _map(work, items, workers)
    for (i, spec, A), reports in zip(items, results):
        summary.algebras += 1
        for rep in reports:
            summary.add(rep)
        bad = [r for r in reports if r.violation]
        if bad:
            summary.violations.append({
                "index": i,
                "seed": spec.seed if spec else None,
                "size": A.size,
                "signature": list(A.signature),
                "algebra": A.name,
                "reports": [r.to_json() for r in bad],
            })
            break
    return summary
