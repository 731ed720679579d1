"""Command line interface: ``supernil-lab <command> ...``.

Exit status is 0 when nothing is wrong, 2 when a theorem violation was
found, and 1 on usage, input or resource errors.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from . import commutator, corpus, snag, tct, verifier
from .algebra import Congruence, FiniteAlgebra, canonicalize_partition, load_algebra
from .closure import DEFAULT_BUDGET
from .commutator import DEFAULT_MAX_DIM
from .congruences import all_congruences, is_congruence
from .errors import SupernilError

EXIT_OK, EXIT_ERROR, EXIT_VIOLATION = 0, 1, 2


class UsageError(Exception):
    pass


def dump(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2)


def read_algebra(spec: str) -> FiniteAlgebra:
    """A path to an algebra file, or ``corpus:NAME`` for a bundled one."""
    if spec.startswith("corpus:"):
        name = spec[len("corpus:"):]
        if name not in corpus.names():
            raise UsageError(f"no corpus algebra named {name!r}")
        return corpus.load(name)
    path = Path(spec)
    if not path.is_file():
        raise UsageError(f"cannot read algebra file {spec!r}")
    return load_algebra(path)


def parse_congruence_token(token: str, A: FiniteAlgebra) -> Congruence:
    """Congruence notations accepted on the command line.

    ``0`` and ``1``; ``c<i>`` for the i-th element of Con(A) as listed by
    ``con``; a repr array written ``0-0-2``, ``0,0,2`` or ``[0,0,2]``; a
    wire object ``{"repr": [...]}``; or blocks ``0.1|2``.
    """
    n = A.size
    t = token.strip()
    if t == "0":
        return Congruence.zero(n)
    if t == "1":
        return Congruence.one(n)
    try:
        if t.startswith("c") and t[1:].isdigit():
            elems = all_congruences(A).elements
            i = int(t[1:])
            if i >= len(elems):
                raise UsageError(f"Con(A) has only {len(elems)} elements")
            return elems[i]
        if t.startswith("[") or t.startswith("{"):
            obj = json.loads(t)
            r = obj["repr"] if isinstance(obj, dict) else obj
            theta = _from_repr(r, n)
        elif "|" in t or "." in t:
            blocks = [[int(x) for x in b.split(".")] for b in t.split("|")]
            theta = canonicalize_partition(n, blocks=blocks)
        else:
            sep = "-" if "-" in t else ","
            theta = _from_repr([int(x) for x in t.split(sep)], n)
    except UsageError:
        raise
    except (ValueError, KeyError, TypeError, SupernilError) as exc:
        raise UsageError(f"bad congruence {token!r}: {exc}") from exc
    if not is_congruence(A, theta):
        raise UsageError(f"{token!r} is an equivalence but not a congruence")
    return theta


def _from_repr(r, n) -> Congruence:
    r = [int(x) for x in r]
    if len(r) != n:
        raise ValueError(f"expected {n} entries, got {len(r)}")
    return Congruence(tuple(r))


def _int_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError as exc:
        raise UsageError(f"bad integer list {text!r}") from exc


# --------------------------------------------------------------------------
# Commands

def cmd_check(args) -> int:
    A = read_algebra(args.algebra)
    betas = None if args.beta == "all" else [parse_congruence_token(args.beta, A)]
    ks = _int_list(args.k)
    if not ks or min(ks) < 1:
        raise UsageError("--k needs positive integers")
    reports = verifier.check_algebra(A, betas, ks, args.budget, args.max_dim,
                                     args.workers)
    doc = verifier.check_document(A, reports)
    if args.json:
        print(dump(doc))
    else:
        for r in reports:
            print(f"beta={r.beta} k={r.k} {r.profile()} "
                  f"{'THEOREM_VIOLATION' if r.violation else 'ok'}")
    return EXIT_VIOLATION if doc["violations"] else EXIT_OK


def cmd_fuzz(args) -> int:
    sizes = _int_list(args.size)
    if len(sizes) == 1:
        sizes = list(range(1, sizes[0] + 1))
    sig = _int_list(args.sig)
    if not sizes or min(sizes) < 1 or not sig or min(sig) < 0:
        raise UsageError("--size and --sig need nonnegative integers")
    if args.count < 0 or args.kmax < 1:
        raise UsageError("--count must be >= 0 and --kmax >= 1")
    extra = corpus.load_all() if args.with_corpus else ()
    summary = verifier.fuzz_chain(args.count, sizes, sig, args.kmax, args.seed,
                                  args.budget, args.max_dim, args.workers,
                                  extra=extra)
    doc = summary.to_json()
    if args.json:
        print(dump(doc))
    else:
        print(f"algebras={doc['algebras']} reports={doc['reports']} "
              f"skipped={doc['skipped']}/{doc['evaluations']} "
              f"violations={len(doc['violations'])}")
        for prof, c in doc["profiles"].items():
            print(f"  {prof} {c}")
        for v in doc["violations"]:
            print(f"THEOREM_VIOLATION index={v['index']} seed={v['seed']}")
    return EXIT_VIOLATION if doc["violations"] else EXIT_OK


def cmd_con(args) -> int:
    A = read_algebra(args.algebra)
    print(dump(all_congruences(A).to_json()))
    return EXIT_OK


def cmd_commutator(args) -> int:
    A = read_algebra(args.algebra)
    rels = [parse_congruence_token(t, A) for t in args.args.split(",")]
    res = commutator.commutator_fixpoint(A, rels, args.budget, args.max_dim)
    print(dump({"args": [list(r.repr) for r in rels],
                "value": list(res.value.repr),
                "cube_count": res.cube_count, "rounds": res.rounds}))
    return EXIT_OK


def cmd_supernil(args) -> int:
    A = read_algebra(args.algebra)
    beta = parse_congruence_token(args.beta, A)
    q = commutator.is_supernilpotent(A, beta, args.k, args.budget, args.max_dim)
    print(dump({"beta": list(beta.repr), "k": args.k, "holds": q.holds,
                "witness": list(q.witness) if q.witness else None}))
    return EXIT_OK


def cmd_snags(args) -> int:
    A = read_algebra(args.algebra)
    if args.two:
        found = snag.find_two_snags(A, args.budget)
        doc = {"kind": snag.TWO_SNAG}
    else:
        if args.beta is None or args.k is None:
            raise UsageError("snags needs --two, or --beta and --k")
        beta = parse_congruence_token(args.beta, A)
        found = snag.find_beta_snags(A, beta, args.k, args.budget, args.max_dim)
        doc = {"kind": snag.BETA_K_SNAG, "beta": list(beta.repr), "k": args.k}
    doc["snags"] = [s.to_json() for s in found]
    doc["pairs"] = [list(s.pair) for s in found]
    print(dump(doc))
    return EXIT_OK


def cmd_tct(args) -> int:
    A = read_algebra(args.algebra)
    delta = parse_congruence_token(args.delta, A)
    theta = parse_congruence_token(args.theta, A)
    beta = parse_congruence_token(args.beta, A) if args.beta else None
    out = []
    for U in tct.minimal_sets(A, delta, theta, args.budget):
        item = {"carrier": list(U.carrier),
                "witness": list(U.witness) if U.witness else None,
                "traces": [list(N) for N in
                           tct.traces(A, U, delta, theta, args.budget).traces]}
        if beta is not None:
            tw = tct.twin_monoid(A, beta, U, args.budget)
            item["twin_monoid"] = {"size": len(tw.maps), "is_group": tw.is_group,
                                   "nilpotency_class": tw.nilpotency_class}
            item["centrality_on_trace"] = [
                tct.centrality_on_trace(A, beta, N, delta, args.budget)
                for N in item["traces"]]
        out.append(item)
    doc = {"delta": list(delta.repr), "theta": list(theta.repr),
           "minimal_sets": out}
    if beta is not None:
        reg = tct.beta_regular(A, beta, delta, theta, args.budget)
        doc["beta"] = list(beta.repr)
        doc["beta_regular"] = {"holds": reg.holds,
                               "counterexample": reg.counterexample,
                               "non_group": reg.non_group,
                               "warnings": list(reg.warnings)}
    print(dump(doc))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="supernil-lab",
        description="Commutators, snags and twin groups of finite algebras.")
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, algebra=True):
        if algebra:
            sp.add_argument("--algebra", required=True,
                            help="algebra JSON file, or corpus:NAME")
        sp.add_argument("--budget", type=int, default=DEFAULT_BUDGET,
                        help="maximum tuples per closure")
        sp.add_argument("--max-dim", type=int, default=DEFAULT_MAX_DIM)

    sp = sub.add_parser("check", help="theorem chain report for one algebra")
    common(sp)
    sp.add_argument("--beta", default="all", help="congruence, or 'all'")
    sp.add_argument("--k", default="1", help="K or K1,K2,...")
    sp.add_argument("--workers", type=int, default=1)
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(func=cmd_check)

    sp = sub.add_parser("fuzz", help="theorem chain on seeded random algebras")
    common(sp, algebra=False)
    sp.add_argument("--count", type=int, required=True)
    sp.add_argument("--size", default="4",
                    help="S for sizes 1..S, or an explicit list S1,S2,...")
    sp.add_argument("--sig", default="2", help="arities, e.g. 2 or 2,1")
    sp.add_argument("--kmax", type=int, default=2)
    sp.add_argument("--seed", type=int, required=True)
    sp.add_argument("--with-corpus", action="store_true",
                    help="also check every bundled corpus algebra")
    sp.add_argument("--workers", type=int, default=1)
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(func=cmd_fuzz)

    sp = sub.add_parser("con", help="congruence lattice as JSON")
    sp.add_argument("--algebra", required=True)
    sp.set_defaults(func=cmd_con)

    sp = sub.add_parser("commutator", help="(higher) commutator")
    common(sp)
    sp.add_argument("--args", required=True, help="a1,a2[,...]")
    sp.set_defaults(func=cmd_commutator)

    sp = sub.add_parser("supernil", help="k-supernilpotence of beta")
    common(sp)
    sp.add_argument("--beta", required=True)
    sp.add_argument("--k", type=int, required=True)
    sp.set_defaults(func=cmd_supernil)

    sp = sub.add_parser("snags", help="beta,k-snags or 2-snags")
    common(sp)
    sp.add_argument("--beta")
    sp.add_argument("--k", type=int)
    sp.add_argument("--two", action="store_true")
    sp.set_defaults(func=cmd_snags)

    sp = sub.add_parser("tct", help="minimal sets, traces and twin monoids")
    common(sp)
    sp.add_argument("--delta", required=True)
    sp.add_argument("--theta", required=True)
    sp.add_argument("--beta")
    sp.set_defaults(func=cmd_tct)

    sub.add_parser("corpus", help="list bundled algebras").set_defaults(
        func=lambda args: print("\n".join(corpus.names())) or EXIT_OK)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_ERROR
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except (UsageError, SupernilError, OSError) as exc:
        print(f"supernil-lab: error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
