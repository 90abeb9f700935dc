"""Command-line front end: generators, bases, matrices, bench, verify.

Matrix files are JSON objects {"rows": [[...]]}; instance files follow the
interchange format in the instances module. Exit codes: 0 success,
1 verification mismatch, 2 bad input, 3 resource cap hit.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys
import time
from dataclasses import dataclass

from .augment import augment
from .graver import GraverResourceError, graver_basis
from .groebner import buchberger, test_set
from .instances import (HsConfig, SndConfig, gen_hs, gen_snd,
                        instance_from_json, instance_to_json)
from .lattice import CostOrder, IntMatrix, IntVector
from .opcost import (DecisionList, METHOD_GRAVER, METHOD_KERNEL,
                     METHOD_ORACLE, opcost_graver, opcost_kernel,
                     opcost_oracle, single_scenario_decisions)
from .oracle import OracleResourceError, enumerate_graver_in_box
from .toric import toric_generating_set


@dataclass(frozen=True)
class BenchRecord:
    """One benchmark row: a full matrix build pipeline at one size."""

    method: str
    scenario_count: int
    variable_count: int
    timings_us: dict
    basis_sizes: dict
    checksum: str

    def to_json_line(self) -> str:
        return json.dumps({
            "method": self.method,
            "scenario_count": self.scenario_count,
            "variable_count": self.variable_count,
            "timings_us": self.timings_us,
            "basis_sizes": self.basis_sizes,
            "checksum": self.checksum,
        }, sort_keys=True)


def matrix_checksum(matrix) -> str:
    """Order-independent digest of the (position, value) cell multiset."""
    cells = sorted(
        "%d:%d:%s" % (i, j, "x" if v is None else v)
        for i, row in enumerate(matrix.values)
        for j, v in enumerate(row))
    return hashlib.sha256(",".join(cells).encode()).hexdigest()[:16]


def bench_hs(n_list, seed, scaled, methods, threads=1, oracle_bound=None):
    """Time the decision + matrix pipeline per method and scenario count."""
    records = []
    for n in n_list:
        inst = gen_hs(HsConfig(scenario_count=n, seed=seed, scaled=scaled))
        W = inst.recourse
        for method in methods:
            t0 = time.perf_counter_ns()
            if method == METHOD_ORACLE:
                dec = single_scenario_decisions(inst)
            else:
                dec = single_scenario_decisions(inst, method=method)
            decisions_us = (time.perf_counter_ns() - t0) // 1000
            if method == METHOD_KERNEL:
                m = opcost_kernel(inst, dec, threads=threads)
            elif method == METHOD_GRAVER:
                m = opcost_graver(inst, dec, threads=threads)
            else:
                m = opcost_oracle(inst, dec, var_bound=oracle_bound)
            sizes = {}
            if method == METHOD_KERNEL:
                gens = toric_generating_set(W)
                sizes["toric"] = len(gens.generators)
                distinct = {s.cost.entries for s in inst.scenarios}
                sizes["groebner"] = sum(
                    len(buchberger(gens.generators, CostOrder(IntVector(c)),
                                   matrix=W))
                    for c in sorted(distinct))
            elif method == METHOD_GRAVER:
                sizes["graver"] = len(graver_basis(W))
            timings = {"decisions_us": decisions_us}
            timings.update(m.timings_us)
            records.append(BenchRecord(
                method=method,
                scenario_count=n,
                variable_count=W.ncols,
                timings_us=timings,
                basis_sizes=sizes,
                checksum=matrix_checksum(m),
            ))
    return records


def _read_matrix(path: str) -> IntMatrix:
    with open(path) as fh:
        doc = json.load(fh)
    return IntMatrix(tuple(tuple(int(e) for e in row) for row in doc["rows"]))


def _emit(text: str, path):
    if path in (None, "-"):
        sys.stdout.write(text)
        if not text.endswith("\n"):
            sys.stdout.write("\n")
    else:
        with open(path, "w") as fh:
            fh.write(text)


def _parse_int_list(text: str):
    return tuple(int(part) for part in text.split(",") if part.strip())


def _cmd_gen_hs(args) -> int:
    cfg = HsConfig(scenario_count=args.n, seed=args.seed, scaled=args.scaled)
    _emit(instance_to_json(gen_hs(cfg)), args.out)
    return 0


def _cmd_gen_snd(args) -> int:
    cfg = SndConfig(scenario_count=args.n, seed=args.seed,
                    max_demand=args.max_demand)
    _emit(instance_to_json(gen_snd(cfg)), args.out)
    return 0


def _cmd_toric(args) -> int:
    gens = toric_generating_set(_read_matrix(args.matrix))
    doc = {"generators": [list(g.entries) for g in gens.generators]}
    _emit(json.dumps(doc, indent=2), args.out)
    return 0


def _cmd_groebner(args) -> int:
    A = _read_matrix(args.matrix)
    cost = IntVector(_parse_int_list(args.cost))
    basis = test_set(A, cost)
    doc = {"cost": list(cost.entries),
           "elements": [list(g.entries) for g in basis]}
    _emit(json.dumps(doc, indent=2), args.out)
    return 0


def _cmd_graver(args) -> int:
    basis = graver_basis(_read_matrix(args.matrix),
                         element_cap=args.max_elements)
    doc = {"elements": [list(g.entries) for g in basis]}
    _emit(json.dumps(doc, indent=2), args.out)
    return 0


def _cmd_opcost(args) -> int:
    with open(args.instance) as fh:
        inst = instance_from_json(fh.read())
    if args.decisions == "single-scenario":
        dec = single_scenario_decisions(inst)
    else:
        with open(args.decisions) as fh:
            raw = json.load(fh)
        dec = DecisionList(tuple(IntVector(tuple(int(e) for e in x))
                                 for x in raw))
    if args.method == METHOD_KERNEL:
        m = opcost_kernel(inst, dec, q_only=args.q_only, threads=args.threads)
    elif args.method == METHOD_GRAVER:
        m = opcost_graver(inst, dec, q_only=args.q_only, threads=args.threads)
    else:
        m = opcost_oracle(inst, dec, q_only=args.q_only,
                          var_bound=args.var_bound)
    _emit(m.to_csv(), args.out)
    if args.meta is not None:
        _emit(m.to_json(), args.meta)
    return 0


def _cmd_bench(args) -> int:
    records = bench_hs(_parse_int_list(args.n_list), args.seed, args.scaled,
                       tuple(args.methods.split(",")), threads=args.threads,
                       oracle_bound=args.var_bound)
    _emit("\n".join(r.to_json_line() for r in records), args.out)
    return 0


def _verify_checks():
    from .graver import SipBlockStructure, contains_groebner, lift_sip_graver

    def hs_cross_method():
        inst = gen_hs(HsConfig(scenario_count=2, seed=7, scaled=True))
        dec = single_scenario_decisions(inst)
        mk = opcost_kernel(inst, dec)
        mg = opcost_graver(inst, dec)
        mo = opcost_oracle(inst, dec, var_bound=24)
        return mk == mg == mo

    def snd_cross_method():
        inst = gen_snd(SndConfig(scenario_count=2, seed=3))
        dec = DecisionList((IntVector((1, 1, 1, 0, 0, 0)),
                            IntVector((0, 0, 0, 1, 1, 1))))
        mk = opcost_kernel(inst, dec)
        mg = opcost_graver(inst, dec)
        mo = opcost_oracle(inst, dec)
        return mk == mg == mo

    def hs_diagonal_minimum():
        inst = gen_hs(HsConfig(scenario_count=3, seed=19, scaled=True))
        m = opcost_kernel(inst, single_scenario_decisions(inst))
        return all(
            m.values[j][j] == min(m.values[i][j] for i in range(m.size))
            for j in range(m.size))

    def toric_trivial_kernel():
        gens = toric_generating_set(IntMatrix.identity(2))
        return len(gens.generators) == 0

    def toric_sum_matrix():
        gens = toric_generating_set(IntMatrix(((1, 1, 1),)))
        return {g.entries for g in gens.generators} == {
            (1, 0, -1), (0, 1, -1)}

    def groebner_reduced_example():
        basis = buchberger([IntVector((-1, 1, 0)), IntVector((0, -1, 1))],
                           CostOrder((1, 2, 3)))
        return {g.entries for g in basis} == {(-1, 1, 0), (-1, 0, 1)}

    def groebner_inside_graver():
        W = gen_hs(HsConfig(scenario_count=1, seed=0)).recourse
        gamma = graver_basis(W)
        basis = test_set(W, IntVector((16, 19, 47, 54, 0, 0, 0, 0)))
        return contains_groebner(basis, gamma)

    def graver_box_equality():
        A = IntMatrix(((1, 2),))
        basis = graver_basis(A)
        box = enumerate_graver_in_box(A, 4)
        inside = {g.entries for g in basis
                  if max(abs(e) for e in g.entries) <= 4}
        return inside == {v.entries for v in box}

    def sip_lift():
        first = IntMatrix.identity(2)
        T = IntMatrix(((1, 0),))
        W = IntMatrix(((1, 1),))
        s1 = SipBlockStructure(first, T, W, 1)
        gamma1 = graver_basis(s1.stacked())
        s2 = SipBlockStructure(first, T, W, 2)
        lifted = lift_sip_graver(gamma1, s2)
        direct = graver_basis(s2.stacked())
        return {g.entries for g in lifted} == {g.entries for g in direct}

    def reuse_counters():
        inst = gen_hs(HsConfig(scenario_count=2, seed=7, scaled=True))
        dec = single_scenario_decisions(inst)
        c = opcost_kernel(inst, dec).counters
        g = opcost_graver(inst, dec).counters
        return (c.toric_runs, c.buchberger_runs, g.graver_runs) == (1, 1, 1)

    def json_round_trip():
        inst = gen_hs(HsConfig(scenario_count=3, seed=11, scaled=True))
        text = instance_to_json(inst)
        return instance_to_json(instance_from_json(text)) == text

    def repeat_determinism():
        inst = gen_snd(SndConfig(scenario_count=2, seed=3))
        dec = DecisionList((IntVector((1, 1, 1, 0, 0, 0)),
                            IntVector((0, 0, 0, 1, 1, 1))))
        return opcost_kernel(inst, dec) == opcost_kernel(inst, dec)

    return [
        ("hs-cross-method", hs_cross_method),
        ("snd-cross-method", snd_cross_method),
        ("hs-diagonal-minimum", hs_diagonal_minimum),
        ("toric-trivial-kernel", toric_trivial_kernel),
        ("toric-sum-matrix", toric_sum_matrix),
        ("groebner-reduced-example", groebner_reduced_example),
        ("groebner-inside-graver", groebner_inside_graver),
        ("graver-box-equality", graver_box_equality),
        ("sip-lift", sip_lift),
        ("reuse-counters", reuse_counters),
        ("json-round-trip", json_round_trip),
        ("repeat-determinism", repeat_determinism),
    ]


def _cmd_verify(args) -> int:
    checks = _verify_checks()
    failures = 0
    for name, check in checks:
        ok = check()
        print(("ok %s" if ok else "FAIL %s") % name)
        if not ok:
            failures += 1
    print("%d checks, %d failures" % (len(checks), failures))
    return 1 if failures else 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="latticeopt",
        description="Lattice test sets and opportunity cost matrices.")
    parser.add_argument("--threads", type=int, default=os.cpu_count() or 1,
                        help="cell-level parallelism for opcost builds")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen-hs", help="write a sampled instance as JSON")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--scaled", action="store_true")
    p.add_argument("--out", default="-")
    p.set_defaults(func=_cmd_gen_hs)

    p = sub.add_parser("gen-snd", help="write a network design instance")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--max-demand", type=int, default=1)
    p.add_argument("--out", default="-")
    p.set_defaults(func=_cmd_gen_snd)

    p = sub.add_parser("toric", help="kernel generating set of a matrix")
    p.add_argument("--matrix", required=True)
    p.add_argument("--out", default="-")
    p.set_defaults(func=_cmd_toric)

    p = sub.add_parser("groebner", help="reduced basis for a cost vector")
    p.add_argument("--matrix", required=True)
    p.add_argument("--cost", required=True,
                   help="comma-separated non-negative integers")
    p.add_argument("--out", default="-")
    p.set_defaults(func=_cmd_groebner)

    p = sub.add_parser("graver", help="Graver basis of a matrix")
    p.add_argument("--matrix", required=True)
    p.add_argument("--max-elements", type=int, default=None)
    p.add_argument("--out", default="-")
    p.set_defaults(func=_cmd_graver)

    p = sub.add_parser("opcost", help="opportunity cost matrix from instance")
    p.add_argument("--instance", required=True)
    p.add_argument("--method", choices=(METHOD_KERNEL, METHOD_GRAVER,
                                        METHOD_ORACLE), default=METHOD_KERNEL)
    p.add_argument("--decisions", default="single-scenario",
                   help="'single-scenario' or a JSON file of vectors")
    p.add_argument("--q-only", action="store_true")
    p.add_argument("--var-bound", type=int, default=None,
                   help="oracle box bound override")
    p.add_argument("--out", default="-", help="CSV destination")
    p.add_argument("--meta", default=None, help="metadata JSON destination")
    p.set_defaults(func=_cmd_opcost)

    p = sub.add_parser("bench", help="pipeline timings as JSON lines")
    p.add_argument("--n-list", default="10,50,100")
    p.add_argument("--seed", type=int, default=1)
    p.add_argument("--scaled", action="store_true")
    p.add_argument("--methods", default="kernel,graver")
    p.add_argument("--var-bound", type=int, default=None)
    p.add_argument("--out", default="-")
    p.set_defaults(func=_cmd_bench)

    p = sub.add_parser("verify", help="cross-method and invariant checks")
    p.set_defaults(func=_cmd_verify)

    return parser


def run(argv) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    try:
        return args.func(args)
    except (OracleResourceError, GraverResourceError) as exc:
        print("resource cap: %s" % exc, file=sys.stderr)
        return 3
    except (ValueError, KeyError, OSError, json.JSONDecodeError) as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 2


def main(argv=None) -> int:
    return run(sys.argv[1:] if argv is None else argv)


if __name__ == "__main__":
    sys.exit(main())
