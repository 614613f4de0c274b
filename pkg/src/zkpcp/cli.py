"""Command-line front end: prove/verify/simulate plus locator and audit tools.

Every command is deterministic given --seed; Monte Carlo commands derive one
independent stream per trial from (seed, trial index). Output is one
self-describing JSON record per line so runs can be diffed mechanically.
Exit status 0 means every check in the invocation passed.
"""
from __future__ import annotations

import argparse
import json
import random
import sys
from pathlib import Path

from .audit import audit_script, parse_script, script_battery
from .domains import hypercube
from .field import Field
from .pcp import (
    SimulatorSession,
    SumcheckParams,
    deserialize_proof,
    parse_dimacs,
    pcp_for_sharp_sat,
    serialize_proof,
    prove_shifted,
)
from .poly import MultiPoly
from .rm import CodeView, cd_rm
from .rm_locator import rm_locate
from .sigma_rm import sigma_rm_locate
from .antisym import antisym_locate


def emit(record: dict):
    print(json.dumps(record, sort_keys=True, default=str))


def trial_rng(seed: int, index: int) -> random.Random:
    return random.Random(f"{seed}:{index}")


def parse_points(text: str) -> list[tuple[int, ...]]:
    data = json.loads(text)
    if not isinstance(data, list):
        raise ValueError("points must be a JSON list of coordinate lists")
    return [tuple(int(c) for c in pt) for pt in data]


def parse_degrees(text: str, m: int) -> tuple[int, ...]:
    parts = [int(x) for x in text.split(",")]
    if len(parts) == 1:
        return tuple(parts * m)
    if len(parts) != m:
        raise ValueError("degree vector length must match --m")
    return tuple(parts)


def parse_h(text: str) -> tuple[int, ...]:
    return tuple(int(x) for x in text.split(","))


def load_bundle(args):
    text = Path(args.cnf).read_text()
    cnf = parse_dimacs(text)
    return pcp_for_sharp_sat(cnf, args.count, p=args.field)


def random_instance(params: SumcheckParams, seed: int) -> tuple[MultiPoly, int]:
    """Seeded random degree-d polynomial plus its true cube total."""
    fld = params.fld
    rng = random.Random(f"instance:{seed}")
    coeffs = fld.sample_array(rng, (params.d + 1,) * params.m)
    poly = MultiPoly(params.p, coeffs)
    gamma = 0
    for pt in params.cube.points():
        gamma = (gamma + poly.eval(pt)) % params.p
    return poly, gamma


def cmd_prove(args) -> int:
    bundle = load_bundle(args)
    rng = trial_rng(args.seed, 0)
    proof = (
        prove_shifted(bundle, rng, table_cap=args.cap)
        if args.dishonest_shift
        else bundle.prove(rng, table_cap=args.cap)
    )
    blob = serialize_proof(proof)
    Path(args.out).write_bytes(blob)
    emit(
        {
            "record": "prove",
            "p": bundle.params.p,
            "m": bundle.params.m,
            "d": bundle.params.d,
            "claimed_count": args.count,
            "bytes": len(blob),
            "out": args.out,
            "seed": args.seed,
        }
    )
    return 0


def cmd_verify(args) -> int:
    bundle = load_bundle(args)
    proof = deserialize_proof(Path(args.proof).read_bytes())
    if proof.params != bundle.params:
        emit({"record": "verify", "error": "proof parameters do not match instance"})
        return 2
    accepts = 0
    for i in range(args.trials):
        res = bundle.verify(proof, trial_rng(args.seed, i))
        accepts += res.accepted
        emit(
            {
                "record": "verify-trial",
                "trial": i,
                "accepted": res.accepted,
                "reason": res.reason,
                "queries": len(res.queries),
            }
        )
    emit(
        {
            "record": "verify",
            "trials": args.trials,
            "accepts": accepts,
            "seed": args.seed,
        }
    )
    return 0 if accepts == args.trials else 1


def cmd_simulate(args) -> int:
    script = parse_script(json.loads(Path(args.script).read_text()))
    if args.cnf:
        bundle = load_bundle(args)
        params: SumcheckParams = bundle.params
        f_eval, gamma = bundle.f_eval, bundle.gamma
    else:
        params = SumcheckParams(
            args.field, args.m, parse_degrees(args.degree, args.m)[0], parse_h(args.h_set)
        )
        poly, gamma = random_instance(params, args.seed)
        f_eval = poly.eval
    from .audit import ScriptStep

    sim = SimulatorSession(params, f_eval, gamma, trial_rng(args.seed, 0))
    answers: list[int] = []
    records = []
    for step in script:
        if not isinstance(step, ScriptStep):
            taken = step.then if answers[step.step] == step.equals else step.else_
            step = taken
        val = sim.query(step.oracle, step.point)
        answers.append(val)
        records.append(
            {"record": "view", "oracle": step.oracle, "point": list(step.point), "answer": val}
        )
    header = {
        "record": "simulate",
        "p": params.p,
        "m": params.m,
        "d": params.d,
        "seed": args.seed,
        "queries": len(records),
    }
    emit(header)
    for rec in records:
        emit(rec)
    if args.out:
        Path(args.out).write_text(
            "\n".join(json.dumps(r, sort_keys=True) for r in [header] + records) + "\n"
        )
    return 0


def cmd_audit_zk(args) -> int:
    if args.cnf:
        bundle = load_bundle(args)
        poly, gamma = bundle.poly, bundle.gamma
        params = SumcheckParams(
            bundle.params.p, bundle.params.m, bundle.params.d, bundle.params.h
        )
    else:
        params = SumcheckParams(
            args.field, args.m, parse_degrees(args.degree, args.m)[0],
            parse_h(args.h_set),
        )
        poly, gamma = random_instance(params, args.seed)
    coeff_dim = (params.d + 1) ** params.m + params.m * (
        (params.d + 1) ** (params.m - 1)
    ) * (params.d - len(params.h) + 1)
    if coeff_dim > args.cap:
        emit(
            {
                "record": "audit-zk",
                "error": f"coefficient dimension {coeff_dim} exceeds cap {args.cap}",
            }
        )
        return 2
    scripts = []
    if args.script:
        for path in args.script:
            scripts.append((path, parse_script(json.loads(Path(path).read_text()))))
    if args.battery:
        for i, s in enumerate(script_battery(params, args.battery, args.seed)):
            scripts.append((f"battery[{i}]", s))
    if not scripts:
        emit({"record": "audit-zk", "error": "no scripts given"})
        return 2
    failures = 0
    for name, script in scripts:
        rep = audit_script(
            params, poly, gamma, script, include_mask_row=not args.negative_control
        )
        failures += not rep.passed
        emit(
            {
                "record": "audit-script",
                "script": name,
                "branches": rep.branches,
                "support_equal": rep.support_equal,
                "tv": str(rep.tv),
                "pass": rep.passed,
            }
        )
    emit(
        {
            "record": "audit-zk",
            "scripts": len(scripts),
            "failures": failures,
            "negative_control": bool(args.negative_control),
        }
    )
    return 0 if failures == 0 else 1


def cmd_locate(args) -> int:
    fld = Field(args.field)
    pts = parse_points(args.points)
    h = parse_h(args.h_set)
    dv = parse_degrees(args.degree, args.m)
    a = hypercube(h, args.m)
    if args.code == "rm":
        view = CodeView(fld, args.m, dv)
        out = rm_locate(view, a, pts)
    elif args.code == "sigma-rm":
        view = CodeView(fld, args.m, dv)
        out = sigma_rm_locate(view, a, pts)
    else:
        out = antisym_locate(fld, a, pts)
    emit(
        {
            "record": "locate",
            "code": args.code,
            "R": [list(pt) for pt in out.r],
            "cols": [[kind, list(pt)] for kind, pt in out.cols],
            "rows": [[int(c) for c in row] for row in out.z],
        }
    )
    return 0


def cmd_detect(args) -> int:
    fld = Field(args.field)
    pts = parse_points(args.points)
    dv = parse_degrees(args.degree, args.m)
    view = CodeView(fld, args.m, dv)
    cb = cd_rm(view, pts)
    emit(
        {
            "record": "detect",
            "domain": [list(pt) for pt in cb.domain],
            "rows": [[int(c) for c in row] for row in cb.z],
        }
    )
    return 0


def build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(prog="zkpcp", description=__doc__)
    sub = top.add_subparsers(dest="command", required=True)

    def common(p, field_default=None):
        p.add_argument("--field", type=int, default=field_default, help="prime modulus")
        p.add_argument("--m", type=int, default=2, help="number of variables")
        p.add_argument("--degree", type=str, default="3", help="degree bound (or comma vector)")
        p.add_argument("--h-set", type=str, default="0,1", help="summation set, comma separated")
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--cap", type=int, default=1 << 24, help="size cap")

    p = sub.add_parser("prove", help="prove a #SAT claim and write the proof")
    common(p)
    p.add_argument("--cnf", required=True)
    p.add_argument("--count", type=int, required=True)
    p.add_argument("--out", required=True)
    p.add_argument(
        "--dishonest-shift",
        action="store_true",
        help="honest-structure cheating prover for a wrong count (experiments)",
    )
    p.set_defaults(func=cmd_prove)

    p = sub.add_parser("verify", help="verify a proof against a #SAT claim")
    common(p)
    p.add_argument("--cnf", required=True)
    p.add_argument("--count", type=int, required=True)
    p.add_argument("--proof", required=True)
    p.add_argument("--trials", type=int, default=1)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("simulate", help="replay a query script against the simulator")
    common(p, field_default=5)
    p.add_argument("--cnf")
    p.add_argument("--count", type=int, default=0)
    p.add_argument("--script", required=True)
    p.add_argument("--out")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("audit-zk", help="exact real-vs-simulated law comparison")
    common(p, field_default=3)
    p.add_argument("--cnf")
    p.add_argument("--count", type=int, default=0)
    p.add_argument("--script", action="append", help="script file (repeatable)")
    p.add_argument("--battery", type=int, default=0, help="also run N generated scripts")
    p.add_argument(
        "--negative-control",
        action="store_true",
        help="run the deliberately broken simulator (mask row omitted)",
    )
    p.set_defaults(func=cmd_audit_zk)

    p = sub.add_parser("locate", help="run a constraint locator on a query set")
    common(p, field_default=5)
    p.add_argument("--code", choices=["rm", "sigma-rm", "antisym"], required=True)
    p.add_argument("--points", required=True, help="JSON list of points")
    p.set_defaults(func=cmd_locate)

    p = sub.add_parser("detect", help="run the plain code constraint detector")
    common(p, field_default=5)
    p.add_argument("--points", required=True, help="JSON list of points")
    p.set_defaults(func=cmd_detect)
    return top


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, OSError) as exc:
        emit({"record": "error", "message": str(exc)})
        return 2


if __name__ == "__main__":
    sys.exit(main())
