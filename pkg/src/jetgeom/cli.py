"""Scenario runner: `run <scenario.json>`, `census <tag> <n>`,
`verify <report.json> [--order k]`.

Exit codes: 0 success, 1 malformed input, 2 precondition rejection (with a
machine-readable reason on stdout). Reports are canonical JSON, so a fixed
seed yields a byte-identical report file.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from fractions import Fraction
from pathlib import Path

from . import serialize
from .builders import (
    BuildReport,
    FreeData,
    build_metric_2d_prescribed_ricci,
    build_prescribed_ricci_general,
    build_prescribed_ricci_torsion_free,
    build_prescribed_ricci_trace_free_torsion,
    build_statistical_2d,
    build_statistical_nd,
    build_trace_free_statistical_2d,
    census,
    connection_round_trip_data,
    random_connection,
    random_free_data,
    random_normalized_metric,
    random_prescribed_tensor,
    random_symmetric_connection,
    random_trace_free_connection,
    statistical_nd_round_trip_data,
    verify,
    zero_free_data,
)
from .errors import JetError, RejectionError
from .geometry import Bilinear, levi_civita
from .jets import Jet, SliceJet, random_poly


class ScenarioError(ValueError):
    pass


RICCI_TAGS = ("general", "trace-free-torsion", "torsion-free")
ALL_TAGS = RICCI_TAGS + (
    "metric-2d",
    "statistical",
    "statistical-2d",
    "trace-free-statistical-2d",
)


def _bounds(sc: dict, cap: int) -> tuple[int, int]:
    cfg = sc.get("random", {})
    return cfg.get("degree", min(3, cap - 1)), cfg.get("coeff_bound", 2)


def _force_constant(jet: Jet, value) -> Jet:
    coeffs = list(jet.coeffs)
    coeffs[0] = Fraction(value)
    return Jet(jet.n, jet.max_degree, coeffs, jet.valid_order)


def _policy_jet(policy, n, cap, rng, degree, bound, constant=None) -> Jet:
    if policy == "zero":
        jet = Jet.zero(n, cap)
    elif policy == "one":
        jet = Jet.one(n, cap)
    elif policy == "random":
        jet = random_poly(rng.randrange(2**32), n, degree, bound, cap)
    elif isinstance(policy, dict):
        jet = serialize.jet_from_json(policy)
        if (jet.n, jet.max_degree) != (n, cap):
            raise ScenarioError("inline jet has the wrong workspace")
        return jet
    else:
        raise ScenarioError(f"bad jet policy {policy!r}")
    if constant is not None:
        jet = _force_constant(jet, constant)
    return jet


def _policy_slice(policy, n, cap, rng, degree, bound, constant=None) -> SliceJet:
    if isinstance(policy, dict) and "jet" in policy:
        sl = serialize.slice_from_json(policy)
        if (sl.ambient_n, sl.max_degree) != (n, cap):
            raise ScenarioError("inline slice has the wrong workspace")
        return sl
    return SliceJet(_policy_jet(policy, n - 1, cap, rng, degree, bound, constant))


def _prescribed_ricci(sc: dict, tag: str, n: int, cap: int, rng, degree, bound) -> Bilinear:
    policy = (sc.get("prescribed") or {}).get("r", "zero")
    if policy == "zero":
        return Bilinear.zero(n, cap)
    if policy == "random":
        return random_prescribed_tensor(tag, rng.randrange(2**32), n, cap, degree, bound)
    if isinstance(policy, dict) and "components" in policy:
        comps = {}
        for i in range(1, n + 1):
            for j in range(1, n + 1):
                payload = policy["components"].get(f"{i},{j}")
                comps[(i, j)] = (
                    Jet.zero(n, cap)
                    if payload is None
                    else _policy_jet(payload, n, cap, rng, degree, bound)
                )
        return Bilinear(n, comps)
    raise ScenarioError(f"bad prescribed-tensor policy {policy!r}")


def _free_data(sc: dict, cen, n: int, cap: int, rng, degree, bound) -> FreeData:
    spec = sc.get("free_data", "zero")
    if isinstance(spec, str):
        spec = {"default": spec}
    default = spec.get("default", "zero")
    if default == "random":
        base = random_free_data(cen, rng.randrange(2**32), degree, bound, cap)
    elif default == "zero":
        base = zero_free_data(cen, cap)
    else:
        raise ScenarioError(f"bad free-data default {default!r}")
    free = dict(base.free_functions)
    slices = dict(base.initial_slices)
    gauge = base.gauge_function
    for slot, policy in (spec.get("slots") or {}).items():
        if slot == "phi":
            gauge = _policy_jet(policy, n, cap, rng, degree, bound)
        elif slot in free:
            kind = slot.split(";")[0]
            constant = None
            if kind == "g":
                i, j = (int(v) for v in slot.split(";")[1].split(","))
                constant = 1 if i == j else 0
            free[slot] = _policy_jet(policy, n, cap, rng, degree, bound, constant)
        elif slot in slices:
            constant = None
            if slot.startswith("g;"):
                i, j = (int(v) for v in slot.split(";")[1].split(","))
                constant = 1 if i == j else 0
            slices[slot] = _policy_slice(policy, n, cap, rng, degree, bound, constant)
        else:
            raise ScenarioError(f"slot {slot!r} is not in the census")
    return FreeData(free, slices, gauge)


def _run_direct(sc: dict) -> BuildReport:
    tag = sc["construction"]
    n = int(sc["n"])
    cap = int(sc["D"])
    if cap < 2:
        raise ScenarioError("need D >= 2")
    rng = random.Random(sc.get("seed", 0))
    degree, bound = _bounds(sc, cap)
    pres = sc.get("prescribed") or {}

    if tag in RICCI_TAGS:
        cen = census(tag, n)
        r = _prescribed_ricci(sc, tag, n, cap, rng, degree, bound)
        fd = _free_data(sc, cen, n, cap, rng, degree, bound)
        builder = {
            "general": build_prescribed_ricci_general,
            "trace-free-torsion": build_prescribed_ricci_trace_free_torsion,
            "torsion-free": build_prescribed_ricci_torsion_free,
        }[tag]
        return builder(r, fd)

    if tag == "metric-2d":
        r11 = _policy_jet(pres.get("r11", "random"), 2, cap, rng, degree, bound)
        r22 = _policy_jet(pres.get("r22", "random"), 2, cap, rng, degree, bound)
        if r11.constant_term == 0:
            r11 = _force_constant(r11, 1)
        if r22.constant_term == 0:
            r22 = _force_constant(r22, 1)
        r = Bilinear(
            2,
            {
                (1, 1): r11,
                (1, 2): Jet.zero(2, cap),
                (2, 1): Jet.zero(2, cap),
                (2, 2): r22,
            },
        )
        phi = _policy_slice(pres.get("phi", "random"), 2, cap, rng, degree, bound)
        if phi.constant_term == 0:
            phi = SliceJet(_force_constant(phi.jet, 1))
        psi = _policy_slice(pres.get("psi", "zero"), 2, cap, rng, degree, bound)
        return build_metric_2d_prescribed_ricci(r, phi, psi)

    if tag == "statistical":
        cen = census(tag, n)
        fd = _free_data(sc, cen, n, cap, rng, degree, bound)
        return build_statistical_nd(n, fd)

    if tag == "statistical-2d":
        conn_policy = pres.get("connection", "random")
        if conn_policy == "random":
            conn = random_connection(rng.randrange(2**32), 2, cap, degree, bound)
        else:
            conn = serialize.connection_from_json(conn_policy)
        g11 = _policy_jet(pres.get("g11", "one"), 2, cap, rng, degree, bound, constant=1)
        init12 = _policy_slice(pres.get("init12", "zero"), 2, cap, rng, degree, bound, 0)
        init22 = _policy_slice(pres.get("init22", "one"), 2, cap, rng, degree, bound, 1)
        return build_statistical_2d(conn, g11, init12, init22)

    if tag == "trace-free-statistical-2d":
        conn_policy = pres.get("connection", "random-levi-civita")
        if conn_policy == "random-levi-civita":
            conn = levi_civita(
                random_normalized_metric(rng.randrange(2**32), 2, cap, degree, bound)
            )
        else:
            conn = serialize.connection_from_json(conn_policy)
        init12 = _policy_slice(pres.get("init12", "zero"), 2, cap, rng, degree, bound, 0)
        init22 = _policy_slice(pres.get("init22", "one"), 2, cap, rng, degree, bound, 1)
        return build_trace_free_statistical_2d(conn, init12, init22)

    raise ScenarioError(f"unknown construction {tag!r}")


def _run_round_trip(sc: dict) -> BuildReport:
    tag = sc["construction"]
    n = int(sc["n"])
    cap = int(sc["D"])
    seed = sc.get("seed", 0)
    cfg = sc.get("round_trip", {})
    degree = cfg.get("degree", min(3, cap - 1))
    bound = cfg.get("coeff_bound", 2)

    if tag in RICCI_TAGS:
        maker = {
            "general": random_connection,
            "trace-free-torsion": random_trace_free_connection,
            "torsion-free": random_symmetric_connection,
        }[tag]
        conn = maker(seed, n, cap, degree, bound)
        r, fd = connection_round_trip_data(tag, conn)
        builder = {
            "general": build_prescribed_ricci_general,
            "trace-free-torsion": build_prescribed_ricci_trace_free_torsion,
            "torsion-free": build_prescribed_ricci_torsion_free,
        }[tag]
        return builder(r, fd)

    g0 = random_normalized_metric(seed, n, cap, degree, bound)
    if tag == "statistical":
        _, fd = statistical_nd_round_trip_data(g0)
        return build_statistical_nd(n, fd)
    if tag == "statistical-2d":
        conn = levi_civita(g0)
        return build_statistical_2d(
            conn,
            g0.comp(1, 1),
            g0.comp(1, 2).restrict_x1(),
            g0.comp(2, 2).restrict_x1(),
        )
    if tag == "trace-free-statistical-2d":
        conn = levi_civita(g0)
        return build_trace_free_statistical_2d(
            conn, g0.comp(1, 2).restrict_x1(), g0.comp(2, 2).restrict_x1()
        )
    raise ScenarioError(f"round_trip mode does not support {tag!r}")


def cmd_run(args) -> int:
    try:
        sc = json.loads(Path(args.scenario).read_text())
        if not isinstance(sc, dict) or "construction" not in sc:
            raise ScenarioError("scenario must be an object with a construction tag")
        mode = sc.get("mode", "direct")
        if mode not in ("direct", "round_trip"):
            raise ScenarioError(f"bad mode {mode!r}")
    except (OSError, json.JSONDecodeError, ScenarioError, TypeError, ValueError) as err:
        print(f"malformed scenario: {err}", file=sys.stderr)
        return 1
    try:
        report = _run_round_trip(sc) if mode == "round_trip" else _run_direct(sc)
    except RejectionError as err:
        print(json.dumps({"status": "rejected", "reason": err.reason}))
        return 2
    except (ScenarioError, KeyError, TypeError, ValueError) as err:
        print(f"malformed scenario: {err}", file=sys.stderr)
        return 1
    out = Path(sc.get("output", "report.json"))
    out.write_text(serialize.canonical_dumps(serialize.report_to_json(report)))
    ok = verify(report)
    print(json.dumps({"status": "ok" if ok else "verification-failed", "report": str(out)}))
    return 0 if ok else 2


def cmd_census(args) -> int:
    try:
        cen = census(args.construction, args.n)
    except RejectionError as err:
        print(json.dumps({"status": "rejected", "reason": err.reason}))
        return 2
    rows = [
        ("free functions", cen.free_function_slots),
        ("initial slices", cen.initial_slice_slots),
        ("ck unknowns", cen.ck_unknowns),
        ("determined", cen.determined),
    ]
    print(f"construction: {cen.construction}")
    print(f"n: {cen.n}")
    for label, slots in rows:
        body = " ".join(slots) if slots else "-"
        print(f"{label} ({len(slots)}): {body}")
    return 0


def cmd_verify(args) -> int:
    try:
        report = serialize.report_from_json(json.loads(Path(args.report).read_text()))
        ok = verify(report, args.order)
    except (OSError, json.JSONDecodeError, KeyError, TypeError, ValueError, JetError) as err:
        print(f"malformed report: {err}", file=sys.stderr)
        return 1
    print(json.dumps({"verified": ok}))
    return 0 if ok else 2


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="jetgeom",
        description="Construct and verify jet-level geometric structures",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="run a scenario file and write a report")
    p_run.add_argument("scenario")
    p_run.set_defaults(func=cmd_run)

    p_census = sub.add_parser("census", help="print the free-data slots of a construction")
    p_census.add_argument("construction")
    p_census.add_argument("n", type=int)
    p_census.set_defaults(func=cmd_census)

    p_verify = sub.add_parser("verify", help="re-check the residuals of a report file")
    p_verify.add_argument("report")
    p_verify.add_argument("--order", type=int, default=None)
    p_verify.set_defaults(func=cmd_verify)

    args = parser.parse_args(argv)
    return args.func(args)


def entry():
    sys.exit(main())


if __name__ == "__main__":
    entry()
