"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line.

Run with `pytest tests/test_acceptance.py -v -s` to see the per-criterion
lines. Every assertion is exact (rational arithmetic, zero residual up to the
stated order); there are no floating-point tolerances anywhere.
"""

import random
from fractions import Fraction

from jetgeom import (
    Bilinear,
    FirstOrderSystem,
    Jet,
    RejectionError,
    SecondOrderSystem,
    SliceJet,
    build_metric_2d_prescribed_ricci,
    build_prescribed_ricci_general,
    build_prescribed_ricci_torsion_free,
    build_prescribed_ricci_trace_free_torsion,
    build_statistical_2d,
    build_statistical_nd,
    build_trace_free_statistical_2d,
    census,
    connection_round_trip_data,
    divergence_form,
    is_codazzi,
    levi_civita,
    random_connection,
    random_free_data,
    random_normalized_metric,
    random_poly,
    random_prescribed_tensor,
    random_slice,
    random_symmetric_connection,
    random_trace_free_connection,
    ricci,
    solve_first_order,
    solve_second_order,
    split,
    statistical_nd_round_trip_data,
    torsion_trace,
    two_form_closed,
    verify,
    zero_free_data,
)
from jetgeom.serialize import canonical_dumps, report_from_json, report_to_json
from oracles import (
    conv_oracle,
    cosine_series_jet,
    exp_series_jet,
    extract_first_order,
    extract_second_order,
    jet_matches_terms,
    term_dict,
)


def emit(number: int, label: str, ok: bool):
    print(f"[acceptance {number:02d}] {label}: {'PASS' if ok else 'FAIL'}")
    assert ok, f"acceptance criterion {number} failed: {label}"


# ---------------------------------------------------------------------------


def test_criterion_01_census_conformance():
    ok = True
    for n in range(2, 7):
        cen = census("general", n)
        ok &= len(cen.free_function_slots) == n**3 - n**2
        ok &= len(cen.initial_slice_slots) == n**2
        cen = census("torsion-free", n)
        ok &= len(cen.free_function_slots) == (n**3 - 3 * n) // 2 + 1
        ok &= len(cen.initial_slice_slots) == (n**2 + n) // 2
        if n >= 3:
            cen = census("trace-free-torsion", n)
            ok &= len(cen.free_function_slots) == n**3 - n**2 - n
            ok &= len(cen.initial_slice_slots) == n**2
            cen = census("statistical", n)
            ok &= len(cen.free_function_slots) == (n**3 + 6 * n**2 + 5 * n) // 6
            ok &= len(cen.initial_slice_slots) == n * (n + 1) // 2 - 1
    emit(1, "census counts match the counting formulas for n = 2..6", ok)


def test_criterion_02_ck_solver_unit_suite():
    cap = 8
    exp_sys = FirstOrderSystem(
        ("u",), lambda u: {"u": u["u"]}, {"u": SliceJet(Jet.one(0, cap))}
    )
    ok = solve_first_order(exp_sys).values["u"].eq_up_to(exp_series_jet(1, cap, 1), cap)

    transport = FirstOrderSystem(
        ("u",),
        lambda u: {"u": u["u"].partial(2)},
        {"u": SliceJet(Jet.variable(1, 1, cap))},
    )
    want = Jet.variable(1, 2, cap) + Jet.variable(2, 2, cap)
    ok &= solve_first_order(transport).values["u"].eq_up_to(want, cap)

    cosine = SecondOrderSystem(
        ("u",),
        lambda u: {"u": -u["u"]},
        {"u": SliceJet(Jet.one(0, cap))},
        {"u": SliceJet(Jet.zero(0, cap))},
    )
    ok &= solve_second_order(cosine).values["u"].eq_up_to(cosine_series_jet(cap), cap)

    cap6 = 6
    rhs1 = lambda u: {"u": u["u"] * u["u"].partial(2)}
    init1 = {"u": SliceJet(Jet.variable(1, 1, cap6))}
    sol1 = solve_first_order(FirstOrderSystem(("u",), rhs1, init1))
    oracle1 = extract_first_order(("u",), rhs1, init1, cap6)
    ok &= sol1.values["u"].eq_up_to(oracle1["u"], cap6)

    rhs2 = lambda u: {"u": u["u"] * u["u"].partial(2).partial(2)}
    init2 = {"u": random_slice(101, 2, 3, 2, cap6)}
    deriv2 = {"u": random_slice(102, 2, 3, 2, cap6)}
    sol2 = solve_second_order(SecondOrderSystem(("u",), rhs2, init2, deriv2))
    oracle2 = extract_second_order(("u",), rhs2, init2, deriv2, cap6)
    ok &= sol2.values["u"].eq_up_to(oracle2["u"], cap6)
    emit(2, "CK closed forms at D=8 and extraction oracles at D=6", ok)


def _ricci_residual_zero(conn, r, order):
    res = ricci(conn)
    n = conn.n
    return all(
        (res.comp(i, j) - r.comp(i, j)).is_zero_up_to(order)
        for i in range(1, n + 1)
        for j in range(1, n + 1)
    )


def test_criterion_03_prescribed_ricci_residuals():
    cap = 4
    ok = True
    for seed in range(5):
        for n in (2, 3):
            r = random_prescribed_tensor("general", 300 + seed, n, cap, 3, 2)
            fd = random_free_data(census("general", n), 310 + seed, 3, 2, cap)
            conn = build_prescribed_ricci_general(r, fd).outputs["connection"]
            ok &= _ricci_residual_zero(conn, r, cap - 1)

            r = random_prescribed_tensor("torsion-free", 320 + seed, n, cap, 3, 2)
            fd = random_free_data(census("torsion-free", n), 330 + seed, 3, 2, cap)
            conn = build_prescribed_ricci_torsion_free(r, fd).outputs["connection"]
            ok &= _ricci_residual_zero(conn, r, cap - 1)
            ok &= conn.is_symmetric_table()

        n = 3
        r = random_prescribed_tensor("trace-free-torsion", 340 + seed, n, cap, 3, 2)
        fd = random_free_data(census("trace-free-torsion", n), 350 + seed, 3, 2, cap)
        conn = build_prescribed_ricci_trace_free_torsion(r, fd).outputs["connection"]
        ok &= _ricci_residual_zero(conn, r, cap - 1)
        tau = torsion_trace(conn)
        ok &= all(tau.comp(j).is_zero_up_to(cap) for j in range(1, n + 1))
    emit(3, "prescribed-Ricci residuals zero to D-1 over 5 seeds, n in {2,3}", ok)


def test_criterion_04_round_trip_reconstruction():
    cap, n = 4, 3
    ok = True
    for seed in range(5):
        cases = (
            ("general", random_connection(400 + seed, n, cap, 3, 2),
             build_prescribed_ricci_general),
            ("trace-free-torsion", random_trace_free_connection(410 + seed, n, cap, 3, 2),
             build_prescribed_ricci_trace_free_torsion),
            ("torsion-free", random_symmetric_connection(420 + seed, n, cap, 3, 2),
             build_prescribed_ricci_torsion_free),
        )
        for tag, conn0, build in cases:
            r, fd = connection_round_trip_data(tag, conn0)
            out = build(r, fd).outputs["connection"]
            ok &= all(out.gamma[k].eq_up_to(conn0.gamma[k], cap) for k in out.gamma)
    emit(4, "round-trip reconstruction bit-exact to degree D (5 seeds x 3 builders)", ok)


def test_criterion_05_closedness_gate():
    cap, n = 4, 3
    zero = Jet.zero(n, cap)
    comps = {(i, j): zero for i in range(1, 4) for j in range(1, 4)}
    comps[(1, 2)] = Jet.variable(3, n, cap)
    comps[(2, 1)] = -Jet.variable(3, n, cap)
    bad = Bilinear(n, comps)
    fd = zero_free_data(census("torsion-free", n), cap)
    rejected = False
    try:
        build_prescribed_ricci_torsion_free(bad, fd)
    except RejectionError as err:
        rejected = err.reason == "antisymmetric-part-not-closed"
    good_comps = dict(comps)
    good_comps[(1, 2)] = Jet.variable(1, n, cap)
    good_comps[(2, 1)] = -Jet.variable(1, n, cap)
    good = Bilinear(n, good_comps)
    report = build_prescribed_ricci_torsion_free(good, fd)
    accepted = _ricci_residual_zero(report.outputs["connection"], good, cap - 1)
    emit(5, "closedness gate rejects a12=x3 and accepts a closed replacement",
         rejected and accepted)


def test_criterion_06_antisymmetric_part_identities():
    cap, n = 4, 3
    ok = True
    for seed in range(20):
        conn = random_symmetric_connection(600 + seed, n, cap, 3, 2)
        _, anti = split(ricci(conn))
        d = divergence_form(conn)
        for i in range(1, n + 1):
            for j in range(i + 1, n + 1):
                curl = (d.comp(i).partial(j) - d.comp(j).partial(i)).scale(
                    Fraction(1, 2)
                )
                ok &= (anti.comp(i, j) - curl).is_zero_up_to(cap - 1)
        ok &= two_form_closed(anti, cap - 2)
    emit(6, "antisym(Ric) equals the divergence curl at D-1 and is closed at D-2", ok)


def test_criterion_07_metric_2d_builder():
    cap = 5
    e2x = exp_series_jet(2, cap, 2)
    hyper = Bilinear(
        2,
        {
            (1, 1): Jet.constant(-1, 2, cap),
            (1, 2): Jet.zero(2, cap),
            (2, 1): Jet.zero(2, cap),
            (2, 2): -e2x,
        },
    )
    report = build_metric_2d_prescribed_ricci(
        hyper, SliceJet(Jet.constant(-1, 1, cap)), SliceJet(Jet.zero(1, cap))
    )
    ok = report.outputs["conformal_factor"].eq_up_to(Jet.constant(-1, 2, cap), cap)

    rng = random.Random(700)
    for _ in range(5):
        r11 = random_poly(rng.randrange(2**32), 2, 3, 2, cap)
        r22 = random_poly(rng.randrange(2**32), 2, 3, 2, cap)
        if r11.constant_term == 0:
            r11 = r11 + Jet.one(2, cap)
        if r22.constant_term == 0:
            r22 = r22 + Jet.one(2, cap)
        phi = random_slice(rng.randrange(2**32), 2, 3, 2, cap)
        if phi.constant_term == 0:
            phi = SliceJet(phi.jet + Jet.one(1, cap))
        psi = random_slice(rng.randrange(2**32), 2, 3, 2, cap)
        r = Bilinear(
            2,
            {
                (1, 1): r11,
                (1, 2): Jet.zero(2, cap),
                (2, 1): Jet.zero(2, cap),
                (2, 2): r22,
            },
        )
        g = build_metric_2d_prescribed_ricci(r, phi, psi).outputs["metric"]
        res = ricci(levi_civita(g))
        ok &= all(
            (res.comp(i, j) - r.comp(i, j)).is_zero_up_to(cap - 2)
            for i in (1, 2)
            for j in (1, 2)
        )
    emit(7, "hyperbolic fixture gives h = -1 and random residuals vanish to D-2", ok)


def test_criterion_08_statistical_builders():
    cap = 4
    ok = True

    # 2D: Levi-Civita round trip and torsion-allowed Codazzi output
    g0 = random_normalized_metric(800, 2, cap, 3, 2)
    c0 = levi_civita(g0)
    rep = build_statistical_2d(
        c0, g0.comp(1, 1), g0.comp(1, 2).restrict_x1(), g0.comp(2, 2).restrict_x1()
    )
    g = rep.outputs["metric"]
    ok &= all(g.comp(i, j).eq_up_to(g0.comp(i, j), cap) for i in (1, 2) for j in (1, 2))
    ok &= is_codazzi(c0, g, cap - 1) and g.normalized_at_zero

    torsioned = random_connection(801, 2, cap, 3, 2)
    rep = build_statistical_2d(
        torsioned,
        Jet.one(2, cap),
        SliceJet(Jet.zero(1, cap)),
        SliceJet(Jet.one(1, cap)),
    )
    ok &= is_codazzi(torsioned, rep.outputs["metric"], cap - 1)

    # trace-free 2D: determinant gauge and rejection of non-symmetric Ricci
    rep = build_trace_free_statistical_2d(
        c0, g0.comp(1, 2).restrict_x1(), g0.comp(2, 2).restrict_x1()
    )
    g = rep.outputs["metric"]
    nu = rep.outputs["volume"]
    ok &= all(g.comp(i, j).eq_up_to(g0.comp(i, j), cap) for i in (1, 2) for j in (1, 2))
    det = g.comp(1, 1) * g.comp(2, 2) - g.comp(1, 2) * g.comp(1, 2)
    ok &= (det - nu * nu).is_zero_up_to(cap)

    zero = Jet.zero(2, cap)
    comps = {(i, j): zero for i in (1, 2) for j in (1, 2)}
    comps[(1, 2)] = Jet.one(2, cap)
    comps[(2, 1)] = -Jet.one(2, cap)
    skew = Bilinear(2, comps)
    bad_conn = build_prescribed_ricci_torsion_free(
        skew, zero_free_data(census("torsion-free", 2), cap)
    ).outputs["connection"]
    try:
        build_trace_free_statistical_2d(
            bad_conn, SliceJet(Jet.zero(1, cap)), SliceJet(Jet.one(1, cap))
        )
        ok = False
    except RejectionError as err:
        ok &= err.reason == "ricci-not-symmetric"

    # n = 3: round trip and random-data Codazzi output
    g0 = random_normalized_metric(802, 3, cap, 3, 2)
    c0, fd = statistical_nd_round_trip_data(g0)
    rep = build_statistical_nd(3, fd)
    g = rep.outputs["metric"]
    conn = rep.outputs["connection"]
    ok &= all(
        g.comp(i, j).eq_up_to(g0.comp(i, j), cap)
        for i in range(1, 4)
        for j in range(1, 4)
    )
    ok &= all(conn.gamma[k].eq_up_to(c0.gamma[k], cap) for k in conn.gamma)
    fd = random_free_data(census("statistical", 3), 803, 3, 2, cap)
    rep = build_statistical_nd(3, fd)
    ok &= is_codazzi(rep.outputs["connection"], rep.outputs["metric"], cap - 1)
    ok &= rep.outputs["metric"].normalized_at_zero
    emit(8, "statistical builders: Codazzi at D-1, round trips, det g = nu^2", ok)


def test_criterion_09_jet_property_suite():
    ok = True
    rng = random.Random(900)
    for _ in range(500):
        a = random_poly(rng.randrange(10**9), 2, 3, 4, 4)
        b = random_poly(rng.randrange(10**9), 2, 3, 4, 4)
        c = random_poly(rng.randrange(10**9), 2, 3, 4, 4)
        v = min(a.valid_order, b.valid_order, c.valid_order)
        ok &= ((a * b) * c).eq_up_to(a * (b * c), v)
        ok &= (a * b).eq_up_to(b * a, v)
        ok &= (a * (b + c)).eq_up_to(a * b + a * c, v)
    for _ in range(500):
        a = random_poly(rng.randrange(10**9), 3, 2, 4, 3)
        b = random_poly(rng.randrange(10**9), 3, 2, 4, 3)
        want = conv_oracle(term_dict(a), term_dict(b), 3)
        ok &= jet_matches_terms(a * b, want, 3)
    emit(9, "ring laws and convolution oracle over 500 randomized cases each", ok)


def test_criterion_10_serialization_round_trip():
    cap = 4
    reports = []
    conn0 = random_connection(1000, 3, cap, 3, 2)
    r, fd = connection_round_trip_data("general", conn0)
    reports.append(build_prescribed_ricci_general(r, fd))
    g0 = random_normalized_metric(1001, 2, cap, 3, 2)
    reports.append(
        build_trace_free_statistical_2d(
            levi_civita(g0), g0.comp(1, 2).restrict_x1(), g0.comp(2, 2).restrict_x1()
        )
    )
    reports.append(build_statistical_nd(3, zero_free_data(census("statistical", 3), cap)))
    e2x = exp_series_jet(2, 5, 2)
    hyper = Bilinear(
        2,
        {
            (1, 1): Jet.constant(-1, 2, 5),
            (1, 2): Jet.zero(2, 5),
            (2, 1): Jet.zero(2, 5),
            (2, 2): -e2x,
        },
    )
    reports.append(
        build_metric_2d_prescribed_ricci(
            hyper, SliceJet(Jet.constant(-1, 1, 5)), SliceJet(Jet.zero(1, 5))
        )
    )
    ok = True
    for report in reports:
        text = canonical_dumps(report_to_json(report))
        reloaded = report_from_json(report_to_json(report))
        ok &= canonical_dumps(report_to_json(reloaded)) == text
        ok &= verify(reloaded)
    emit(10, "fixture reports round-trip byte-identically and re-verify", ok)
