"""Statistical structures: metrics whose cubic form is totally symmetric.

In 2D any analytic connection admits such metrics (one free function of two
variables plus two slices); with symmetric Ricci the trace-free refinement
pins the metric volume to the parallel volume form. In dimension n >= 3 the
builder solves a CK system for the metric while eliminating part of the
connection through an algebraic jet-linear system.
"""

from jetgeom import (
    Jet,
    SliceJet,
    build_statistical_2d,
    build_statistical_nd,
    build_trace_free_statistical_2d,
    census,
    is_codazzi,
    levi_civita,
    random_connection,
    random_free_data,
    random_normalized_metric,
    statistical_nd_round_trip_data,
)

CAP = 4

print("== 2D with torsion allowed ==")
conn = random_connection(1, 2, CAP, 3, 2)
report = build_statistical_2d(
    conn,
    Jet.one(2, CAP),
    SliceJet(Jet.zero(1, CAP)),
    SliceJet(Jet.one(1, CAP)),
)
g = report.outputs["metric"]
print("cubic form symmetric to degree", CAP - 1, ":", is_codazzi(conn, g, CAP - 1))

print()
print("== trace-free 2D: volume pinned to the parallel volume form ==")
g0 = random_normalized_metric(2, 2, CAP, 3, 2)
c0 = levi_civita(g0)
report = build_trace_free_statistical_2d(
    c0, g0.comp(1, 2).restrict_x1(), g0.comp(2, 2).restrict_x1()
)
g = report.outputs["metric"]
nu = report.outputs["volume"]
det = g.comp(1, 1) * g.comp(2, 2) - g.comp(1, 2) * g.comp(1, 2)
print("det g equals nu^2 to degree", CAP, ":", (det - nu * nu).is_zero_up_to(CAP))
print("recovered the seed metric:",
      all(g.comp(i, j).eq_up_to(g0.comp(i, j), CAP) for i in (1, 2) for j in (1, 2)))

print()
print("== n = 3: census and a random build ==")
cen = census("statistical", 3)
print(
    f"{len(cen.free_function_slots)} free functions "
    f"({len(cen.free_function_slots) - 1} Christoffel slots plus g11), "
    f"{len(cen.initial_slice_slots)} metric slices, "
    f"{len(cen.determined)} algebraically determined symbols"
)
fd = random_free_data(cen, 3, 3, 2, CAP)
report = build_statistical_nd(3, fd)
print(
    "random build is a statistical pair:",
    is_codazzi(report.outputs["connection"], report.outputs["metric"], CAP - 1),
)

print()
print("== n = 3 round trip through a Levi-Civita pair ==")
g0 = random_normalized_metric(4, 3, CAP, 3, 2)
c0, fd = statistical_nd_round_trip_data(g0)
report = build_statistical_nd(3, fd)
g = report.outputs["metric"]
conn = report.outputs["connection"]
print(
    "metric and connection reproduced to degree", CAP, ":",
    all(g.comp(i, j).eq_up_to(g0.comp(i, j), CAP) for i in range(1, 4) for j in range(1, 4))
    and all(conn.gamma[k].eq_up_to(c0.gamma[k], CAP) for k in conn.gamma),
)

print()
print("all statistical-structure demos passed")
