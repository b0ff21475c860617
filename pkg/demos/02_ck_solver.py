"""Solving Cauchy-Kowalevski systems degree by degree.

The solver iterates U <- data + integral of the right-hand side; iteration t
freezes all coefficients with x1-exponent <= t, so the loop lands exactly on
the truncation of the unique analytic solution. The right-hand side may use
the unknowns and their derivatives along x2..xn, never along x1.
"""

from jetgeom import (
    FirstOrderSystem,
    Jet,
    SecondOrderSystem,
    SliceJet,
    residual_first_order,
    solve_first_order,
    solve_second_order,
)

CAP = 8

print("== (u)_1 = u with u(0) = 1: the exponential ==")
system = FirstOrderSystem(
    ("u",), lambda u: {"u": u["u"]}, {"u": SliceJet(Jet.one(0, CAP))}
)
sol = solve_first_order(system)
print(sol.values["u"])

print()
print("== transport: (u)_1 = (u)_2 with u(0, x2) = x2 ==")
system = FirstOrderSystem(
    ("u",),
    lambda u: {"u": u["u"].partial(2)},
    {"u": SliceJet(Jet.variable(1, 1, CAP))},
)
print(solve_first_order(system).values["u"])

print()
print("== a nonlinear equation: (u)_1 = u (u)_2 ==")
system = FirstOrderSystem(
    ("u",),
    lambda u: {"u": u["u"] * u["u"].partial(2)},
    {"u": SliceJet(Jet.variable(1, 1, CAP))},
)
sol = solve_first_order(system)
print(sol.values["u"])
res = residual_first_order(system, sol)
print("residual vanishes to degree", CAP - 1, ":", res["u"].is_zero_up_to(CAP - 1))

print()
print("== second order: (u)_11 = -u, u(0) = 1, (u)_1(0) = 0: cosine ==")
system = SecondOrderSystem(
    ("u",),
    lambda u: {"u": -u["u"]},
    {"u": SliceJet(Jet.one(0, CAP))},
    {"u": SliceJet(Jet.zero(0, CAP))},
)
print(solve_second_order(system).values["u"])

print()
print("all solver demos passed")
