"""Tour of the jet workspace: exact truncated power series.

A jet stores every monomial up to a total-degree cap with exact rational
coefficients. The valid_order field records how many degrees are trustworthy
after a chain of operations; differentiation costs one order,
x1-antidifferentiation gives it back.
"""

from jetgeom import Jet, random_poly

CAP = 6

print("== building blocks ==")
x1 = Jet.variable(1, 2, CAP)
x2 = Jet.variable(2, 2, CAP)
print("x1      :", x1)
print("x1 + x2 :", x1 + x2)
print("(x1+x2)^2:", (x1 + x2) * (x1 + x2))

print()
print("== geometric series via reciprocal ==")
one_minus = Jet.one(2, CAP) - x1
series = one_minus.reciprocal()
print("1/(1-x1):", series)
assert (one_minus * series).eq_up_to(Jet.one(2, CAP), CAP)

print()
print("== exp and the inverse law ==")
e = x1.exp()
print("exp(x1):", e)
assert (e * (-x1).exp()).eq_up_to(Jet.one(2, CAP), CAP)

print()
print("== derivative / antiderivative bookkeeping ==")
p = random_poly(7, 2, 3, 3, CAP)
print("random p, valid order", p.valid_order)
dp = p.partial(1)
print("d/dx1 p, valid order", dp.valid_order)
back = dp.antiderivative_x1()
print("integral recovers p up to its x1-free part; valid order", back.valid_order)
assert (p - back).partial(1).is_zero_up_to(CAP - 1)

print()
print("== restriction to the initial hypersurface x1 = 0 ==")
sl = (x1 + x2 * x2).restrict_x1()
print("slice:", sl)
print("promoted back:", sl.promote())
assert sl.promote().partial(1).is_zero_up_to(CAP - 1)

print()
print("all jet demos passed")
