"""Truncated multivariate power series (jets) with exact rational coefficients.

A jet stores every monomial of total degree <= max_degree of a power series in
n variables, in a fixed dense graded-colex layout. The valid_order field
tracks how far the stored coefficients are guaranteed to agree with the
underlying analytic germ: entries of total degree > valid_order may be
truncation garbage and are ignored by value equality. Comparisons that state
an explicit order (eq_up_to, is_zero_up_to) look at raw storage, so the
caller always says what is being asserted.

All coefficients are fractions.Fraction; there is no floating point anywhere.
Jets are immutable values: every operation returns a fresh jet.
"""

from __future__ import annotations

import random
from fractions import Fraction
from typing import Iterable, Iterator, Mapping

from . import multiindex as mi
from .errors import (
    ConstantTermError,
    DimensionMismatchError,
    SingularJetError,
)

ZERO = Fraction(0)
ONE = Fraction(1)


def as_fraction(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value)
    raise TypeError(f"cannot interpret {value!r} as an exact rational")


def _mul_raw(n: int, cap: int, a: tuple, b: tuple) -> list:
    table = mi.product_rank(n, cap)
    out = [ZERO] * len(a)
    for ra, ca in enumerate(a):
        if not ca:
            continue
        for rb, cb in enumerate(b):
            if not cb:
                continue
            rc = table.get((ra, rb))
            if rc is not None:
                out[rc] += ca * cb
    return out


class Jet:
    """One truncated power series around the origin."""

    __slots__ = ("n", "max_degree", "valid_order", "coeffs")

    def __init__(self, n: int, max_degree: int, coeffs: Iterable, valid_order: int):
        coeffs = tuple(coeffs)
        if len(coeffs) != mi.size(n, max_degree):
            raise DimensionMismatchError(
                f"expected {mi.size(n, max_degree)} coefficients for n={n}, "
                f"cap={max_degree}, got {len(coeffs)}"
            )
        if not 0 <= valid_order <= max_degree:
            raise ValueError(f"valid_order {valid_order} outside 0..{max_degree}")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "max_degree", max_degree)
        object.__setattr__(self, "valid_order", valid_order)
        object.__setattr__(self, "coeffs", coeffs)

    def __setattr__(self, name, value):
        raise AttributeError("jets are immutable")

    # ------------------------------------------------------------------
    # constructors

    @classmethod
    def zero(cls, n: int, max_degree: int, valid_order: int | None = None) -> "Jet":
        v = max_degree if valid_order is None else valid_order
        return cls(n, max_degree, [ZERO] * mi.size(n, max_degree), v)

    @classmethod
    def constant(cls, value, n: int, max_degree: int) -> "Jet":
        coeffs = [ZERO] * mi.size(n, max_degree)
        coeffs[0] = as_fraction(value)
        return cls(n, max_degree, coeffs, max_degree)

    @classmethod
    def one(cls, n: int, max_degree: int) -> "Jet":
        return cls.constant(1, n, max_degree)

    @classmethod
    def variable(cls, axis: int, n: int, max_degree: int) -> "Jet":
        """The coordinate function x^axis (1-based axis)."""
        if not 1 <= axis <= n:
            raise DimensionMismatchError(f"axis {axis} outside 1..{n}")
        if max_degree < 1:
            raise ValueError("max_degree must be >= 1 to store a variable")
        exps = tuple(1 if k == axis - 1 else 0 for k in range(n))
        coeffs = [ZERO] * mi.size(n, max_degree)
        coeffs[mi.rank_of(n, max_degree)[exps]] = ONE
        return cls(n, max_degree, coeffs, max_degree)

    @classmethod
    def from_terms(
        cls,
        n: int,
        max_degree: int,
        terms: Mapping[tuple[int, ...], object],
        valid_order: int | None = None,
    ) -> "Jet":
        ranks = mi.rank_of(n, max_degree)
        coeffs = [ZERO] * mi.size(n, max_degree)
        for exps, value in terms.items():
            exps = tuple(exps)
            if exps not in ranks:
                raise DimensionMismatchError(
                    f"monomial {exps} does not fit workspace n={n}, cap={max_degree}"
                )
            coeffs[ranks[exps]] = as_fraction(value)
        v = max_degree if valid_order is None else valid_order
        return cls(n, max_degree, coeffs, v)

    # ------------------------------------------------------------------
    # inspection

    @property
    def constant_term(self) -> Fraction:
        return self.coeffs[0]

    def coefficient(self, exps: tuple[int, ...]) -> Fraction:
        exps = tuple(exps)
        ranks = mi.rank_of(self.n, self.max_degree)
        if exps not in ranks:
            raise DimensionMismatchError(f"monomial {exps} outside workspace")
        return self.coeffs[ranks[exps]]

    def terms(self) -> Iterator[tuple[tuple[int, ...], Fraction]]:
        """Nonzero stored terms, rank order (includes beyond-valid entries)."""
        exps = mi.exponents(self.n, self.max_degree)
        for r, c in enumerate(self.coeffs):
            if c:
                yield exps[r], c

    def is_zero_up_to(self, order: int) -> bool:
        degs = mi.degree_of(self.n, self.max_degree)
        return all(
            not c for r, c in enumerate(self.coeffs) if degs[r] <= order
        )

    def eq_up_to(self, other: "Jet", order: int) -> bool:
        """Compare stored coefficients of total degree <= order."""
        self._require_same_shape(other)
        degs = mi.degree_of(self.n, self.max_degree)
        return all(
            a == b
            for r, (a, b) in enumerate(zip(self.coeffs, other.coeffs))
            if degs[r] <= order
        )

    def eq_on_x1_up_to(self, other: "Jet", x1_order: int) -> bool:
        """Compare stored coefficients of monomials with x1-exponent <= x1_order."""
        self._require_same_shape(other)
        exps = mi.exponents(self.n, self.max_degree)
        return all(
            a == b
            for r, (a, b) in enumerate(zip(self.coeffs, other.coeffs))
            if exps[r][0] <= x1_order
        )

    def same_payload(self, other: "Jet") -> bool:
        """Bitwise identity: shape, valid order and every stored coefficient."""
        return (
            self.n == other.n
            and self.max_degree == other.max_degree
            and self.valid_order == other.valid_order
            and self.coeffs == other.coeffs
        )

    def __eq__(self, other):
        if not isinstance(other, Jet):
            return NotImplemented
        if (
            self.n != other.n
            or self.max_degree != other.max_degree
            or self.valid_order != other.valid_order
        ):
            return False
        return self.eq_up_to(other, self.valid_order)

    __hash__ = None  # mutable-ish semantics for ==: not hashable

    def __repr__(self):
        parts = []
        for exps, c in self.terms():
            mono = " ".join(
                f"x{k + 1}" if e == 1 else f"x{k + 1}^{e}"
                for k, e in enumerate(exps)
                if e
            )
            parts.append(f"{c} {mono}".strip())
            if len(parts) == 6:
                parts.append("...")
                break
        body = " + ".join(parts) if parts else "0"
        return f"Jet(n={self.n}, cap={self.max_degree}, v={self.valid_order}: {body})"

    # ------------------------------------------------------------------
    # arithmetic

    def _require_same_shape(self, other: "Jet"):
        if self.n != other.n or self.max_degree != other.max_degree:
            raise DimensionMismatchError(
                f"workspace mismatch: ({self.n},{self.max_degree}) vs "
                f"({other.n},{other.max_degree})"
            )

    def _coerce(self, other) -> "Jet":
        if isinstance(other, Jet):
            return other
        return Jet.constant(other, self.n, self.max_degree)

    def __add__(self, other) -> "Jet":
        other = self._coerce(other)
        self._require_same_shape(other)
        return Jet(
            self.n,
            self.max_degree,
            (a + b for a, b in zip(self.coeffs, other.coeffs)),
            min(self.valid_order, other.valid_order),
        )

    __radd__ = __add__

    def __sub__(self, other) -> "Jet":
        other = self._coerce(other)
        self._require_same_shape(other)
        return Jet(
            self.n,
            self.max_degree,
            (a - b for a, b in zip(self.coeffs, other.coeffs)),
            min(self.valid_order, other.valid_order),
        )

    def __rsub__(self, other) -> "Jet":
        return self._coerce(other) - self

    def __neg__(self) -> "Jet":
        return Jet(self.n, self.max_degree, (-a for a in self.coeffs), self.valid_order)

    def scale(self, value) -> "Jet":
        c = as_fraction(value)
        return Jet(self.n, self.max_degree, (c * a for a in self.coeffs), self.valid_order)

    def __mul__(self, other) -> "Jet":
        if not isinstance(other, Jet):
            return self.scale(other)
        self._require_same_shape(other)
        out = _mul_raw(self.n, self.max_degree, self.coeffs, other.coeffs)
        return Jet(self.n, self.max_degree, out, min(self.valid_order, other.valid_order))

    def __rmul__(self, other) -> "Jet":
        return self.scale(other)

    def partial(self, axis: int) -> "Jet":
        """Formal d/dx^axis (1-based); valid order drops by one."""
        if not 1 <= axis <= self.n:
            raise DimensionMismatchError(f"axis {axis} outside 1..{self.n}")
        out = [ZERO] * len(self.coeffs)
        for src, dst, factor in mi.partial_map(self.n, self.max_degree, axis - 1):
            c = self.coeffs[src]
            if c:
                out[dst] = c * factor
        return Jet(self.n, self.max_degree, out, max(self.valid_order - 1, 0))

    def antiderivative_x1(self) -> "Jet":
        """The unique x1-primitive with zero x1-free part."""
        out = [ZERO] * len(self.coeffs)
        for src, dst, divisor in mi.antiderivative_x1_map(self.n, self.max_degree):
            c = self.coeffs[src]
            if c:
                out[dst] = c / divisor
        return Jet(
            self.n,
            self.max_degree,
            out,
            min(self.valid_order + 1, self.max_degree),
        )

    def reciprocal(self) -> "Jet":
        """Multiplicative inverse, by Newton iteration on the coefficients."""
        c0 = self.coeffs[0]
        if c0 == 0:
            raise SingularJetError("reciprocal of a jet with zero constant term")
        inv = [ZERO] * len(self.coeffs)
        inv[0] = ONE / c0
        good = 0
        while good < self.max_degree:
            prod = _mul_raw(self.n, self.max_degree, self.coeffs, tuple(inv))
            correction = [-p for p in prod]
            correction[0] += 2
            inv = _mul_raw(self.n, self.max_degree, tuple(inv), tuple(correction))
            good = 2 * good + 1
        return Jet(self.n, self.max_degree, inv, self.valid_order)

    def exp(self) -> "Jet":
        """exp composed with self; requires zero constant term (exactness)."""
        if self.coeffs[0] != 0:
            raise ConstantTermError("exp needs a zero constant term")
        acc = Jet.one(self.n, self.max_degree)
        for k in range(self.max_degree, 0, -1):
            acc = Jet.one(self.n, self.max_degree) + (self * acc).scale(Fraction(1, k))
        return Jet(self.n, self.max_degree, acc.coeffs, self.valid_order)

    # ------------------------------------------------------------------
    # slicing

    def restrict_x1(self) -> "SliceJet":
        """Set x1 = 0; the result lives in the variables (x2, ..., xn)."""
        if self.n < 1:
            raise DimensionMismatchError("cannot restrict a 0-variable jet")
        out = [ZERO] * mi.size(self.n - 1, self.max_degree)
        for full_rank, slice_rank in mi.restrict_pairs(self.n, self.max_degree):
            out[slice_rank] = self.coeffs[full_rank]
        return SliceJet(Jet(self.n - 1, self.max_degree, out, self.valid_order))

    def with_valid_order(self, valid_order: int) -> "Jet":
        return Jet(self.n, self.max_degree, self.coeffs, valid_order)


class SliceJet:
    """Initial-data function of (x2, ..., xn): an (n-1)-variable jet that
    remembers it is destined for promotion into n variables."""

    __slots__ = ("jet",)

    def __init__(self, jet: Jet):
        object.__setattr__(self, "jet", jet)

    def __setattr__(self, name, value):
        raise AttributeError("slices are immutable")

    @property
    def ambient_n(self) -> int:
        return self.jet.n + 1

    @property
    def max_degree(self) -> int:
        return self.jet.max_degree

    @property
    def valid_order(self) -> int:
        return self.jet.valid_order

    @property
    def constant_term(self) -> Fraction:
        return self.jet.constant_term

    def promote(self) -> Jet:
        """Embed as an x1-independent function of all n variables."""
        n = self.ambient_n
        cap = self.max_degree
        out = [ZERO] * mi.size(n, cap)
        for slice_rank, full_rank in enumerate(mi.promote_map(n, cap)):
            out[full_rank] = self.jet.coeffs[slice_rank]
        return Jet(n, cap, out, self.jet.valid_order)

    def same_payload(self, other: "SliceJet") -> bool:
        return self.jet.same_payload(other.jet)

    def __eq__(self, other):
        if not isinstance(other, SliceJet):
            return NotImplemented
        return self.jet == other.jet

    __hash__ = None

    def __repr__(self):
        return f"Slice[{self.jet!r}]"


def random_poly(
    seed: int, n: int, degree_bound: int, coeff_bound: int, max_degree: int
) -> Jet:
    """Deterministic random polynomial: integer coefficients in
    [-coeff_bound, coeff_bound] on every monomial of degree <= degree_bound."""
    if degree_bound > max_degree:
        raise ValueError("degree_bound exceeds the workspace cap")
    rng = random.Random(seed)
    degs = mi.degree_of(n, max_degree)
    coeffs = [ZERO] * mi.size(n, max_degree)
    for r in range(len(coeffs)):
        if degs[r] <= degree_bound:
            coeffs[r] = Fraction(rng.randint(-coeff_bound, coeff_bound))
    return Jet(n, max_degree, coeffs, max_degree)


def random_slice(
    seed: int, ambient_n: int, degree_bound: int, coeff_bound: int, max_degree: int
) -> SliceJet:
    return SliceJet(random_poly(seed, ambient_n - 1, degree_bound, coeff_bound, max_degree))
