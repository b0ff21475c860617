"""Tensor calculus at jet level: connections, Ricci tensors, torsion, metrics,
Levi-Civita connections, the cubic form of a metric under a connection, and
the radial-homotopy primitives behind the Poincare lemma.

Index conventions are 1-based throughout, matching coordinates x1..xn.
All closedness/primitive statements are raw coefficient identities, so no
exterior-derivative normalization convention enters anywhere.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping

from . import multiindex as mi
from .errors import (
    DimensionMismatchError,
    NotClosedError,
    RejectionError,
    SingularJetError,
)
from .jets import Jet, ZERO

HALF = Fraction(1, 2)


def _sum_jets(jets: Iterable[Jet]) -> Jet:
    total = None
    for j in jets:
        total = j if total is None else total + j
    if total is None:
        raise ValueError("empty jet sum")
    return total


def _common_shape(jets: Iterable[Jet]) -> tuple[int, int]:
    shapes = {(j.n, j.max_degree) for j in jets}
    if len(shapes) != 1:
        raise DimensionMismatchError(f"inconsistent workspaces: {sorted(shapes)}")
    return shapes.pop()


# ---------------------------------------------------------------------------
# component containers


class Connection:
    """Christoffel-symbol table gamma[(k, i, j)] of a linear connection,
    where k is the upper index; optionally symmetric in (i, j)."""

    def __init__(self, n: int, gamma: Mapping[tuple[int, int, int], Jet], symmetric: bool = False):
        keys = {(k, i, j) for k in range(1, n + 1) for i in range(1, n + 1) for j in range(1, n + 1)}
        if set(gamma) != keys:
            raise DimensionMismatchError("incomplete Christoffel table")
        _common_shape(gamma.values())
        if symmetric:
            for k, i, j in keys:
                if i < j and gamma[(k, i, j)].coeffs != gamma[(k, j, i)].coeffs:
                    raise DimensionMismatchError(
                        f"table marked symmetric but gamma[{k};{i},{j}] != gamma[{k};{j},{i}]"
                    )
        self.n = n
        self.gamma = dict(gamma)
        self.symmetric = symmetric

    @classmethod
    def from_symmetric(cls, n: int, lower_triangle: Mapping[tuple[int, tuple[int, int]], Jet]) -> "Connection":
        """Build a symmetric connection from entries keyed (k, (i, j)) with i <= j."""
        gamma = {}
        for k in range(1, n + 1):
            for i in range(1, n + 1):
                for j in range(i, n + 1):
                    jet = lower_triangle[(k, (i, j))]
                    gamma[(k, i, j)] = jet
                    gamma[(k, j, i)] = jet
        return cls(n, gamma, symmetric=True)

    @classmethod
    def zero(cls, n: int, max_degree: int, symmetric: bool = True) -> "Connection":
        z = Jet.zero(n, max_degree)
        gamma = {
            (k, i, j): z
            for k in range(1, n + 1)
            for i in range(1, n + 1)
            for j in range(1, n + 1)
        }
        return cls(n, gamma, symmetric=symmetric)

    @property
    def shape(self) -> tuple[int, int]:
        return _common_shape(self.gamma.values())

    def entry(self, k: int, i: int, j: int) -> Jet:
        return self.gamma[(k, i, j)]

    def is_symmetric_table(self) -> bool:
        return all(
            self.gamma[(k, i, j)].coeffs == self.gamma[(k, j, i)].coeffs
            for k in range(1, self.n + 1)
            for i in range(1, self.n + 1)
            for j in range(i + 1, self.n + 1)
        )


class Bilinear:
    """A (0,2)-tensor component table comps[(i, j)]."""

    def __init__(self, n: int, comps: Mapping[tuple[int, int], Jet]):
        keys = {(i, j) for i in range(1, n + 1) for j in range(1, n + 1)}
        if set(comps) != keys:
            raise DimensionMismatchError("incomplete bilinear table")
        _common_shape(comps.values())
        self.n = n
        self.comps = dict(comps)

    @classmethod
    def zero(cls, n: int, max_degree: int) -> "Bilinear":
        z = Jet.zero(n, max_degree)
        return cls(n, {(i, j): z for i in range(1, n + 1) for j in range(1, n + 1)})

    @property
    def shape(self) -> tuple[int, int]:
        return _common_shape(self.comps.values())

    def comp(self, i: int, j: int) -> Jet:
        return self.comps[(i, j)]

    def is_symmetric_table(self) -> bool:
        return all(
            self.comps[(i, j)].coeffs == self.comps[(j, i)].coeffs
            for i in range(1, self.n + 1)
            for j in range(i + 1, self.n + 1)
        )


class OneForm:
    def __init__(self, n: int, comps: Mapping[int, Jet]):
        if set(comps) != set(range(1, n + 1)):
            raise DimensionMismatchError("incomplete 1-form table")
        _common_shape(comps.values())
        self.n = n
        self.comps = dict(comps)

    def comp(self, i: int) -> Jet:
        return self.comps[i]

    @property
    def shape(self) -> tuple[int, int]:
        return _common_shape(self.comps.values())

    def min_valid(self) -> int:
        return min(j.valid_order for j in self.comps.values())


class TwoForm:
    """Antisymmetric (0,2)-tensor; stores the strict upper triangle."""

    def __init__(self, n: int, upper: Mapping[tuple[int, int], Jet]):
        keys = {(i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1)}
        if set(upper) != keys:
            raise DimensionMismatchError("incomplete 2-form table (need i < j keys)")
        if keys:
            _common_shape(upper.values())
        self.n = n
        self.upper = dict(upper)

    def comp(self, i: int, j: int) -> Jet:
        if i < j:
            return self.upper[(i, j)]
        if i > j:
            return -self.upper[(j, i)]
        n, cap = self.shape
        return Jet.zero(n, cap)

    @property
    def shape(self) -> tuple[int, int]:
        if self.upper:
            return _common_shape(self.upper.values())
        raise DimensionMismatchError("empty 2-form has no shape")

    def min_valid(self) -> int:
        if not self.upper:
            return 0
        return min(j.valid_order for j in self.upper.values())

    def is_zero_up_to(self, order: int) -> bool:
        return all(j.is_zero_up_to(order) for j in self.upper.values())


class CubicForm:
    def __init__(self, n: int, comps: Mapping[tuple[int, int, int], Jet]):
        keys = {
            (i, j, k)
            for i in range(1, n + 1)
            for j in range(1, n + 1)
            for k in range(1, n + 1)
        }
        if set(comps) != keys:
            raise DimensionMismatchError("incomplete cubic-form table")
        _common_shape(comps.values())
        self.n = n
        self.comps = dict(comps)

    def comp(self, i: int, j: int, k: int) -> Jet:
        return self.comps[(i, j, k)]


def _constant_matrix_invertible(rows: list[list[Fraction]]) -> bool:
    m = [row[:] for row in rows]
    size = len(m)
    for col in range(size):
        pivot = next((r for r in range(col, size) if m[r][col] != 0), None)
        if pivot is None:
            return False
        m[col], m[pivot] = m[pivot], m[col]
        inv = 1 / m[col][col]
        m[col] = [inv * v for v in m[col]]
        for r in range(size):
            if r != col and m[r][col] != 0:
                f = m[r][col]
                m[r] = [a - f * b for a, b in zip(m[r], m[col])]
    return True


class Metric(Bilinear):
    """Symmetric (0,2)-tensor with invertible constant-term matrix."""

    def __init__(self, n: int, comps: Mapping[tuple[int, int], Jet]):
        full = dict(comps)
        for i in range(1, n + 1):
            for j in range(i + 1, n + 1):
                if (i, j) in full and (j, i) not in full:
                    full[(j, i)] = full[(i, j)]
                elif (j, i) in full and (i, j) not in full:
                    full[(i, j)] = full[(j, i)]
        super().__init__(n, full)
        if not self.is_symmetric_table():
            raise DimensionMismatchError("metric table is not symmetric")
        const = [
            [self.comps[(i, j)].constant_term for j in range(1, n + 1)]
            for i in range(1, n + 1)
        ]
        if not _constant_matrix_invertible(const):
            raise SingularJetError("metric constant-term matrix is singular")
        self.normalized_at_zero = all(
            self.comps[(i, j)].constant_term == (1 if i == j else 0)
            for i in range(1, n + 1)
            for j in range(1, n + 1)
        )

    @classmethod
    def identity(cls, n: int, max_degree: int) -> "Metric":
        one = Jet.one(n, max_degree)
        zero = Jet.zero(n, max_degree)
        return cls(
            n,
            {
                (i, j): (one if i == j else zero)
                for i in range(1, n + 1)
                for j in range(i, n + 1)
            },
        )


# ---------------------------------------------------------------------------
# curvature machinery


def divergence_form(conn: Connection) -> OneForm:
    """The 1-form D_j = sum_k gamma[k;k,j] (divergence of the coordinate fields)."""
    rng = range(1, conn.n + 1)
    return OneForm(
        conn.n, {j: _sum_jets(conn.gamma[(k, k, j)] for k in rng) for j in rng}
    )


def ricci(conn: Connection) -> Bilinear:
    """Ricci tensor of a connection from its Christoffel symbols:

        Ric_ij = sum_k [(G^k_ij)_k - (G^k_kj)_i]
                 + sum_{k,l} [G^l_ij G^k_kl - G^l_kj G^k_il]
    """
    n = conn.n
    rng = range(1, n + 1)
    g = conn.gamma
    div = divergence_form(conn)
    out = {}
    for i in rng:
        for j in rng:
            deriv = _sum_jets(g[(k, i, j)].partial(k) for k in rng) - div.comp(j).partial(i)
            quad1 = _sum_jets(g[(l, i, j)] * div.comp(l) for l in rng)
            quad2 = _sum_jets(g[(l, k, j)] * g[(k, i, l)] for k in rng for l in rng)
            out[(i, j)] = deriv + quad1 - quad2
    return Bilinear(n, out)


def ricci_derivative_part(conn: Connection) -> Bilinear:
    """Only the derivative terms sum_k [(G^k_ij)_k - (G^k_kj)_i]."""
    n = conn.n
    rng = range(1, n + 1)
    g = conn.gamma
    div = divergence_form(conn)
    return Bilinear(
        n,
        {
            (i, j): _sum_jets(g[(k, i, j)].partial(k) for k in rng)
            - div.comp(j).partial(i)
            for i in rng
            for j in rng
        },
    )


def lambda_term(conn: Connection) -> Bilinear:
    """Quadratic Christoffel contraction entering the prescribed-Ricci
    right-hand sides: L_ij = sum_{k,l} [G^l_kj G^k_il - G^l_ij G^k_kl].
    Note ricci = ricci_derivative_part - lambda_term."""
    n = conn.n
    rng = range(1, n + 1)
    g = conn.gamma
    div = divergence_form(conn)
    out = {}
    for i in rng:
        for j in rng:
            quad2 = _sum_jets(g[(l, k, j)] * g[(k, i, l)] for k in rng for l in rng)
            quad1 = _sum_jets(g[(l, i, j)] * div.comp(l) for l in rng)
            out[(i, j)] = quad2 - quad1
    return Bilinear(n, out)


def torsion(conn: Connection) -> dict[tuple[int, int, int], Jet]:
    """T^k_ij = G^k_ij - G^k_ji."""
    rng = range(1, conn.n + 1)
    return {
        (k, i, j): conn.gamma[(k, i, j)] - conn.gamma[(k, j, i)]
        for k in rng
        for i in rng
        for j in rng
    }


def torsion_trace(conn: Connection) -> OneForm:
    """tau_j = sum_i (G^i_ij - G^i_ji)."""
    rng = range(1, conn.n + 1)
    return OneForm(
        conn.n,
        {
            j: _sum_jets(conn.gamma[(i, i, j)] - conn.gamma[(i, j, i)] for i in rng)
            for j in rng
        },
    )


def split(b: Bilinear) -> tuple[Bilinear, TwoForm]:
    """Symmetric / antisymmetric decomposition b = s + a (coefficient-exact)."""
    n = b.n
    rng = range(1, n + 1)
    sym = {}
    for i in rng:
        for j in rng:
            if i <= j:
                s = (b.comp(i, j) + b.comp(j, i)).scale(HALF)
                sym[(i, j)] = s
                sym[(j, i)] = s
    upper = {
        (i, j): (b.comp(i, j) - b.comp(j, i)).scale(HALF)
        for i in rng
        for j in rng
        if i < j
    }
    return Bilinear(n, sym), TwoForm(n, upper)


def two_form_closed(a: TwoForm, order: int) -> bool:
    """True iff (a_ij)_k + (a_jk)_i + (a_ki)_j = 0 up to total degree `order`
    for all i < j < k (vacuously true when n = 2)."""
    n = a.n
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            for k in range(j + 1, n + 1):
                cyc = (
                    a.comp(i, j).partial(k)
                    + a.comp(j, k).partial(i)
                    + a.comp(k, i).partial(j)
                )
                if not cyc.is_zero_up_to(order):
                    return False
    return True


def _radial_homotopy(jet: Jet, axis: int, denom_shift: int, numer: int = 1) -> Jet:
    """Push every degree-m monomial up by x^axis with weight numer/(m+denom_shift)."""
    n, cap = jet.n, jet.max_degree
    exps = mi.exponents(n, cap)
    ranks = mi.rank_of(n, cap)
    out = [ZERO] * len(jet.coeffs)
    for r, c in enumerate(jet.coeffs):
        if not c:
            continue
        e = exps[r]
        m = sum(e)
        if m + 1 > cap:
            continue
        target = list(e)
        target[axis - 1] += 1
        out[ranks[tuple(target)]] += c * Fraction(numer, m + denom_shift)
    return Jet(n, cap, out, min(jet.valid_order + 1, cap))


def primitive_of_two_form(a: TwoForm) -> OneForm:
    """A 1-form alpha with (alpha_i)_j - (alpha_j)_i = 2 a_ij, by the radial
    homotopy (a degree-m monomial of a contributes with weight 2/(m+2))."""
    n, cap = a.shape
    working = max(a.min_valid() - 1, 0)
    if not two_form_closed(a, working):
        raise NotClosedError(f"2-form is not closed up to degree {working}")
    comps = {}
    for i in range(1, n + 1):
        total = Jet.zero(n, cap, valid_order=min(a.min_valid() + 1, cap))
        for j in range(1, n + 1):
            if j != i:
                total = total + _radial_homotopy(a.comp(i, j), j, 2, 2)
        comps[i] = total
    return OneForm(n, comps)


def potential_of_one_form(d: OneForm) -> Jet:
    """A function f with grad f = d and f(0) = 0, by the radial homotopy
    (a degree-m monomial of d contributes with weight 1/(m+1))."""
    n, cap = d.shape
    working = max(d.min_valid() - 1, 0)
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            gap = d.comp(i).partial(j) - d.comp(j).partial(i)
            if not gap.is_zero_up_to(working):
                raise NotClosedError(f"1-form is not closed up to degree {working}")
    total = Jet.zero(n, cap, valid_order=min(d.min_valid() + 1, cap))
    for k in range(1, n + 1):
        total = total + _radial_homotopy(d.comp(k), k, 1, 1)
    return total


def nabla_g(conn: Connection, g: Metric) -> CubicForm:
    """(nabla g)_ijk = (g_jk)_i - sum_l G^l_ij g_lk - sum_l G^l_ik g_jl."""
    n = conn.n
    rng = range(1, n + 1)
    out = {}
    for i in rng:
        for j in rng:
            for k in rng:
                out[(i, j, k)] = (
                    g.comp(j, k).partial(i)
                    - _sum_jets(conn.gamma[(l, i, j)] * g.comp(l, k) for l in rng)
                    - _sum_jets(conn.gamma[(l, i, k)] * g.comp(j, l) for l in rng)
                )
    return CubicForm(n, out)


def is_codazzi(conn: Connection, g: Metric, order: int) -> bool:
    """Total symmetry of nabla g, tested on the reduced index set
    {(i, j, k): i < j, i <= k} which is equivalent to all permutations."""
    ng = nabla_g(conn, g)
    n = conn.n
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            for k in range(i, n + 1):
                gap = ng.comp(i, j, k) - ng.comp(j, i, k)
                if not gap.is_zero_up_to(order):
                    return False
    return True


def metric_inverse(g: Metric) -> dict[tuple[int, int], Jet]:
    """Componentwise inverse matrix of jets, by Gaussian elimination with
    pivoting on constant terms."""
    n, cap = g.shape
    rows = [
        [g.comp(i, j) for j in range(1, n + 1)]
        + [Jet.constant(1 if j == i else 0, n, cap) for j in range(1, n + 1)]
        for i in range(1, n + 1)
    ]
    for col in range(n):
        pivot = next(
            (r for r in range(col, n) if rows[r][col].constant_term != 0), None
        )
        if pivot is None:
            raise SingularJetError("jet matrix not invertible at the origin")
        rows[col], rows[pivot] = rows[pivot], rows[col]
        inv = rows[col][col].reciprocal()
        rows[col] = [entry * inv for entry in rows[col]]
        for r in range(n):
            if r != col:
                factor = rows[r][col]
                if any(factor.coeffs):
                    rows[r] = [
                        a - factor * b for a, b in zip(rows[r], rows[col])
                    ]
    return {
        (i + 1, j + 1): rows[i][n + j] for i in range(n) for j in range(n)
    }


def levi_civita(g: Metric) -> Connection:
    """Christoffel symbols of the Levi-Civita connection:

        G^s_ij = 1/2 sum_k g^{sk} ((g_ki)_j + (g_jk)_i - (g_ji)_k)
    """
    n = g.n
    rng = range(1, n + 1)
    inv = metric_inverse(g)
    dg = {
        (a, b, c): g.comp(a, b).partial(c) for a in rng for b in rng for c in rng
    }
    lower = {}
    for i in rng:
        for j in rng:
            if i > j:
                continue
            for s in rng:
                lower[(s, (i, j))] = _sum_jets(
                    inv[(s, k)] * (dg[(k, i, j)] + dg[(j, k, i)] - dg[(j, i, k)])
                    for k in rng
                ).scale(HALF)
    return Connection.from_symmetric(n, lower)


def levi_civita_diagonal_2d(g: Metric) -> Connection:
    """Closed-form 2D diagonal-metric Christoffel symbols (fast path used to
    cross-check the general elimination route)."""
    _require_diagonal_2d(g)
    g11, g22 = g.comp(1, 1), g.comp(2, 2)
    inv11, inv22 = g11.reciprocal(), g22.reciprocal()
    lower = {
        (1, (1, 1)): (inv11 * g11.partial(1)).scale(HALF),
        (2, (1, 1)): (inv22 * g11.partial(2)).scale(-HALF),
        (1, (1, 2)): (inv11 * g11.partial(2)).scale(HALF),
        (2, (1, 2)): (inv22 * g22.partial(1)).scale(HALF),
        (1, (2, 2)): (inv11 * g22.partial(1)).scale(-HALF),
        (2, (2, 2)): (inv22 * g22.partial(2)).scale(HALF),
    }
    return Connection.from_symmetric(2, lower)


def _require_diagonal_2d(g: Metric):
    if g.n != 2:
        raise DimensionMismatchError("diagonal 2D routine needs n = 2")
    if any(g.comp(1, 2).coeffs):
        raise RejectionError(
            "prescribed-tensor-not-diagonal", "offdiagonal component is nonzero"
        )
    if g.comp(1, 1).constant_term == 0 or g.comp(2, 2).constant_term == 0:
        raise SingularJetError("diagonal entry vanishes at the origin")


def sectional_curvature_2d(g: Metric) -> Jet:
    """Scalar f with Ric(levi_civita(g)) = f g for a diagonal 2D metric:

        f = -1/2 g11^-1 g22^-1 [(g11)_22 + (g22)_11]
            + 1/4 g11^-1 (g22^-1)^2 [(g22)_2 (g11)_2 + ((g22)_1)^2]
            + 1/4 (g11^-1)^2 g22^-1 [(g11)_1 (g22)_1 + ((g11)_2)^2]
    """
    _require_diagonal_2d(g)
    g11, g22 = g.comp(1, 1), g.comp(2, 2)
    i11, i22 = g11.reciprocal(), g22.reciprocal()
    t1 = (i11 * i22 * (g11.partial(2).partial(2) + g22.partial(1).partial(1))).scale(
        -HALF
    )
    t2 = (
        i11
        * i22
        * i22
        * (g22.partial(2) * g11.partial(2) + g22.partial(1) * g22.partial(1))
    ).scale(Fraction(1, 4))
    t3 = (
        i11
        * i11
        * i22
        * (g11.partial(1) * g22.partial(1) + g11.partial(2) * g11.partial(2))
    ).scale(Fraction(1, 4))
    return t1 + t2 + t3


def parallel_volume_2d(conn: Connection) -> Jet:
    """The parallel area density nu with nu(0) = 1: d/dx^k nu = t_k nu for the
    trace form t_k = G^1_k1 + G^2_k2, which must be closed (equivalently the
    Ricci tensor is symmetric for a torsion-free connection)."""
    if conn.n != 2:
        raise DimensionMismatchError("parallel volume routine needs n = 2")
    t = OneForm(
        2,
        {
            k: conn.gamma[(1, k, 1)] + conn.gamma[(2, k, 2)]
            for k in (1, 2)
        },
    )
    working = max(t.min_valid() - 1, 0)
    gap = t.comp(1).partial(2) - t.comp(2).partial(1)
    if not gap.is_zero_up_to(working):
        raise RejectionError(
            "ricci-not-symmetric",
            "trace form is not closed, so no parallel volume form exists",
        )
    return potential_of_one_form(t).exp()
