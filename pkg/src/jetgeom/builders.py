"""Theorem-level builders: assemble the Cauchy-Kowalevski systems and the
algebraic eliminations for each construction, consume the free data, solve,
and return reports whose residual checks all passed.

Free-data slots are named after the component they fill: a Christoffel slot
"k;i,j" is the symbol with upper index k and lower indices (i, j); a metric
slot "g;i,j" is the metric component. The gauge-function slot of the
torsion-free construction is called "phi".

The prescribed-Ricci right-hand sides are not hard-coded from any display:
each equation is generated mechanically from the Ricci formula by listing its
derivative terms as (coefficient, symbol, axis) atoms, substituting the
algebraically determined symbols, cancelling, and isolating the single
remaining x1-derivative of an unknown. Assembly asserts that exactly one such
atom survives per equation and that no other x1-derivative of an unknown or
determined symbol is consumed, which is the structural form required by the
solver's degree-by-degree stabilization.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping

from .ck import (
    FirstOrderSystem,
    SecondOrderSystem,
    solve_first_order,
    solve_second_order,
)
from .errors import RejectionError
from .geometry import (
    Bilinear,
    Connection,
    Metric,
    OneForm,
    divergence_form,
    is_codazzi,
    levi_civita,
    parallel_volume_2d,
    potential_of_one_form,
    primitive_of_two_form,
    ricci,
    split,
    torsion_trace,
    two_form_closed,
)
from .jets import Jet, SliceJet, as_fraction, random_poly

HALF = Fraction(1, 2)

CONSTRUCTIONS = ("general", "trace-free-torsion", "torsion-free", "statistical")


# ---------------------------------------------------------------------------
# slot naming


def gamma_slot(k: int, i: int, j: int) -> str:
    return f"{k};{i},{j}"


def metric_slot(i: int, j: int) -> str:
    return f"g;{i},{j}"


def parse_slot(slot: str) -> tuple:
    head, lower = slot.split(";")
    i, j = (int(v) for v in lower.split(","))
    if head == "g":
        return ("g", i, j)
    return (int(head), i, j)


def _pair(i: int, j: int) -> tuple[int, int]:
    return (i, j) if i <= j else (j, i)


# ---------------------------------------------------------------------------
# censuses


@dataclass(frozen=True)
class Census:
    """Explicit slot lists for one construction: which component functions are
    freely choosable, which initial slices are prescribed, which symbols the
    CK solver produces, and which are determined algebraically."""

    construction: str
    n: int
    free_function_slots: tuple[str, ...]
    initial_slice_slots: tuple[str, ...]
    ck_unknowns: tuple[str, ...]
    determined: tuple[str, ...]


def _general_unknown_keys(n: int) -> list[tuple[int, int, int]]:
    keys = [(n, n, j) for j in range(1, n + 1)]
    keys += [(1, i, j) for i in range(2, n + 1) for j in range(1, n + 1)]
    return keys


def _trace_free_determined_keys(n: int) -> list[tuple[int, int, int]]:
    keys = [(k + 1, k, k + 1) for k in range(1, n)]
    keys.append((n - 1, n, n - 1))
    return keys


def _torsion_free_unknown_pairs(n: int) -> list[tuple[int, tuple[int, int]]]:
    keys = [(2, (1, 2))]
    keys += [(1, (1, i)) for i in range(2, n + 1)]
    keys += [(1, (i, j)) for i in range(2, n + 1) for j in range(i, n + 1)]
    return keys


def _torsion_free_determined_pairs(n: int) -> list[tuple[int, tuple[int, int]]]:
    return [(1, (1, 1))] + [(k, (k, k)) for k in range(2, n + 1)]


def _statistical_determined_pairs(n: int) -> list[tuple[int, tuple[int, int]]]:
    keys = []
    for k in range(2, n + 1):  # lower (1, k), upper t > k
        for t in range(k + 1, n + 1):
            keys.append((t, (1, k)))
    for i in range(2, n + 1):  # lower (i, i), upper t >= 2, t != i
        for t in range(2, n + 1):
            if t != i:
                keys.append((t, (i, i)))
    for i in range(2, n + 1):  # lower (i, k) with i < k, upper t > i, t != k
        for k in range(i + 1, n + 1):
            for t in range(i + 1, n + 1):
                if t != k:
                    keys.append((t, (i, k)))
    return keys


def _statistical_unknown_pairs(n: int) -> list[tuple[int, int]]:
    return [
        (i, j)
        for i in range(1, n + 1)
        for j in range(i, n + 1)
        if (i, j) != (1, 1)
    ]


def _all_gamma_keys(n: int) -> list[tuple[int, int, int]]:
    return [
        (k, i, j)
        for k in range(1, n + 1)
        for i in range(1, n + 1)
        for j in range(1, n + 1)
    ]


def _all_pair_keys(n: int) -> list[tuple[int, tuple[int, int]]]:
    return [
        (k, (i, j))
        for k in range(1, n + 1)
        for i in range(1, n + 1)
        for j in range(i, n + 1)
    ]


def census(construction: str, n: int) -> Census:
    """Slot lists for (construction, n); raises RejectionError when the
    combination is unsupported."""
    if construction not in CONSTRUCTIONS:
        raise RejectionError(
            "unsupported-construction", f"unknown construction {construction!r}"
        )
    minimum = 3 if construction in ("trace-free-torsion", "statistical") else 2
    if n < minimum:
        raise RejectionError(
            "unsupported-construction",
            f"{construction} needs n >= {minimum}, got {n}",
        )

    if construction == "general":
        unknowns = _general_unknown_keys(n)
        free = [k for k in _all_gamma_keys(n) if k not in set(unknowns)]
        return Census(
            construction,
            n,
            tuple(gamma_slot(*k) for k in free),
            tuple(gamma_slot(*k) for k in unknowns),
            tuple(gamma_slot(*k) for k in unknowns),
            (),
        )

    if construction == "trace-free-torsion":
        unknowns = _general_unknown_keys(n)
        determined = _trace_free_determined_keys(n)
        blocked = set(unknowns) | set(determined)
        free = [k for k in _all_gamma_keys(n) if k not in blocked]
        return Census(
            construction,
            n,
            tuple(gamma_slot(*k) for k in free),
            tuple(gamma_slot(*k) for k in unknowns),
            tuple(gamma_slot(*k) for k in unknowns),
            tuple(gamma_slot(*k) for k in determined),
        )

    if construction == "torsion-free":
        unknowns = _torsion_free_unknown_pairs(n)
        determined = _torsion_free_determined_pairs(n)
        blocked = set(unknowns) | set(determined)
        free = [k for k in _all_pair_keys(n) if k not in blocked]
        slots = tuple(gamma_slot(k, i, j) for k, (i, j) in free) + ("phi",)
        return Census(
            construction,
            n,
            slots,
            tuple(gamma_slot(k, i, j) for k, (i, j) in unknowns),
            tuple(gamma_slot(k, i, j) for k, (i, j) in unknowns),
            tuple(gamma_slot(k, i, j) for k, (i, j) in determined),
        )

    unknowns = _statistical_unknown_pairs(n)
    determined = _statistical_determined_pairs(n)
    free = [k for k in _all_pair_keys(n) if k not in set(determined)]
    slots = tuple(gamma_slot(k, i, j) for k, (i, j) in free) + (metric_slot(1, 1),)
    return Census(
        construction,
        n,
        slots,
        tuple(metric_slot(i, j) for i, j in unknowns),
        tuple(metric_slot(i, j) for i, j in unknowns),
        tuple(gamma_slot(k, i, j) for k, (i, j) in determined),
    )


# ---------------------------------------------------------------------------
# free data


@dataclass(frozen=True)
class FreeData:
    """Explicit assignment of the freely choosable functions and initial
    slices a census enumerates; the torsion-free gauge function is carried
    separately under its own field."""

    free_functions: dict[str, Jet]
    initial_slices: dict[str, SliceJet]
    gauge_function: Jet | None = None


def _validate_free_data(cen: Census, fd: FreeData, n: int, cap: int):
    wanted = set(cen.free_function_slots) - {"phi"}
    if set(fd.free_functions) != wanted:
        raise RejectionError(
            "slot-mismatch",
            f"free-function slots {sorted(fd.free_functions)} do not match the "
            f"census {sorted(wanted)}",
        )
    if set(fd.initial_slices) != set(cen.initial_slice_slots):
        raise RejectionError(
            "slot-mismatch",
            f"initial-slice slots {sorted(fd.initial_slices)} do not match the "
            f"census {sorted(cen.initial_slice_slots)}",
        )
    if fd.gauge_function is not None and "phi" not in cen.free_function_slots:
        raise RejectionError(
            "slot-mismatch", f"{cen.construction} takes no gauge function"
        )
    for jet in fd.free_functions.values():
        if (jet.n, jet.max_degree) != (n, cap):
            raise RejectionError("slot-mismatch", "free function has wrong workspace")
    for sl in fd.initial_slices.values():
        if (sl.ambient_n, sl.max_degree) != (n, cap):
            raise RejectionError("slot-mismatch", "initial slice has wrong workspace")
    if fd.gauge_function is not None and (
        fd.gauge_function.n,
        fd.gauge_function.max_degree,
    ) != (n, cap):
        raise RejectionError("slot-mismatch", "gauge function has wrong workspace")


def _with_constant(jet: Jet, value) -> Jet:
    coeffs = list(jet.coeffs)
    coeffs[0] = as_fraction(value)
    return Jet(jet.n, jet.max_degree, coeffs, jet.valid_order)


def _slot_normal_value(slot: str):
    kind = parse_slot(slot)
    if kind[0] == "g":
        return 1 if kind[1] == kind[2] else 0
    return None


def zero_free_data(cen: Census, max_degree: int) -> FreeData:
    """All-zero data, except metric slots which keep their required values
    at the origin (g11(0) = 1, delta-normalized slices)."""
    n = cen.n
    free = {}
    for slot in cen.free_function_slots:
        if slot == "phi":
            continue
        jet = Jet.zero(n, max_degree)
        normal = _slot_normal_value(slot)
        if normal is not None:
            jet = _with_constant(jet, normal)
        free[slot] = jet
    slices = {}
    for slot in cen.initial_slice_slots:
        jet = Jet.zero(n - 1, max_degree)
        normal = _slot_normal_value(slot)
        if normal is not None:
            jet = _with_constant(jet, normal)
        slices[slot] = SliceJet(jet)
    return FreeData(free, slices, None)


def random_free_data(
    cen: Census, seed: int, degree: int, coeff_bound: int, max_degree: int
) -> FreeData:
    """Deterministic random data; metric-slot constants are forced to their
    normalization values. The gauge slot, when present, becomes a random
    gauge function."""
    n = cen.n
    rng = random.Random(seed)
    free = {}
    gauge = None
    for slot in cen.free_function_slots:
        jet = random_poly(rng.randrange(2**32), n, degree, coeff_bound, max_degree)
        if slot == "phi":
            gauge = jet
            continue
        normal = _slot_normal_value(slot)
        if normal is not None:
            jet = _with_constant(jet, normal)
        free[slot] = jet
    slices = {}
    for slot in cen.initial_slice_slots:
        jet = random_poly(rng.randrange(2**32), n - 1, degree, coeff_bound, max_degree)
        normal = _slot_normal_value(slot)
        if normal is not None:
            jet = _with_constant(jet, normal)
        slices[slot] = SliceJet(jet)
    return FreeData(free, slices, gauge)


# ---------------------------------------------------------------------------
# reports


@dataclass(frozen=True)
class Check:
    name: str
    order: int
    passed: bool


@dataclass
class BuildReport:
    construction: str
    n: int
    max_degree: int
    prescribed: dict[str, object]
    free_data: FreeData | None
    outputs: dict[str, object]
    checks: list[Check]


def _raise_if_failed(report: BuildReport):
    failed = [c.name for c in report.checks if not c.passed]
    if failed:
        raise RuntimeError(
            f"internal verification failed for {report.construction}: {failed}"
        )


# ---------------------------------------------------------------------------
# prescribed Ricci, full (possibly torsional) Christoffel table


@dataclass(frozen=True)
class _Row:
    pair: tuple[int, int]
    unknown: object
    kept_sign: int
    atoms: tuple[tuple[int, object, int], ...]


def _bump(counter: dict, key, delta: int):
    counter[key] = counter.get(key, 0) + delta


def _full_rows(n: int, unknown_keys, determined_keys) -> list[_Row]:
    """Equations of the full-table prescribed-Ricci system: one per (i, j),
    derivative atoms generated from the Ricci formula, the x1-derivative of
    the designated unknown isolated on the left."""
    unknown_set = set(unknown_keys)
    det_set = set(determined_keys)
    rows = []
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            counter: dict = {}
            for k in range(1, n + 1):
                _bump(counter, ((k, i, j), k), 1)
                _bump(counter, ((k, k, j), i), -1)
            kept_key = (n, n, j) if i == 1 else (1, i, j)
            expected = -1 if i == 1 else 1
            kept = counter.pop((kept_key, 1), 0)
            if kept != expected:
                raise AssertionError(
                    f"equation ({i},{j}): expected coefficient {expected} on the "
                    f"x1-derivative of {kept_key}, found {kept}"
                )
            atoms = tuple(
                sorted((c, sym, ax) for (sym, ax), c in counter.items() if c)
            )
            for c, sym, ax in atoms:
                if ax == 1 and (sym in unknown_set or sym in det_set):
                    raise AssertionError(
                        f"equation ({i},{j}) consumes the x1-derivative of {sym}"
                    )
            rows.append(_Row((i, j), kept_key, expected, atoms))
    return rows


def _lambda_full_table(table: Mapping, n: int) -> dict[tuple[int, int], Jet]:
    """L_ij = sum_{k,l} [G^l_kj G^k_il - G^l_ij G^k_kl] over a raw table."""
    rng = range(1, n + 1)
    div = {}
    for l in rng:
        total = table[(1, 1, l)]
        for k in rng:
            if k > 1:
                total = total + table[(k, k, l)]
        div[l] = total
    out = {}
    for i in rng:
        for j in rng:
            acc = None
            for k in rng:
                for l in rng:
                    term = table[(l, k, j)] * table[(k, i, l)]
                    acc = term if acc is None else acc + term
            for l in rng:
                acc = acc - table[(l, i, j)] * div[l]
            out[(i, j)] = acc
    return out


def _trace_free_determined_exprs(n: int):
    """Solve each vanishing-torsion-trace equation tau_k = 0 for one symbol:
    target = sum_i G^i_ik - sum_{i != i0} G^i_ki with target = G^{i0}_{k,i0}."""
    out = []
    for k in range(1, n + 1):
        i0 = k + 1 if k < n else n - 1
        target = (i0, k, i0)
        terms = [(1, (i, i, k)) for i in range(1, n + 1)]
        terms += [(-1, (i, k, i)) for i in range(1, n + 1) if i != i0]
        out.append((target, tuple(terms)))
    return out


def _build_full_table_ricci(construction: str, r: Bilinear, fd: FreeData) -> BuildReport:
    n = r.n
    _, cap = r.shape
    cen = census(construction, n)
    _validate_free_data(cen, fd, n, cap)

    unknown_keys = _general_unknown_keys(n)
    labels = {key: gamma_slot(*key) for key in unknown_keys}
    free_jets = {
        parse_slot(slot): jet for slot, jet in fd.free_functions.items()
    }
    determined_exprs = (
        _trace_free_determined_exprs(n) if construction == "trace-free-torsion" else []
    )
    rows = _full_rows(n, unknown_keys, [t for t, _ in determined_exprs])

    def assemble(unknown_values: Mapping[str, Jet]) -> dict:
        table = dict(free_jets)
        for key, lab in labels.items():
            table[key] = unknown_values[lab]
        for target, terms in determined_exprs:
            total = None
            for sign, key in terms:
                term = table[key] if sign == 1 else -table[key]
                total = term if total is None else total + term
            table[target] = total
        return table

    def rhs(unknown_values: dict[str, Jet]) -> dict[str, Jet]:
        table = assemble(unknown_values)
        lam = _lambda_full_table(table, n)
        out = {}
        for row in rows:
            i, j = row.pair
            acc = lam[(i, j)] + r.comp(i, j)
            for c, sym, ax in row.atoms:
                acc = acc - table[sym].partial(ax).scale(c)
            if row.kept_sign == -1:
                acc = -acc
            out[labels[row.unknown]] = acc
        return out

    system = FirstOrderSystem(
        tuple(labels[key] for key in unknown_keys),
        rhs,
        {labels[key]: fd.initial_slices[labels[key]] for key in unknown_keys},
    )
    solution = solve_first_order(system)
    table = assemble(solution.values)
    conn = Connection(n, table, symmetric=False)

    checks = [
        _check_ricci_residual(conn, r, cap - 1),
        _check_initial_slices(solution.values, fd, cap),
        _check_free_functions_connection(conn, fd, cap),
    ]
    if construction == "trace-free-torsion":
        tau = torsion_trace(conn)
        checks.append(
            Check(
                "torsion-trace-zero",
                cap,
                all(tau.comp(j).is_zero_up_to(cap) for j in range(1, n + 1)),
            )
        )
    report = BuildReport(
        construction,
        n,
        cap,
        {"r": r},
        fd,
        {"connection": conn},
        checks,
    )
    _raise_if_failed(report)
    return report


def build_prescribed_ricci_general(r: Bilinear, fd: FreeData) -> BuildReport:
    """Connection with prescribed Ricci tensor and unconstrained torsion."""
    return _build_full_table_ricci("general", r, fd)


def build_prescribed_ricci_trace_free_torsion(r: Bilinear, fd: FreeData) -> BuildReport:
    """Connection with prescribed Ricci tensor and vanishing torsion trace
    (needs n >= 3): one Christoffel symbol per coordinate is solved from the
    trace equations and substituted before the CK solve."""
    return _build_full_table_ricci("trace-free-torsion", r, fd)


# ---------------------------------------------------------------------------
# prescribed Ricci, torsion-free (symmetric table)


def _torsion_free_det_exprs(n: int):
    """Divergence-form substitutions: the (1,1) symbol from the first
    equation, the (k,k) diagonal symbol from equation k for k >= 2. Atoms
    reference ("d", k), the prescribed divergence component, or ("g", pair)."""
    exprs = {}
    exprs[(1, (1, 1))] = ((1, ("d", 1)),) + tuple(
        (-1, ("g", (k, _pair(1, k)))) for k in range(2, n + 1)
    )
    for k in range(2, n + 1):
        exprs[(k, (k, k))] = ((1, ("d", k)),) + tuple(
            (-1, ("g", (l, _pair(l, k)))) for l in range(1, n + 1) if l != k
        )
    return exprs


def _torsion_free_rows(n: int) -> list[_Row]:
    unknown_set = set(_torsion_free_unknown_pairs(n))
    det_exprs = _torsion_free_det_exprs(n)
    det_set = set(det_exprs)
    rows = []
    pairs = [(1, 1)] + [(1, i) for i in range(2, n + 1)] + [
        (i, j) for i in range(2, n + 1) for j in range(i, n + 1)
    ]
    for i, j in pairs:
        # choose the Ricci component whose equation isolates this row's unknown
        inst = (1, 1) if (i, j) == (1, 1) else ((j, 1) if i == 1 else (i, j))
        a, b = inst
        counter: dict = {}
        for k in range(1, n + 1):
            _bump(counter, (("g", (k, _pair(a, b))), k), 1)
            _bump(counter, (("g", (k, _pair(k, b))), a), -1)
        expanded: dict = {}
        for (sym, ax), c in counter.items():
            if not c:
                continue
            if sym[0] == "g" and sym[1] in det_exprs:
                for sign, sub in det_exprs[sym[1]]:
                    _bump(expanded, (sub, ax), c * sign)
            else:
                _bump(expanded, (sym, ax), c)
        if (i, j) == (1, 1):
            kept_pair, expected = (2, (1, 2)), -1
        elif i == 1:
            kept_pair, expected = (1, (1, j)), 1
        else:
            kept_pair, expected = (1, (i, j)), 1
        kept = expanded.pop((("g", kept_pair), 1), 0)
        if kept != expected:
            raise AssertionError(
                f"row ({i},{j}): expected coefficient {expected} on {kept_pair}"
            )
        atoms = tuple(sorted((c, sym, ax) for (sym, ax), c in expanded.items() if c))
        for c, sym, ax in atoms:
            if sym[0] == "g" and ax == 1 and (sym[1] in unknown_set or sym[1] in det_set):
                raise AssertionError(f"row ({i},{j}) consumes d/dx1 of {sym[1]}")
        rows.append(_Row(inst, kept_pair, expected, atoms))
    return rows


def _lambda_pair_table(table: Mapping, n: int) -> dict[tuple[int, int], Jet]:
    full = {
        (k, i, j): table[(k, _pair(i, j))]
        for k in range(1, n + 1)
        for i in range(1, n + 1)
        for j in range(1, n + 1)
    }
    return _lambda_full_table(full, n)


def build_prescribed_ricci_torsion_free(r: Bilinear, fd: FreeData) -> BuildReport:
    """Torsion-free connection with prescribed Ricci tensor. The prescribed
    tensor is accepted iff its antisymmetric part is closed; a primitive plus
    the gauge gradient fixes the divergence functions, the diagonal-type
    symbols are substituted away, and the symmetric CK system is solved."""
    n = r.n
    _, cap = r.shape
    cen = census("torsion-free", n)
    _validate_free_data(cen, fd, n, cap)

    sym_part, anti = split(r)
    closed_order = max(anti.min_valid() - 1, 0)
    if not two_form_closed(anti, closed_order):
        raise RejectionError(
            "antisymmetric-part-not-closed",
            f"antisymmetric part of the prescribed tensor is not closed up to "
            f"degree {closed_order}",
        )
    alpha0 = primitive_of_two_form(anti)
    phi = fd.gauge_function if fd.gauge_function is not None else Jet.zero(n, cap)
    alpha = {k: alpha0.comp(k) + phi.partial(k) for k in range(1, n + 1)}

    unknown_pairs = _torsion_free_unknown_pairs(n)
    labels = {key: gamma_slot(key[0], key[1][0], key[1][1]) for key in unknown_pairs}
    free_jets = {}
    for slot, jet in fd.free_functions.items():
        k, i, j = parse_slot(slot)
        free_jets[(k, (i, j))] = jet
    det_exprs = _torsion_free_det_exprs(n)
    rows = _torsion_free_rows(n)

    def assemble(unknown_values: Mapping[str, Jet]) -> dict:
        table = dict(free_jets)
        for key, lab in labels.items():
            table[key] = unknown_values[lab]
        for target, terms in det_exprs.items():
            total = None
            for sign, sub in terms:
                jet = alpha[sub[1]] if sub[0] == "d" else table[sub[1]]
                term = jet if sign == 1 else -jet
                total = term if total is None else total + term
            table[target] = total
        return table

    def rhs(unknown_values: dict[str, Jet]) -> dict[str, Jet]:
        table = assemble(unknown_values)
        lam = _lambda_pair_table(table, n)
        out = {}
        for row in rows:
            a, b = row.pair
            acc = lam[(a, b)] + r.comp(a, b)
            for c, sym, ax in row.atoms:
                jet = alpha[sym[1]] if sym[0] == "d" else table[sym[1]]
                acc = acc - jet.partial(ax).scale(c)
            if row.kept_sign == -1:
                acc = -acc
            out[labels[row.unknown]] = acc
        return out

    system = FirstOrderSystem(
        tuple(labels[key] for key in unknown_pairs),
        rhs,
        {labels[key]: fd.initial_slices[labels[key]] for key in unknown_pairs},
    )
    solution = solve_first_order(system)
    table = assemble(solution.values)
    conn = Connection.from_symmetric(n, table)

    checks = [
        _check_ricci_residual(conn, r, cap - 1),
        Check("connection-symmetric", cap, conn.is_symmetric_table()),
        _check_initial_slices(solution.values, fd, cap),
        _check_free_functions_connection(conn, fd, cap),
    ]
    report = BuildReport(
        "torsion-free",
        n,
        cap,
        {"r": r},
        fd,
        {"connection": conn},
        checks,
    )
    _raise_if_failed(report)
    return report


# ---------------------------------------------------------------------------
# 2D metric with prescribed Ricci tensor (second-order solve)


def build_metric_2d_prescribed_ricci(
    r: Bilinear, phi: SliceJet, psi: SliceJet
) -> BuildReport:
    """2D metric g = h r with Ricci tensor equal to the prescribed diagonal
    nondegenerate r. The conformal factor solves a second-order CK equation:
    in the curvature identity the coefficient of (h)_11 is -1/(2h), so the
    right-hand side evaluates the remaining terms and divides."""
    n = r.n
    _, cap = r.shape
    if n != 2:
        raise RejectionError("unsupported-construction", "metric builder needs n = 2")
    r11, r22, r12 = r.comp(1, 1), r.comp(2, 2), r.comp(1, 2)
    if any(r12.coeffs) or any(r.comp(2, 1).coeffs):
        raise RejectionError(
            "prescribed-tensor-not-diagonal", "r must be diagonal in these coordinates"
        )
    if r11.constant_term == 0 or r22.constant_term == 0:
        raise RejectionError(
            "degenerate-prescribed-tensor", "r must be nondegenerate at the origin"
        )
    if phi.constant_term == 0:
        raise RejectionError(
            "initial-value-vanishes", "the initial slice for h must not vanish at 0"
        )

    quarter = Fraction(1, 4)

    def rhs(values: dict[str, Jet]) -> dict[str, Jet]:
        h = values["h"]
        w = h * r11
        v = h * r22
        iv = v.reciprocal()
        iw = w.reciprocal()
        # (v)_11 with the h_11 term removed; the rest of the identity is E
        v11_rest = (h.partial(1) * r22.partial(1)).scale(2) + h * r22.partial(1).partial(1)
        t1 = (iv * (w.partial(2).partial(2) + v11_rest)).scale(-HALF)
        t2 = (iv * iv * (v.partial(2) * w.partial(2) + v.partial(1) * v.partial(1))).scale(
            quarter
        )
        t3 = (iw * iv * (w.partial(1) * v.partial(1) + w.partial(2) * w.partial(2))).scale(
            quarter
        )
        remaining = t1 + t2 + t3
        lead = (iv * r22).scale(-HALF)  # equals -1/(2h) up to the valid order
        return {"h": (r11 - remaining) * lead.reciprocal()}

    system = SecondOrderSystem(("h",), rhs, {"h": phi}, {"h": psi})
    solution = solve_second_order(system)
    h = solution.values["h"]
    metric = Metric(
        2, {(1, 1): h * r11, (1, 2): Jet.zero(2, cap), (2, 2): h * r22}
    )

    checks = [_check_metric_ricci_residual(metric, r, cap - 2)]
    report = BuildReport(
        "metric-2d",
        2,
        cap,
        {"r": r, "phi": phi, "psi": psi},
        None,
        {"metric": metric, "conformal_factor": h},
        checks,
    )
    _raise_if_failed(report)
    return report


# ---------------------------------------------------------------------------
# statistical structures


def _codazzi_ck_rhs(gamma: Mapping, gtable: Mapping, n: int, j: int, k: int) -> Jet:
    """(g_jk)_1 from the symmetry of the cubic form in its first two slots:

        (g_jk)_1 = (g_1k)_j + sum_l (G^l_1j - G^l_j1) g_lk
                   + sum_l G^l_1k g_jl - sum_l G^l_jk g_1l

    The middle sum vanishes for a symmetric connection; keeping it makes the
    same equations serve connections with torsion."""
    acc = gtable[(1, k)].partial(j)
    for l in range(1, n + 1):
        tors = gamma[(l, 1, j)] - gamma[(l, j, 1)]
        if any(tors.coeffs):
            acc = acc + tors * gtable[(l, k)]
        acc = acc + gamma[(l, 1, k)] * gtable[(j, l)]
        acc = acc - gamma[(l, j, k)] * gtable[(1, l)]
    return acc


def build_statistical_2d(
    conn: Connection, g11: Jet, init12: SliceJet, init22: SliceJet
) -> BuildReport:
    """2D metric making the cubic form of an arbitrary analytic connection
    symmetric: g11 is free, g12 and g22 solve a first-order CK system."""
    if conn.n != 2:
        raise RejectionError("unsupported-construction", "needs n = 2")
    _, cap = conn.shape
    if g11.constant_term != 1 or init12.constant_term != 0 or init22.constant_term != 1:
        raise RejectionError(
            "normalization-violated", "need g11(0) = 1, g12(0) = 0, g22(0) = 1"
        )

    def rhs(values: dict[str, Jet]) -> dict[str, Jet]:
        g12, g22 = values[metric_slot(1, 2)], values[metric_slot(2, 2)]
        gtable = {(1, 1): g11, (1, 2): g12, (2, 1): g12, (2, 2): g22}
        return {
            metric_slot(1, 2): _codazzi_ck_rhs(conn.gamma, gtable, 2, 2, 1),
            metric_slot(2, 2): _codazzi_ck_rhs(conn.gamma, gtable, 2, 2, 2),
        }

    system = FirstOrderSystem(
        (metric_slot(1, 2), metric_slot(2, 2)),
        rhs,
        {metric_slot(1, 2): init12, metric_slot(2, 2): init22},
    )
    solution = solve_first_order(system)
    g12 = solution.values[metric_slot(1, 2)]
    g22 = solution.values[metric_slot(2, 2)]
    metric = Metric(2, {(1, 1): g11, (1, 2): g12, (2, 2): g22})

    checks = [
        Check("codazzi", cap - 1, is_codazzi(conn, metric, cap - 1)),
        Check("metric-normalized-at-zero", 0, metric.normalized_at_zero),
        Check(
            "initial-slices",
            cap,
            g12.restrict_x1().same_payload(init12)
            and g22.restrict_x1().same_payload(init22),
        ),
    ]
    report = BuildReport(
        "statistical-2d",
        2,
        cap,
        {"connection": conn, "g11": g11, "init12": init12, "init22": init22},
        None,
        {"metric": metric},
        checks,
    )
    _raise_if_failed(report)
    return report


def build_trace_free_statistical_2d(
    conn: Connection, init12: SliceJet, init22: SliceJet
) -> BuildReport:
    """Trace-free variant: the parallel volume form of the connection pins
    det g = nu^2, so g11 is determined by (nu^2 + g12^2) / g22 and only two
    one-variable slices remain free. Requires symmetric Ricci."""
    if conn.n != 2:
        raise RejectionError("unsupported-construction", "needs n = 2")
    if not conn.symmetric and not conn.is_symmetric_table():
        raise RejectionError("connection-not-symmetric", "needs a torsion-free input")
    _, cap = conn.shape
    if init12.constant_term != 0 or init22.constant_term != 1:
        raise RejectionError(
            "normalization-violated", "need g12(0) = 0, g22(0) = 1"
        )
    volume = parallel_volume_2d(conn)  # rejects when Ricci is not symmetric
    vol_sq = volume * volume

    def g11_from(g12: Jet, g22: Jet) -> Jet:
        return (vol_sq + g12 * g12) * g22.reciprocal()

    def rhs(values: dict[str, Jet]) -> dict[str, Jet]:
        g12, g22 = values[metric_slot(1, 2)], values[metric_slot(2, 2)]
        gtable = {
            (1, 1): g11_from(g12, g22),
            (1, 2): g12,
            (2, 1): g12,
            (2, 2): g22,
        }
        return {
            metric_slot(1, 2): _codazzi_ck_rhs(conn.gamma, gtable, 2, 2, 1),
            metric_slot(2, 2): _codazzi_ck_rhs(conn.gamma, gtable, 2, 2, 2),
        }

    system = FirstOrderSystem(
        (metric_slot(1, 2), metric_slot(2, 2)),
        rhs,
        {metric_slot(1, 2): init12, metric_slot(2, 2): init22},
    )
    solution = solve_first_order(system)
    g12 = solution.values[metric_slot(1, 2)]
    g22 = solution.values[metric_slot(2, 2)]
    g11 = g11_from(g12, g22)
    metric = Metric(2, {(1, 1): g11, (1, 2): g12, (2, 2): g22})

    det_gap = g11 * g22 - g12 * g12 - vol_sq
    checks = [
        Check("codazzi", cap - 1, is_codazzi(conn, metric, cap - 1)),
        Check("volume-determinant", cap, det_gap.is_zero_up_to(cap)),
        Check("metric-normalized-at-zero", 0, metric.normalized_at_zero),
        Check(
            "initial-slices",
            cap,
            g12.restrict_x1().same_payload(init12)
            and g22.restrict_x1().same_payload(init22),
        ),
    ]
    report = BuildReport(
        "trace-free-statistical-2d",
        2,
        cap,
        {"connection": conn, "init12": init12, "init22": init22},
        None,
        {"metric": metric, "volume": volume},
        checks,
    )
    _raise_if_failed(report)
    return report


# ---------------------------------------------------------------------------
# statistical structures, n >= 3


@dataclass(frozen=True)
class _AlgRow:
    """One algebraic cubic-form symmetry condition, jet-linear in the
    determined Christoffel symbols: products are (sign, gamma_pair, g_pair),
    derivatives are (sign, g_pair, axis)."""

    products: tuple[tuple[int, tuple, tuple[int, int]], ...]
    derivatives: tuple[tuple[int, tuple[int, int], int], ...]


def _statistical_alg_rows(n: int) -> list[_AlgRow]:
    rows = []
    # (1, k, j) family, 1 < k < j: determines the symbols with lower (1, k)
    for k in range(2, n + 1):
        for j in range(k + 1, n + 1):
            rows.append(
                _AlgRow(
                    tuple(
                        [(1, (l, _pair(1, k)), _pair(j, l)) for l in range(1, n + 1)]
                        + [(-1, (l, _pair(1, j)), _pair(k, l)) for l in range(1, n + 1)]
                    ),
                    ((1, _pair(1, k), j), (-1, _pair(1, j), k)),
                )
            )
    # (i, j, i) family, i >= 2, j != i: determines diagonal-lower symbols
    for i in range(2, n + 1):
        for j in range(2, n + 1):
            if j == i:
                continue
            rows.append(
                _AlgRow(
                    tuple(
                        [(-1, (l, (i, i)), _pair(j, l)) for l in range(1, n + 1)]
                        + [(1, (l, _pair(j, i)), _pair(i, l)) for l in range(1, n + 1)]
                    ),
                    ((1, _pair(j, i), i), (-1, (i, i), j)),
                )
            )
    # (i, j, k) family, 2 <= i < j, k not in {i, j}, i < k
    for i in range(2, n + 1):
        for j in range(i + 1, n + 1):
            for k in range(i + 1, n + 1):
                if k == j:
                    continue
                rows.append(
                    _AlgRow(
                        tuple(
                            [(-1, (l, _pair(i, k)), _pair(j, l)) for l in range(1, n + 1)]
                            + [
                                (1, (l, _pair(j, k)), _pair(i, l))
                                for l in range(1, n + 1)
                            ]
                        ),
                        ((1, _pair(j, k), i), (-1, _pair(i, k), j)),
                    )
                )
    return rows


def _jet_linear_solve(
    rows: list[dict], rhs: list[Jet], keys: list, n: int, cap: int
) -> dict:
    """Solve a square jet-linear system by Gaussian elimination with pivoting
    on constant terms. Singularity at the origin cannot occur under the
    g(0) = identity normalization, hence the hard assertion."""
    m = len(keys)
    zero = Jet.zero(n, cap)
    a = [[rows[r].get(key, zero) for key in keys] + [rhs[r]] for r in range(m)]
    for col in range(m):
        pivot = next(
            (r for r in range(col, m) if a[r][col].constant_term != 0), None
        )
        assert pivot is not None, "determined-symbol system singular at the origin"
        a[col], a[pivot] = a[pivot], a[col]
        inv = a[col][col].reciprocal()
        a[col] = [entry * inv for entry in a[col]]
        for r in range(m):
            if r != col:
                factor = a[r][col]
                if any(factor.coeffs):
                    a[r] = [x - factor * y for x, y in zip(a[r], a[col])]
    return {key: a[r][m] for r, key in enumerate(keys)}


def solve_determined_christoffels(
    n: int,
    cap: int,
    gtable: Mapping[tuple[int, int], Jet],
    free_gammas: Mapping[tuple, Jet],
    determined_keys: list,
) -> dict:
    """Evaluate the algebraic symmetry conditions on the current metric table
    and solve them simultaneously for the determined Christoffel symbols."""
    det_set = set(determined_keys)
    matrix_rows: list[dict] = []
    rhs_jets: list[Jet] = []
    for row in _statistical_alg_rows(n):
        coeffs: dict = {}
        rhs_acc = None

        def add_rhs(jet):
            nonlocal rhs_acc
            rhs_acc = jet if rhs_acc is None else rhs_acc + jet

        for sign, g_pair, axis in row.derivatives:
            add_rhs(gtable[g_pair].partial(axis).scale(-sign))
        for sign, gamma_key, g_pair in row.products:
            if gamma_key in det_set:
                prev = coeffs.get(gamma_key)
                term = gtable[g_pair] if sign == 1 else -gtable[g_pair]
                coeffs[gamma_key] = term if prev is None else prev + term
            else:
                add_rhs((free_gammas[gamma_key] * gtable[g_pair]).scale(-sign))
        matrix_rows.append(coeffs)
        rhs_jets.append(rhs_acc)
    return _jet_linear_solve(matrix_rows, rhs_jets, determined_keys, n, cap)


def build_statistical_nd(n: int, fd: FreeData) -> BuildReport:
    """Statistical structure in dimension n >= 3: the metric components solve
    the CK system coming from the (1, j, k) symmetry conditions while the
    remaining symmetry conditions are solved, at every evaluation, as a
    jet-linear system for the determined Christoffel symbols."""
    cen = census("statistical", n)
    g11_slot = metric_slot(1, 1)
    if g11_slot not in fd.free_functions:
        raise RejectionError("slot-mismatch", f"missing the {g11_slot} slot")
    cap = fd.free_functions[g11_slot].max_degree
    _validate_free_data(cen, fd, n, cap)
    g11 = fd.free_functions[g11_slot]
    if g11.constant_term != 1:
        raise RejectionError("normalization-violated", "need g11(0) = 1")
    for slot, sl in fd.initial_slices.items():
        _, i, j = parse_slot(slot)
        if sl.constant_term != (1 if i == j else 0):
            raise RejectionError(
                "normalization-violated", f"slice {slot} must start at delta"
            )

    unknown_pairs = _statistical_unknown_pairs(n)
    labels = {pair: metric_slot(*pair) for pair in unknown_pairs}
    determined_keys = _statistical_determined_pairs(n)
    free_gammas = {}
    for slot, jet in fd.free_functions.items():
        parsed = parse_slot(slot)
        if parsed[0] != "g":
            k, i, j = parsed
            free_gammas[(k, (i, j))] = jet

    def metric_table(unknown_values: Mapping[str, Jet]) -> dict:
        gtable = {(1, 1): g11}
        for pair in unknown_pairs:
            jet = unknown_values[labels[pair]]
            gtable[pair] = jet
            gtable[(pair[1], pair[0])] = jet
        return gtable

    def full_gamma(det_values: Mapping) -> dict:
        gamma = {}
        for key, jet in free_gammas.items():
            k, (i, j) = key
            gamma[(k, i, j)] = jet
            gamma[(k, j, i)] = jet
        for key, jet in det_values.items():
            k, (i, j) = key
            gamma[(k, i, j)] = jet
            gamma[(k, j, i)] = jet
        return gamma

    def rhs(unknown_values: dict[str, Jet]) -> dict[str, Jet]:
        gtable = metric_table(unknown_values)
        det_values = solve_determined_christoffels(
            n, cap, gtable, free_gammas, determined_keys
        )
        gamma = full_gamma(det_values)
        out = {}
        for j, k in ((p[1], p[0]) for p in unknown_pairs):
            # unknown pair is stored (min, max); the equation reads (g_jk)_1
            out[labels[(k, j)]] = _codazzi_ck_rhs(gamma, gtable, n, j, k)
        return out

    system = FirstOrderSystem(
        tuple(labels[p] for p in unknown_pairs),
        rhs,
        {labels[p]: fd.initial_slices[labels[p]] for p in unknown_pairs},
    )
    solution = solve_first_order(system)
    gtable = metric_table(solution.values)
    det_values = solve_determined_christoffels(
        n, cap, gtable, free_gammas, determined_keys
    )
    conn = Connection.from_symmetric(
        n, {**free_gammas, **det_values}
    )
    metric = Metric(
        n, {pair: gtable[pair] for pair in gtable if pair[0] <= pair[1]}
    )

    checks = [
        Check("codazzi", cap - 1, is_codazzi(conn, metric, cap - 1)),
        Check("metric-normalized-at-zero", 0, metric.normalized_at_zero),
        Check("connection-symmetric", cap, conn.is_symmetric_table()),
        _check_initial_slices(solution.values, fd, cap),
        Check(
            "free-functions",
            cap,
            metric.comp(1, 1).same_payload(g11)
            and all(
                conn.gamma[(k, i, j)].same_payload(free_gammas[(k, (i, j))])
                for k, (i, j) in free_gammas
            ),
        ),
    ]
    report = BuildReport(
        "statistical",
        n,
        cap,
        {},
        fd,
        {"connection": conn, "metric": metric},
        checks,
    )
    _raise_if_failed(report)
    return report


# ---------------------------------------------------------------------------
# shared checks


def _check_ricci_residual(conn: Connection, r: Bilinear, order: int) -> Check:
    res = ricci(conn)
    ok = all(
        (res.comp(i, j) - r.comp(i, j)).is_zero_up_to(order)
        for i in range(1, conn.n + 1)
        for j in range(1, conn.n + 1)
    )
    return Check("ricci-residual", order, ok)


def _check_metric_ricci_residual(metric: Metric, r: Bilinear, order: int) -> Check:
    res = ricci(levi_civita(metric))
    ok = all(
        (res.comp(i, j) - r.comp(i, j)).is_zero_up_to(order)
        for i in range(1, metric.n + 1)
        for j in range(1, metric.n + 1)
    )
    return Check("metric-ricci-residual", order, ok)


def _check_initial_slices(values: Mapping[str, Jet], fd: FreeData, cap: int) -> Check:
    ok = all(
        values[slot].restrict_x1().same_payload(fd.initial_slices[slot])
        for slot in fd.initial_slices
    )
    return Check("initial-slices", cap, ok)


def _check_free_functions_connection(conn: Connection, fd: FreeData, cap: int) -> Check:
    ok = True
    for slot, jet in fd.free_functions.items():
        k, i, j = parse_slot(slot)
        ok = ok and conn.gamma[(k, i, j)].same_payload(jet)
    return Check("free-functions", cap, ok)


# ---------------------------------------------------------------------------
# verification of (possibly reloaded) reports


def verify(report: BuildReport, order: int | None = None) -> bool:
    """Re-run every residual recorded in the report; structural checks keep
    their recorded meaning, residual checks honor an order override."""
    ok = True
    for chk in report.checks:
        o = chk.order if order is None else order
        ok = _run_check(report, chk.name, o, chk.order) and ok
    return ok


def _run_check(report: BuildReport, name: str, order: int, recorded: int) -> bool:
    out = report.outputs
    pre = report.prescribed
    if name == "ricci-residual":
        return _check_ricci_residual(out["connection"], pre["r"], order).passed
    if name == "metric-ricci-residual":
        return _check_metric_ricci_residual(out["metric"], pre["r"], order).passed
    if name == "torsion-trace-zero":
        tau = torsion_trace(out["connection"])
        return all(
            tau.comp(j).is_zero_up_to(order) for j in range(1, report.n + 1)
        )
    if name == "connection-symmetric":
        return out["connection"].is_symmetric_table()
    if name == "codazzi":
        conn = out.get("connection") or pre["connection"]
        return is_codazzi(conn, out["metric"], order)
    if name == "metric-normalized-at-zero":
        return out["metric"].normalized_at_zero
    if name == "volume-determinant":
        g = out["metric"]
        gap = (
            g.comp(1, 1) * g.comp(2, 2)
            - g.comp(1, 2) * g.comp(1, 2)
            - out["volume"] * out["volume"]
        )
        return gap.is_zero_up_to(order)
    if name == "initial-slices":
        if report.free_data is not None:
            table = out.get("connection")
            values = {}
            for slot in report.free_data.initial_slices:
                parsed = parse_slot(slot)
                if parsed[0] == "g":
                    values[slot] = out["metric"].comp(parsed[1], parsed[2])
                else:
                    values[slot] = table.gamma[parsed]
            return _check_initial_slices(
                values, report.free_data, recorded
            ).passed
        g = out["metric"]
        return g.comp(1, 2).restrict_x1().same_payload(
            pre["init12"]
        ) and g.comp(2, 2).restrict_x1().same_payload(pre["init22"])
    if name == "free-functions":
        if report.construction == "statistical":
            g = out["metric"]
            conn = out["connection"]
            ok = g.comp(1, 1).same_payload(
                report.free_data.free_functions[metric_slot(1, 1)]
            )
            for slot, jet in report.free_data.free_functions.items():
                parsed = parse_slot(slot)
                if parsed[0] != "g":
                    ok = ok and conn.gamma[parsed].same_payload(jet)
            return ok
        return _check_free_functions_connection(
            out["connection"], report.free_data, recorded
        ).passed
    raise ValueError(f"unknown check {name!r}")


# ---------------------------------------------------------------------------
# round-trip data extraction (also used by the CLI's round-trip mode)


def random_connection(seed: int, n: int, cap: int, degree: int, bound: int) -> Connection:
    rng = random.Random(seed)
    gamma = {
        key: random_poly(rng.randrange(2**32), n, degree, bound, cap)
        for key in _all_gamma_keys(n)
    }
    return Connection(n, gamma)


def random_symmetric_connection(
    seed: int, n: int, cap: int, degree: int, bound: int
) -> Connection:
    rng = random.Random(seed)
    lower = {
        key: random_poly(rng.randrange(2**32), n, degree, bound, cap)
        for key in _all_pair_keys(n)
    }
    return Connection.from_symmetric(n, lower)


def random_trace_free_connection(
    seed: int, n: int, cap: int, degree: int, bound: int
) -> Connection:
    """Random table whose torsion trace vanishes identically: free and
    CK-unknown slots are random, the trace-equation slots are solved."""
    conn = random_connection(seed, n, cap, degree, bound)
    gamma = dict(conn.gamma)
    for target, terms in _trace_free_determined_exprs(n):
        total = None
        for sign, key in terms:
            term = gamma[key] if sign == 1 else -gamma[key]
            total = term if total is None else total + term
        gamma[target] = total
    return Connection(n, gamma)


def random_normalized_metric(
    seed: int, n: int, cap: int, degree: int, bound: int
) -> Metric:
    rng = random.Random(seed)
    comps = {}
    for i in range(1, n + 1):
        for j in range(i, n + 1):
            jet = random_poly(rng.randrange(2**32), n, degree, bound, cap)
            comps[(i, j)] = _with_constant(jet, 1 if i == j else 0)
    return Metric(n, comps)


def random_prescribed_tensor(
    construction: str, seed: int, n: int, cap: int, degree: int, bound: int
) -> Bilinear:
    """A random prescribed tensor admissible for the given construction: the
    torsion-free builder needs a closed antisymmetric part, so that part is
    produced as the antisymmetrized gradient of a random 1-form."""
    rng = random.Random(seed)
    if construction != "torsion-free":
        comps = {
            (i, j): random_poly(rng.randrange(2**32), n, degree, bound, cap)
            for i in range(1, n + 1)
            for j in range(1, n + 1)
        }
        return Bilinear(n, comps)
    sym = {}
    for i in range(1, n + 1):
        for j in range(i, n + 1):
            jet = random_poly(rng.randrange(2**32), n, degree, bound, cap)
            sym[(i, j)] = jet
            sym[(j, i)] = jet
    omega = {
        k: random_poly(rng.randrange(2**32), n, degree, bound, cap)
        for k in range(1, n + 1)
    }
    comps = {}
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            anti = (omega[i].partial(j) - omega[j].partial(i)).scale(HALF)
            comps[(i, j)] = sym[(i, j)] + anti
    return Bilinear(n, comps)


def connection_round_trip_data(
    construction: str, conn: Connection
) -> tuple[Bilinear, FreeData]:
    """Extract (r, free data) from a known connection so that rebuilding
    reproduces it. For the torsion-free construction the gauge function is
    recovered as the potential of the gap between the divergence form and the
    canonical primitive of the antisymmetric Ricci part."""
    n = conn.n
    cen = census(construction, n)
    r = ricci(conn)
    free = {
        slot: conn.gamma[parse_slot(slot)]
        for slot in cen.free_function_slots
        if slot != "phi"
    }
    slices = {
        slot: conn.gamma[parse_slot(slot)].restrict_x1()
        for slot in cen.initial_slice_slots
    }
    gauge = None
    if construction == "torsion-free":
        anti = split(r)[1]
        alpha0 = primitive_of_two_form(anti)
        dform = divergence_form(conn)
        diff = OneForm(
            n, {k: dform.comp(k) - alpha0.comp(k) for k in range(1, n + 1)}
        )
        gauge = potential_of_one_form(diff)
    return r, FreeData(free, slices, gauge)


def statistical_nd_round_trip_data(g0: Metric) -> tuple[Connection, FreeData]:
    """Free data extracted from (g0, levi_civita(g0)); rebuilding returns the
    pair itself because the metric is parallel for its own connection."""
    n = g0.n
    c0 = levi_civita(g0)
    cen = census("statistical", n)
    free = {}
    for slot in cen.free_function_slots:
        parsed = parse_slot(slot)
        if parsed[0] == "g":
            free[slot] = g0.comp(1, 1)
        else:
            free[slot] = c0.gamma[parsed]
    slices = {
        slot: g0.comp(parse_slot(slot)[1], parse_slot(slot)[2]).restrict_x1()
        for slot in cen.initial_slice_slots
    }
    return c0, FreeData(free, slices, None)
