"""Multiple point spaces of corank-1 germs via divided differences.

For a mono-germ (x, p(x, y), q(x, y)) the k-th multiple point space lives in
(x, y_1, ..., y_k) and is cut out by the iterated divided differences of p and
q of orders 2..k. For multi-germs, a weakly increasing branch tuple groups into
runs of equal branches; each run keeps its own x-block and contributes divided
differences, while consecutive runs are glued by componentwise image equality.
The symmetric group permutes the y-slots; verdicts are taken at the base tuple
point with the local ordering.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from .errors import (
    DegenerateInputError,
    InternalInvariantError,
    SpecValidationError,
    UnsupportedCaseError,
)
from .germs import GermSpec, UnfoldingSpec, source_variables
from .ideals import (
    DEFAULT_LIMITS,
    Ideal,
    Limits,
    StandardBasis,
    colength,
    jacobian_rank_at,
    krull_dimension,
    local_standard_basis,
    normal_form,
    quotient_basis,
    singular_locus_ideal,
)
from .rings import (
    GLOBAL_DEGREVLEX,
    LOCAL_NEGDEGREVLEX,
    Polynomial,
    PolyRing,
    exact_div,
)

VERDICT_EMPTY = "empty"
VERDICT_SMOOTH = "smooth"
VERDICT_ICIS = "icis"
VERDICT_FAT = "fat-points"
VERDICT_FAILS = "fails"

STABLE = "stable"
A_FINITE = "a-finite"
NOT_A_FINITE = "not-a-finite"


@dataclass(frozen=True)
class BranchTuple:
    """Canonical (weakly increasing) tuple of 1-based branch indices."""

    assignment: tuple[int, ...]

    def __post_init__(self):
        if not self.assignment:
            raise DegenerateInputError("empty branch tuple")
        if list(self.assignment) != sorted(self.assignment):
            raise DegenerateInputError("branch tuple must be weakly increasing")

    @property
    def k(self) -> int:
        return len(self.assignment)

    def runs(self) -> list[tuple[int, list[int]]]:
        """(branch index, slot positions) per maximal run of equal branches."""
        out: list[tuple[int, list[int]]] = []
        for slot, b in enumerate(self.assignment):
            if out and out[-1][0] == b:
                out[-1][1].append(slot)
            else:
                out.append((b, [slot]))
        return out

    def stabilizer_order(self) -> int:
        from math import factorial

        order = 1
        for _, slots in self.runs():
            order *= factorial(len(slots))
        return order

    def stabilizer_sign_trivial(self) -> bool:
        # the stabilizer is a product of symmetric groups on the runs; it meets
        # an odd permutation as soon as some run has length two or more
        return all(len(slots) == 1 for _, slots in self.runs())


@dataclass(frozen=True)
class DividedDifferenceSet:
    """Iterated divided differences p[y_1..y_j] for j = 2..k."""

    source: Polynomial
    order: int
    ring: PolyRing
    polys: tuple[Polynomial, ...]


@dataclass
class MultiplePointSpace:
    k: int
    branch_tuple: BranchTuple
    ideal: Ideal
    expected_dim: int
    dim: int
    verdict: str
    num_equations: int
    group: tuple[tuple[int, tuple[str, ...]], ...]  # (branch, its slots' y names) per run
    basis: StandardBasis | None = None

    @property
    def is_proper(self) -> bool:
        return self.verdict != VERDICT_EMPTY

    def point_multiplicity(self, limits: Limits = DEFAULT_LIMITS) -> int | None:
        """Colength at the base tuple point; None when not finite."""
        sb = self.basis if self.basis is not None else local_standard_basis(self.ideal, limits)
        qb = quotient_basis(sb)
        return None if qb is None else len(qb)


def _shift_map(yvars: list[str], j: int) -> dict[str, str]:
    return {yvars[i]: yvars[i + 1] for i in range(j)}


def divided_difference_chain(f: Polynomial, y_name: str, yvars: list[str],
                             target: PolyRing) -> list[Polynomial]:
    """[f(y_1)], [y_1 y_2]f, ..., up to order len(yvars); exact by construction."""
    levels = [f.rename_into(target, {y_name: yvars[0]})]
    for j in range(1, len(yvars)):
        prev = levels[-1]
        shifted = prev.rename_into(target, _shift_map(yvars, j))
        num = prev - shifted
        den = Polynomial.variable(target, yvars[0]) - Polynomial.variable(target, yvars[j])
        levels.append(exact_div(num, den))
    return levels


def divided_differences(p: Polynomial, k: int) -> DividedDifferenceSet:
    """Divided differences of p(x, y) in fresh variables y_1..y_k, orders 2..k."""
    if k < 2:
        raise DegenerateInputError("divided differences need k >= 2")
    src = p.ring
    if "y" not in src.variables:
        raise DegenerateInputError("expected the corank variable to be named y")
    others = tuple(v for v in src.variables if v != "y")
    yvars = [f"y{i}" for i in range(1, k + 1)]
    target = PolyRing(others + tuple(yvars), GLOBAL_DEGREVLEX)
    chain = divided_difference_chain(p, "y", yvars, target)
    return DividedDifferenceSet(p, k, target, tuple(chain[1:]))


def _branch_components(spec: GermSpec | UnfoldingSpec, b: int) -> tuple[list[Polynomial], PolyRing, tuple[str, ...]]:
    """Components of branch b plus the ring they live in and the parameter names."""
    if isinstance(spec, UnfoldingSpec):
        comps = list(spec.total_components(b))
        return comps, spec.param_ring, spec.parameters
    g = spec
    return list(g.branches[b].components), g.ring, ()


def _germ_of(spec: GermSpec | UnfoldingSpec) -> GermSpec:
    return spec.germ if isinstance(spec, UnfoldingSpec) else spec


def dk_ring(spec: GermSpec | UnfoldingSpec, btuple: BranchTuple,
            ordering: str = LOCAL_NEGDEGREVLEX) -> tuple[PolyRing, list[tuple[int, list[int], tuple[str, ...]]]]:
    """The ambient ring of the tuple's multiple point space plus run layout.

    Returns (ring, runs) with runs entries (branch index 0-based, slots, x-names).
    """
    g = _germ_of(spec)
    n = g.n
    params = spec.parameters if isinstance(spec, UnfoldingSpec) else ()
    runs_raw = btuple.runs()
    k = btuple.k
    xnames_all: list[str] = []
    runs: list[tuple[int, list[int], tuple[str, ...]]] = []
    single_run = len(runs_raw) == 1
    for ri, (b1, slots) in enumerate(runs_raw, start=1):
        if n == 1:
            xn: tuple[str, ...] = ()
        elif single_run:
            xn = source_variables(n)[:-1]
        else:
            base = source_variables(n)[:-1]
            xn = tuple(f"{x}_r{ri}" for x in base)
        xnames_all.extend(xn)
        runs.append((b1 - 1, slots, xn))
    yvars = [f"y{i}" for i in range(1, k + 1)]
    ring = PolyRing(tuple(xnames_all) + tuple(yvars) + tuple(params), ordering)
    return ring, runs


def _move_keeping_y(comp: Polynomial, ring: PolyRing, rename: dict[str, str]) -> Polynomial:
    """Bring a branch component into an extension of the dk ring that still has y."""
    helper = PolyRing(ring.variables + ("y",), GLOBAL_DEGREVLEX)
    return comp.rename_into(helper, rename)


def _run_first_point(comps: list[Polynomial], rename: dict[str, str], slots: list[int],
                     ring: PolyRing) -> list[Polynomial]:
    """All components of the run's branch evaluated at its first slot."""
    y_first = f"y{slots[0] + 1}"
    return [comp.rename_into(ring, rename | {"y": y_first}) for comp in comps]


def dk_generators(spec: GermSpec | UnfoldingSpec, btuple: BranchTuple,
                  ring: PolyRing, runs: list[tuple[int, list[int], tuple[str, ...]]]) -> list[Polynomial]:
    """Defining equations: divided differences inside runs, image equality across runs."""
    g = _germ_of(spec)
    n = g.n
    src_names = source_variables(n)
    gens: list[Polynomial] = []
    first_points: list[list[Polynomial]] = []
    for b0, slots, xn in runs:
        comps, _comp_ring, _params = _branch_components(spec, b0)
        rename = {src_names[i]: xn[i] for i in range(n - 1)}
        yvars = [f"y{s + 1}" for s in slots]
        first_points.append(_run_first_point(comps, rename, slots, ring))
        for comp in (comps[-2], comps[-1]):
            moved = _move_keeping_y(comp, ring, rename)
            chain = divided_difference_chain(moved, "y", yvars, ring)
            for dd in chain[1:]:
                if not dd.is_zero:
                    gens.append(dd)
    for r in range(len(runs) - 1):
        for a, b in zip(first_points[r], first_points[r + 1]):
            diff = a - b
            if not diff.is_zero:
                gens.append(diff)
    return gens


def dk_ideal(spec: GermSpec | UnfoldingSpec, k: int,
             btuple: BranchTuple | None = None,
             limits: Limits = DEFAULT_LIMITS) -> MultiplePointSpace:
    """The tuple's multiple point space with its verdict at the base point."""
    g = _germ_of(spec)
    if btuple is None:
        if not g.is_mono:
            raise DegenerateInputError("multi-germs need an explicit branch tuple")
        btuple = BranchTuple((1,) * k)
    if btuple.k != k:
        raise DegenerateInputError("tuple length must equal k")
    if any(not (1 <= b <= len(g.branches)) for b in btuple.assignment):
        raise DegenerateInputError("tuple refers to a missing branch")
    if k < 2:
        raise DegenerateInputError("multiple point spaces start at k = 2")
    ring, runs = dk_ring(spec, btuple, LOCAL_NEGDEGREVLEX)
    gens = dk_generators(spec, btuple, ring, runs)
    n = g.n
    nparams = len(spec.parameters) if isinstance(spec, UnfoldingSpec) else 0
    expected = n - k + 1 + nparams
    group = tuple((b0 + 1, tuple(f"y{s + 1}" for s in slots)) for b0, slots, _ in runs)
    ide = Ideal(ring, tuple(gens))
    if not gens:
        # no constraints: the whole ambient space
        dim = ring.arity
        verdict = VERDICT_FAILS if dim != expected else VERDICT_SMOOTH
        return MultiplePointSpace(k, btuple, ide, expected, dim, verdict, 0, group)
    sb = local_standard_basis(ide, limits)
    if sb.contains_unit():
        return MultiplePointSpace(k, btuple, ide, expected, -1, VERDICT_EMPTY,
                                  len(gens), group, sb)
    dim = krull_dimension(sb)
    r = len(gens)
    origin = [Fraction(0)] * ring.arity
    if expected >= 0:
        if dim != expected:
            verdict = VERDICT_FAILS
        elif jacobian_rank_at(ide, origin) == r:
            verdict = VERDICT_SMOOTH
        else:
            sing = singular_locus_ideal(ide, r)
            sing_col = colength(local_standard_basis(sing, limits))
            verdict = VERDICT_ICIS if sing_col is not None else VERDICT_FAILS
    else:
        verdict = VERDICT_FAT if dim <= 0 else VERDICT_FAILS
    return MultiplePointSpace(k, btuple, ide, expected, dim, verdict, r, group, sb)


def canonical_tuples(num_branches: int, k: int) -> list[BranchTuple]:
    return [BranchTuple(t) for t in
            itertools.combinations_with_replacement(range(1, num_branches + 1), k)]


@dataclass(frozen=True)
class MararMondRow:
    k: int
    branch_tuple: tuple[int, ...]
    verdict: str
    dim: int
    expected_dim: int
    multiplicity: int | None  # colength at the point for dim <= 0 cases


@dataclass(frozen=True)
class MararMondReport:
    germ_name: str
    n: int
    s: int
    d: int
    rows: tuple[MararMondRow, ...]
    verdict: str

    def rows_for(self, k: int) -> list[MararMondRow]:
        return [r for r in self.rows if r.k == k]


def marar_mond_report(g: GermSpec, limits: Limits = DEFAULT_LIMITS) -> MararMondReport:
    """Per-k, per-tuple verdicts and the stability / A-finiteness conclusion."""
    n = g.n
    s = len(g.branches)
    rows: list[MararMondRow] = []
    spaces: dict[tuple[int, tuple[int, ...]], MultiplePointSpace] = {}
    for k in range(2, n + 3):
        for bt in canonical_tuples(s, k):
            mps = dk_ideal(g, k, bt, limits)
            spaces[(k, bt.assignment)] = mps
            mult = None
            if mps.verdict != VERDICT_EMPTY and mps.dim <= 0:
                mult = mps.point_multiplicity(limits)
            rows.append(MararMondRow(k, bt.assignment, mps.verdict, mps.dim,
                                     mps.expected_dim, mult))
    stable = True
    a_finite = True
    for row in rows:
        if row.expected_dim >= 0:
            if row.verdict not in (VERDICT_EMPTY, VERDICT_SMOOTH):
                stable = False
            if row.verdict not in (VERDICT_EMPTY, VERDICT_SMOOTH, VERDICT_ICIS):
                a_finite = False
        else:
            if row.verdict != VERDICT_EMPTY:
                stable = False
            if row.verdict not in (VERDICT_EMPTY, VERDICT_FAT):
                a_finite = False
    verdict = STABLE if stable else (A_FINITE if a_finite else NOT_A_FINITE)
    d = 1
    for k in range(2, n + 2):
        if any(r.k == k and r.verdict != VERDICT_EMPTY for r in rows):
            d = k
    return MararMondReport(g.name, n, s, d, tuple(rows), verdict)


def s_and_d(g: GermSpec, limits: Limits = DEFAULT_LIMITS) -> tuple[int, int]:
    """Branch count and the largest k <= n+1 with a proper multiple point space.

    The cap at n+1 realises the maximal possible value for these dimensions; a
    stable perturbation has no k-fold points beyond it.
    """
    report = marar_mond_report(g, limits)
    if report.verdict == NOT_A_FINITE:
        raise UnsupportedCaseError("s and d are defined for A-finite germs")
    if report.s > report.d and report.d != g.n + 1:
        raise InternalInvariantError(
            "s > d is only possible at the maximal d; engine bug")
    return report.s, report.d


def sigma_orbit_invariance_defect(mps: MultiplePointSpace,
                                  limits: Limits = DEFAULT_LIMITS) -> int:
    """Number of (generator, stabilizer transposition) pairs that leave the ideal.

    Zero certifies invariance of the tuple ideal under its stabilizer; for a
    mono-germ the stabilizer is the full symmetric group on the slots.
    """
    sb = mps.basis if mps.basis is not None else local_standard_basis(mps.ideal, limits)
    bad = 0
    for _, ynames in mps.group:
        for a, b in itertools.combinations(ynames, 2):
            swap = {a: b, b: a}
            for gpoly in mps.ideal.generators:
                image = gpoly.rename_into(mps.ideal.ring, swap)
                if not normal_form(image, sb, limits).is_zero:
                    bad += 1
    return bad


def verify_stable_unfolding(F: UnfoldingSpec, limits: Limits = DEFAULT_LIMITS) -> bool:
    """Check that every multiple point space of the unfolding is smooth at 0.

    Probes k = 2 .. n+3 (one beyond the last k with non-negative expected
    dimension); proper spaces must be smooth complete intersections there and
    the k = n+3 space must be empty.
    """
    g = F.germ
    if not g.is_mono:
        return False
    n = g.n
    for k in range(2, n + 4):
        mps = dk_ideal(F, k, BranchTuple((1,) * k), limits)
        if mps.verdict == VERDICT_EMPTY:
            continue
        if k == n + 3:
            return False
        if mps.num_equations != 2 * (k - 1):
            return False
        origin = [Fraction(0)] * mps.ideal.ring.arity
        if jacobian_rank_at(mps.ideal, origin) != mps.num_equations:
            return False
    return True


__all__ = [
    "BranchTuple",
    "DividedDifferenceSet",
    "MararMondReport",
    "MararMondRow",
    "MultiplePointSpace",
    "VERDICT_EMPTY",
    "VERDICT_SMOOTH",
    "VERDICT_ICIS",
    "VERDICT_FAT",
    "VERDICT_FAILS",
    "STABLE",
    "A_FINITE",
    "NOT_A_FINITE",
    "canonical_tuples",
    "divided_differences",
    "divided_difference_chain",
    "dk_ideal",
    "dk_ring",
    "dk_generators",
    "jacobian_rank_at",
    "marar_mond_report",
    "s_and_d",
    "sigma_orbit_invariance_defect",
    "verify_stable_unfolding",
]
