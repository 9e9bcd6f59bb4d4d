"""One-parameter family analysis: goodness, excellence, conservation.

All verification happens at sampled rational parameter values; reports say so
and never claim a germ-level proof from samples alone. The one germ-level
shortcut is the constancy criterion: when the image Milnor number at the origin
is constant across samples and equals the central value, the family is labelled
excellent by the constancy theorem, with the sampling caveat recorded.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import (
    DegenerateInputError,
    InternalInvariantError,
    SpecValidationError,
    UnsupportedCaseError,
)
from .germs import (
    GermSpec,
    UnfoldingSpec,
    fiber_germ,
    germ,
    origin_preserving_check,
    source_variables,
)
from .ideals import (
    DEFAULT_LIMITS,
    Ideal,
    Limits,
    eliminate,
    groebner_basis,
    krull_dimension,
    singular_locus_ideal,
)
from .milnor import mu_image
from .multipoints import (
    NOT_A_FINITE,
    STABLE,
    BranchTuple,
    canonical_tuples,
    dk_generators,
    dk_ring,
    marar_mond_report,
)
from .rings import (
    GLOBAL_DEGREVLEX,
    Polynomial,
    PolyRing,
    count_real_roots,
    parse_poly,
    poly_gcd,
    rational_roots,
    univariate_coeffs,
)


# --- zero-dimensional solving ----------------------------------------------------


@dataclass(frozen=True)
class ResidualWitness:
    """A non-rational coordinate direction: its minimal-polynomial description."""

    variable: str
    poly_text: str
    degree: int
    real_roots: int


@dataclass
class SolveResult:
    points: list[tuple[Fraction, ...]]
    residuals: list[ResidualWitness]
    positive_dimensional: bool

    @property
    def complete(self) -> bool:
        return not self.residuals and not self.positive_dimensional


def solve_zero_dimensional(ide: Ideal, limits: Limits = DEFAULT_LIMITS) -> SolveResult:
    """Rational points of a variety expected to be finite.

    Rational coordinates come from rational-root extraction on per-variable
    eliminants; leftover factors are reported as residual witnesses together
    with their exact real-root counts.
    """
    gb = groebner_basis(ide, limits)
    if gb.contains_unit():
        return SolveResult([], [], False)
    if krull_dimension(gb, limits) > 0:
        return SolveResult([], [], True)
    names = list(ide.ring.variables)
    per_var_roots: dict[str, list[Fraction]] = {}
    residuals: list[ResidualWitness] = []
    for v in names:
        others = [w for w in names if w != v]
        eliminant = eliminate(Ideal(ide.ring, gb.basis), others, limits)
        uni = None
        for gpoly in eliminant.generators:
            coeffs = univariate_coeffs(gpoly, v)
            uni = coeffs if uni is None else _uni_gcd_lists(uni, coeffs)
        if uni is None or len(uni) <= 1:
            raise InternalInvariantError("zero-dimensional ideal lost a variable bound")
        roots, cofactor = rational_roots(uni)
        per_var_roots[v] = [r for r, _m in roots]
        if len(cofactor) > 1:
            res_poly = Polynomial(PolyRing((v,), GLOBAL_DEGREVLEX),
                                  {(i,): c for i, c in enumerate(cofactor)})
            residuals.append(ResidualWitness(v, str(res_poly), len(cofactor) - 1,
                                             count_real_roots(cofactor)))
    points = []
    pools = [per_var_roots[v] for v in names]
    if all(pools):
        for combo in itertools.product(*pools):
            values = {v: c for v, c in zip(names, combo)}
            if all(g.evaluate(values) == 0 for g in ide.generators):
                points.append(tuple(combo))
    points.sort()
    return SolveResult(points, residuals, False)


def _uni_gcd_lists(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    from .rings import _uni_gcd

    return _uni_gcd(a, b)


def variety_is_empty(ide: Ideal, limits: Limits = DEFAULT_LIMITS) -> bool:
    return groebner_basis(ide, limits).contains_unit()


# --- instability loci -------------------------------------------------------------


@dataclass
class InstabilityPoint:
    target: tuple[Fraction, ...]
    sources: tuple[tuple[int, tuple[Fraction, ...]], ...]  # (branch index, point)
    local_germ: GermSpec


@dataclass
class InstabilityFindings:
    points: list[InstabilityPoint]
    residuals: list[ResidualWitness]
    positive_dimensional: bool

    @property
    def complete(self) -> bool:
        return not self.residuals and not self.positive_dimensional

    def off_origin(self) -> list[InstabilityPoint]:
        return [p for p in self.points if any(c != 0 for c in p.target)]


def _branch_value(g: GermSpec, b: int, point: tuple[Fraction, ...]) -> tuple[Fraction, ...]:
    values = {v: c for v, c in zip(source_variables(g.n), point)}
    return tuple(comp.evaluate(values) for comp in g.branches[b].components)


def _preimages_of_target(g: GermSpec, target: tuple[Fraction, ...],
                         limits: Limits) -> tuple[list[tuple[int, tuple[Fraction, ...]]], bool]:
    """All rational preimage points of a target value, plus a completeness flag."""
    n = g.n
    names = source_variables(n)
    found: list[tuple[int, tuple[Fraction, ...]]] = []
    complete = True
    for bi, br in enumerate(g.branches):
        x0 = target[: n - 1]
        subs = {names[i]: Polynomial.constant(g.ring, x0[i]) for i in range(n - 1)}
        p_at = br.p.substitute(subs, g.ring) - Polynomial.constant(g.ring, target[n - 1])
        q_at = br.q.substitute(subs, g.ring) - Polynomial.constant(g.ring, target[n])
        h = poly_gcd(p_at, q_at)
        if h.is_constant:
            continue
        coeffs = univariate_coeffs(h, "y")
        roots, cofactor = rational_roots(coeffs)
        if len(cofactor) > 1:
            complete = False
        for r, _m in roots:
            found.append((bi, tuple(list(x0) + [r])))
    return found, complete


def _local_germ_at(g: GermSpec, target: tuple[Fraction, ...],
                   sources: list[tuple[int, tuple[Fraction, ...]]],
                   limits: Limits) -> GermSpec:
    """The multi-germ of the fiber at one target point, recentred and prenormal."""
    n = g.n
    names = source_variables(n)
    rows = []
    base_points = []
    for bi, pt in sources:
        shift = {names[i]: Polynomial.variable(g.ring, names[i]) + pt[i]
                 for i in range(n)}
        comps = []
        for ci, comp in enumerate(g.branches[bi].components):
            moved = comp.substitute(shift, g.ring) - Polynomial.constant(g.ring, target[ci])
            comps.append(moved)
        rows.append(comps)
        base_points.append(list(pt))
    label = ",".join(str(c) for c in target)
    return germ(f"{g.name}@({label})", n, rows, base_points)


def _tuple_point_to_target(g: GermSpec, bt: BranchTuple,
                           runs, point: dict[str, Fraction]) -> tuple[tuple[Fraction, ...], list[tuple[int, tuple[Fraction, ...]]]]:
    n = g.n
    names = source_variables(n)
    sources: list[tuple[int, tuple[Fraction, ...]]] = []
    targets = set()
    for b0, slots, xn in runs:
        xvals = [point[x] for x in xn]
        for s in slots:
            src = tuple(xvals + [point[f"y{s + 1}"]])
            sources.append((b0, src))
            targets.add(_branch_value(g, b0, src))
    if len(targets) != 1:
        raise InternalInvariantError("tuple point slots disagree on the target")
    dedup = sorted(set(sources))
    return targets.pop(), dedup


def instability_locus(fiber: GermSpec, limits: Limits = DEFAULT_LIMITS) -> InstabilityFindings:
    """Points where the fiber fails local stability, from all multiple point spaces.

    For orders with non-negative expected dimension the witnesses are singular
    points of the space; the first order with negative expected dimension
    contributes all of its points. Rational points come back with a recentred
    local multi-germ; the rest are reported by residual witnesses.
    """
    n = fiber.n
    s = len(fiber.branches)
    residuals: list[ResidualWitness] = []
    positive_dim = False
    by_target: dict[tuple[Fraction, ...], set[tuple[int, tuple[Fraction, ...]]]] = {}
    for k in range(2, n + 3):
        for bt in canonical_tuples(s, k):
            ring, runs = dk_ring(fiber, bt, GLOBAL_DEGREVLEX)
            gens = dk_generators(fiber, bt, ring, runs)
            if not gens:
                continue
            base = Ideal(ring, tuple(gens))
            expected = n - k + 1
            if expected >= 0:
                witness = singular_locus_ideal(base, len(gens))
            else:
                witness = base
            solved = solve_zero_dimensional(witness, limits)
            positive_dim = positive_dim or solved.positive_dimensional
            residuals.extend(r for r in solved.residuals
                             if r.poly_text not in {x.poly_text for x in residuals})
            for pt in solved.points:
                values = {v: c for v, c in zip(ring.variables, pt)}
                target, sources = _tuple_point_to_target(fiber, bt, runs, values)
                by_target.setdefault(target, set()).update(sources)
    points = []
    complete_preimages = True
    for target in sorted(by_target):
        sources, complete = _preimages_of_target(fiber, target, limits)
        complete_preimages = complete_preimages and complete
        if not sources:
            sources = sorted(by_target[target])
        local = _local_germ_at(fiber, target, sources, limits)
        points.append(InstabilityPoint(target, tuple(sorted(sources)), local))
    findings = InstabilityFindings(points, residuals, positive_dim)
    if not complete_preimages:
        findings.residuals.append(ResidualWitness("y", "non-rational preimage sheet", 0, 0))
    return findings


# --- zero-stable singularities -----------------------------------------------------


@dataclass
class ZeroStableFindings:
    points: list[tuple[tuple[Fraction, ...], str]]  # (target, kind)
    residuals: list[ResidualWitness]
    certified_off_origin: bool  # every non-rational candidate maps off the origin
    undetermined: bool

    @property
    def found_off_origin(self) -> bool:
        if any(any(c != 0 for c in t) for t, _ in self.points):
            return True
        return bool(self.residuals) and self.certified_off_origin

    @property
    def real_candidates(self) -> bool:
        return any(any(c != 0 for c in t) for t, _ in self.points) or any(
            r.real_roots > 0 for r in self.residuals)


def _stable_at(fiber: GermSpec, target: tuple[Fraction, ...], limits: Limits) -> bool:
    """Stable rank profile at a candidate point: the local multi-germ at the
    target must come out stable; unstable points belong to the instability
    locus instead."""
    sources, complete = _preimages_of_target(fiber, target, limits)
    if not sources or not complete:
        return True  # cannot decide; keep the candidate conservatively
    local = _local_germ_at(fiber, target, sources, limits)
    return marar_mond_report(local, limits).verdict == STABLE


def zero_stable_locus(fiber: GermSpec, limits: Limits = DEFAULT_LIMITS) -> ZeroStableFindings:
    """Candidate stable singularities of zero-dimensional isosingular locus,
    away from the target origin. Implemented for n <= 2."""
    n = fiber.n
    if n > 2:
        return ZeroStableFindings([], [], False, True)
    points: list[tuple[tuple[Fraction, ...], str]] = []
    residuals: list[ResidualWitness] = []
    certified = True
    if n == 2:
        names = source_variables(2)
        for bi, br in enumerate(fiber.branches):
            cand = Ideal(fiber.ring, tuple(
                p for p in (br.p.derivative("y"), br.q.derivative("y")) if not p.is_zero))
            if not cand.generators:
                continue
            solved = solve_zero_dimensional(cand, limits)
            if solved.positive_dimensional:
                residuals.append(ResidualWitness("x", "positive-dimensional corank locus",
                                                 -1, -1))
                certified = False
                continue
            for pt in solved.points:
                target = _branch_value(fiber, bi, pt)
                if all(c == 0 for c in target):
                    continue
                if _stable_at(fiber, target, limits):
                    points.append((target, "cross-cap"))
            if solved.residuals:
                residuals.extend(solved.residuals)
                on_origin = Ideal(fiber.ring, cand.generators + tuple(
                    c for c in br.components if not c.is_zero))
                if not variety_is_empty(on_origin, limits):
                    only_origin = solve_zero_dimensional(on_origin, limits)
                    extra = [p for p in only_origin.points] if only_origin.complete else None
                    if extra is None or any(any(x != 0 for x in p) for p in extra):
                        certified = certified and False
        # triple points through distinct sheets
        for bt in canonical_tuples(len(fiber.branches), 3):
            ring, runs = dk_ring(fiber, bt, GLOBAL_DEGREVLEX)
            gens = dk_generators(fiber, bt, ring, runs)
            if not gens:
                continue
            solved = solve_zero_dimensional(Ideal(ring, tuple(gens)), limits)
            for pt in solved.points:
                values = {v: c for v, c in zip(ring.variables, pt)}
                target, sources = _tuple_point_to_target(fiber, bt, runs, values)
                if all(c == 0 for c in target):
                    continue
                if len(set(sources)) < 3:
                    continue
                if _stable_at(fiber, target, limits):
                    points.append((target, "triple-point"))
            residuals.extend(solved.residuals)
    else:
        for bt in canonical_tuples(len(fiber.branches), 2):
            ring, runs = dk_ring(fiber, bt, GLOBAL_DEGREVLEX)
            gens = dk_generators(fiber, bt, ring, runs)
            if not gens:
                continue
            solved = solve_zero_dimensional(Ideal(ring, tuple(gens)), limits)
            for pt in solved.points:
                values = {v: c for v, c in zip(ring.variables, pt)}
                target, sources = _tuple_point_to_target(fiber, bt, runs, values)
                if all(c == 0 for c in target):
                    continue
                if len(set(sources)) < 2:
                    continue
                if _stable_at(fiber, target, limits):
                    points.append((target, "double-point"))
            residuals.extend(solved.residuals)
    seen = set()
    unique_points = []
    for t, kind in sorted(points):
        if (t, kind) in seen:
            continue
        seen.add((t, kind))
        unique_points.append((t, kind))
    return ZeroStableFindings(unique_points, residuals, certified, False)


# --- conservation and semicontinuity ------------------------------------------------


@dataclass(frozen=True)
class ConservationReport:
    parameter_value: Fraction
    mu_total: int
    local_sum: int
    defect: int
    partial: bool
    local_values: tuple[tuple[tuple[Fraction, ...], int], ...]  # (target, mu)

    def __post_init__(self):
        if not self.partial and self.defect < 0:
            raise InternalInvariantError(
                "conservation defect is negative; engine bug or false input")


@dataclass
class FamilySample:
    parameter_value: Fraction
    fiber: GermSpec
    instability_points: InstabilityFindings


def conservation_report(F: UnfoldingSpec, sample: Fraction,
                        limits: Limits = DEFAULT_LIMITS) -> ConservationReport:
    """Split the central invariant into local contributions at one sample."""
    sample = Fraction(sample)
    if len(F.parameters) != 1:
        raise SpecValidationError("conservation reports need one parameter")
    central = mu_image(F.germ, limits).mu_i
    fiber = fiber_germ(F, {F.parameters[0]: sample})
    findings = instability_locus(fiber, limits)
    partial = not findings.complete
    local_values = []
    local_sum = 0
    for pt in findings.points:
        try:
            mu = mu_image(pt.local_germ, limits).mu_i
        except UnsupportedCaseError:
            partial = True
            continue
        local_values.append((pt.target, mu))
        local_sum += mu
    return ConservationReport(sample, central, local_sum, central - local_sum,
                              partial, tuple(local_values))


def semicontinuity_check(F: UnfoldingSpec, samples: list[Fraction],
                         limits: Limits = DEFAULT_LIMITS) -> tuple[bool, list[dict]]:
    """Every local invariant at every sample stays at or below the central one."""
    central = mu_image(F.germ, limits).mu_i
    witnesses = []
    ok = True
    for sample in samples:
        report = conservation_report(F, Fraction(sample), limits)
        for target, mu in report.local_values:
            holds = mu <= central
            ok = ok and holds
            witnesses.append({
                "sample": str(Fraction(sample)),
                "target": [str(c) for c in target],
                "local_mu": mu,
                "central_mu": central,
                "holds": holds,
            })
    return ok, witnesses


# --- excellence ---------------------------------------------------------------------


GOOD_YES = "yes"
GOOD_NO = "no"
GOOD_UNDETERMINED = "undetermined"

HOUSTON_APPLIED = "constant-mu applied"
HOUSTON_NOT_APPLIED = "not applied"


@dataclass
class FamilyVerdict:
    good: str
    excellent: str
    houston: str
    evidence: list[dict] = field(default_factory=list)

    def as_dict(self) -> dict:
        return {
            "good": self.good,
            "excellent": self.excellent,
            "houston": self.houston,
            "evidence": self.evidence,
        }


def _preimage_of_zero_is_base(fiber: GermSpec, limits: Limits) -> bool:
    target = tuple(Fraction(0) for _ in range(fiber.n + 1))
    sources, complete = _preimages_of_target(fiber, target, limits)
    if not complete:
        return False
    base = {(bi, br.base_point) for bi, br in enumerate(fiber.branches)}
    return set(sources) == base


def excellence_verdict(F: UnfoldingSpec, samples: list[Fraction],
                       limits: Limits = DEFAULT_LIMITS) -> FamilyVerdict:
    """Per-sample goodness and excellence evidence plus the constancy shortcut."""
    if len(F.parameters) != 1:
        raise SpecValidationError("excellence analysis needs one parameter")
    evidence: list[dict] = []
    if not origin_preserving_check(F):
        evidence.append({"check": "origin-preserving", "holds": False})
        return FamilyVerdict(GOOD_NO, GOOD_NO, HOUSTON_NOT_APPLIED, evidence)
    evidence.append({"check": "origin-preserving", "holds": True})
    try:
        central = mu_image(F.germ, limits).mu_i
        evidence.append({"check": "central-mu", "value": central})
    except UnsupportedCaseError as exc:
        central = None
        evidence.append({"check": "central-mu", "unsupported": str(exc)})

    good = GOOD_YES
    excellent = GOOD_YES
    origin_mus: list[int | None] = []
    for sample in sorted(Fraction(s) for s in samples):
        if sample == 0:
            continue
        note: dict = {"sample": str(sample)}
        fiber = fiber_germ(F, {F.parameters[0]: sample})
        note["preimage-of-zero-is-base"] = _preimage_of_zero_is_base(fiber, limits)
        if not note["preimage-of-zero-is-base"]:
            good = GOOD_NO
        findings = instability_locus(fiber, limits)
        off = findings.off_origin()
        note["instabilities-off-origin"] = [
            {"target": [str(c) for c in p.target]} for p in off]
        if findings.positive_dimensional:
            note["instability-locus-positive-dimensional"] = True
            good = GOOD_NO
        if off:
            good = GOOD_NO
        elif not findings.complete:
            note["instability-residuals"] = [r.poly_text for r in findings.residuals]
            if good == GOOD_YES:
                good = GOOD_UNDETERMINED
        zs = zero_stable_locus(fiber, limits)
        if zs.undetermined:
            note["zero-stable"] = "undetermined (n > 2)"
            if excellent == GOOD_YES:
                excellent = GOOD_UNDETERMINED
        else:
            note["zero-stable-off-origin"] = [
                {"target": [str(c) for c in t], "kind": kind} for t, kind in zs.points]
            note["zero-stable-residuals"] = [
                {"poly": r.poly_text, "real_roots": r.real_roots} for r in zs.residuals]
            if zs.found_off_origin:
                excellent = GOOD_NO
                if not zs.real_candidates:
                    note["zero-stable-real"] = "no real candidates off origin"
        try:
            mu0 = mu_image(fiber, limits).mu_i
        except UnsupportedCaseError as exc:
            mu0 = None
            note["origin-mu"] = f"unsupported: {exc}"
        if mu0 is not None:
            note["origin-mu"] = mu0
            try:
                rep = marar_mond_report(fiber, limits)
                note["s"] = rep.s
                note["d"] = rep.d
            except Exception:
                pass
        origin_mus.append(mu0)
        evidence.append(note)

    houston = HOUSTON_NOT_APPLIED
    if (central is not None and origin_mus
            and all(m == central for m in origin_mus)):
        houston = HOUSTON_APPLIED
        evidence.append({
            "check": "constant-mu-criterion",
            "note": ("image Milnor number at the origin is constant and equal to "
                     "the central value at every sample; the family is excellent "
                     "by the constancy theorem (sampled parameters only)"),
        })
        if excellent != GOOD_YES or good != GOOD_YES:
            evidence.append({
                "check": "constant-mu-override",
                "note": ("geometric findings off the origin lie outside the germ "
                         "representative; superseded by the constancy criterion"),
            })
        good = GOOD_YES
        excellent = GOOD_YES
    else:
        if excellent == GOOD_YES and good != GOOD_YES:
            excellent = good
    return FamilyVerdict(good, excellent, houston, evidence)
