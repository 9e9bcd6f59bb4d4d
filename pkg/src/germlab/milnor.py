"""Image Milnor numbers for corank-1 germs into one higher dimension.

The invariant is assembled from per-k contributions. For k below the top
multiple-point order the contribution is the dimension of the symmetric-group
invariant part of a finite quotient algebra: the algebra presents the critical
locus of the unfolding parameter restricted to the smooth k-th multiple point
space of a one-parameter stable unfolding, and tensoring with the alternating
top form of the tangent space converts alternating homology classes into
invariant algebra classes. At the zero-dimensional order the contribution
counts how point clusters split under a stabilisation, and one binomial
correction term enters when there are more branches than the top order.
An independent route for plane curves (n = 1) goes through the delta invariant.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial

from . import linalg
from .errors import (
    DegenerateInputError,
    InternalInvariantError,
    JetCapError,
    NonIsolatedError,
    SpecValidationError,
    UnsupportedCaseError,
)
from .germs import (
    GermSpec,
    UnfoldingSpec,
    WeightData,
    build_one_param_stable_unfolding,
    source_variables,
)
from .ideals import (
    DEFAULT_LIMITS,
    Ideal,
    Limits,
    QuotientBasis,
    StandardBasis,
    colength,
    ideal,
    jacobian_matrix,
    local_standard_basis,
    quotient_basis,
    radical_membership,
    reduce_to_class_vector,
)
from .multipoints import (
    A_FINITE,
    NOT_A_FINITE,
    STABLE,
    VERDICT_EMPTY,
    VERDICT_SMOOTH,
    BranchTuple,
    MararMondReport,
    canonical_tuples,
    dk_ideal,
    marar_mond_report,
)
from .rings import (
    GLOBAL_DEGREVLEX,
    LOCAL_NEGDEGREVLEX,
    Polynomial,
    PolyRing,
    parse_poly,
    poly_det,
    squarefree_part,
    sylvester_resultant,
)


# --- classical Milnor numbers ---------------------------------------------------


def milnor_number(p: Polynomial, limits: Limits = DEFAULT_LIMITS) -> int:
    """Colength of the Jacobian ideal in the local ring at the origin."""
    local = PolyRing(p.ring.variables, LOCAL_NEGDEGREVLEX)
    moved = p.rename_into(local)
    partials = [moved.derivative(v) for v in local.variables]
    partials = [d for d in partials if not d.is_zero]
    if not partials:
        raise DegenerateInputError("constant input has no Milnor number")
    mu = colength(Ideal(local, tuple(partials)), limits)
    if mu is None:
        raise NonIsolatedError("non-isolated singularity: infinite colength")
    return mu


def quasihomogeneous_milnor(p: Polynomial, w: WeightData) -> int:
    """Independent oracle: product of (d - w_i)/w_i for weighted homogeneous p."""
    names = p.ring.variables
    weights = [Fraction(w.weights[v]) for v in names]
    if any(x <= 0 for x in weights):
        raise DegenerateInputError("weights must be positive")
    degrees = set()
    for e in p.terms:
        degrees.add(sum(Fraction(k) * wt for k, wt in zip(e, weights)))
    if len(degrees) != 1:
        raise DegenerateInputError("polynomial is not weighted homogeneous for these weights")
    d = degrees.pop()
    value = Fraction(1)
    for wt in weights:
        value *= (d - wt) / wt
    if value.denominator != 1 or value < 0:
        raise DegenerateInputError(f"formula value {value} is not a natural number")
    return int(value)


# --- the restricted Milnor algebra ----------------------------------------------


@dataclass
class MilnorAlgebra:
    """Finite quotient algebra presenting the parameter's critical locus on the
    smooth k-th multiple point space of a one-parameter stable unfolding."""

    ring: PolyRing
    defining: Ideal
    basis: StandardBasis
    monomials: QuotientBasis
    k: int
    slot_variables: tuple[str, ...]

    def __len__(self):
        return len(self.monomials)


def restricted_milnor_algebra(F: UnfoldingSpec, k: int,
                              limits: Limits = DEFAULT_LIMITS) -> MilnorAlgebra:
    """Quotient by the multiple-point equations plus the critical minors of t."""
    g = F.germ
    if not g.is_mono:
        raise UnsupportedCaseError("restricted Milnor algebras need a mono-germ")
    if len(F.parameters) != 1:
        raise UnsupportedCaseError("exactly one unfolding parameter is required")
    t = F.parameters[0]
    mps = dk_ideal(F, k, BranchTuple((1,) * k), limits)
    if mps.verdict == VERDICT_EMPTY:
        raise DegenerateInputError(f"D^{k} of the unfolding is empty")
    ring = mps.ideal.ring
    origin = [Fraction(0)] * ring.arity
    c = mps.num_equations
    from .ideals import jacobian_rank_at

    if jacobian_rank_at(mps.ideal, origin) != c:
        raise DegenerateInputError(
            f"D^{k} of the unfolding is not smooth at the origin; "
            "not a stable unfolding")
    names = list(ring.variables)
    rows = jacobian_matrix(list(mps.ideal.generators), names)
    grad_t = [Polynomial.zero(ring) for _ in names]
    grad_t[ring.index(t)] = Polynomial.constant(ring, 1)
    rows.append(grad_t)
    minors: list[Polynomial] = []
    size = c + 1
    for cols in itertools.combinations(range(len(names)), size):
        sub = [[rows[a][b] for b in cols] for a in range(size)]
        det = poly_det(sub, ring)
        if not det.is_zero and det not in minors:
            minors.append(det)
    defining = Ideal(ring, mps.ideal.generators + tuple(minors))
    sb = local_standard_basis(defining, limits)
    qb = quotient_basis(sb)
    if qb is None:
        raise NonIsolatedError("critical locus of the parameter is not finite")
    yvars = tuple(f"y{i}" for i in range(1, k + 1))
    return MilnorAlgebra(ring, defining, sb, qb, k, yvars)


def _permute_monomial(ring: PolyRing, e: tuple[int, ...], perm: dict[str, str]) -> tuple[int, ...]:
    out = [0] * len(e)
    for i, x in enumerate(e):
        if x == 0:
            continue
        name = ring.variables[i]
        out[ring.index(perm.get(name, name))] += x
    return tuple(out)


def _averaging_matrix(u: MilnorAlgebra, limits: Limits) -> list[list[Fraction]]:
    k = u.k
    m = len(u.monomials)
    acc = [[Fraction(0)] * m for _ in range(m)]
    for sigma in itertools.permutations(range(k)):
        perm = {u.slot_variables[i]: u.slot_variables[sigma[i]] for i in range(k)}
        for j, mono in enumerate(u.monomials.monomials):
            image = Polynomial.monomial(u.ring, _permute_monomial(u.ring, mono, perm))
            vec = reduce_to_class_vector(image, u.basis, u.monomials, limits)
            for i in range(m):
                acc[i][j] += vec[i]
    kfact = factorial(k)
    return [[x / kfact for x in row] for row in acc]


def invariant_dimension(u: MilnorAlgebra, limits: Limits = DEFAULT_LIMITS) -> int:
    """Dimension of the fixed subspace: the exact trace of the averaging operator."""
    if len(u.monomials) == 0:
        return 0
    R = _averaging_matrix(u, limits)
    m = len(R)
    # idempotency is a structural identity; its failure means the ideal was
    # not invariant under the recorded action
    RR = [[sum(R[i][l] * R[l][j] for l in range(m)) for j in range(m)] for i in range(m)]
    if RR != R:
        raise InternalInvariantError("averaging operator failed to be idempotent")
    trace = sum(R[i][i] for i in range(m))
    if trace.denominator != 1 or trace < 0:
        raise InternalInvariantError(f"averaging trace {trace} is not a natural number")
    return int(trace)


def averaging_operator(u: MilnorAlgebra, limits: Limits = DEFAULT_LIMITS) -> list[list[Fraction]]:
    """The averaging operator in the standard-monomial basis (for property checks)."""
    return _averaging_matrix(u, limits)


# --- alternating contributions ---------------------------------------------------


@dataclass(frozen=True)
class AltMilnorTable:
    entries: dict[int, int]  # k -> contribution, for 2 <= k <= d
    s: int
    d: int
    correction: int  # the k = d+1 binomial term when s > d
    mu_i: int

    def as_dict(self) -> dict:
        return {
            "entries": {str(k): v for k, v in sorted(self.entries.items())},
            "s": self.s,
            "d": self.d,
            "correction": self.correction,
            "mu_I": self.mu_i,
        }


def _binomial_correction(s: int, d: int) -> int:
    return comb(s - 1, d) if s > d else 0


def alternating_sum_matches_binomial(s: int, d: int) -> bool:
    """The defining alternating sum agrees with the closed binomial form."""
    total = sum((-1) ** l * comb(s, l) for l in range(d + 1, s + 1))
    return abs(total) == comb(s - 1, d)


def _point_splitting_count(g: GermSpec, k: int, limits: Limits) -> int:
    """Contribution of the zero-dimensional multiple point spaces.

    Every point cluster of local multiplicity mu on a canonical tuple with
    stabiliser H splits into mu/|H| free orbits after stabilisation, while the
    ambient unfolding contributes one alternating class per cluster orbit when
    sign is trivial on H. The difference counts the splitting classes.
    """
    total = 0
    for bt in canonical_tuples(len(g.branches), k):
        mps = dk_ideal(g, k, bt, limits)
        if mps.verdict == VERDICT_EMPTY:
            continue
        if mps.dim != 0:
            raise UnsupportedCaseError(
                f"D^{k} tuple {bt.assignment} has dimension {mps.dim}; expected 0")
        mu = mps.point_multiplicity(limits)
        if mu is None:
            raise UnsupportedCaseError("infinite multiplicity at a zero-dimensional tuple")
        h = bt.stabilizer_order()
        if mu % h != 0:
            raise UnsupportedCaseError(
                f"multiplicity {mu} not divisible by the stabiliser order {h}; "
                "splitting is not forced")
        total += mu // h - (1 if bt.stabilizer_sign_trivial() else 0)
    if total < 0:
        raise InternalInvariantError("negative point-splitting count")
    return total


def mu_k_alt(g: GermSpec, k: int, limits: Limits = DEFAULT_LIMITS,
             _report: MararMondReport | None = None) -> int:
    """The k-th alternating contribution to the image Milnor number."""
    report = _report if _report is not None else marar_mond_report(g, limits)
    if report.verdict == NOT_A_FINITE:
        raise UnsupportedCaseError("alternating Milnor numbers need an A-finite germ")
    s, d = report.s, report.d
    if k < 2:
        raise DegenerateInputError("contributions start at k = 2")
    if k > d:
        if k == d + 1 and s > d:
            return _binomial_correction(s, d)
        return 0
    rows = report.rows_for(k)
    if all(r.verdict in (VERDICT_EMPTY, VERDICT_SMOOTH) for r in rows):
        return 0
    expected = g.n - k + 1
    if expected == 0:
        return _point_splitting_count(g, k, limits)
    if not g.is_mono:
        raise UnsupportedCaseError(
            "positive-dimensional singular multiple point spaces of multi-germs "
            "are out of scope")
    F = build_one_param_stable_unfolding(g)
    algebra = restricted_milnor_algebra(F, k, limits)
    return invariant_dimension(algebra, limits)


def mu_image(g: GermSpec, limits: Limits = DEFAULT_LIMITS) -> AltMilnorTable:
    """The full per-k table and their sum; fails loudly on unsupported orders."""
    report = marar_mond_report(g, limits)
    if report.verdict == NOT_A_FINITE:
        raise UnsupportedCaseError("the image Milnor number needs an A-finite germ")
    s, d = report.s, report.d
    entries: dict[int, int] = {}
    blocked: list[str] = []
    for k in range(2, d + 1):
        try:
            entries[k] = mu_k_alt(g, k, limits, _report=report)
        except UnsupportedCaseError as exc:
            blocked.append(f"k={k}: {exc}")
    if blocked:
        raise UnsupportedCaseError(
            "image Milnor number not computable; " + "; ".join(blocked))
    correction = _binomial_correction(s, d)
    mu = sum(entries.values()) + correction
    return AltMilnorTable(entries, s, d, correction, mu)


# --- plane curves: the delta route ------------------------------------------------


def _truncated_series(p: Polynomial, order: int) -> list[Fraction]:
    """Coefficients of a univariate polynomial in y, truncated below the order."""
    out = [Fraction(0)] * order
    yi = p.ring.index("y")
    for e, c in p.terms.items():
        if e[yi] < order:
            out[e[yi]] += c
    return out


def _series_mul(a: list[Fraction], b: list[Fraction], order: int) -> list[Fraction]:
    out = [Fraction(0)] * order
    for i, x in enumerate(a):
        if x == 0:
            continue
        for j, y in enumerate(b):
            if y == 0 or i + j >= order:
                continue
            out[i + j] += x * y
    return out


def _delta_at_order(g: GermSpec, order: int) -> int:
    s = len(g.branches)
    a_series = [_truncated_series(br.p, order) for br in g.branches]
    b_series = [_truncated_series(br.q, order) for br in g.branches]
    rows: list[list[Fraction]] = []
    ones = [[Fraction(1)] + [Fraction(0)] * (order - 1) for _ in range(s)]
    pow_a: list[list[list[Fraction]]] = [ones]
    for i in range(1, order + 1):
        pow_a.append([_series_mul(pow_a[-1][b], a_series[b], order) for b in range(s)])
    for i in range(0, order + 1):
        base = pow_a[i]
        term = [list(base[b]) for b in range(s)]
        for j in range(0, order + 1 - 0):
            if i + j > order:
                break
            row: list[Fraction] = []
            for b in range(s):
                row.extend(term[b])
            rows.append(row)
            term = [_series_mul(term[b], b_series[b], order) for b in range(s)]
    return s * order - linalg.rank(rows)


def delta_invariant(g: GermSpec, limits: Limits = DEFAULT_LIMITS,
                    jet_cap: int = 60) -> int:
    """Codimension of the branch-component algebra inside the product of power
    series rings, computed by jet truncation with a stabilisation window."""
    if g.n != 1:
        raise UnsupportedCaseError("the delta invariant is for plane curve germs (n = 1)")
    report = marar_mond_report(g, limits)
    if report.verdict == NOT_A_FINITE:
        raise UnsupportedCaseError("the delta invariant needs an A-finite curve germ")
    history: list[int] = []
    for order in range(2, jet_cap + 1):
        history.append(_delta_at_order(g, order))
        window = max(history[-1], 1)
        if len(history) >= 2 * window + 1:
            tail = history[-(2 * window + 1):]
            if len(set(tail)) == 1:
                return history[-1]
    raise JetCapError(f"delta invariant failed to stabilise below jet order {jet_cap}")


@dataclass(frozen=True)
class CurveInvariants:
    delta: int
    s: int
    mu_i: int

    def __post_init__(self):
        if self.mu_i != self.delta - self.s + 1 or self.mu_i < 0:
            raise InternalInvariantError("curve invariants violate mu = delta - s + 1 >= 0")


def mu_image_curve(g: GermSpec, limits: Limits = DEFAULT_LIMITS) -> CurveInvariants:
    """The n = 1 route: mu equals delta minus the branch count plus one."""
    delta = delta_invariant(g, limits)
    s = len(g.branches)
    return CurveInvariants(delta, s, delta - s + 1)


# --- image equations and the radical test ------------------------------------------


@dataclass(frozen=True)
class ImageEquation:
    ring: PolyRing
    poly: Polynomial


def image_equation(spec: GermSpec | UnfoldingSpec,
                   limits: Limits = DEFAULT_LIMITS) -> ImageEquation:
    """Reduced equation of the image hypersurface of a mono-germ.

    Eliminates y from (p - X_n, q - X_{n+1}) by a Sylvester resultant, renames
    the retained source coordinates to X_1..X_{n-1}, and takes the squarefree
    part. Any unfolding parameters ride along as extra coefficients.
    """
    g = spec.germ if isinstance(spec, UnfoldingSpec) else spec
    if not g.is_mono:
        raise UnsupportedCaseError("image equations are computed for mono-germs")
    n = g.n
    params = spec.parameters if isinstance(spec, UnfoldingSpec) else ()
    if isinstance(spec, UnfoldingSpec):
        comps = list(spec.total_components(0))
    else:
        comps = list(g.branches[0].components)
    p, q = comps[-2], comps[-1]
    if p.degree_in("y") < 1 or q.degree_in("y") < 1:
        raise DegenerateInputError(
            "both distinguished components need positive degree in y")
    src = source_variables(n)
    xn, xn1 = f"X{n}", f"X{n + 1}"
    work = PolyRing(src + (xn, xn1) + tuple(params), GLOBAL_DEGREVLEX)
    a = p.rename_into(work) - Polynomial.variable(work, xn)
    b = q.rename_into(work) - Polynomial.variable(work, xn1)
    res = sylvester_resultant(a, b, "y")
    if res.is_zero:
        raise DegenerateInputError("degenerate resultant: the image equation vanished")
    target = PolyRing(tuple(f"X{i}" for i in range(1, n + 2)) + tuple(params),
                      GLOBAL_DEGREVLEX)
    renames = {src[i]: f"X{i + 1}" for i in range(n - 1)}
    moved = res.rename_into(target, renames)
    reduced = squarefree_part(moved)
    # the equation must vanish on the parametrisation, exactly
    check_ring = spec.param_ring if isinstance(spec, UnfoldingSpec) else g.ring
    bindings = {}
    for i in range(n + 1):
        bindings[f"X{i + 1}"] = comps[i]
    pulled = reduced.substitute(bindings, check_ring)
    if not pulled.is_zero:
        raise InternalInvariantError("image equation does not vanish on the image")
    return ImageEquation(target, reduced)


def relative_jacobian_ideal(eq: ImageEquation, n: int) -> Ideal:
    """Partials with respect to the target coordinates only, not the parameters."""
    gens = []
    for i in range(1, n + 2):
        d = eq.poly.derivative(f"X{i}")
        if not d.is_zero:
            gens.append(d)
    return Ideal(eq.ring, tuple(gens))


def mu_zero_via_radical(F: UnfoldingSpec, limits: Limits = DEFAULT_LIMITS) -> bool:
    """Radical test: the image Milnor number vanishes exactly when the image
    equation of a stable unfolding lies in the radical of its relative Jacobian
    ideal."""
    eq = image_equation(F, limits)
    jy = relative_jacobian_ideal(eq, F.germ.n)
    return radical_membership(eq.poly, jy, limits)
