"""Data model and DSL for corank-1 multi-germs and their unfoldings.

A germ maps (C^n, S) -> (C^{n+1}, 0). Each branch carries its own copy of the
source coordinates, centred at its own origin; components are polynomials in
those coordinates and must vanish at 0. Prenormal form means the first n-1
components are the coordinate functions x_1, ..., x_{n-1} and the last two are
p(x, y), q(x, y); the corank at the base point is then 0 or 1.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction

from . import linalg
from .errors import (
    PolyParseError,
    SpecValidationError,
    UnsupportedCaseError,
)
from .rings import (
    GLOBAL_DEGREVLEX,
    Polynomial,
    PolyRing,
    parse_poly,
)


def source_variables(n: int) -> tuple[str, ...]:
    """Coordinates on the source: the distinguished corank direction is y."""
    if n < 1:
        raise SpecValidationError("source dimension must be at least 1")
    if n == 1:
        return ("y",)
    if n == 2:
        return ("x", "y")
    return tuple(f"x{i}" for i in range(1, n)) + ("y",)


def source_ring(n: int) -> PolyRing:
    return PolyRing(source_variables(n), GLOBAL_DEGREVLEX)


@dataclass(frozen=True)
class Branch:
    """One branch of a multi-germ, in prenormal form, centred at its base point."""

    base_point: tuple[Fraction, ...]
    components: tuple[Polynomial, ...]
    corank: int = field(compare=False, default=0)

    @property
    def p(self) -> Polynomial:
        return self.components[-2]

    @property
    def q(self) -> Polynomial:
        return self.components[-1]


@dataclass(frozen=True)
class GermSpec:
    name: str
    n: int
    branches: tuple[Branch, ...]

    @property
    def ring(self) -> PolyRing:
        return source_ring(self.n)

    @property
    def is_mono(self) -> bool:
        return len(self.branches) == 1

    @property
    def corank(self) -> int:
        return max(b.corank for b in self.branches)


@dataclass(frozen=True)
class UnfoldingSpec:
    germ: GermSpec
    parameters: tuple[str, ...]
    deformation_terms: tuple[tuple[Polynomial, ...], ...]  # per branch, n+1 entries

    @property
    def param_ring(self) -> PolyRing:
        return PolyRing(source_variables(self.germ.n) + self.parameters, GLOBAL_DEGREVLEX)

    def total_components(self, branch_index: int) -> tuple[Polynomial, ...]:
        """Components of the unfolded branch as polynomials in source vars and parameters."""
        ring = self.param_ring
        base = [c.rename_into(ring) for c in self.germ.branches[branch_index].components]
        return tuple(b + t for b, t in zip(base, self.deformation_terms[branch_index]))


@dataclass(frozen=True)
class WeightData:
    """Positive weights on the source variables making every component
    weighted homogeneous, with the induced component degrees."""

    weights: dict[str, Fraction]
    degrees: tuple[Fraction, ...]


def _branch_corank(n: int, components: tuple[Polynomial, ...]) -> int:
    ring = components[0].ring
    zero = {v: Fraction(0) for v in ring.variables}
    rows = []
    for c in components:
        rows.append([c.derivative(v).evaluate(zero) for v in source_variables(n)])
    return n - linalg.rank(rows)


def make_branch(n: int, components: list[Polynomial],
                base_point: list[Fraction] | None = None) -> Branch:
    """Validate prenormal form and compute the corank at the base point."""
    ring = source_ring(n)
    if len(components) != n + 1:
        raise SpecValidationError(f"expected {n + 1} components, got {len(components)}")
    for c in components:
        if c.ring != ring:
            raise SpecValidationError("branch component in the wrong ring")
    zero = {v: Fraction(0) for v in ring.variables}
    for i, c in enumerate(components):
        if c.evaluate(zero) != 0:
            raise SpecValidationError(f"component {i + 1} does not vanish at the base point")
    names = source_variables(n)
    for i in range(n - 1):
        if components[i] != Polynomial.variable(ring, names[i]):
            raise SpecValidationError(
                f"component {i + 1} must be the coordinate function {names[i]} "
                "(prenormal form)")
    corank = _branch_corank(n, tuple(components))
    if corank > 1:
        raise SpecValidationError("corank at the base point exceeds 1")
    bp = tuple(Fraction(a) for a in (base_point or [0] * n))
    if len(bp) != n:
        raise SpecValidationError("base point length must equal the source dimension")
    return Branch(bp, tuple(components), corank)


def germ(name: str, n: int, branch_components: list[list[Polynomial | str]],
         base_points: list[list[Fraction]] | None = None) -> GermSpec:
    """Assemble and validate a GermSpec; string components are parsed."""
    ring = source_ring(n)
    branches = []
    for bi, comps in enumerate(branch_components):
        polys = [parse_poly(c, ring) if isinstance(c, str) else c for c in comps]
        bp = base_points[bi] if base_points else None
        branches.append(make_branch(n, polys, bp))
    if not branches:
        raise SpecValidationError("a germ needs at least one branch")
    return GermSpec(name, n, tuple(branches))


def unfolding(g: GermSpec, parameters: list[str],
              terms: list[list[Polynomial | str]]) -> UnfoldingSpec:
    """Assemble and validate an UnfoldingSpec; terms vanish at parameters = 0."""
    if not parameters:
        raise SpecValidationError("an unfolding needs at least one parameter")
    for p in parameters:
        if p in source_variables(g.n):
            raise SpecValidationError(f"parameter {p!r} collides with a source variable")
    if len(set(parameters)) != len(parameters):
        raise SpecValidationError("duplicate parameter names")
    ring = PolyRing(source_variables(g.n) + tuple(parameters), GLOBAL_DEGREVLEX)
    if len(terms) != len(g.branches):
        raise SpecValidationError("one deformation row per branch required")
    rows = []
    zero_params = {p: Polynomial.zero(ring) for p in parameters}
    for row in terms:
        if len(row) != g.n + 1:
            raise SpecValidationError("each deformation row needs n+1 entries")
        polys = tuple(parse_poly(t, ring) if isinstance(t, str) else t for t in row)
        for t in polys:
            if t.ring != ring:
                raise SpecValidationError("deformation term in the wrong ring")
            specialised = t.substitute(zero_params, ring)
            if not specialised.is_zero:
                raise SpecValidationError("deformation terms must vanish at parameters = 0")
        rows.append(polys)
    return UnfoldingSpec(g, tuple(parameters), tuple(rows))


def fiber_germ(u: UnfoldingSpec, values: dict[str, Fraction]) -> GermSpec:
    """The member germ at bound parameter values, centred at the original base points."""
    missing = [p for p in u.parameters if p not in values]
    if missing:
        raise SpecValidationError(f"unbound parameters: {missing}")
    n = u.germ.n
    src = source_ring(n)
    bindings = {p: Polynomial.constant(u.param_ring, Fraction(values[p]))
                for p in u.parameters}
    branch_rows = []
    base_points = []
    for bi, br in enumerate(u.germ.branches):
        comps = []
        for c in u.total_components(bi):
            spec = c.substitute(bindings, u.param_ring).rename_into(src)
            comps.append(spec)
        branch_rows.append(comps)
        base_points.append(list(br.base_point))
    label = ",".join(f"{p}={Fraction(values[p])}" for p in u.parameters)
    return germ(f"{u.germ.name}[{label}]", n, branch_rows, base_points)


def origin_preserving_check(u: UnfoldingSpec) -> bool:
    """True iff every branch maps its base point to 0 for all parameter values."""
    if len(u.parameters) != 1:
        raise SpecValidationError("origin_preserving_check expects one parameter")
    ring = u.param_ring
    at_base = {v: Polynomial.zero(ring) for v in source_variables(u.germ.n)}
    for bi in range(len(u.germ.branches)):
        for c in u.total_components(bi):
            if not c.substitute(at_base, ring).is_zero:
                return False
    return True


def weighted_homogeneity(g: GermSpec) -> WeightData | None:
    """One normalized positive weight system, or None when none exists.

    Solves the linear conditions that all monomials of each component share a
    weighted degree, then searches the kernel for a strictly positive vector.
    """
    if not g.is_mono:
        raise UnsupportedCaseError("weighted homogeneity is defined here for mono-germs")
    names = source_variables(g.n)
    rows: list[list[Fraction]] = []
    for c in g.branches[0].components:
        exps = sorted(c.terms)
        for e in exps[1:]:
            rows.append([Fraction(a - b) for a, b in zip(e, exps[0])])
    rows = [r for r in rows if any(x != 0 for x in r)]
    if not rows:
        weights = {v: Fraction(1) for v in names}
    else:
        kernel = linalg.kernel_basis(rows, len(names))
        if not kernel:
            return None
        weights = None
        dim = len(kernel)
        for combo in sorted(itertools.product(range(-4, 5), repeat=dim),
                            key=lambda c: (sum(abs(x) for x in c), c)):
            if all(x == 0 for x in combo):
                continue
            v = [sum(Fraction(combo[j]) * kernel[j][i] for j in range(dim))
                 for i in range(len(names))]
            if all(x > 0 for x in v):
                weights = {name: val for name, val in zip(names, v)}
                break
        if weights is None:
            return None
    # normalise to coprime positive integers
    den = 1
    for w in weights.values():
        den = den * w.denominator // _gcd(den, w.denominator)
    scaled = [int(w * den) for w in weights.values()]
    g_all = 0
    for s in scaled:
        g_all = _gcd(g_all, s)
    weights = {name: Fraction(s // g_all) for name, s in zip(names, scaled)}
    degrees = []
    for c in g.branches[0].components:
        if c.is_zero:
            raise SpecValidationError("zero component in a germ")
        e = next(iter(c.terms))
        d = sum(Fraction(k) * weights[names[i]] for i, k in enumerate(e))
        for e2 in c.terms:
            d2 = sum(Fraction(k) * weights[names[i]] for i, k in enumerate(e2))
            if d2 != d:
                raise SpecValidationError("weight solution fails the degree identity")
        degrees.append(d)
    return WeightData(weights, tuple(degrees))


def _gcd(a: int, b: int) -> int:
    from math import gcd
    return gcd(a, b)


# --- stable one-parameter unfoldings ------------------------------------------


def _heuristic_terms(n: int) -> list[str]:
    names = source_variables(n)
    xs = list(names[:-1])
    cands = ["y"]
    for x in xs:
        cands.append(f"{x}*y")
    cands.append("y^2")
    for x in xs:
        cands.append(f"{x}^2*y")
    cands.extend(["y^3", "y^4"])
    for x in xs:
        cands.append(f"{x}^3*y")
    return cands


def build_one_param_stable_unfolding(g: GermSpec) -> UnfoldingSpec:
    """Heuristic-then-verify construction of a one-parameter stable unfolding.

    Tries single terms t*m(x, y) in the last component, then in the middle one,
    verifying after each attempt that every multiple point space of the unfolding
    is smooth at the origin. Raises UnsupportedCaseError when the list runs out.
    """
    from .multipoints import verify_stable_unfolding

    if not g.is_mono:
        raise UnsupportedCaseError("stable unfoldings are built for mono-germs only")
    n = g.n
    zero_row = ["0"] * (n + 1)

    trivial = unfolding(g, ["t"], [list(zero_row)])
    if verify_stable_unfolding(trivial):
        return trivial
    for slot in (n, n - 1):
        for m in _heuristic_terms(n):
            row = list(zero_row)
            row[slot] = f"t*({m})"
            cand = unfolding(g, ["t"], [row])
            if verify_stable_unfolding(cand):
                return cand
    raise UnsupportedCaseError(
        "no one-parameter stable unfolding found by the heuristic term list; "
        "supply deformation terms manually")


# --- the line-oriented germ DSL ------------------------------------------------


def _split_top_level(text: str, line_no: int) -> list[str]:
    parts = []
    depth = 0
    cur = []
    for ch in text:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
            if depth < 0:
                raise PolyParseError("unbalanced parentheses", line=line_no)
        if ch == "," and depth == 0:
            parts.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    if depth != 0:
        raise PolyParseError("unbalanced parentheses", line=line_no)
    parts.append("".join(cur))
    return [p.strip() for p in parts]


def _strip_parens(text: str, line_no: int) -> str:
    text = text.strip()
    if not (text.startswith("(") and text.endswith(")")):
        raise PolyParseError("expected a parenthesised tuple", line=line_no)
    return text[1:-1]


def parse_germ_file(text: str) -> GermSpec | UnfoldingSpec:
    """Parse the line-oriented germ DSL; see the README for the grammar."""
    name = None
    n = None
    branch_rows: list[list[str]] = []
    base_points: list[list[Fraction]] = []
    params: list[str] | None = None
    unfold_rows: dict[int, list[str]] = {}

    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("germ "):
            name = line[5:].strip()
            if not name:
                raise PolyParseError("missing germ name", line=line_no)
        elif line.startswith("source "):
            body = line[7:].strip()
            if not body.startswith("n="):
                raise PolyParseError("expected source n=<int>", line=line_no)
            try:
                n = int(body[2:])
            except ValueError:
                raise PolyParseError("bad source dimension", line=line_no) from None
        elif line.startswith("branch"):
            if n is None:
                raise PolyParseError("source n=<int> must precede branches", line=line_no)
            body = line[6:].strip()
            bp = [Fraction(0)] * n
            if body.startswith("at"):
                head, sep, tail = body[2:].partition(":")
                if not sep:
                    raise PolyParseError("branch at (...) needs a ':'", line=line_no)
                coords = _split_top_level(_strip_parens(head, line_no), line_no)
                if len(coords) != n:
                    raise PolyParseError("base point arity mismatch", line=line_no)
                try:
                    bp = [Fraction(c) for c in coords]
                except ValueError:
                    raise PolyParseError("base point entries must be rational",
                                         line=line_no) from None
                body = tail.strip()
            comps = _split_top_level(_strip_parens(body, line_no), line_no)
            if len(comps) != n + 1:
                raise PolyParseError(f"expected {n + 1} components", line=line_no)
            branch_rows.append(comps)
            base_points.append(bp)
        elif line.startswith("unfold "):
            head, sep, tail = line[7:].partition(":")
            if not sep:
                raise PolyParseError("unfold needs a ':'", line=line_no)
            declared = [p.strip() for p in head.split(",") if p.strip()]
            if not declared:
                raise PolyParseError("unfold needs parameter names", line=line_no)
            if params is None:
                params = declared
            elif params != declared:
                raise PolyParseError("parameter list differs between unfold lines",
                                     line=line_no)
            tail = tail.strip()
            if not tail.startswith("branch"):
                raise PolyParseError("expected 'branch <i> += (...)'", line=line_no)
            rest = tail[6:].strip()
            idx_str, sep2, tuple_part = rest.partition("+=")
            if not sep2:
                raise PolyParseError("expected '+=' in unfold line", line=line_no)
            try:
                idx = int(idx_str.strip())
            except ValueError:
                raise PolyParseError("bad branch index", line=line_no) from None
            terms = _split_top_level(_strip_parens(tuple_part, line_no), line_no)
            if idx in unfold_rows:
                raise PolyParseError(f"duplicate unfold row for branch {idx}", line=line_no)
            unfold_rows[idx] = terms
        else:
            raise PolyParseError(f"unrecognised directive: {line.split()[0]!r}",
                                 line=line_no)

    if name is None or n is None or not branch_rows:
        raise PolyParseError("a germ file needs 'germ', 'source' and at least one branch")
    g = germ(name, n, branch_rows, base_points)
    if params is None:
        return g
    for idx in unfold_rows:
        if not (1 <= idx <= len(g.branches)):
            raise PolyParseError(f"unfold refers to missing branch {idx}")
    rows = []
    for bi in range(1, len(g.branches) + 1):
        if bi in unfold_rows:
            row = unfold_rows[bi]
            if len(row) != n + 1:
                raise PolyParseError(f"unfold row for branch {bi} needs {n + 1} entries")
            rows.append(row)
        else:
            rows.append(["0"] * (n + 1))
    return unfolding(g, params, rows)


def print_germ_file(spec: GermSpec | UnfoldingSpec) -> str:
    """Canonical text for a spec; parse_germ_file round-trips it."""
    if isinstance(spec, UnfoldingSpec):
        g = spec.germ
    else:
        g = spec
    lines = [f"germ {g.name}", f"source n={g.n}"]
    for br in g.branches:
        comps = ", ".join(str(c) for c in br.components)
        if any(a != 0 for a in br.base_point):
            coords = ", ".join(str(a) for a in br.base_point)
            lines.append(f"branch at ({coords}) : ({comps})")
        else:
            lines.append(f"branch ({comps})")
    if isinstance(spec, UnfoldingSpec):
        plist = ",".join(spec.parameters)
        for bi, row in enumerate(spec.deformation_terms, start=1):
            if all(t.is_zero for t in row):
                continue
            terms = ", ".join(str(t) for t in row)
            lines.append(f"unfold {plist} : branch {bi} += ({terms})")
        if all(all(t.is_zero for t in row) for row in spec.deformation_terms):
            terms = ", ".join(["0"] * (g.n + 1))
            lines.append(f"unfold {plist} : branch 1 += ({terms})")
    return "\n".join(lines) + "\n"
