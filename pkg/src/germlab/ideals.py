"""Global Groebner bases (Buchberger) and local standard bases (Mora).

Supports colength, Krull dimension, elimination, radical membership,
singular loci and quotient-algebra linear algebra, all over exact rationals.
Local computations use Mora's normal form with ecart-minimising reducer
selection; every selection rule is deterministic so repeated runs agree.
"""

from __future__ import annotations

import heapq
import itertools
from dataclasses import dataclass, field
from fractions import Fraction

from . import linalg
from .errors import (
    DegenerateInputError,
    InternalInvariantError,
    ResourceCapError,
    RingMismatchError,
)
from .rings import (
    GLOBAL_DEGREVLEX,
    LEX_ELIMINATION,
    LOCAL_NEGDEGREVLEX,
    Exponent,
    Polynomial,
    PolyRing,
    jacobian_matrix,
    parse_poly,
    poly_det,
    shift_point,
)


@dataclass(frozen=True)
class Limits:
    """Resource caps; exceeding one raises ResourceCapError, never a wrong answer."""

    max_spair_degree: int = 30
    max_basis_size: int = 500
    max_reduction_steps: int = 200_000


DEFAULT_LIMITS = Limits()


@dataclass(frozen=True)
class Ideal:
    ring: PolyRing
    generators: tuple[Polynomial, ...]

    def __post_init__(self):
        for g in self.generators:
            if g.ring != self.ring:
                raise RingMismatchError("generator outside the ideal's ring")
            if g.is_zero:
                raise DegenerateInputError("zero generator; drop it before building the ideal")

    @property
    def is_zero_ideal(self) -> bool:
        return not self.generators


def ideal(ring: PolyRing, *gens) -> Ideal:
    """Build an ideal; string generators are parsed, zero generators dropped."""
    polys = []
    for g in gens:
        if isinstance(g, str):
            g = parse_poly(g, ring)
        if not g.is_zero:
            polys.append(g)
    return Ideal(ring, tuple(polys))


@dataclass(frozen=True)
class QuotientBasis:
    """Standard monomials of a zero-dimensional leading ideal (an order ideal)."""

    monomials: tuple[Exponent, ...]

    def __len__(self):
        return len(self.monomials)

    def max_degree(self) -> int:
        return max((sum(e) for e in self.monomials), default=-1)


@dataclass
class StandardBasis:
    ideal: Ideal
    basis: tuple[Polynomial, ...]
    locality: str  # "global" or "local"
    _leads: tuple[Exponent, ...] = field(init=False)

    def __post_init__(self):
        self._leads = tuple(g.leading_exponent() for g in self.basis)

    @property
    def ring(self) -> PolyRing:
        return self.ideal.ring

    def leading_exponents(self) -> tuple[Exponent, ...]:
        return self._leads

    def contains_unit(self) -> bool:
        return any(sum(e) == 0 for e in self._leads)


def _divides(a: Exponent, b: Exponent) -> bool:
    return all(x <= y for x, y in zip(a, b))


def _mono_quot(b: Exponent, a: Exponent) -> Exponent:
    return tuple(x - y for x, y in zip(b, a))


def _ecart(p: Polynomial) -> int:
    return p.total_degree() - sum(p.leading_exponent())


def _monic(p: Polynomial) -> Polynomial:
    return p * (1 / p.leading_coefficient())


# --- normal forms -----------------------------------------------------------


def _reduce_global(f: Polynomial, basis: list[Polynomial], limits: Limits,
                   track: bool = False):
    """Fully reduced normal form under a global ordering.

    With track=True also returns cofactors a_i with f = sum a_i b_i + r.
    """
    ring = f.ring
    key = ring.key
    leads = [g.leading_exponent() for g in basis]
    lcs = [g.leading_coefficient() for g in basis]
    work = dict(f.terms)
    rem: dict[Exponent, Fraction] = {}
    cof = [Polynomial.zero(ring) for _ in basis] if track else None
    steps = 0
    while work:
        steps += 1
        if steps > limits.max_reduction_steps:
            raise ResourceCapError("normal form exceeded the reduction step cap")
        e = max(work, key=key)
        c = work.pop(e)
        for i, le in enumerate(leads):
            if _divides(le, e):
                q = _mono_quot(e, le)
                qc = c / lcs[i]
                for ge, gc in basis[i].terms.items():
                    t = tuple(a + b for a, b in zip(q, ge))
                    if t == e:
                        continue
                    s = work.get(t, Fraction(0)) - qc * gc
                    if s == 0:
                        work.pop(t, None)
                    else:
                        work[t] = s
                if track:
                    cof[i] = cof[i] + Polynomial.monomial(ring, q, qc)
                break
        else:
            rem[e] = c
    r = Polynomial(ring, rem)
    if track:
        return r, cof
    return r


def _reduce_mora(f: Polynomial, basis: list[Polynomial], limits: Limits,
                 track: bool = False):
    """Mora weak normal form for the local ordering.

    Reducers are the basis elements plus intermediate results stored when a
    reduction would raise the ecart; among applicable reducers the one with
    minimal ecart wins, ties broken by insertion index. The result r satisfies
    u*f = sum a_i b_i + r for a unit u of the local ring; track=True returns
    the unit and the cofactors as a membership certificate.
    """
    ring = f.ring
    one = Polynomial.constant(ring, 1)
    reducers: list[Polynomial] = list(basis)
    inter_reps: list[tuple[Polynomial, list[Polynomial]]] = []
    h = f
    u = one
    cof = [Polynomial.zero(ring) for _ in basis]
    steps = 0
    while not h.is_zero:
        steps += 1
        if steps > limits.max_reduction_steps:
            raise ResourceCapError("Mora normal form exceeded the reduction step cap")
        e = h.leading_exponent()
        best_idx = None
        best_rank = None
        for idx, g in enumerate(reducers):
            if _divides(g.leading_exponent(), e):
                rank = (_ecart(g), idx)
                if best_rank is None or rank < best_rank:
                    best_idx, best_rank = idx, rank
        if best_idx is None:
            break
        g = reducers[best_idx]
        if _ecart(g) > _ecart(h):
            reducers.append(h)
            if track:
                inter_reps.append((u, list(cof)))
        m = Polynomial.monomial(ring, _mono_quot(e, g.leading_exponent()),
                                h.terms[e] / g.leading_coefficient())
        h = h - m * g
        if track:
            if best_idx < len(basis):
                cof[best_idx] = cof[best_idx] + m
            else:
                bu, bc = inter_reps[best_idx - len(basis)]
                u = u - m * bu
                cof = [c - m * bj for c, bj in zip(cof, bc)]
    if track:
        if u.constant_term == 0:
            raise InternalInvariantError("Mora unit lost its constant term")
        return h, u, cof
    return h


def normal_form(f: Polynomial, sb: StandardBasis, limits: Limits = DEFAULT_LIMITS):
    if sb.locality == "global":
        return _reduce_global(f, list(sb.basis), limits)
    return _reduce_mora(f, list(sb.basis), limits)


def normal_form_with_cofactors(f: Polynomial, sb: StandardBasis,
                               limits: Limits = DEFAULT_LIMITS):
    """Normal form plus a certificate.

    Global: (r, cofactors) with f = sum a_i b_i + r.
    Local: (r, unit, cofactors) with unit*f = sum a_i b_i + r.
    """
    if sb.locality == "global":
        return _reduce_global(f, list(sb.basis), limits, track=True)
    return _reduce_mora(f, list(sb.basis), limits, track=True)


# --- basis completion --------------------------------------------------------


def _spoly(f: Polynomial, g: Polynomial) -> Polynomial:
    ring = f.ring
    ef, eg = f.leading_exponent(), g.leading_exponent()
    lcm = tuple(max(a, b) for a, b in zip(ef, eg))
    mf = Polynomial.monomial(ring, _mono_quot(lcm, ef), 1 / f.leading_coefficient())
    mg = Polynomial.monomial(ring, _mono_quot(lcm, eg), 1 / g.leading_coefficient())
    return mf * f - mg * g


def _complete(gens: list[Polynomial], ring: PolyRing, reduce_fn,
              limits: Limits) -> list[Polynomial]:
    G = sorted((_monic(g) for g in gens if not g.is_zero),
               key=lambda g: (ring.key(g.leading_exponent()), str(g)))
    if not G:
        return []
    heap: list[tuple[int, int, int]] = []
    for i in range(len(G)):
        for j in range(i):
            lcm = tuple(max(a, b) for a, b in zip(G[i].leading_exponent(),
                                                  G[j].leading_exponent()))
            heapq.heappush(heap, (sum(lcm), j, i))
    while heap:
        deg, j, i = heapq.heappop(heap)
        ei, ej = G[i].leading_exponent(), G[j].leading_exponent()
        lcm = tuple(max(a, b) for a, b in zip(ei, ej))
        if all(a + b == c for a, b, c in zip(ei, ej, lcm)):
            continue  # product criterion: coprime leads
        if deg > limits.max_spair_degree:
            raise ResourceCapError(
                f"S-pair degree {deg} exceeds the cap {limits.max_spair_degree}")
        h = reduce_fn(_spoly(G[i], G[j]), G, limits)
        if h.is_zero:
            continue
        G.append(_monic(h))
        if len(G) > limits.max_basis_size:
            raise ResourceCapError(f"basis size exceeds the cap {limits.max_basis_size}")
        k = len(G) - 1
        for t in range(k):
            lcm = tuple(max(a, b) for a, b in zip(G[t].leading_exponent(),
                                                  G[k].leading_exponent()))
            heapq.heappush(heap, (sum(lcm), t, k))
    return G


def _autoreduce_global(G: list[Polynomial], limits: Limits) -> list[Polynomial]:
    ring = G[0].ring if G else None
    G = sorted(G, key=lambda g: ring.key(g.leading_exponent()))
    minimal: list[Polynomial] = []
    for g in G:
        e = g.leading_exponent()
        if any(_divides(h.leading_exponent(), e) for h in minimal):
            continue
        minimal.append(g)
    changed = True
    while changed:
        changed = False
        out: list[Polynomial] = []
        for i, g in enumerate(minimal):
            others = out + minimal[i + 1:]
            r = _reduce_global(g, others, limits) if others else g
            if r.is_zero:
                changed = True
                continue
            r = _monic(r)
            if r != g:
                changed = True
            out.append(r)
        minimal = sorted(out, key=lambda g: ring.key(g.leading_exponent()))
    return minimal


def _minimalize_local(G: list[Polynomial]) -> list[Polynomial]:
    if not G:
        return []
    ring = G[0].ring
    G = sorted(G, key=lambda g: (ring.key(g.leading_exponent()), str(g)), reverse=True)
    kept: list[Polynomial] = []
    for g in G:
        e = g.leading_exponent()
        if any(_divides(h.leading_exponent(), e) for h in kept):
            continue
        kept.append(_monic(g))
    kept.sort(key=lambda g: (sum(g.leading_exponent()), g.leading_exponent()))
    return kept


def groebner_basis(i: Ideal, limits: Limits = DEFAULT_LIMITS) -> StandardBasis:
    """Reduced Groebner basis; requires a global ordering. Deterministic."""
    if i.ring.ordering not in (GLOBAL_DEGREVLEX, LEX_ELIMINATION):
        raise DegenerateInputError("groebner_basis needs a global ordering")
    G = _complete(list(i.generators), i.ring, _reduce_global, limits)
    G = _autoreduce_global(G, limits)
    return StandardBasis(i, tuple(G), "global")


def local_standard_basis(i: Ideal, limits: Limits = DEFAULT_LIMITS) -> StandardBasis:
    """Standard basis via Mora's normal form; requires the local ordering."""
    if i.ring.ordering != LOCAL_NEGDEGREVLEX:
        raise DegenerateInputError("local_standard_basis needs the local ordering")
    G = _complete(list(i.generators), i.ring, _reduce_mora, limits)
    G = _minimalize_local(G)
    return StandardBasis(i, tuple(G), "local")


def standard_basis(i: Ideal, limits: Limits = DEFAULT_LIMITS) -> StandardBasis:
    if i.ring.is_local:
        return local_standard_basis(i, limits)
    return groebner_basis(i, limits)


def buchberger_criterion_holds(sb: StandardBasis, limits: Limits = DEFAULT_LIMITS) -> bool:
    """Every S-pair of the basis reduces to zero under the matching normal form."""
    basis = list(sb.basis)
    reduce_fn = _reduce_global if sb.locality == "global" else _reduce_mora
    for i in range(len(basis)):
        for j in range(i):
            h = reduce_fn(_spoly(basis[i], basis[j]), basis, limits)
            if not h.is_zero:
                return False
    return True


def is_proper(i: Ideal | StandardBasis, limits: Limits = DEFAULT_LIMITS) -> bool:
    sb = i if isinstance(i, StandardBasis) else standard_basis(i, limits)
    return not sb.contains_unit()


# --- quotient data ------------------------------------------------------------


def _leading_ideal_zero_dimensional(leads: tuple[Exponent, ...], arity: int) -> bool:
    for v in range(arity):
        if not any(e[v] > 0 and all(x == 0 for i, x in enumerate(e) if i != v)
                   for e in leads):
            return False
    return True


def quotient_basis(sb: StandardBasis) -> QuotientBasis | None:
    """Standard monomials under the leading ideal; None when infinite."""
    leads = sb.leading_exponents()
    arity = sb.ring.arity
    if any(sum(e) == 0 for e in leads):
        return QuotientBasis(())
    if not _leading_ideal_zero_dimensional(leads, arity):
        return None
    origin = (0,) * arity
    seen = {origin}
    queue = [origin]
    out = []
    while queue:
        m = queue.pop()
        out.append(m)
        for v in range(arity):
            child = tuple(x + 1 if i == v else x for i, x in enumerate(m))
            if child in seen:
                continue
            seen.add(child)
            if not any(_divides(le, child) for le in leads):
                queue.append(child)
    out.sort(key=lambda e: (sum(e), e))
    return QuotientBasis(tuple(out))


def colength(i: Ideal | StandardBasis, limits: Limits = DEFAULT_LIMITS) -> int | None:
    """Number of standard monomials of a local ideal; None when infinite."""
    sb = i if isinstance(i, StandardBasis) else local_standard_basis(i, limits)
    qb = quotient_basis(sb)
    return None if qb is None else len(qb)


def krull_dimension(i: Ideal | StandardBasis, limits: Limits = DEFAULT_LIMITS) -> int:
    """Dimension of the leading-ideal variety; -1 for the unit ideal."""
    sb = i if isinstance(i, StandardBasis) else standard_basis(i, limits)
    if sb.contains_unit():
        return -1
    arity = sb.ring.arity
    supports = [frozenset(idx for idx, x in enumerate(e) if x)
                for e in sb.leading_exponents()]
    for size in range(arity, -1, -1):
        for S in itertools.combinations(range(arity), size):
            block = set(S)
            if not any(s <= block for s in supports):
                return size
    raise InternalInvariantError("independent-set search fell through")


# --- derived operations --------------------------------------------------------


def with_ordering(i: Ideal, ordering: str, block: int = 0) -> Ideal:
    """The same generators viewed in a ring with a different ordering."""
    target = PolyRing(i.ring.variables, ordering, block)
    return Ideal(target, tuple(g.rename_into(target) for g in i.generators))


def eliminate(i: Ideal, drop: list[str], limits: Limits = DEFAULT_LIMITS) -> Ideal:
    """Generators of the intersection with the subring without the dropped variables."""
    for v in drop:
        i.ring.index(v)
    keep = [v for v in i.ring.variables if v not in drop]
    if not keep:
        raise DegenerateInputError("cannot eliminate every variable")
    elim_ring = PolyRing(tuple(drop) + tuple(keep), LEX_ELIMINATION, block=len(drop))
    mapped = Ideal(elim_ring, tuple(g.rename_into(elim_ring) for g in i.generators))
    sb = groebner_basis(mapped, limits)
    drop_idx = set(range(len(drop)))
    target_ordering = i.ring.ordering if i.ring.ordering != LEX_ELIMINATION else GLOBAL_DEGREVLEX
    target = PolyRing(tuple(keep), target_ordering, 0)
    gens = []
    for g in sb.basis:
        if all(all(e[k] == 0 for k in drop_idx) for e in g.terms):
            gens.append(g.rename_into(target))
    return Ideal(target, tuple(gens))


def radical_membership(p: Polynomial, i: Ideal, limits: Limits = DEFAULT_LIMITS) -> bool:
    """Rabinowitsch trick: p lies in the radical iff 1 in i + (1 - w*p)."""
    if p.is_zero:
        return True
    if p.ring != i.ring:
        raise RingMismatchError("polynomial and ideal live in different rings")
    w = "w_"
    while w in i.ring.variables:
        w += "_"
    ext = PolyRing(i.ring.variables + (w,), GLOBAL_DEGREVLEX)
    gens = [g.rename_into(ext) for g in i.generators]
    gens.append(Polynomial.constant(ext, 1)
                - Polynomial.variable(ext, w) * p.rename_into(ext))
    sb = groebner_basis(Ideal(ext, tuple(gens)), limits)
    return sb.contains_unit()


def singular_locus_ideal(i: Ideal, expected_codim: int) -> Ideal:
    """The ideal plus all expected_codim-sized minors of its Jacobian."""
    r = len(i.generators)
    c = expected_codim
    if c < 1 or c > r:
        raise DegenerateInputError(f"codimension {c} incompatible with {r} generators")
    names = list(i.ring.variables)
    jac = jacobian_matrix(list(i.generators), names)
    minors: list[Polynomial] = []
    for rows in itertools.combinations(range(r), c):
        for cols in itertools.combinations(range(len(names)), c):
            sub = [[jac[a][b] for b in cols] for a in rows]
            d = poly_det(sub, i.ring)
            if not d.is_zero and d not in minors:
                minors.append(d)
    return Ideal(i.ring, i.generators + tuple(minors))


def translate_ideal(i: Ideal, point: list[Fraction]) -> Ideal:
    """Substitute v -> v + point[v] in every generator."""
    if len(point) != i.ring.arity:
        raise DegenerateInputError("point length must match the ring arity")
    shift = {name: Fraction(a) for name, a in zip(i.ring.variables, point)}
    gens = tuple(shift_point(g, shift) for g in i.generators)
    return Ideal(i.ring, tuple(g for g in gens if not g.is_zero))


def jacobian_rank_at(i: Ideal, point: list[Fraction]) -> int:
    """Exact rank of the Jacobian of the generators evaluated at a point."""
    values = {name: Fraction(a) for name, a in zip(i.ring.variables, point)}
    rows = []
    for g in i.generators:
        rows.append([g.derivative(v).evaluate(values) for v in i.ring.variables])
    return linalg.rank(rows)


# --- classes in a finite quotient ------------------------------------------------


def reduce_to_class_vector(f: Polynomial, sb: StandardBasis, qb: QuotientBasis,
                           limits: Limits = DEFAULT_LIMITS) -> list[Fraction]:
    """Coordinates of the class of f in the standard-monomial basis.

    Valid for local standard bases of finite colength: every monomial of degree
    above the largest standard monomial lies in the local ideal, so such terms
    may be dropped and the reduction runs inside a finite set of monomials.
    """
    if not qb.monomials:
        return []
    cutoff = qb.max_degree() + 1
    ring = sb.ring
    key = ring.key
    leads = sb.leading_exponents()
    basis = sb.basis
    std = {e: i for i, e in enumerate(qb.monomials)}
    work = {e: c for e, c in f.terms.items() if sum(e) < cutoff}
    out = [Fraction(0)] * len(qb.monomials)
    steps = 0
    while work:
        steps += 1
        if steps > limits.max_reduction_steps:
            raise ResourceCapError("class reduction exceeded the step cap")
        e = max(work, key=key)
        c = work.pop(e)
        hit = None
        for i, le in enumerate(leads):
            if _divides(le, e):
                hit = i
                break
        if hit is None:
            if e not in std:
                raise InternalInvariantError("irreducible monomial outside the quotient basis")
            out[std[e]] += c
            continue
        g = basis[hit]
        q = _mono_quot(e, leads[hit])
        qc = c / g.leading_coefficient()
        for ge, gc in g.terms.items():
            t = tuple(a + b for a, b in zip(q, ge))
            if t == e or sum(t) >= cutoff:
                continue
            s = work.get(t, Fraction(0)) - qc * gc
            if s == 0:
                work.pop(t, None)
            else:
                work[t] = s
    return out
