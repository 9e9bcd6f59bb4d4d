"""Exact multivariate polynomials over the rationals.

Coefficients are fractions.Fraction throughout; no floating point anywhere.
A PolyRing pairs an ordered variable tuple with one active monomial order:
global degrevlex, local negdegrevlex, or a block elimination order.
Polynomials are immutable once built and safe to share between threads.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd as _int_gcd

from .errors import (
    DegenerateInputError,
    InexactDivisionError,
    PolyParseError,
    RingMismatchError,
)

Exponent = tuple[int, ...]

GLOBAL_DEGREVLEX = "global-degrevlex"
LOCAL_NEGDEGREVLEX = "local-negdegrevlex"
LEX_ELIMINATION = "lex-elimination"

_ORDERINGS = (GLOBAL_DEGREVLEX, LOCAL_NEGDEGREVLEX, LEX_ELIMINATION)


def _drl_key(e: Exponent):
    # degrevlex: higher total degree wins, ties broken reverse-lexicographically
    return (sum(e), tuple(-x for x in reversed(e)))


@dataclass(frozen=True)
class PolyRing:
    """Ordered variable names plus the active monomial ordering."""

    variables: tuple[str, ...]
    ordering: str = GLOBAL_DEGREVLEX
    block: int = 0  # size of the leading block under LEX_ELIMINATION

    def __post_init__(self):
        if not self.variables:
            raise DegenerateInputError("a ring needs at least one variable")
        if len(set(self.variables)) != len(self.variables):
            raise DegenerateInputError(f"duplicate variable names: {self.variables}")
        if any(not v for v in self.variables):
            raise DegenerateInputError("empty variable name")
        if self.ordering not in _ORDERINGS:
            raise DegenerateInputError(f"unknown ordering {self.ordering!r}")
        if self.ordering == LEX_ELIMINATION and not (0 < self.block < len(self.variables)):
            raise DegenerateInputError("elimination block must split the variables")

    @property
    def arity(self) -> int:
        return len(self.variables)

    @property
    def is_local(self) -> bool:
        return self.ordering == LOCAL_NEGDEGREVLEX

    def index(self, name: str) -> int:
        try:
            return self.variables.index(name)
        except ValueError:
            raise RingMismatchError(f"variable {name!r} not in ring {self.variables}") from None

    def key(self, e: Exponent):
        """Sort key; the leading exponent of a polynomial is the maximal one."""
        if self.ordering == GLOBAL_DEGREVLEX:
            return _drl_key(e)
        if self.ordering == LOCAL_NEGDEGREVLEX:
            return (-sum(e), tuple(-x for x in reversed(e)))
        b = self.block
        return (_drl_key(e[:b]), _drl_key(e[b:]))

    def __str__(self):
        return f"Q[{', '.join(self.variables)}; {self.ordering}]"


def ring(*names: str, ordering: str = GLOBAL_DEGREVLEX, block: int = 0) -> PolyRing:
    return PolyRing(tuple(names), ordering, block)


def local_ring(*names: str) -> PolyRing:
    return PolyRing(tuple(names), LOCAL_NEGDEGREVLEX)


class Polynomial:
    """Sparse exact polynomial: map from exponent tuple to nonzero Fraction."""

    __slots__ = ("ring", "terms")

    def __init__(self, ring: PolyRing, terms: dict[Exponent, Fraction] | None = None):
        clean: dict[Exponent, Fraction] = {}
        for e, c in (terms or {}).items():
            c = Fraction(c)
            if c == 0:
                continue
            e = tuple(e)
            if len(e) != ring.arity or any(x < 0 for x in e):
                raise RingMismatchError(f"bad exponent {e} for ring {ring}")
            clean[e] = c
        self.ring = ring
        self.terms = clean

    # --- constructors -------------------------------------------------

    @classmethod
    def zero(cls, ring: PolyRing) -> "Polynomial":
        return cls(ring, {})

    @classmethod
    def constant(cls, ring: PolyRing, c) -> "Polynomial":
        return cls(ring, {(0,) * ring.arity: Fraction(c)})

    @classmethod
    def variable(cls, ring: PolyRing, name: str) -> "Polynomial":
        e = [0] * ring.arity
        e[ring.index(name)] = 1
        return cls(ring, {tuple(e): Fraction(1)})

    @classmethod
    def monomial(cls, ring: PolyRing, e: Exponent, c=1) -> "Polynomial":
        return cls(ring, {tuple(e): Fraction(c)})

    # --- basic queries -------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self.terms

    @property
    def is_constant(self) -> bool:
        return all(sum(e) == 0 for e in self.terms)

    @property
    def constant_term(self) -> Fraction:
        return self.terms.get((0,) * self.ring.arity, Fraction(0))

    def total_degree(self) -> int:
        """Maximal total degree; -1 for the zero polynomial."""
        return max((sum(e) for e in self.terms), default=-1)

    def order(self) -> int:
        """Minimal total degree of a term; -1 for the zero polynomial."""
        return min((sum(e) for e in self.terms), default=-1)

    def degree_in(self, name: str) -> int:
        i = self.ring.index(name)
        return max((e[i] for e in self.terms), default=-1)

    def support(self) -> set[int]:
        """Indices of variables that actually occur."""
        used: set[int] = set()
        for e in self.terms:
            for i, x in enumerate(e):
                if x:
                    used.add(i)
        return used

    def leading_exponent(self) -> Exponent | None:
        if not self.terms:
            return None
        return max(self.terms, key=self.ring.key)

    def leading_coefficient(self) -> Fraction:
        e = self.leading_exponent()
        return self.terms[e] if e is not None else Fraction(0)

    def sorted_terms(self) -> list[tuple[Exponent, Fraction]]:
        """Terms in decreasing order of the ring's monomial order."""
        return sorted(self.terms.items(), key=lambda t: self.ring.key(t[0]), reverse=True)

    # --- arithmetic ----------------------------------------------------

    def _check(self, other: "Polynomial"):
        if self.ring != other.ring:
            raise RingMismatchError(f"mixed rings {self.ring} and {other.ring}")

    def __add__(self, other):
        if not isinstance(other, Polynomial):
            other = Polynomial.constant(self.ring, other)
        self._check(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            s = out.get(e, Fraction(0)) + c
            if s == 0:
                out.pop(e, None)
            else:
                out[e] = s
        return Polynomial(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial(self.ring, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        if not isinstance(other, Polynomial):
            other = Polynomial.constant(self.ring, other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, Polynomial):
            c = Fraction(other)
            if c == 0:
                return Polynomial.zero(self.ring)
            return Polynomial(self.ring, {e: c * v for e, v in self.terms.items()})
        self._check(other)
        out: dict[Exponent, Fraction] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                s = out.get(e, Fraction(0)) + c1 * c2
                if s == 0:
                    out.pop(e, None)
                else:
                    out[e] = s
        return Polynomial(self.ring, out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise DegenerateInputError("negative polynomial power")
        out = Polynomial.constant(self.ring, 1)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base if n > 1 else base
            n >>= 1
        return out

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Polynomial.constant(self.ring, other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.ring == other.ring and self.terms == other.terms

    def __hash__(self):
        return hash((self.ring, tuple(sorted(self.terms.items()))))

    def __bool__(self):
        return bool(self.terms)

    # --- calculus and maps ----------------------------------------------

    def derivative(self, name: str) -> "Polynomial":
        i = self.ring.index(name)
        out: dict[Exponent, Fraction] = {}
        for e, c in self.terms.items():
            if e[i] == 0:
                continue
            d = list(e)
            d[i] -= 1
            out[tuple(d)] = c * e[i]
        return Polynomial(self.ring, out)

    def evaluate(self, values: dict[str, Fraction]) -> Fraction:
        point = [Fraction(values[v]) for v in self.ring.variables]
        total = Fraction(0)
        for e, c in self.terms.items():
            v = c
            for x, k in zip(point, e):
                if k:
                    v *= x**k
            total += v
        return total

    def substitute(
        self,
        bindings: dict[str, "Polynomial"],
        target: PolyRing | None = None,
    ) -> "Polynomial":
        """Exact composition; unbound variables must exist in the target ring."""
        for name in bindings:
            self.ring.index(name)  # raises if unknown
        images = {k: v for k, v in bindings.items()}
        if target is None:
            rings = {p.ring for p in images.values()}
            if len(rings) > 1:
                raise RingMismatchError("binding images live in different rings")
            target = rings.pop() if rings else self.ring
        for p in images.values():
            if p.ring != target:
                raise RingMismatchError("binding image outside the target ring")
        unbound = [v for v in self.ring.variables if v not in images]
        for v in unbound:
            target.index(v)  # must exist by name
        cache: dict[tuple[str, int], Polynomial] = {}

        def power(name: str, k: int) -> Polynomial:
            got = cache.get((name, k))
            if got is None:
                got = images[name] ** k
                cache[(name, k)] = got
            return got

        out = Polynomial.zero(target)
        for e, c in self.terms.items():
            mono_exp = [0] * target.arity
            piece = Polynomial.constant(target, c)
            for i, k in enumerate(e):
                if k == 0:
                    continue
                name = self.ring.variables[i]
                if name in images:
                    piece = piece * power(name, k)
                else:
                    mono_exp[target.index(name)] += k
            if any(mono_exp):
                piece = piece * Polynomial.monomial(target, tuple(mono_exp))
            out = out + piece
        return out

    def rename_into(self, target: PolyRing, name_map: dict[str, str] | None = None) -> "Polynomial":
        """Move a polynomial into another ring, optionally renaming variables.

        Only variables that actually occur need to exist in the target.
        """
        name_map = name_map or {}
        used = self.support()
        where: list[int | None] = []
        for i, v in enumerate(self.ring.variables):
            if i in used:
                where.append(target.index(name_map.get(v, v)))
            else:
                where.append(None)
        out: dict[Exponent, Fraction] = {}
        for e, c in self.terms.items():
            t = [0] * target.arity
            for i, k in enumerate(e):
                if k:
                    t[where[i]] += k
            te = tuple(t)
            s = out.get(te, Fraction(0)) + c
            if s == 0:
                out.pop(te, None)
            else:
                out[te] = s
        return Polynomial(target, out)

    # --- printing --------------------------------------------------------

    def _monomial_str(self, e: Exponent) -> str:
        parts = []
        for name, k in zip(self.ring.variables, e):
            if k == 1:
                parts.append(name)
            elif k > 1:
                parts.append(f"{name}^{k}")
        return "*".join(parts)

    def __str__(self):
        if not self.terms:
            return "0"
        chunks: list[str] = []
        for e, c in self.sorted_terms():
            mono = self._monomial_str(e)
            mag = abs(c)
            if not mono:
                body = str(mag)
            elif mag == 1:
                body = mono
            else:
                body = f"{mag}*{mono}"
            if not chunks:
                chunks.append(body if c > 0 else f"-{body}")
            else:
                chunks.append(f"{'+' if c > 0 else '-'} {body}")
        return " ".join(chunks)

    def __repr__(self):
        return f"<{self} in {self.ring}>"


# --- parsing ---------------------------------------------------------------


class _Parser:
    """Recursive descent over: expr := ['+'|'-'] term (('+'|'-') term)*;
    term := factor ('*' factor)*; factor := base ('^' nat)?;
    base := var | rational | '(' expr ')'; rational := int ('/' nat)?."""

    def __init__(self, text: str, ring: PolyRing):
        self.text = text
        self.ring = ring
        self.pos = 0

    def error(self, message: str):
        raise PolyParseError(message, position=self.pos)

    def skip_ws(self):
        while self.pos < len(self.text) and self.text[self.pos] in " \t":
            self.pos += 1

    def peek(self) -> str:
        self.skip_ws()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def take(self, ch: str):
        if self.peek() != ch:
            self.error(f"expected {ch!r}")
        self.pos += 1

    def parse(self) -> Polynomial:
        p = self.expr()
        if self.peek():
            self.error(f"unexpected {self.peek()!r}")
        return p

    def expr(self) -> Polynomial:
        sign = 1
        if self.peek() in ("+", "-"):
            sign = -1 if self.peek() == "-" else 1
            self.pos += 1
        p = self.term() * sign
        while self.peek() in ("+", "-"):
            op = self.peek()
            self.pos += 1
            q = self.term()
            p = p + q if op == "+" else p - q
        return p

    def term(self) -> Polynomial:
        p = self.factor()
        while self.peek() == "*":
            self.pos += 1
            p = p * self.factor()
        return p

    def factor(self) -> Polynomial:
        p = self.base()
        if self.peek() == "^":
            self.pos += 1
            n = self.nat()
            p = p**n
        return p

    def nat(self) -> int:
        self.skip_ws()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if start == self.pos:
            self.error("expected a natural number")
        return int(self.text[start : self.pos])

    def base(self) -> Polynomial:
        ch = self.peek()
        if ch == "(":
            self.pos += 1
            p = self.expr()
            self.take(")")
            return p
        if ch.isdigit():
            num = self.nat()
            if self.peek() == "/":
                self.pos += 1
                den = self.nat()
                if den == 0:
                    self.error("zero denominator")
                return Polynomial.constant(self.ring, Fraction(num, den))
            return Polynomial.constant(self.ring, num)
        if ch.isalpha():
            start = self.pos
            while self.pos < len(self.text) and (
                self.text[self.pos].isalnum() or self.text[self.pos] == "_"
            ):
                self.pos += 1
            name = self.text[start : self.pos]
            if name not in self.ring.variables:
                self.pos = start
                self.error(f"unknown variable {name!r}")
            return Polynomial.variable(self.ring, name)
        self.error("expected a variable, number or parenthesis")


def parse_poly(text: str, ring: PolyRing) -> Polynomial:
    """Parse an arithmetic expression into the expanded canonical polynomial."""
    return _Parser(text, ring).parse()


# --- division, gcd, squarefree part -----------------------------------------


def _divides(a: Exponent, b: Exponent) -> bool:
    return all(x <= y for x, y in zip(a, b))


def exact_div(p: Polynomial, d: Polynomial) -> Polynomial:
    """Quotient p/d when the division is exact; raises otherwise."""
    if d.is_zero:
        raise DegenerateInputError("division by the zero polynomial")
    if p.is_zero:
        return p
    p._check(d)
    de = max(d.terms, key=_drl_key)
    dc = d.terms[de]
    num = dict(p.terms)
    out: dict[Exponent, Fraction] = {}
    while num:
        e = max(num, key=_drl_key)
        c = num[e]
        if not _divides(de, e):
            raise InexactDivisionError(f"{p} is not divisible by {d}")
        q = tuple(a - b for a, b in zip(e, de))
        qc = c / dc
        out[q] = out.get(q, Fraction(0)) + qc
        for fe, fc in d.terms.items():
            t = tuple(a + b for a, b in zip(q, fe))
            s = num.get(t, Fraction(0)) - qc * fc
            if s == 0:
                num.pop(t, None)
            else:
                num[t] = s
    return Polynomial(p.ring, out)


def _rational_content(p: Polynomial) -> Fraction:
    num = 0
    den = 1
    for c in p.terms.values():
        num = _int_gcd(num, abs(c.numerator))
        den = den * c.denominator // _int_gcd(den, c.denominator)
    return Fraction(num, den) if num else Fraction(0)


def normalized(p: Polynomial) -> Polynomial:
    """Scale by a rational so coefficients are coprime integers, leading one positive."""
    if p.is_zero:
        return p
    c = _rational_content(p)
    lead = p.terms[max(p.terms, key=_drl_key)]
    if lead < 0:
        c = -c
    return p * (1 / c)


def _coeffs_in(p: Polynomial, vi: int) -> dict[int, Polynomial]:
    """View p as univariate in variable index vi with polynomial coefficients."""
    out: dict[int, dict[Exponent, Fraction]] = {}
    for e, c in p.terms.items():
        d = e[vi]
        rest = list(e)
        rest[vi] = 0
        out.setdefault(d, {})[tuple(rest)] = c
    return {d: Polynomial(p.ring, t) for d, t in out.items()}


def _content_primitive(p: Polynomial, vi: int) -> tuple[Polynomial, Polynomial]:
    coeffs = _coeffs_in(p, vi)
    content = Polynomial.zero(p.ring)
    for d in sorted(coeffs):
        content = poly_gcd(content, coeffs[d])
    return content, exact_div(p, content)


def _pseudo_rem(a: Polynomial, b: Polynomial, vi: int) -> Polynomial:
    name = a.ring.variables[vi]
    db = b.degree_in(name)
    lb = _coeffs_in(b, vi)[db]
    r = a
    while not r.is_zero and r.degree_in(name) >= db:
        dr = r.degree_in(name)
        lr = _coeffs_in(r, vi)[dr]
        shift = Polynomial.monomial(
            r.ring, tuple(dr - db if i == vi else 0 for i in range(r.ring.arity))
        )
        r = lb * r - lr * shift * b
    return r


def poly_gcd(p: Polynomial, q: Polynomial) -> Polynomial:
    """Multivariate gcd via a primitive pseudo-remainder sequence."""
    if p.is_zero:
        return normalized(q)
    if q.is_zero:
        return normalized(p)
    p._check(q)
    used = sorted(p.support() | q.support())
    if not used:
        return Polynomial.constant(p.ring, 1)
    vi = used[-1]
    name = p.ring.variables[vi]
    cp, pp = _content_primitive(p, vi)
    cq, qq = _content_primitive(q, vi)
    cg = poly_gcd(cp, cq)
    a, b = pp, qq
    if a.degree_in(name) < b.degree_in(name):
        a, b = b, a
    while True:
        if b.degree_in(name) == 0:
            g = Polynomial.constant(p.ring, 1)
            break
        r = _pseudo_rem(a, b, vi)
        if r.is_zero:
            g = _content_primitive(b, vi)[1]
            break
        a, b = b, _content_primitive(r, vi)[1]
    return normalized(cg * g)


def squarefree_part(p: Polynomial) -> Polynomial:
    """Product of the distinct irreducible factors, up to a rational scalar."""
    if p.is_zero:
        raise DegenerateInputError("squarefree part of the zero polynomial")
    g = p
    for vi in sorted(p.support()):
        g = poly_gcd(g, p.derivative(p.ring.variables[vi]))
    return normalized(exact_div(p, g))


# --- determinants and resultants ---------------------------------------------


def poly_det(matrix: list[list[Polynomial]], ring: PolyRing) -> Polynomial:
    """Fraction-free Bareiss determinant of a square polynomial matrix."""
    n = len(matrix)
    if n == 0:
        return Polynomial.constant(ring, 1)
    m = [row[:] for row in matrix]
    sign = 1
    prev = Polynomial.constant(ring, 1)
    for k in range(n - 1):
        if m[k][k].is_zero:
            swap = next((i for i in range(k + 1, n) if not m[i][k].is_zero), None)
            if swap is None:
                return Polynomial.zero(ring)
            m[k], m[swap] = m[swap], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = exact_div(m[k][k] * m[i][j] - m[i][k] * m[k][j], prev)
            m[i][k] = Polynomial.zero(ring)
        prev = m[k][k]
    return m[n - 1][n - 1] * sign


def sylvester_resultant(p: Polynomial, q: Polynomial, var: str) -> Polynomial:
    """Resultant in var via the Sylvester determinant; the result is free of var."""
    p._check(q)
    ringp = p.ring
    vi = ringp.index(var)
    dp, dq = p.degree_in(var), q.degree_in(var)
    if dp < 1 or dq < 1:
        raise DegenerateInputError(f"both arguments need positive degree in {var}")
    pc = _coeffs_in(p, vi)
    qc = _coeffs_in(q, vi)
    zero = Polynomial.zero(ringp)
    size = dp + dq
    rows: list[list[Polynomial]] = []
    for s in range(dq):
        row = [zero] * size
        for d, c in pc.items():
            row[s + dp - d] = c
        rows.append(row)
    for s in range(dp):
        row = [zero] * size
        for d, c in qc.items():
            row[s + dq - d] = c
        rows.append(row)
    det = poly_det(rows, ringp)
    if det.degree_in(var) > 0:
        raise InexactDivisionError("resultant unexpectedly involves the eliminated variable")
    return det


def jacobian_matrix(ps: list[Polynomial], names: list[str]) -> list[list[Polynomial]]:
    """Matrix of partial derivatives, entry (i, j) = d ps[i] / d names[j]."""
    return [[p.derivative(v) for v in names] for p in ps]


def shift_point(p: Polynomial, point: dict[str, Fraction]) -> Polynomial:
    """Substitute v -> v + point[v] for every variable named in point."""
    bindings = {}
    for name, a in point.items():
        bindings[name] = Polynomial.variable(p.ring, name) + Fraction(a)
    return p.substitute(bindings, p.ring)


# --- univariate helpers -------------------------------------------------------


def univariate_coeffs(p: Polynomial, var: str) -> list[Fraction]:
    """Ascending coefficient list of a polynomial that involves only var."""
    vi = p.ring.index(var)
    if any(i != vi for i in p.support()):
        raise DegenerateInputError(f"{p} involves variables besides {var}")
    out = [Fraction(0)] * (p.degree_in(var) + 1 if not p.is_zero else 1)
    for e, c in p.terms.items():
        out[e[vi]] = c
    return out


def _divisors(n: int) -> list[int]:
    n = abs(n)
    out = set()
    d = 1
    while d * d <= n:
        if n % d == 0:
            out.add(d)
            out.add(n // d)
        d += 1
    return sorted(out)


def _eval_coeffs(coeffs: list[Fraction], x: Fraction) -> Fraction:
    acc = Fraction(0)
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


def _deflate(coeffs: list[Fraction], root: Fraction) -> list[Fraction]:
    out = [Fraction(0)] * (len(coeffs) - 1)
    acc = Fraction(0)
    for i in range(len(coeffs) - 1, 0, -1):
        acc = coeffs[i] + acc * root
        out[i - 1] = acc
    return out


def rational_roots(coeffs: list[Fraction]) -> tuple[list[tuple[Fraction, int]], list[Fraction]]:
    """All rational roots with multiplicities, plus the rational-root-free cofactor."""
    work = list(coeffs)
    while len(work) > 1 and work[-1] == 0:
        work.pop()
    if len(work) <= 1:
        raise DegenerateInputError("rational_roots needs a nonzero nonconstant polynomial")
    roots: list[tuple[Fraction, int]] = []
    mult0 = 0
    while work[0] == 0:
        work = work[1:]
        mult0 += 1
    if mult0:
        roots.append((Fraction(0), mult0))
    if len(work) > 1:
        den = 1
        for c in work:
            den = den * c.denominator // _int_gcd(den, c.denominator)
        ints = [int(c * den) for c in work]
        g = 0
        for v in ints:
            g = _int_gcd(g, abs(v))
        ints = [v // g for v in ints]
        cand: list[Fraction] = []
        for pnum in _divisors(ints[0]):
            for pden in _divisors(ints[-1]):
                cand.extend((Fraction(pnum, pden), Fraction(-pnum, pden)))
        seen = set()
        for r in sorted(set(cand)):
            if r in seen:
                continue
            seen.add(r)
            mult = 0
            frac = [Fraction(v) for v in ints]
            while len(frac) > 1 and _eval_coeffs(frac, r) == 0:
                frac = _deflate(frac, r)
                mult += 1
            if mult:
                roots.append((r, mult))
                work = frac
                ints = [int(c * _lcm_denoms(frac)) for c in frac]
    roots.sort(key=lambda t: t[0])
    return roots, work


def _lcm_denoms(coeffs: list[Fraction]) -> int:
    den = 1
    for c in coeffs:
        den = den * c.denominator // _int_gcd(den, c.denominator)
    return den


def _uni_strip(a: list[Fraction]) -> list[Fraction]:
    a = list(a)
    while len(a) > 1 and a[-1] == 0:
        a.pop()
    return a


def _uni_is_zero(a: list[Fraction]) -> bool:
    return all(c == 0 for c in a)


def _uni_divmod(a: list[Fraction], b: list[Fraction]) -> tuple[list[Fraction], list[Fraction]]:
    b = _uni_strip(b)
    if _uni_is_zero(b):
        raise DegenerateInputError("univariate division by zero")
    db = len(b) - 1
    q = [Fraction(0)] * max(len(a) - db, 1)
    r = _uni_strip(a)
    while len(r) - 1 >= db and not _uni_is_zero(r):
        dr = len(r) - 1
        f = r[-1] / b[-1]
        q[dr - db] += f
        for i in range(db + 1):
            r[dr - db + i] -= f * b[i]
        r = _uni_strip(r)
    return q, r


def _uni_gcd(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    a, b = _uni_strip(a), _uni_strip(b)
    while not _uni_is_zero(b):
        _, r = _uni_divmod(a, b)
        a, b = b, _uni_strip(r)
    return a


def count_real_roots(coeffs: list[Fraction]) -> int:
    """Number of distinct real roots, by Sturm's theorem."""
    work = _uni_strip(coeffs)
    if len(work) <= 1:
        raise DegenerateInputError("count_real_roots needs a nonconstant polynomial")

    def deriv(cs):
        return [cs[i] * i for i in range(1, len(cs))]

    g = _uni_gcd(work, deriv(work))
    if len(g) > 1:
        q, r = _uni_divmod(work, g)
        if not _uni_is_zero(r):
            raise InexactDivisionError("squarefree reduction failed")
        work = _uni_strip(q)
    chain = [work, _uni_strip(deriv(work))]
    while len(chain[-1]) > 1:
        _, rem = _uni_divmod(chain[-2], chain[-1])
        rem = _uni_strip(rem)
        if _uni_is_zero(rem):
            break
        chain.append([-c for c in rem])

    def sign_changes(direction: int) -> int:
        changes = 0
        prev = 0
        for cs in chain:
            lead = cs[-1]
            if lead == 0:
                continue
            s = lead if direction > 0 else lead * (-1) ** (len(cs) - 1)
            s = 1 if s > 0 else -1
            if prev and s != prev:
                changes += 1
            prev = s
        return changes

    return sign_changes(-1) - sign_changes(+1)
