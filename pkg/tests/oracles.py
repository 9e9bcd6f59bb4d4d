"""Independent oracles for the test suite.

These deliberately avoid the library's standard-basis machinery so that the
values they produce are computed along a different route than the code they
check.
"""

from __future__ import annotations

import itertools
from fractions import Fraction

from germlab.linalg import rank
from germlab.rings import Polynomial, PolyRing


def monomials_below(arity: int, bound: int) -> list[tuple[int, ...]]:
    out = [e for e in itertools.product(range(bound), repeat=arity) if sum(e) < bound]
    out.sort(key=lambda e: (sum(e), e))
    return out


def brute_force_colength(gens: list[Polynomial], bound: int) -> int:
    """dim of Q[x]_<bound modulo the span of all truncated multiples m * g.

    For a zero-dimensional local ideal this stabilises to the colength once the
    bound passes the largest standard monomial; callers pick a generous bound.
    """
    if not gens:
        raise ValueError("need at least one generator")
    ring = gens[0].ring
    arity = ring.arity
    monos = monomials_below(arity, bound)
    index = {e: i for i, e in enumerate(monos)}
    rows: list[list[Fraction]] = []
    for g in gens:
        for m in monos:
            row = [Fraction(0)] * len(monos)
            nonzero = False
            for ge, gc in g.terms.items():
                e = tuple(a + b for a, b in zip(m, ge))
                if sum(e) < bound:
                    row[index[e]] += gc
                    nonzero = True
            if nonzero:
                rows.append(row)
    return len(monos) - rank(rows)
