"""Polynomial kernel: parsing, substitution, resultants, squarefree parts."""

import random
from fractions import Fraction as Q

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from germlab.errors import DegenerateInputError, PolyParseError
from germlab.ideals import eliminate, groebner_basis, ideal, normal_form
from germlab.rings import (
    Polynomial,
    exact_div,
    jacobian_matrix,
    parse_poly,
    poly_gcd,
    ring,
    squarefree_part,
    sylvester_resultant,
)

R2 = ring("x", "y")
RY = ring("y1", "y2")


def P(text, rng=R2):
    return parse_poly(text, rng)


class TestParse:
    def test_monomials(self):
        p = P("y^3 + x*y")
        assert p.terms == {(0, 3): Q(1), (1, 1): Q(1)}

    def test_difference_of_squares(self):
        p = parse_poly("(y1 - y2)*(y1 + y2)", RY)
        assert p == parse_poly("y1^2 - y2^2", RY)

    def test_zero(self):
        assert P("0").is_zero

    def test_rational_literals(self):
        p = P("3/8*x - 1/2")
        assert p.terms == {(1, 0): Q(3, 8), (0, 0): Q(-1, 2)}

    def test_unknown_variable(self):
        with pytest.raises(PolyParseError) as err:
            P("x + z")
        assert "z" in str(err.value)

    def test_syntax_error_position(self):
        with pytest.raises(PolyParseError) as err:
            P("x + * y")
        assert err.value.position is not None

    def test_power_and_parens(self):
        assert P("(x + y)^2") == P("x^2 + 2*x*y + y^2")


class TestSubstitute:
    def test_antisymmetry(self):
        p = parse_poly("y1 + y2", RY)
        img = p.substitute({"y2": -Polynomial.variable(RY, "y1")}, RY)
        assert img.is_zero

    def test_hand_expansion(self):
        big = ring("x", "y1", "y2")
        p = parse_poly("y1^2 + y1*y2 + y2^2 + x^2", big)
        img = p.substitute({"y2": -Polynomial.variable(big, "y1")}, big)
        assert img == parse_poly("y1^2 + x^2", big)

    def test_specialise_to_zero(self):
        rt = ring("t")
        p = parse_poly("t", rt)
        assert p.substitute({"t": Polynomial.zero(rt)}, rt).is_zero

    def test_identity_bindings(self):
        p = P("x^3*y - 2*y + 7")
        same = p.substitute({v: Polynomial.variable(R2, v) for v in R2.variables}, R2)
        assert same == p


class TestJacobian:
    def test_linear(self):
        m = jacobian_matrix([parse_poly("y1 + y2", RY)], ["y1", "y2"])
        assert [str(e) for e in m[0]] == ["1", "1"]

    def test_power_rule(self):
        m = jacobian_matrix([P("y^2 + x^3")], ["x", "y"])
        assert [str(e) for e in m[0]] == ["3*x^2", "2*y"]

    def test_two_by_two(self):
        m = jacobian_matrix([P("x*y"), P("x + y")], ["x", "y"])
        assert [[str(e) for e in row] for row in m] == [["y", "x"], ["1", "1"]]


class TestResultant:
    def test_cuspidal_edge(self):
        rng = ring("y", "X", "Z")
        res = sylvester_resultant(parse_poly("y^2 - X", rng), parse_poly("y^3 - Z", rng), "y")
        assert res == parse_poly("Z^2 - X^3", rng)

    def test_linear(self):
        rng = ring("y", "a", "b")
        res = sylvester_resultant(parse_poly("y - a", rng), parse_poly("y - b", rng), "y")
        assert res == parse_poly("a - b", rng)

    def test_weighted(self):
        rng = ring("y", "X", "Z", "W")
        res = sylvester_resultant(parse_poly("y^2 - X", rng), parse_poly("y*W - Z", rng), "y")
        assert res == parse_poly("Z^2 - X*W^2", rng)

    def test_degree_zero_rejected(self):
        rng = ring("y", "X")
        with pytest.raises(DegenerateInputError):
            sylvester_resultant(parse_poly("X", rng), parse_poly("y - X", rng), "y")


class TestSquarefree:
    def test_repeated_factor(self):
        p = P("(y - x^2)^2*(y + x^2)")
        sf = squarefree_part(p)
        expected = P("(y - x^2)*(y + x^2)")
        assert sf == expected or sf == -expected

    def test_pure_power(self):
        assert squarefree_part(P("x^3")) == P("x")

    def test_already_squarefree(self):
        p = P("y^2 - x^4")
        sf = squarefree_part(p)
        assert sf == p or sf == -p
        # gcd with the partials is constant
        g = poly_gcd(poly_gcd(p, p.derivative("x")), p.derivative("y"))
        assert g.is_constant

    def test_zero_rejected(self):
        with pytest.raises(DegenerateInputError):
            squarefree_part(Polynomial.zero(R2))


def _random_poly(rng, rnd, max_degree, max_terms):
    terms = {}
    arity = rng.arity
    for _ in range(rnd.randint(1, max_terms)):
        while True:
            e = tuple(rnd.randint(0, max_degree) for _ in range(arity))
            if sum(e) <= max_degree:
                break
        terms[e] = Q(rnd.randint(-3, 3))
    p = Polynomial(rng, terms)
    return p


class TestProperties:
    def test_print_parse_roundtrip_catalog(self):
        from germlab.catalog import all_germ_entries

        for _name, g in all_germ_entries():
            for br in g.branches:
                for comp in br.components:
                    assert parse_poly(str(comp), g.ring) == comp

    @settings(max_examples=60, deadline=None)
    @given(st.integers(0, 10**6))
    def test_print_parse_roundtrip_random(self, seed):
        rnd = random.Random(seed)
        p = _random_poly(R2, rnd, 5, 6)
        assert parse_poly(str(p), R2) == p

    @settings(max_examples=40, deadline=None)
    @given(st.integers(0, 10**6))
    def test_substitute_identity(self, seed):
        rnd = random.Random(seed)
        p = _random_poly(R2, rnd, 5, 6)
        idmap = {v: Polynomial.variable(R2, v) for v in R2.variables}
        assert p.substitute(idmap, R2) == p

    @settings(max_examples=25, deadline=None)
    @given(st.integers(0, 10**6), st.integers(1, 3))
    def test_squarefree_of_powers(self, seed, n):
        rnd = random.Random(seed)
        p = _random_poly(R2, rnd, 3, 3)
        if p.is_zero or p.is_constant:
            return
        a = squarefree_part(p**n)
        b = squarefree_part(p)
        assert a == b or a == -b

    def test_resultant_lies_in_elimination_ideal(self):
        # >= 20 fuzz cases, 3 variables, degrees <= 4
        rng3 = ring("y", "u", "v")
        rnd = random.Random(20240811)
        done = 0
        while done < 20:
            p = _random_poly(rng3, rnd, 4, 4)
            q = _random_poly(rng3, rnd, 4, 4)
            if p.degree_in("y") < 1 or q.degree_in("y") < 1:
                continue
            res = sylvester_resultant(p, q, "y")
            elim = eliminate(ideal(rng3, p, q), ["y"])
            if res.is_zero:
                done += 1
                continue
            moved = res.rename_into(elim.ring)
            if elim.is_zero_ideal:
                # the elimination ideal is zero only if the resultant vanishes
                assert res.is_zero
            else:
                gb = groebner_basis(elim)
                assert normal_form(moved, gb).is_zero
            done += 1

    def test_exact_div_roundtrip(self):
        rnd = random.Random(7)
        for _ in range(30):
            a = _random_poly(R2, rnd, 4, 4)
            b = _random_poly(R2, rnd, 3, 3)
            if a.is_zero or b.is_zero:
                continue
            assert exact_div(a * b, b) == a
