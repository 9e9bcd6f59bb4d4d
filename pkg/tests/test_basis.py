"""Standard bases: Buchberger, Mora, colength, dimension, radical membership."""

import random
from fractions import Fraction as Q

import pytest

from oracles import brute_force_colength
from germlab.errors import DegenerateInputError, ResourceCapError
from germlab.ideals import (
    Limits,
    buchberger_criterion_holds,
    colength,
    eliminate,
    groebner_basis,
    ideal,
    is_proper,
    jacobian_rank_at,
    krull_dimension,
    local_standard_basis,
    normal_form,
    normal_form_with_cofactors,
    quotient_basis,
    radical_membership,
    singular_locus_ideal,
    translate_ideal,
)
from germlab.rings import Polynomial, local_ring, parse_poly, ring

R = ring("x", "y")
L = local_ring("x", "y")


class TestGroebner:
    def test_already_reduced(self):
        sb = groebner_basis(ideal(R, "x", "y"))
        assert sorted(str(g) for g in sb.basis) == ["x", "y"]

    def test_hand_buchberger(self):
        sb = groebner_basis(ideal(R, "x^2 - 1", "x*y - y"))
        assert normal_form(parse_poly("y*(x - 1)", R), sb).is_zero
        assert {str(g) for g in sb.basis} == {"x^2 - 1", "x*y - y"}

    def test_unit_ideal(self):
        sb = groebner_basis(ideal(R, "1"))
        assert [str(g) for g in sb.basis] == ["1"]
        assert sb.contains_unit()

    def test_determinism(self):
        a = groebner_basis(ideal(R, "x^2 + y", "x*y - 1", "y^3 - x"))
        b = groebner_basis(ideal(R, "x^2 + y", "x*y - 1", "y^3 - x"))
        assert [str(g) for g in a.basis] == [str(g) for g in b.basis]

    def test_degree_cap(self):
        tight = Limits(max_spair_degree=1)
        with pytest.raises(ResourceCapError):
            groebner_basis(ideal(R, "x^2 + y", "x*y^3 - 1"), tight)


class TestLocal:
    def test_monomial_colength(self):
        assert colength(ideal(L, "x^2", "y^3")) == 6

    def test_a2_jacobian(self):
        assert colength(ideal(L, "3*x^2", "2*y")) == 2

    def test_unit_times_x(self):
        one_var = local_ring("x")
        sb = local_standard_basis(ideal(one_var, "x + x^2"))
        assert colength(sb) == 1

    def test_infinite(self):
        assert colength(ideal(L, "x*y")) is None

    def test_mu_of_y2_x4(self):
        assert colength(ideal(L, "4*x^3", "2*y")) == 3

    def test_weak_membership(self):
        sb = local_standard_basis(ideal(L, "x - x^2"))
        assert normal_form(parse_poly("x", L), sb).is_zero


class TestKrull:
    def test_curve(self):
        big = local_ring("x", "y1", "y2")
        i = ideal(big, "y1 + y2", "y1^2 + y1*y2 + y2^2 + x^2")
        assert krull_dimension(i) == 1

    def test_zero_ideal(self):
        assert krull_dimension(ideal(R)) == 2

    def test_origin(self):
        assert krull_dimension(ideal(R, "x", "y")) == 0

    def test_unit_sentinel(self):
        assert krull_dimension(ideal(R, "1")) == -1


class TestEliminate:
    def test_cuspidal_edge(self):
        rng = ring("y", "X", "Z")
        out = eliminate(ideal(rng, "y^2 - X", "y^3 - Z"), ["y"])
        gb = groebner_basis(out)
        target = parse_poly("Z^2 - X^3", out.ring)
        assert normal_form(target, gb).is_zero

    def test_no_constraint_survives(self):
        out = eliminate(ideal(R, "x - y"), ["y"])
        assert out.is_zero_ideal

    def test_coordinate(self):
        out = eliminate(ideal(R, "x", "y"), ["y"])
        assert [str(g) for g in out.generators] == ["x"]


class TestRadical:
    def test_x_in_rad_x2(self):
        assert radical_membership(parse_poly("x", R), ideal(R, "x^2"))

    def test_y_not_in_rad_x2(self):
        assert not radical_membership(parse_poly("y", R), ideal(R, "x^2"))

    def test_xy_in_rad(self):
        assert radical_membership(parse_poly("x*y", R), ideal(R, "x^2", "y^3"))


class TestSingularLocus:
    def test_cusp(self):
        out = singular_locus_ideal(ideal(R, "y^2 + x^3"), 1)
        assert {str(g) for g in out.generators} == {"x^3 + y^2", "3*x^2", "2*y"}
        # vanishes only at the origin
        local = local_standard_basis(
            ideal(local_ring("x", "y"),
                  *[str(g) for g in out.generators]))
        assert colength(local) is not None

    def test_smooth_line(self):
        out = singular_locus_ideal(ideal(R, "x"), 1)
        assert not is_proper(out)

    def test_shifted_cubic(self):
        # gradient vanishes at (1,0) and (-1,0); neither lies on this curve,
        # so the singular locus of the curve itself is empty
        out = singular_locus_ideal(ideal(R, "y^2 + x^3 - 3*x"), 1)
        assert {str(g) for g in out.generators} == {"x^3 + y^2 - 3*x", "3*x^2 - 3", "2*y"}
        assert not is_proper(out)


class TestTranslate:
    def test_shifted_cubic(self):
        out = translate_ideal(ideal(R, "y^2 + x^3 - 3*x"), [Q(1), Q(0)])
        assert [str(g) for g in out.generators] == ["x^3 + 3*x^2 + y^2 - 2"]

    def test_identity(self):
        out = translate_ideal(ideal(R, "x"), [Q(0), Q(0)])
        assert [str(g) for g in out.generators] == ["x"]

    def test_linear(self):
        out = translate_ideal(ideal(ring("x"), "x - 1"), [Q(1)])
        assert [str(g) for g in out.generators] == ["x"]


class TestJacobianRank:
    def test_singular_curve_pair(self):
        big = ring("x", "y1", "y2")
        i = ideal(big, "y1 + y2", "y1^2 + y1*y2 + y2^2 + x^2")
        assert jacobian_rank_at(i, [Q(0)] * 3) == 1

    def test_smooth_pair(self):
        big = ring("x", "y1", "y2")
        assert jacobian_rank_at(ideal(big, "y1 + y2", "x"), [Q(0)] * 3) == 2

    def test_gradient_zero_point(self):
        assert jacobian_rank_at(ideal(R, "y^2 + x^3 - 3*x"), [Q(1), Q(0)]) == 0


def _random_poly(rng, rnd, max_degree, max_terms):
    terms = {}
    for _ in range(rnd.randint(1, max_terms)):
        while True:
            e = tuple(rnd.randint(0, max_degree) for _ in range(rng.arity))
            if sum(e) <= max_degree:
                break
        terms[e] = Q(rnd.randint(-3, 3))
    return Polynomial(rng, terms)


class TestProperties:
    def test_normal_form_idempotent(self):
        rnd = random.Random(5)
        sb = groebner_basis(ideal(R, "x^2 - y", "y^2 - x"))
        for _ in range(50):
            p = _random_poly(R, rnd, 5, 5)
            r = normal_form(p, sb)
            assert normal_form(r, sb) == r

    def test_normal_form_idempotent_local(self):
        rnd = random.Random(6)
        sb = local_standard_basis(ideal(L, "x^2", "y^3"))
        for _ in range(50):
            p = _random_poly(L, rnd, 5, 5)
            r = normal_form(p, sb)
            assert normal_form(r, sb) == r

    def test_membership_soundness_global(self):
        rnd = random.Random(9)
        sb = groebner_basis(ideal(R, "x^2 - 1", "x*y - y"))
        for _ in range(25):
            a = _random_poly(R, rnd, 3, 3)
            b = _random_poly(R, rnd, 3, 3)
            f = a * sb.ideal.generators[0] + b * sb.ideal.generators[1]
            r, cof = normal_form_with_cofactors(f, sb)
            assert r.is_zero
            rebuilt = Polynomial.zero(R)
            for c, g in zip(cof, sb.basis):
                rebuilt = rebuilt + c * g
            assert rebuilt == f

    def test_membership_soundness_local(self):
        rnd = random.Random(10)
        sb = local_standard_basis(ideal(L, "x^2 + y^3", "x*y"))
        for _ in range(25):
            a = _random_poly(L, rnd, 3, 3)
            b = _random_poly(L, rnd, 3, 3)
            f = a * sb.ideal.generators[0] + b * sb.ideal.generators[1]
            r, unit, cof = normal_form_with_cofactors(f, sb)
            assert r.is_zero
            assert unit.constant_term != 0
            rebuilt = Polynomial.zero(L)
            for c, g in zip(cof, sb.basis):
                rebuilt = rebuilt + c * g
            assert rebuilt == unit * f

    def test_buchberger_criterion_on_bases(self):
        cases = [
            groebner_basis(ideal(R, "x^2 - y", "y^2 - x")),
            groebner_basis(ideal(R, "x^3 - 2*x*y", "x^2*y + x - 2*y^2")),
            local_standard_basis(ideal(L, "x^2 + y^3", "x*y")),
            local_standard_basis(ideal(L, "3*x^2 + y^2", "2*x*y")),
        ]
        for sb in cases:
            assert buchberger_criterion_holds(sb)

    def test_colength_agrees_with_brute_force(self):
        cases = [
            ideal(L, "x^2", "y^3"),
            ideal(L, "3*x^2", "2*y"),
            ideal(L, "4*x^3", "2*y"),
            ideal(L, "3*x^2 + y^2", "2*x*y + 3*y^2"),
            ideal(L, "x^2 + y^3", "y^2 + x^3"),
            ideal(L, "2*x + 3*x^2", "5*y^3"),
        ]
        for i in cases:
            sb = local_standard_basis(i)
            col = colength(sb)
            assert col is not None and col <= 12
            bound = quotient_basis(sb).max_degree() + 3
            assert brute_force_colength(list(i.generators), bound) == col

    def test_quotient_basis_closed_under_divisibility(self):
        sb = local_standard_basis(ideal(L, "x^3 + y^4", "x*y^2"))
        qb = quotient_basis(sb)
        monos = set(qb.monomials)
        for e in monos:
            for i in range(len(e)):
                if e[i] > 0:
                    below = tuple(x - 1 if j == i else x for j, x in enumerate(e))
                    assert below in monos
