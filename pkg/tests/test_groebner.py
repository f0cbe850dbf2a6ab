import random
from math import comb

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from axialreg.groebner import (
    buchberger,
    hilbert_function,
    ideal_power,
    initial_ideal,
    is_groebner_basis,
    is_reduced,
    normal_form,
)
from axialreg.monideal import MonomialIdeal
from axialreg.oracle import hilbert_by_linear_algebra, macaulay_initial_ideal
from axialreg.poly import GREVLEX, QQ, FieldSpec, Ideal, MonomialOrder, Ring

from conftest import random_ideal

R = Ring(QQ, ("x", "y"))
x, y = R.gen(0), R.gen(1)


def test_normal_form_examples():
    assert normal_form(x**2 * y, [x**2]).is_zero()
    f = x**2 - y**2
    assert normal_form(f, [x * y]) == f
    assert normal_form(x**2 * y, [x**2 - y**2, x * y]) == y**3


def test_normal_form_remainder_is_reduced():
    G = [x**2 - y**2, x * y]
    r = normal_form(x**3 + 2 * x * y**2 + y**3, G)
    for m in r.monomials():
        assert m[0] < 2
        assert not (m[0] and m[1])


def test_buchberger_example():
    gb = buchberger([x**2 - y**2, x * y])
    assert set(gb.basis) == {x**2 - y**2, x * y, y**3}
    assert initial_ideal(gb) == MonomialIdeal(2, ((2, 0), (1, 1), (0, 3)))
    assert is_groebner_basis(gb) and is_reduced(gb)
    assert [hilbert_function(gb, t) for t in range(5)] == [1, 2, 1, 0, 0]


def test_monomial_and_principal_inputs():
    gb = buchberger([x**2, x**2 * y, x * y])
    assert gb.initial == MonomialIdeal(2, ((2, 0), (1, 1)))
    assert set(gb.basis) == {x**2, x * y}
    gb = buchberger([x + y])
    assert gb.basis == (x + y,)
    assert gb.initial == MonomialIdeal(2, ((1, 0),))


def test_empty_input_is_zero_ideal():
    gb = buchberger(Ideal(R, ()))
    assert gb.basis == () and gb.initial.is_zero()
    assert [hilbert_function(gb, t) for t in range(4)] == [comb(t + 1, 1) for t in range(4)]


def test_hilbert_of_principal_variable():
    gb = buchberger([x])
    assert [hilbert_function(gb, t) for t in range(6)] == [1] * 6


def test_inhomogeneous_rejected():
    with pytest.raises(ValueError):
        buchberger([x**2 + y])


def test_ideal_power_examples():
    sq = ideal_power([x**2, x * y], 2)
    assert set(sq) == {x**4, x**3 * y, x**2 * y**2}
    assert ideal_power([x**2, x * y], 1) == [x**2, x * y]
    assert ideal_power([x + y], 3) == [(x + y) ** 3]
    with pytest.raises(ValueError):
        ideal_power([x], 0)


@pytest.mark.parametrize("seed", range(12))
def test_random_bases_are_reduced_groebner_bases(seed):
    I = random_ideal(seed)
    gb = buchberger(I)
    assert is_groebner_basis(gb)
    assert is_reduced(gb)
    for g in I.gens:
        assert gb.contains(g)


@pytest.mark.parametrize("seed", range(12))
def test_canonical_under_permutation(seed):
    I = random_ideal(100 + seed)
    gens = list(I.gens)
    base = buchberger(gens)
    random.Random(seed).shuffle(gens)
    again = buchberger(gens + [gens[0].scale(3)])
    assert base.basis == again.basis


@pytest.mark.parametrize("seed", range(8))
def test_agrees_with_linear_algebra(seed):
    I = random_ideal(200 + seed)
    gb = buchberger(I)
    t_max = 2 * max(g.degree for g in I.gens) + 2
    assert gb.initial.hilbert_series().values(t_max) == hilbert_by_linear_algebra(I.gens, t_max)
    trunc = MonomialIdeal(I.nvars, tuple(m for m in gb.initial.gens if sum(m) <= t_max))
    assert macaulay_initial_ideal(I.gens, t_max) == trunc


def test_prime_field_basis():
    F = Ring(FieldSpec(7), ("x", "y", "z"))
    I = [F.parse("x^2 + 3*y*z"), F.parse("x*y - z^2"), F.parse("y^3 + x*z^2")]
    gb = buchberger(I)
    assert is_groebner_basis(gb) and is_reduced(gb)
    assert gb.initial.hilbert_series().values(8) == hilbert_by_linear_algebra(I, 8)


@pytest.mark.parametrize("order", [MonomialOrder.LEX, MonomialOrder.GRLEX])
def test_other_orders(order):
    I = random_ideal(7, d=3)
    gb = buchberger(I, order)
    assert is_groebner_basis(gb) and is_reduced(gb)
    # the Hilbert function does not depend on the order
    assert gb.initial.hilbert_series().values(8) == buchberger(I, GREVLEX).initial.hilbert_series().values(8)


def test_degree_cap_matches_low_degrees():
    I = random_ideal(11, d=4)
    full = buchberger(I)
    capped = buchberger(I, degree_cap=4)
    low = lambda J: {m for m in J.gens if sum(m) <= 4}
    assert low(full.initial) == low(capped.initial)
    with pytest.raises(ValueError):
        hilbert_function(capped, 5)


coeffs = st.integers(-4, 4)


@settings(max_examples=25, deadline=None)
@given(st.lists(st.lists(coeffs, min_size=6, max_size=6), min_size=1, max_size=3))
def test_quadrics_in_three_variables(rows):
    S = Ring.standard(3)
    from axialreg.poly import Polynomial, monomials_of_degree

    ms = monomials_of_degree(3, 2)
    gens = [Polynomial(S, dict(zip(ms, r))) for r in rows]
    gens = [g for g in gens if g]
    if not gens:
        return
    gb = buchberger(gens)
    assert is_groebner_basis(gb) and is_reduced(gb)
    assert gb.initial.hilbert_series().values(6) == hilbert_by_linear_algebra(gens, 6)
