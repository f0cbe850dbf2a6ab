from fractions import Fraction
from itertools import product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from axialreg.poly import (
    GREVLEX,
    QQ,
    FieldSpec,
    LinearChange,
    MonomialOrder,
    ParseError,
    Polynomial,
    Ring,
    apply_change,
    format_ideal,
    monomials_of_degree,
    order_compare,
    parse_ideal,
)

R3 = Ring.standard(3)


def mono(*e):
    return tuple(e)


def test_grevlex_examples():
    assert order_compare(mono(1, 0, 1), mono(0, 2, 0)) == -1
    assert order_compare(mono(2, 0), mono(1, 1)) == 1
    assert order_compare(mono(1, 0), mono(0, 2)) == -1
    assert order_compare(mono(1, 1), mono(1, 1)) == 0


def test_compare_dimension_mismatch():
    with pytest.raises(ValueError):
        order_compare((1, 0), (1, 0, 0))


@pytest.mark.parametrize("order", list(MonomialOrder))
def test_orders_are_total_on_small_monomials(order):
    for d in (2, 3, 4):
        ms = [m for t in range(7) for m in monomials_of_degree(d, t)]
        keys = [order.key(m) for m in ms]
        assert len(set(keys)) == len(ms)
        ranked = sorted(ms, key=order.key)
        for a, b in zip(ranked, ranked[1:]):
            assert order_compare(a, b, order) == -1
            assert order_compare(b, a, order) == 1


exps = st.lists(st.integers(0, 5), min_size=3, max_size=3).map(tuple)


@given(exps, exps, exps, st.sampled_from(list(MonomialOrder)))
def test_orders_are_multiplicative(u, v, w, order):
    c = order_compare(u, v, order)
    uw = tuple(a + b for a, b in zip(u, w))
    vw = tuple(a + b for a, b in zip(v, w))
    assert order_compare(uw, vw, order) == c


@given(exps, exps, exps)
def test_grevlex_transitive(a, b, c):
    if order_compare(a, b) < 0 and order_compare(b, c) < 0:
        assert order_compare(a, c) < 0


def test_monomials_of_degree_descend():
    ms = monomials_of_degree(3, 2)
    assert ms[0] == (2, 0, 0) and ms[-1] == (0, 0, 2)
    assert len(ms) == 6


def test_multiplication_examples():
    R = Ring(QQ, ("x", "y"))
    x, y = R.gen(0), R.gen(1)
    assert (x + y) * (x - y) == x**2 - y**2
    assert ((x + y) * R.zero()).is_zero()
    F2 = Ring(FieldSpec(2), ("x", "y"))
    a, b = F2.gen(0), F2.gen(1)
    assert (a + b) * (a + b) == a**2 + b**2


def test_ring_mismatch_rejected():
    R = Ring(QQ, ("x", "y"))
    S = Ring(QQ, ("u", "v"))
    with pytest.raises(ValueError):
        R.gen(0) * S.gen(0)


def test_leading_term_examples():
    R = Ring(QQ, ("x", "y"))
    assert R.parse("x^2 - y^2").leading_term(GREVLEX) == (1, (2, 0))
    assert R3.parse("x1*x3 + x2^2").leading_term(GREVLEX) == (1, (0, 2, 0))
    assert R.parse("3*x + 5*y").leading_term(GREVLEX) == (3, (1, 0))
    with pytest.raises(ValueError):
        R.zero().leading_term()


def test_terms_descend_and_have_no_zeros():
    f = R3.parse("x3^2 + x1*x2 - x1*x2 + 2*x1^2")
    terms = f.terms()
    assert [m for _, m in terms] == [(2, 0, 0), (0, 0, 2)]
    assert all(c for c, _ in terms)


def test_apply_change_examples():
    R = Ring(QQ, ("x", "y"))
    x, y = R.gen(0), R.gen(1)
    f = x**2 + 3 * x * y
    assert apply_change(f, LinearChange.identity(2)) == f
    swap = LinearChange(((0, 1), (1, 0)))
    assert apply_change(x**2, swap) == y**2
    shear = LinearChange(((1, 1), (0, 1)))
    assert apply_change(x * y, shear) == x * y + y**2


def test_singular_change_rejected():
    with pytest.raises(ValueError):
        LinearChange(((1, 2), (2, 4)))


coeff = st.integers(-6, 6)
small_poly = st.dictionaries(
    st.tuples(st.integers(0, 2), st.integers(0, 2), st.integers(0, 2)), coeff, max_size=5
).map(lambda d: Polynomial(R3, d))


@given(small_poly, small_poly, small_poly)
def test_ring_axioms(f, g, h):
    assert (f + g) * h == f * h + g * h
    assert f * g == g * f
    assert (f * g) * h == f * (g * h)
    assert f - f == R3.zero()


@settings(max_examples=30)
@given(small_poly, st.lists(st.integers(-5, 5), min_size=9, max_size=9))
def test_change_round_trip(f, entries):
    rows = (tuple(entries[0:3]), tuple(entries[3:6]), tuple(entries[6:9]))
    try:
        g = LinearChange(rows)
    except ValueError:
        return
    assert apply_change(apply_change(f, g), g.inverse()) == f


@settings(max_examples=30)
@given(small_poly, st.lists(st.integers(-5, 5), min_size=9, max_size=9), st.integers(-3, 3))
def test_change_is_linear_and_graded(f, entries, c):
    rows = (tuple(entries[0:3]), tuple(entries[3:6]), tuple(entries[6:9]))
    try:
        g = LinearChange(rows)
    except ValueError:
        return
    h = R3.parse("x1*x2 - x3^2")
    assert apply_change(f.scale(c) + h, g) == apply_change(f, g).scale(c) + apply_change(h, g)
    assert apply_change(h, g).degree == 2


def test_fp_arithmetic_reduces():
    F = FieldSpec(5)
    R = Ring(F, ("x",))
    x = R.gen(0)
    assert (x.scale(3) + x.scale(4)) == x.scale(2)
    assert F(Fraction(1, 2)) == 3


def test_parse_examples():
    I = parse_ideal("field Q\nvars x1 x2\ngens x1^2, x1*x2")
    assert I.field == QQ and I.nvars == 2 and len(I.gens) == 2
    J = parse_ideal("field Fp 3\nvars x y z\ngens x^3, y^3, z^3")
    assert J.field.characteristic == 3
    assert [g.monomials() for g in J.gens] == [[(3, 0, 0)], [(0, 3, 0)], [(0, 0, 3)]]


def test_parse_continuation_comments_and_duplicates():
    text = "# header\nvars a b\ngens a^2 + 1/2*b^2,  # first\n     a*b, a*b\n"
    I = parse_ideal(text)
    assert len(I.gens) == 2
    assert I.gens[0].coefficient((0, 2)) == Fraction(1, 2)


@pytest.mark.parametrize(
    "text, fragment",
    [
        ("vars x y\ngens x^2 + y", "not homogeneous"),
        ("vars x y\ngens x*z", "z"),
        ("field Fp 4\nvars x\ngens x", "not prime"),
        ("vars x y\ngens x^2 +* y^2", ""),
        ("gens x", "vars"),
    ],
)
def test_parse_errors(text, fragment):
    with pytest.raises(ParseError) as err:
        parse_ideal(text)
    assert fragment in str(err.value)


def test_parse_error_has_position():
    with pytest.raises(ParseError) as err:
        parse_ideal("vars x y\ngens x^2, x + y^2")
    assert err.value.line == 2
    assert err.value.column is not None


@settings(max_examples=40)
@given(st.lists(small_poly, max_size=4), st.sampled_from([0, 7]))
def test_format_parse_round_trip(polys, p):
    F = FieldSpec(p)
    R = Ring(F, ("x1", "x2", "x3"))
    gens = []
    for f in polys:
        # keep one homogeneous component so the ideal is valid
        f = Polynomial(R, dict(f.coeffs))
        if f.is_zero():
            continue
        top = f.degree
        g = Polynomial(R, {m: c for m, c in f.coeffs.items() if sum(m) == top})
        if g not in gens:
            gens.append(g)
    from axialreg.poly import Ideal

    I = Ideal(R, tuple(gens))
    again = parse_ideal(format_ideal(I))
    assert again == I
    assert format_ideal(again) == format_ideal(I)


def test_exhaustive_total_order_degree_six_two_vars():
    ms = [m for t in range(7) for m in monomials_of_degree(2, t)]
    for a, b in product(ms, ms):
        assert order_compare(a, b) == -order_compare(b, a)
        assert (order_compare(a, b) == 0) == (a == b)
