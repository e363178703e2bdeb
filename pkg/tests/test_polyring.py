import pytest
import sympy
from hypothesis import given, settings, strategies as st

from mrclab.lib.errors import ConfigError, ParseError, RingMismatchError, ZeroPolynomialError
from mrclab.lib.polyring import (
    GREVLEX,
    LEX,
    Polynomial,
    PolyRing,
    PrimeField,
    elimination,
    exact_quotient,
    monomials_of_degree,
)

SMALL = PolyRing(PrimeField(101))

exponents = st.tuples(*[st.integers(0, 4)] * 4)
polys = st.dictionaries(exponents, st.integers(1, 100), max_size=5).map(lambda t: Polynomial(SMALL, t))


def test_field_rejects_composite_modulus():
    with pytest.raises(ConfigError):
        PrimeField(4)
    with pytest.raises(ConfigError):
        PrimeField(2**31 + 11)


def test_field_inverse():
    F = PrimeField(7)
    assert F.inv(3) == 5
    assert F.neg(3) == 4
    with pytest.raises(ZeroDivisionError):
        F.inv(0)


@given(st.integers(1, 100), st.integers(1, 100))
def test_field_inverse_is_multiplicative(a, b):
    F = SMALL.field
    assert F(F.inv(a) * F.inv(b)) == F.inv(a * b)


@given(polys, polys, polys)
def test_ring_axioms(f, g, h):
    assert f * g == g * f
    assert (f + g) * h == f * h + g * h
    assert f - f == SMALL.zero()


@given(exponents, exponents, exponents)
def test_orders_are_multiplicative(a, b, c):
    ac = tuple(x + y for x, y in zip(a, c))
    bc = tuple(x + y for x, y in zip(b, c))
    for order in (GREVLEX, LEX, elimination(1)):
        assert order.compare(a, b) == order.compare(ac, bc)


def test_grevlex_and_lex_differ():
    x1_sq, x0x2 = (0, 2, 0, 0), (1, 0, 1, 0)
    assert GREVLEX.compare(x1_sq, x0x2) == 1
    assert LEX.compare(x1_sq, x0x2) == -1
    assert GREVLEX.compare((1, 0, 0, 0), (0, 1, 0, 0)) == 1


def test_elimination_order_puts_t_first(ring):
    ext = ring.with_elimination_variable()
    assert ext.names[0] == "t"
    assert ext.order.compare((1, 0, 0, 0, 1), (0, 5, 0, 0, 0)) == 1


def test_compare_rejects_mismatched_lengths():
    with pytest.raises(RingMismatchError):
        GREVLEX.compare((1, 0), (1, 0, 0))


def test_monomials_of_degree_count():
    assert len(monomials_of_degree(4, 3)) == 20
    assert monomials_of_degree(4, 2)[0] == (2, 0, 0, 0)
    assert monomials_of_degree(4, -1) == []


def test_parse_and_print(ring):
    f = ring.parse("x0^2*x1 + 3*x2^3")
    assert str(f) == "x0^2*x1 + 3*x2^3"
    assert f.degree == 3
    assert f.is_homogeneous()


def test_parse_implicit_product_and_signs(ring):
    f = ring.parse("2x0*x1 - x3")
    assert f.coefficient((1, 1, 0, 0)) == 2
    assert f.coefficient((0, 0, 0, 1)) == ring.p - 1
    assert not f.is_homogeneous()


@pytest.mark.parametrize("text", ["", "x0^", "x0 +", "y1", "x0 * * x1 ^"])
def test_parse_errors(ring, text):
    with pytest.raises(ParseError):
        ring.parse(text)


def test_coefficients_are_reduced(small_ring):
    f = Polynomial(small_ring, {(1, 0, 0, 0): 102, (0, 1, 0, 0): 101})
    assert f.as_dict() == {(1, 0, 0, 0): 1}


def test_leading_term_of_zero(ring):
    with pytest.raises(ZeroPolynomialError):
        ring.zero().leading_term()
    assert ring.zero().degree == -1


def test_leading_term_depends_on_order(ring):
    f = ring.parse("x1^2 + x0*x2")
    assert f.leading_monomial(GREVLEX) == (0, 2, 0, 0)
    assert f.leading_monomial(LEX) == (1, 0, 1, 0)


def test_mixing_rings_fails(ring, small_ring):
    with pytest.raises(RingMismatchError):
        ring.gen(0) + small_ring.gen(0)


def test_exact_quotient(ring):
    x0, x1, x2, _ = ring.gens()
    assert exact_quotient((x0 + x1) * x2 * x2, x2) == (x0 + x1) * x2
    with pytest.raises(ValueError):
        exact_quotient(x0 * x1 + x2 * x2, x0)


def test_diff_and_evaluate(small_ring):
    f = small_ring.parse("x0^3 + 2*x1*x2*x3")
    assert f.diff(0) == small_ring.parse("3*x0^2")
    assert f.diff(3) == small_ring.parse("2*x1*x2")
    assert f.evaluate((1, 2, 3, 4)) == (1 + 2 * 24) % 101
    with pytest.raises(RingMismatchError):
        f.evaluate((1, 2, 3))


def test_monic_and_powers(small_ring):
    f = small_ring.parse("5*x0 + x1")
    assert f.monic().leading_coefficient() == 1
    assert (f ** 2) == f * f
    assert (f ** 0) == 1


def test_backed_by_a_sympy_ring(small_ring):
    f = small_ring.parse("x0**2 + 100*x1")
    assert f.element.ring.domain.mod == 101
    assert f.element.ring.symbols == tuple(sympy.symbols("x0 x1 x2 x3"))
    assert f == small_ring.parse("x0^2 - x1")
    assert small_ring.wrap(f.element * f.element) == f * f


@settings(max_examples=1000)
@given(st.integers(0, 32002), st.integers(0, 32002), st.integers(0, 32002))
def test_field_axioms(a, b, c):
    F = PrimeField()
    assert F(a * (b + c)) == F(a * b + a * c)
    if a:
        assert F(a * F.inv(a)) == 1


def test_difference_of_squares_over_f5():
    ring = PolyRing(PrimeField(5))
    x0, x1, _, _ = ring.gens()
    product = (x0 + x1) * (x0 - x1)
    assert product == ring.parse("x0^2 - x1^2")
    assert product.as_dict() == {(2, 0, 0, 0): 1, (0, 2, 0, 0): 4}
    assert ring.parse("x0 + x1") + (-ring.parse("x0 + x1")) == ring.zero()


def test_product_degrees_add(ring, rng):
    for _ in range(100):
        d, e = (int(v) for v in rng.integers(1, 4, size=2))
        f, g = ring.random_form(d, rng), ring.random_form(e, rng)
        if not f or not g:
            continue
        fg = f * g
        assert fg.degree == d + e
        assert fg.is_homogeneous()
        for _ in range(20):
            pt = [int(v) for v in rng.integers(0, ring.p, size=4)]
            assert fg.evaluate(pt) == f.evaluate(pt) * g.evaluate(pt) % ring.p


def test_compare_and_leading_terms(ring):
    x0x1, x2_sq = (1, 1, 0, 0), (0, 0, 2, 0)
    assert GREVLEX.compare(x0x1, x2_sq) == 1
    assert GREVLEX.compare(x2_sq, x2_sq) == 0
    assert LEX.compare((1, 0, 0, 0), (0, 9, 0, 0)) == 1
    assert ring.parse("x2^2").leading_term() == (1, x2_sq)
    assert ring.parse("x0*x1 + x2^2").leading_term() == (1, x0x1)
    F7 = PolyRing(PrimeField(7))
    assert F7.parse("3*x3").leading_term(LEX) == (3, (0, 0, 0, 1))
