from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cremona7.poly import (
    VARIABLES,
    DivisionByZeroPolynomial,
    NotDivisible,
    ParseError,
    Polynomial,
    ZeroInput,
    divisibility_order,
    evaluate,
    exact_divide,
    format_poly,
    parse_poly,
    substitute,
    variables,
)

D_TEXT = "x00*x11*x22 + 2*x01*x02*x12 - x00*x12^2 - x11*x02^2 - x22*x01^2"
D = parse_poly(D_TEXT)
SEPTIC = parse_poly("x11^7 + 2*x01*x11^3*x00^3 + x00^7")
x00, x01, x11, x02, x12, x22 = variables()


def naive_product(a: dict, b: dict) -> dict:
    out: dict = {}
    for ea, ca in a.items():
        for eb, cb in b.items():
            e = tuple(i + j for i, j in zip(ea, eb))
            out[e] = out.get(e, 0) + ca * cb
    return {e: c for e, c in out.items() if c}


# -- strategies ---------------------------------------------------------------

@st.composite
def exponent_vectors(draw, degree=None):
    """Six non-negative exponents with total degree `degree` (or any degree <= 6)."""
    total = draw(st.integers(0, 6)) if degree is None else degree
    cuts = sorted(draw(st.lists(st.integers(0, total), min_size=5, max_size=5)))
    bounds = [0, *cuts, total]
    return tuple(bounds[i + 1] - bounds[i] for i in range(6))


coefficients = st.builds(
    Fraction, st.integers(-20, 20).filter(bool), st.integers(1, 7)
)
polys = st.dictionaries(exponent_vectors(), coefficients, max_size=10).map(Polynomial)
nonzero_polys = st.dictionaries(exponent_vectors(), coefficients, min_size=1, max_size=10).map(Polynomial)
points = st.lists(st.builds(Fraction, st.integers(-5, 5), st.integers(1, 5)), min_size=6, max_size=6)


def homogeneous(degree):
    return st.dictionaries(exponent_vectors(degree), coefficients, min_size=1, max_size=6).map(Polynomial)


# -- parse / format -------------------------------------------------------------

def test_parse_discriminant_has_five_terms():
    assert len(D) == 5
    assert sorted(D.coefficients()) == [-1, -1, -1, 1, 2]


def test_format_discriminant_canonical_order():
    # grevlex: smaller x22 exponent first, then smaller x12, ...
    assert format_poly(D) == "-x11*x02^2 + 2*x01*x02*x12 - x00*x12^2 - x01^2*x22 + x00*x11*x22"


@pytest.mark.parametrize("text", ["0", "x00 - x00", " x01*x02 -x02*x01 "])
def test_parse_zero(text):
    p = parse_poly(text)
    assert p.is_zero()
    assert format_poly(p) == "0"


def test_format_one():
    assert format_poly(Polynomial.one()) == "1"
    assert format_poly(parse_poly("-3/6")) == "-1/2"


@pytest.mark.parametrize(
    "text, position",
    [("x00 +", 5), ("x00 * 2", 6), ("x33", 0), ("x00 + y", 6), ("1/0*x00", 2), ("x00^", 4), ("x00 $ x01", 4)],
)
def test_parse_errors_report_position(text, position):
    with pytest.raises(ParseError) as info:
        parse_poly(text)
    assert info.value.position == position


def test_unknown_variable_message():
    with pytest.raises(ParseError, match="unknown variable"):
        parse_poly("x00*x03")


def test_parse_coefficient_forms():
    p = parse_poly("3/4*x00^2*x01 - 2 + x22")
    assert p.terms == {(2, 1, 0, 0, 0, 0): Fraction(3, 4), (0, 0, 0, 0, 0, 1): 1, (0,) * 6: -2}


# -- arithmetic -----------------------------------------------------------------

def test_add_negate_and_pow_zero():
    assert (D + (-D)).is_zero()
    assert D ** 0 == Polynomial.one()


def test_square_of_discriminant_matches_naive_product():
    expected = naive_product(D.terms, D.terms)
    assert len(expected) == 15
    assert (D ** 2).terms == expected
    assert D ** 2 == D * D


def test_powers_match_repeated_naive_products():
    acc = {(0,) * 6: 1}
    for k in range(1, 6):
        acc = naive_product(acc, D.terms)
        assert (D ** k).terms == acc


def test_pow_rejects_negative():
    with pytest.raises(ValueError):
        D ** -1


def test_degrees():
    assert D.total_degree() == 3 and D.is_homogeneous()
    assert not (x00 + x00 ** 2).is_homogeneous()
    with pytest.raises(ZeroInput):
        Polynomial.zero().total_degree()


def test_float_coefficients_rejected():
    with pytest.raises(TypeError):
        Polynomial.const(0.5)


# -- substitute / evaluate ---------------------------------------------------------

def test_substitute_identity():
    assert substitute(D, variables()) == D


def test_substitute_scaling_is_cubic():
    c = parse_poly("x00 + 2*x22")
    assert substitute(D, [c * v for v in variables()]) == c ** 3 * D


def test_substitute_constants_matches_evaluate():
    coords = [Fraction(1, 2), 3, -1, 0, Fraction(2, 3), 5]
    images = [Polynomial.const(c) for c in coords]
    assert substitute(D, images) == Polynomial.const(evaluate(D, coords))


def test_evaluate_examples():
    assert evaluate(D, (1, 0, 1, 0, 0, 1)) == 1
    assert evaluate(D, (1, 1, 1, 1, 1, 1)) == 0
    # 128 - 2*(129/16)*8 + 1 == 0
    assert evaluate(SEPTIC, (1, Fraction(-129, 16), 2, 0, 0, 0)) == 0


# -- division -----------------------------------------------------------------------

def test_exact_divide_examples():
    assert exact_divide(x00 ** 2 - x11 ** 2, x00 - x11) == x00 + x11
    assert exact_divide(x01 * D ** 16, D ** 16) == x01
    with pytest.raises(NotDivisible):
        exact_divide(x00, x01)
    with pytest.raises(DivisionByZeroPolynomial):
        exact_divide(x00, Polynomial.zero())


def test_exact_divide_with_rational_quotient():
    f = (x00 - x01.scale(Fraction(1, 3))) * D
    assert exact_divide(f, D.scale(2)) == (x00 - x01.scale(Fraction(1, 3))).scale(Fraction(1, 2))


def test_divisibility_order_examples():
    assert divisibility_order(x00 * D ** 2, D) == 2
    assert divisibility_order(D ** 7, D) == 7
    assert divisibility_order(SEPTIC, D) == 0
    with pytest.raises(ZeroInput):
        divisibility_order(Polynomial.zero(), D)


# -- properties ----------------------------------------------------------------------

@settings(max_examples=1000, deadline=None, derandomize=True)
@given(polys, polys, polys)
def test_ring_axioms(a, b, c):
    assert a + b == b + a
    assert a * b == b * a
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c


@settings(max_examples=300, deadline=None, derandomize=True)
@given(polys, nonzero_polys)
def test_exact_division_round_trip(f, g):
    assert exact_divide(f * g, g) == f


@settings(max_examples=200, deadline=None, derandomize=True)
@given(nonzero_polys, nonzero_polys)
def test_division_failure_is_sound(f, g):
    try:
        q = exact_divide(f, g)
    except NotDivisible:
        return
    assert g * q == f


@settings(max_examples=200, deadline=None, derandomize=True)
@given(st.integers(0, 4).flatmap(homogeneous), st.integers(0, 4).flatmap(homogeneous))
def test_homogeneity_closure(a, b):
    p = a * b
    assert p.is_zero() or (p.is_homogeneous() and p.total_degree() == a.total_degree() + b.total_degree())


@settings(max_examples=100, deadline=None, derandomize=True)
@given(homogeneous(3), st.lists(homogeneous(2), min_size=6, max_size=6))
def test_substitute_preserves_homogeneity(f, images):
    p = substitute(f, images)
    assert p.is_zero() or (p.is_homogeneous() and p.total_degree() == 6)


@settings(max_examples=300, deadline=None, derandomize=True)
@given(polys, polys, points)
def test_evaluate_is_a_ring_homomorphism(f, g, pt):
    assert evaluate(f * g, pt) == evaluate(f, pt) * evaluate(g, pt)
    assert evaluate(f + g, pt) == evaluate(f, pt) + evaluate(g, pt)


@settings(max_examples=1000, deadline=None, derandomize=True)
@given(polys)
def test_parse_format_round_trip(p):
    text = format_poly(p)
    assert parse_poly(text) == p
    assert format_poly(parse_poly(text)) == text


def test_variables_order():
    assert [format_poly(v) for v in variables()] == list(VARIABLES)
