from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import data_text
from fptkit.algebra import RingContext
from fptkit.errors import ParseError, UsageError
from fptkit.formats import (
    format_rational,
    looks_like_cone,
    parse_cone,
    parse_poly_list,
    parse_ring,
    render_cone,
    render_ring,
)
from fptkit.groebner import same_ideal

RING_FILES = ["conic.ring", "det23.ring", "fermat.ring", "hankel.ring", "plane.ring", "quartic.ring", "x2.ring"]
CONE_FILES = ["quadrant.cone", "segre.cone", "ver2.cone", "ver3.cone"]


def test_parse_ring_basic():
    rf = parse_ring("p = 5\nvars = x y z:2\nI = x^2*y - 3*z*y ; x*y\nainv = -3/2\n")
    assert rf.p == 5 and rf.ctx.weights == (1, 1, 2)
    x, y, z = rf.ctx.gens()
    assert rf.generators == (x**2 * y - 3 * z * y, x * y)
    assert rf.ainv == Fraction(-3, 2)
    assert rf.a_generators is None


def test_parse_ring_parentheses_and_unicode_minus():
    rf = parse_ring("p = 3\nvars = x y\nI = (x − y)^2 ; −x*(y + x)\n")
    x, y = rf.ctx.gens()
    assert rf.generators == ((x - y) ** 2, -x * (y + x))


def test_parse_multiline_ideal():
    rf = parse_ring("p = 2\nvars = a b c\nI = a*b ;\n    b*c ; a*c\n")
    assert len(rf.generators) == 3


def test_non_prime_rejected():
    with pytest.raises(UsageError):
        parse_ring("p = 4\nvars = x\nI = x\n")


@pytest.mark.parametrize(
    "text, line, col",
    [
        ("p = 3\nvars = x y\nI = x*y + $\n", 3, 11),
        ("p = 3\nvars = x y\nI = x*w\n", 3, 7),
        ("p = 3\nvars = x y\nI = x*(y\n", 3, 9),
        ("p = 3\nvars = x 1y\n", 2, 10),
        ("vars = x\n", 2, 1),
        ("p = 3\nvars = x\nbogus = 1\n", 3, 1),
    ],
)
def test_parse_errors_carry_position(text, line, col):
    with pytest.raises(ParseError) as exc:
        parse_ring(text)
    assert exc.value.line == line
    assert exc.value.column == col


def test_parse_cone():
    cf = parse_cone("dim = 2\nrays = (0,1) (3,−1)\ngrading = (1,0)\np = 7\n")
    assert cf.rays == ((0, 1), (3, -1)) and cf.grading == (1, 0) and cf.p == 7


def test_cone_rays_are_primitivized_with_warning():
    cf = parse_cone("dim = 2\nrays = (0,2) (3,-1)\n")
    assert cf.rays == ((0, 1), (3, -1))
    assert cf.warnings


def test_cone_errors():
    with pytest.raises(ParseError) as exc:
        parse_cone("dim = 2\nrays = (0,1) (1,2,3)\n")
    assert exc.value.line == 2
    with pytest.raises(ParseError):
        parse_cone("dim = 2\nrays = (0,1) junk\n")
    with pytest.raises(UsageError):
        parse_cone("dim = 2\nrays = (1,0) (-1,0)\n")


@pytest.mark.parametrize("name", RING_FILES)
def test_ring_files_round_trip(name):
    rf = parse_ring(data_text(name))
    again = parse_ring(render_ring(rf))
    assert again == rf
    assert same_ideal(again.ideal(), rf.ideal())


@pytest.mark.parametrize("name", CONE_FILES)
def test_cone_files_round_trip(name):
    text = data_text(name)
    assert looks_like_cone(text)
    cf = parse_cone(text)
    assert parse_cone(render_cone(cf)) == cf


def test_format_rational():
    assert format_rational(Fraction(4, 2)) == "2"
    assert format_rational(Fraction(-2, 3)) == "-2/3"


@settings(max_examples=60, deadline=None)
@given(
    st.lists(
        st.tuples(st.integers(1, 6), st.tuples(st.integers(0, 3), st.integers(0, 3), st.integers(0, 3))),
        min_size=1,
        max_size=5,
    )
)
def test_poly_print_parse_round_trip(terms):
    ctx = RingContext(7, ("x", "y", "z"))
    f = ctx.zero()
    for c, exp in terms:
        f = f + ctx.monomial(exp, c)
    if f.is_zero():
        return
    (g,) = parse_poly_list(ctx, str(f))
    assert g == f
