import random

from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import conic, plane
from fptkit.algebra import RingContext
from fptkit.fsing import NOT_F_PURE, nu_e_maximal
from fptkit.groebner import IdealHandle, ideal_member
from fptkit.oracle import bf_colon_capped, bf_lambda, bf_member, bf_mingens_degrees, bf_nu
from fptkit.toric import Cone, hilbert_basis


def test_member_examples():
    c = RingContext(5, ("x", "y"))
    x, y = c.gens()
    I = IdealHandle(c, [x])
    assert bf_member(x**2, I, 2) is True
    assert bf_member(y, I, 3) is False
    assert bf_member(x**4, I, 3) is None


def test_nu_examples():
    assert bf_nu(conic(3), None, 1, conic(3).ctx) == 2
    c = RingContext(2, ("x",))
    assert bf_nu(IdealHandle(c, [c.var(0) ** 2]), None, 1, c) is NOT_F_PURE
    P = plane(2)
    assert bf_nu(P, None, 1, P.ctx) == 2


def test_colon_small():
    c = RingContext(3, ("x", "y"))
    x, y = c.gens()
    got = bf_colon_capped(IdealHandle(c, [x**2 * y]), IdealHandle(c, [x]), 4, c)
    assert all(ideal_member(g, IdealHandle(c, [x * y])) for g in got)
    assert any(g == x * y for g in got)


def test_mingens_hankel_colon():
    c = RingContext(3, ("x", "y"))
    x, y = c.gens()
    J = IdealHandle(c, [x**2, x * y, y**3])
    assert bf_mingens_degrees(J, IdealHandle(c, []), 4, c) == [2, 2, 3]


def test_lambda_examples():
    quadrant = hilbert_basis(Cone(((1, 0), (0, 1))), grading=(1, 1))
    assert bf_lambda((1, 1), quadrant) == 2
    ver2 = hilbert_basis(Cone(((0, 1), (2, -1))))
    assert bf_lambda((1, 1), ver2) == 1
    ver3 = hilbert_basis(Cone(((0, 1), (3, -1))))
    assert bf_lambda((1, 2), ver3) == 1


def _random_ideal(rng, p, n=3, k=2):
    c = RingContext(p, tuple("xyz"[:n]))
    gens = []
    for _ in range(k):
        d = rng.choice((2, 3))
        f = c.zero()
        for _ in range(rng.randint(1, 3)):
            exp = [0] * n
            for _ in range(d):
                exp[rng.randrange(n)] += 1
            f = f + c.monomial(exp, rng.randrange(1, p))
        if not f.is_zero():
            gens.append(f)
    return IdealHandle(c, gens)


def test_nu_agrees_on_random_ideals():
    rng = random.Random(20260)
    checked = 0
    while checked < 6:
        I = _random_ideal(rng, rng.choice((2, 3)))
        if not I.generators or I.is_unit():
            continue
        assert nu_e_maximal(I, 1) == bf_nu(I, None, 1, I.ctx)
        checked += 1


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10**6), st.integers(0, 10**6))
def test_member_agrees_with_normal_form(seed, fseed):
    rng = random.Random(seed)
    I = _random_ideal(rng, 3)
    frng = random.Random(fseed)
    c = I.ctx
    f = c.zero()
    for g in I.generators[:1]:
        f = f + g * c.monomial([frng.randint(0, 1) for _ in range(c.n)])
    f = f + c.monomial([frng.randint(0, 2) for _ in range(c.n)], frng.randrange(3))
    f = f if f.is_zero() else f
    deg = max((sum(m) for m in f.monomials()), default=0)
    got = bf_member(f, I, max(deg, 6))
    if got is not None and f.is_zero() is False and len({sum(m) for m in f.monomials()}) == 1:
        assert got == ideal_member(f, I)
