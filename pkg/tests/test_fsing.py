from fractions import Fraction

import pytest

from conftest import conic, det23, hankel, plane
from fptkit import fsing
from fptkit.algebra import RingContext
from fptkit.errors import UsageError
from fptkit.fsing import (
    INCONCLUSIVE,
    NOT_F_PURE,
    NOT_QGOR_VERDICT,
    QGOR,
    FptEstimate,
    NuRow,
    NuTable,
    ci_a_invariant,
    estimate_from_table,
    fedder_fpure,
    fpt_estimate,
    gorenstein_criterion,
    nu_e_general,
    nu_e_maximal,
    omega_degree_check,
    omega_degree_data,
    sharp_fpure_pair,
)
from fptkit.groebner import IdealHandle, maximal_ideal
from fptkit.oracle import bf_nu


def test_fedder_examples():
    c2 = RingContext(2, ("x",))
    assert not fedder_fpure(IdealHandle(c2, [c2.var(0) ** 2]))
    c3 = RingContext(3, ("x", "y"))
    x, y = c3.gens()
    assert fedder_fpure(IdealHandle(c3, [x * y]))
    c7 = RingContext(7, ("x", "y", "z"))
    x, y, z = c7.gens()
    assert fedder_fpure(IdealHandle(c7, [x**3 + y**3 + z**3]))


def test_fermat_cubic_by_expansion():
    # f^(p-1) has a monomial with all exponents <= p-1 exactly when p = 1 mod 3
    for p, expected in ((7, True), (5, False), (13, True), (11, False)):
        c = RingContext(p, ("x", "y", "z"))
        x, y, z = c.gens()
        f = x**3 + y**3 + z**3
        expanded = f ** (p - 1)
        escapes = any(max(m) <= p - 1 for m in expanded.monomials())
        assert escapes == expected
        assert fedder_fpure(IdealHandle(c, [f])) == expected


def test_fedder_rejects_unit_and_inhomogeneous():
    c = RingContext(3, ("x", "y"))
    x, y = c.gens()
    with pytest.raises(UsageError):
        fedder_fpure(IdealHandle(c, [c.one()]))
    with pytest.raises(UsageError):
        fedder_fpure(IdealHandle(c, [x + y**2]))


@pytest.mark.parametrize("p,expected", [(2, 2), (3, 4), (5, 8)])
def test_nu1_determinantal(p, expected):
    assert nu_e_maximal(det23(p), 1) == expected


def test_nu_polynomial_ring():
    for p in (2, 3, 5):
        for n in (1, 2, 3):
            I = plane(p, n)
            assert nu_e_maximal(I, 1) == n * (p - 1)


def test_nu_conic():
    I = conic(3)
    assert nu_e_maximal(I, 1) == 2
    assert bf_nu(I, None, 1, I.ctx) == 2


def test_nu_not_fpure_marker():
    c2 = RingContext(2, ("x",))
    assert nu_e_maximal(IdealHandle(c2, [c2.var(0) ** 2]), 1) is NOT_F_PURE
    assert bf_nu(IdealHandle(c2, [c2.var(0) ** 2]), None, 1, c2) is NOT_F_PURE


def test_nu_general_examples():
    c3 = RingContext(3, ("x",))
    assert nu_e_general(IdealHandle(c3, []), IdealHandle(c3, [c3.var(0)]), 1) == 2
    # a = m reproduces the closed form
    for I in (conic(3), det23(2), hankel(7), plane(3, 2)):
        assert nu_e_general(I, maximal_ideal(I.ctx), 1) == nu_e_maximal(I, 1)


def test_nu_general_minors_in_polynomial_ring():
    # I = 0 in six variables, a = 2x2 minors: fpt(a) = 2, so nu_1 <= 2(q-1) = 8
    D = det23(5)
    I0 = IdealHandle(D.ctx, [])
    nu = nu_e_general(I0, D, 1)
    assert nu == bf_nu(I0, D, 1, D.ctx)
    assert nu <= 8
    assert Fraction(nu, 4) <= 2


def test_nu_general_requires_containment():
    c = RingContext(3, ("x", "y"))
    x, y = c.gens()
    with pytest.raises(UsageError):
        nu_e_general(IdealHandle(c, [x * y]), IdealHandle(c, [x**2]), 1)
    with pytest.raises(UsageError):
        nu_e_general(IdealHandle(c, []), IdealHandle(c, [x + y**2]), 1)


def test_fpt_estimate_polynomial_ring():
    est = fpt_estimate(plane(2), e_max=3)
    assert est.exact_candidate == 2
    assert est.lower == Fraction(14, 8)


@pytest.mark.slow
def test_fpt_estimate_determinantal_p5():
    est = fpt_estimate(det23(5), e_max=2)
    assert est.lower == Fraction(48, 25)
    assert est.exact_candidate == 2


def test_fpt_estimate_hankel():
    est = fpt_estimate(hankel(7), e_max=2, a_inv=-1)
    assert est.exact_candidate == Fraction(2, 3)
    assert est.upper == 1 and est.certified is None
    assert est.evidence == ((1, 4), (2, 32))


def test_fpt_estimate_not_fpure_and_bad_e():
    c2 = RingContext(2, ("x",))
    assert fpt_estimate(IdealHandle(c2, [c2.var(0) ** 2]), e_max=2) is NOT_F_PURE
    with pytest.raises(UsageError):
        fpt_estimate(plane(2), e_max=0)


def test_certified_when_ainv_matches():
    est = fpt_estimate(conic(3), e_max=2, a_inv=-1)
    assert est.exact_candidate == 1 and est.certified == 1


def test_sharp_pairs():
    D = det23(5)
    assert sharp_fpure_pair(D, None, 2, 1) is True
    assert sharp_fpure_pair(D, None, Fraction(21, 10), 1) is False
    assert sharp_fpure_pair(conic(3), None, 0, 1) is True
    with pytest.raises(UsageError):
        sharp_fpure_pair(conic(3), None, -1, 1)


def test_omega_examples():
    assert omega_degree_check(conic(3), 1)
    data = omega_degree_data(conic(3), 1)
    assert data.target == 4 and data.degrees == (4,)
    assert omega_degree_check(plane(3, 2), 1)
    assert omega_degree_data(plane(3, 2), 1).degrees == (0,)
    d = omega_degree_data(det23(2), 1)
    assert d.target == 4 and 4 in d.degrees and d.ok


def test_ci_a_invariant():
    assert ci_a_invariant(conic(3)) == -1
    assert ci_a_invariant(plane(3, 4)) == -4
    c = RingContext(7, ("x", "y", "z"))
    x, y, z = c.gens()
    assert ci_a_invariant(IdealHandle(c, [x**3 + y**3 + z**3])) == 0
    with pytest.raises(UsageError):
        ci_a_invariant(det23(3))


def test_gorenstein_criterion_cases():
    square = FptEstimate(p=3, lower=Fraction(16, 9), upper=Fraction(2), exact_candidate=Fraction(2),
                         evidence=((1, 4), (2, 16)), certified=Fraction(2))
    assert gorenstein_criterion(square, -2).verdict == QGOR
    rect = FptEstimate(p=3, lower=Fraction(16, 9), upper=Fraction(3), exact_candidate=Fraction(2),
                       evidence=((1, 4), (2, 16)), certified=None)
    v = gorenstein_criterion(rect, -3)
    assert v.verdict == NOT_QGOR_VERDICT and "anti-canonical" in v.hypothesis_note
    bounds = FptEstimate(p=2, lower=Fraction(19, 10), upper=Fraction(2), exact_candidate=None, evidence=())
    assert gorenstein_criterion(bounds, -2).verdict == INCONCLUSIVE
    with pytest.raises(UsageError):
        FptEstimate(p=2, lower=Fraction(3), upper=Fraction(2), exact_candidate=None, evidence=())


def test_table_invariants():
    t = NuTable(3, [NuRow(1, 3, 4), NuRow(2, 9, 16)])
    assert t.f_pure() and t.monotone() and t.within_trivial_bound(6)
    bad = NuTable(3, [NuRow(1, 3, 4), NuRow(2, 9, 10)])
    assert not bad.monotone()
    est = estimate_from_table(t, a_inv=-3)
    assert est.exact_candidate == 2 and est.upper == 3 and est.certified is None


def test_trim_linear_keeps_nu():
    c = RingContext(3, ("w", "x", "y", "z"))
    w, x, y, z = c.gens()
    I = IdealHandle(c, [w - x - y, x * y - z**2])
    T = fsing.trim_linear(I)
    assert T.ctx.n == 3 and len(T.generators) == 1
    for e in (1, 2):
        assert nu_e_maximal(I, e) == nu_e_maximal(conic(3), e)
    assert nu_e_maximal(I, 1) == bf_nu(I, None, 1, c)


def test_trim_linear_leaves_quadrics_alone():
    I = hankel(3)
    assert fsing.trim_linear(I) is I
