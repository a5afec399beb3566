"""Frobenius invariants of R = S/I: Fedder's test, nu_e, F-pure threshold bounds.

For a homogeneous ideal I and q = p^e write J_q = (I^[q] : I).  Then

* R is F-pure iff J_p is not inside m^[p] = (x_1^p, ..., x_n^p);
* nu_e(a) = max{r : a^r J_q is not inside m^[q]}, and fpt(a) = lim nu_e(a) / p^e.

For a = m the maximum has a closed form: a monomial x^u of J_q survives
multiplication by some monomial of degree r outside m^[q] exactly when every
u_i <= q - 1 and sum(q - 1 - u_i) >= r.  So nu_e(m) is the largest such sum over
the monomials of any generating set of J_q.

All nu computations only look at J_q in degrees up to (q - 1) * sum(weights),
since every monomial of higher degree lies in m^[q]; the colon is computed with
that degree cap.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction

from .algebra import Monomial, Polynomial, RingContext, degree
from .errors import UsageError
from .groebner import (
    IdealHandle,
    MonomialIdeal,
    buchberger,
    colon,
    frobenius_power_ideal,
    ideal_in_monomial_ideal,
    ideal_member,
    maximal_ideal,
    mingens_degrees,
)


class _NotFPure:
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "NOT_F_PURE"

    def __reduce__(self):
        return (_NotFPure, ())


NOT_F_PURE = _NotFPure()
"""Marker returned instead of nu_e when the ring is not F-pure."""

QGOR = "quasi-Gorenstein"
NOT_QGOR_VERDICT = "not-quasi-Gorenstein"
INCONCLUSIVE = "inconclusive"

HYPOTHESIS_NOTE = (
    "fpt(m) = -a(R) is equivalent to R being quasi-Gorenstein for F-pure normal "
    "standard graded domains whose anti-canonical cover is Noetherian (e.g. "
    "Q-Gorenstein, toric or determinantal rings); that hypothesis is not checked here. "
    "The nu_e comparison nu_e(m) = -a(R)(q - 1) needs only F-purity and normality."
)


@dataclass(frozen=True)
class NuRow:
    e: int
    q: int
    nu: object  # int or NOT_F_PURE


@dataclass
class NuTable:
    p: int
    rows: list[NuRow] = field(default_factory=list)

    def f_pure(self) -> bool:
        return all(r.nu is not NOT_F_PURE for r in self.rows)

    def monotone(self) -> bool:
        """nu_{e+1} >= p * nu_e for consecutive computed rows."""
        rows = sorted(self.rows, key=lambda r: r.e)
        for a, b in zip(rows, rows[1:]):
            if b.e == a.e + 1 and self.f_pure() and b.nu < self.p * a.nu:
                return False
        return True

    def within_trivial_bound(self, n: int) -> bool:
        return all(r.nu is NOT_F_PURE or r.nu <= n * (r.q - 1) for r in self.rows)


@dataclass(frozen=True)
class FptEstimate:
    """What finitely many nu_e say about fpt.

    ``exact_candidate`` is nu_e / (p^e - 1) when that ratio agrees at the two
    largest computed e; it is a candidate, not a proof.  ``certified`` is set
    only when independent data (a matching a-invariant, or a Q-Gorenstein
    computation) pins the value down.
    """

    p: int
    lower: Fraction
    upper: Fraction | None
    exact_candidate: Fraction | None
    evidence: tuple[tuple[int, int], ...]
    certified: Fraction | None = None

    def __post_init__(self):
        if self.upper is not None and self.lower > self.upper:
            raise UsageError(f"lower bound {self.lower} exceeds upper bound {self.upper}")


@dataclass(frozen=True)
class GorensteinVerdict:
    fpt_exact: Fraction | None
    a_invariant: Fraction
    verdict: str
    hypothesis_note: str
    reason: str = ""


# ------------------------------------------------------------------ helpers


def _q(I: IdealHandle, e: int) -> int:
    if not isinstance(e, int) or e < 1:
        raise UsageError(f"e must be a positive integer, got {e}")
    return I.ctx.p ** e


def _check_ring(I: IdealHandle):
    if not I.is_homogeneous():
        raise UsageError("the defining ideal must be homogeneous")
    if I.is_unit():
        raise UsageError("the defining ideal is the whole ring")


def degree_cap(I: IdealHandle, q: int) -> int:
    """Largest degree of a monomial outside m^[q]."""
    return (q - 1) * sum(I.ctx.weights)


def fedder_colon(I: IdealHandle, e: int) -> IdealHandle:
    """(I^[q] : I), correct up to the degree cap; cached on the handle."""
    q = _q(I, e)
    cache = I.__dict__.setdefault("_fedder_colons", {})
    if e not in cache:
        ctx = I.ctx
        if I.is_zero():
            cache[e] = IdealHandle(ctx, [ctx.one()])
        else:
            Iq = frobenius_power_ideal(I, q)
            if not I._gb_cache:
                # a Gröbner basis of I gives one of I^[q] for free
                buchberger(I)
                Iq = frobenius_power_ideal(I, q)
            cache[e] = colon(Iq, I, cap=degree_cap(I, q))
    return cache[e]


def _substitute(f: Polynomial, k: int, g: Polynomial) -> Polynomial:
    ctx = f.ctx
    out = ctx.zero()
    powers = {0: ctx.one()}
    for exp, c in f.terms:
        a = exp[k]
        if a not in powers:
            powers[a] = g ** a
        rest = exp[:k] + (0,) + exp[k + 1 :]
        out = out + powers[a].mul_monomial(rest, c)
    return out


def trim_linear(I: IdealHandle) -> IdealHandle:
    """An isomorphic presentation with no generator of the form c*x_k + (others).

    A homogeneous generator holding a term c*x_k of its own degree solves for
    x_k, so x_k can be substituted away.  The graded ring S/I, its maximal
    ideal and hence F-purity and nu_e(m) are unchanged, while the colon loses
    a variable and (q - 1) * w_k degrees of cap per removed variable.
    """
    if "_trimmed" in I.__dict__:
        return I.__dict__["_trimmed"]
    ctx = I.ctx
    gens = [g for g in I.generators if not g.is_zero()]
    removed: list[int] = []
    while len(removed) < ctx.n - 1:
        hit = None
        for i, g in enumerate(gens):
            d = degree(g)
            for exp, c in g.terms:
                if sum(exp) == 1 and ctx.weights[exp.index(1)] == d:
                    hit = (i, exp.index(1), c)
                    break
            if hit:
                break
        if hit is None:
            break
        i, k, c = hit
        g = gens.pop(i)
        unit = tuple(int(j == k) for j in range(ctx.n))
        # x_k = -(g - c x_k) / c, which does not involve x_k
        sub = (g - ctx.monomial(unit, c)) * (-pow(c, -1, ctx.p) % ctx.p)
        gens = [h for h in (_substitute(h, k, sub) for h in gens) if not h.is_zero()]
        removed.append(k)
    out = I
    if removed:
        keep = [j for j in range(ctx.n) if j not in removed]
        small = RingContext(ctx.p, [ctx.var_names[j] for j in keep], [ctx.weights[j] for j in keep])
        out = IdealHandle(
            small,
            [Polynomial(small, {tuple(e[j] for j in keep): c for e, c in g.terms}) for g in gens],
        )
    I.__dict__["_trimmed"] = out
    return out


def _escape_value(exp: Monomial, q: int) -> int | None:
    if any(a >= q for a in exp):
        return None
    return sum(q - 1 - a for a in exp)


# ------------------------------------------------------------------ public ops


def fedder_fpure(I: IdealHandle) -> bool:
    """Fedder's criterion: S/I is F-pure iff (I^[p] : I) is not inside m^[p]."""
    _check_ring(I)
    I = trim_linear(I)
    J = fedder_colon(I, 1)
    return not ideal_in_monomial_ideal(J, MonomialIdeal.frobenius_maximal(I.ctx, I.ctx.p))


def nu_e_maximal(I: IdealHandle, e: int):
    """nu_e(m) by the closed form over the monomials of (I^[q] : I)."""
    _check_ring(I)
    q = _q(I, e)
    I = trim_linear(I)
    best = None
    for g in fedder_colon(I, e).generators:
        for exp in g.monomials():
            v = _escape_value(exp, q)
            if v is not None and (best is None or v > best):
                best = v
    return NOT_F_PURE if best is None else best


def _truncate(f: dict, q: int) -> dict:
    return {e: c for e, c in f.items() if all(a < q for a in e)}


def _mul(f: dict, g: dict, p: int, q: int) -> dict:
    out: dict = {}
    for e1, c1 in f.items():
        for e2, c2 in g.items():
            e = tuple(a + b for a, b in zip(e1, e2))
            if any(a >= q for a in e):
                continue
            out[e] = (out.get(e, 0) + c1 * c2) % p
    return {e: c for e, c in out.items() if c}


def _span_basis(vectors: list[dict], p: int) -> list[dict]:
    """Echelon basis of the F_p-span of sparse vectors (keys are monomials)."""
    pivots: dict = {}
    basis = []
    for v in vectors:
        v = dict(v)
        while v:
            piv = max(v)
            row = pivots.get(piv)
            if row is None:
                inv = pow(v[piv], -1, p)
                v = {k: (c * inv) % p for k, c in v.items()}
                pivots[piv] = v
                basis.append(v)
                break
            c = v[piv]
            for k, rc in row.items():
                nv = (v.get(k, 0) - c * rc) % p
                if nv:
                    v[k] = nv
                else:
                    v.pop(k, None)
    return basis


def nu_e_general(I: IdealHandle, a: IdealHandle, e: int):
    """nu_e(a) for a homogeneous ideal a containing I.

    Works in S / m^[q]: the span of a^r (I^[q] : I) is tracked modulo m^[q]
    (monomials with an exponent >= q are dropped, which is harmless because
    m^[q] is an ideal) until it vanishes.
    """
    if a.ctx != I.ctx:
        raise UsageError("a and I live in different rings")
    if not I.is_zero():
        _check_ring(I)
    if not a.is_homogeneous():
        raise UsageError("a must be homogeneous")
    if a.is_zero() or a.is_unit():
        raise UsageError("a must be a nonzero proper ideal")
    if not all(ideal_member(g, a) for g in I.generators):
        raise UsageError("a must contain I")
    p, q = I.ctx.p, _q(I, e)
    work = _span_basis([_truncate(g.as_dict(), q) for g in fedder_colon(I, e).generators], p)
    if not work:
        return NOT_F_PURE
    a_gens = [g.as_dict() for g in a.generators]
    r = 0
    while True:
        nxt = _span_basis([_mul(g, w, p, q) for g in a_gens for w in work], p)
        if not nxt:
            return r
        r += 1
        work = nxt


def nu_table(I: IdealHandle, e_max: int, a: IdealHandle | None = None) -> NuTable:
    table = NuTable(I.ctx.p)
    for e in range(1, e_max + 1):
        nu = nu_e_maximal(I, e) if a is None else nu_e_general(I, a, e)
        table.rows.append(NuRow(e, I.ctx.p ** e, nu))
    return table


def estimate_from_table(table: NuTable, a_inv: Fraction | None = None):
    if not table.rows:
        raise UsageError("need at least one row")
    if not table.f_pure():
        return NOT_F_PURE
    rows = sorted(table.rows, key=lambda r: r.e)
    lower = max(Fraction(r.nu, r.q) for r in rows)
    upper = None if a_inv is None else -Fraction(a_inv)
    candidate = None
    if len(rows) >= 2:
        r1, r2 = rows[-2], rows[-1]
        c1, c2 = Fraction(r1.nu, r1.q - 1), Fraction(r2.nu, r2.q - 1)
        if c1 == c2:
            candidate = c2
    certified = candidate if candidate is not None and upper is not None and candidate == upper else None
    return FptEstimate(
        p=table.p,
        lower=lower,
        upper=upper,
        exact_candidate=candidate,
        evidence=tuple((r.e, r.nu) for r in rows),
        certified=certified,
    )


def fpt_estimate(I: IdealHandle, a: IdealHandle | None = None, e_max: int = 2, a_inv=None):
    """Bounds and a stabilized candidate for fpt(a R) from nu_1, ..., nu_{e_max}.

    ``a=None`` means the homogeneous maximal ideal.  Returns NOT_F_PURE for
    rings that are not F-pure.
    """
    if e_max < 1:
        raise UsageError("e_max must be at least 1")
    if a is not None and _is_maximal(a):
        a = None
    return estimate_from_table(nu_table(I, e_max, a), a_inv)


def _is_maximal(a: IdealHandle) -> bool:
    m = maximal_ideal(a.ctx)
    return all(ideal_member(x, a) for x in m.generators) and all(
        ideal_member(g, m) for g in a.generators
    )


def sharp_fpure_pair(I: IdealHandle, a: IdealHandle | None, t, e: int):
    """Is (R, a^t) sharply F-pure at level e, i.e. nu_e(a) >= ceil((p^e - 1) t)?"""
    t = Fraction(t)
    if t < 0:
        raise UsageError("t must be nonnegative")
    q = _q(I, e)
    if a is None or _is_maximal(a):
        nu = nu_e_maximal(I, e)
    else:
        nu = nu_e_general(I, a, e)
    if nu is NOT_F_PURE:
        return NOT_F_PURE
    return nu >= math.ceil((q - 1) * t)


@dataclass(frozen=True)
class OmegaCheck:
    e: int
    q: int
    nu: object
    target: int | None  # n(q-1) - nu
    degrees: tuple[int, ...]  # minimal generator degrees of J / I^[q], up to the cap
    membership: bool
    containment: bool

    @property
    def ok(self) -> bool:
        return self.membership and self.containment


def omega_degree_data(I: IdealHandle, e: int) -> OmegaCheck:
    _check_ring(I)
    if not I.ctx.standard_graded:
        raise UsageError("the degree check needs a standard graded ring")
    q = _q(I, e)
    # work in the presentation nu_e_maximal uses, so n and J match
    I = trim_linear(I)
    n = I.ctx.n
    nu = nu_e_maximal(I, e)
    J = fedder_colon(I, e)
    Iq = frobenius_power_ideal(I, q)
    degs = tuple(mingens_degrees(J, Iq))
    if nu is NOT_F_PURE:
        return OmegaCheck(e, q, nu, None, degs, False, False)
    target = n * (q - 1) - nu
    # modulo I^[q], (I^[q] : I) lies in m^k for k the lowest generator degree of J / I^[q]
    low = min(degs) if degs else None
    containment = low is not None and all(
        degree(g) >= low or ideal_member(g, Iq) for g in J.generators
    )
    return OmegaCheck(e, q, nu, target, degs, target in degs, containment)


def omega_degree_check(I: IdealHandle, e: int) -> bool:
    """n(q-1) - nu_e(m) must be the degree of a minimal generator of (I^[q]:I)/I^[q]."""
    return omega_degree_data(I, e).ok


def _krull_dim_monomial(ctx, lead: list[Monomial]) -> int:
    """dim S/(lead): size of the largest variable set containing no lead support."""
    supports = [frozenset(i for i, a in enumerate(m) if a) for m in lead]
    n = ctx.n
    for size in range(n, -1, -1):
        for subset in itertools.combinations(range(n), size):
            s = frozenset(subset)
            if not any(sup <= s for sup in supports):
                return size
    return 0


def ci_a_invariant(I: IdealHandle) -> Fraction:
    """a(S/I) = sum deg f_i - sum deg x_j for a homogeneous complete intersection."""
    ctx = I.ctx
    if I.is_zero():
        return Fraction(-sum(ctx.weights))
    _check_ring(I)
    lead = [g.leading_term()[0] for g in buchberger(I)]
    height = ctx.n - _krull_dim_monomial(ctx, lead)
    if height != len(I.generators):
        raise UsageError(
            f"generators do not form a regular sequence (height {height}, "
            f"{len(I.generators)} generators); supply the a-invariant explicitly"
        )
    return Fraction(sum(degree(g) for g in I.generators) - sum(ctx.weights))


def gorenstein_criterion(est: FptEstimate, a_inv) -> GorensteinVerdict:
    """Decide quasi-Gorensteinness from threshold data and the a-invariant.

    Under the standing hypotheses (F-pure normal standard graded domain) one
    has nu_e(m) <= -a(R)(q - 1) with equality for one (equivalently every) e
    exactly when R is quasi-Gorenstein.  A certified exact threshold is
    compared with -a(R) directly.  Bounds alone give no verdict.
    """
    a_inv = Fraction(a_inv)
    bound = -a_inv
    if est.certified is not None:
        if est.certified == bound:
            return GorensteinVerdict(est.certified, a_inv, QGOR, HYPOTHESIS_NOTE,
                                     f"certified fpt {est.certified} equals -a(R)")
        if est.certified < bound:
            return GorensteinVerdict(est.certified, a_inv, NOT_QGOR_VERDICT, HYPOTHESIS_NOTE,
                                     f"certified fpt {est.certified} < -a(R) = {bound}")
        raise UsageError(f"fpt {est.certified} exceeds -a(R) = {bound}: inconsistent input")
    for e, nu in est.evidence:
        q = est.p ** e
        limit = bound * (q - 1)
        if nu > limit:
            raise UsageError(f"nu_{e} = {nu} exceeds -a(R)(q-1) = {limit}: wrong a-invariant?")
        if nu < limit:
            return GorensteinVerdict(est.exact_candidate, a_inv, NOT_QGOR_VERDICT, HYPOTHESIS_NOTE,
                                     f"nu_{e} = {nu} < -a(R)(q-1) = {limit}")
    if est.evidence:
        e, nu = est.evidence[-1]
        return GorensteinVerdict(bound, a_inv, QGOR, HYPOTHESIS_NOTE,
                                 f"nu_{e} = {nu} attains -a(R)(q-1)")
    return GorensteinVerdict(None, a_inv, INCONCLUSIVE, HYPOTHESIS_NOTE, "only bounds are known")


def gorenstein_from_toric(fpt: Fraction, a_sigma: Fraction) -> GorensteinVerdict:
    """Verdict from a Q-Gorenstein toric computation (fpt = D/c, a_sigma)."""
    fpt, a_sigma = Fraction(fpt), Fraction(a_sigma)
    verdict = QGOR if fpt == -a_sigma else NOT_QGOR_VERDICT
    rel = "=" if fpt == -a_sigma else "<"
    return GorensteinVerdict(fpt, a_sigma, verdict, HYPOTHESIS_NOTE, f"fpt = D/c = {fpt} {rel} -a_sigma = {-a_sigma}")

