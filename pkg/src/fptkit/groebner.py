"""Ideal calculus over F_p[x_1, ..., x_n].

Gröbner bases come from :mod:`fptkit._engine`.  Intersections, colons,
elimination and saturation all go through one auxiliary variable placed in a
leading elimination block.

Functions taking ``cap`` return ideals that are correct in every degree up to
``cap`` (only meaningful for homogeneous input); callers that only look at
low degrees use this to skip most of the work.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from typing import Iterable, Sequence

from ._engine import Engine
from .algebra import (
    WDEGREVLEX,
    Monomial,
    MonomialOrder,
    Polynomial,
    RingContext,
    block_order,
    degree,
    frobenius_power_poly,
    is_homogeneous,
)
from .errors import UsageError


class IdealHandle:
    """An ideal given by generators, with a per-order cache of reduced bases.

    The cache is filled under a lock, so a handle may be shared between
    threads.  ``truncated_at`` is set on ideals produced with a degree cap: their
    generators are only guaranteed to generate the ideal up to that degree.
    """

    def __init__(self, ctx: RingContext, generators: Iterable[Polynomial] = (), truncated_at: int | None = None):
        gens = []
        for g in generators:
            if g.ctx != ctx:
                raise UsageError("generator lives in a different ring")
            if not g.is_zero():
                gens.append(g)
        self.ctx = ctx
        self.generators: tuple[Polynomial, ...] = tuple(gens)
        self.truncated_at = truncated_at
        self._gb_cache: dict[MonomialOrder, tuple[Polynomial, ...]] = {}
        self._lock = threading.Lock()

    def __repr__(self):
        gens = ", ".join(str(g) for g in self.generators)
        return f"IdealHandle(({gens}) in F_{self.ctx.p}[{', '.join(self.ctx.var_names)}])"

    def is_zero(self) -> bool:
        return not self.generators

    def is_homogeneous(self) -> bool:
        return all(is_homogeneous(g) for g in self.generators)

    def gb(self, order: MonomialOrder = WDEGREVLEX) -> tuple[Polynomial, ...]:
        return buchberger(self, order)

    def is_unit(self) -> bool:
        return _contains_one(self)

    def __add__(self, other: IdealHandle) -> IdealHandle:
        _same_ring(self, other)
        return IdealHandle(self.ctx, self.generators + other.generators)

    def __mul__(self, other: IdealHandle) -> IdealHandle:
        _same_ring(self, other)
        return IdealHandle(self.ctx, [f * g for f in self.generators for g in other.generators])


def _contains_one(I: IdealHandle) -> bool:
    zero = (0,) * I.ctx.n
    return any(g.coefficient(zero) and len(g) == 1 for g in I.gb())


def _same_ring(I: IdealHandle, J: IdealHandle):
    if I.ctx != J.ctx:
        raise UsageError("ideals live in different rings")


def ideal(ctx: RingContext, *gens: Polynomial) -> IdealHandle:
    return IdealHandle(ctx, gens)


def maximal_ideal(ctx: RingContext) -> IdealHandle:
    return IdealHandle(ctx, ctx.gens())


@dataclass(frozen=True)
class MonomialIdeal:
    """A monomial ideal stored by its minimal generators (an antichain)."""

    ctx: RingContext
    generators: tuple[Monomial, ...]

    def __post_init__(self):
        mins: list[Monomial] = []
        for m in sorted(set(self.generators), key=sum):
            if not any(_divides(g, m) for g in mins):
                mins.append(m)
        object.__setattr__(self, "generators", tuple(mins))

    @classmethod
    def frobenius_maximal(cls, ctx: RingContext, q: int) -> MonomialIdeal:
        """(x_1^q, ..., x_n^q)."""
        gens = []
        for i in range(ctx.n):
            e = [0] * ctx.n
            e[i] = q
            gens.append(tuple(e))
        return cls(ctx, tuple(gens))

    def contains(self, exp: Monomial) -> bool:
        return any(_divides(g, exp) for g in self.generators)


def _divides(a: Monomial, b: Monomial) -> bool:
    return all(x <= y for x, y in zip(a, b))


# ---------------------------------------------------------------- engine glue


def _engine(ctx: RingContext, order: MonomialOrder, grading=None) -> Engine:
    return Engine(ctx.p, order.key_vector(ctx.weights), grading or ctx.weights)


def _groebner_raw(ctx, polys, order, grading=None, cap=None) -> list[Polynomial]:
    eng = _engine(ctx, order, grading)
    return [Polynomial._raw(ctx, d) for d in eng.groebner([f.as_dict() for f in polys], cap=cap)]


def buchberger(I: IdealHandle, order: MonomialOrder = WDEGREVLEX) -> tuple[Polynomial, ...]:
    """Reduced Gröbner basis of ``I`` (cached per order on the handle)."""
    cached = I._gb_cache.get(order)
    if cached is not None:
        return cached
    basis = tuple(_groebner_raw(I.ctx, I.generators, order))
    with I._lock:
        I._gb_cache.setdefault(order, basis)
    return I._gb_cache[order]


def _elems(ctx, basis, order):
    eng = _engine(ctx, order)
    return eng, [eng.element(eng.encode(g.as_dict())) for g in basis]


def normal_form(f: Polynomial, I: IdealHandle, order: MonomialOrder = WDEGREVLEX) -> Polynomial:
    if f.ctx != I.ctx:
        raise UsageError("polynomial and ideal live in different rings")
    eng, elems = _elems(I.ctx, buchberger(I, order), order)
    return Polynomial._raw(I.ctx, eng.reduce(f.as_dict(), elems))


def ideal_member(f: Polynomial, I: IdealHandle) -> bool:
    return normal_form(f, I).is_zero()


def contains_ideal(I: IdealHandle, J: IdealHandle) -> bool:
    """J ⊆ I."""
    _same_ring(I, J)
    if not J.generators:
        return True
    eng, elems = _elems(I.ctx, buchberger(I), WDEGREVLEX)
    return all(not eng.reduce(g.as_dict(), elems) for g in J.generators)


def same_ideal(I: IdealHandle, J: IdealHandle) -> bool:
    return contains_ideal(I, J) and contains_ideal(J, I)


def frobenius_power_ideal(I: IdealHandle, q: int) -> IdealHandle:
    """I^[q], generated by the q-th powers of the generators of I."""
    out = IdealHandle(I.ctx, [frobenius_power_poly(g, q) for g in I.generators])
    # Frobenius maps a reduced Gröbner basis to one: S-pairs and reductions commute with x -> x^q.
    for order, basis in list(I._gb_cache.items()):
        out._gb_cache[order] = tuple(frobenius_power_poly(g, q) for g in basis)
    return out


# ------------------------------------------------------ elimination machinery


def _lift(f: Polynomial, big: RingContext, k: int) -> Polynomial:
    pad = (0,) * k
    return Polynomial._raw(big, {pad + e: c for e, c in f.as_dict().items()})


def _drop(f: Polynomial, small: RingContext, k: int) -> Polynomial:
    return Polynomial._raw(small, {e[k:]: c for e, c in f.as_dict().items()})


def _aux_names(ctx: RingContext, count: int, stem: str = "_t") -> tuple[str, ...]:
    names = []
    i = 0
    while len(names) < count:
        cand = f"{stem}{i}"
        if cand not in ctx.var_names:
            names.append(cand)
        i += 1
    return tuple(names)


def eliminate(I: IdealHandle, k: int) -> IdealHandle:
    """I ∩ F_p[x_{k+1}, ..., x_n], as an ideal of the subring."""
    ctx = I.ctx
    if not 0 < k < ctx.n:
        raise UsageError(f"can only eliminate between 1 and n-1 variables, got {k}")
    sub = RingContext(ctx.p, ctx.var_names[k:], ctx.weights[k:])
    basis = buchberger(I, block_order(k))
    kept = [_drop(g, sub, k) for g in basis if all(not any(e[:k]) for e in g.monomials())]
    out = IdealHandle(sub, kept)
    out._gb_cache[WDEGREVLEX] = tuple(kept)
    return out


def intersect(I: IdealHandle, J: IdealHandle, cap: int | None = None) -> IdealHandle:
    """I ∩ J via t*I + (1 - t)*J, eliminating t."""
    _same_ring(I, J)
    ctx = I.ctx
    if I.is_zero() or J.is_zero():
        return IdealHandle(ctx, [])
    homogeneous = I.is_homogeneous() and J.is_homogeneous()
    if not homogeneous:
        cap = None
    (tname,) = _aux_names(ctx, 1)
    big = ctx.extend([tname])
    t = big.var(0)
    one_minus_t = big.one() - t
    gens = [t * _lift(f, big, 1) for f in I.generators]
    gens += [one_minus_t * _lift(g, big, 1) for g in J.generators]
    # t gets degree 0 so that everything stays homogeneous and a cap stays valid
    basis = _groebner_raw(big, gens, block_order(1), grading=(0,) + ctx.weights, cap=cap)
    kept = [_drop(g, ctx, 1) for g in basis if all(e[0] == 0 for e in g.monomials())]
    out = IdealHandle(ctx, kept, truncated_at=cap)
    if cap is None:
        out._gb_cache[WDEGREVLEX] = tuple(kept)
    return out


def exact_divide(h: Polynomial, f: Polynomial) -> Polynomial:
    """h / f, raising if f does not divide h."""
    if f.is_zero():
        raise UsageError("division by zero polynomial")
    ctx = h.ctx
    p = ctx.p
    lt_f, lc_f = f.leading_term()
    inv = pow(lc_f, -1, p)
    rest = h
    quot: dict[Monomial, int] = {}
    while not rest.is_zero():
        lt_r, lc_r = rest.leading_term()
        if not _divides(lt_f, lt_r):
            raise UsageError("polynomial division is not exact")
        m = tuple(a - b for a, b in zip(lt_r, lt_f))
        c = (lc_r * inv) % p
        quot[m] = c
        rest = rest - f.mul_monomial(m, c)
    return Polynomial(ctx, quot)


def principal_colon(I: IdealHandle, f: Polynomial, cap: int | None = None) -> IdealHandle:
    """(I : f) = (1/f)(I ∩ (f))."""
    ctx = I.ctx
    if f.is_zero():
        raise UsageError("colon by the zero polynomial")
    if ideal_member(f, I):
        return IdealHandle(ctx, [ctx.one()])
    inter = intersect(I, IdealHandle(ctx, [f]), None if cap is None else cap + degree(f))
    truncated = cap if inter.truncated_at is not None else None
    return IdealHandle(ctx, [exact_divide(h, f) for h in inter.generators], truncated_at=truncated)


def colon(I: IdealHandle, J: IdealHandle, cap: int | None = None) -> IdealHandle:
    """(I : J) as the intersection of the principal colons (I : g), g in J."""
    _same_ring(I, J)
    if J.is_zero():
        raise UsageError("colon by the zero ideal")
    result = None
    for g in J.generators:
        part = principal_colon(I, g, cap)
        if result is None:
            result = part
        elif _contains_one(result):
            result = part
        elif not _contains_one(part):
            result = intersect(result, part, cap)
    if cap is not None and I.is_homogeneous() and J.is_homogeneous():
        result.truncated_at = cap
    else:
        result.truncated_at = None
    return result


def saturate(I: IdealHandle, f: Polynomial) -> IdealHandle:
    """(I : f^infinity) = (I + (1 - u f)) ∩ S."""
    ctx = I.ctx
    (uname,) = _aux_names(ctx, 1, "_u")
    big = ctx.extend([uname])
    u = big.var(0)
    gens = [_lift(g, big, 1) for g in I.generators] + [big.one() - u * _lift(f, big, 1)]
    return eliminate(IdealHandle(big, gens), 1)


# --------------------------------------------------------- graded generators


def mingens_degrees(J: IdealHandle, Iq: IdealHandle) -> list[int]:
    """Degrees of a minimal homogeneous generating set of J / Iq (sorted).

    Generators of J are scanned by ascending degree (ties in input order) and
    kept unless they already lie in Iq + (kept ones).
    """
    _same_ring(J, Iq)
    if not (J.is_homogeneous() and Iq.is_homogeneous()):
        raise UsageError("mingens_degrees needs homogeneous ideals")
    ctx = J.ctx
    order = WDEGREVLEX
    cands = sorted(enumerate(J.generators), key=lambda t: (degree(t[1]), t[0]))
    kept: list[Polynomial] = []
    degs: list[int] = []
    current_deg = None
    eng = elems = None
    dirty = True
    for _, g in cands:
        d = degree(g)
        if dirty or d != current_deg:
            # a basis truncated at d decides membership in degree d
            basis = _groebner_raw(ctx, list(Iq.generators) + kept, order, cap=d)
            eng, elems = _elems(ctx, basis, order)
            current_deg, dirty = d, False
        if eng.reduce(g.as_dict(), elems):
            kept.append(g)
            degs.append(d)
            dirty = True
    return degs


def ideal_in_monomial_ideal(I: IdealHandle, M: MonomialIdeal) -> bool:
    """I ⊆ M, decided on the monomials of the generators of I."""
    return all(M.contains(e) for g in I.generators for e in g.monomials())


def homogeneous_generators(gens: Sequence[Polynomial]) -> list[Polynomial]:
    """Split each generator into homogeneous components (valid for homogeneous ideals)."""
    from .algebra import homogeneous_components

    out = []
    for g in gens:
        out.extend(homogeneous_components(g).values())
    return out
