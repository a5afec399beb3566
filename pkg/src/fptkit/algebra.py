"""Prime fields, monomials, monomial orders and sparse polynomials.

Monomials are plain exponent tuples.  A :class:`Polynomial` is an immutable
map ``exponent tuple -> nonzero residue mod p`` whose terms are kept sorted
descending under the ring's default order (weighted degrevlex).

Every monomial order used here is encoded as an integer-valued *linear* key
``key(a) = sum(c_i * a_i)``; comparing keys compares monomials, and
``key(a + b) == key(a) + key(b)``.  The Gröbner engine relies on this to shift
keys when multiplying by a monomial instead of recomputing them.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator, Mapping

from sympy import isprime

from .errors import UsageError

Monomial = tuple[int, ...]

# Radix for the packed order keys.  Every digit (an exponent or a block
# degree) must stay below _RADIX // 2 in absolute value.
_RADIX = 1 << 32


@dataclass(frozen=True)
class RingContext:
    """The polynomial ring F_p[x_1, ..., x_n] with a positive grading."""

    p: int
    var_names: tuple[str, ...]
    weights: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "var_names", tuple(self.var_names))
        if not self.weights:
            object.__setattr__(self, "weights", (1,) * len(self.var_names))
        else:
            object.__setattr__(self, "weights", tuple(int(w) for w in self.weights))
        if not isinstance(self.p, int) or self.p < 2 or not isprime(self.p):
            raise UsageError(f"characteristic must be a prime, got {self.p}")
        if len(self.var_names) < 1:
            raise UsageError("a ring needs at least one variable")
        if len(set(self.var_names)) != len(self.var_names):
            raise UsageError(f"duplicate variable names in {self.var_names}")
        if len(self.weights) != len(self.var_names):
            raise UsageError("one weight per variable is required")
        if any(w < 1 for w in self.weights):
            raise UsageError("variable weights must be positive")

    @property
    def n(self) -> int:
        return len(self.var_names)

    @property
    def standard_graded(self) -> bool:
        return all(w == 1 for w in self.weights)

    def zero(self) -> Polynomial:
        return Polynomial(self, {})

    def one(self) -> Polynomial:
        return Polynomial(self, {(0,) * self.n: 1})

    def const(self, c: int) -> Polynomial:
        return Polynomial(self, {(0,) * self.n: c})

    def monomial(self, exp: Iterable[int], coeff: int = 1) -> Polynomial:
        exp = tuple(exp)
        if len(exp) != self.n or any(a < 0 for a in exp):
            raise UsageError(f"bad exponent vector {exp} for {self.n} variables")
        return Polynomial(self, {exp: coeff})

    def var(self, name_or_index) -> Polynomial:
        i = name_or_index if isinstance(name_or_index, int) else self.var_names.index(name_or_index)
        exp = [0] * self.n
        exp[i] = 1
        return Polynomial(self, {tuple(exp): 1})

    def gens(self) -> list[Polynomial]:
        return [self.var(i) for i in range(self.n)]

    def mon_degree(self, exp: Monomial) -> int:
        return sum(w * a for w, a in zip(self.weights, exp))

    def extend(self, names: Iterable[str], weights: Iterable[int] | None = None) -> RingContext:
        """Ring with extra variables prepended (they come first in block orders)."""
        names = tuple(names)
        weights = tuple(weights) if weights is not None else (1,) * len(names)
        return RingContext(self.p, names + self.var_names, weights + self.weights)


@dataclass(frozen=True)
class MonomialOrder:
    """A monomial order.

    ``kind`` is one of ``degrevlex`` (total degree, unit weights), ``wdegrevlex``
    (degree with the ring's weights), ``lex``, or ``block``.  A block order puts
    the first ``block`` variables in an elimination block; both blocks are
    ordered by weighted degrevlex.
    """

    kind: str = "wdegrevlex"
    block: int = 0

    def __post_init__(self):
        if self.kind not in ("degrevlex", "wdegrevlex", "lex", "block"):
            raise UsageError(f"unknown monomial order {self.kind!r}")
        if self.kind == "block" and self.block < 1:
            raise UsageError("block order needs a positive block size")

    def key_vector(self, weights: tuple[int, ...]) -> tuple[int, ...]:
        """Coefficients c with key(a) = sum c_i a_i."""
        n = len(weights)
        if self.kind == "lex":
            return tuple(_RADIX ** (n - 1 - i) for i in range(n))
        if self.kind == "degrevlex":
            return _revlex_vector((1,) * n)
        if self.kind == "wdegrevlex":
            return _revlex_vector(weights)
        k = self.block
        if k >= n:
            raise UsageError(f"block size {k} must be smaller than the variable count {n}")
        # digits, most significant first: deg1, -a_k .. -a_1, deg2, -a_n .. -a_{k+1}
        low = _revlex_vector(weights[k:])
        shift = _RADIX ** (n - k + 1)
        high = tuple(c * shift for c in _revlex_vector(weights[:k]))
        return high + low

    def key(self, exp: Monomial, weights: tuple[int, ...]) -> int:
        return sum(c * a for c, a in zip(self.key_vector(weights), exp))


def _revlex_vector(weights: tuple[int, ...]) -> tuple[int, ...]:
    n = len(weights)
    top = _RADIX ** n
    return tuple(w * top - _RADIX ** i for i, w in enumerate(weights))


DEGREVLEX = MonomialOrder("degrevlex")
WDEGREVLEX = MonomialOrder("wdegrevlex")
LEX = MonomialOrder("lex")


def block_order(k: int) -> MonomialOrder:
    return MonomialOrder("block", k)


class Polynomial:
    """Immutable sparse polynomial over F_p in canonical form."""

    def __init__(self, ctx: RingContext, terms: Mapping[Monomial, int] | Iterable[tuple[Monomial, int]]):
        p = ctx.p
        items = terms.items() if isinstance(terms, Mapping) else terms
        d: dict[Monomial, int] = {}
        for exp, c in items:
            c = (d.get(exp, 0) + c) % p
            if c:
                d[exp] = c
            else:
                d.pop(exp, None)
        self.ctx = ctx
        self._dict = d

    @classmethod
    def _raw(cls, ctx: RingContext, d: dict[Monomial, int]) -> Polynomial:
        # trusted constructor: d already reduced mod p with no zero entries
        obj = cls.__new__(cls)
        obj.ctx = ctx
        obj._dict = d
        return obj

    @cached_property
    def terms(self) -> tuple[tuple[Monomial, int], ...]:
        vec = WDEGREVLEX.key_vector(self.ctx.weights)
        return tuple(sorted(self._dict.items(),
                            key=lambda t: sum(c * a for c, a in zip(vec, t[0])),
                            reverse=True))

    def as_dict(self) -> dict[Monomial, int]:
        return dict(self._dict)

    def monomials(self) -> Iterator[Monomial]:
        return iter(self._dict)

    def coefficient(self, exp: Monomial) -> int:
        return self._dict.get(tuple(exp), 0)

    def is_zero(self) -> bool:
        return not self._dict

    def __bool__(self):
        return bool(self._dict)

    def __len__(self):
        return len(self._dict)

    def leading_term(self, order: MonomialOrder = WDEGREVLEX) -> tuple[Monomial, int]:
        if not self._dict:
            raise UsageError("the zero polynomial has no leading term")
        vec = order.key_vector(self.ctx.weights)
        return max(self._dict.items(), key=lambda t: sum(c * a for c, a in zip(vec, t[0])))

    # arithmetic

    def _coerce(self, other) -> Polynomial:
        if isinstance(other, Polynomial):
            if other.ctx != self.ctx:
                raise UsageError("polynomials live in different rings")
            return other
        if isinstance(other, int):
            return self.ctx.const(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        p = self.ctx.p
        d = dict(self._dict)
        for exp, c in other._dict.items():
            s = (d.get(exp, 0) + c) % p
            if s:
                d[exp] = s
            else:
                del d[exp]
        return Polynomial._raw(self.ctx, d)

    __radd__ = __add__

    def __neg__(self):
        p = self.ctx.p
        return Polynomial._raw(self.ctx, {e: p - c for e, c in self._dict.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        p = self.ctx.p
        d: dict[Monomial, int] = {}
        for e1, c1 in self._dict.items():
            for e2, c2 in other._dict.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                d[e] = (d.get(e, 0) + c1 * c2) % p
        return Polynomial._raw(self.ctx, {e: c for e, c in d.items() if c})

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise UsageError("only nonnegative integer powers are supported")
        result = self.ctx.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def mul_monomial(self, exp: Monomial, coeff: int = 1) -> Polynomial:
        p = self.ctx.p
        coeff %= p
        if not coeff:
            return self.ctx.zero()
        return Polynomial._raw(
            self.ctx,
            {tuple(a + b for a, b in zip(e, exp)): (c * coeff) % p for e, c in self._dict.items()},
        )

    def __eq__(self, other):
        if isinstance(other, int):
            other = self.ctx.const(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.ctx == other.ctx and self._dict == other._dict

    def __hash__(self):
        return hash((self.ctx, frozenset(self._dict.items())))

    def __repr__(self):
        return f"Polynomial({self})"

    def __str__(self):
        return format_poly(self)


def format_poly(f: Polynomial) -> str:
    """ASCII rendering, e.g. ``x*y - z^2``; coefficients are printed in (-p/2, p/2]."""
    if f.is_zero():
        return "0"
    names = f.ctx.var_names
    p = f.ctx.p
    out = []
    for exp, c in f.terms:
        sign = "+"
        if c > p // 2 and p > 2:
            sign, c = "-", p - c
        factors = []
        for name, a in zip(names, exp):
            if a == 1:
                factors.append(name)
            elif a > 1:
                factors.append(f"{name}^{a}")
        mono = "*".join(factors)
        if not mono:
            body = str(c)
        elif c == 1:
            body = mono
        else:
            body = f"{c}*{mono}"
        out.append((sign, body))
    first_sign, first = out[0]
    text = ("-" if first_sign == "-" else "") + first
    for sign, body in out[1:]:
        text += f" {sign} {body}"
    return text


def is_power_of(q: int, p: int) -> int | None:
    """Return e with q == p**e, or None."""
    if not isinstance(q, int) or q < 1:
        return None
    e = 0
    while q % p == 0:
        q //= p
        e += 1
    return e if q == 1 else None


def frobenius_power_poly(f: Polynomial, q: int) -> Polynomial:
    """f**q for q a power of p, computed term-wise (c**q == c in F_p)."""
    if is_power_of(q, f.ctx.p) is None:
        raise UsageError(f"{q} is not a power of the characteristic {f.ctx.p}")
    return Polynomial._raw(f.ctx, {tuple(q * a for a in e): c for e, c in f._dict.items()})


def degree(f: Polynomial) -> int:
    """Largest weighted degree of a term; the zero polynomial has no degree."""
    if f.is_zero():
        raise UsageError("the zero polynomial has no degree")
    return max(f.ctx.mon_degree(e) for e in f.monomials())


def is_homogeneous(f: Polynomial) -> bool:
    return len({f.ctx.mon_degree(e) for e in f.monomials()}) <= 1


def homogeneous_components(f: Polynomial) -> dict[int, Polynomial]:
    parts: dict[int, dict[Monomial, int]] = {}
    for e, c in f._dict.items():
        parts.setdefault(f.ctx.mon_degree(e), {})[e] = c
    return {d: Polynomial._raw(f.ctx, t) for d, t in sorted(parts.items())}
