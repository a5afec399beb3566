"""Buchberger's algorithm on raw ``{exponent: coefficient}`` dictionaries.

The public wrappers live in :mod:`fptkit.groebner`.  Inside the engine a term is
a triple ``(key, packed, coeff)``:

* ``key`` is the linear order key (see :mod:`fptkit.algebra`);
* ``packed`` stores the exponent vector in fixed-width bit fields, each with a
  guard bit, so ``a | b`` iff ``(packed(b) - packed(a)) & GUARD == 0``.

Both are linear in the exponents, so multiplying a term by a monomial is two
integer additions.  Pairs are selected by sugar degree, and the
Gebauer-Moeller update applies both Buchberger criteria.  With ``cap`` set,
pairs and inputs of sugar above it are dropped; for input homogeneous in
``grading`` the result is a Gröbner basis of the ideal through degree ``cap``.
"""

from __future__ import annotations

import contextvars
import heapq
from contextlib import contextmanager

from .errors import ResourceError

DEFAULT_BUDGET = 10**7

_FIELD = 24  # bits per exponent, top bit is the guard
_LIMIT = 1 << (_FIELD - 1)

_budget = contextvars.ContextVar("reduction_budget", default=DEFAULT_BUDGET)


@contextmanager
def step_budget(n: int):
    """Cap the number of reduction steps a single Gröbner computation may take."""
    token = _budget.set(int(n))
    try:
        yield
    finally:
        _budget.reset(token)


def current_budget() -> int:
    return _budget.get()


class _Elem:
    __slots__ = ("lt", "ltkey", "ltpk", "tail", "sugar")

    def __init__(self, terms, lt, sugar):
        self.ltkey, self.ltpk, _ = terms[0]
        self.lt = lt
        self.tail = terms[1:]
        self.sugar = sugar


def _divides(a, b) -> bool:
    for x, y in zip(a, b):
        if x > y:
            return False
    return True


def _lcm(a, b):
    return tuple(x if x > y else y for x, y in zip(a, b))


class Engine:
    """Reduction context: coefficient field, order vector and grading."""

    def __init__(self, p: int, keyvec, grading, budget: int | None = None):
        self.p = p
        self.keyvec = tuple(keyvec)
        self.grading = tuple(grading)
        self.n = len(self.keyvec)
        self.guard = sum(1 << (_FIELD * i + _FIELD - 1) for i in range(self.n))
        self.budget = current_budget() if budget is None else budget
        self.left = self.budget

    # monomial encodings

    def key(self, exp) -> int:
        return sum(c * a for c, a in zip(self.keyvec, exp))

    def pack(self, exp) -> int:
        v = 0
        for i, a in enumerate(exp):
            if a >= _LIMIT:
                raise ResourceError(f"exponent {a} too large for the packed representation")
            v |= a << (_FIELD * i)
        return v

    def unpack(self, v: int):
        mask = (1 << _FIELD) - 1
        return tuple((v >> (_FIELD * i)) & mask for i in range(self.n))

    def deg(self, exp) -> int:
        return sum(w * a for w, a in zip(self.grading, exp))

    def encode(self, d: dict):
        """Sorted term list of an ``{exp: coeff}`` dict."""
        key, pack = self.key, self.pack
        return sorted(((key(e), pack(e), c) for e, c in d.items()), reverse=True)

    def decode(self, terms) -> dict:
        unpack = self.unpack
        return {unpack(pk): c for _, pk, c in terms}

    def element(self, terms, sugar=0) -> _Elem:
        return _Elem(terms, self.unpack(terms[0][1]), sugar)

    def make_monic(self, terms):
        p = self.p
        inv = pow(terms[0][2], -1, p)
        if inv == 1:
            return terms
        return [(k, pk, (c * inv) % p) for k, pk, c in terms]

    # reduction

    def reduce_terms(self, terms, basis, full: bool = True):
        """Remainder of a term list modulo ``basis``; returns a sorted term list."""
        p = self.p
        guard = self.guard
        work = {}
        heap = []
        for k, pk, c in terms:
            work[k] = [pk, c]
            heap.append(-k)
        heapq.heapify(heap)
        rem = []
        pop, push = heapq.heappop, heapq.heappush
        steps = 0
        while heap:
            k = -pop(heap)
            t = work.pop(k, None)
            if t is None:
                continue
            pk, c = t
            for g in basis:
                if not (pk - g.ltpk) & guard:
                    break
            else:
                rem.append((k, pk, c))
                if not full:
                    rem.extend(sorted(((kk, v[0], v[1]) for kk, v in work.items()), reverse=True))
                    break
                continue
            steps += 1
            dk = k - g.ltkey
            dp = pk - g.ltpk
            for gk, gp, gc in g.tail:
                nk = gk + dk
                t2 = work.get(nk)
                if t2 is None:
                    work[nk] = [gp + dp, (-c * gc) % p]
                    push(heap, -nk)
                else:
                    v = (t2[1] - c * gc) % p
                    if v:
                        t2[1] = v
                    else:
                        del work[nk]
        self.left -= steps
        if self.left < 0:
            raise ResourceError(f"reduction budget of {self.budget} steps exhausted")
        return rem

    def reduce(self, d: dict, basis, full: bool = True) -> dict:
        return self.decode(self.reduce_terms(self.encode(d), basis, full))

    # Buchberger

    def groebner(self, polys, cap: int | None = None):
        """Reduced Gröbner basis of the ideal spanned by ``polys`` (dicts).

        Returns ``{exp: coeff}`` dicts, monic, sorted by ascending leading term.
        """
        deg = self.deg
        queue = []  # inputs waiting to be reduced: (sugar, terms)
        for d in polys:
            if not d:
                continue
            s = max(deg(e) for e in d)
            if cap is not None and s > cap:
                continue
            queue.append((s, self.encode(d)))
        queue.sort(key=lambda t: t[0], reverse=True)

        elems: list[_Elem] = []
        active: list[int] = []
        pairs: list[tuple] = []  # (sugar, lcm_key, lcm, i, j)

        while queue or pairs:
            best = None
            if pairs:
                best = min(range(len(pairs)), key=lambda t: pairs[t][:2])
            if queue and (best is None or queue[-1][0] <= pairs[best][0]):
                s, terms = queue.pop()
            else:
                s, _, lcm, i, j = pairs.pop(best)
                terms = self._spoly(elems[i], elems[j], lcm)
            r = self.reduce_terms(terms, [elems[a] for a in active])
            if not r:
                continue
            elems.append(self.element(self.make_monic(r), s))
            active, pairs = self._update(elems, active, pairs, len(elems) - 1, cap)

        basis = [elems[a] for a in active]
        out = []
        for g in basis:
            others = [b for b in basis if b is not g]
            tail = self.reduce_terms(g.tail, others) if g.tail else []
            out.append([(g.ltkey, g.ltpk, 1)] + tail)
        out.sort(key=lambda t: t[0][0])
        return [self.decode(t) for t in out]

    def _spoly(self, f: _Elem, g: _Elem, lcm):
        p = self.p
        pl, kl = self.pack(lcm), self.key(lcm)
        dkf, dpf = kl - f.ltkey, pl - f.ltpk
        work = {k + dkf: [pk + dpf, c] for k, pk, c in f.tail}
        dkg, dpg = kl - g.ltkey, pl - g.ltpk
        for k, pk, c in g.tail:
            nk = k + dkg
            t = work.get(nk)
            if t is None:
                work[nk] = [pk + dpg, (-c) % p]
            else:
                v = (t[1] - c) % p
                if v:
                    t[1] = v
                else:
                    del work[nk]
        return sorted(((k, v[0], v[1]) for k, v in work.items()), reverse=True)

    def _update(self, elems, active, pairs, hi, cap):
        h = elems[hi]
        hlt = h.lt
        deg, key = self.deg, self.key
        hdeg = deg(hlt)

        def make(i):
            g = elems[i]
            lcm = _lcm(g.lt, hlt)
            dl = deg(lcm)
            sugar = max(g.sugar + dl - deg(g.lt), h.sugar + dl - hdeg)
            return (sugar, key(lcm), lcm, i, hi)

        def coprime(pr):
            return all(x == 0 or y == 0 for x, y in zip(elems[pr[3]].lt, hlt))

        # Gebauer-Moeller: keep one new pair per minimal lcm
        pending = [make(i) for i in active]
        chosen = []
        while pending:
            pr = pending.pop()
            lcm = pr[2]
            if coprime(pr) or not (
                any(_divides(o[2], lcm) for o in pending)
                or any(_divides(o[2], lcm) for o in chosen)
            ):
                chosen.append(pr)
        new_pairs = [pr for pr in chosen if not coprime(pr)]
        if cap is not None:
            new_pairs = [pr for pr in new_pairs if pr[0] <= cap]

        # drop old pairs made redundant by h
        survivors = []
        for pr in pairs:
            lcm = pr[2]
            if _divides(hlt, lcm):
                if _lcm(elems[pr[3]].lt, hlt) != lcm and _lcm(elems[pr[4]].lt, hlt) != lcm:
                    continue
            survivors.append(pr)
        survivors.extend(new_pairs)
        new_active = [i for i in active if not _divides(hlt, elems[i].lt)]
        new_active.append(hi)
        return new_active, survivors
