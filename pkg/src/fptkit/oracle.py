"""Brute-force validators for the test suite.

Everything here is deliberately naive: ideals are handled degree by degree as
F_p vector spaces of polynomials, and λ is found by Fourier-Motzkin
feasibility.  Nothing is shared with the Gröbner engine or the polyhedral code;
inputs are read only as raw ``{exponent: coefficient}`` data.

Functions return ``None`` when the degree cap is too small to decide.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from .algebra import Polynomial, RingContext
from .fsing import NOT_F_PURE


@dataclass(frozen=True)
class DegreeCappedSpace:
    """All monomials of weighted degree <= cap."""

    ctx: RingContext
    cap: int

    def monomials_of_degree(self, d: int) -> list[tuple[int, ...]]:
        return _monomials(self.ctx.weights, d)

    @property
    def basis(self) -> list[tuple[int, ...]]:
        out = []
        for d in range(self.cap + 1):
            out.extend(self.monomials_of_degree(d))
        return out


def _monomials(weights, d):
    if not weights:
        return [()] if d == 0 else []
    w, rest = weights[0], weights[1:]
    out = []
    for a in range(d // w + 1):
        out.extend((a,) + m for m in _monomials(rest, d - a * w))
    return out


def _deg(weights, m):
    return sum(w * a for w, a in zip(weights, m))


def _gens(I):
    if hasattr(I, "generators"):
        I = I.generators
    return [g.as_dict() if hasattr(g, "as_dict") else dict(g) for g in I]


def _shift(f: dict, m) -> dict:
    return {tuple(a + b for a, b in zip(e, m)): c for e, c in f.items()}


def _pmul(f: dict, g: dict, p: int) -> dict:
    out: dict = {}
    for e1, c1 in f.items():
        for e2, c2 in g.items():
            e = tuple(a + b for a, b in zip(e1, e2))
            out[e] = (out.get(e, 0) + c1 * c2) % p
    return {e: c for e, c in out.items() if c}


class _Echelon:
    """Incremental row echelon form over F_p of sparse vectors."""

    def __init__(self, p: int):
        self.p = p
        self.rows: dict = {}

    def reduce(self, v: dict) -> dict:
        v = {k: c % self.p for k, c in v.items() if c % self.p}
        p = self.p
        rest: dict = {}
        # full normal form: residues must be canonical for the kernel step to be linear
        while v:
            piv = max(v)
            row = self.rows.get(piv)
            if row is None:
                rest[piv] = v.pop(piv)
                continue
            c = v[piv]
            for k, rc in row.items():
                nv = (v.get(k, 0) - c * rc) % p
                if nv:
                    v[k] = nv
                else:
                    v.pop(k, None)
        return rest

    def add(self, v: dict) -> bool:
        v = self.reduce(v)
        if not v:
            return False
        piv = max(v)
        inv = pow(v[piv], -1, self.p)
        self.rows[piv] = {k: (c * inv) % self.p for k, c in v.items()}
        return True

    def __len__(self):
        return len(self.rows)


def _homogeneous(f: dict, weights) -> bool:
    return len({_deg(weights, e) for e in f}) <= 1


def _span_in_degree(gens, weights, d, p) -> _Echelon:
    """I_d for a homogeneous ideal: span of m*g with deg(m*g) = d."""
    ech = _Echelon(p)
    for g in gens:
        dg = _deg(weights, next(iter(g)))
        if dg > d:
            continue
        for m in _monomials(weights, d - dg):
            ech.add(_shift(g, m))
    return ech


def bf_member(f: Polynomial, I, D: int):
    """Is f in the span of {m g : deg(m g) <= D}?  None when undecidable at this cap."""
    ctx = f.ctx
    p, w = ctx.p, ctx.weights
    fd = f.as_dict()
    if not fd:
        return True
    if max(_deg(w, e) for e in fd) > D:
        return None
    gens = _gens(I)
    ech = _Echelon(p)
    for g in gens:
        dg = max(_deg(w, e) for e in g)
        for d in range(D - dg + 1):
            for m in _monomials(w, d):
                ech.add(_shift(g, m))
    if not ech.reduce(fd):
        return True
    # a negative answer is only conclusive for homogeneous data
    if all(_homogeneous(g, w) for g in gens) and _homogeneous(fd, w):
        return False
    return None


def bf_colon_capped(I, J, D: int, ctx: RingContext) -> list[Polynomial]:
    """Generators of (I : J) in degrees <= D, degree by degree (homogeneous I, J).

    In degree d the colon is the kernel of g -> (g f_1, ..., g f_k) modulo
    I_{d + deg f_i}.  Elements already generated by lower degrees are skipped.
    """
    p, w = ctx.p, ctx.weights
    Ig, Jg = _gens(I), _gens(J)
    if not Jg:
        return [Polynomial(ctx, {(0,) * ctx.n: 1})]
    found: list[dict] = []
    for d in range(D + 1):
        mons = _monomials(w, d)
        if not mons:
            continue
        # residue of m * f_j modulo I, for every monomial m of degree d
        residues = []
        slices = {}
        for m in mons:
            res = {}
            for j, fj in enumerate(Jg):
                dj = _deg(w, next(iter(fj)))
                if d + dj not in slices:
                    slices[d + dj] = _span_in_degree(Ig, w, d + dj, p)
                r = slices[d + dj].reduce(_shift(fj, m))
                for k, c in r.items():
                    res[(j, k)] = c
            residues.append(res)
        kernel = _kernel(residues, p)
        lower = _Echelon(p)
        for g in found:
            dg = _deg(w, next(iter(g)))
            for m in _monomials(w, d - dg):
                lower.add(_shift(g, m))
        for vec in kernel:
            g = {mons[i]: c for i, c in vec.items()}
            if lower.add(g):
                found.append(g)
    return [Polynomial(ctx, g) for g in found]


def _kernel(columns: list[dict], p: int) -> list[dict]:
    """Basis of {c : sum c_i columns[i] = 0} over F_p (columns are sparse)."""
    # augment each column with a unit tag and eliminate; tags of zero columns form the kernel
    rows = []
    ech: dict = {}
    for i, col in enumerate(columns):
        v = {("v",) + (k,): c % p for k, c in col.items() if c % p}
        tag = {("t", i): 1}
        while v:
            piv = max(v)
            if piv not in ech:
                break
            rv, rt = ech[piv]
            c = v[piv]
            for k, rc in rv.items():
                nv = (v.get(k, 0) - c * rc) % p
                if nv:
                    v[k] = nv
                else:
                    v.pop(k, None)
            for k, rc in rt.items():
                nt = (tag.get(k, 0) - c * rc) % p
                if nt:
                    tag[k] = nt
                else:
                    tag.pop(k, None)
        if v:
            piv = max(v)
            inv = pow(v[piv], -1, p)
            ech[piv] = ({k: (c * inv) % p for k, c in v.items()}, {k: (c * inv) % p for k, c in tag.items()})
        else:
            rows.append({k[1]: c for k, c in tag.items()})
    return rows


def bf_nu(I, a, e: int, ctx: RingContext):
    """nu_e(a) straight from its definition, or NOT_F_PURE.

    J = (I^[q] : I) is computed by linear algebra up to degree (q-1) * sum(w);
    then products of r generators of a times generators of J are expanded and
    tested against m^[q] for r = 0, 1, ...
    """
    p, w = ctx.p, ctx.weights
    q = p ** e
    D = (q - 1) * sum(w)
    Ig = _gens(I)
    Iq = [{tuple(q * x for x in ex): c for ex, c in g.items()} for g in Ig]
    J = [g.as_dict() for g in bf_colon_capped(Iq, Ig, D, ctx)] if Ig else [{(0,) * ctx.n: 1}]
    ag = _gens(a) if a is not None else [{tuple(int(i == j) for i in range(ctx.n)): 1} for j in range(ctx.n)]

    def escapes(f):
        return any(all(x < q for x in ex) for ex in f)

    r = 0
    while True:
        hit = False
        for combo in itertools.combinations_with_replacement(range(len(ag)), r):
            prod = {(0,) * ctx.n: 1}
            for i in combo:
                prod = _pmul(prod, ag[i], p)
            if any(escapes(_pmul(prod, j, p)) for j in J):
                hit = True
                break
        if not hit:
            return NOT_F_PURE if r == 0 else r - 1
        r += 1


def bf_mingens_degrees(J, Iq, D: int, ctx: RingContext) -> list[int]:
    """Degrees of minimal generators of J / Iq up to D (homogeneous data).

    Graded Nakayama: in degree d there are dim J_d - dim(Iq_d + (m J)_d) of them.
    """
    p, w = ctx.p, ctx.weights
    Jg, Iqg = _gens(J), _gens(Iq)
    out = []
    for d in range(D + 1):
        full = _span_in_degree(Jg, w, d, p)
        if not len(full):
            continue
        smaller = _span_in_degree(Iqg, w, d, p)
        for i, wi in enumerate(w):
            if wi > d:
                continue
            shift = tuple(int(k == i) for k in range(ctx.n))
            for row in _span_in_degree(Jg, w, d - wi, p).rows.values():
                smaller.add(_shift(row, shift))
        extra = 0
        for row in full.rows.values():
            if smaller.add(row):
                extra += 1
        out.extend([d] * extra)
    return out


# ------------------------------------------------------------------ λ by feasibility


def _fm_feasible(ineqs: list[tuple[list[Fraction], Fraction]], nvars: int) -> bool:
    """Does some real x satisfy every a.x <= b?  Fourier-Motzkin elimination."""
    rows = [(list(a), Fraction(b)) for a, b in ineqs]
    for k in range(nvars):
        pos, neg, zero = [], [], []
        for a, b in rows:
            (pos if a[k] > 0 else neg if a[k] < 0 else zero).append((a, b))
        new = list(zero)
        for ap, bp in pos:
            for an, bn in neg:
                s, t = -an[k], ap[k]
                a = [s * x + t * y for x, y in zip(ap, an)]
                new.append((a, s * bp + t * bn))
        seen = set()
        rows = []
        for a, b in new:
            # normalize by the largest absolute coefficient to merge duplicates
            scale = max((abs(x) for x in a), default=0)
            if scale:
                a = [x / scale for x in a]
                b = b / scale
            key = (tuple(a), b)
            if key not in seen:
                seen.add(key)
                rows.append((a, b))
    return all(b >= 0 for a, b in rows)


def _in_scaled_polyhedron(u, hb_points, lam: Fraction) -> bool:
    """u = sum α_j h_j + sum β_j h_j with α, β >= 0 and sum α = lam."""
    s = len(hb_points)
    d = len(u)
    nv = 2 * s
    ineqs = []
    for c in range(d):
        coeffs = [Fraction(h[c]) for h in hb_points] * 2
        ineqs.append((coeffs, Fraction(u[c])))
        ineqs.append(([-x for x in coeffs], Fraction(-u[c])))
    ones = [Fraction(1)] * s + [Fraction(0)] * s
    ineqs.append((ones, lam))
    ineqs.append(([-x for x in ones], -lam))
    for i in range(nv):
        row = [Fraction(0)] * nv
        row[i] = Fraction(-1)
        ineqs.append((row, Fraction(0)))
    return _fm_feasible(ineqs, nv)


def _solve_square(cols, u):
    """Solve sum x_i cols[i] = u exactly when the columns are independent."""
    d = len(u)
    k = len(cols)
    m = [[Fraction(cols[j][r]) for j in range(k)] + [Fraction(u[r])] for r in range(d)]
    row = 0
    where = []
    for c in range(k):
        piv = next((i for i in range(row, d) if m[i][c] != 0), None)
        if piv is None:
            return None
        m[row], m[piv] = m[piv], m[row]
        m[row] = [x / m[row][c] for x in m[row]]
        for i in range(d):
            if i != row and m[i][c] != 0:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[row])]
        where.append(row)
        row += 1
    if any(m[i][k] != 0 for i in range(row, d)):
        return None
    return [m[r][k] for r in where]


def bf_lambda(u, hb) -> Fraction:
    """max{λ : u ∈ λ (conv(H) + cone(H))} for the Hilbert basis H.

    The maximum sits at a basic solution, so the candidates are the values
    sum(α) over independent subsets; the largest feasible candidate is found by
    binary search with the Fourier-Motzkin test.
    """
    pts = [tuple(h) for h in (hb.basis if hasattr(hb, "basis") else hb)]
    u = tuple(u)
    if not any(u):
        return Fraction(0)
    d = len(u)
    cands = set()
    labelled = [(h, True) for h in pts] + [(h, False) for h in pts]
    for k in range(1, d + 1):
        for sub in itertools.combinations(labelled, k):
            if len({h for h, _ in sub}) < k:
                continue
            x = _solve_square([h for h, _ in sub], u)
            if x is None or any(v < 0 for v in x):
                continue
            cands.add(sum(v for v, (_, is_pt) in zip(x, sub) if is_pt))
    cands = sorted(c for c in cands if c > 0)
    lo, hi = 0, len(cands) - 1
    best = None
    while lo <= hi:
        mid = (lo + hi) // 2
        if _in_scaled_polyhedron(u, pts, cands[mid]):
            best = cands[mid]
            lo = mid + 1
        else:
            hi = mid - 1
    if best is None:
        raise ValueError(f"{u} is not in the cone spanned by the Hilbert basis")
    return best
