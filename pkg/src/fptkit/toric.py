"""Affine semigroup rings k[σ^∨ ∩ M] and their polyhedral invariants.

A cone σ ⊂ N_R = R^d is given by primitive ray generators v_1..v_s.  From it we
build the dual cone, the Hilbert basis of σ^∨ ∩ M, the Newton polyhedron
P(m) = conv(Hilbert basis) + σ^∨ of the monomial maximal ideal, the function
λ(u) = sup{λ : u ∈ λ P(m)}, the divisorial modules
ω^(k) = {m : <m, v_i> >= k for all i}, and from those a_σ, the Gorenstein test
and the Q-Gorenstein index.  All arithmetic is exact.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from . import _linalg as la
from .algebra import RingContext, Polynomial
from .errors import ResourceError, UsageError
from .groebner import IdealHandle, buchberger, saturate

MAX_DIM = 4
ENUMERATION_CAP = 2_000_000

NOT_QGOR = "NOT_QGOR"

Vector = tuple[int, ...]


def _primitive_int(v: Sequence[int]) -> Vector:
    g = math.gcd(*v)
    return tuple(x // g for x in v) if g else tuple(v)


@dataclass(frozen=True)
class Cone:
    """A strongly convex full-dimensional rational cone σ ⊂ R^d."""

    rays: tuple[Vector, ...]
    max_dim: int = MAX_DIM

    def __post_init__(self):
        rays = tuple(tuple(int(x) for x in r) for r in self.rays)
        object.__setattr__(self, "rays", rays)
        if not rays:
            raise UsageError("a cone needs at least one ray")
        d = len(rays[0])
        if any(len(r) != d for r in rays):
            raise UsageError("rays have different lengths")
        if d > self.max_dim:
            raise ResourceError(f"dimension {d} exceeds the cap {self.max_dim}")
        for r in rays:
            if not any(r):
                raise UsageError("zero ray")
            if math.gcd(*r) != 1:
                raise UsageError(f"ray {r} is not primitive")
        if la.rank(rays) != d:
            raise UsageError("the cone is not full-dimensional")
        dual = _dual_rays(rays)
        if not dual or la.rank(dual) != d:
            raise UsageError("the cone contains a line (not strongly convex)")
        object.__setattr__(self, "_dual", dual)

    @classmethod
    def from_rays(cls, rays, max_dim: int = MAX_DIM) -> tuple[Cone, list[str]]:
        """Build a cone, dividing non-primitive rays by their content."""
        warnings = []
        fixed = []
        for r in rays:
            pr = _primitive_int(r)
            if pr != tuple(r):
                warnings.append(f"ray {tuple(r)} replaced by primitive {pr}")
            fixed.append(pr)
        # repeated rays describe the same cone
        uniq = list(dict.fromkeys(fixed))
        return cls(tuple(uniq), max_dim), warnings

    @property
    def dim(self) -> int:
        return len(self.rays[0])

    def in_dual(self, m) -> bool:
        return all(la.dot(m, v) >= 0 for v in self.rays)

    def in_dual_interior(self, m) -> bool:
        return all(la.dot(m, v) >= 1 for v in self.rays)


def _dual_rays(rays) -> tuple[Vector, ...]:
    d = len(rays[0])
    found = []
    for subset in itertools.combinations(rays, d - 1):
        if d > 1 and la.rank(subset) != d - 1:
            continue
        ns = la.nullspace(list(subset), d)
        if len(ns) != 1:
            continue
        w = la.primitive(ns[0])
        vals = [la.dot(w, v) for v in rays]
        if all(x >= 0 for x in vals):
            cand = w
        elif all(x <= 0 for x in vals):
            cand = tuple(-x for x in w)
        else:
            continue
        if cand not in found:
            found.append(cand)
    return tuple(sorted(found))


def dual_cone(cone: Cone) -> tuple[Vector, ...]:
    """Primitive extreme rays of σ^∨ = {m : <m, v_i> >= 0}."""
    return cone._dual


# ------------------------------------------------------------------ Hilbert basis


@dataclass(frozen=True)
class HilbertBasisData:
    cone: Cone
    dual_rays: tuple[Vector, ...]
    basis: tuple[Vector, ...]
    grading: Vector | None = None

    def __post_init__(self):
        if self.grading is not None:
            w = tuple(int(x) for x in self.grading)
            object.__setattr__(self, "grading", w)
            if len(w) != self.cone.dim:
                raise UsageError("grading vector has the wrong length")
            bad = [h for h in self.basis if la.dot(h, w) < 1]
            if bad:
                raise UsageError(f"grading {w} is not positive on {bad}")

    def degree(self, m) -> int:
        return la.dot(m, self.functional)

    @property
    def functional(self) -> Vector:
        """The grading, or the sum of the rays of σ (positive on σ^∨ minus 0)."""
        if self.grading is not None:
            return self.grading
        return tuple(sum(col) for col in zip(*self.cone.rays))

    @property
    def degrees(self) -> tuple[int, ...]:
        return tuple(self.degree(h) for h in self.basis)

    @property
    def standard_graded(self) -> bool:
        return self.grading is not None and all(d == 1 for d in self.degrees)


def _faces_triangulation(rays: list[Vector], normals, cone_rays_idx, dim) -> list[tuple[int, ...]]:
    """Pulling triangulation of the cone spanned by rays[cone_rays_idx] (of dimension dim)."""
    idx = tuple(sorted(cone_rays_idx))
    if len(idx) == dim:
        return [idx]
    apex = idx[0]
    facets = set()
    for v in normals:
        face = tuple(i for i in idx if la.dot(rays[i], v) == 0)
        if len(face) >= dim - 1 and len(face) < len(idx) and la.rank([rays[i] for i in face]) == dim - 1:
            facets.add(face)
    out = []
    for face in facets:
        if apex in face:
            continue
        for simplex in _faces_triangulation(rays, normals, face, dim - 1):
            out.append((apex,) + simplex)
    return out


def _box_points(lo, hi):
    size = 1
    for a, b in zip(lo, hi):
        size *= b - a + 1
    if size > ENUMERATION_CAP:
        raise ResourceError(f"lattice box with {size} points exceeds the enumeration cap")
    return itertools.product(*(range(a, b + 1) for a, b in zip(lo, hi)))


def _parallelepiped_points(gens: list[Vector]) -> list[Vector]:
    """Lattice points sum(l_i g_i) with 0 <= l_i < 1 (gens linearly independent)."""
    d = len(gens[0])
    lo = [sum(min(0, g[c]) for g in gens) for c in range(d)]
    hi = [sum(max(0, g[c]) for g in gens) for c in range(d)]
    cols = [list(row) for row in zip(*gens)]  # d x d, columns are gens
    out = []
    for x in _box_points(lo, hi):
        lam = la.solve(cols, list(x))
        if all(0 <= l < 1 for l in lam):
            out.append(tuple(x))
    return out


def hilbert_basis(cone: Cone, grading=None) -> HilbertBasisData:
    """Irreducible generators of σ^∨ ∩ M.

    Triangulate σ^∨ by pulling, collect the lattice points of each fundamental
    parallelepiped together with the rays, and keep the irreducible ones.
    """
    rays = list(dual_cone(cone))
    d = cone.dim
    simplices = _faces_triangulation(rays, cone.rays, range(len(rays)), d)
    cands = set(rays)
    for s in simplices:
        for x in _parallelepiped_points([rays[i] for i in s]):
            if any(x):
                cands.add(x)
    cands = sorted(cands)
    basis = []
    for x in cands:
        reducible = any(
            y != x and cone.in_dual(tuple(a - b for a, b in zip(x, y))) for y in cands
        )
        if not reducible:
            basis.append(x)
    return HilbertBasisData(cone, tuple(rays), tuple(basis), grading)


# ------------------------------------------------------------------ Newton polyhedron


@dataclass(frozen=True)
class NewtonPolyhedron:
    """P(m) = {u : <u, w_F> >= c_F for every facet F}."""

    hb: HilbertBasisData
    facets: tuple[tuple[Vector, Fraction], ...]

    @property
    def bounded_facets(self):
        return tuple((w, c) for w, c in self.facets if c > 0)

    def contains(self, u) -> bool:
        return all(la.dot(u, w) >= c for w, c in self.facets)


def newton_polyhedron(hb: HilbertBasisData) -> NewtonPolyhedron:
    """Facet description of conv(Hilbert basis) + σ^∨.

    Every facet hyperplane passes through d affinely independent generators
    (points of the Hilbert basis, or directions of σ^∨ with at least one point);
    candidates are checked for validity against all generators.
    """
    d = hb.cone.dim
    points = list(hb.basis)
    rays = list(hb.dual_rays)
    items = [(h, True) for h in points] + [(r, False) for r in rays]
    found: dict[Vector, Fraction] = {}
    for combo in itertools.combinations(items, d):
        if not any(is_pt for _, is_pt in combo):
            continue
        rows = [list(v) + ([-1] if is_pt else [0]) for v, is_pt in combo]
        ns = la.nullspace(rows, d + 1)
        if len(ns) != 1:
            continue
        vec = ns[0]
        for sign in (1, -1):
            w_rat = [sign * x for x in vec[:d]]
            if not any(w_rat):
                continue
            w = la.primitive(w_rat)
            if any(la.dot(r, w) < 0 for r in rays):
                continue
            c = min(Fraction(la.dot(h, w)) for h in points)
            anchor = next(v for v, is_pt in combo if is_pt)
            if la.dot(anchor, w) != c:
                continue
            found[w] = c
    facets = tuple(sorted(found.items(), key=lambda t: (-t[1], t[0])))
    return NewtonPolyhedron(hb, facets)


def lambda_m(u, P: NewtonPolyhedron) -> Fraction:
    """sup{λ >= 0 : u ∈ λ P(m)} = min over facets with c_F > 0 of <u, w_F> / c_F."""
    u = tuple(u)
    if not P.hb.cone.in_dual(u):
        raise UsageError(f"{u} is not in the dual cone")
    return min(Fraction(la.dot(u, w)) / c for w, c in P.bounded_facets)


# ------------------------------------------------------------------ divisorial modules


@dataclass(frozen=True)
class DivisorialModule:
    """Minimal generators of ω^(k) = span{x^m : <m, v_i> >= k for all i}."""

    level: int
    generators: tuple[Vector, ...]
    degrees: tuple[int, ...]

    @property
    def principal(self) -> bool:
        return len(self.generators) == 1


def _level_vertices(cone: Cone, k: int) -> list[tuple[Fraction, ...]]:
    d = cone.dim
    verts = []
    for subset in itertools.combinations(cone.rays, d):
        if la.rank(subset) != d:
            continue
        m = la.solve([list(v) for v in subset], [k] * d)
        if all(la.dot(m, v) >= k for v in cone.rays) and m not in verts:
            verts.append(tuple(m))
    return verts


def omega_mingens(cone: Cone, k: int, hb: HilbertBasisData | None = None, cap: int = ENUMERATION_CAP) -> DivisorialModule:
    """Minimal generators of the divisorial module at level k.

    A minimal generator lies in conv(vertices) + sum [0,1) ρ_j over the dual
    rays ρ_j (otherwise subtracting some ρ_j stays in the module), so a finite
    box is searched in ascending degree.
    """
    if hb is None:
        hb = hilbert_basis(cone)
    d = cone.dim
    verts = _level_vertices(cone, k)
    lo = [math.floor(min(v[c] for v in verts)) + sum(min(0, r[c]) for r in hb.dual_rays) for c in range(d)]
    hi = [math.ceil(max(v[c] for v in verts)) + sum(max(0, r[c]) for r in hb.dual_rays) for c in range(d)]
    size = 1
    for a, b in zip(lo, hi):
        size *= b - a + 1
    if size > cap:
        raise ResourceError(f"search box for level {k} has {size} points (cap {cap})", partial=None)

    def member(m):
        return all(la.dot(m, v) >= k for v in cone.rays)

    pts = sorted((m for m in itertools.product(*(range(a, b + 1) for a, b in zip(lo, hi))) if member(m)),
                 key=lambda m: (hb.degree(m), m))
    gens = []
    for m in pts:
        if any(member(tuple(a - b for a, b in zip(m, h))) for h in hb.basis):
            continue
        gens.append(tuple(m))
    return DivisorialModule(k, tuple(gens), tuple(hb.degree(m) for m in gens))


def a_sigma(cone: Cone, hb: HilbertBasisData | None = None, P: NewtonPolyhedron | None = None) -> Fraction:
    """-min λ(u) over interior lattice points, taken over the minimal generators of ω."""
    if hb is None:
        hb = hilbert_basis(cone)
    if P is None:
        P = newton_polyhedron(hb)
    gens = omega_mingens(cone, 1, hb).generators
    return -min(lambda_m(m, P) for m in gens)


def a_sigma_exhaustive(cone: Cone, radius: int, hb: HilbertBasisData | None = None) -> Fraction:
    """Same minimum over every interior lattice point with |coordinates| <= radius."""
    if hb is None:
        hb = hilbert_basis(cone)
    P = newton_polyhedron(hb)
    d = cone.dim
    best = None
    for m in _box_points([-radius] * d, [radius] * d):
        if cone.in_dual_interior(m):
            lam = lambda_m(m, P)
            if best is None or lam < best:
                best = lam
    if best is None:
        raise UsageError("no interior lattice point in the search box")
    return -best


# ------------------------------------------------------------------ Gorenstein data


def _canonical_solution(cone: Cone):
    """The rational m with <m, v_i> = 1 for all i, or None."""
    return la.solve([list(v) for v in cone.rays], [1] * len(cone.rays))


def gorenstein_toric(cone: Cone) -> bool:
    """Gorenstein iff some lattice point m has <m, v_i> = 1 for every ray."""
    m = _canonical_solution(cone)
    return m is not None and all(x.denominator == 1 for x in m)


@dataclass(frozen=True)
class QGorensteinData:
    index: int  # c
    generator: Vector  # c * m0, generating ω^(c)
    degree: int | None  # D
    fpt: Fraction | None  # D / c
    warnings: tuple[str, ...] = ()


def qgor_index_and_degree(cone: Cone, grading=None, hb: HilbertBasisData | None = None):
    """(c, D): least c with ω^(c) principal and the degree of its generator, or NOT_QGOR."""
    m = _canonical_solution(cone)
    if m is None:
        return NOT_QGOR
    c = math.lcm(*(x.denominator for x in m))
    gen = tuple(int(x * c) for x in m)
    if grading is None and hb is not None:
        grading = hb.grading
    if grading is None:
        raise UsageError("a grading vector is needed for the degree D")
    D = la.dot(gen, grading)
    warnings = []
    if hb is not None and not hb.standard_graded:
        warnings.append("ring is not standard graded: D/c is reported but need not equal fpt(m)")
    return QGorensteinData(c, gen, D, Fraction(D, c), tuple(warnings))


# ------------------------------------------------------------------ presentation


def _var_names(s: int) -> tuple[str, ...]:
    letters = "abcdefghijklmnopqrstuvwxyz"
    if s <= len(letters):
        return tuple(letters[:s])
    return tuple(f"y{i}" for i in range(1, s + 1))


def toric_present(hb: HilbertBasisData, p: int) -> tuple[IdealHandle, RingContext]:
    """The toric ideal of the Hilbert basis: S/I_A ≅ k[σ^∨ ∩ M].

    The lattice ideal of a Z-basis of ker A is saturated by the product of
    the variables; variable j has weight deg(h_j).
    """
    if hb.grading is None:
        raise UsageError("a grading vector is needed to present the ring")
    s = len(hb.basis)
    ctx = RingContext(p, _var_names(s), hb.degrees)
    A = [list(row) for row in zip(*hb.basis)]  # d x s
    kernel = la.integer_kernel(A, s)
    if not kernel:
        return IdealHandle(ctx, []), ctx
    gens = []
    for u in kernel:
        plus = tuple(max(x, 0) for x in u)
        minus = tuple(max(-x, 0) for x in u)
        gens.append(ctx.monomial(plus) - ctx.monomial(minus))
    prod = ctx.monomial((1,) * s)
    sat = saturate(IdealHandle(ctx, gens), prod)
    basis = buchberger(IdealHandle(ctx, sat.generators))
    return IdealHandle(ctx, basis), ctx


@dataclass
class ToricSummary:
    hb: HilbertBasisData
    newton: NewtonPolyhedron
    omega: DivisorialModule
    a_sigma: Fraction
    gorenstein: bool
    qgor: object  # QGorensteinData or NOT_QGOR
    warnings: list[str] = field(default_factory=list)


def summarize(cone: Cone, grading=None) -> ToricSummary:
    hb = hilbert_basis(cone, grading)
    P = newton_polyhedron(hb)
    omega = omega_mingens(cone, 1, hb)
    a = -min(lambda_m(m, P) for m in omega.generators)
    qg = qgor_index_and_degree(cone, hb=hb) if grading is not None else None
    warnings = []
    if qg is None:
        m = _canonical_solution(cone)
        qg = NOT_QGOR if m is None else None
        warnings.append("no grading given: D and D/c are not reported")
    elif qg is not NOT_QGOR:
        warnings.extend(qg.warnings)
    return ToricSummary(hb, P, omega, a, gorenstein_toric(cone), qg, warnings)


def monomial_of(ctx: RingContext, exp) -> Polynomial:
    return ctx.monomial(exp)
