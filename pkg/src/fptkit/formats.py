"""Ring and cone description files.

Ring files::

    # generic 2x3 matrix
    p = 3
    vars = a b c d e f          # or name:weight
    I = a*e - b*d ; a*f - c*d ; b*f - c*e
    a = a ; b                   # optional ideal for nu (default: all variables)
    ainv = -3                   # optional a-invariant

Cone files::

    dim = 2
    rays = (0,1) (2,-1)
    grading = (1,0)             # optional
    p = 5                       # optional, used by `toric present`

Both accept ``#`` comments and the Unicode minus sign.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction

import sympy

from .algebra import Polynomial, RingContext, format_poly, is_homogeneous
from .errors import ParseError, UsageError
from .groebner import IdealHandle, maximal_ideal
from .toric import Cone

_MINUS = "−"
_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(.))")


def _normalize(text: str) -> str:
    return text.replace(_MINUS, "-")


def _strip_comment(line: str) -> str:
    return line.split("#", 1)[0]


def _tokenize(s: str, line: int, col0: int):
    toks = []
    pos = 0
    end = len(s.rstrip())
    while pos < end:
        m = _TOKEN.match(s, pos)
        if m is None or m.end() == pos:
            break
        start = m.start(m.lastindex) if m.lastindex else m.end()
        col = col0 + start + 1
        if m.group(1):
            toks.append(("int", int(m.group(1)), col))
        elif m.group(2):
            toks.append(("name", m.group(2), col))
        elif m.group(3):
            ch = m.group(3)
            if ch not in "+-*^()":
                raise ParseError(f"unexpected character {ch!r}", line, col)
            toks.append((ch, ch, col))
        pos = m.end()
    toks.append(("end", None, col0 + len(s.rstrip()) + 1))
    return toks


class _PolyParser:
    """expr := term (('+'|'-') term)*; term := unary ('*' unary)*;
    unary := ('+'|'-') unary | atom ('^' int)?; atom := int | name | '(' expr ')'."""

    def __init__(self, ctx: RingContext, toks, line: int):
        self.ctx = ctx
        self.toks = toks
        self.i = 0
        self.line = line
        self.index = {name: k for k, name in enumerate(ctx.var_names)}

    def peek(self):
        return self.toks[self.i]

    def take(self, kind=None):
        t = self.toks[self.i]
        if kind is not None and t[0] != kind:
            want = "end of expression" if kind == "end" else repr(kind)
            got = "end of expression" if t[0] == "end" else repr(t[1])
            raise ParseError(f"expected {want}, found {got}", self.line, t[2])
        self.i += 1
        return t

    def parse(self) -> Polynomial:
        f = self.expr()
        self.take("end")
        return f

    def expr(self):
        f = self.term()
        while self.peek()[0] in ("+", "-"):
            op = self.take()[0]
            g = self.term()
            f = f + g if op == "+" else f - g
        return f

    def term(self):
        f = self.unary()
        while self.peek()[0] == "*":
            self.take()
            f = f * self.unary()
        return f

    def unary(self):
        kind = self.peek()[0]
        if kind == "-":
            self.take()
            return -self.unary()
        if kind == "+":
            self.take()
            return self.unary()
        base = self.atom()
        if self.peek()[0] == "^":
            self.take()
            k = self.take("int")[1]
            return base ** k
        return base

    def atom(self):
        kind, val, col = self.peek()
        if kind == "int":
            self.take()
            return self.ctx.const(val)
        if kind == "name":
            self.take()
            if val not in self.index:
                raise ParseError(f"unknown variable {val!r}", self.line, col)
            return self.ctx.var(self.index[val])
        if kind == "(":
            self.take()
            f = self.expr()
            self.take(")")
            return f
        got = "end of expression" if kind == "end" else repr(val)
        raise ParseError(f"expected a number, variable or '(', found {got}", self.line, col)


def parse_poly_list(ctx: RingContext, text: str, line: int = 1, col0: int = 0) -> tuple[Polynomial, ...]:
    """Parse ``f ; g ; ...`` (empty text gives no polynomials)."""
    text = _normalize(text)
    out = []
    offset = 0
    for part in text.split(";"):
        if part.strip():
            toks = _tokenize(part, line, col0 + offset)
            out.append(_PolyParser(ctx, toks, line).parse())
        offset += len(part) + 1
    return tuple(out)


def _lines(text: str):
    """Yield (key, segments) per ``key = value`` entry.

    A segment is (line number, text, column offset).  Indented lines continue
    the previous entry, so long ideal lists can be wrapped after a ';'.
    """
    entries: list[tuple[str, list]] = []
    seen = {}
    for no, raw in enumerate(_normalize(text).splitlines(), start=1):
        line = _strip_comment(raw)
        if not line.strip():
            continue
        if line[0] in " \t" and entries:
            entries[-1][1].append((no, line, 0))
            continue
        if "=" not in line:
            col = len(line) - len(line.lstrip()) + 1
            raise ParseError("expected 'key = value'", no, col)
        key, value = line.split("=", 1)
        k = key.strip()
        if k in seen:
            raise ParseError(f"duplicate key {k!r} (first on line {seen[k]})", no, line.index(k) + 1)
        seen[k] = no
        entries.append((k, [(no, value, len(key) + 1)]))
    return entries


def _entries(text: str, allowed, multiline=()) -> dict:
    out = {}
    for k, segs in _lines(text):
        no = segs[0][0]
        if k not in allowed:
            raise ParseError(f"unknown key {k!r}", no, 1)
        if len(segs) > 1 and k not in multiline:
            raise ParseError(f"'{k}' must fit on one line", segs[1][0], 1)
        out[k] = segs
    return out


def _poly_segments(ctx, segs) -> tuple[Polynomial, ...]:
    out = []
    for no, v, col in segs:
        out.extend(g for g in parse_poly_list(ctx, v, no, col) if not g.is_zero())
    return tuple(out)


def _parse_int(value: str, no: int, col: int, what: str) -> int:
    s = value.strip()
    if not re.fullmatch(r"-?\d+", s):
        lead = len(value) - len(value.lstrip())
        raise ParseError(f"{what} must be an integer, got {s!r}", no, col + lead + 1)
    return int(s)


def _parse_prime(value: str, no: int, col: int) -> int:
    p = _parse_int(value, no, col, "p")
    if p < 2 or not sympy.isprime(p):
        raise ParseError(f"{p} is not prime", no, col + len(value) - len(value.lstrip()) + 1)
    return p


# ------------------------------------------------------------------ rings


@dataclass(frozen=True)
class RingFile:
    ctx: RingContext
    generators: tuple[Polynomial, ...]
    a_generators: tuple[Polynomial, ...] | None = None
    ainv: Fraction | None = None

    @property
    def p(self) -> int:
        return self.ctx.p

    def ideal(self) -> IdealHandle:
        return IdealHandle(self.ctx, self.generators)

    def a_ideal(self) -> IdealHandle:
        if self.a_generators is None:
            return maximal_ideal(self.ctx)
        return IdealHandle(self.ctx, self.a_generators)

    def require_homogeneous(self):
        for f in self.generators + (self.a_generators or ()):
            if not is_homogeneous(f):
                raise UsageError(f"generator {format_poly(f)} is not homogeneous")


def parse_ring(text: str) -> RingFile:
    entries = _entries(text, ("p", "vars", "I", "a", "ainv"), multiline=("I", "a"))
    for need in ("p", "vars"):
        if need not in entries:
            last = len(text.splitlines()) + 1
            raise ParseError(f"missing '{need} = ...' line", last, 1)
    no, v, col = entries["p"][0]
    p = _parse_prime(v, no, col)

    no, v, col = entries["vars"][0]
    names, weights = [], []
    for m in re.finditer(r"\S+", v):
        item = m.group()
        wm = re.fullmatch(r"([A-Za-z_][A-Za-z_0-9]*)(?::(\d+))?", item)
        if wm is None:
            raise ParseError(f"bad variable {item!r}", no, col + m.start() + 1)
        if wm.group(1) in names:
            raise ParseError(f"variable {wm.group(1)!r} repeated", no, col + m.start() + 1)
        names.append(wm.group(1))
        w = int(wm.group(2)) if wm.group(2) else 1
        if w < 1:
            raise ParseError("weights must be positive", no, col + m.start() + 1)
        weights.append(w)
    if not names:
        raise ParseError("no variables", no, col + 1)
    ctx = RingContext(p, tuple(names), tuple(weights))

    gens: tuple[Polynomial, ...] = ()
    if "I" in entries:
        gens = _poly_segments(ctx, entries["I"])
    a = None
    if "a" in entries:
        a = _poly_segments(ctx, entries["a"])
    ainv = None
    if "ainv" in entries:
        no, v, col = entries["ainv"][0]
        s = v.strip()
        if not re.fullmatch(r"-?\d+(/\d+)?", s):
            raise ParseError(f"ainv must be a rational a/b, got {s!r}", no, col + v.find(s[:1]) + 1)
        ainv = Fraction(s)
    return RingFile(ctx, gens, a, ainv)


def render_ring(rf: RingFile) -> str:
    ctx = rf.ctx
    if ctx.standard_graded:
        vars_ = " ".join(ctx.var_names)
    else:
        vars_ = " ".join(f"{n}:{w}" for n, w in zip(ctx.var_names, ctx.weights))
    lines = [f"p = {ctx.p}", f"vars = {vars_}", "I = " + " ; ".join(format_poly(g) for g in rf.generators)]
    if rf.a_generators is not None:
        lines.append("a = " + " ; ".join(format_poly(g) for g in rf.a_generators))
    if rf.ainv is not None:
        lines.append(f"ainv = {format_rational(rf.ainv)}")
    return "\n".join(lines) + "\n"


# ------------------------------------------------------------------ cones


@dataclass(frozen=True)
class ConeFile:
    dim: int
    rays: tuple[tuple[int, ...], ...]
    grading: tuple[int, ...] | None = None
    p: int | None = None
    warnings: tuple[str, ...] = field(default=(), compare=False)

    def cone(self) -> Cone:
        return Cone(self.rays)


_VEC = re.compile(r"\(([^()]*)\)")


def _parse_vectors(value: str, no: int, col: int, dim: int) -> list[tuple[int, ...]]:
    out = []
    pos = 0
    for m in _VEC.finditer(value):
        gap = value[pos:m.start()]
        if gap.strip():
            raise ParseError(f"unexpected {gap.strip()!r}", no, col + pos + gap.index(gap.strip()[0]) + 1)
        parts = [s.strip() for s in m.group(1).split(",")]
        try:
            vec = tuple(int(s) for s in parts)
        except ValueError:
            raise ParseError(f"bad integer vector ({m.group(1)})", no, col + m.start() + 1) from None
        if len(vec) != dim:
            raise ParseError(f"vector has {len(vec)} entries, expected {dim}", no, col + m.start() + 1)
        out.append(vec)
        pos = m.end()
    rest = value[pos:]
    if rest.strip():
        raise ParseError(f"unexpected {rest.strip()!r}", no, col + pos + rest.index(rest.strip()[0]) + 1)
    return out


def parse_cone(text: str) -> ConeFile:
    entries = {k: segs[0] for k, segs in _entries(text, ("dim", "rays", "grading", "p")).items()}
    for need in ("dim", "rays"):
        if need not in entries:
            raise ParseError(f"missing '{need} = ...' line", len(text.splitlines()) + 1, 1)
    no, v, col = entries["dim"]
    dim = _parse_int(v, no, col, "dim")
    if dim < 1:
        raise ParseError("dim must be positive", no, col + 1)
    no, v, col = entries["rays"]
    rays = _parse_vectors(v, no, col, dim)
    if not rays:
        raise ParseError("no rays", no, col + 1)
    cone, warnings = Cone.from_rays(rays)
    grading = None
    if "grading" in entries:
        no, v, col = entries["grading"]
        vecs = _parse_vectors(v, no, col, dim)
        if len(vecs) != 1:
            raise ParseError("grading must be a single vector", no, col + 1)
        grading = vecs[0]
    p = None
    if "p" in entries:
        no, v, col = entries["p"]
        p = _parse_prime(v, no, col)
    return ConeFile(dim, cone.rays, grading, p, tuple(warnings))


def render_cone(cf: ConeFile) -> str:
    def vec(v):
        return "(" + ",".join(str(x) for x in v) + ")"

    lines = [f"dim = {cf.dim}", "rays = " + " ".join(vec(r) for r in cf.rays)]
    if cf.grading is not None:
        lines.append(f"grading = {vec(cf.grading)}")
    if cf.p is not None:
        lines.append(f"p = {cf.p}")
    return "\n".join(lines) + "\n"


def looks_like_cone(text: str) -> bool:
    return any(k in ("rays", "dim") for k, _ in _lines(text))


def format_rational(x) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
