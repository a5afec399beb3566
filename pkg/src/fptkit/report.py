"""Structured command output: one payload, rendered as JSON or as text."""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources

from .formats import format_rational

# Statements attached to verdicts, so a reader knows which fact each number rests on.
CITE_FEDDER = "Fedder's criterion: S/I is F-pure iff (I^[p] : I) is not contained in m^[p]."
CITE_NU = (
    "nu_e(a) = max{r : a^r (I^[q] : I) not in m^[q]}; fpt(a) = lim nu_e(a)/p^e, and "
    "(R, a^t) is sharply F-pure iff nu_e(a) >= ceil((p^e - 1) t) for some e."
)
CITE_CANDIDATE = (
    "For F-pure graded rings with suitable hypotheses nu_e(m) = (p^e - 1) fpt(m) for "
    "infinitely many e; a ratio that repeats is reported as a candidate only."
)
CITE_BOUND = "For F-pure normal graded rings nu_e(m) <= -a(R)(p^e - 1), with equality iff R is quasi-Gorenstein."
CITE_OMEGA = (
    "(I^[q] : I)/I^[q] is isomorphic to omega_R^(1-q) up to shift, and n(q-1) - nu_e(m) is "
    "the degree of one of its minimal generators."
)
CITE_GORENSTEIN = (
    "fpt(m) = -a(R) iff R is quasi-Gorenstein, for F-pure normal standard graded domains "
    "with Noetherian anti-canonical cover (not checked)."
)
CITE_TORIC_C = "Toric rings: c(m) = -a_sigma(R) = min lambda_m over interior lattice points, negated; equals -a(R) when standard graded."
CITE_TORIC_GOR = "Toric rings: Gorenstein iff omega = (x^m : <m, v_i> >= 1) is principal iff <m, v_i> = 1 has a lattice solution."
CITE_QGOR = "Q-Gorenstein standard graded F-pure rings: fpt(m) = D/c, with omega^(c) generated in degree D."
CITE_CI = "Graded complete intersections: a(S/I) = sum deg f_i - sum deg x_j."

SCHEMA_NAME = "report.schema.json"


def digest(data: bytes | str) -> str:
    if isinstance(data, str):
        data = data.encode("utf-8")
    return hashlib.sha256(data).hexdigest()


def _plain(x):
    """JSON-safe copy: rationals become "a/b" strings; floats are refused."""
    if isinstance(x, bool) or x is None or isinstance(x, (int, str)):
        return x
    if isinstance(x, Fraction):
        return format_rational(x)
    if isinstance(x, float):
        raise TypeError("floats are not allowed in reports")
    if isinstance(x, dict):
        return {str(k): _plain(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_plain(v) for v in x]
    return str(x)


@dataclass
class Report:
    command: str
    input_sha: str
    rows: list[dict] = field(default_factory=list)
    fpt: dict | None = None
    verdict: str | None = None
    result: dict = field(default_factory=dict)
    citations: list[str] = field(default_factory=list)
    warnings: list[str] = field(default_factory=list)
    status: int = 0

    def cite(self, *texts: str):
        for t in texts:
            if t not in self.citations:
                self.citations.append(t)

    def to_dict(self) -> dict:
        return _plain(
            {
                "command": self.command,
                "input_sha": self.input_sha,
                "rows": self.rows,
                "fpt": self.fpt,
                "verdict": self.verdict,
                "result": self.result,
                "citations": self.citations,
                "warnings": self.warnings,
                "status": self.status,
            }
        )

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, ensure_ascii=False)

    def to_text(self) -> str:
        d = self.to_dict()
        out = [f"command: {d['command']}", f"input sha256: {d['input_sha']}"]
        if d["rows"]:
            out.append("   e      q   nu_e")
            for r in d["rows"]:
                out.append(f"{r['e']:>4} {r['q']:>6}   {r['nu']}")
        if d["fpt"] is not None:
            for k in ("lower", "upper", "candidate", "certified"):
                if d["fpt"].get(k) is not None:
                    out.append(f"fpt {k}: {d['fpt'][k]}")
        for k, v in d["result"].items():
            out.append(f"{k}: {_text_value(v)}")
        if d["verdict"] is not None:
            out.append(f"verdict: {d['verdict']}")
        for w in d["warnings"]:
            out.append(f"warning: {w}")
        for c in d["citations"]:
            out.append(f"ref: {c}")
        return "\n".join(out) + "\n"


def _text_value(v) -> str:
    if isinstance(v, list):
        return "[" + ", ".join(_text_value(x) for x in v) + "]"
    if isinstance(v, dict):
        return "{" + ", ".join(f"{k}: {_text_value(x)}" for k, x in v.items()) + "}"
    if isinstance(v, bool):
        return "true" if v else "false"
    return str(v)


def load_schema() -> dict:
    return json.loads(resources.files("fptkit").joinpath("data", SCHEMA_NAME).read_text(encoding="utf-8"))
