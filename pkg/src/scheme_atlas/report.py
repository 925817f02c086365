"""Verification reports and the parameter-grid syntax."""
from __future__ import annotations

import ast
import json
import operator
from dataclasses import asdict, dataclass, field
from fractions import Fraction

from .exact import format_rational

__all__ = ["Record", "VerificationReport", "GridError", "parse_grid", "expand_grid", "jsonable"]


def jsonable(x):
    """Recursively convert tuples, Fractions and numpy ints to JSON values."""
    if isinstance(x, Fraction):
        return format_rational(x)
    if isinstance(x, dict):
        return {str(k): jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [jsonable(v) for v in x]
    if isinstance(x, (bool, str, type(None))):
        return x
    if isinstance(x, int):
        return int(x)
    if hasattr(x, "item"):
        return jsonable(x.item())
    return str(x)


@dataclass
class Record:
    check: str
    indices: dict
    expected: object = None
    got: object = None
    verdict: bool = True

    def to_dict(self) -> dict:
        return jsonable(asdict(self))


@dataclass
class VerificationReport:
    suite: str
    family: str | None
    params: dict
    records: list = field(default_factory=list)
    skipped: int = 0
    seconds: float = 0.0

    @property
    def verdict(self) -> bool:
        return all(r.verdict for r in self.records)

    def add(self, check: str, indices: dict, verdict: bool, expected=None, got=None) -> None:
        self.records.append(Record(check, dict(indices), expected, got, bool(verdict)))

    def failures(self) -> list:
        return [r for r in self.records if not r.verdict]

    def to_dict(self) -> dict:
        return {
            "suite": self.suite,
            "family": self.family,
            "params": jsonable(self.params),
            "records": [r.to_dict() for r in self.records],
            "skipped": self.skipped,
            "seconds": round(self.seconds, 3),
            "verdict": self.verdict,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=1, sort_keys=False)

    @classmethod
    def from_dict(cls, d: dict) -> "VerificationReport":
        rep = cls(d["suite"], d["family"], d["params"], skipped=d.get("skipped", 0),
                  seconds=d.get("seconds", 0.0))
        rep.records = [Record(**r) for r in d["records"]]
        return rep

    @classmethod
    def from_json(cls, text: str) -> "VerificationReport":
        return cls.from_dict(json.loads(text))


# --------------------------------------------------------------------------
# grids: "r=3..5,n=3..8,k=1..n-1"


class GridError(ValueError):
    pass


_BINOPS = {ast.Add: operator.add, ast.Sub: operator.sub, ast.Mult: operator.mul,
           ast.FloorDiv: operator.floordiv, ast.Mod: operator.mod}
_FUNCS = {"min": min, "max": max}


def _eval(expr: str, env: dict) -> int:
    def ev(node):
        if isinstance(node, ast.Expression):
            return ev(node.body)
        if isinstance(node, ast.Constant) and isinstance(node.value, int):
            return node.value
        if isinstance(node, ast.Name):
            if node.id not in env:
                raise GridError(f"unknown name {node.id!r} in {expr!r}")
            return env[node.id]
        if isinstance(node, ast.BinOp) and type(node.op) in _BINOPS:
            return _BINOPS[type(node.op)](ev(node.left), ev(node.right))
        if isinstance(node, ast.UnaryOp) and isinstance(node.op, ast.USub):
            return -ev(node.operand)
        if (isinstance(node, ast.Call) and isinstance(node.func, ast.Name)
                and node.func.id in _FUNCS and not node.keywords):
            return _FUNCS[node.func.id](*(ev(a) for a in node.args))
        raise GridError(f"unsupported expression {expr!r}")

    try:
        tree = ast.parse(expr.strip(), mode="eval")
    except SyntaxError as exc:
        raise GridError(f"bad expression {expr!r}") from exc
    return int(ev(tree))


def _top_level_parts(spec: str) -> list[str]:
    parts, depth, cur = [], 0, []
    for ch in spec:
        if ch == "," and depth == 0:
            parts.append("".join(cur))
            cur = []
            continue
        depth += (ch == "(") - (ch == ")")
        if depth < 0:
            raise GridError(f"unbalanced parentheses in {spec!r}")
        cur.append(ch)
    if depth:
        raise GridError(f"unbalanced parentheses in {spec!r}")
    parts.append("".join(cur))
    return parts


def parse_grid(spec: str) -> list[tuple[str, str, str]]:
    """Split a grid spec into (name, low, high) expression triples."""
    out = []
    for part in _top_level_parts(spec):
        part = part.strip()
        if not part:
            continue
        if "=" not in part:
            raise GridError(f"expected name=a..b, got {part!r}")
        name, rng = (s.strip() for s in part.split("=", 1))
        if not name.isidentifier():
            raise GridError(f"bad parameter name {name!r}")
        lo, hi = (rng.split("..", 1) if ".." in rng else (rng, rng))
        out.append((name, lo, hi))
    if not out:
        raise GridError("empty grid")
    names = [n for n, _, _ in out]
    if len(set(names)) != len(names):
        raise GridError("repeated parameter in grid")
    return out


def expand_grid(spec: str, fixed: dict | None = None) -> list[dict]:
    """All points of the grid in order; later bounds may use earlier names."""
    axes = parse_grid(spec)
    points = [dict(fixed or {})]
    for name, lo, hi in axes:
        nxt = []
        for env in points:
            a, b = _eval(lo, env), _eval(hi, env)
            for v in range(a, b + 1):
                nxt.append({**env, name: v})
        points = nxt
    return points
