"""Parameter grids for the inequality checks.

A grid spec is a comma-separated list of ``name=values``.  Values are an
integer, a range ``a..b``, or alternatives ``x|y|z``; each alternative may be
an arithmetic expression over names bound earlier, e.g. ``c=4|2*(t+2)``.
``n=min`` and ``n=min+10`` pick the least admissible n for the other
parameters.  ``default`` selects the built-in side-condition grid.
"""

from __future__ import annotations

import ast
import math
import operator
from fractions import Fraction
from typing import Callable

from . import bounds

CHECKS: dict[str, Callable[..., bounds.IneqReport]] = {
    "key": bounds.check_key,
    "key2": bounds.check_key2,
    "key3": bounds.check_key3,
    "key4": bounds.check_key4,
    "hilton-sum": bounds.verify_hilton_sum,
    "cor-sum": bounds.verify_cor_sum,
    "f87": bounds.verify_f87,
    "mono:f": lambda **p: bounds.check_monotone_aux("f", **p),
    "mono:g": lambda **p: bounds.check_monotone_aux("g", **p),
    "mono:h": lambda **p: bounds.check_monotone_aux("h", **p),
    "mono:phi": lambda **p: bounds.check_monotone_aux("phi", **p),
}

PARAMS = {
    "key": ("n", "k", "i"),
    "key2": ("n", "k", "t", "c"),
    "key3": ("n", "k", "t", "c"),
    "key4": ("n", "k", "t", "c"),
    "hilton-sum": ("m", "a", "t"),
    "cor-sum": ("m", "a", "t"),
    "f87": ("m", "a"),
    "mono:f": ("n", "k", "t", "l"),
    "mono:g": ("n", "k", "t", "s"),
    "mono:h": ("n", "k", "t", "l"),
    "mono:phi": ("n", "k", "t"),
}

C_VALUES = "2|4|6|8|16|2*(t+2)|4*(t+1)|8*(t+2)"
C_VALUES_ABOVE_2 = "4|6|8|16|2*(t+2)|4*(t+1)|8*(t+2)"

DEFAULT_GRIDS = {
    "key": "k=5..8,i=1..4,n=min|min+10",
    "key2": f"t=2..3,k=5..8,c={C_VALUES},n=min|min+10",
    "key3": f"t=2..3,k=5..8,c={C_VALUES_ABOVE_2},n=min|min+10",
    "key4": f"t=2..3,k=5..8,c={C_VALUES_ABOVE_2},n=min|min+10",
    "hilton-sum": "a=2,t=2..3,m=(t+1)*a..12",
    "cor-sum": "a=2,t=2..3,m=(t+1)*a..12",
    "f87": "a=2,m=2*a..12",
    "mono:f": "t=2..3,k=5..8,l=t..k,n=min|min+10",
    "mono:g": "t=2..3,k=5..8,s=t+2..k,n=min|min+10",
    "mono:h": "t=2..3,k=5..8,l=t+1..k,n=min|min+10",
    "mono:phi": "t=2..3,k=5..8,n=min|min+10",
}


def min_n(check: str, p: dict) -> int:
    """Least n meeting the check's side condition."""
    k = p["k"]
    if check == "key":
        return p["i"] * k + 1
    if check in ("key2", "key3"):
        return math.ceil(Fraction(p["c"]) * (k - p["t"]) ** 2) + p["t"] + 1
    if check == "key4":
        return math.ceil(Fraction(p["c"]) * k)
    if check in ("mono:f", "mono:h"):
        return k * k
    if check == "mono:g":
        return p["t"] * k * k
    if check == "mono:phi":
        return 4 * k * k
    raise ValueError(f"check {check!r} has no n side condition")


_OPS = {ast.Add: operator.add, ast.Sub: operator.sub, ast.Mult: operator.mul, ast.Div: operator.truediv}


def _eval(expr: str, env: dict):
    def ev(node):
        if isinstance(node, ast.Expression):
            return ev(node.body)
        if isinstance(node, ast.Constant) and isinstance(node.value, int):
            return node.value
        if isinstance(node, ast.Name):
            if node.id not in env:
                raise ValueError(f"unknown name {node.id!r} in {expr!r}")
            return env[node.id]
        if isinstance(node, ast.BinOp) and type(node.op) in _OPS:
            a, b = ev(node.left), ev(node.right)
            if isinstance(node.op, ast.Div):
                return Fraction(a) / Fraction(b)
            return _OPS[type(node.op)](a, b)
        if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
            v = ev(node.operand)
            return -v if isinstance(node.op, ast.USub) else v
        raise ValueError(f"unsupported expression {expr!r}")

    try:
        tree = ast.parse(expr.strip(), mode="eval")
    except SyntaxError as exc:
        raise ValueError(f"cannot parse {expr!r}") from exc
    value = ev(tree)
    if isinstance(value, Fraction) and value.denominator == 1:
        value = int(value)
    return value


def _expand(token: str, env: dict, check: str) -> list:
    out = []
    for alt in token.split("|"):
        alt = alt.strip()
        if alt.startswith("min"):
            out.append(min_n(check, env) + (_eval(alt[3:], env) if alt[3:] else 0))
        elif ".." in alt:
            lo, hi = alt.split("..", 1)
            out.extend(range(_eval(lo, env), _eval(hi, env) + 1))
        else:
            out.append(_eval(alt, env))
    return out


def parse_grid(spec: str, check: str) -> list[dict]:
    if check not in CHECKS:
        raise ValueError(f"unknown check {check!r}")
    if spec.strip() == "default":
        spec = DEFAULT_GRIDS[check]
    items = []
    for part in spec.split(","):
        if "=" not in part:
            raise ValueError(f"bad grid item {part!r} (expected name=values)")
        name, token = part.split("=", 1)
        items.append((name.strip(), token))
    points: list[dict] = [{}]
    for name, token in items:
        points = [dict(p, **{name: v}) for p in points for v in _expand(token, p, check)]
    wanted = set(PARAMS[check])
    for p in points:
        missing = wanted - set(p)
        if missing:
            raise ValueError(f"grid for {check} is missing {sorted(missing)}")
        extra = set(p) - wanted
        if extra:
            raise ValueError(f"grid for {check} has unknown parameters {sorted(extra)}")
    return points


def run_check(check: str, params: dict) -> bounds.IneqReport:
    ordered = {k: params[k] for k in PARAMS[check]}
    return CHECKS[check](**ordered)


def run_grid(check: str, spec: str = "default") -> list[bounds.IneqReport]:
    return [run_check(check, p) for p in parse_grid(spec, check)]


def csv_rows(check: str, reports: list[bounds.IneqReport]) -> tuple[list[str], list[dict]]:
    cols = list(PARAMS[check]) + ["lhs", "rhs", "slack", "verdict"]
    rows = []
    for r in reports:
        row = {k: str(r.params[k]) for k in PARAMS[check]}
        row.update(lhs=str(r.lhs), rhs=str(r.rhs), slack=str(r.slack), verdict=str(r.verdict).lower())
        rows.append(row)
    return cols, rows
