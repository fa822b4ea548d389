"""Line-oriented problem files.

Example::

    field rational
    curve = [0, 0, 1, -1, 0]
    s = [0, 0]
    D = 2*[0,0] + 2*[1,0]     # comment

Recognised keys: ``field``, ``curve``, ``s``, one target among ``f``, ``D``,
``a``, and optional ``bound``, ``torsion_bound``, ``pinning``, ``rep_zs``.
"""

import re
from dataclasses import dataclass, field
from typing import Any

from .algebra import PrimeFnField, Rationals
from .algebra.expr import evaluate, evaluate_scalar
from .curve import O, CurveSpec
from .divisor import Divisor
from .errors import ParseError, PointNotOnCurve, SingularCurve, SummerError
from .function_field import FnElt

DEFAULT_TORSION_BOUND = 12

_KEYS = ("curve", "s", "f", "D", "a", "bound", "torsion_bound", "pinning", "rep_zs")


@dataclass
class Problem:
    field: Any
    curve: Any
    s: Any
    target_kind: str = None        # "f", "D" or "a"
    target: Any = None
    target_text: str = None
    bound: int = None
    torsion_bound: int = None
    pinning: str = None
    rep_zs: str = None
    source: list = field(default_factory=list)   # (key, text) pairs in file order


def _split_top(text):
    """Split on commas that are not nested in brackets or parentheses."""
    out, depth, cur = [], 0, ""
    for ch in text:
        if ch in "([":
            depth += 1
        elif ch in ")]":
            depth -= 1
        if ch == "," and depth == 0:
            out.append(cur)
            cur = ""
        else:
            cur += ch
    out.append(cur)
    return [p.strip() for p in out]


def _bracket_list(text, line):
    text = text.strip()
    if not (text.startswith("[") and text.endswith("]")):
        raise ParseError("expected a bracketed list", line, 1)
    body = text[1:-1].strip()
    return _split_top(body) if body else []


def parse_point(text, E, line=None):
    text = text.strip()
    if text in ("[O]", "O"):
        return O
    parts = _bracket_list(text, line)
    if len(parts) != 2:
        raise ParseError(f"a point needs two coordinates, got {text!r}", line)
    x, y = (evaluate_scalar(p, E.field, line) for p in parts)
    try:
        return E.point(x, y)
    except PointNotOnCurve:
        raise ParseError(f"{text} is not on the curve", line) from None


_TERM = re.compile(r"\s*([+-])?\s*(?:(\d+)\s*\*\s*)?(\[[^\]]*\])\s*")


def parse_divisor(text, E, line=None):
    """Parse ``2*[0,0] + [1,0] - 3*[O]``."""
    text = text.strip()
    if text == "0":
        return Divisor()
    pos, m, first = 0, {}, True
    while pos < len(text):
        mt = _TERM.match(text, pos)
        if mt is None or mt.end() == pos or (mt.group(1) is None and not first):
            raise ParseError(f"malformed divisor near {text[pos:]!r}", line, pos + 1)
        sign = -1 if mt.group(1) == "-" else 1
        k = int(mt.group(2)) if mt.group(2) else 1
        P = parse_point(mt.group(3), E, line)
        m[P] = m.get(P, 0) + sign * k
        pos, first = mt.end(), False
    return Divisor(m)


def parse_function(text, E, line=None):
    F = E.field
    symbols = {"x": FnElt.x(E), "y": FnElt.y(E)}
    if F.kind == "fp":
        symbols["t"] = FnElt.const(E, F.t)
    return evaluate(text, symbols, lambda n: FnElt.const(E, F(n)), line)


def _parse_field(rest, line):
    words = rest.split()
    if words == ["rational"]:
        return Rationals()
    if len(words) == 2 and words[0] == "fp" and words[1].isdigit():
        try:
            return PrimeFnField(int(words[1]))
        except ValueError as exc:
            raise ParseError(str(exc), line) from None
    raise ParseError(f"unknown field declaration {rest!r}", line, 1)


def parse_problem(text):
    lines = text.splitlines()
    F = None
    vals = {}
    for no, raw in enumerate(lines, 1):
        body = raw.split("#", 1)[0].strip()
        if not body:
            continue
        if body.startswith("field"):
            if F is not None:
                raise ParseError("field declared twice", no, 1)
            F = _parse_field(body[5:], no)
            continue
        if "=" not in body:
            raise ParseError(f"expected 'key = value', got {body!r}", no, 1)
        key, val = (p.strip() for p in body.split("=", 1))
        if key not in _KEYS:
            raise ParseError(f"unknown key {key!r}", no, 1)
        if key in vals:
            raise ParseError(f"{key} given twice", no, 1)
        vals[key] = (val, no)
    if F is None:
        raise ParseError("missing field declaration")
    for need in ("curve", "s"):
        if need not in vals:
            raise ParseError(f"missing {need}")
    ctext, cno = vals["curve"]
    coeffs = [evaluate_scalar(c, F, cno) for c in _bracket_list(ctext, cno)]
    if len(coeffs) == 2:
        coeffs = [F.zero, F.zero, F.zero] + coeffs
    if len(coeffs) != 5:
        raise ParseError("curve needs [a1,a2,a3,a4,a6] or [a4,a6]", cno)
    try:
        E = CurveSpec(F, *coeffs)
    except SingularCurve as exc:
        raise ParseError(str(exc), cno) from None
    stext, sno = vals["s"]
    s = parse_point(stext, E, sno)
    if s.is_infinity:
        raise ParseError("s must be an affine point", sno)
    prob = Problem(F, E, s, source=[(k, vals[k][0]) for k in sorted(vals, key=lambda k: vals[k][1])])
    targets = [k for k in ("f", "D", "a") if k in vals]
    if len(targets) > 1:
        raise ParseError("give only one of f, D, a", vals[targets[1]][1])
    if targets:
        k = targets[0]
        txt, no = vals[k]
        prob.target_kind, prob.target_text = k, txt
        try:
            prob.target = parse_divisor(txt, E, no) if k == "D" else parse_function(txt, E, no)
        except ParseError:
            raise
        except SummerError as exc:
            raise ParseError(str(exc), no) from None
        if k == "a" and prob.target.is_zero():
            raise ParseError("a must be nonzero", no)
    for k in ("bound", "torsion_bound"):
        if k in vals:
            txt, no = vals[k]
            if not txt.isdigit() or int(txt) < 1:
                raise ParseError(f"{k} must be a positive integer", no)
            setattr(prob, k, int(txt))
    if "pinning" in vals:
        txt, no = vals["pinning"]
        if txt not in ("tau", "super"):
            raise ParseError("pinning must be tau or super", no)
        prob.pinning = txt
    if "rep_zs" in vals:
        txt, no = vals["rep_zs"]
        if txt not in ("O", "auto"):
            raise ParseError("rep_zs must be O or auto", no)
        prob.rep_zs = txt
    return prob


def load_problem(path):
    with open(path, encoding="utf-8") as fh:
        return parse_problem(fh.read())
