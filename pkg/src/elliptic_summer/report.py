"""Deterministic text and JSON reports."""

import json

from . import __version__
from .curve import CurvePoint, point_key
from .divisor import Divisor

HEADER = f"elliptic-summer v{__version__}"


def fmt(v, field=None):
    """Canonical text for scalars, points, divisors, functions and containers."""
    if isinstance(v, bool):
        return "true" if v else "false"
    if v is None:
        return "none"
    if isinstance(v, CurvePoint):
        return "O" if v.is_infinity else f"[{v.x}, {v.y}]"
    if isinstance(v, (int, str)):
        return str(v)
    if isinstance(v, Divisor):
        return str(v)
    if isinstance(v, dict):
        items = sorted(v.items(), key=lambda it: _key_order(it[0]))
        return "{" + ", ".join(f"{fmt(k)}: {fmt(x)}" for k, x in items) + "}"
    if isinstance(v, (list, tuple)):
        return "(" + ", ".join(fmt(x) for x in v) + ")"
    if field is not None:
        return field.format(v)
    return str(v)


def _key_order(k):
    if isinstance(k, CurvePoint):
        return (0, point_key(k))
    if isinstance(k, tuple):
        return (1, tuple(_key_order(x) for x in k))
    return (2, str(k))


def orbit_label(oid):
    return "Zs" if oid.is_infinity else fmt(oid)


class Report:
    """Ordered sections of (key, text) pairs."""

    def __init__(self, command):
        self.command = command
        self.sections = []

    def section(self, name):
        for n, rows in self.sections:
            if n == name:
                return rows
        rows = []
        self.sections.append((name, rows))
        return rows

    def add(self, name, key, value, field=None):
        self.section(name).append((str(key), value if isinstance(value, str) else fmt(value, field)))

    def get(self, name, key):
        for n, rows in self.sections:
            if n == name:
                for k, v in rows:
                    if k == key:
                        return v
        return None

    def text(self):
        out = [HEADER, f"command = {self.command}"]
        for name, rows in self.sections:
            out.append("")
            out.append(f"[{name}]")
            out.extend(f"{k} = {v}" for k, v in rows)
        return "\n".join(out) + "\n"

    def json(self):
        doc = {"header": HEADER, "command": self.command,
               "sections": {name: dict(rows) for name, rows in self.sections}}
        return json.dumps(doc, indent=2) + "\n"


# ------------------------------------------------------------- builders

def add_input(rep, problem, pinning):
    E = problem.curve
    F = E.field
    rep.add("input", "field", "rational" if F.kind == "rational" else f"fp {F.characteristic}")
    rep.add("input", "curve", "[" + ", ".join(F.format(c) for c in E.coeffs) + "]")
    rep.add("input", "s", fmt(problem.s))
    if problem.target_kind:
        rep.add("input", problem.target_kind, fmt(problem.target))
    rep.add("input", "pinning", pinning.mode)
    rep.add("input", "rep_zs", fmt(pinning.zs.rep))
    rep.add("input", "bound", pinning.bound)


def add_orbits(rep, pinning, points):
    """One line per orbit met by ``points``: representative and shifts."""
    by = {}
    for P in points:
        o, n, _ = pinning.locate(P)
        by.setdefault(o.id, (o, []))[1].append((n, P))
    if not by:
        rep.section("orbits")
    for oid in sorted(by, key=point_key):
        o, mem = by[oid]
        mem.sort(key=lambda nP: nP[0])
        body = f"rep {fmt(o.rep)}; " + ", ".join(f"{fmt(P)} @ {n}" for n, P in mem)
        rep.add("orbits", orbit_label(oid), body)
    rep.add("orbits", "bound_caveat", pinning.bound_caveat)


def add_residues(rep, report, pano1_check=None):
    F = report.pinning.curve.field
    rep.add("divisor", "poles", fmt(Divisor({pd.point: pd.order for pd in report.poles})))
    add_orbits(rep, report.pinning, [pd.point for pd in report.poles])
    rows = rep.section("ores")
    for (oid, k), v in sorted(report.ores.items(), key=lambda it: (point_key(it[0][0]), it[0][1])):
        rows.append((f"ores({orbit_label(oid)}, {k})", fmt(v, F)))
    for (oid, k), v in sorted(report.d.items(), key=lambda it: (point_key(it[0][0]), it[0][1])):
        rep.add("constants", f"d({orbit_label(oid)}, {k})", v, F)
    rep.add("pano", "pano0", report.pano0, F)
    rep.add("pano", "pano1", report.pano1, F)
    if pano1_check is not None:
        rep.add("pano", "pano1_residue_sum", pano1_check, F)
    rep.add("pano", "residue_identity", report.residue_identity(), F)


def add_conditions(rep, verdict, field):
    for cid, (holds, value) in verdict.conditions.items():
        rep.add("conditions", cid, f"{fmt(holds)}; {fmt(value, field)}")
    for i, c in enumerate(verdict.caveats, 1):
        rep.add("caveats", f"note{i}", c)
