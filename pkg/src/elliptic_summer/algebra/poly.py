"""Small helpers that work uniformly on fmpq_poly and DensePoly."""


def is_zero(p):
    return p.degree() < 0


def lead(p):
    return p[p.degree()]


def monic(p):
    if is_zero(p):
        return p
    c = lead(p)
    return p if c == 1 else p * (1 / c)


def gcd(a, b):
    return monic(a.gcd(b))


def lcm(a, b):
    return monic((a * b) // a.gcd(b))


def key(p):
    """Hashable canonical key of a polynomial."""
    return tuple(p.coeffs())


def horner(p, value, one):
    """Evaluate p at an arbitrary ring element (series, function, ...)."""
    cs = p.coeffs()
    if not cs:
        return one * 0
    acc = one * cs[-1]
    for c in reversed(cs[:-1]):
        acc = acc * value + c
    return acc


def fmt(p, field, var="x"):
    """Render a polynomial as a compact expression string."""
    cs = p.coeffs()
    if not cs:
        return "0"
    terms = []
    for i in range(len(cs) - 1, -1, -1):
        c = cs[i]
        if c == 0:
            continue
        s = field.format(c)
        compound = any(ch in s for ch in "+*/") or ("-" in s[1:])
        mono = "" if i == 0 else (var if i == 1 else f"{var}^{i}")
        if not mono:
            terms.append(f"({s})" if compound and field.kind == "fp" else s)
        elif c == 1:
            terms.append(mono)
        elif c == -1 and not compound:
            terms.append("-" + mono)
        else:
            terms.append(f"({s})*{mono}" if compound else f"{s}*{mono}")
    out = terms[0]
    for t in terms[1:]:
        out += t if t.startswith("-") else "+" + t
    return out
