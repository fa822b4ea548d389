"""Parsing of arithmetic expressions in x, y and t.

Expressions use ``+ - * / ^`` with integer exponents, integer literals and
parentheses.  They are parsed with the standard ``ast`` module and then
evaluated over a caller-supplied symbol table, so the same grammar serves
scalars (symbol ``t``) and function-field elements (``x``, ``y``).
"""

import ast

from ..errors import ParseError

_BINOPS = {
    ast.Add: lambda a, b: a + b,
    ast.Sub: lambda a, b: a - b,
    ast.Mult: lambda a, b: a * b,
    ast.Div: lambda a, b: a / b,
}


def evaluate(text, symbols, const, line=None):
    """Evaluate ``text``; ``const`` maps a Python int to the target ring."""
    src = text.strip().replace("^", "**")
    try:
        tree = ast.parse(src, mode="eval")
    except SyntaxError as exc:
        raise ParseError(f"invalid expression {text.strip()!r}", line, exc.offset) from None

    def ev(node):
        if isinstance(node, ast.Expression):
            return ev(node.body)
        if isinstance(node, ast.Constant) and isinstance(node.value, int) and not isinstance(node.value, bool):
            return const(node.value)
        if isinstance(node, ast.Name):
            if node.id not in symbols:
                raise ParseError(f"unknown symbol {node.id!r}", line, node.col_offset + 1)
            return symbols[node.id]
        if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
            v = ev(node.operand)
            return -v if isinstance(node.op, ast.USub) else v
        if isinstance(node, ast.BinOp):
            if isinstance(node.op, ast.Pow):
                e = node.right
                sign = 1
                if isinstance(e, ast.UnaryOp) and isinstance(e.op, ast.USub):
                    sign, e = -1, e.operand
                if not (isinstance(e, ast.Constant) and isinstance(e.value, int)):
                    raise ParseError("exponents must be integer literals", line, node.col_offset + 1)
                base = ev(node.left)
                n = e.value
                out = const(1)
                for _ in range(n):
                    out = out * base
                return const(1) / out if sign < 0 else out
            op = _BINOPS.get(type(node.op))
            if op is None:
                raise ParseError("unsupported operator", line, node.col_offset + 1)
            try:
                return op(ev(node.left), ev(node.right))
            except ZeroDivisionError:
                raise ParseError("division by zero", line, node.col_offset + 1) from None
        raise ParseError(f"unsupported syntax in {text.strip()!r}", line,
                         getattr(node, "col_offset", 0) + 1)

    return ev(tree)


def evaluate_scalar(text, field, line=None):
    symbols = {}
    if field.kind == "fp":
        symbols["t"] = field.t
    return evaluate(text, symbols, field, line)
