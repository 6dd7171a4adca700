"""Identities as term equations, compiled for full tables and for partial ones.

Terms use the binary operations ``*``, ``\\`` and ``/`` (left associative,
equal precedence), the local maps ``e()``, ``f()``, ``s()`` and
single-letter variables.  Example: ``x*(y*z) = (x*y)*(e(x)*z)``.
"""
import re
from itertools import product

_TOKEN = re.compile(r"\s*(?:([a-z])\s*\(|([a-z])|([*\\/()]))")


def parse_term(text):
    pos = 0
    tokens = []
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ValueError(f"cannot parse term at {text[pos:]!r}")
        if m.group(1):
            tokens.append(("fn", m.group(1)))
        elif m.group(2):
            tokens.append(("var", m.group(2)))
        else:
            tokens.append(("sym", m.group(3)))
        pos = m.end()
        while pos < len(text) and text[pos].isspace():
            pos += 1

    def at(i):
        return tokens[i] if i < len(tokens) else ("end", None)

    def atom(i):
        kind, val = at(i)
        if kind == "end":
            raise ValueError(f"unexpected end of {text!r}")
        if kind == "var":
            return ("v", val), i + 1
        if kind == "fn":
            if val not in "efs":
                raise ValueError(f"unknown map {val}()")
            inner, i = expr(i + 1)
            if at(i) != ("sym", ")"):
                raise ValueError("missing ')'")
            return (val, inner), i + 1
        if at(i) == ("sym", "("):
            inner, i = expr(i + 1)
            if at(i) != ("sym", ")"):
                raise ValueError("missing ')'")
            return inner, i + 1
        raise ValueError(f"unexpected token {val!r}")

    def expr(i):
        left, i = atom(i)
        while i < len(tokens) and tokens[i][0] == "sym" and tokens[i][1] in "*\\/":
            op = tokens[i][1]
            right, i = atom(i + 1)
            left = (op, left, right)
        return left, i

    term, end = expr(0)
    if end != len(tokens):
        raise ValueError(f"trailing input in {text!r}")
    return term


def variables(term, acc=None):
    acc = [] if acc is None else acc
    if term[0] == "v":
        if term[1] not in acc:
            acc.append(term[1])
    else:
        for sub in term[1:]:
            variables(sub, acc)
    return acc


def format_term(term):
    kind = term[0]
    if kind == "v":
        return term[1]
    if kind in "efs":
        return f"{kind}({format_term(term[1])})"
    a, b = format_term(term[1]), format_term(term[2])
    if term[2][0] not in "vefs":
        b = f"({b})"
    return f"{a}{kind}{b}"


_MIRROR_OP = {"*": "*", "\\": "/", "/": "\\", "e": "f", "f": "e", "s": "s"}


def mirror_term(term):
    """The same term read in the transposed table: a*b becomes b*a, a\\b becomes b/a."""
    kind = term[0]
    if kind == "v":
        return term
    if kind in "efs":
        return (_MIRROR_OP[kind], mirror_term(term[1]))
    return (_MIRROR_OP[kind], mirror_term(term[2]), mirror_term(term[1]))


class Identity:
    """A parsed equation lhs = rhs with its variables in first-use order."""

    def __init__(self, text):
        left, right = text.split("=")
        self.text = text
        self.lhs = parse_term(left)
        self.rhs = parse_term(right)
        self.vars = variables(self.rhs, variables(self.lhs))

    def __repr__(self):
        return f"Identity({self.text!r})"

    def mirrored(self):
        """An identity holding in the transpose exactly when this one holds here."""
        return Identity(f"{format_term(mirror_term(self.lhs))} = {format_term(mirror_term(self.rhs))}")

    def instances(self, n):
        return product(range(n), repeat=len(self.vars))


def _compile_full(term, index, q):
    m, ld, rd = q.mul, q.ldiv, q.rdiv
    kind = term[0]
    if kind == "v":
        i = index[term[1]]
        return lambda env: env[i]
    if kind in "efs":
        g = _compile_full(term[1], index, q)
        if kind == "e":
            return lambda env: (lambda a: ld[a][a])(g(env))
        if kind == "f":
            return lambda env: (lambda a: rd[a][a])(g(env))
        return lambda env: (lambda a: m[a][a])(g(env))
    a = _compile_full(term[1], index, q)
    b = _compile_full(term[2], index, q)
    table = {"*": m, "\\": ld, "/": rd}[kind]
    return lambda env: table[a(env)][b(env)]


def holds(identity, q):
    """Exhaustive check of an identity on a complete table."""
    index = {v: i for i, v in enumerate(identity.vars)}
    lhs = _compile_full(identity.lhs, index, q)
    rhs = _compile_full(identity.rhs, index, q)
    return all(lhs(env) == rhs(env) for env in identity.instances(q.n))


def first_violation(identity, q):
    index = {v: i for i, v in enumerate(identity.vars)}
    lhs = _compile_full(identity.lhs, index, q)
    rhs = _compile_full(identity.rhs, index, q)
    for env in identity.instances(q.n):
        if lhs(env) != rhs(env):
            return dict(zip(identity.vars, env))
    return None


class Blocked(Exception):
    """Evaluation needs a cell that is not assigned yet."""

    def __init__(self, cell):
        self.cell = cell


def compile_partial(term, index, state):
    """Compile a term against a partially filled search state.

    ``state`` provides ``n``, ``table`` (flat, -1 for empty), ``rowpos``
    and ``colpos`` (value positions, -1 when absent).  Reading an empty cell
    raises Blocked with the cell that has to be filled first.
    """
    n = state.n
    table = state.table
    rowpos = state.rowpos
    colpos = state.colpos

    def mul(a, b):
        v = table[a * n + b]
        if v < 0:
            raise Blocked(a * n + b)
        return v

    def ldiv(a, b):
        y = rowpos[a * n + b]
        if y < 0:
            base = a * n
            for c in range(n):
                if table[base + c] < 0:
                    raise Blocked(base + c)
        return y

    def rdiv(b, a):
        x = colpos[a * n + b]
        if x < 0:
            for r in range(n):
                if table[r * n + a] < 0:
                    raise Blocked(r * n + a)
        return x

    def build(t):
        kind = t[0]
        if kind == "v":
            i = index[t[1]]
            return lambda env: env[i]
        if kind in "efs":
            g = build(t[1])
            if kind == "e":
                return lambda env: (lambda a: ldiv(a, a))(g(env))
            if kind == "f":
                return lambda env: (lambda a: rdiv(a, a))(g(env))
            return lambda env: (lambda a: mul(a, a))(g(env))
        a, b = build(t[1]), build(t[2])
        fn = {"*": mul, "\\": ldiv, "/": rdiv}[kind]
        return lambda env: fn(a(env), b(env))

    return build(term)
