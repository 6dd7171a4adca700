"""Cayley-table kernel: loading, divisions, translations, parastrophes, local maps."""
from . import perm
from .errors import NotLatinSquare, ParseError

# A selector sigma is stored as the images (sigma(1), sigma(2), sigma(3)),
# shifted to 0-based positions.  The sigma-parastrophe B of A is defined on
# triples by  A(x1, x2) = x3  <=>  B(x_sigma1, x_sigma2) = x_sigma3.
PARASTROPHIES = {
    "e": (0, 1, 2),
    "12": (1, 0, 2),
    "13": (2, 1, 0),
    "23": (0, 2, 1),
    "123": (1, 2, 0),
    "132": (2, 0, 1),
}
_SELECTOR_NAME = {v: k for k, v in PARASTROPHIES.items()}

TRANSLATION_KINDS = ("L", "R", "P", "L-1", "R-1", "P-1")
LOCAL_MAP_KINDS = ("e", "f", "s")


def selector(name):
    """Normalize a selector name ("e", "(12)", "123", ...) to its canonical key."""
    key = str(name).strip().strip("()").replace(" ", "")
    if key in ("", "1", "id", "eps", "epsilon", "ε"):
        key = "e"
    if key not in PARASTROPHIES:
        raise ValueError(f"unknown parastrophy {name!r}")
    return key


def selector_compose(s, t):
    """The selector s*t with (Q^s)^t = Q^(s*t); as maps, s*t = s o t."""
    a, b = PARASTROPHIES[selector(s)], PARASTROPHIES[selector(t)]
    return _SELECTOR_NAME[tuple(a[b[i]] for i in range(3))]


def selector_inverse(s):
    return _SELECTOR_NAME[perm.inverse(PARASTROPHIES[selector(s)])]


class Quasigroup:
    """A finite quasigroup on {0..n-1} with materialized division tables.

    ``mul[x][y]`` is x*y, ``ldiv[x][y]`` is x\\y (the z with x*z = y) and
    ``rdiv[x][y]`` is x/y (the z with z*y = x).
    """

    __slots__ = ("n", "mul", "ldiv", "rdiv", "_hash")

    def __init__(self, table):
        rows = tuple(tuple(int(v) for v in row) for row in table)
        n = len(rows)
        if n == 0:
            raise ParseError("order 0 is not allowed")
        for i, row in enumerate(rows):
            if len(row) != n:
                raise ParseError(f"row {i} has {len(row)} entries, expected {n}")
            for v in row:
                if not 0 <= v < n:
                    raise ParseError(f"entry {v} in row {i} is out of range [0, {n})")
        ldiv = [[-1] * n for _ in range(n)]
        rdiv = [[-1] * n for _ in range(n)]
        for x in range(n):
            for y in range(n):
                v = rows[x][y]
                if ldiv[x][v] != -1:
                    raise NotLatinSquare(f"row {x} repeats entry {v}")
                ldiv[x][v] = y
        for y in range(n):
            for x in range(n):
                v = rows[x][y]
                if rdiv[v][y] != -1:
                    raise NotLatinSquare(f"column {y} repeats entry {v}")
                rdiv[v][y] = x
        self.n = n
        self.mul = rows
        self.ldiv = tuple(map(tuple, ldiv))
        self.rdiv = tuple(map(tuple, rdiv))
        self._hash = hash(rows)

    def __eq__(self, other):
        return isinstance(other, Quasigroup) and self.mul == other.mul

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"Quasigroup(n={self.n}, rows={[list(r) for r in self.mul]})"

    def __len__(self):
        return self.n

    @property
    def elements(self):
        return range(self.n)

    def op(self, x, y):
        return self.mul[x][y]

    def to_text(self, comment=None):
        lines = [f"# {line}" for line in (comment.splitlines() if comment else [])]
        lines.append(str(self.n))
        lines.extend(" ".join(map(str, row)) for row in self.mul)
        return "\n".join(lines) + "\n"

    @classmethod
    def from_function(cls, n, fn):
        return cls([[fn(x, y) for y in range(n)] for x in range(n)])


def load_quasigroup(text):
    """Parse the table file format and certify the result."""
    lines = []
    for raw in text.splitlines():
        line = raw.rstrip()
        if line.startswith("#"):
            continue
        lines.append(line)
    while lines and lines[-1] == "":
        lines.pop()
    if not lines:
        raise ParseError("missing order line")
    header = lines[0].strip()
    if not header.isdigit() or lines[0] != lines[0].lstrip():
        raise ParseError(f"bad order line: {lines[0]!r}")
    n = int(header)
    if n == 0:
        raise ParseError("order 0 is not allowed")
    body = lines[1:]
    if len(body) != n:
        raise ParseError(f"expected {n} table rows, found {len(body)}")
    table = []
    for i, line in enumerate(body):
        tokens = line.split(" ")
        if not all(tok.isdigit() for tok in tokens):
            raise ParseError(f"row {i}: malformed line {line!r}")
        if len(tokens) != n:
            raise ParseError(f"row {i} has {len(tokens)} entries, expected {n}")
        table.append([int(tok) for tok in tokens])
    return Quasigroup(table)


def load_file(path):
    with open(path, encoding="utf-8") as fh:
        return load_quasigroup(fh.read())


def translation(q, kind, a):
    """L_a x = a*x, R_a x = x*a, P_a x = the y with x*y = a, or an inverse."""
    n = q.n
    if kind == "L":
        return q.mul[a]
    if kind == "R":
        return tuple(q.mul[x][a] for x in range(n))
    if kind == "P":
        return tuple(q.ldiv[x][a] for x in range(n))
    if kind == "L-1":
        return q.ldiv[a]
    if kind == "R-1":
        return tuple(q.rdiv[x][a] for x in range(n))
    if kind == "P-1":
        return tuple(q.rdiv[a][x] for x in range(n))
    raise ValueError(f"unknown translation kind {kind!r}")


def parastrophe(q, sigma):
    """Build the sigma-parastrophe by re-indexing every triple (x1, x2, x3)."""
    s = PARASTROPHIES[selector(sigma)]
    n = q.n
    table = [[0] * n for _ in range(n)]
    for x1 in range(n):
        row = q.mul[x1]
        for x2 in range(n):
            t = (x1, x2, row[x2])
            table[t[s[0]]][t[s[1]]] = t[s[2]]
    return Quasigroup(table)


def local_map(q, kind):
    """f(x) = x/x, e(x) = x\\x, s(x) = x*x."""
    n = q.n
    if kind == "f":
        return tuple(q.rdiv[x][x] for x in range(n))
    if kind == "e":
        return tuple(q.ldiv[x][x] for x in range(n))
    if kind == "s":
        return tuple(q.mul[x][x] for x in range(n))
    raise ValueError(f"unknown local map {kind!r}")


def image(h, subset=None):
    """Sorted image of a map, optionally restricted to a subset."""
    points = range(len(h)) if subset is None else subset
    return sorted({h[x] for x in points})


def identity_element(q):
    """The two-sided identity element, or None."""
    for c in range(q.n):
        if q.mul[c] == tuple(range(q.n)) and all(q.mul[x][c] == x for x in range(q.n)):
            return c
    return None


def is_associative(q):
    m = q.mul
    r = range(q.n)
    return all(m[m[x][y]][z] == m[x][m[y][z]] for x in r for y in r for z in r)


def is_commutative(q):
    m = q.mul
    return all(m[x][y] == m[y][x] for x in range(q.n) for y in range(x))


def idempotents(q):
    return [x for x in range(q.n) if q.mul[x][x] == x]


def subtable(q, elements):
    """The subquasigroup on a sorted list of elements, relabelled 0..k-1."""
    index = {x: i for i, x in enumerate(elements)}
    try:
        return Quasigroup([[index[q.mul[x][y]] for y in elements] for x in elements])
    except KeyError:
        raise ValueError("subset is not closed under multiplication") from None


def is_closed(q, elements):
    """Closed under *, \\ and /."""
    s = set(elements)
    return all(
        q.mul[x][y] in s and q.ldiv[x][y] in s and q.rdiv[x][y] in s
        for x in s for y in s
    )


SELECTOR_ORDER = ("e", "12", "13", "23", "123", "132")

# Row: a translation kind computed in the parastrophe named by the column.
# Entry: the kind in Q it coincides with, for every a.
TRANSLATION_TABLE = {
    "R": ("R", "L", "R-1", "P", "P-1", "L-1"),
    "L": ("L", "R", "P-1", "L-1", "R-1", "P"),
    "P": ("P", "P-1", "L-1", "R", "L", "R-1"),
    "R-1": ("R-1", "L-1", "R", "P-1", "P", "L"),
    "L-1": ("L-1", "R-1", "P", "L", "R", "P-1"),
    "P-1": ("P-1", "P", "L", "R-1", "L-1", "R"),
}

# Same layout for the local maps.  The two 3-cycle columns of this table
# hold for the inverse selector under the convention fixed by the
# translation table, so cells are checked through local_table_selector.
LOCAL_MAP_TABLE = {
    "f": ("f", "e", "s", "f", "s", "e"),
    "e": ("e", "f", "e", "s", "f", "s"),
    "s": ("s", "s", "f", "e", "e", "f"),
}


def local_table_selector(column):
    """The parastrophe in which a local-map table column is evaluated."""
    column = selector(column)
    return selector_inverse(column) if column in ("123", "132") else column


def translation_cell_holds(q, kind, column):
    """Check one cell of the translation table on q, for every a."""
    other = TRANSLATION_TABLE[kind][SELECTOR_ORDER.index(selector(column))]
    p = parastrophe(q, column)
    return all(tuple(translation(p, kind, a)) == tuple(translation(q, other, a)) for a in range(q.n))


def local_map_cell_holds(q, kind, column, literal=False):
    """Check one cell of the local-map table on q.

    ``literal=True`` evaluates in the column's own parastrophe, which fails
    for the 3-cycle columns on general quasigroups.
    """
    other = LOCAL_MAP_TABLE[kind][SELECTOR_ORDER.index(selector(column))]
    where = selector(column) if literal else local_table_selector(column)
    return local_map(parastrophe(q, where), kind) == local_map(q, other)
