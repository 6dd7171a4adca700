"""Brute-force reference implementations used to derive and cross-check values.

Nothing here calls the search, congruence or morphism code of the package;
each oracle works straight from the definitions on raw tables.
"""
from itertools import permutations, product


def is_latin(rows):
    n = len(rows)
    full = set(range(n))
    return all(set(r) == full for r in rows) and all(
        {rows[i][j] for i in range(n)} == full for j in range(n)
    )


def all_arrays_latin(n):
    """Every n x n array over {0..n-1}, filtered to Latin squares (n <= 3)."""
    out = []
    for flat in product(range(n), repeat=n * n):
        rows = tuple(tuple(flat[i * n:(i + 1) * n]) for i in range(n))
        if is_latin(rows):
            out.append(rows)
    return out


def latin_squares(n, reduced=False):
    """Every Latin square of order n as a tuple of rows, in lexicographic order.

    ``reduced`` keeps only squares whose row 0 and column 0 are the identity.
    """
    if n <= 3 and not reduced:
        return all_arrays_latin(n)
    rows = list(permutations(range(n)))
    out = []

    def extend(prefix, used_cols):
        if len(prefix) == n:
            out.append(tuple(prefix))
            return
        i = len(prefix)
        for r in rows:
            if reduced and (r[0] != i or (i == 0 and r != tuple(range(n)))):
                continue
            if all(r[c] not in used_cols[c] for c in range(n)):
                extend(prefix + [r], [used_cols[c] | {r[c]} for c in range(n)])

    extend([], [set() for _ in range(n)])
    return out


def ldiv(rows, a, b):
    return rows[a].index(b)


def rdiv(rows, a, b):
    return [rows[x][b] for x in range(len(rows))].index(a)


def set_partitions(n):
    """All partitions of {0..n-1} as label tuples with labels in first-use order."""
    def rec(i, labels, k):
        if i == n:
            yield tuple(labels)
            return
        for lab in range(k + 1):
            yield from rec(i + 1, labels + [lab], max(k, lab + 1))

    yield from rec(0, [], 0)


def is_congruence_oracle(rows, labels):
    """x~y and u~v imply x*u ~ y*v, x\\u ~ y\\v and x/u ~ y/v."""
    n = len(rows)
    pairs = [(x, y) for x in range(n) for y in range(n) if labels[x] == labels[y]]
    for (x, y), (u, v) in product(pairs, repeat=2):
        if labels[rows[x][u]] != labels[rows[y][v]]:
            return False
        if labels[ldiv(rows, x, u)] != labels[ldiv(rows, y, v)]:
            return False
        if labels[rdiv(rows, x, u)] != labels[rdiv(rows, y, v)]:
            return False
    return True


def is_normal_oracle(rows, labels):
    n = len(rows)
    if not is_congruence_oracle(rows, labels):
        return False
    for x, y, z in product(range(n), repeat=3):
        if labels[rows[z][x]] == labels[rows[z][y]] and labels[x] != labels[y]:
            return False
        if labels[rows[x][z]] == labels[rows[y][z]] and labels[x] != labels[y]:
            return False
    return True


def congruences_oracle(rows):
    return sorted(p for p in set_partitions(len(rows)) if is_congruence_oracle(rows, p))


def autotopisms_oracle(rows):
    n = len(rows)
    perms = list(permutations(range(n)))
    out = []
    for a, b, g in product(perms, repeat=3):
        if all(rows[a[x]][b[y]] == g[rows[x][y]] for x in range(n) for y in range(n)):
            out.append((a, b, g))
    return sorted(out)


def automorphisms_oracle(rows):
    n = len(rows)
    return [
        h for h in permutations(range(n))
        if all(h[rows[x][y]] == rows[h[x]][h[y]] for x in range(n) for y in range(n))
    ]


def center_oracle(rows):
    n = len(rows)
    r = range(n)
    return [
        a for a in r
        if all(rows[a][x] == rows[x][a] for x in r)
        and all(rows[rows[a][x]][y] == rows[a][rows[x][y]] for x in r for y in r)
        and all(rows[rows[x][a]][y] == rows[x][rows[a][y]] for x in r for y in r)
        and all(rows[rows[x][y]][a] == rows[x][rows[y][a]] for x in r for y in r)
    ]


def is_associative_oracle(rows):
    r = range(len(rows))
    return all(rows[rows[x][y]][z] == rows[x][rows[y][z]] for x in r for y in r for z in r)


def loops_with_identity_zero(n):
    """Latin squares with row 0 and column 0 equal to the identity."""
    return latin_squares(n, reduced=True)


def first_nonassociative_loop(n):
    for t in loops_with_identity_zero(n):
        if not is_associative_oracle(t):
            return t
    return None


def _cycle_images(cycle):
    """'123' -> images of 1, 2, 3 under the cycle (1 2 3), 0-based."""
    img = [0, 1, 2]
    if cycle != "e":
        pts = [int(c) - 1 for c in cycle]
        for i, p in enumerate(pts):
            img[p] = pts[(i + 1) % len(pts)]
    return img


def parastrophe_oracle(rows, cycle):
    """B(x_s(1), x_s(2)) = x_s(3) for every triple (x1, x2, x3) of A."""
    n = len(rows)
    s = _cycle_images(cycle)
    out = [[None] * n for _ in range(n)]
    for x1 in range(n):
        for x2 in range(n):
            t = (x1, x2, rows[x1][x2])
            out[t[s[0]]][t[s[1]]] = t[s[2]]
    return tuple(tuple(r) for r in out)


def _invert(p):
    inv = [0] * len(p)
    for i, v in enumerate(p):
        inv[v] = i
    return tuple(inv)


def translation_oracle(rows, kind, a):
    n = len(rows)
    base = {
        "L": lambda: tuple(rows[a][x] for x in range(n)),
        "R": lambda: tuple(rows[x][a] for x in range(n)),
        "P": lambda: tuple(rows[x].index(a) for x in range(n)),
    }[kind[0]]()
    return _invert(base) if kind.endswith("-1") else base


def local_map_oracle(rows, kind):
    """f(x) = x/x, e(x) = x\\x, s(x) = x*x from the raw table."""
    n = len(rows)
    if kind == "s":
        return tuple(rows[x][x] for x in range(n))
    if kind == "e":
        return tuple(rows[x].index(x) for x in range(n))
    return tuple(next(z for z in range(n) if rows[z][x] == x) for x in range(n))
