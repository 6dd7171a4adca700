"""Permutations and maps on {0..n-1}, stored as tuples of images."""
import re

from .errors import ParseError


def identity(n):
    return tuple(range(n))


def compose(p, q):
    """The map x -> p(q(x)); q acts first."""
    return tuple(p[x] for x in q)


def inverse(p):
    inv = [0] * len(p)
    for x, y in enumerate(p):
        inv[y] = x
    return tuple(inv)


def is_permutation(p, n=None):
    n = len(p) if n is None else n
    return len(p) == n and sorted(p) == list(range(n))


def power(p, k):
    result = identity(len(p))
    for _ in range(k):
        result = compose(p, result)
    return result


def from_cycles(text, n):
    """Parse cycle notation such as "(1 2)(4 5)" into image form.

    An empty string or "()" gives the identity.
    """
    images = list(range(n))
    text = text.strip()
    if text in ("", "()", "e", "id"):
        return tuple(images)
    if not re.fullmatch(r"(\(\s*\d+(\s*[ ,]\s*\d+)*\s*\)\s*)+", text):
        raise ParseError(f"bad cycle notation: {text!r}")
    seen = set()
    for body in re.findall(r"\(([^)]*)\)", text):
        points = [int(tok) for tok in re.split(r"[ ,]+", body.strip())]
        for x in points:
            if x >= n or x in seen:
                raise ParseError(f"bad cycle notation: {text!r}")
            seen.add(x)
        for a, b in zip(points, points[1:] + points[:1]):
            images[a] = b
    return tuple(images)


def parse(text, n):
    """Accept either cycle notation or one-line images ("1 0 2" or "1,0,2")."""
    text = text.strip()
    if text.startswith("(") or text in ("", "e", "id"):
        return from_cycles(text, n)
    try:
        images = tuple(int(tok) for tok in re.split(r"[ ,]+", text))
    except ValueError:
        raise ParseError(f"bad permutation: {text!r}") from None
    if not is_permutation(images, n):
        raise ParseError(f"not a permutation of {n} points: {text!r}")
    return images


def to_cycles(p):
    seen = set()
    parts = []
    for start in range(len(p)):
        if start in seen or p[start] == start:
            continue
        cycle = [start]
        seen.add(start)
        x = p[start]
        while x != start:
            cycle.append(x)
            seen.add(x)
            x = p[x]
        parts.append("(" + " ".join(map(str, cycle)) + ")")
    return "".join(parts) or "()"
