"""Isotopies, isostrophies, LP-isotopes, autotopism and automorphism search, endomorphism chains."""
from dataclasses import dataclass
from typing import NamedTuple

from . import perm
from .core import PARASTROPHIES, Quasigroup, local_map, parastrophe, selector, selector_compose, selector_inverse, translation
from .errors import NotAnEndomorphism, OrderBoundExceeded

DEFAULT_SEARCH_BOUND = 10


class Isotopy(NamedTuple):
    alpha: tuple
    beta: tuple
    gamma: tuple

    @classmethod
    def identity(cls, n):
        e = perm.identity(n)
        return cls(e, e, e)

    def inverse(self):
        return Isotopy(*(perm.inverse(c) for c in self))

    def then(self, other):
        """Componentwise product S T, so that Q(S T) = (Q S) T."""
        return Isotopy(*(perm.compose(s, t) for s, t in zip(self, other)))

    def permuted(self, sigma):
        """T^sigma, with component i taken from position sigma(i)."""
        s = PARASTROPHIES[selector(sigma)]
        return Isotopy(self[s[0]], self[s[1]], self[s[2]])


def apply_isotopy(q, t):
    """The quasigroup (x1, x2) -> gamma^-1 (alpha x1 * beta x2)."""
    a, b, g = t
    g_inv = perm.inverse(g)
    m = q.mul
    return Quasigroup([[g_inv[m[a[x]][b[y]]] for y in range(q.n)] for x in range(q.n)])


def lp_isotope(q, a, b):
    """x o y = R_a^-1 x * L_b^-1 y; a loop with identity b*a."""
    t = Isotopy(translation(q, "R-1", a), translation(q, "L-1", b), perm.identity(q.n))
    return apply_isotopy(q, t)


@dataclass(frozen=True)
class Isostrophy:
    sigma: str
    isotopy: Isotopy

    @classmethod
    def identity(cls, n):
        return cls("e", Isotopy.identity(n))


def isostrophy_apply(q, s):
    """Parastrophe by sigma, then isotopy."""
    return apply_isotopy(parastrophe(q, s.sigma), s.isotopy)


def isostrophy_compose(s1, s2):
    """(sigma, S)(tau, T) = (sigma tau, S^tau T)."""
    return Isostrophy(
        selector_compose(s1.sigma, s2.sigma),
        s1.isotopy.permuted(s2.sigma).then(s2.isotopy),
    )


def isostrophy_invert(s):
    """(sigma, S)^-1 = (sigma^-1, (S^-1)^(sigma^-1))."""
    inv = selector_inverse(s.sigma)
    return Isostrophy(inv, s.isotopy.inverse().permuted(inv))


def _check_bound(q, bound):
    if q.n > bound:
        raise OrderBoundExceeded(f"order {q.n} exceeds the search bound {bound}")


def _propagate(q, maps, invs, queue):
    """Close partial (alpha, beta, gamma) under alpha x * beta y = gamma(x*y).

    Returns False on a contradiction (a clash or a non-injective map).
    """
    n, m, ld, rd = q.n, q.mul, q.ldiv, q.rdiv
    alpha, beta, gamma = maps

    def setv(k, x, v):
        cur = maps[k][x]
        if cur >= 0:
            return cur == v
        if invs[k][v] >= 0:
            return False
        maps[k][x] = v
        invs[k][v] = x
        queue.append((k, x))
        return True

    while queue:
        k, x = queue.pop()
        if k == 0:
            ax = alpha[x]
            for y in range(n):
                by, gz = beta[y], gamma[m[x][y]]
                if by >= 0:
                    if not setv(2, m[x][y], m[ax][by]):
                        return False
                elif gz >= 0:
                    if not setv(1, y, ld[ax][gz]):
                        return False
        elif k == 1:
            by = beta[x]
            for w in range(n):
                aw, gz = alpha[w], gamma[m[w][x]]
                if aw >= 0:
                    if not setv(2, m[w][x], m[aw][by]):
                        return False
                elif gz >= 0:
                    if not setv(0, w, rd[gz][by]):
                        return False
        else:
            gz = gamma[x]
            for w in range(n):
                y = ld[w][x]
                aw, by = alpha[w], beta[y]
                if aw >= 0:
                    if not setv(1, y, ld[aw][gz]):
                        return False
                elif by >= 0:
                    if not setv(0, w, rd[gz][by]):
                        return False
    return True


def _autotopy_search(q, maps, invs, out):
    alpha = maps[0]
    try:
        x = alpha.index(-1)
    except ValueError:
        out.append(Isotopy(tuple(maps[0]), tuple(maps[1]), tuple(maps[2])))
        return
    for v in range(q.n):
        if invs[0][v] >= 0:
            continue
        m2 = [list(c) for c in maps]
        i2 = [list(c) for c in invs]
        m2[0][x] = v
        i2[0][v] = x
        if _propagate(q, m2, i2, [(0, x)]):
            _autotopy_search(q, m2, i2, out)


def autotopisms(q, bound=DEFAULT_SEARCH_BOUND):
    """All autotopisms (alpha, beta, gamma) with alpha x * beta y = gamma(x*y),
    sorted lexicographically by (alpha, beta)."""
    _check_bound(q, bound)
    n = q.n
    out = []
    # beta(0) = b is the only branch outside alpha; every other value is forced.
    for b in range(n):
        maps = [[-1] * n for _ in range(3)]
        invs = [[-1] * n for _ in range(3)]
        maps[1][0] = b
        invs[1][b] = 0
        if _propagate(q, maps, invs, [(1, 0)]):
            _autotopy_search(q, maps, invs, out)
    out.sort()
    return out


def automorphisms(q, bound=DEFAULT_SEARCH_BOUND):
    """All automorphisms in lexicographic order."""
    _check_bound(q, bound)
    n, m = q.n, q.mul
    out = []

    def close(h, hinv, queue):
        while queue:
            x = queue.pop()
            for y in range(n):
                if h[y] < 0:
                    continue
                for a, b in ((x, y), (y, x)):
                    z, v = m[a][b], m[h[a]][h[b]]
                    if h[z] >= 0:
                        if h[z] != v:
                            return False
                    elif hinv[v] >= 0:
                        return False
                    else:
                        h[z] = v
                        hinv[v] = z
                        queue.append(z)
        return True

    def search(h, hinv):
        try:
            x = h.index(-1)
        except ValueError:
            out.append(tuple(h))
            return
        for v in range(n):
            if hinv[v] >= 0:
                continue
            h2, i2 = list(h), list(hinv)
            h2[x] = v
            i2[v] = x
            if close(h2, i2, [x]):
                search(h2, i2)

    search([-1] * n, [-1] * n)
    out.sort()
    return out


def is_autotopism(q, t):
    m = q.mul
    a, b, g = t
    return all(m[a[x]][b[y]] == g[m[x][y]] for x in range(q.n) for y in range(q.n))


def is_endomorphism(q, h):
    m = q.mul
    r = range(q.n)
    return all(h[m[x][y]] == m[h[x]][h[y]] for x in r for y in r)


@dataclass(frozen=True)
class EndomorphismChain:
    kind: str
    images: tuple
    stabilization_index: int

    @property
    def stable_image(self):
        return self.images[self.stabilization_index]


def endomorphism_chain(q, kind):
    """Images Q, h(Q), h^2(Q), ... of a local map until two consecutive agree."""
    h = local_map(q, kind)
    if not is_endomorphism(q, h):
        raise NotAnEndomorphism(f"local map {kind} is not an endomorphism")
    images = [tuple(range(q.n))]
    while True:
        nxt = tuple(sorted({h[x] for x in images[-1]}))
        if nxt == images[-1]:
            break
        images.append(nxt)
    return EndomorphismChain(kind, tuple(images), len(images) - 1)
