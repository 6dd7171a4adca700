"""Congruences as canonical partitions: tests, generation, kernels, quotients, simplicity."""
from dataclasses import dataclass
from itertools import combinations

from .core import Quasigroup
from .errors import InternalCheckFailed, NotAnEndomorphism, OrderBoundExceeded
from .morphisms import is_endomorphism

DEFAULT_CONGRUENCE_BOUND = 12


class Partition:
    """A partition of {0..n-1}; block ids are ordered by least element."""

    __slots__ = ("labels",)

    def __init__(self, labels):
        relabel = {}
        self.labels = tuple(relabel.setdefault(x, len(relabel)) for x in labels)

    @classmethod
    def from_blocks(cls, blocks, n=None):
        n = sum(len(b) for b in blocks) if n is None else n
        labels = [-1] * n
        for i, block in enumerate(blocks):
            for x in block:
                labels[x] = i
        if -1 in labels:
            raise ValueError("blocks do not cover the carrier")
        return cls(labels)

    @classmethod
    def diagonal(cls, n):
        return cls(range(n))

    @classmethod
    def universal(cls, n):
        return cls([0] * n)

    @property
    def n(self):
        return len(self.labels)

    @property
    def blocks(self):
        out = [[] for _ in range(max(self.labels) + 1)]
        for x, b in enumerate(self.labels):
            out[b].append(x)
        return [tuple(b) for b in out]

    def block_of(self, x):
        return self.labels[x]

    def related(self, x, y):
        return self.labels[x] == self.labels[y]

    def pairs(self):
        lab = self.labels
        return frozenset((x, y) for x in range(self.n) for y in range(self.n) if lab[x] == lab[y])

    def is_diagonal(self):
        return len(set(self.labels)) == self.n

    def is_universal(self):
        return len(set(self.labels)) == 1

    def __eq__(self, other):
        return isinstance(other, Partition) and self.labels == other.labels

    def __lt__(self, other):
        return self.labels < other.labels

    def __hash__(self):
        return hash(self.labels)

    def __repr__(self):
        return "Partition(" + " ".join("{" + ",".join(map(str, b)) + "}" for b in self.blocks) + ")"


@dataclass(frozen=True)
class Congruence:
    partition: Partition
    normal: bool = True

    @property
    def blocks(self):
        return self.partition.blocks

    def __lt__(self, other):
        return self.partition < other.partition


def _as_partition(p):
    return p.partition if isinstance(p, Congruence) else p


def _compatible(q, lab):
    n = q.n
    for x in range(n):
        for y in range(x + 1, n):
            if lab[x] != lab[y]:
                continue
            for z in range(n):
                for table in (q.mul, q.ldiv, q.rdiv):
                    if lab[table[z][x]] != lab[table[z][y]] or lab[table[x][z]] != lab[table[y][z]]:
                        return False
    return True


def _cancellative(q, lab):
    n, m = q.n, q.mul
    for x in range(n):
        for y in range(x + 1, n):
            if lab[x] == lab[y]:
                continue
            for z in range(n):
                if lab[m[z][x]] == lab[m[z][y]] or lab[m[x][z]] == lab[m[y][z]]:
                    return False
    return True


def is_congruence(q, p, mode="plain"):
    """Compatibility with *, \\ and /; normal mode adds the cancellation laws."""
    lab = _as_partition(p).labels
    plain = _compatible(q, lab)
    if mode == "plain":
        return plain
    if mode != "normal":
        raise ValueError(f"unknown mode {mode!r}")
    normal = plain and _cancellative(q, lab)
    if normal != plain:
        raise InternalCheckFailed("a congruence of a finite quasigroup failed to be normal")
    return normal


class _UnionFind:
    def __init__(self, n):
        self.parent = list(range(n))

    def find(self, x):
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        if ra > rb:
            ra, rb = rb, ra
        self.parent[rb] = ra
        return True


def _close(q, pairs):
    """Least congruence containing the given pairs."""
    n = q.n
    uf = _UnionFind(n)
    queue = [(a, b) for a, b in pairs if uf.union(a, b)]
    tables = (q.mul, q.ldiv, q.rdiv)
    while queue:
        x, y = queue.pop()
        for z in range(n):
            for t in tables:
                for a, b in ((t[z][x], t[z][y]), (t[x][z], t[y][z])):
                    if uf.union(a, b):
                        queue.append((a, b))
    return Partition([uf.find(x) for x in range(n)])


def principal_congruence(q, a, b):
    return Congruence(_close(q, [(a, b)]))


def join(q, p1, p2):
    """Join in the congruence lattice: merge the two partitions, then close."""
    pairs = [(blk[0], x) for p in (p1, p2) for blk in _as_partition(p).blocks for x in blk[1:]]
    return Congruence(_close(q, pairs))


def all_congruences(q, bound=DEFAULT_CONGRUENCE_BOUND):
    """Every congruence, as joins of principal ones, sorted by canonical partition."""
    if q.n > bound:
        raise OrderBoundExceeded(f"order {q.n} exceeds the congruence bound {bound}")
    found = {Partition.diagonal(q.n)}
    for a, b in combinations(range(q.n), 2):
        found.add(_close(q, [(a, b)]))
    frontier = list(found)
    while frontier:
        new = []
        current = list(found)
        for p1 in frontier:
            for p2 in current:
                j = join(q, p1, p2).partition
                if j not in found:
                    found.add(j)
                    new.append(j)
        frontier = new
    return [Congruence(p) for p in sorted(found)]


def kernel_congruence(q, h):
    if not is_endomorphism(q, h):
        raise NotAnEndomorphism("map is not multiplicative")
    p = Partition(h)
    if not is_congruence(q, p):
        raise InternalCheckFailed("kernel of an endomorphism is not a congruence")
    return Congruence(p)


@dataclass(frozen=True)
class QuotientResult:
    quotient: Quasigroup
    representatives: tuple


def quotient(q, theta):
    p = _as_partition(theta)
    reps = tuple(b[0] for b in p.blocks)
    lab = p.labels
    table = [[lab[q.mul[a][b]] for b in reps] for a in reps]
    for x in range(q.n):
        for y in range(q.n):
            if table[lab[x]][lab[y]] != lab[q.mul[x][y]]:
                raise InternalCheckFailed("partition is not compatible with multiplication")
    return QuotientResult(Quasigroup(table), reps)


def is_simple(q, bound=DEFAULT_CONGRUENCE_BOUND):
    return len(all_congruences(q, bound)) <= 2


def is_admissible(theta, alpha):
    lab = _as_partition(theta).labels
    inv = [0] * len(alpha)
    for x, y in enumerate(alpha):
        inv[y] = x
    for blk in _as_partition(theta).blocks:
        if len({lab[alpha[x]] for x in blk}) != 1 or len({lab[inv[x]] for x in blk}) != 1:
            return False
    return True


def as_relation(r):
    if isinstance(r, (Partition, Congruence)):
        return _as_partition(r).pairs()
    return frozenset(r)


def compose_relations(r1, r2):
    """{(a, c) : a r1 b and b r2 c for some b}."""
    first = as_relation(r1)
    second = {}
    for b, c in as_relation(r2):
        second.setdefault(b, set()).add(c)
    return frozenset((a, c) for a, b in first for c in second.get(b, ()))
