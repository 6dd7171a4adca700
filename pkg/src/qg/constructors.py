"""Group builders, Toyoda and linear forms, and the named example fixtures."""
from dataclasses import dataclass, field
from importlib import resources
from itertools import permutations
import random

from . import perm
from .core import Quasigroup, identity_element, is_associative, is_commutative, load_quasigroup
from .errors import NotAbelian, NotAGroup, NotAutomorphism, NotCommutingPair, UnknownFixture
from .identities import is_automorphism

DIHEDRAL8 = (
    (0, 1, 2, 3, 4, 5, 6, 7),
    (1, 0, 3, 2, 6, 7, 4, 5),
    (2, 6, 7, 1, 0, 3, 5, 4),
    (3, 4, 5, 0, 1, 2, 7, 6),
    (4, 3, 0, 5, 7, 6, 1, 2),
    (5, 7, 6, 4, 3, 0, 2, 1),
    (6, 2, 1, 7, 5, 4, 0, 3),
    (7, 5, 4, 6, 2, 1, 3, 0),
)


@dataclass(frozen=True)
class Cyclic:
    n: int


@dataclass(frozen=True)
class Dihedral8:
    pass


@dataclass(frozen=True)
class Product:
    left: object
    right: object


def parse_group_spec(text):
    """"Z4", "cyclic(4)", "D8", "S3" or products joined by "x"."""
    parts = [p.strip() for p in text.split("x")]
    specs = []
    for p in parts:
        low = p.lower()
        if low in ("d8", "dihedral8"):
            specs.append(Dihedral8())
        elif low == "s3":
            specs.append("S3")
        elif low.startswith("z") and low[1:].isdigit():
            specs.append(Cyclic(int(low[1:])))
        elif low.startswith("cyclic(") and low.endswith(")"):
            specs.append(Cyclic(int(low[7:-1])))
        else:
            raise ValueError(f"unknown group {p!r}")
    spec = specs[0]
    for s in specs[1:]:
        spec = Product(spec, s)
    return spec


def make_group(spec):
    if isinstance(spec, str):
        if spec == "S3":
            return symmetric3()
        spec = parse_group_spec(spec)
    if isinstance(spec, Cyclic):
        if spec.n < 1:
            raise ValueError("cyclic group needs n >= 1")
        return cyclic_group(spec.n)
    if isinstance(spec, Dihedral8):
        return Quasigroup(DIHEDRAL8)
    if isinstance(spec, Product):
        return direct_product(make_group(spec.left), make_group(spec.right))
    raise ValueError(f"unknown group spec {spec!r}")


def cyclic_group(n):
    return Quasigroup.from_function(n, lambda x, y: (x + y) % n)


def symmetric3():
    """S3 on the permutations of {0,1,2} in lexicographic order; p*q = p o q."""
    elems = list(permutations(range(3)))
    index = {p: i for i, p in enumerate(elems)}
    return Quasigroup([[index[perm.compose(p, q)] for q in elems] for p in elems])


def direct_product(a, b):
    """Componentwise product; the pair (x, y) is encoded as x*|B| + y."""
    nb = b.n
    n = a.n * nb
    return Quasigroup([
        [a.mul[i // nb][j // nb] * nb + b.mul[i % nb][j % nb] for j in range(n)]
        for i in range(n)
    ])


def _require_group(g):
    zero = identity_element(g)
    if zero is None or not is_associative(g):
        raise NotAGroup("table is not a group")
    return zero


def _inverse_map(g, zero):
    return tuple(g.ldiv[x][zero] for x in range(g.n))


def toyoda_medial(group, phi, psi, c=0):
    """x*y = phi x + psi y + c over an abelian group with commuting automorphisms."""
    _require_group(group)
    if not is_commutative(group):
        raise NotAbelian("Toyoda forms need an abelian group")
    for name, a in (("phi", phi), ("psi", psi)):
        if not is_automorphism(group, a):
            raise NotAutomorphism(f"{name} is not an automorphism of the group")
    if perm.compose(phi, psi) != perm.compose(psi, phi):
        raise NotCommutingPair("phi and psi do not commute")
    m = group.mul
    return Quasigroup.from_function(group.n, lambda x, y: m[m[phi[x]][psi[y]]][c])


def linear_quasigroup(group, side, aut_part, other_part, c=0):
    """left: x*y = aut(x) + other(y) + c; right: x*y = other(x) + aut(y) + c."""
    _require_group(group)
    if not is_automorphism(group, aut_part):
        raise NotAutomorphism("the linear part is not an automorphism of the group")
    if not perm.is_permutation(other_part, group.n):
        raise ValueError("the other part must be a permutation")
    m = group.mul
    if side == "left":
        return Quasigroup.from_function(group.n, lambda x, y: m[m[aut_part[x]][other_part[y]]][c])
    if side == "right":
        return Quasigroup.from_function(group.n, lambda x, y: m[m[other_part[x]][aut_part[y]]][c])
    raise ValueError("side must be 'left' or 'right'")


def affine(n, a, b, c=0):
    """x*y = a x + b y + c over Z_n."""
    return Quasigroup.from_function(n, lambda x, y: (a * x + b * y + c) % n)


def d8_left_f(a=0):
    """x*y = alpha x + a + y over D8 with alpha = (1 2)(4 5)."""
    g = Quasigroup(DIHEDRAL8)
    alpha = perm.from_cycles("(1 2)(4 5)", 8)
    return Quasigroup.from_function(8, lambda x, y: g.mul[g.mul[alpha[x]][a]][y])


def random_quasigroup(n, rng=None):
    """A Latin square filled cell by cell with randomly ordered candidates.

    Not uniform over Latin squares, but seeded and reproducible.
    """
    rng = rng if rng is not None else random.Random(0)
    table = [[-1] * n for _ in range(n)]
    rows = [set() for _ in range(n)]
    cols = [set() for _ in range(n)]

    def fill(k):
        if k == n * n:
            return True
        r, c = divmod(k, n)
        cand = [v for v in range(n) if v not in rows[r] and v not in cols[c]]
        rng.shuffle(cand)
        for v in cand:
            table[r][c] = v
            rows[r].add(v)
            cols[c].add(v)
            if fill(k + 1):
                return True
            rows[r].discard(v)
            cols[c].discard(v)
        table[r][c] = -1
        return False

    fill(0)
    return Quasigroup(table)


@dataclass(frozen=True)
class Fixture:
    name: str
    quasigroup: Quasigroup
    description: str
    images: dict = field(default_factory=dict)   # local map kind -> sorted image
    flags: dict = field(default_factory=dict)    # ClassReport key -> expected value
    permutations: tuple = ()                     # local map kinds expected bijective
    simple: object = None                        # True/False or None when unstated
    extra: dict = field(default_factory=dict)


_FLAGS_FESM = {k: True for k in ("medial", "left_f", "right_f", "left_sm", "right_sm", "left_e", "right_e")}

_BUILDERS = {
    "z3-minus": lambda: Fixture(
        "z3-minus", affine(3, 1, -1), "x*y = x - y over Z3",
        images={"e": [0], "s": [0], "f": [0, 1, 2]},
        flags=dict(_FLAGS_FESM, unipotent=True),
    ),
    "z6-minus": lambda: Fixture(
        "z6-minus", affine(6, 1, -1), "x*y = x - y over Z6",
        images={"e": [0], "s": [0], "f": [0, 2, 4]},
        flags=dict(_FLAGS_FESM),
    ),
    "z4-x-plus-3y": lambda: Fixture(
        "z4-x-plus-3y", affine(4, 1, 3), "x*y = x + 3y over Z4",
        images={"e": [0], "s": [0], "f": [0, 2]},
        flags=dict(_FLAGS_FESM),
    ),
    "z7-minus": lambda: Fixture(
        "z7-minus", affine(7, 1, -1), "x*y = x - y over Z7",
        images={"e": [0], "s": [0], "f": list(range(7))},
        flags=dict(_FLAGS_FESM), permutations=("f",), simple=True,
        extra={"f": tuple(2 * x % 7 for x in range(7))},
    ),
    "z7-2x-3y": lambda: Fixture(
        "z7-2x-3y", affine(7, 2, 3), "x*y = 2x + 3y over Z7",
        images={k: list(range(7)) for k in "efs"},
        flags=dict(_FLAGS_FESM), permutations=("e", "f", "s"), simple=True,
    ),
    "z9-x-plus-4y": lambda: Fixture(
        "z9-x-plus-4y", affine(9, 1, 4), "x*y = x + 4y over Z9",
        flags={"medial": True, "left_f": True},
    ),
    "d8-group": lambda: Fixture(
        "d8-group", Quasigroup(DIHEDRAL8), "the dihedral group of order 8",
        flags={"loop": True},
        extra={"group": True, "center_size": 2, "endomorphism": (0, 3, 3, 0, 3, 3, 0, 0)},
    ),
    "d8-leftF": lambda: Fixture(
        "d8-leftF", d8_left_f(0), "x*y = alpha x + y over D8, alpha = (1 2)(4 5)",
        flags={"left_f": True},
        extra={"left_linear": False, "right_linear": True},
    ),
    "s3-group": lambda: Fixture(
        "s3-group", symmetric3(), "the symmetric group on three points",
        flags={"loop": True, "commutative": False},
        extra={"group": True, "endomorphism_image_size": 2},
    ),
}

FIXTURE_NAMES = tuple(_BUILDERS)


def fixture(name):
    try:
        return _BUILDERS[name]()
    except KeyError:
        raise UnknownFixture(f"unknown fixture {name!r}") from None


def fixture_text(name):
    """Contents of the shipped table file for a fixture."""
    if name not in _BUILDERS:
        raise UnknownFixture(f"unknown fixture {name!r}")
    return resources.files("qg").joinpath("fixtures", f"{name}.tbl").read_text()


def load_fixture_file(name):
    return load_quasigroup(fixture_text(name))
