"""Class predicates for quasigroups and loops, Sushkevich postulates, group-isotope forms."""
from dataclasses import dataclass, fields
from typing import Optional

from . import perm
from .core import (
    Quasigroup,
    identity_element,
    is_associative,
    is_commutative,
    translation,
)
from .errors import NotALoop, NotGroupIsotope
from .terms import Identity, holds

# Defining equalities of each quasigroup class.  A flag holds iff every
# listed identity holds.
CLASS_IDENTITIES = {
    "quasigroup": [],
    "loop": ["f(x) = f(y)", "e(x) = e(y)"],
    "left_loop": ["f(x) = f(y)"],
    "right_loop": ["e(x) = e(y)"],
    "idempotent": ["x*x = x"],
    "unipotent": ["x*x = y*y"],
    "medial": ["(x*y)*(u*v) = (x*u)*(y*v)"],
    "left_distributive": ["x*(u*v) = (x*u)*(x*v)"],
    "right_distributive": ["(x*u)*v = (x*v)*(u*v)"],
    "distributive": ["x*(u*v) = (x*u)*(x*v)", "(x*u)*v = (x*v)*(u*v)"],
    "left_semisymmetric": ["x*(x*y) = y"],
    "ts": ["x*(x*y) = y", "x*y = y*x"],
    "left_f": ["x*(y*z) = (x*y)*(e(x)*z)"],
    "right_f": ["(x*y)*z = (x*f(z))*(y*z)"],
    "left_sm": ["(x*x)*(y*z) = (x*y)*(x*z)"],
    "right_sm": ["(z*y)*(x*x) = (z*x)*(y*x)"],
    "left_e": ["x*(y*z) = (f(x)*y)*(x*z)"],
    "right_e": ["(z*y)*x = (z*x)*(y*e(x))"],
    # lambda(x) = e(x)/x and rho(y) = y\f(y) are forced by y = e(x), x = f(y)
    "lip": ["(e(x)/x)*(x*y) = y"],
    "rip": ["(x*y)*(y\\f(y)) = x"],
    "ip": ["(e(x)/x)*(x*y) = y", "(x*y)*(y\\f(y)) = x"],
    "commutative": ["x*y = y*x"],
}

# Display names used in structured output.
FLAG_NAMES = {
    "quasigroup": "quasigroup", "loop": "loop", "left_loop": "leftLoop",
    "right_loop": "rightLoop", "idempotent": "idempotent", "unipotent": "unipotent",
    "medial": "medial", "left_distributive": "leftDistributive",
    "right_distributive": "rightDistributive", "distributive": "distributive",
    "left_semisymmetric": "leftSemiSymmetric", "ts": "TS", "left_f": "leftF",
    "right_f": "rightF", "left_sm": "leftSM", "right_sm": "rightSM", "left_e": "leftE",
    "right_e": "rightE", "lip": "LIP", "rip": "RIP", "ip": "IP", "commutative": "commutative",
}

_PARSED = {flag: [Identity(t) for t in texts] for flag, texts in CLASS_IDENTITIES.items()}


def flag_key(name):
    """Map any spelling of a flag ("leftF", "left_f", "left-F") to its key."""
    squashed = name.replace("_", "").replace("-", "").lower()
    for key in CLASS_IDENTITIES:
        if key.replace("_", "") == squashed:
            return key
    raise ValueError(f"unknown class flag {name!r}")


def identities_for(flag):
    return _PARSED[flag_key(flag)]


def has_flag(q, flag):
    return all(holds(ident, q) for ident in identities_for(flag))


@dataclass(frozen=True)
class ClassReport:
    quasigroup: bool
    loop: bool
    left_loop: bool
    right_loop: bool
    idempotent: bool
    unipotent: bool
    medial: bool
    left_distributive: bool
    right_distributive: bool
    distributive: bool
    left_semisymmetric: bool
    ts: bool
    left_f: bool
    right_f: bool
    left_sm: bool
    right_sm: bool
    left_e: bool
    right_e: bool
    lip: bool
    rip: bool
    ip: bool
    commutative: bool

    def as_dict(self):
        return {FLAG_NAMES[f.name]: getattr(self, f.name) for f in fields(self)}


def classify(q):
    cache = {}

    def check(text):
        if text not in cache:
            cache[text] = holds(Identity(text), q)
        return cache[text]

    values = {flag: all(check(t) for t in texts) for flag, texts in CLASS_IDENTITIES.items()}
    return ClassReport(**values)


@dataclass(frozen=True)
class LoopReport:
    identity: int
    group: bool
    abelian_group: bool
    left_bol: bool
    moufang: bool
    cml: bool
    left_special: bool
    right_special: bool
    left_m: bool
    right_m: bool
    left_s: bool
    left_nucleus: tuple
    middle_nucleus: tuple
    right_nucleus: tuple
    nucleus: tuple
    center: tuple

    def as_dict(self):
        return {
            "identity": self.identity, "group": self.group,
            "abelianGroup": self.abelian_group, "leftBol": self.left_bol,
            "moufang": self.moufang, "CML": self.cml, "leftSpecial": self.left_special,
            "rightSpecial": self.right_special, "leftM": self.left_m,
            "rightM": self.right_m, "leftS": self.left_s,
            "N_l": list(self.left_nucleus), "N_m": list(self.middle_nucleus),
            "N_r": list(self.right_nucleus), "N": list(self.nucleus), "C": list(self.center),
        }


def require_loop(q):
    one = identity_element(q)
    if one is None:
        raise NotALoop("no two-sided identity element")
    return one


def is_automorphism(q, h):
    m = q.mul
    r = range(q.n)
    return perm.is_permutation(h, q.n) and all(
        h[m[x][y]] == m[h[x]][h[y]] for x in r for y in r
    )


def _left_special(q):
    n, m = q.n, q.mul
    for a in range(n):
        la_inv = translation(q, "L-1", a)
        for b in range(n):
            s = perm.compose(translation(q, "L-1", b), perm.compose(la_inv, m[m[a][b]]))
            if not is_automorphism(q, s):
                return False
    return True


def _right_special(q):
    n, m = q.n, q.mul
    for a in range(n):
        ra_inv = translation(q, "R-1", a)
        for b in range(n):
            t = perm.compose(
                translation(q, "R-1", b),
                perm.compose(ra_inv, translation(q, "R", m[b][a])),
            )
            if not is_automorphism(q, t):
                return False
    return True


def left_m_witness(q):
    """Solve for phi in x(yz) = (x(y I phi x))(phi x z) pointwise, or None."""
    one = require_loop(q)
    n, m = q.n, q.mul
    inv = tuple(q.ldiv[x][one] for x in range(n))  # x * Ix = 1
    phi = []
    for x in range(n):
        for c in range(n):
            ic = inv[c]
            if all(
                m[x][m[y][z]] == m[m[x][m[y][ic]]][m[c][z]]
                for y in range(n) for z in range(n)
            ):
                phi.append(c)
                break
        else:
            return None
    return tuple(phi)


def right_m_witness(q):
    """Solve for psi in (yz)x = (y psi x)((I^-1 psi x z) x) pointwise, or None."""
    one = require_loop(q)
    n, m = q.n, q.mul
    inv = tuple(q.ldiv[x][one] for x in range(n))
    inv_inv = perm.inverse(inv)
    psi = []
    for x in range(n):
        for c in range(n):
            ic = inv_inv[c]
            if all(
                m[m[y][z]][x] == m[m[y][c]][m[m[ic][z]][x]]
                for y in range(n) for z in range(n)
            ):
                psi.append(c)
                break
        else:
            return None
    return tuple(psi)


def nuclei(q):
    n, m = q.n, q.mul
    r = range(n)
    left = tuple(a for a in r if all(m[a][m[x][y]] == m[m[a][x]][y] for x in r for y in r))
    middle = tuple(a for a in r if all(m[m[x][a]][y] == m[x][m[a][y]] for x in r for y in r))
    right = tuple(a for a in r if all(m[m[x][y]][a] == m[x][m[y][a]] for x in r for y in r))
    nucleus = tuple(sorted(set(left) & set(middle) & set(right)))
    center = tuple(a for a in nucleus if all(m[a][x] == m[x][a] for x in r))
    return left, middle, right, nucleus, center


def loop_classify(q):
    one = require_loop(q)
    n, m = q.n, q.mul
    r = range(n)
    group = is_associative(q)
    left_bol = all(m[x][m[y][m[x][z]]] == m[m[x][m[y][x]]][z] for x in r for y in r for z in r)
    moufang = all(m[x][m[m[y][z]][x]] == m[m[x][y]][m[z][x]] for x in r for y in r for z in r)
    commutative = is_commutative(q)
    cml = commutative and all(
        m[m[x][x]][m[y][z]] == m[m[x][y]][m[x][z]] for x in r for y in r for z in r
    )
    left, middle, right, nucleus, center = nuclei(q)
    return LoopReport(
        identity=one,
        group=group,
        abelian_group=group and commutative,
        left_bol=left_bol,
        moufang=moufang,
        cml=cml,
        left_special=_left_special(q),
        right_special=_right_special(q),
        left_m=left_m_witness(q) is not None,
        right_m=right_m_witness(q) is not None,
        left_s=is_left_s_loop(q).holds,
        left_nucleus=left,
        middle_nucleus=middle,
        right_nucleus=right,
        nucleus=nucleus,
        center=center,
    )


@dataclass(frozen=True)
class SLoopWitness:
    holds: bool
    psi: Optional[tuple] = None
    phi: Optional[tuple] = None


def is_left_s_loop(q, bound=None):
    """Search for a complete automorphism psi with complement phi satisfying
    phi(x o phi^-1 y) o (psi x o z) = x o (y o z)."""
    from .morphisms import automorphisms  # local import: morphisms imports this module

    require_loop(q)
    n, m, rd = q.n, q.mul, q.rdiv
    kwargs = {} if bound is None else {"bound": bound}
    for psi in automorphisms(q, **kwargs):
        phi = tuple(rd[x][psi[x]] for x in range(n))
        if not perm.is_permutation(phi):
            continue
        phi_inv = perm.inverse(phi)
        if all(
            m[phi[m[x][phi_inv[y]]]][m[psi[x]][z]] == m[x][m[y][z]]
            for x in range(n) for y in range(n) for z in range(n)
        ):
            return SLoopWitness(True, psi, phi)
    return SLoopWitness(False)


def is_right_s_loop(q, bound=None):
    """Mirror of the left S-loop property, decided on the (12)-parastrophe."""
    from .core import parastrophe

    return is_left_s_loop(parastrophe(q, "12"), bound)


@dataclass(frozen=True)
class PostulateWitness:
    holds: bool
    variant: str
    operation: Optional[Quasigroup] = None
    delta: Optional[tuple] = None


def sushkevich_postulate(q, variant):
    """Decide postulate A (xy.z = x.(y o z)), A* (x.yz = (x o y).z),
    B (xy.z = x.(y delta z)) or B* (x.yz = (delta x . y).z)."""
    n, m, ld, rd = q.n, q.mul, q.ldiv, q.rdiv
    r = range(n)
    if variant == "A":
        op = [[ld[0][m[m[0][y]][z]] for z in r] for y in r]
        ok = all(m[m[x][y]][z] == m[x][op[y][z]] for x in r for y in r for z in r)
        return PostulateWitness(ok, variant, Quasigroup(op) if ok else None)
    if variant == "A*":
        op = [[rd[m[x][m[y][0]]][0] for y in r] for x in r]
        ok = all(m[x][m[y][z]] == m[op[x][y]][z] for x in r for y in r for z in r)
        return PostulateWitness(ok, variant, Quasigroup(op) if ok else None)
    if variant == "B":
        delta = tuple(ld[0][ld[0][m[m[0][0]][z]]] for z in r)
        ok = all(m[m[x][y]][z] == m[x][m[y][delta[z]]] for x in r for y in r for z in r)
        return PostulateWitness(ok, variant, delta=delta if ok else None)
    if variant == "B*":
        delta = tuple(rd[rd[m[x][m[0][0]]][0]][0] for x in r)
        ok = all(m[x][m[y][z]] == m[m[delta[x]][y]][z] for x in r for y in r for z in r)
        return PostulateWitness(ok, variant, delta=delta if ok else None)
    raise ValueError(f"unknown postulate {variant!r}")


@dataclass(frozen=True)
class GroupIsotopeForm:
    group: Quasigroup
    alpha: tuple
    beta: tuple
    left_linear: bool
    right_linear: bool
    point: tuple
    note: str = "alpha(0) = 0 and the group identity is 0"


def group_isotope_form(q):
    """Write q as x*y = alpha x + beta y over a group with identity 0.

    Group isotopy is decided on the principal LP-isotope at (0, 0).  The
    returned form comes from the LP-isotope at (a, b) = (0\\0, 0/(0\\0)),
    whose identity is b*a = 0 and whose alpha = R_a fixes 0.  Left linear
    means alpha is an automorphism; right linear means y -> beta y - beta 0
    is one, since linear forms carry a constant term.
    """
    from .morphisms import lp_isotope

    if not is_associative(lp_isotope(q, 0, 0)):
        raise NotGroupIsotope("the principal loop isotope at (0, 0) is not associative")
    a = q.ldiv[0][0]
    b = q.rdiv[0][a]
    group = lp_isotope(q, a, b)
    alpha = translation(q, "R", a)
    beta = translation(q, "L", b)
    # with alpha(0) = 0 fixed, a constant term can only sit inside beta:
    # x*y = alpha x + psi y + c with c = beta(0)
    g = group.mul
    minus_c = group.ldiv[beta[0]][0]
    psi = tuple(g[beta[y]][minus_c] for y in range(q.n))
    return GroupIsotopeForm(
        group=group,
        alpha=alpha,
        beta=beta,
        left_linear=is_automorphism(group, alpha),
        right_linear=is_automorphism(group, psi),
        point=(a, b),
    )
