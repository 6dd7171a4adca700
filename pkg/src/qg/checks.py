"""Worked-example checks run by ``qg paper-verify``.

Each check is a named zero-argument function returning True or False.  The
suite is deterministic and self-contained.
"""
from importlib import resources

from . import perm
from .congruences import (
    Partition,
    all_congruences,
    compose_relations,
    is_admissible,
    is_congruence,
    is_simple,
    kernel_congruence,
    principal_congruence,
    quotient,
)
from .constructors import (
    DIHEDRAL8,
    FIXTURE_NAMES,
    affine,
    cyclic_group,
    direct_product,
    fixture,
    fixture_text,
    linear_quasigroup,
    make_group,
    toyoda_medial,
)
from .core import (
    LOCAL_MAP_TABLE,
    SELECTOR_ORDER,
    TRANSLATION_TABLE,
    Quasigroup,
    identity_element,
    image,
    is_associative,
    load_quasigroup,
    local_map,
    local_map_cell_holds,
    parastrophe,
    translation,
    translation_cell_holds,
)
from .decomposition import decompose, simple_classify
from .identities import (
    classify,
    group_isotope_form,
    has_flag,
    left_m_witness,
    sushkevich_postulate,
)
from .morphisms import (
    Isostrophy,
    Isotopy,
    apply_isotopy,
    automorphisms,
    endomorphism_chain,
    is_endomorphism,
    isostrophy_apply,
    isostrophy_compose,
    isostrophy_invert,
    lp_isotope,
)

CHECKS = []


def check(name):
    def register(fn):
        CHECKS.append((name, fn))
        return fn
    return register


def _q(name):
    return fixture(name).quasigroup


def _mul(n, k):
    return tuple(k * x % n for x in range(n))


# ---------------------------------------------------------------- tables and local maps

@check("D8 table is a group with identity 0 and row 2 = (2,6,7,1,0,3,5,4)")
def _d8_table():
    g = Quasigroup(DIHEDRAL8)
    return is_associative(g) and identity_element(g) == 0 and g.mul[2] == (2, 6, 7, 1, 0, 3, 5, 4)


@check("translation table: R in the (23)-parastrophe equals P, on every fixture")
def _r23():
    return all(translation_cell_holds(_q(n), "R", "23") for n in FIXTURE_NAMES)


@check("translation table: all 36 cells on every fixture")
def _table1():
    return all(
        translation_cell_holds(_q(n), k, c)
        for n in FIXTURE_NAMES for k in TRANSLATION_TABLE for c in SELECTOR_ORDER
    )


@check("local map table: s in the (123) column equals e, on every fixture")
def _s123():
    return all(local_map_cell_holds(_q(n), "s", "123") for n in FIXTURE_NAMES)


@check("local map table: all 18 cells on every fixture")
def _table2():
    return all(
        local_map_cell_holds(_q(n), k, c)
        for n in FIXTURE_NAMES for k in LOCAL_MAP_TABLE for c in SELECTOR_ORDER
    )


@check("(12)-parastrophe of the left F (Z9, x+4y) is right F")
def _z9_12():
    return has_flag(parastrophe(_q("z9-x-plus-4y"), "12"), "right_f")


@check("(23)-parastrophe of the Z3 group is left SM")
def _z3_23():
    return has_flag(parastrophe(cyclic_group(3), "23"), "left_sm")


@check("(Z4, x+3y): e and s are constant 0, f(x) = 2x with image {0,2}")
def _z4_maps():
    q = _q("z4-x-plus-3y")
    return (
        local_map(q, "e") == (0,) * 4 and local_map(q, "s") == (0,) * 4
        and local_map(q, "f") == (0, 2, 0, 2) and image(local_map(q, "f")) == [0, 2]
    )


@check("fixture e/f/s images match their stated values")
def _images():
    return all(
        image(local_map(fx.quasigroup, k)) == sorted(v)
        for fx in map(fixture, FIXTURE_NAMES) for k, v in fx.images.items()
    )


@check("(Z7, 2x+3y): e, f and s are permutations")
def _z7_perms():
    q = _q("z7-2x-3y")
    return all(perm.is_permutation(local_map(q, k)) for k in "efs")


@check("(Z7, x-y): e and s are constant, f is a permutation, simple medial")
def _z7_minus():
    q = _q("z7-minus")
    return (
        len(set(local_map(q, "e"))) == 1 and len(set(local_map(q, "s"))) == 1
        and perm.is_permutation(local_map(q, "f")) and has_flag(q, "medial") and is_simple(q)
    )


# ---------------------------------------------------------------- class flags

@check("(Z9, x+4y) is medial and left F")
def _z9_medial():
    r = classify(_q("z9-x-plus-4y"))
    return r.medial and r.left_f


@check("shipped z9.tbl is medial")
def _z9_file():
    text = resources.files("qg").joinpath("fixtures", "z9.tbl").read_text()
    return classify(load_quasigroup(text)).medial


@check("(Z3, x-y) is medial, unipotent, left/right F, SM and E")
def _z3_minus():
    r = classify(_q("z3-minus"))
    return all(getattr(r, f) for f in (
        "medial", "unipotent", "left_f", "right_f", "left_sm", "right_sm", "left_e", "right_e"))


@check("fixture class flags match classify")
def _fixture_flags():
    for fx in map(fixture, FIXTURE_NAMES):
        r = classify(fx.quasigroup)
        if any(getattr(r, k) != v for k, v in fx.flags.items()):
            return False
    return True


@check("loops LP-isotopic to left F fixtures are left M-loops")
def _left_m():
    for name in ("d8-leftF", "z9-x-plus-4y", "z4-x-plus-3y"):
        if left_m_witness(lp_isotope(_q(name), 0, 0)) is None:
            return False
    return True


@check("(Z4, x+3y) satisfies postulate B with delta = L_0^-1")
def _sushkevich():
    q = _q("z4-x-plus-3y")
    w = sushkevich_postulate(q, "B")
    return w.holds and w.delta == tuple(translation(q, "L-1", 0))


@check("(Z9, x+4y) = x + 4y over Z9, right linear")
def _z9_form():
    g = group_isotope_form(_q("z9-x-plus-4y"))
    return (
        g.group == cyclic_group(9) and g.alpha == tuple(range(9))
        and tuple(g.beta) == _mul(9, 4) and g.right_linear
    )


@check("D8 left F-quasigroup is right linear and not left linear")
def _d8_linear():
    g = group_isotope_form(_q("d8-leftF"))
    return g.right_linear and not g.left_linear and has_flag(_q("d8-leftF"), "left_f")


# ---------------------------------------------------------------- morphisms

@check("Z9 under (id, 4x, id) is the medial (Z9, x+4y)")
def _z9_isotope():
    t = Isotopy(tuple(range(9)), _mul(9, 4), tuple(range(9)))
    return apply_isotopy(cyclic_group(9), t) == _q("z9-x-plus-4y")


@check("loop isotopes of group isotopes are groups")
def _albert():
    return all(
        is_associative(lp_isotope(q, a, b))
        for q in (_q("z9-x-plus-4y"), _q("d8-leftF"), _q("z4-x-plus-3y"))
        for a in range(q.n) for b in range(q.n)
    )


@check("((23), (I, id, id)) maps a group to itself")
def _iso_23():
    for g in (Quasigroup(DIHEDRAL8), cyclic_group(5)):
        inv = tuple(g.ldiv[x][0] for x in range(g.n))
        ident = tuple(range(g.n))
        if isostrophy_apply(g, Isostrophy("23", Isotopy(inv, ident, ident))) != g:
            return False
    return True


@check("(id, S)(tau, id) = (tau, S^tau)")
def _iso_compose():
    n = 4
    ident = tuple(range(n))
    s = Isotopy((1, 0, 2, 3), (0, 2, 3, 1), (3, 2, 1, 0))
    for tau in SELECTOR_ORDER:
        got = isostrophy_compose(Isostrophy("e", s), Isostrophy(tau, Isotopy(ident, ident, ident)))
        if got != Isostrophy(tau, s.permuted(tau)):
            return False
    return True


@check("(123)-isostrophy inverse: selector (132), product is the identity")
def _iso_inverse():
    n = 4
    s = Isostrophy("123", Isotopy((1, 0, 2, 3), (0, 2, 3, 1), (3, 2, 1, 0)))
    inv = isostrophy_invert(s)
    return inv.sigma == "132" and isostrophy_compose(s, inv) == Isostrophy.identity(n)


@check("automorphisms of x*2y over idempotent (Z3, 2x+2y) = centralizer of doubling")
def _centralizer():
    star = affine(3, 2, 2)
    beta = _mul(3, 2)
    dot = Quasigroup([[star.mul[x][beta[y]] for y in range(3)] for x in range(3)])
    cent = [t for t in automorphisms(star) if perm.compose(t, beta) == perm.compose(beta, t)]
    return automorphisms(dot) == cent


@check("D8 has the endomorphism (0,3,3,0,3,3,0,0) whose square is 0")
def _d8_endo():
    g = Quasigroup(DIHEDRAL8)
    h = (0, 3, 3, 0, 3, 3, 0, 0)
    return is_endomorphism(g, h) and all(h[h[x]] == 0 for x in range(8))


@check("e is an endomorphism of every left F fixture")
def _e_endo():
    return all(
        is_endomorphism(fx.quasigroup, local_map(fx.quasigroup, "e"))
        for fx in map(fixture, FIXTURE_NAMES) if has_flag(fx.quasigroup, "left_f")
    )


@check("(Z6, x-y): f-chain Z6 > {0,2,4}, m = 1")
def _z6_chain():
    c = endomorphism_chain(_q("z6-minus"), "f")
    return c.images == (tuple(range(6)), (0, 2, 4)) and c.stabilization_index == 1


@check("(Z4, x+3y): e-chain Z4 > {0}, m = 1")
def _z4_chain():
    c = endomorphism_chain(_q("z4-x-plus-3y"), "e")
    return c.images == (tuple(range(4)), (0,)) and c.stabilization_index == 1


@check("(Z3, x-y): f is a permutation, m = 0")
def _z3_chain():
    c = endomorphism_chain(_q("z3-minus"), "f")
    return c.stabilization_index == 0 and c.stable_image == (0, 1, 2)


# ---------------------------------------------------------------- congruences

_Z4_THETA = Partition.from_blocks([(0, 2), (1, 3)])


@check("Z4: {0,2},{1,3} is a congruence in both modes")
def _z4_cong():
    g = cyclic_group(4)
    return is_congruence(g, _Z4_THETA, "plain") and is_congruence(g, _Z4_THETA, "normal")


@check("Z4: the congruence generated by (0,2) has classes {0,2},{1,3}")
def _z4_principal():
    return principal_congruence(cyclic_group(4), 0, 2).partition == _Z4_THETA


@check("Z4: kernel of x -> x+x is {0,2},{1,3}")
def _z4_kernel():
    return kernel_congruence(cyclic_group(4), _mul(4, 2)).partition == _Z4_THETA


@check("Z4 modulo {0,2},{1,3} is Z2")
def _z4_quotient():
    return quotient(cyclic_group(4), _Z4_THETA).quotient == cyclic_group(2)


@check("(Z7, 2x+3y) is simple")
def _z7_simple():
    return is_simple(_q("z7-2x-3y"))


@check("Z4: {0,2},{1,3} is admissible for L_1")
def _z4_admissible():
    return is_admissible(_Z4_THETA, translation(cyclic_group(4), "L", 1))


@check("Z4: congruences commute in pairs")
def _z4_commute():
    cs = all_congruences(cyclic_group(4))
    return all(compose_relations(a, b) == compose_relations(b, a) for a in cs for b in cs)


# ---------------------------------------------------------------- decomposition

@check("(Z4, x+3y) as left F: B trivial, A = Q with unique idempotent 0")
def _z4_decompose():
    d = decompose(_q("z4-x-plus-3y"), "left-F")
    return d.B.n == 1 and d.A == _q("z4-x-plus-3y")


@check("(Z3, x-y) as SM: s = 0, B trivial, A = Q unipotent")
def _z3_sm():
    d = decompose(_q("z3-minus"), "SM")
    return d.B.n == 1 and d.A == _q("z3-minus") and has_flag(d.A, "unipotent")


@check("(Z7, 2x+3y) as F: case (iv) with psi = 4x = e^-1")
def _z7_case():
    r = simple_classify(_q("z7-2x-3y"), "F")
    q = _q("z7-2x-3y")
    return r.case == "iv" and r.psi == _mul(7, 4) and perm.inverse(local_map(q, "e")) == r.psi


@check("(12)-parastrophe commutes with the direct product")
def _product_parastrophe():
    a, b = cyclic_group(3), affine(3, 2, 2)
    return parastrophe(direct_product(a, b), "12") == direct_product(
        parastrophe(a, "12"), parastrophe(b, "12"))


# ---------------------------------------------------------------- constructors

@check("cyclic(9) is the addition table of Z9")
def _z9_group():
    g = make_group("Z9")
    return all(g.mul[x][y] == (x + y) % 9 for x in range(9) for y in range(9))


@check("Toyoda form over Z9 with (id, 4x) is (Z9, x+4y)")
def _toyoda():
    return toyoda_medial(cyclic_group(9), tuple(range(9)), _mul(9, 4)) == _q("z9-x-plus-4y")


@check("right linear forms over D8 with other part L_a o alpha are left F and not left linear")
def _d8_linear_family():
    g = Quasigroup(DIHEDRAL8)
    alpha = perm.from_cycles("(1 2)(4 5)", 8)
    ident = tuple(range(8))
    for a in range(8):
        q = linear_quasigroup(g, "right", ident, perm.compose(translation(g, "L", a), alpha))
        if not has_flag(q, "left_f") or group_isotope_form(q).left_linear:
            return False
    return True


@check("right linear form over Z4 with 3x is (Z4, x+3y)")
def _z4_linear():
    g = cyclic_group(4)
    return linear_quasigroup(g, "right", _mul(4, 3), tuple(range(4))) == _q("z4-x-plus-3y")


@check("shipped fixture files parse to the built tables")
def _fixture_files():
    return all(load_quasigroup(fixture_text(n)) == _q(n) for n in FIXTURE_NAMES)


@check("fixture extras: simplicity, bijective maps, centers and endomorphisms")
def _fixture_extras():
    from .identities import loop_classify

    for fx in map(fixture, FIXTURE_NAMES):
        q = fx.quasigroup
        if fx.simple is not None and is_simple(q) != fx.simple:
            return False
        if any(not perm.is_permutation(local_map(q, k)) for k in fx.permutations):
            return False
        x = fx.extra
        if "f" in x and local_map(q, "f") != x["f"]:
            return False
        if x.get("group") and not (is_associative(q) and identity_element(q) is not None):
            return False
        if "center_size" in x and len(loop_classify(q).center) != x["center_size"]:
            return False
        if "endomorphism" in x and not is_endomorphism(q, x["endomorphism"]):
            return False
        if "endomorphism_image_size" in x:
            if x["endomorphism_image_size"] not in {len(set(h)) for h in _square_collapses(q)}:
                return False
        if "left_linear" in x:
            g = group_isotope_form(q)
            if (g.left_linear, g.right_linear) != (x["left_linear"], x["right_linear"]):
                return False
    return True


def _square_collapses(q):
    """Endomorphisms of a group sending the squares to 0 and the rest to one involution."""
    zero = identity_element(q)
    squares = {q.mul[x][x] for x in range(q.n)}
    out = []
    for t in range(q.n):
        if t != zero and q.mul[t][t] == zero:
            h = tuple(zero if x in squares else t for x in range(q.n))
            if is_endomorphism(q, h):
                out.append(h)
    return out


def run_checks():
    """[(name, passed, error)] in registration order."""
    results = []
    for name, fn in CHECKS:
        try:
            results.append((name, bool(fn()), None))
        except Exception as exc:  # a crashing check is a failed check
            results.append((name, False, f"{type(exc).__name__}: {exc}"))
    return results
