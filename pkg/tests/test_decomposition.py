import pytest

from qg.constructors import DIHEDRAL8, affine, cyclic_group, d8_left_f, direct_product, symmetric3
from qg.core import Quasigroup
from qg.decomposition import (
    CLASS_SELECTORS,
    class_key,
    decompose,
    in_class,
    loop_isotope_structure,
    simple_classify,
    verify_cml_structure,
)
from qg.errors import NotCML, NotInClass, NotSimple
from qg.identities import has_flag
from qg.search import Constraints, search_quasigroups

ONE_SIDED = ["left-F", "right-F", "left-SM", "right-SM", "left-E", "right-E"]

# lies in all six one-sided classes
P9 = direct_product(cyclic_group(3), affine(3, 2, 2))
P12 = direct_product(cyclic_group(4), affine(3, 2, 2))


def _check_iso(q, d):
    prod = d.product()
    flat = [d.iso_index(x) for x in range(q.n)]
    assert sorted(flat) == list(range(q.n))
    assert all(flat[q.mul[x][y]] == prod.mul[flat[x]][flat[y]] for x in range(q.n) for y in range(q.n))


@pytest.mark.parametrize("name,key", [("leftF", "left-F"), ("right_sm", "right-SM"), ("E", "E"),
                                      ("cml", "CML")])
def test_class_key(name, key):
    assert class_key(name) == key


def test_unknown_class():
    with pytest.raises(ValueError):
        class_key("middle-F")


@pytest.mark.parametrize("cls,m", [("left-F", 1), ("right-F", 1), ("left-E", 1), ("right-E", 1),
                                   ("left-SM", 0), ("right-SM", 0)])
def test_order_9_product(cls, m):
    # s is a bijection on both factors, e and f collapse the group factor
    d = decompose(P9, cls)
    assert d.m == m
    assert d.A.n * d.B.n == 9
    _check_iso(P9, d)


@pytest.mark.parametrize("cls", ONE_SIDED)
def test_order_12_product(cls):
    d = decompose(P12, cls)
    _check_iso(P12, d)
    assert d.A.n * d.B.n == 12
    assert len(d.chain) == d.m + 1


@pytest.mark.parametrize("cls", ONE_SIDED)
def test_companion_side(cls):
    d = decompose(P12, cls)
    side = "left_distributive" if cls.startswith("left") else "right_distributive"
    assert has_flag(d.companion, side)


def test_z4_x_plus_3y_left_e():
    d = decompose(affine(4, 1, 3), "left-E")
    assert d.kind == "f" and d.m == 2
    assert d.chain == ((0, 1, 2, 3), (0, 2), (0,))
    _check_iso(affine(4, 1, 3), d)


@pytest.mark.parametrize("q", [cyclic_group(6), symmetric3(), Quasigroup(DIHEDRAL8)])
def test_groups_decompose_with_trivial_b(q):
    d = decompose(q, "F")
    assert d.B.n == 1 and d.A == q
    assert d.inner.B.n == 1


def test_two_sided_decomposition_nests():
    q = affine(6, 5, 1, 3)
    d = decompose(q, "F")
    assert d.inner is not None and d.inner.cls == "right-F"
    assert [f.n for f in d.factors()] == [d.A.n, d.inner.A.n, d.inner.B.n]


def test_not_in_class():
    with pytest.raises(NotInClass):
        decompose(d8_left_f(0), "right-F")


def test_z7_case_iv_companion():
    c = simple_classify(affine(7, 2, 3), "F")
    assert c.case == "iv"
    assert c.psi == tuple(4 * x % 7 for x in range(7))
    assert c.distributive == affine(7, 2, 6)
    assert c.medial and not c.associative
    assert c.reconstruct() == affine(7, 2, 3)


def test_z4_is_not_simple():
    with pytest.raises(NotSimple):
        simple_classify(cyclic_group(4), "F")


@pytest.mark.parametrize("cls", ["left-F", "right-F", "left-E", "right-E", "F", "E"])
def test_z5_is_case_i(cls):
    assert simple_classify(cyclic_group(5), cls).case == "i"


@pytest.mark.parametrize("q,cls,case", [
    (affine(5, 2, 4), "F", "iv"),
    (affine(5, 3, 1), "F", "iii"),
    (affine(5, 1, 3), "F", "ii"),
    (affine(5, 2, 4), "E", "iv"),
    (affine(5, 3, 1), "E", "ii"),
    (affine(5, 1, 3), "E", "iii"),
    (affine(5, 3, 1), "left-F", "ii"),
    (affine(5, 3, 1), "right-F", "i"),
    (cyclic_group(5), "SM", "ii"),
])
def test_simple_cases(q, cls, case):
    c = simple_classify(q, cls)
    assert c.case == case
    assert c.reconstruct() == q
    assert all(c.checks.values())


def test_simple_classify_rejects_cml():
    with pytest.raises(ValueError):
        simple_classify(cyclic_group(3), "CML")


@pytest.mark.parametrize("n", [2, 3, 5])
def test_simple_f_quasigroups_are_medial_or_associative(n):
    for q in search_quasigroups(n, Constraints.of("left_f", "right_f"), mode="enumerate").quasigroups:
        c = simple_classify(q, "F")
        assert c.associative or c.medial
        assert c.reconstruct() == q


def test_cml_z4_chain():
    d = decompose(cyclic_group(4), "CML")
    assert d.m == 2
    assert d.chain == ((0, 1, 2, 3), (0, 2), (0,))
    assert d.A == cyclic_group(4)


def test_cml_z3_structure():
    rep = verify_cml_structure(cyclic_group(3))
    assert all(rep["checks"].values())
    assert rep["quotientOrder"] == 1


def test_cml_structure_of_abelian_3_group():
    q = direct_product(cyclic_group(3), cyclic_group(3))
    rep = verify_cml_structure(q)
    assert rep["m"] == 0 and rep["quotientOrder"] == 1


def test_non_cml():
    with pytest.raises(NotCML):
        verify_cml_structure(symmetric3())
    with pytest.raises(NotCML):
        verify_cml_structure(affine(3, 1, -1))


def test_d8_left_f_loop_structure():
    rep = loop_isotope_structure(d8_left_f(0), "left-F")
    assert rep.certified()
    assert rep.group_part.n * rep.s_loop_part.n == 8


def test_z4_left_e_loop_structure():
    rep = loop_isotope_structure(affine(4, 1, 3), "left-E")
    assert rep.flags == {"groupPartLoop": True, "groupPart": True, "abelianPart": True, "sLoopPart": True}


def test_f_loop_structure_reports_moufang():
    rep = loop_isotope_structure(affine(6, 5, 1, 3), "F")
    assert rep.flags["moufang"] and rep.flags["moufangKernelPart"]
    assert rep.inner is not None and rep.certified()


@pytest.mark.parametrize("cls", [c for c in CLASS_SELECTORS if c != "CML"])
def test_loop_structure_of_products(cls):
    if in_class(P12, cls):
        assert loop_isotope_structure(P12, cls).certified()


def test_decomposition_json_shape():
    d = decompose(P9, "left-F").as_dict()
    assert {"class", "m", "chain", "delta", "rho", "A", "B", "iso"} <= set(d)
    assert d["A"]["order"] * d["B"]["order"] == 9
