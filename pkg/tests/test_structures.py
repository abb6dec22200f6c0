import pytest
from hypothesis import given, strategies as st

from comonad_workbench.adjlift import group_law
from comonad_workbench.exactlin import LinMap, eye
from comonad_workbench.library import (
    broken_counit_kz2, divided_power_coalgebra, ground_algebra, ground_bialgebra,
    ground_coalgebra, grouplike_coalgebra, kz2, kz2xz2, matrix_coalgebra, product_algebra,
    s3_bialgebra, small_algebras, small_coalgebras, sweedler_bialgebra,
)
from comonad_workbench.structures import (
    FinAlgebra, FinCoalgebra, StructMorphism, check_comonad_laws, check_morphism,
    dual_algebra, dual_bialgebra, dual_coalgebra, tensor_bialgebra, validate_algebra,
    validate_bialgebra, validate_coalgebra,
)


def test_ground_structures_valid():
    assert validate_coalgebra(ground_coalgebra()).ok
    assert validate_algebra(ground_algebra()).ok
    assert validate_bialgebra(ground_bialgebra()).ok


def test_grouplike_coalgebra_valid():
    assert validate_coalgebra(grouplike_coalgebra(2)).ok


def test_zero_counit_fails_counit_law():
    bad = FinCoalgebra(1, eye(1), LinMap.zero(1, 1))
    rep = validate_coalgebra(bad)
    assert {"left counit", "right counit"} <= set(rep.names())
    assert "coassociativity" not in rep.names()


def test_product_algebra_valid():
    assert validate_algebra(product_algebra(2)).ok


def test_zero_mult_fails_unit_law():
    bad = FinAlgebra(1, LinMap.zero(1, 1), eye(1))
    assert {"left unit", "right unit"} <= set(validate_algebra(bad).names())


@pytest.mark.parametrize("h", [kz2(), kz2xz2(), s3_bialgebra(), sweedler_bialgebra()],
                         ids=["kz2", "kz2xz2", "s3", "sweedler"])
def test_library_bialgebras_valid(h):
    assert validate_bialgebra(h).ok


def test_broken_counit_names_the_axioms():
    names = set(validate_bialgebra(broken_counit_kz2()).names())
    assert {"left counit", "right counit", "counit multiplicative"} <= names
    assert "comult multiplicative" not in names


@pytest.mark.parametrize("c", small_coalgebras() + [matrix_coalgebra(2)])
def test_library_coalgebras_and_comonad_laws(c):
    assert validate_coalgebra(c).ok
    for x in (1, 2):
        assert check_comonad_laws(c, x).ok


@pytest.mark.parametrize("a", small_algebras())
def test_library_algebras(a):
    assert validate_algebra(a).ok


def test_duals():
    assert dual_coalgebra(ground_algebra()) == ground_coalgebra()
    assert dual_coalgebra(product_algebra(2)) == grouplike_coalgebra(2)
    a = product_algebra(3)
    assert dual_algebra(dual_coalgebra(a)) == a
    assert validate_bialgebra(dual_bialgebra(s3_bialgebra())).ok


@given(st.integers(1, 4))
def test_divided_power_dual_is_algebra(k):
    c = divided_power_coalgebra(k)
    assert validate_coalgebra(c).ok
    assert validate_algebra(dual_algebra(c)).ok


def test_morphisms():
    h = kz2()
    assert check_morphism(StructMorphism(eye(2), "bialgebra", h, h)).ok
    counit = StructMorphism(h.counit, "coalgebra", h.coalgebra, ground_coalgebra())
    assert check_morphism(counit).ok
    swap = StructMorphism(LinMap.from_rows([[0, 1], [1, 0]]), "coalgebra", h.coalgebra,
                          h.coalgebra)
    assert check_morphism(swap).ok
    # 1 <-> g is not multiplicative: it moves the unit
    bad = StructMorphism(swap.map, "bialgebra", h, h)
    assert "preserves unit" in check_morphism(bad).names()


def test_tensor_bialgebra_is_klein_group_algebra():
    t = tensor_bialgebra(kz2(), kz2())
    assert validate_bialgebra(t).ok
    assert sorted(map(sorted, group_law(t))) == sorted(map(sorted, group_law(kz2xz2())))
