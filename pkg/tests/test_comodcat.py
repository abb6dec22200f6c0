import random

import pytest
from hypothesis import given, strategies as st

from comonad_workbench.comodcat import (
    CoalgebraMismatch, Comodule, ComoduleMorphism, ModuleMorphism, ModuleOverAlgebra, cofree,
    cofree_map, cofree_transpose, cofree_untranspose, comodule_equalizer, comodule_hom_space,
    comodule_product, free_module, in_span, is_comodule_morphism, is_module_morphism,
    module_coequalizer, regular_comodule, trivial_comodule,
    validate_comodule, validate_module,
)
from comonad_workbench.exactlin import (
    LinMap, equalizer, eye, is_invertible, kron, solve_left,
)
from comonad_workbench.library import ground_coalgebra, product_algebra, small_algebras
from comonad_workbench.samples import random_comodule, random_coalgebra, random_matrix

E = LinMap.from_rows([[1], [0]])  # group-like 1
G = LinMap.from_rows([[0], [1]])  # group-like g


def test_trivial_and_regular_comodules_valid(h2):
    assert validate_comodule(trivial_comodule(h2.coalgebra, 3, E)).ok
    assert validate_comodule(regular_comodule(h2.coalgebra)).ok


def test_zero_coaction_fails_counit(h2):
    v = Comodule(h2.coalgebra, 2, LinMap.zero(4, 2))
    assert validate_comodule(v).names() == ["counit"]


def test_cofree_at_unit_and_over_ground(h2):
    assert cofree(h2.coalgebra, 1) == regular_comodule(h2.coalgebra)
    k = ground_coalgebra()
    assert cofree(k, 3) == trivial_comodule(k, 3, eye(1))


@pytest.mark.parametrize("x", [1, 2, 3])
@pytest.mark.parametrize("degree", [E, G], ids=["deg1", "degg"])
def test_hom_into_cofree_dimension(h2, x, degree):
    line = trivial_comodule(h2.coalgebra, 1, degree)
    assert len(comodule_hom_space(line, cofree(h2.coalgebra, x))) == x


def test_hom_spaces(h2):
    v = random_comodule(random.Random(3), h2.coalgebra)
    assert in_span(comodule_hom_space(v, v), eye(v.dim))
    one = trivial_comodule(h2.coalgebra, 1, E)
    sign = trivial_comodule(h2.coalgebra, 1, G)
    assert comodule_hom_space(one, sign) == []
    assert len(comodule_hom_space(one, cofree(h2.coalgebra, 3))) == 3


def test_hom_space_rejects_mixed_coalgebras(h2):
    with pytest.raises(CoalgebraMismatch):
        comodule_hom_space(cofree(h2.coalgebra, 1), cofree(ground_coalgebra(), 1))


@given(st.integers(0, 10_000))
def test_hom_space_elements_are_morphisms(seed):
    rng = random.Random(seed)
    c = random_coalgebra(rng)
    v, w = random_comodule(rng, c, 3), random_comodule(rng, c, 3)
    for b in comodule_hom_space(v, w):
        assert is_comodule_morphism(ComoduleMorphism(v, w, b))


def test_equalizer_of_equal_pair_is_source(h2):
    v = cofree(h2.coalgebra, 2)
    f = ComoduleMorphism(v, v, eye(4))
    e, inc = comodule_equalizer(f, f)
    assert e.dim == v.dim and is_invertible(inc.map)


def test_equalizer_of_swap_on_cofree(h2):
    c = h2.coalgebra
    v = cofree(c, 2)
    swap = cofree_map(c, LinMap.from_rows([[0, 1], [1, 0]]))
    e, inc = comodule_equalizer(ComoduleMorphism(v, v, eye(4)), swap)
    assert e.dim == 2 and validate_comodule(e).ok and is_comodule_morphism(inc)
    # cofree on the fixed line
    assert inc.map == kron(LinMap.from_rows([[1], [1]]), eye(2))
    # underlying equalizer in Vect is the same subspace
    assert equalizer(eye(4), swap.map)[1] == inc.map


def test_products(h2):
    c = h2.coalgebra
    empty, projs = comodule_product([], over=c)
    assert empty.dim == 0 and projs == []
    v = random_comodule(random.Random(1), c)
    single, (p,) = comodule_product([v])
    assert single == v and p.map == eye(v.dim)


@given(st.integers(0, 10_000))
def test_product_hom_dimension(seed):
    rng = random.Random(seed)
    c = random_coalgebra(rng)
    vs = [random_comodule(rng, c, 3) for _ in range(rng.randint(1, 3))]
    w = random_comodule(rng, c, 3)
    prod, _ = comodule_product(vs)
    assert len(comodule_hom_space(w, prod)) == sum(len(comodule_hom_space(w, v)) for v in vs)


def test_cofree_adjunction_triangles():
    rng = random.Random(0)
    for _ in range(50):
        c = random_coalgebra(rng)
        v = random_comodule(rng, c)
        x = rng.randint(1, 3)
        f = random_matrix(rng, x, v.dim)
        g = cofree_transpose(v, f)
        assert is_comodule_morphism(g)
        assert cofree_untranspose(g, x) == f


@pytest.mark.parametrize("a", small_algebras())
def test_free_modules_valid(a):
    assert validate_module(free_module(a, 2)).ok


def test_module_coequalizer_of_equal_pair(rng):
    a = product_algebra(2)
    m = free_module(a, 2)
    f = ModuleMorphism(m, m, eye(m.dim))
    q, proj = module_coequalizer(f, f)
    assert q.dim == m.dim and is_module_morphism(proj)


def test_split_coequalizer_recovers_module():
    a = product_algebra(2)
    # V = K^2 with the two idempotents acting by coordinate projections
    act = LinMap.from_rows([[1, 0, 0, 0], [0, 0, 0, 1]])
    v = ModuleOverAlgebra(a, 2, act)
    assert validate_module(v).ok
    n = a.dim
    va = free_module(a, v.dim)                   # V (x) A
    vaa = free_module(a, v.dim * n)              # V (x) A (x) A
    f = ModuleMorphism(vaa, va, kron(act, eye(n)))
    g = ModuleMorphism(vaa, va, kron(eye(v.dim), a.mult))
    assert is_module_morphism(f) and is_module_morphism(g)
    q, proj = module_coequalizer(f, g)
    assert q.dim == v.dim and validate_module(q).ok and is_module_morphism(proj)
    # the action itself coequalizes, and factors through an isomorphism q -> V
    u = solve_left(proj.map, act)
    assert u is not None and is_invertible(u)
    assert is_module_morphism(ModuleMorphism(q, v, u))
