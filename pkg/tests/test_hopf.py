import random

import pytest
from hypothesis import given, strategies as st

from comonad_workbench.comodcat import (
    cofree, is_comodule_morphism, regular_comodule, trivial_comodule, validate_comodule,
)
from comonad_workbench.exactlin import LinMap, eye, kron
from comonad_workbench.hopf import (
    check_lax_monoidal_lift, check_module_monad_strength, check_symmetric_hopf,
    comodule_tensor, convolution_algebra, convolution_product, hopf_from_bialgebra,
    hopf_squares, lax_component, lifted_tensor_report, read_back_algebra, squares_match_axioms,
    symmetry_morphism, unit_comodule,
)
from comonad_workbench.library import (
    broken_counit_kz2, ground_algebra, ground_bialgebra, ground_coalgebra, kz2, kz2xz2,
    product_algebra, s3_bialgebra, sweedler_bialgebra,
)
from comonad_workbench.oplaxfun import identity_oplax, oplax_from_comodule
from comonad_workbench.report import InvalidStructure
from comonad_workbench.samples import (
    mutated_bialgebras, random_algebra, random_coalgebra, random_comodule,
)
from comonad_workbench.structures import validate_algebra

ONE = LinMap.from_rows([[1], [0]])
G = LinMap.from_rows([[0], [1]])


@pytest.mark.parametrize("make", [ground_bialgebra, kz2, kz2xz2, sweedler_bialgebra])
def test_valid_bialgebras_give_hopf_comonads(make):
    h = make()
    assert hopf_from_bialgebra(h).bialgebra == h
    top = 4 if h.dim <= 2 else 3
    for x in range(1, top):
        for y in range(1, top):
            assert hopf_squares(h, x, y).ok


def test_broken_counit_rejected_with_failing_axioms():
    with pytest.raises(InvalidStructure) as err:
        hopf_from_bialgebra(broken_counit_kz2())
    assert "counit multiplicative" in err.value.report.names()
    assert squares_match_axioms(broken_counit_kz2())


def test_each_square_tracks_its_axiom_on_mutants():
    for bad in mutated_bialgebras(kz2(), random.Random(3), 12):
        assert squares_match_axioms(bad)


def test_unit_comodule():
    h = kz2()
    u = unit_comodule(h)
    assert u.coaction == ONE and validate_comodule(u).ok
    assert comodule_tensor(h, u, u) == u
    assert unit_comodule(ground_bialgebra()).coaction == eye(1)


def test_tensor_unit_law_is_literal():
    h = kz2()
    v = random_comodule(random.Random(4), h.coalgebra)
    u = unit_comodule(h)
    assert comodule_tensor(h, u, v) == v
    assert comodule_tensor(h, v, u) == v


def test_degrees_multiply():
    h = kz2()
    line_g = trivial_comodule(h.coalgebra, 1, G)
    assert comodule_tensor(h, line_g, line_g).coaction == ONE


@given(st.integers(0, 10_000))
def test_tensor_is_strictly_associative(seed):
    rng = random.Random(seed)
    h = kz2xz2() if seed % 2 else kz2()
    u, v, w = (random_comodule(rng, h.coalgebra, 3) for _ in range(3))
    left = comodule_tensor(h, comodule_tensor(h, u, v), w)
    right = comodule_tensor(h, u, comodule_tensor(h, v, w))
    assert left == right and validate_comodule(left).ok
    assert left.dim == u.dim * v.dim * w.dim


def test_tensor_matches_lax_formula_on_sweedler():
    h = sweedler_bialgebra()
    r = regular_comodule(h.coalgebra)
    t = comodule_tensor(h, r, r)
    assert t.coaction == lax_component(h, 4, 4) @ kron(r.coaction, r.coaction)


def test_read_back_recovers_the_algebra():
    for h in (kz2(), s3_bialgebra(), sweedler_bialgebra()):
        assert read_back_algebra(h) == h.algebra


def test_symmetric_hopf():
    assert check_symmetric_hopf(ground_bialgebra())
    h = kz2()
    rng = random.Random(6)
    pairs = [(random_comodule(rng, h.coalgebra, 3), random_comodule(rng, h.coalgebra, 3))
             for _ in range(4)]
    assert check_symmetric_hopf(h, pairs)
    assert not check_symmetric_hopf(s3_bialgebra())


def test_swap_not_a_comodule_map_over_s3():
    h = s3_bialgebra()
    r = cofree(h.coalgebra, 1)
    assert not is_comodule_morphism(symmetry_morphism(h, r, r))


def test_lifted_tensor_report():
    h = kz2()
    assert lifted_tensor_report(h, [trivial_comodule(h.coalgebra, 2, G)]).ok
    assert not lifted_tensor_report(broken_counit_kz2()).ok


def test_convolution_over_ground_is_the_algebra():
    a = product_algebra(3)
    conv = convolution_algebra(ground_coalgebra(), a)
    assert conv.result == a


def test_convolution_kz2_ground():
    h = kz2()
    conv = convolution_algebra(h.coalgebra, ground_algebra())
    assert validate_algebra(conv.result).ok
    eps = LinMap.from_rows([[1, 1]])
    chi = LinMap.from_rows([[1, -1]])
    p = LinMap.from_rows([[1, 0]])
    q = LinMap.from_rows([[0, 1]])
    # (eps +- chi) / 2 are the indicator functions of the group-likes
    assert (eps + chi) == p + p and (eps - chi) == q + q
    for f in (p, q):
        assert convolution_product(h.coalgebra, ground_algebra(), f, f) == f
    assert convolution_product(h.coalgebra, ground_algebra(), p, q).is_zero()
    assert p + q == eps


@given(st.integers(0, 10_000))
def test_convolution_is_an_algebra(seed):
    rng = random.Random(seed)
    c, a = random_coalgebra(rng), random_algebra(rng)
    assert validate_algebra(convolution_algebra(c, a).result).ok


def test_strength_trivial_cases():
    h = kz2()
    t = h.counit.transpose()  # A = K: A -> A (x) H*
    for x, y in ((1, 1), (2, 1), (1, 2)):
        assert check_module_monad_strength(t, ground_algebra(), h, x, y).ok
    a = product_algebra(2)
    assert check_module_monad_strength(eye(2), a, ground_bialgebra(), 2, 2).ok


def test_perturbed_strength_reported():
    h = kz2()
    a = product_algebra(2)
    t = kron(eye(2), h.counit.transpose())
    assert check_module_monad_strength(t, a, h).ok
    bad = t + LinMap.from_sparse(4, 2, [(1, 0, 1)])
    assert not check_module_monad_strength(bad, a, h).ok


def test_lax_monoidal_lift_examples():
    h = kz2()
    c = h.coalgebra
    assert check_lax_monoidal_lift(h, ground_algebra(), identity_oplax(c)) == (True, True)
    regular = oplax_from_comodule(c, regular_comodule(c))
    assert check_lax_monoidal_lift(h, h.algebra, regular) == (True, True)
    twisted = oplax_from_comodule(c, trivial_comodule(c, 1, G))
    assert check_lax_monoidal_lift(h, ground_algebra(), twisted) == (False, False)

