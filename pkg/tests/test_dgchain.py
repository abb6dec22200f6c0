import random

from hypothesis import given, strategies as st

from comonad_workbench.adjlift import oracle_mapping_dims
from comonad_workbench.dgchain import (
    ChainComplex, DgComodule, chain_map_space, check_computed_on_graded, concentrated,
    degree_zero_cycles, dg_comodule_tensor, dg_degree_dims, dg_enriched_hom, dg_hom_space,
    dg_mapping_comodule, dg_unit, forget_to_graded, graded_tensor, hom_complex,
    is_chain_map, koszul_symmetry, nonzero_degrees, piecewise_mapping_dims, tensor_complex,
    transfer_iso_check, validate_complex, validate_dg_comodule,
)
from comonad_workbench.exactlin import LinMap, eye, kron
from comonad_workbench.library import ground_bialgebra, kz2
from comonad_workbench.samples import random_complex, random_dg_comodule

ONE = LinMap.identity(1)
CONTRACTIBLE = ChainComplex(0, (1, 1), (ONE,))


def in_span(basis, f):
    from comonad_workbench.comodcat import in_span as span
    return span(basis, f)


def test_validate_complex_examples():
    zero = ChainComplex(0, (2, 1, 3), (LinMap.zero(2, 1), LinMap.zero(1, 3)))
    assert validate_complex(zero).ok
    assert validate_complex(CONTRACTIBLE).ok
    bad = ChainComplex(0, (1, 1, 1), (ONE, ONE))
    assert validate_complex(bad).names() == ["d o d at degree 2"]


def test_tensor_with_ground_is_identity():
    x = random_complex(random.Random(1))
    assert tensor_complex(x, concentrated(1)) == x
    assert tensor_complex(concentrated(1), x) == x


def test_tensor_of_contractible_complexes():
    t = tensor_complex(CONTRACTIBLE, CONTRACTIBLE)
    assert t.min_deg == 0 and t.dims == (1, 2, 1)
    assert t.diffs == (LinMap.from_rows([[1, 1]]), LinMap.from_rows([[1], [-1]]))
    assert validate_complex(t).ok


@given(st.integers(0, 10_000))
def test_tensor_and_hom_square_to_zero(seed):
    rng = random.Random(seed)
    x, y = random_complex(rng, 5), random_complex(rng, 5)
    for z in (tensor_complex(x, y), hom_complex(x, y)):
        assert validate_complex(z).ok
    assert forget_to_graded(tensor_complex(x, y)) == graded_tensor(
        forget_to_graded(x), forget_to_graded(y))


def test_hom_from_ground_is_y():
    y = random_complex(random.Random(2))
    assert hom_complex(concentrated(1), y) == y


@given(st.integers(0, 10_000))
def test_degree_zero_cycles_are_chain_maps(seed):
    rng = random.Random(seed)
    x, y = random_complex(rng, 5), random_complex(rng, 5)
    cycles = degree_zero_cycles(x, y)
    direct = chain_map_space(x, y)
    assert len(cycles) == len(direct)
    assert all(is_chain_map(f, x, y) for f in cycles)
    assert all(in_span(direct, f) for f in cycles)


def test_koszul_symmetry_is_a_chain_iso():
    x = ChainComplex(0, (1, 1), (ONE,))
    s = koszul_symmetry(x, x)
    t = tensor_complex(x, x)
    assert is_chain_map(s, t, t)
    assert s @ s == eye(t.total)


def test_forget_examples():
    assert forget_to_graded(ChainComplex(0, (), ())).total == 0
    x = random_complex(random.Random(3))
    assert forget_to_graded(x).dims == x.dims


def test_computed_on_graded():
    x = random_complex(random.Random(4))
    assert check_computed_on_graded(ground_bialgebra(), x).ok
    assert check_computed_on_graded(kz2(), x).ok
    mixed = ChainComplex(0, (1, 1), (ONE,))
    rep = check_computed_on_graded(kz2(), x, mixed)
    assert rep.ok and rep.notes


def test_dg_unit_and_tensor():
    h = kz2()
    u = dg_unit(h)
    assert validate_dg_comodule(u).ok
    v = random_dg_comodule(random.Random(5), h)
    assert validate_dg_comodule(v).ok
    assert dg_comodule_tensor(h, u, v) == v
    vv = dg_comodule_tensor(h, v, v)
    assert validate_dg_comodule(vv).ok


def test_dg_comodule_with_non_comodule_differential_rejected():
    h = kz2()
    # degree 1 line of group-like degree g mapping onto a degree 0 line of degree 1
    x = ChainComplex(0, (1, 1), (ONE,))
    coaction = LinMap.from_sparse(4, 2, [(0, 0, 1), (3, 1, 1)])
    rep = validate_dg_comodule(DgComodule(h, x, coaction))
    assert rep.names() == ["coaction is a chain map"]


def test_transfer_with_unit():
    h = kz2()
    z = random_dg_comodule(random.Random(6), h)
    assert transfer_iso_check(h, z, dg_unit(h)).ok
    res = dg_mapping_comodule(h, z, dg_unit(h))
    assert res.result.complex.dims == z.complex.dims
    assert dg_degree_dims(res.result) == dg_degree_dims(z)


@given(st.integers(0, 10_000))
def test_transfer_random(seed):
    rng = random.Random(seed)
    h = kz2()
    z, v = random_dg_comodule(rng, h), random_dg_comodule(rng, h)
    assert transfer_iso_check(h, z, v).ok
    res = dg_mapping_comodule(h, z, v)
    assert nonzero_degrees(dg_degree_dims(res.result)) == nonzero_degrees(
        piecewise_mapping_dims(h, z, v, oracle_mapping_dims))
    assert dg_enriched_hom(h, v, z).report.ok


def test_dg_hom_space_respects_both_structures():
    h = kz2()
    rng = random.Random(7)
    v, w = random_dg_comodule(rng, h), random_dg_comodule(rng, h)
    for f in dg_hom_space(v, w):
        assert is_chain_map(f, v.complex, w.complex)
        assert w.coaction @ f == kron(f, eye(h.dim)) @ v.coaction
