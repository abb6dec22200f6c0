import random

import pytest
from hypothesis import given, strategies as st

from comonad_workbench.adjlift import validate_adjunction
from comonad_workbench.comodcat import (
    ComoduleMorphism, is_comodule_morphism, validate_comodule, validate_module,
)
from comonad_workbench.dgchain import validate_complex, validate_dg_comodule
from comonad_workbench.exactlin import LinMap, eye
from comonad_workbench.library import kz2, small_algebras
from comonad_workbench.oplaxfun import validate_oplax
from comonad_workbench.samples import (
    SampleError, comodule_of_dim, generated_subcomodule, mutated_bialgebras,
    pointed_bialgebra, random_adjunction, random_algebra, random_coalgebra, random_comodule,
    random_comodule_morphism, random_complex, random_dg_comodule, random_invertible,
    random_module, random_nat_trans, random_oplax,
)
from comonad_workbench.structures import validate_algebra, validate_bialgebra, validate_coalgebra

seeds = st.integers(0, 100_000)


@given(seeds)
def test_invertible_pairs(seed):
    t, t_inv = random_invertible(random.Random(seed), 3)
    assert t @ t_inv == eye(3)


@given(seeds)
def test_structures_valid(seed):
    rng = random.Random(seed)
    c = random_coalgebra(rng)
    assert validate_coalgebra(c).ok
    assert validate_algebra(random_algebra(rng)).ok
    v = random_comodule(rng, c, 4)
    assert v.dim <= 4 and validate_comodule(v).ok
    w = random_comodule(rng, c, 4)
    f = random_comodule_morphism(rng, v, w)
    assert is_comodule_morphism(ComoduleMorphism(v, w, f))


@given(seeds)
def test_oplax_and_nat_trans_valid(seed):
    rng = random.Random(seed)
    s = random_oplax(rng)
    assert validate_oplax(s).ok and s.carrier <= 3
    n = random_nat_trans(rng)
    assert validate_oplax(n.source).ok and validate_oplax(n.target).ok
    assert n.a.shape == (n.target.carrier, n.source.carrier)
    assert validate_adjunction(random_adjunction(rng, 3)).ok


@given(seeds)
def test_complexes_and_dg_comodules_valid(seed):
    rng = random.Random(seed)
    x = random_complex(rng)
    assert x.total <= 8 and validate_complex(x).ok
    assert validate_dg_comodule(random_dg_comodule(rng, kz2())).ok


@given(seeds)
def test_modules_valid(seed):
    rng = random.Random(seed)
    a = rng.choice(small_algebras())
    m = random_module(rng, a)
    assert m.dim <= 6 and validate_module(m).ok


def test_comodule_of_exact_dim():
    rng = random.Random(1)
    p = pointed_bialgebra(kz2())
    for dim in range(6):
        v = comodule_of_dim(rng, p, dim)
        assert v.dim == dim and validate_comodule(v).ok


def test_generated_subcomodule_contains_generators():
    c = kz2().coalgebra
    gens = LinMap.from_rows([[1], [0]])
    sub = generated_subcomodule(c, 1, gens)
    assert validate_comodule(sub).ok and sub.dim == 1  # a group-like spans a line
    single = generated_subcomodule(c, 1, LinMap.from_rows([[1], [1]]))
    assert single.dim == 2


def test_no_comodule_in_range_raises():
    with pytest.raises(SampleError):
        random_comodule(random.Random(0), kz2().coalgebra, max_dim=5, min_dim=5)


def test_mutants_are_invalid_and_deterministic():
    h = kz2()
    a = mutated_bialgebras(h, random.Random(2))
    b = mutated_bialgebras(h, random.Random(2))
    assert a == b and len(a) == 8
    assert all(not validate_bialgebra(m).ok for m in a)
