import random

import pytest
from hypothesis import given, strategies as st

from comonad_workbench.adjlift import (
    LaxStructure, certify_adjunction, check_factorization, check_strength,
    check_strong_adjunction, coreflexive_pair, enriched_hom, factor_comonad, graded_dims,
    kelly_lax_to_oplax, kelly_oplax_to_lax, lifted_right_adjoint, mapping_adjoint,
    mapping_comodule, oracle_enriched_dims, oracle_mapping_dims, right_adjoint_on_morphism,
    standard_adjunction, transposes_inverse, twisted_adjunction, validate_adjunction,
    validate_lax, verify_tce,
)
from comonad_workbench.comodcat import (
    Comodule, cofree, comodule_hom_space, is_comodule_morphism, ComoduleMorphism,
    trivial_comodule,
)
from comonad_workbench.exactlin import LinMap, eye, inverse, kron
from comonad_workbench.hopf import unit_comodule
from comonad_workbench.library import ground_bialgebra, ground_coalgebra, kz2, s3_bialgebra
from comonad_workbench.oplaxfun import (
    OplaxStructure, forgetful_oplax, identity_oplax, validate_oplax,
)
from comonad_workbench.report import InvalidStructure
from comonad_workbench.samples import (
    random_comodule, random_comodule_morphism, random_invertible, random_oplax,
)

H = kz2()
C = H.coalgebra
G = LinMap.from_rows([[0], [1]])


def adj_for(s, rng):
    if rng.random() < 0.5:
        return standard_adjunction(s.carrier)
    return twisted_adjunction(random_invertible(rng, s.carrier)[0])


def test_adjunctions_valid():
    assert validate_adjunction(standard_adjunction(3)).ok
    p = LinMap.from_rows([[1, 2], [0, 1]])
    assert validate_adjunction(twisted_adjunction(p)).ok
    bad = standard_adjunction(2)
    assert not validate_adjunction(type(bad)(2, bad.coev, 2 * bad.ev)).ok


def test_kelly_identity_case():
    adj = standard_adjunction(1)
    lax = kelly_oplax_to_lax(adj, identity_oplax(C))
    assert lax.bhat == eye(2)
    assert kelly_lax_to_oplax(adj, LaxStructure(C, C, 1, eye(2))) == identity_oplax(C)


def test_kelly_trivial_dualization_transposes_through_unit_isos():
    s = forgetful_oplax(C, 1)
    assert kelly_oplax_to_lax(standard_adjunction(1), s).bhat == s.b


def test_kelly_rejects_invalid_inputs():
    bad = OplaxStructure(C, C, 1, LinMap.zero(2, 2))
    with pytest.raises(InvalidStructure) as err:
        kelly_oplax_to_lax(standard_adjunction(1), bad)
    assert "counit square" in err.value.report.names()


@given(st.integers(0, 10_000))
def test_kelly_round_trips(seed):
    rng = random.Random(seed)
    s = random_oplax(rng)
    adj = adj_for(s, rng)
    lax = kelly_oplax_to_lax(adj, s)
    assert validate_lax(lax).ok
    assert kelly_lax_to_oplax(adj, lax) == s
    assert kelly_oplax_to_lax(adj, kelly_lax_to_oplax(adj, lax)) == lax


def test_right_adjoint_of_identity_is_identity():
    z = random_comodule(random.Random(1), C)
    ra = lifted_right_adjoint(standard_adjunction(1), identity_oplax(C), z)
    assert ra.result.dim == z.dim
    assert ra.result == z


def test_right_adjoint_of_forgetful_is_cofree():
    z = Comodule(ground_coalgebra(), 2, eye(2))
    ra = lifted_right_adjoint(standard_adjunction(1), forgetful_oplax(C, 1), z,
                              certify_on=[cofree(C, 1)])
    assert ra.result == cofree(C, 2)


def test_coreflexive_pair_shares_retraction():
    rng = random.Random(2)
    s = random_oplax(rng)
    adj = adj_for(s, rng)
    z = random_comodule(rng, s.target, 3)
    f, g, r = coreflexive_pair(adj, kelly_oplax_to_lax(adj, s), z)
    assert r @ f.map == eye(f.source.dim) == r @ g.map
    assert is_comodule_morphism(f) and is_comodule_morphism(g)


@given(st.integers(0, 10_000))
def test_adjunction_certified(seed):
    rng = random.Random(seed)
    s = random_oplax(rng, max_coalg=2, max_w=2)
    adj = adj_for(s, rng)
    z = random_comodule(rng, s.target, 3)
    ra = lifted_right_adjoint(adj, s, z)
    vs = [random_comodule(rng, s.source, 3) for _ in range(2)]
    assert certify_adjunction(ra, vs, seed).ok


def test_right_adjoint_is_functorial():
    rng = random.Random(9)
    z1, z2 = (random_comodule(rng, C, 3) for _ in range(2))
    k = random_comodule_morphism(rng, z1, z2)
    s = identity_oplax(C)
    adj = standard_adjunction(1)
    r1, r2 = (lifted_right_adjoint(adj, s, z) for z in (z1, z2))
    rk = right_adjoint_on_morphism(r1, r2, k)
    assert rk is not None
    assert is_comodule_morphism(ComoduleMorphism(r1.result, r2.result, rk))


def test_mapping_with_unit_is_z():
    rng = random.Random(3)
    for _ in range(5):
        z = random_comodule(rng, C, 4)
        m = mapping_comodule(H, z, unit_comodule(H))
        e = enriched_hom(H, unit_comodule(H), z)
        for r in (m, e):
            assert r.dim == z.dim and graded_dims(r) == graded_dims(z)
            assert len(comodule_hom_space(z, r)) == len(comodule_hom_space(z, z))


@pytest.mark.parametrize("make", [kz2, s3_bialgebra])
def test_graded_oracles(make):
    h = make()
    rng = random.Random(4)
    for _ in range(4):
        z = random_comodule(rng, h.coalgebra, 3)
        v = random_comodule(rng, h.coalgebra, 3)
        assert graded_dims(mapping_comodule(h, z, v)) == oracle_mapping_dims(h, z, v)
        assert graded_dims(enriched_hom(h, v, z)) == oracle_enriched_dims(h, v, z)


def test_mapping_naturality_in_z():
    rng = random.Random(5)
    v = random_comodule(rng, C, 3)
    z1, z2 = (random_comodule(rng, C, 3) for _ in range(2))
    k = random_comodule_morphism(rng, z1, z2)
    a1, a2 = mapping_adjoint(H, z1, v), mapping_adjoint(H, z2, v)
    rk = right_adjoint_on_morphism(a1, a2, k)
    assert rk is not None
    # the induced map is the restriction of k (x) id
    pushed = kron(k, eye(v.dim * H.dim)) @ a1.inclusion
    assert a2.inclusion @ rk == pushed


def test_tce_ground_and_kz2():
    g = ground_bialgebra()
    k = ground_coalgebra()
    lines = [Comodule(k, n, eye(n)) for n in (1, 2)]
    res = verify_tce(g, [(a, b, c) for a in lines for b in lines for c in lines])
    assert res.report.ok
    assert all(len(set(d)) == 1 for d in res.dims)
    rng = random.Random(6)
    triples = [tuple(random_comodule(rng, C, 3) for _ in range(3)) for _ in range(6)]
    assert verify_tce(H, triples).report.ok


def test_tce_negative_control():
    good = trivial_comodule(C, 1, G)
    broken = Comodule(C, 1, LinMap.from_rows([[1], [1]]))
    res = verify_tce(H, [(good, good, good), (broken, good, good)])
    names = res.report.names()
    assert names and all(n.startswith("triple 1") for n in names)


def test_factorization_identity_adjunction():
    s = identity_oplax(C)
    adj = standard_adjunction(1)
    f = factor_comonad(adj, s)
    assert f.comonad == C
    assert check_factorization(adj, s, f).ok
    assert f.first.b == eye(2)


@given(st.integers(0, 10_000))
def test_factorization_random(seed):
    rng = random.Random(seed)
    s = random_oplax(rng, max_coalg=2, max_w=2)
    adj = adj_for(s, rng)
    f = factor_comonad(adj, s)
    assert check_factorization(adj, s, f).ok
    assert validate_oplax(f.first).ok and validate_oplax(f.second).ok


def test_strength_examples():
    k = ground_bialgebra().algebra
    assert check_strength(k.mult, k.unit, 1, eye(1)).ok
    a = H.algebra
    assert check_strength(a.mult, a.unit, 2, a.mult).ok
    bad = a.mult + LinMap.from_sparse(2, 4, [(0, 3, 1)])
    assert not check_strength(a.mult, a.unit, 2, bad).ok


def test_strong_adjunction_criterion_matches_squares():
    rng = random.Random(8)
    adj = standard_adjunction(2)
    cases = [(eye(2), eye(2)), (2 * eye(2), eye(2)), (LinMap.zero(2, 2), eye(2))]
    for _ in range(4):
        p, p_inv = random_invertible(rng, 2)
        cases.append((p, p_inv.transpose()))
        cases.append((p, p))
    outcomes = set()
    for kl, kr in cases:
        squares = check_strong_adjunction(adj, kl, kr).ok
        assert transposes_inverse(adj, kl, kr, 1, 2) == squares
        outcomes.add(squares)
    assert outcomes == {True, False}


def test_twisted_adjunction_needs_invertible_twist():
    with pytest.raises(ValueError):
        twisted_adjunction(LinMap.zero(2, 2))
    assert inverse(LinMap.zero(2, 2)) is None
