"""Seeded random generators for the property suites.

Every generator takes a :class:`random.Random` and only produces *valid*
structures (each is checked before it is returned), so failures downstream
point at the code under test rather than at the sampler.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Sequence

from .adjlift import AdjunctionData, standard_adjunction, twisted_adjunction
from .comodcat import (
    Comodule, ModuleOverAlgebra, cofree, comodule_direct_sum, comodule_hom_space, free_module,
    restrict_comodule,
    transport_comodule, trivial_comodule, validate_comodule,
)
from .dgchain import ChainComplex, DgComodule, validate_dg_comodule
from .exactlin import LinMap, column_space, eye, hstack, inverse, kernel, kron
from .library import (
    divided_power_coalgebra, ground_coalgebra, grouplike_coalgebra, small_algebras,
    upper_triangular_coalgebra,
)
from .oplaxfun import (
    NatTransData, OplaxStructure, compose_oplax, nt_solution_space,
    oplax_from_coalgebra_map, oplax_from_comodule, oplax_from_grouplike_family,
    sum_oplax, transport_oplax, validate_oplax,
)
from .structures import (
    FinAlgebra, FinBialgebra, FinCoalgebra, transport_algebra, transport_coalgebra,
)


class SampleError(AssertionError):
    """A generator produced an invalid structure (a bug in the sampler)."""


def _assert(rep) -> None:
    if not rep.ok:
        raise SampleError(str(rep))


def random_matrix(rng: random.Random, rows: int, cols: int, lo: int = -2, hi: int = 2,
                  density: float = 1.0) -> LinMap:
    return LinMap.from_rows(
        [[rng.randint(lo, hi) if rng.random() < density else 0 for _ in range(cols)]
         for _ in range(rows)], cols)


def random_invertible(rng: random.Random, n: int) -> tuple[LinMap, LinMap]:
    while True:
        t = random_matrix(rng, n, n)
        t_inv = inverse(t)
        if t_inv is not None:
            return t, t_inv


def random_combination(rng: random.Random, basis: Sequence[LinMap], rows: int, cols: int
                       ) -> LinMap:
    out = LinMap.zero(rows, cols)
    for b in basis:
        out = out + rng.randint(-3, 3) * b
    return out


# -- coalgebras -----------------------------------------------------------------


@dataclass(frozen=True)
class PointedCoalgebra:
    """A coalgebra with a known group-like column.

    ``basis`` holds a basis of group-likes when the coalgebra has one.
    """

    coalgebra: FinCoalgebra
    grouplike: LinMap
    basis: LinMap | None = None


def _pointed_library() -> list[PointedCoalgebra]:
    def e0(n):
        return LinMap.from_sparse(n, 1, [(0, 0, 1)])
    return [
        PointedCoalgebra(ground_coalgebra(), e0(1), eye(1)),
        PointedCoalgebra(grouplike_coalgebra(2), e0(2), eye(2)),
        PointedCoalgebra(grouplike_coalgebra(3), e0(3), eye(3)),
        PointedCoalgebra(divided_power_coalgebra(2), e0(2)),
        PointedCoalgebra(divided_power_coalgebra(3), e0(3)),
        PointedCoalgebra(upper_triangular_coalgebra(), e0(3)),
    ]


def pointed_bialgebra(h: FinBialgebra) -> PointedCoalgebra:
    """The unit of a bialgebra is group-like."""
    return PointedCoalgebra(h.coalgebra, h.unit)


def transport_pointed(p: PointedCoalgebra, t: LinMap, t_inv: LinMap) -> PointedCoalgebra:
    return PointedCoalgebra(transport_coalgebra(p.coalgebra, t, t_inv), t @ p.grouplike,
                            None if p.basis is None else t @ p.basis)


def random_pointed_coalgebra(rng: random.Random, max_dim: int = 3,
                             grouplike: bool = False) -> PointedCoalgebra:
    pool = [p for p in _pointed_library() if p.coalgebra.dim <= max_dim
            and (p.basis is not None or not grouplike)]
    base = rng.choice(pool)
    if rng.random() < 0.3:
        return base
    return transport_pointed(base, *random_invertible(rng, base.coalgebra.dim))


def random_coalgebra(rng: random.Random, max_dim: int = 3) -> FinCoalgebra:
    return random_pointed_coalgebra(rng, max_dim).coalgebra


def random_algebra(rng: random.Random, max_dim: int = 3) -> FinAlgebra:
    base = rng.choice([a for a in small_algebras() if a.dim <= max_dim])
    if rng.random() < 0.3:
        return base
    return transport_algebra(base, *random_invertible(rng, base.dim))


# -- comodules ------------------------------------------------------------------


def generated_subcomodule(c: FinCoalgebra, x_dim: int, gens: LinMap) -> Comodule:
    """Smallest subcomodule of ``cofree(X)`` containing the columns of ``gens``."""
    big = cofree(c, x_dim)
    n = c.dim
    pieces = []
    for j in range(n):
        coord = LinMap.from_sparse(1, n, [(0, j, 1)])
        pieces.append(kron(eye(x_dim * n), coord) @ big.coaction @ gens)
    span = column_space(hstack(*pieces))
    sub = restrict_comodule(big, span)
    if sub is None:
        raise SampleError("generated span is not a subcomodule")
    return sub


def random_comodule(rng: random.Random, c: FinCoalgebra, max_dim: int = 4,
                    min_dim: int = 1) -> Comodule:
    """Subcomodule of a cofree comodule on random sparse vectors, in a random basis."""
    for _ in range(200):
        x_dim = rng.randint(1, 2)
        gens = random_matrix(rng, x_dim * c.dim, rng.randint(1, 2), density=0.4)
        v = generated_subcomodule(c, x_dim, gens)
        if min_dim <= v.dim <= max_dim:
            break
    else:
        if not min_dim <= c.dim <= max_dim:
            raise SampleError(f"no comodule of dimension {min_dim}..{max_dim} found")
        v = cofree(c, 1)
    if v.dim:
        v = transport_comodule(v, *random_invertible(rng, v.dim))
    _assert(validate_comodule(v))
    return v


def comodule_of_dim(rng: random.Random, p: PointedCoalgebra, dim: int) -> Comodule:
    """A random comodule of exactly ``dim``, padded with trivial lines if needed."""
    c = p.coalgebra
    if dim == 0:
        return Comodule(c, 0, LinMap.zero(0, 0))
    try:
        v = random_comodule(rng, c, max_dim=dim)
    except SampleError:
        v = Comodule(c, 0, LinMap.zero(0, 0))
    if v.dim < dim:
        v = comodule_direct_sum(v, trivial_comodule(c, dim - v.dim, p.grouplike))
        v = transport_comodule(v, *random_invertible(rng, dim))
    _assert(validate_comodule(v))
    return v


# -- oplax structures -----------------------------------------------------------


def _coalgebra_map_pair(rng: random.Random, max_dim: int
                        ) -> tuple[FinCoalgebra, PointedCoalgebra, LinMap]:
    """Two coalgebras and a coalgebra map between them."""
    if rng.random() < 0.5:
        base = random_pointed_coalgebra(rng, max_dim)
        t1, t1_inv = random_invertible(rng, base.coalgebra.dim)
        t2, t2_inv = random_invertible(rng, base.coalgebra.dim)
        c = transport_coalgebra(base.coalgebra, t1, t1_inv)
        return c, transport_pointed(base, t2, t2_inv), t2 @ t1_inv
    c = random_coalgebra(rng, max_dim)
    d = random_pointed_coalgebra(rng, max_dim)
    # c -> counit(c) g is a coalgebra map for a group-like g
    return c, d, d.grouplike @ c.counit


def random_oplax(rng: random.Random, max_coalg: int = 3, max_w: int = 3,
                 source: PointedCoalgebra | None = None,
                 target: PointedCoalgebra | None = None) -> OplaxStructure:
    """Mix of the constructions that always give valid structures.

    Kinds: carrier a target comodule, a coalgebra map, a group-like source with
    a family of coactions, composites, sums, and conjugation on the carrier.
    Fixing ``source`` or ``target`` restricts to the kinds that allow it.
    """
    if source is None and target is None:
        kind = rng.choice(["comodule", "map", "family", "composite", "sum"])
    elif source is not None and source.basis is not None:
        kind = rng.choice(["comodule", "family", "sum"])
    else:
        kind = rng.choice(["comodule", "sum"])
    src = source or random_pointed_coalgebra(rng, max_coalg, grouplike=kind == "family")
    tgt = target or random_pointed_coalgebra(rng, max_coalg)
    w = rng.randint(1, max_w)
    if kind == "comodule":
        s = oplax_from_comodule(src.coalgebra, comodule_of_dim(rng, tgt, w))
    elif kind == "family":
        n = src.coalgebra.dim
        s = oplax_from_grouplike_family(src.coalgebra, src.basis,
                                        [comodule_of_dim(rng, tgt, w) for _ in range(n)])
    elif kind == "map":
        c, d, f = _coalgebra_map_pair(rng, max_coalg)
        s = oplax_from_coalgebra_map(c, d.coalgebra, f, w)
    elif kind == "composite":
        c, d, f = _coalgebra_map_pair(rng, max_coalg)
        first = oplax_from_coalgebra_map(c, d.coalgebra, f, 1)
        second = oplax_from_comodule(d.coalgebra, comodule_of_dim(rng, tgt, w))
        s = compose_oplax(first, second)
    else:
        w1 = rng.randint(1, max_w)
        s = oplax_from_comodule(src.coalgebra, comodule_of_dim(rng, tgt, w1))
        if w1 < max_w:
            w2 = rng.randint(1, max_w - w1)
            s = sum_oplax(s, oplax_from_coalgebra_map(
                src.coalgebra, tgt.coalgebra, tgt.grouplike @ src.coalgebra.counit, w2))
    if rng.random() < 0.5:
        s = transport_oplax(s, *random_invertible(rng, s.carrier))
    _assert(validate_oplax(s))
    return s


def random_nat_trans(rng: random.Random, max_coalg: int = 3, max_w: int = 3
                     ) -> NatTransData:
    """Half of the cases are built to lift; the rest use a random matrix."""
    s = random_oplax(rng, max_coalg, max_w)
    mode = rng.choice(["transport", "solution", "random", "random"])
    if mode == "transport":
        t, t_inv = random_invertible(rng, s.carrier)
        return NatTransData(s, transport_oplax(s, t, t_inv), t)
    other = transport_oplax(s, *random_invertible(rng, s.carrier)) \
        if rng.random() < 0.5 else s
    if mode == "solution":
        basis = nt_solution_space(s, other)
        return NatTransData(s, other, random_combination(rng, basis, other.carrier, s.carrier))
    return NatTransData(s, other, random_matrix(rng, other.carrier, s.carrier))


def random_adjunction(rng: random.Random, w: int) -> AdjunctionData:
    if rng.random() < 0.3:
        return standard_adjunction(w)
    t, _ = random_invertible(rng, w)
    return twisted_adjunction(t)


def random_comodule_morphism(rng: random.Random, v: Comodule, w: Comodule) -> LinMap:
    return random_combination(rng, comodule_hom_space(v, w), w.dim, v.dim)


# -- chain complexes ------------------------------------------------------------


def random_complex(rng: random.Random, max_total: int = 8, max_len: int = 3) -> ChainComplex:
    length = rng.randint(1, max_len)
    lo = rng.randint(-1, 1)
    dims = [0] * length
    budget = rng.randint(1, max_total)
    for _ in range(budget):
        dims[rng.randrange(length)] += 1
    diffs = []
    for k in range(length - 1):
        # d_{k+1}: X_{k+1} -> X_k must land in ker d_k
        if k == 0:
            target = eye(dims[0])
        else:
            target = kernel(diffs[-1])
        coeff = random_matrix(rng, target.cols, dims[k + 1], density=0.6)
        diffs.append(target @ coeff)
    return ChainComplex(lo, tuple(dims), tuple(diffs))


def random_dg_comodule(rng: random.Random, h: FinBialgebra, max_total: int = 4,
                       max_len: int = 2) -> DgComodule:
    """Degreewise comodules joined by comodule maps with ``d o d = 0``."""
    c = h.coalgebra
    pointed = pointed_bialgebra(h)
    length = rng.randint(1, max_len)
    lo = rng.randint(-1, 1)
    dims = [0] * length
    for _ in range(rng.randint(1, max_total)):
        dims[rng.randrange(length)] += 1
    pieces = [comodule_of_dim(rng, pointed, d) for d in dims]
    diffs = []
    for k in range(length - 1):
        src, tgt = pieces[k + 1], pieces[k]
        basis = comodule_hom_space(src, tgt)
        if k > 0 and basis:
            # keep the maps whose composite with the previous differential vanishes
            prev = diffs[-1]
            comp = LinMap.from_columns([(prev @ b).entries for b in basis],
                                       prev.rows * src.dim) if prev.rows * src.dim else None
            if comp is not None:
                ker = kernel(comp)
                basis = [sum((ker[i, j] * basis[i] for i in range(len(basis))),
                             LinMap.zero(tgt.dim, src.dim)) for j in range(ker.cols)]
        diffs.append(random_combination(rng, basis, tgt.dim, src.dim))
    cx = ChainComplex(lo, tuple(dims), tuple(diffs))
    total = cx.total
    nh = c.dim
    items = []
    off = 0
    for p in pieces:
        for r, col, v in p.coaction.nonzero():
            i, hh = divmod(r, nh)
            items.append(((off + i) * nh + hh, off + col, v))
        off += p.dim
    m = DgComodule(h, cx, LinMap.from_sparse(total * nh, total, items))
    _assert(validate_dg_comodule(m))
    return m


# -- modules and mutants ---------------------------------------------------------


def random_module(rng: random.Random, a: FinAlgebra, max_dim: int = 6) -> ModuleOverAlgebra:
    x = rng.randint(1, max(1, max_dim // a.dim))
    m = free_module(a, x)
    t, t_inv = random_invertible(rng, m.dim)
    return ModuleOverAlgebra(a, m.dim, t @ m.action @ kron(t_inv, eye(a.dim)))


def mutated_bialgebras(h: FinBialgebra, rng: random.Random, count: int = 8
                       ) -> list[FinBialgebra]:
    """Single-entry perturbations of each structure map."""
    out = []
    for k in range(count):
        which = k % 4
        maps = [h.comult, h.counit, h.mult, h.unit]
        m = maps[which]
        i, j = rng.randrange(m.rows), rng.randrange(m.cols)
        maps[which] = m + LinMap.from_sparse(m.rows, m.cols, [(i, j, rng.choice([1, -1, 2]))])
        out.append(FinBialgebra(FinCoalgebra(h.dim, maps[0], maps[1]),
                                FinAlgebra(h.dim, maps[2], maps[3])))
    return out
