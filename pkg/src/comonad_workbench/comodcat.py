"""Comodules over ``Q = - (x) C`` and modules over ``M = - (x) A``.

Right comodules only: a coaction is ``V -> V (x) C``; right modules act by
``V (x) A -> V``.  Hom spaces are solved exactly and returned with the
canonical kernel basis, so they compare with ``==``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .exactlin import (
    LinMap, ShapeError, coequalizer, equalizer, eye, hstack, kernel, kron,
    kron_apply, solve_factor, solve_left, vstack,
)
from .report import Report
from .structures import FinAlgebra, FinCoalgebra


class CoalgebraMismatch(ValueError):
    pass


@dataclass(frozen=True)
class Comodule:
    over: FinCoalgebra
    dim: int
    coaction: LinMap

    def check_shapes(self) -> None:
        c = self.over.dim
        if self.coaction.shape != (self.dim * c, self.dim):
            raise ShapeError(
                f"coaction must be {self.dim * c}x{self.dim}, got {self.coaction.shape}")


@dataclass(frozen=True)
class ComoduleMorphism:
    source: Comodule
    target: Comodule
    map: LinMap


@dataclass(frozen=True)
class ModuleOverAlgebra:
    over: FinAlgebra
    dim: int
    action: LinMap

    def check_shapes(self) -> None:
        a = self.over.dim
        if self.action.shape != (self.dim, self.dim * a):
            raise ShapeError(
                f"action must be {self.dim}x{self.dim * a}, got {self.action.shape}")


@dataclass(frozen=True)
class ModuleMorphism:
    source: ModuleOverAlgebra
    target: ModuleOverAlgebra
    map: LinMap


def _same_over(*objs) -> None:
    first = objs[0].over
    for o in objs[1:]:
        if o.over != first:
            raise CoalgebraMismatch("objects live over different (co)algebras")


# -- comodules ----------------------------------------------------------------


def validate_comodule(v: Comodule) -> Report:
    v.check_shapes()
    rep = Report("comodule")
    c = v.over
    rho = v.coaction
    iv, ic = eye(v.dim), eye(c.dim)
    rep.check_equal("coassociativity", kron_apply(rho, ic, rho), kron_apply(iv, c.comult, rho))
    rep.check_equal("counit", kron_apply(iv, c.counit, rho), iv)
    return rep


def intertwining_residual(f: ComoduleMorphism) -> LinMap:
    """``coaction_target o f - (f (x) id_C) o coaction_source``."""
    ic = eye(f.source.over.dim)
    return f.target.coaction @ f.map - kron_apply(f.map, ic, f.source.coaction)


def is_comodule_morphism(f: ComoduleMorphism) -> bool:
    if f.map.shape != (f.target.dim, f.source.dim):
        raise ShapeError("map does not match the comodules' dimensions")
    return intertwining_residual(f).is_zero()


def trivial_comodule(c: FinCoalgebra, dim: int, grouplike: LinMap) -> Comodule:
    """``v -> v (x) g`` for a group-like column ``g`` of ``C``."""
    return Comodule(c, dim, kron(eye(dim), grouplike))


def regular_comodule(c: FinCoalgebra) -> Comodule:
    return Comodule(c, c.dim, c.comult)


def cofree(c: FinCoalgebra, x_dim: int) -> Comodule:
    """``L^Q(X) = (X (x) C, id_X (x) comult)``."""
    return Comodule(c, x_dim * c.dim, kron(eye(x_dim), c.comult))


def cofree_transpose(v: Comodule, f: LinMap) -> ComoduleMorphism:
    """Linear ``f: V -> X`` to the comodule map ``V -> cofree(X)``."""
    x_dim = f.rows
    return ComoduleMorphism(v, cofree(v.over, x_dim),
                            kron(f, eye(v.over.dim)) @ v.coaction)


def cofree_untranspose(g: ComoduleMorphism, x_dim: int) -> LinMap:
    """Comodule map ``V -> cofree(X)`` back to ``V -> X`` through the counit."""
    return kron(eye(x_dim), g.source.over.counit) @ g.map


def cofree_map(c: FinCoalgebra, f: LinMap) -> ComoduleMorphism:
    """``L^Q(f) = f (x) id_C``."""
    return ComoduleMorphism(cofree(c, f.cols), cofree(c, f.rows), kron(f, eye(c.dim)))


def solve_intertwiners(src_dim: int, tgt_dim: int,
                       equations: Sequence[tuple[LinMap, LinMap, int]],
                       allowed: Sequence[tuple[int, int]] | None = None) -> list[LinMap]:
    """Basis of maps ``X: src -> tgt`` with ``T o X == (X (x) id_k) o S`` for all equations.

    Each equation is ``(T, S, k)`` with ``T: tgt -> tgt (x) K`` and
    ``S: src -> src (x) K``.  ``allowed`` restricts the unknown entries.
    The basis is the canonical kernel basis in row-major coordinates.
    """
    if allowed is None:
        allowed = [(i, j) for i in range(tgt_dim) for j in range(src_dim)]
    allowed = list(allowed)
    col_of = {ij: n for n, ij in enumerate(allowed)}
    rows: dict[tuple, dict[int, object]] = {}

    def add(key, col, val):
        row = rows.setdefault(key, {})
        nv = row.get(col, 0) + val
        if nv:
            row[col] = nv
        else:
            row.pop(col, None)

    for e, (t, s, k) in enumerate(equations):
        if t.shape != (tgt_dim * k, tgt_dim) or s.shape != (src_dim * k, src_dim):
            raise ShapeError("intertwining equation has inconsistent shapes")
        t_cols: dict[int, list] = {}
        for r, i, v in t.nonzero():
            t_cols.setdefault(i, []).append((r, v))
        s_rows = s.sparse_rows
        for (i, j), col in col_of.items():
            # (T X)[r, j] gets T[r, i]
            for r, v in t_cols.get(i, ()):
                add((e, r, j), col, v)
            # ((X (x) I) S)[(i, c), q] gets -S[(j, c), q]
            for c in range(k):
                for q, v in s_rows[j * k + c]:
                    add((e, i * k + c, q), col, -v)
    n = len(allowed)
    system = LinMap.from_sparse(
        len(rows), n,
        ((r, c, v) for r, row in enumerate(rows.values()) for c, v in row.items()))
    if not rows:
        system = LinMap.zero(0, n)
    basis = kernel(system)
    out = []
    for b in range(basis.cols):
        items = [(allowed[a][0], allowed[a][1], basis[a, b])
                 for a in range(n) if basis[a, b]]
        out.append(LinMap.from_sparse(tgt_dim, src_dim, items))
    return out


def comodule_hom_space(v: Comodule, w: Comodule) -> list[LinMap]:
    _same_over(v, w)
    return solve_intertwiners(v.dim, w.dim, [(w.coaction, v.coaction, v.over.dim)])


def in_span(basis: Sequence[LinMap], f: LinMap) -> bool:
    if not basis:
        return f.is_zero()
    cols = hstack(*[LinMap(b.rows * b.cols, 1, b.entries) for b in basis])
    return solve_factor(cols, LinMap(f.rows * f.cols, 1, f.entries)) is not None


def comodule_equalizer(f: ComoduleMorphism, g: ComoduleMorphism
                       ) -> tuple[Comodule, ComoduleMorphism]:
    """Equalizer of a parallel pair; coaction induced through ``solve_factor``."""
    if f.source != g.source or f.target != g.target:
        raise ValueError("not a parallel pair of comodule morphisms")
    v = f.source
    k, inc = equalizer(f.map, g.map)
    lifted = v.coaction @ inc
    coaction = solve_factor(kron(inc, eye(v.over.dim)), lifted)
    if coaction is None:
        raise ArithmeticError("coaction does not restrict to the equalizer")
    e = Comodule(v.over, k, coaction)
    return e, ComoduleMorphism(e, v, inc)


def comodule_product(vs: Sequence[Comodule], over: FinCoalgebra | None = None
                     ) -> tuple[Comodule, list[ComoduleMorphism]]:
    """Finite product as a direct sum with block-diagonal coaction."""
    if not vs:
        if over is None:
            raise ValueError("empty product needs the coalgebra")
        return Comodule(over, 0, LinMap.zero(0, 0)), []
    _same_over(*vs)
    c = vs[0].over
    dims = [v.dim for v in vs]
    # block coaction V_i -> V_i (x) C sits inside (sum V_i) (x) C
    total = sum(dims)
    items = []
    off = 0
    for v in vs:
        for r, col, val in v.coaction.nonzero():
            i, cc = divmod(r, c.dim)
            items.append(((off + i) * c.dim + cc, off + col, val))
        off += v.dim
    prod = Comodule(c, total, LinMap.from_sparse(total * c.dim, total, items))
    projections = []
    off = 0
    for v in vs:
        p = LinMap.from_sparse(v.dim, total, ((i, off + i, 1) for i in range(v.dim)))
        projections.append(ComoduleMorphism(prod, v, p))
        off += v.dim
    return prod, projections


def product_pairing(legs: Sequence[ComoduleMorphism], prod: Comodule) -> ComoduleMorphism:
    """The map into the product induced by a cone."""
    return ComoduleMorphism(legs[0].source, prod, vstack(*[l.map for l in legs]))


def comodule_direct_sum(*vs: Comodule) -> Comodule:
    return comodule_product(list(vs))[0]


def restrict_comodule(v: Comodule, inc: LinMap) -> Comodule | None:
    """Subcomodule spanned by the (independent) columns of ``inc``, if closed."""
    co = solve_factor(kron(inc, eye(v.over.dim)), v.coaction @ inc)
    if co is None:
        return None
    return Comodule(v.over, inc.cols, co)


def transport_comodule(v: Comodule, t: LinMap, t_inv: LinMap) -> Comodule:
    return Comodule(v.over, v.dim, kron(t, eye(v.over.dim)) @ v.coaction @ t_inv)


# -- modules ------------------------------------------------------------------


def validate_module(v: ModuleOverAlgebra) -> Report:
    v.check_shapes()
    rep = Report("module")
    a = v.over
    act = v.action
    iv, ia = eye(v.dim), eye(a.dim)
    rep.check_equal("associativity", act @ kron(act, ia), act @ kron(iv, a.mult))
    rep.check_equal("unit", act @ kron(iv, a.unit), iv)
    return rep


def free_module(a: FinAlgebra, x_dim: int) -> ModuleOverAlgebra:
    return ModuleOverAlgebra(a, x_dim * a.dim, kron(eye(x_dim), a.mult))


def module_residual(f: ModuleMorphism) -> LinMap:
    ia = eye(f.source.over.dim)
    return f.map @ f.source.action - f.target.action @ kron(f.map, ia)


def is_module_morphism(f: ModuleMorphism) -> bool:
    return module_residual(f).is_zero()


def module_hom_space(v: ModuleOverAlgebra, w: ModuleOverAlgebra) -> list[LinMap]:
    """Maps ``f`` with ``f o act_V = act_W o (f (x) id_A)``, solved on transposes."""
    _same_over(v, w)
    basis = solve_intertwiners(w.dim, v.dim,
                               [(v.action.transpose(), w.action.transpose(), v.over.dim)])
    return [b.transpose() for b in basis]


def module_coequalizer(f: ModuleMorphism, g: ModuleMorphism
                       ) -> tuple[ModuleOverAlgebra, ModuleMorphism]:
    if f.source != g.source or f.target != g.target:
        raise ValueError("not a parallel pair of module morphisms")
    w = f.target
    k, proj = coequalizer(f.map, g.map)
    action = solve_left(kron(proj, eye(w.over.dim)), proj @ w.action)
    if action is None:
        raise ArithmeticError("action does not descend to the coequalizer")
    q = ModuleOverAlgebra(w.over, k, action)
    return q, ModuleMorphism(w, q, proj)
