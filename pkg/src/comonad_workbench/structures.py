"""Finite-dimensional coalgebras, algebras and bialgebras.

A coalgebra ``C`` represents the comonad ``Q = - (x) C`` on finite-dimensional
vector spaces, with ``w_X = id_X (x) comult`` and ``n_X = id_X (x) counit``.
Dually an algebra ``A`` represents the monad ``M = - (x) A``.  Conventions are
right-handed throughout: ``comult: C -> C (x) C`` and ``mult: A (x) A -> A``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Literal

from .exactlin import LinMap, ShapeError, eye, kron, kron_apply, shuffle, symmetry, tensor
from .report import Report


@dataclass(frozen=True)
class FinCoalgebra:
    dim: int
    comult: LinMap
    counit: LinMap

    def check_shapes(self) -> None:
        n = self.dim
        if self.comult.shape != (n * n, n):
            raise ShapeError(f"comult must be {n * n}x{n}, got {self.comult.shape}")
        if self.counit.shape != (1, n):
            raise ShapeError(f"counit must be 1x{n}, got {self.counit.shape}")


@dataclass(frozen=True)
class FinAlgebra:
    dim: int
    mult: LinMap
    unit: LinMap

    def check_shapes(self) -> None:
        n = self.dim
        if self.mult.shape != (n, n * n):
            raise ShapeError(f"mult must be {n}x{n * n}, got {self.mult.shape}")
        if self.unit.shape != (n, 1):
            raise ShapeError(f"unit must be {n}x1, got {self.unit.shape}")


@dataclass(frozen=True)
class FinBialgebra:
    coalgebra: FinCoalgebra
    algebra: FinAlgebra

    @property
    def dim(self) -> int:
        return self.coalgebra.dim

    @property
    def comult(self) -> LinMap:
        return self.coalgebra.comult

    @property
    def counit(self) -> LinMap:
        return self.coalgebra.counit

    @property
    def mult(self) -> LinMap:
        return self.algebra.mult

    @property
    def unit(self) -> LinMap:
        return self.algebra.unit

    def check_shapes(self) -> None:
        if self.coalgebra.dim != self.algebra.dim:
            raise ShapeError("coalgebra and algebra live on different spaces")
        self.coalgebra.check_shapes()
        self.algebra.check_shapes()


Kind = Literal["coalgebra", "algebra", "bialgebra"]


@dataclass(frozen=True)
class StructMorphism:
    map: LinMap
    kind: Kind
    source: FinCoalgebra | FinAlgebra | FinBialgebra
    target: FinCoalgebra | FinAlgebra | FinBialgebra


def validate_coalgebra(c: FinCoalgebra) -> Report:
    c.check_shapes()
    n = c.dim
    rep = Report("coalgebra")
    i = eye(n)
    d = c.comult
    rep.check_equal("coassociativity", kron_apply(d, i, d), kron_apply(i, d, d))
    rep.check_equal("left counit", kron(c.counit, i) @ d, i)
    rep.check_equal("right counit", kron(i, c.counit) @ d, i)
    return rep


def validate_algebra(a: FinAlgebra) -> Report:
    a.check_shapes()
    n = a.dim
    rep = Report("algebra")
    i = eye(n)
    m = a.mult
    mt = m.T
    rep.check_equal("associativity", kron_apply(mt, i, mt).T, kron_apply(i, mt, mt).T)
    rep.check_equal("left unit", m @ kron(a.unit, i), i)
    rep.check_equal("right unit", m @ kron(i, a.unit), i)
    return rep


def middle_four(n: int) -> LinMap:
    """``(a (x) b) (x) (c (x) d) -> (a (x) c) (x) (b (x) d)`` for four copies of dim ``n``."""
    return tensor(eye(n), symmetry(n, n), eye(n))


def validate_bialgebra(h: FinBialgebra) -> Report:
    """Coalgebra and algebra axioms plus the four compatibility squares."""
    h.check_shapes()
    rep = Report("bialgebra")
    rep.extend(validate_coalgebra(h.coalgebra))
    rep.extend(validate_algebra(h.algebra))
    n = h.dim
    d, e, m, u = h.comult, h.counit, h.mult, h.unit
    rep.check_equal("comult multiplicative",
                    d @ m, kron(m, m) @ middle_four(n) @ kron(d, d))
    rep.check_equal("comult unital", d @ u, kron(u, u))
    rep.check_equal("counit multiplicative", e @ m, kron(e, e))
    rep.check_equal("counit unital", e @ u, eye(1))
    return rep


def dual_coalgebra(a: FinAlgebra) -> FinCoalgebra:
    """The coalgebra on ``A*``; ``(A (x) A)*`` is identified with ``A* (x) A*``."""
    return FinCoalgebra(a.dim, a.mult.transpose(), a.unit.transpose())


def dual_algebra(c: FinCoalgebra) -> FinAlgebra:
    return FinAlgebra(c.dim, c.comult.transpose(), c.counit.transpose())


def dual_bialgebra(h: FinBialgebra) -> FinBialgebra:
    return FinBialgebra(dual_coalgebra(h.algebra), dual_algebra(h.coalgebra))


def check_morphism(mor: StructMorphism) -> Report:
    f = mor.map
    src, tgt = mor.source, mor.target
    if f.shape != (tgt.dim, src.dim):
        raise ShapeError(f"morphism is {f.shape}, expected {(tgt.dim, src.dim)}")
    rep = Report(f"{mor.kind} morphism")
    if mor.kind in ("coalgebra", "bialgebra"):
        cs = src.coalgebra if isinstance(src, FinBialgebra) else src
        ct = tgt.coalgebra if isinstance(tgt, FinBialgebra) else tgt
        rep.check_equal("preserves comult", ct.comult @ f, kron(f, f) @ cs.comult)
        rep.check_equal("preserves counit", ct.counit @ f, cs.counit)
    if mor.kind in ("algebra", "bialgebra"):
        a_s = src.algebra if isinstance(src, FinBialgebra) else src
        a_t = tgt.algebra if isinstance(tgt, FinBialgebra) else tgt
        rep.check_equal("preserves mult", f @ a_s.mult, a_t.mult @ kron(f, f))
        rep.check_equal("preserves unit", f @ a_s.unit, a_t.unit)
    return rep


def comonad_components(c: FinCoalgebra, x_dim: int) -> tuple[LinMap, LinMap]:
    """``(w_X, n_X)`` for ``Q = - (x) C`` at a space of dimension ``x_dim``."""
    ix = eye(x_dim)
    return kron(ix, c.comult), kron(ix, c.counit)


def check_comonad_laws(c: FinCoalgebra, x_dim: int) -> Report:
    """The comonad identities of ``- (x) C`` at ``X`` as matrix equations."""
    rep = Report(f"comonad laws at dim {x_dim}")
    w, n = comonad_components(c, x_dim)
    w_q, n_q = comonad_components(c, x_dim * c.dim)  # components at Q(X)
    q_w = kron(w, eye(c.dim))                        # Q applied to w_X
    q_n = kron(n, eye(c.dim))
    rep.check_equal("coassociativity", q_w @ w, w_q @ w)
    rep.check_equal("left counit", n_q @ w, eye(x_dim * c.dim))
    rep.check_equal("right counit", q_n @ w, eye(x_dim * c.dim))
    return rep


def monad_components(a: FinAlgebra, x_dim: int) -> tuple[LinMap, LinMap]:
    ix = eye(x_dim)
    return kron(ix, a.mult), kron(ix, a.unit)


def tensor_coalgebra(c1: FinCoalgebra, c2: FinCoalgebra) -> FinCoalgebra:
    """``C1 (x) C2`` with ``(comult1 (x) comult2)`` followed by the middle swap."""
    n1, n2 = c1.dim, c2.dim
    swap = shuffle([n1, n1, n2, n2], [0, 2, 1, 3])
    return FinCoalgebra(n1 * n2, swap @ kron(c1.comult, c2.comult),
                        kron(c1.counit, c2.counit))


def tensor_algebra(a1: FinAlgebra, a2: FinAlgebra) -> FinAlgebra:
    n1, n2 = a1.dim, a2.dim
    swap = shuffle([n1, n2, n1, n2], [0, 2, 1, 3])
    return FinAlgebra(n1 * n2, kron(a1.mult, a2.mult) @ swap, kron(a1.unit, a2.unit))


def tensor_bialgebra(h1: FinBialgebra, h2: FinBialgebra) -> FinBialgebra:
    return FinBialgebra(tensor_coalgebra(h1.coalgebra, h2.coalgebra),
                        tensor_algebra(h1.algebra, h2.algebra))


def transport_coalgebra(c: FinCoalgebra, t: LinMap, t_inv: LinMap) -> FinCoalgebra:
    """Structure carried along the isomorphism ``t``; ``t`` becomes a coalgebra map."""
    return FinCoalgebra(c.dim, kron(t, t) @ c.comult @ t_inv, c.counit @ t_inv)


def transport_algebra(a: FinAlgebra, t: LinMap, t_inv: LinMap) -> FinAlgebra:
    return FinAlgebra(a.dim, t @ a.mult @ kron(t_inv, t_inv), t @ a.unit)
