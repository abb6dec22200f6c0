"""Oplax comonad functors of the form ``F = - (x) W``.

A natural transformation ``F Q -> R F`` between ``X (x) C (x) W`` and
``X (x) W (x) D`` is ``id_X (x) b`` for a single matrix ``b: C (x) W -> W (x) D``,
so an oplax structure is just ``b`` subject to a counit square and a
comultiplication square.  Lifts to comodules, the inverse extraction, the
comonad-functor test and the 2-cell criterion all act on ``b`` directly.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Sequence

from .comodcat import (
    CoalgebraMismatch, Comodule, ComoduleMorphism, cofree, comodule_product,
    is_comodule_morphism,
)
from .exactlin import (
    LinMap, ShapeError, eye, inverse, is_invertible, kernel, kron, symmetry, tensor, vstack,
)
from .report import Report
from .structures import FinCoalgebra


@dataclass(frozen=True)
class OplaxStructure:
    source: FinCoalgebra
    target: FinCoalgebra
    carrier: int
    b: LinMap

    def check_shapes(self) -> None:
        c, d, w = self.source.dim, self.target.dim, self.carrier
        if self.b.shape != (w * d, c * w):
            raise ShapeError(f"b must be {w * d}x{c * w}, got {self.b.shape}")


@dataclass(frozen=True)
class NatTransData:
    source: OplaxStructure
    target: OplaxStructure
    a: LinMap


def validate_oplax(s: OplaxStructure) -> Report:
    s.check_shapes()
    rep = Report("oplax structure")
    c, d, w = s.source, s.target, s.carrier
    iw, ic, id_ = eye(w), eye(c.dim), eye(d.dim)
    b = s.b
    # C (x) W -> W is counit_C (x) id_W; the unit object swap is trivial
    rep.check_equal("counit square", kron(iw, d.counit) @ b,
                    symmetry(1, w) @ kron(c.counit, iw))
    rep.check_equal("comultiplication square",
                    kron(b, id_) @ kron(ic, b) @ kron(c.comult, iw),
                    kron(iw, d.comult) @ b)
    return rep


def identity_oplax(c: FinCoalgebra) -> OplaxStructure:
    return OplaxStructure(c, c, 1, eye(c.dim))


def forgetful_oplax(c: FinCoalgebra, w: int = 1) -> OplaxStructure:
    """``U_Q`` (tensored with ``W``) as an oplax functor into the ground comonad."""
    from .library import ground_coalgebra
    return OplaxStructure(c, ground_coalgebra(), w, kron(c.counit, eye(w)))


def oplax_from_coalgebra_map(c: FinCoalgebra, d: FinCoalgebra, f: LinMap,
                             w: int = 1) -> OplaxStructure:
    """``b = swap o (f (x) id_W)`` for a coalgebra map ``f: C -> D``."""
    return OplaxStructure(c, d, w, symmetry(d.dim, w) @ kron(f, eye(w)))


def oplax_from_comodule(c: FinCoalgebra, wmod: Comodule) -> OplaxStructure:
    """``b = coaction_W o (counit_C (x) id_W)``: ignores ``V``'s coaction entirely."""
    return OplaxStructure(c, wmod.over, wmod.dim,
                          wmod.coaction @ kron(c.counit, eye(wmod.dim)))


def oplax_from_grouplike_family(c: FinCoalgebra, grouplikes: LinMap,
                                coactions: Sequence[Comodule]) -> OplaxStructure:
    """Source ``C`` with a basis of group-likes (columns of ``grouplikes``).

    ``b(g_i (x) w) = coaction_i(w)`` for an arbitrary family of ``D``-comodule
    structures on one space ``W``.
    """
    w = coactions[0].dim
    d = coactions[0].over
    n = c.dim
    # b0 is b in the group-like basis; the C factor is then changed back
    b0 = LinMap.from_sparse(
        w * d.dim, n * w,
        ((r, i * w + col, v) for i, m in enumerate(coactions) for r, col, v in m.coaction.nonzero()))
    g_inv = inverse(grouplikes)
    if g_inv is None:
        raise ValueError("group-likes do not form a basis")
    return OplaxStructure(c, d, w, b0 @ kron(g_inv, eye(w)))


def transport_oplax(s: OplaxStructure, tw: LinMap, tw_inv: LinMap) -> OplaxStructure:
    """Conjugate the carrier by an isomorphism ``tw`` (an isomorphic lifting)."""
    b = kron(tw, eye(s.target.dim)) @ s.b @ kron(eye(s.source.dim), tw_inv)
    return OplaxStructure(s.source, s.target, s.carrier, b)


def sum_oplax(s1: OplaxStructure, s2: OplaxStructure) -> OplaxStructure:
    """Carrier ``W1 (+) W2``; the lift is the direct sum of the two lifts."""
    if s1.source != s2.source or s1.target != s2.target:
        raise CoalgebraMismatch("summands must share both comonads")
    c, d = s1.source.dim, s1.target.dim
    w1, w2 = s1.carrier, s2.carrier
    w = w1 + w2
    items = []
    for off, s in ((0, s1), (w1, s2)):
        ws = s.carrier
        for r, col, v in s.b.nonzero():
            wr, dr = divmod(r, d)
            cc, wc = divmod(col, ws)
            items.append(((off + wr) * d + dr, cc * w + off + wc, v))
    return OplaxStructure(s1.source, s1.target, w, LinMap.from_sparse(w * d, c * w, items))


def compose_oplax(s: OplaxStructure, t: OplaxStructure) -> OplaxStructure:
    """``t`` after ``s``: carrier ``W (x) W'`` and ``b'' = (id_W (x) b') o (b (x) id_W')``."""
    if s.target != t.source:
        raise CoalgebraMismatch("composable structures must share the middle comonad")
    w, w2 = s.carrier, t.carrier
    b = kron(eye(w), t.b) @ kron(s.b, eye(w2))
    return OplaxStructure(s.source, t.target, w * w2, b)


def lift_comodule(s: OplaxStructure, v: Comodule) -> Comodule:
    """``V (x) W`` with coaction ``(id_V (x) b) o (coaction_V (x) id_W)``."""
    if v.over != s.source:
        raise CoalgebraMismatch("comodule is not over the source comonad")
    w = s.carrier
    coaction = kron(eye(v.dim), s.b) @ kron(v.coaction, eye(w))
    return Comodule(s.target, v.dim * w, coaction)


def lift_morphism(s: OplaxStructure, f: ComoduleMorphism) -> ComoduleMorphism:
    return ComoduleMorphism(lift_comodule(s, f.source), lift_comodule(s, f.target),
                            kron(f.map, eye(s.carrier)))


def extract_oplax(source: FinCoalgebra, target: FinCoalgebra, carrier: int,
                  coaction: LinMap) -> OplaxStructure:
    """Recover ``b`` from the coaction a lifting assigns to ``cofree(K) (x) W``."""
    c, d, w = source.dim, target.dim, carrier
    if coaction.shape != (c * w * d, c * w):
        raise ShapeError(f"expected a {(c * w * d, c * w)} coaction, got {coaction.shape}")
    return OplaxStructure(source, target, w, kron(source.counit, eye(w * d)) @ coaction)


def comparison_map(s: OplaxStructure, x_dim: int) -> ComoduleMorphism:
    """``F_cog L^Q(X) -> L^R F(X)`` obtained from ``F U_Q = U_R F_cog`` by adjunction.

    The underlying linear map ``F U_Q L^Q X -> F X`` is ``id_X (x) counit_C (x) id_W``;
    its cofree transpose is the comparison.
    """
    lifted = lift_comodule(s, cofree(s.source, x_dim))
    target = cofree(s.target, x_dim * s.carrier)
    under = tensor(eye(x_dim), s.source.counit, eye(s.carrier))
    return ComoduleMorphism(lifted, target, kron(under, eye(s.target.dim)) @ lifted.coaction)


@dataclass
class ComonadFunctorResult:
    invertible: bool
    witness: LinMap
    comparisons_agree: bool
    report: Report


def is_comonad_functor(s: OplaxStructure, sample_dims: Sequence[int] | None = None,
                       seed: int = 0) -> ComonadFunctorResult:
    """Whether ``b`` is invertible; witness is the inverse or a kernel basis.

    Also checks on sampled spaces ``X`` that the comparison
    ``F_cog L^Q(X) -> L^R F(X)`` is invertible exactly when ``b`` is.
    """
    rep = Report("comonad functor")
    if sample_dims is None:
        rng = random.Random(seed)
        sample_dims = [rng.randint(1, 3) for _ in range(10)]
    inv = inverse(s.b)
    witness = inv if inv is not None else kernel(s.b)
    agree = True
    for x in sample_dims:
        comp = comparison_map(s, x)
        if not is_comodule_morphism(comp):
            rep.require(f"comparison at dim {x} is a comodule map", False)
            agree = False
        if is_invertible(comp.map) != (inv is not None or x == 0):
            rep.require(f"comparison at dim {x} invertible iff b is", False)
            agree = False
    return ComonadFunctorResult(inv is not None, witness, agree, rep)


def product_comparison(s: OplaxStructure, vs: Sequence[Comodule]) -> ComoduleMorphism:
    """``F_cog(prod V_i) -> prod F_cog(V_i)`` assembled from the lifted projections."""
    prod, projs = comodule_product(vs, over=s.source)
    target, _ = comodule_product([lift_comodule(s, v) for v in vs], over=s.target)
    lifted = lift_comodule(s, prod)
    legs = [lift_morphism(s, p).map for p in projs]
    m = vstack(*legs) if legs else LinMap.zero(0, lifted.dim)
    return ComoduleMorphism(lifted, target, m)


def nt_residual(n: NatTransData) -> LinMap:
    """``(a (x) id_D) o b - b' o (id_C (x) a)``."""
    s, t, a = n.source, n.target, n.a
    return kron(a, eye(s.target.dim)) @ s.b - t.b @ kron(eye(s.source.dim), a)


def nt_lifts(n: NatTransData, comodules: Sequence[Comodule] = (),
             ) -> tuple[bool, Report]:
    """Component criterion, cross-checked against the comodule-level criterion.

    ``id_V (x) a`` is tested as a comodule morphism between the two lifts for
    ``cofree(K)`` and every supplied ``V``.  The component equation must hold
    exactly when all of these pass; a single sample may miss a failure, and such
    samples are only noted.
    """
    s, t, a = n.source, n.target, n.a
    if s.source != t.source or s.target != t.target:
        raise CoalgebraMismatch("natural transformation between unrelated structures")
    if a.shape != (t.carrier, s.carrier):
        raise ShapeError(f"a must be {t.carrier}x{s.carrier}, got {a.shape}")
    rep = Report("2-cell lifts")
    residual = nt_residual(n)
    holds = residual.is_zero()
    if not holds:
        rep.check_equal("component equation", residual, LinMap.zero(*residual.shape))
    passing = []
    for k, v in enumerate([cofree(s.source, 1), *comodules]):
        ok = is_comodule_morphism(_whisker(n, v))
        passing.append(ok)
        if ok != holds and v.dim > 0:
            rep.notes.append(f"sample {k}: comodule criterion gives {ok}")
    rep.require("criteria agree", all(passing) == holds,
                f"component equation {holds}, comodule criterion {all(passing)}")
    return holds, rep


def _whisker(n: NatTransData, v: Comodule) -> ComoduleMorphism:
    return ComoduleMorphism(lift_comodule(n.source, v), lift_comodule(n.target, v),
                            kron(eye(v.dim), n.a))


def comodule_criterion(n: NatTransData, comodules: Sequence[Comodule]) -> bool:
    """Whether ``id_V (x) a`` is a comodule morphism on every sample."""
    return all(is_comodule_morphism(_whisker(n, v)) for v in comodules)


def nt_solution_space(s: OplaxStructure, t: OplaxStructure) -> list[LinMap]:
    """Basis of all ``a: W -> W'`` satisfying the component equation."""
    w, w2 = s.carrier, t.carrier
    n = w * w2
    if n == 0:
        return []
    # the residual is linear in a; one column per elementary matrix
    cols = [nt_residual(NatTransData(s, t, LinMap.from_sparse(w2, w, [(i, j, 1)]))).entries
            for i in range(w2) for j in range(w)]
    ker = kernel(LinMap.from_columns(cols, len(cols[0])))
    return [LinMap(w2, w, ker.column(k)) for k in range(ker.cols)]


def lift_pair_over_sum(s1: OplaxStructure, s2: OplaxStructure
                       ) -> OplaxStructure:
    """The structure on ``C1 (+) C2 -> D1 (+) D2`` over a shared carrier ``W``.

    Comodules over a direct-sum coalgebra are pairs of comodules, so this is the
    linear shadow of the product of two oplax functors.
    """
    if s1.carrier != s2.carrier:
        raise ValueError("shared carrier required")
    w = s1.carrier
    c1, c2 = s1.source.dim, s2.source.dim
    d1, d2 = s1.target.dim, s2.target.dim
    c, d = c1 + c2, d1 + d2
    items = []
    for s, c_off, d_off in ((s1, 0, 0), (s2, c1, d1)):
        ds = s.target.dim
        for r, col, v in s.b.nonzero():
            wr, dr = divmod(r, ds)
            cc, wc = divmod(col, w)
            items.append((wr * d + d_off + dr, (c_off + cc) * w + wc, v))
    return OplaxStructure(sum_coalgebra(s1.source, s2.source),
                          sum_coalgebra(s1.target, s2.target), w,
                          LinMap.from_sparse(w * d, c * w, items))


def sum_coalgebra(c1: FinCoalgebra, c2: FinCoalgebra) -> FinCoalgebra:
    """Direct sum ``C1 (+) C2`` (the coproduct of coalgebras)."""
    n1, n2 = c1.dim, c2.dim
    n = n1 + n2
    items = []
    for c, off in ((c1, 0), (c2, n1)):
        k = c.dim
        for r, col, v in c.comult.nonzero():
            a, b = divmod(r, k)
            items.append(((off + a) * n + off + b, off + col, v))
    counit = LinMap.from_rows([list(c1.counit.entries) + list(c2.counit.entries)], n) \
        if n else LinMap.zero(1, 0)
    return FinCoalgebra(n, LinMap.from_sparse(n * n, n, items), counit)


def comodule_over_sum(v1: Comodule, v2: Comodule, over: FinCoalgebra) -> Comodule:
    """``V1 (+) V2`` over ``C1 (+) C2``, each summand coacting through its own part."""
    c1 = v1.over.dim
    n = over.dim
    dim = v1.dim + v2.dim
    items = []
    for v, v_off, c_off in ((v1, 0, 0), (v2, v1.dim, c1)):
        k = v.over.dim
        for r, col, val in v.coaction.nonzero():
            i, cc = divmod(r, k)
            items.append(((v_off + i) * n + c_off + cc, v_off + col, val))
    return Comodule(over, dim, LinMap.from_sparse(dim * n, dim, items))
