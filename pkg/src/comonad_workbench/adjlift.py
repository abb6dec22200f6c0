"""Kelly's bijection and the right adjoints of lifted functors.

The left adjoint is ``L = - (x) W`` and the right adjoint ``R = - (x) W*``, with
the adjunction given by explicit ``coev: K -> W (x) W*`` and
``ev: W* (x) W -> K``.  An oplax structure ``b`` on ``L`` corresponds to a lax
structure ``bhat: W* (x) C -> D (x) W*`` on ``R``; the lifted right adjoint of a
``D``-comodule ``Z`` is the equalizer of a coreflexive pair of maps between
cofree ``C``-comodules built from ``Z``'s coaction and from ``bhat``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Sequence

from .comodcat import (
    CoalgebraMismatch, Comodule, ComoduleMorphism, cofree, comodule_equalizer,
    comodule_hom_space, is_comodule_morphism, validate_comodule,
)
from .exactlin import (
    LinMap, ShapeError, eye, inverse, kron, rank, solve_factor, symmetry, tensor,
)
from .hopf import comodule_tensor
from .oplaxfun import OplaxStructure, compose_oplax, lift_comodule, validate_oplax
from .report import InvalidStructure, Report
from .structures import FinBialgebra, FinCoalgebra, validate_coalgebra


@dataclass(frozen=True)
class AdjunctionData:
    """``- (x) W`` left adjoint to ``- (x) W*``; ``w`` is ``dim W = dim W*``."""

    w: int
    coev: LinMap  # K -> W (x) W*
    ev: LinMap    # W* (x) W -> K

    def check_shapes(self) -> None:
        n = self.w
        if self.coev.shape != (n * n, 1) or self.ev.shape != (1, n * n):
            raise ShapeError(f"coev/ev must be {n * n}x1 and 1x{n * n}")


def standard_adjunction(w: int) -> AdjunctionData:
    coev = LinMap.from_sparse(w * w, 1, ((i * w + i, 0, 1) for i in range(w)))
    return AdjunctionData(w, coev, coev.transpose())


def twisted_adjunction(p: LinMap) -> AdjunctionData:
    """``coev = sum P_ij e_i (x) e_j*`` with ``ev`` given by ``P^-1``."""
    q = inverse(p)
    if q is None:
        raise ValueError("twist must be invertible")
    w = p.rows
    return AdjunctionData(w, LinMap(w * w, 1, p.entries), LinMap(1, w * w, q.entries))


def validate_adjunction(adj: AdjunctionData) -> Report:
    adj.check_shapes()
    rep = Report("adjunction")
    i = eye(adj.w)
    rep.check_equal("left triangle", kron(i, adj.ev) @ kron(adj.coev, i), i)
    rep.check_equal("right triangle", kron(adj.ev, i) @ kron(i, adj.coev), i)
    return rep


@dataclass(frozen=True)
class LaxStructure:
    """``bhat: W* (x) C -> D (x) W*``, the component of ``QR -> RO``."""

    source: FinCoalgebra
    target: FinCoalgebra
    carrier: int
    bhat: LinMap

    def check_shapes(self) -> None:
        c, d, w = self.source.dim, self.target.dim, self.carrier
        if self.bhat.shape != (d * w, w * c):
            raise ShapeError(f"bhat must be {d * w}x{w * c}, got {self.bhat.shape}")


def validate_lax(s: LaxStructure) -> Report:
    s.check_shapes()
    rep = Report("lax structure")
    c, d, w = s.source, s.target, s.carrier
    iw = eye(w)
    bh = s.bhat
    rep.check_equal("counit square", kron(d.counit, iw) @ bh, kron(iw, c.counit))
    rep.check_equal("comultiplication square",
                    kron(d.comult, iw) @ bh,
                    kron(eye(d.dim), bh) @ kron(bh, eye(c.dim)) @ kron(iw, c.comult))
    return rep


def _require(*reports: Report) -> None:
    for rep in reports:
        if not rep.ok:
            raise InvalidStructure(rep)


def kelly_oplax_to_lax(adj: AdjunctionData, s: OplaxStructure) -> LaxStructure:
    """Insert ``coev``, apply ``b``, then close with ``ev``."""
    _require(validate_adjunction(adj), validate_oplax(s))
    if s.carrier != adj.w:
        raise ShapeError("oplax carrier does not match the adjunction")
    w, c, d = adj.w, s.source.dim, s.target.dim
    iw = eye(w)
    bhat = (kron(adj.ev, eye(d * w))
            @ tensor(iw, s.b, iw)
            @ tensor(iw, eye(c), adj.coev))
    return LaxStructure(s.source, s.target, w, bhat)


def kelly_lax_to_oplax(adj: AdjunctionData, s: LaxStructure) -> OplaxStructure:
    _require(validate_adjunction(adj), validate_lax(s))
    if s.carrier != adj.w:
        raise ShapeError("lax carrier does not match the adjunction")
    w, c, d = adj.w, s.source.dim, s.target.dim
    iw = eye(w)
    b = (kron(eye(w * d), adj.ev)
         @ tensor(iw, s.bhat, iw)
         @ tensor(adj.coev, eye(c), iw))
    return OplaxStructure(s.source, s.target, w, b)


# -- lifted right adjoint -----------------------------------------------------


@dataclass
class LiftedRightAdjoint:
    adj: AdjunctionData
    structure: OplaxStructure
    lax: LaxStructure
    z: Comodule
    pair: tuple[ComoduleMorphism, ComoduleMorphism]
    result: Comodule
    inclusion: LinMap  # result -> Z (x) W* (x) C

    def flat(self, phi: LinMap) -> LinMap:
        """``V (x) W -> Z`` to ``V -> Z (x) W*`` through ``coev``."""
        v = phi.cols // self.adj.w
        return kron(phi, eye(self.adj.w)) @ kron(eye(v), self.adj.coev)

    def transpose(self, v: Comodule, phi: LinMap) -> LinMap:
        """Comodule map ``lift(V) -> Z`` to a comodule map ``V -> result``."""
        g = kron(self.flat(phi), eye(v.over.dim)) @ v.coaction
        psi = solve_factor(self.inclusion, g)
        if psi is None:
            raise ArithmeticError("transpose does not land in the equalizer")
        return psi

    def untranspose(self, v: Comodule, psi: LinMap) -> LinMap:
        c = self.structure.source
        to_zw = tensor(eye(self.z.dim * self.adj.w), c.counit) @ self.inclusion @ psi
        return kron(eye(self.z.dim), self.adj.ev) @ kron(to_zw, eye(self.adj.w))


def coreflexive_pair(adj: AdjunctionData, lax: LaxStructure, z: Comodule
                     ) -> tuple[ComoduleMorphism, ComoduleMorphism, LinMap]:
    """``L^Q R Z => L^Q R O Z`` and their common retraction."""
    c, d = lax.source, lax.target
    nz, w = z.dim, adj.w
    src = cofree(c, nz * w)
    tgt = cofree(c, nz * d.dim * w)
    first = kron(z.coaction, eye(w * c.dim))
    second = kron(eye(nz), kron(lax.bhat, eye(c.dim)) @ kron(eye(w), c.comult))
    retraction = tensor(eye(nz), d.counit, eye(w * c.dim))
    return ComoduleMorphism(src, tgt, first), ComoduleMorphism(src, tgt, second), retraction


def lifted_right_adjoint(adj: AdjunctionData, s: OplaxStructure, z: Comodule,
                         certify_on: Sequence[Comodule] = (), seed: int = 0
                         ) -> LiftedRightAdjoint:
    """Equalizer of the coreflexive pair; optionally certified on sample comodules."""
    if z.over != s.target:
        raise CoalgebraMismatch("Z must be a comodule over the target comonad")
    _require(validate_comodule(z))
    lax = kelly_oplax_to_lax(adj, s)
    f, g, _ = coreflexive_pair(adj, lax, z)
    e, inc = comodule_equalizer(f, g)
    ra = LiftedRightAdjoint(adj, s, lax, z, (f, g), e, inc.map)
    if certify_on:
        rep = certify_adjunction(ra, certify_on, seed)
        if not rep.ok:
            raise ArithmeticError(str(rep))
    return ra


def random_combination(basis: Sequence[LinMap], rng: random.Random, shape) -> LinMap:
    out = LinMap.zero(*shape)
    for b in basis:
        out = out + rng.randint(-2, 2) * b
    return out


def right_adjoint_on_morphism(ra: LiftedRightAdjoint, other: LiftedRightAdjoint,
                              k: LinMap) -> LinMap | None:
    """``R(k): ra.result -> other.result`` for ``k: Z -> Z'``."""
    c = ra.structure.source.dim
    pushed = kron(k, eye(ra.adj.w * c)) @ ra.inclusion
    return solve_factor(other.inclusion, pushed)


def certify_adjunction(ra: LiftedRightAdjoint, comodules: Sequence[Comodule],
                       seed: int = 0) -> Report:
    """Explicit bijection ``Hom(lift V, Z) ~ Hom(V, R Z)`` and naturality in ``V``."""
    rng = random.Random(seed)
    rep = Report("lifted adjunction")
    s, z, e = ra.structure, ra.z, ra.result
    f, g = ra.pair
    _, _, retraction = coreflexive_pair(ra.adj, ra.lax, z)
    n = f.source.dim
    rep.check_equal("coreflexive retraction (first)", retraction @ f.map, eye(n))
    rep.check_equal("coreflexive retraction (second)", retraction @ g.map, eye(n))
    for k, v in enumerate(comodules):
        lv = lift_comodule(s, v)
        left = comodule_hom_space(lv, z)
        right = comodule_hom_space(v, e)
        tag = f"sample {k}"
        if not rep.require(f"{tag}: hom dimensions", len(left) == len(right),
                           f"{len(left)} vs {len(right)}"):
            continue
        images = []
        for phi in left:
            psi = ra.transpose(v, phi)
            images.append(psi)
            rep.require(f"{tag}: transpose is a comodule map",
                        is_comodule_morphism(ComoduleMorphism(v, e, psi)))
            rep.check_equal(f"{tag}: untranspose o transpose", ra.untranspose(v, psi), phi)
        for psi in right:
            rep.check_equal(f"{tag}: transpose o untranspose",
                            ra.transpose(v, ra.untranspose(v, psi)), psi)
        if images:
            stacked = LinMap.from_columns([m.entries for m in images], e.dim * v.dim)
            rep.require(f"{tag}: transpose injective", rank(stacked) == len(images))
        # naturality in V along one random endomorphism
        ends = comodule_hom_space(v, v)
        if left and ends:
            kv = random_combination(ends, rng, (v.dim, v.dim))
            phi = random_combination(left, rng, (z.dim, lv.dim))
            rep.check_equal(f"{tag}: naturality in V",
                            ra.transpose(v, phi @ kron(kv, eye(s.carrier))),
                            ra.transpose(v, phi) @ kv)
    return rep


# -- mapping comodules and enriched homs --------------------------------------


def right_tensor_oplax(h: FinBialgebra, v: Comodule) -> OplaxStructure:
    """``b_V(h (x) v) = v_0 (x) v_1 h``.

    The lift of ``W`` is ``comodule_tensor(V, W)`` moved onto ``W (x) V`` by the swap,
    so ``- (x) V`` with this structure is left tensoring by ``V``.
    """
    n = h.dim
    b = kron(eye(v.dim), h.mult) @ kron(v.coaction, eye(n)) @ symmetry(n, v.dim)
    return OplaxStructure(h.coalgebra, h.coalgebra, v.dim, b)


def left_tensor_oplax(h: FinBialgebra, w: Comodule) -> OplaxStructure:
    """``b^W: H (x) W -> W (x) H``; the lift of ``V`` is ``comodule_tensor(V, W)``."""
    n = h.dim
    b = kron(eye(w.dim), h.mult) @ kron(symmetry(n, w.dim), eye(n)) @ kron(eye(n), w.coaction)
    return OplaxStructure(h.coalgebra, h.coalgebra, w.dim, b)


def _over(h: FinBialgebra, *vs: Comodule) -> None:
    for v in vs:
        if v.over != h.coalgebra:
            raise CoalgebraMismatch("comodule is not over this bialgebra")


def mapping_adjoint(h: FinBialgebra, z: Comodule, v: Comodule) -> LiftedRightAdjoint:
    _over(h, z, v)
    return lifted_right_adjoint(standard_adjunction(v.dim), right_tensor_oplax(h, v), z)


def mapping_comodule(h: FinBialgebra, z: Comodule, v: Comodule) -> Comodule:
    """``<Z, V>``: right adjoint to ``W -> V (x) W``, inside ``Z (x) V* (x) H``."""
    return mapping_adjoint(h, z, v).result


def enriched_adjoint(h: FinBialgebra, w: Comodule, z: Comodule) -> LiftedRightAdjoint:
    _over(h, w, z)
    return lifted_right_adjoint(standard_adjunction(w.dim), left_tensor_oplax(h, w), z)


def enriched_hom(h: FinBialgebra, w: Comodule, z: Comodule) -> Comodule:
    """``{W, Z}``: right adjoint to ``V -> V (x) W``."""
    return enriched_adjoint(h, w, z).result


# -- graded-hom oracle for group bialgebras -----------------------------------


def group_law(h: FinBialgebra) -> list[list[int]]:
    """Multiplication table when the basis consists of group-likes closed under ``mult``."""
    n = h.dim
    table = []
    for i in range(n):
        if h.comult.column(i) != LinMap.from_sparse(n * n, 1, [(i * n + i, 0, 1)]).entries:
            raise ValueError("basis is not group-like")
        row = []
        for j in range(n):
            col = h.mult.column(i * n + j)
            hits = [k for k, x in enumerate(col) if x]
            if len(hits) != 1 or col[hits[0]] != 1:
                raise ValueError("basis is not closed under multiplication")
            row.append(hits[0])
        table.append(row)
    return table


def graded_dims(v: Comodule) -> list[int]:
    """``dim V_g`` for each basis group-like ``g``."""
    n = v.over.dim
    out = []
    for g in range(n):
        proj = kron(eye(v.dim), LinMap.from_sparse(1, n, [(0, g, 1)])) @ v.coaction
        out.append(rank(proj))
    return out


def oracle_mapping_dims(h: FinBialgebra, z: Comodule, v: Comodule) -> list[int]:
    """``dim <Z,V>_b = sum_a dim V_a * dim Z_{a b}``, by enumerating degrees."""
    t = group_law(h)
    dv, dz = graded_dims(v), graded_dims(z)
    n = h.dim
    return [sum(dv[a] * dz[t[a][b]] for a in range(n)) for b in range(n)]


def oracle_enriched_dims(h: FinBialgebra, w: Comodule, z: Comodule) -> list[int]:
    """``dim {W,Z}_a = sum_b dim W_b * dim Z_{a b}``."""
    t = group_law(h)
    dw, dz = graded_dims(w), graded_dims(z)
    n = h.dim
    return [sum(dw[b] * dz[t[a][b]] for b in range(n)) for a in range(n)]


# -- TCE ----------------------------------------------------------------------


@dataclass
class TceResult:
    report: Report
    dims: list[tuple[int, int, int]] = field(default_factory=list)


def verify_tce(h: FinBialgebra, triples: Sequence[tuple[Comodule, Comodule, Comodule]],
               seed: int = 0) -> TceResult:
    """Both adjunction bijections of every triple, inverses and naturality.

    ``Hom(V (x) W, Z) ~ Hom(W, <Z,V>)`` goes through the swap
    ``W (x) V -> V (x) W``; ``Hom(V (x) W, Z) ~ Hom(V, {W,Z})`` is direct.
    """
    rng = random.Random(seed)
    out = TceResult(Report("TCE"))
    rep = out.report
    for k, (v, w, z) in enumerate(triples):
        tag = f"triple {k}"
        bad = False
        for name, m in (("V", v), ("W", w), ("Z", z)):
            r = validate_comodule(m)
            if not r.ok:
                rep.extend(r, f"{tag}: {name} ")
                bad = True
        if bad:
            continue
        vw = comodule_tensor(h, v, w)
        hom = comodule_hom_space(vw, z)
        mapping = mapping_adjoint(h, z, v)
        enriched = enriched_adjoint(h, w, z)
        hom_w = comodule_hom_space(w, mapping.result)
        hom_v = comodule_hom_space(v, enriched.result)
        out.dims.append((len(hom), len(hom_w), len(hom_v)))
        if not rep.require(f"{tag}: dimensions", len(hom) == len(hom_w) == len(hom_v),
                           f"{len(hom)}, {len(hom_w)}, {len(hom_v)}"):
            continue
        swap = symmetry(w.dim, v.dim)     # W (x) V -> V (x) W
        unswap = symmetry(v.dim, w.dim)

        def alpha(phi):
            return mapping.transpose(w, phi @ swap)

        def alpha_inv(psi):
            return mapping.untranspose(w, psi) @ unswap

        def beta(phi):
            return enriched.transpose(v, phi)

        for phi in hom:
            rep.check_equal(f"{tag}: cotensor inverse", alpha_inv(alpha(phi)), phi)
            rep.check_equal(f"{tag}: enriched inverse",
                            enriched.untranspose(v, beta(phi)), phi)
        for psi in hom_w:
            rep.check_equal(f"{tag}: cotensor inverse (other side)", alpha(alpha_inv(psi)), psi)
        for psi in hom_v:
            rep.check_equal(f"{tag}: enriched inverse (other side)",
                            beta(enriched.untranspose(v, psi)), psi)
        if not hom:
            continue
        phi = random_combination(hom, rng, (z.dim, vw.dim))
        kv = random_combination(comodule_hom_space(v, v), rng, (v.dim, v.dim))
        kw = random_combination(comodule_hom_space(w, w), rng, (w.dim, w.dim))
        kz = random_combination(comodule_hom_space(z, z), rng, (z.dim, z.dim))
        rep.check_equal(f"{tag}: naturality in V",
                        beta(phi @ kron(kv, eye(w.dim))), beta(phi) @ kv)
        rep.check_equal(f"{tag}: naturality in W",
                        alpha(phi @ kron(eye(v.dim), kw)), alpha(phi) @ kw)
        rz = right_adjoint_on_morphism(mapping, mapping, kz)
        if rep.require(f"{tag}: <k,V> exists", rz is not None):
            rep.check_equal(f"{tag}: naturality in Z", alpha(kz @ phi), rz @ alpha(phi))
    return out


# -- the comonad LQR ----------------------------------------------------------


@dataclass(frozen=True)
class Factorization:
    comonad: FinCoalgebra           # on W* (x) C (x) W
    first: OplaxStructure           # (L, A'): Q -> LQR, carrier W
    second: OplaxStructure          # (Id, A''): LQR -> O, carrier K


def factor_comonad(adj: AdjunctionData, s: OplaxStructure) -> Factorization:
    _require(validate_adjunction(adj), validate_oplax(s))
    if s.carrier != adj.w:
        raise ShapeError("oplax carrier does not match the adjunction")
    c, d, w = s.source, s.target, adj.w
    iw, ic = eye(w), eye(c.dim)
    comult = tensor(iw, ic, adj.coev, ic, iw) @ tensor(iw, c.comult, iw)
    counit = adj.ev @ tensor(iw, c.counit, iw)
    e = FinCoalgebra(w * c.dim * w, comult, counit)
    first = OplaxStructure(c, e, w, kron(adj.coev, eye(c.dim * w)))
    second = OplaxStructure(e, d, 1, kron(adj.ev, eye(d.dim)) @ kron(iw, s.b))
    return Factorization(e, first, second)


def check_factorization(adj: AdjunctionData, s: OplaxStructure, f: Factorization) -> Report:
    rep = Report("factorization")
    rep.extend(validate_coalgebra(f.comonad), "comonad ")
    rep.extend(validate_oplax(f.first), "first ")
    rep.extend(validate_oplax(f.second), "second ")
    rep.check_equal("composite", compose_oplax(f.first, f.second).b, s.b)
    return rep


# -- strength -----------------------------------------------------------------


def check_strength(k_mult: LinMap, k_unit: LinMap, w: int, kappa: LinMap) -> Report:
    """Strength ``kappa: K (x) W -> W`` of ``- (x) W`` against ``- (x) K``.

    The two squares say ``kappa`` is compatible with ``mult_K`` and ``unit_K``.
    """
    k = k_unit.rows
    if kappa.shape != (w, k * w):
        raise ShapeError(f"strength must be {w}x{k * w}, got {kappa.shape}")
    rep = Report("strength")
    rep.check_equal("associativity square", kappa @ kron(k_mult, eye(w)),
                    kappa @ kron(eye(k), kappa))
    rep.check_equal("unit square", kappa @ kron(k_unit, eye(w)), eye(w))
    return rep


def check_strong_adjunction(adj: AdjunctionData, kappa_l: LinMap, kappa_r: LinMap) -> Report:
    """Unit and counit strength squares for strengths on ``W`` and ``W*``."""
    rep = Report("strong adjunction")
    rep.check_equal("unit square", kron(kappa_l, kappa_r) @ adj.coev, adj.coev)
    rep.check_equal("counit square", adj.ev @ kron(kappa_r, kappa_l), adj.ev)
    return rep


def strong_transposes(adj: AdjunctionData, kappa_l: LinMap, kappa_r: LinMap,
                      x: int, y: int) -> tuple[LinMap, LinMap]:
    """Matrices of ``{LX,Y} -> {X,RY}`` and back, on vectorized hom spaces."""
    w = adj.w
    n_left, n_right = y * x * w, y * w * x
    phi_cols, psi_cols = [], []
    for idx in range(n_left):
        g = LinMap(y, x * w, tuple(1 if t == idx else 0 for t in range(n_left)))
        phi_cols.append((kron(g, kappa_r) @ kron(eye(x), adj.coev)).entries)
    for idx in range(n_right):
        hmap = LinMap(y * w, x, tuple(1 if t == idx else 0 for t in range(n_right)))
        psi_cols.append((kron(eye(y), adj.ev) @ kron(hmap, kappa_l)).entries)
    return (LinMap.from_columns(phi_cols, n_right) if n_left else LinMap.zero(n_right, 0),
            LinMap.from_columns(psi_cols, n_left) if n_right else LinMap.zero(n_left, 0))


def transposes_inverse(adj: AdjunctionData, kappa_l: LinMap, kappa_r: LinMap,
                       x: int = 1, y: int = 1) -> bool:
    phi, psi = strong_transposes(adj, kappa_l, kappa_r, x, y)
    return psi @ phi == eye(phi.cols) and phi @ psi == eye(psi.cols)
