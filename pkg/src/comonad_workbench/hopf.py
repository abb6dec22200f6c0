"""Hopf comonads ``- (x) H`` and the monoidal structure on ``H``-comodules.

The lax structure of ``Q = - (x) H`` is

    phi_{X,Y} = (id_{X(x)Y} (x) mult) o (id_X (x) swap_{H,Y} (x) id_H)
    phi_0     = unit

and each square that makes it a Hopf comonad is one bialgebra axiom tensored
with identities.  ``hopf_squares`` evaluates the squares themselves so a broken
axiom shows up as a nonzero residual in the matching square.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .comodcat import (
    CoalgebraMismatch, Comodule, ComoduleMorphism, cofree, is_comodule_morphism,
    validate_comodule,
)
from .exactlin import LinMap, ShapeError, eye, kron, shuffle, symmetry, tensor
from .oplaxfun import OplaxStructure, lift_comodule, validate_oplax
from .report import InvalidStructure, Report
from .structures import (
    FinAlgebra, FinBialgebra, FinCoalgebra, validate_algebra,
    validate_bialgebra,
)


# square name -> bialgebra axiom it reduces to at X = Y = Z = ground field
SQUARE_AXIOM = {
    "comonad coassociativity": "coassociativity",
    "comonad left counit": "left counit",
    "comonad right counit": "right counit",
    "lax associativity": "associativity",
    "lax left unit": "left unit",
    "lax right unit": "right unit",
    "w monoidal": "comult multiplicative",
    "w unital": "comult unital",
    "n monoidal": "counit multiplicative",
    "n unital": "counit unital",
}


def lax_component(h: FinBialgebra, x: int, y: int) -> LinMap:
    """``phi_{X,Y}: X (x) H (x) Y (x) H -> X (x) Y (x) H``."""
    n = h.dim
    return kron(eye(x * y), h.mult) @ tensor(eye(x), symmetry(n, y), eye(n))


@dataclass(frozen=True)
class HopfComonadData:
    bialgebra: FinBialgebra

    def lax_pair(self, x: int, y: int) -> LinMap:
        return lax_component(self.bialgebra, x, y)

    @property
    def lax_unit(self) -> LinMap:
        return self.bialgebra.unit


def hopf_squares(h: FinBialgebra, x: int, y: int, z: int = 1) -> Report:
    """Residuals of the comonad laws and the Hopf-comonad squares at ``X, Y, Z``.

    Does not assume ``h`` is valid; square names are keys of ``SQUARE_AXIOM``.
    """
    h.check_shapes()
    rep = Report(f"Hopf squares at dims {x},{y},{z}")
    n = h.dim
    d, e, u = h.comult, h.counit, h.unit
    ih = eye(n)

    def w(k):  # w_X
        return kron(eye(k), d)

    def nn(k):  # n_X
        return kron(eye(k), e)

    def phi(a, b):
        return lax_component(h, a, b)

    rep.check_equal("comonad coassociativity", kron(w(x), ih) @ w(x), w(x * n) @ w(x))
    rep.check_equal("comonad left counit", nn(x * n) @ w(x), eye(x * n))
    rep.check_equal("comonad right counit", kron(nn(x), ih) @ w(x), eye(x * n))

    # (QX (x) QY) (x) QZ -> Q(X (x) Y (x) Z) both ways
    qx, qy, qz = x * n, y * n, z * n
    rep.check_equal("lax associativity",
                    phi(x * y, z) @ kron(phi(x, y), eye(qz)),
                    phi(x, y * z) @ kron(eye(qx), phi(y, z)))
    rep.check_equal("lax left unit", phi(1, x) @ kron(u, eye(qx)), eye(qx))
    rep.check_equal("lax right unit", phi(x, 1) @ kron(eye(qx), u), eye(qx))

    rep.check_equal("w monoidal",
                    w(x * y) @ phi(x, y),
                    kron(phi(x, y), ih) @ phi(qx, qy) @ kron(w(x), w(y)))
    rep.check_equal("w unital", d @ u, kron(u, ih) @ u)
    rep.check_equal("n monoidal", nn(x * y) @ phi(x, y), kron(nn(x), nn(y)))
    rep.check_equal("n unital", e @ u, eye(1))
    return rep


def hopf_from_bialgebra(h: FinBialgebra,
                        samples: Sequence[tuple[int, int]] = ((1, 1), (2, 1), (1, 3), (2, 2))
                        ) -> HopfComonadData:
    """Certify the Hopf-comonad squares on the sampled dimension pairs.

    Raises :class:`InvalidStructure` carrying the failing axioms (or squares).
    """
    rep = validate_bialgebra(h)
    if not rep.ok:
        raise InvalidStructure(rep)
    for x, y in samples:
        sq = hopf_squares(h, x, y)
        if not sq.ok:
            raise InvalidStructure(sq)
    return HopfComonadData(h)


def squares_match_axioms(h: FinBialgebra, x: int = 1, y: int = 1) -> bool:
    """Each square fails exactly when its bialgebra axiom fails."""
    axioms = set(validate_bialgebra(h).names())
    squares = set(hopf_squares(h, x, y).names())
    return {SQUARE_AXIOM[s] for s in squares} == axioms


def _check_over(h: FinBialgebra, *vs: Comodule) -> None:
    for v in vs:
        if v.over != h.coalgebra:
            raise CoalgebraMismatch("comodule is not over this bialgebra")


def comodule_tensor(h: FinBialgebra, v: Comodule, w: Comodule) -> Comodule:
    """``V (x) W`` with coaction ``phi_{V,W} o (coaction_V (x) coaction_W)``."""
    _check_over(h, v, w)
    # entrywise: (v_j (x) w_l) -> sum rho_v[i a, j] rho_w[k b, l] m[t, a b]  at (i k t)
    n, vd, wd = h.dim, v.dim, w.dim
    vcols, wcols, mcols = v.coaction.T.sparse_rows, w.coaction.T.sparse_rows, h.mult.T.sparse_rows
    out: dict[tuple[int, int], Fraction] = {}
    for j in range(vd):
        for l in range(wd):
            col = j * wd + l
            for r1, x in vcols[j]:
                i, a = divmod(r1, n)
                for r2, y in wcols[l]:
                    k, b = divmod(r2, n)
                    for t, z in mcols[a * n + b]:
                        key = ((i * wd + k) * n + t, col)
                        out[key] = out.get(key, 0) + x * y * z
    coaction = LinMap.from_sparse(vd * wd * n, vd * wd, [(r, c, x) for (r, c), x in out.items()])
    return Comodule(h.coalgebra, vd * wd, coaction)


def unit_comodule(h: FinBialgebra) -> Comodule:
    return Comodule(h.coalgebra, 1, h.unit)


def read_back_algebra(h: FinBialgebra) -> FinAlgebra:
    """Recover ``mult`` and ``unit`` from the tensor of two cofree comodules.

    ``cofree(K) (x) cofree(K)`` has coaction ``(comult (x) comult)`` followed by
    ``phi``; applying ``counit (x) counit`` on the first two factors leaves ``mult``.
    """
    c = h.coalgebra
    t = comodule_tensor(h, cofree(c, 1), cofree(c, 1))
    mult = kron(kron(c.counit, c.counit), eye(c.dim)) @ t.coaction
    return FinAlgebra(c.dim, mult, unit_comodule(h).coaction)


def symmetry_morphism(h: FinBialgebra, v: Comodule, w: Comodule) -> ComoduleMorphism:
    return ComoduleMorphism(comodule_tensor(h, v, w), comodule_tensor(h, w, v),
                            symmetry(v.dim, w.dim))


def check_symmetric_hopf(h: FinBialgebra, samples: Sequence[tuple[Comodule, Comodule]] = ()
                         ) -> bool:
    """Whether ``mult`` is commutative; if so the swap is also checked on samples."""
    n = h.dim
    if h.mult @ symmetry(n, n) != h.mult:
        return False
    return all(is_comodule_morphism(symmetry_morphism(h, v, w)) for v, w in samples)


def lifted_tensor_report(h: FinBialgebra, comodules: Sequence[Comodule] = ()) -> Report:
    """Whether ``comodule_tensor`` is a monoidal structure on the given samples.

    Checks that tensors and the unit are comodules and that the unit and
    associativity constraints (identities on the underlying spaces) are equalities
    of coactions.  ``cofree(K)`` is always a sample.
    """
    rep = Report("lifted tensor")
    samples = [cofree(h.coalgebra, 1), *comodules]
    unit = unit_comodule(h)
    rep.extend(validate_comodule(unit), "unit: ")
    for i, v in enumerate(samples):
        for j, w in enumerate(samples):
            rep.extend(validate_comodule(comodule_tensor(h, v, w)), f"tensor {i},{j}: ")
        rep.check_equal("left unit constraint", comodule_tensor(h, unit, v).coaction,
                        v.coaction)
        rep.check_equal("right unit constraint", comodule_tensor(h, v, unit).coaction,
                        v.coaction)
    v = samples[0]
    vv = comodule_tensor(h, v, v)
    rep.check_equal("associativity constraint", comodule_tensor(h, vv, v).coaction,
                    comodule_tensor(h, v, vv).coaction)
    return rep


# -- convolution --------------------------------------------------------------


@dataclass(frozen=True)
class ConvolutionAlgebra:
    coalg: FinCoalgebra
    alg: FinAlgebra
    result: FinAlgebra

    def to_element(self, f: LinMap) -> LinMap:
        """A map ``C -> A`` as a column in the basis ``e_ij``, index ``i * dim C + j``."""
        if f.shape != (self.alg.dim, self.coalg.dim):
            raise ShapeError(f"expected a map {self.coalg.dim} -> {self.alg.dim}")
        return LinMap(f.rows * f.cols, 1, f.entries)

    def to_map(self, v: LinMap) -> LinMap:
        return LinMap(self.alg.dim, self.coalg.dim, v.entries)


def convolution_product(c: FinCoalgebra, a: FinAlgebra, f: LinMap, g: LinMap) -> LinMap:
    """``f * g = mult_A o (f (x) g) o comult_C``."""
    return a.mult @ kron(f, g) @ c.comult


def convolution_algebra(c: FinCoalgebra, a: FinAlgebra) -> ConvolutionAlgebra:
    nc, na = c.dim, a.dim
    n = nc * na
    basis = [LinMap.from_sparse(na, nc, [(i, j, 1)]) for i in range(na) for j in range(nc)]
    cols = [convolution_product(c, a, f, g).entries for f in basis for g in basis]
    mult = LinMap.from_columns(cols, n) if n else LinMap.zero(0, 0)
    unit = LinMap(n, 1, (a.unit @ c.counit).entries)
    return ConvolutionAlgebra(c, a, FinAlgebra(n, mult, unit))


# -- module monads with strength ----------------------------------------------


def strength_component(t: LinMap, a_dim: int, h_dim: int, x: int, y: int) -> LinMap:
    """``M<X,Y> -> <MX, QY>`` where ``<X,Y> = X (x) Y*`` and ``t: A -> A (x) H*``.

    ``X (x) Y* (x) A  ->  X (x) A (x) Y* (x) H*``.
    """
    return (tensor(eye(x), eye(a_dim), symmetry(h_dim, y))
            @ tensor(eye(x), t, eye(y))
            @ kron(eye(x), symmetry(y, a_dim)))


def check_module_monad_strength(t: LinMap, a: FinAlgebra, h: FinBialgebra,
                                x: int = 1, y: int = 1) -> Report:
    """Multiplication and unit squares for the strength of ``M = - (x) A``.

    ``<f, g> = f (x) g^T``; the squares are checked at ``<X, Y>``.
    """
    na, nh = a.dim, h.dim
    if t.shape != (na * nh, na):
        raise ShapeError(f"strength data must be {na * nh}x{na}, got {t.shape}")
    rep = Report(f"module monad strength at dims {x},{y}")
    s = strength_component(t, na, nh, x, y)
    # s_{MX,QY}: X (x) A (x) (Y (x) H)* (x) A -> X (x) A (x) A (x) Y* (x) H* (x) H*
    s_mq = strength_component(t, na, nh, x * na, y * nh)
    m_mx = kron(eye(x), a.mult)
    w_y = kron(eye(y), h.comult)
    lhs = s @ kron(eye(x * y), a.mult)
    rhs = kron(m_mx, w_y.transpose()) @ s_mq @ kron(s, eye(na))
    rep.check_equal("multiplication square", lhs, rhs)
    n_y = kron(eye(y), h.counit)
    rep.check_equal("unit square",
                    s @ kron(eye(x * y), a.unit),
                    kron(kron(eye(x), a.unit), n_y.transpose()))
    return rep


# -- lax monoidal lifts -------------------------------------------------------


def functor_lax_component(w_alg: FinAlgebra, v: int, v2: int) -> LinMap:
    """``F V (x) F V' -> F(V (x) V')`` for ``F = - (x) W`` with ``W`` an algebra."""
    n = w_alg.dim
    return kron(eye(v * v2), w_alg.mult) @ tensor(eye(v), symmetry(n, v2), eye(n))


def monoidality_report(h: FinBialgebra, w_alg: FinAlgebra, s: OplaxStructure) -> Report:
    """``b`` commutes with the lax structures of ``FQ`` and ``QF`` (unit components)."""
    nh, nw = h.dim, w_alg.dim
    if s.source != h.coalgebra or s.target != h.coalgebra or s.carrier != nw:
        raise ShapeError("oplax structure does not match the bialgebra and algebra")
    rep = Report("monoidal oplax structure")
    # lax structure of F Q and of Q F at the unit object
    fq = kron(h.mult, w_alg.mult) @ middle_swap(nh, nw)
    qf = kron(w_alg.mult, h.mult) @ middle_swap(nw, nh)
    rep.check_equal("monoidal square", s.b @ fq, qf @ kron(s.b, s.b))
    rep.check_equal("unit square", s.b @ kron(h.unit, w_alg.unit), kron(w_alg.unit, h.unit))
    return rep


def middle_swap(m: int, n: int) -> LinMap:
    """``M (x) N (x) M (x) N -> M (x) M (x) N (x) N``."""
    return shuffle([m, n, m, n], [0, 2, 1, 3])


def lift_comparisons_are_morphisms(h: FinBialgebra, w_alg: FinAlgebra, s: OplaxStructure,
                                   comodules: Sequence[Comodule]) -> bool:
    """Lax components of the lift are comodule maps on all sampled pairs and the unit."""
    unit = unit_comodule(h)
    u_map = ComoduleMorphism(unit, lift_comodule(s, unit), w_alg.unit)
    if not is_comodule_morphism(u_map):
        return False
    for v in comodules:
        for v2 in comodules:
            src = comodule_tensor(h, lift_comodule(s, v), lift_comodule(s, v2))
            tgt = lift_comodule(s, comodule_tensor(h, v, v2))
            f = ComoduleMorphism(src, tgt, functor_lax_component(w_alg, v.dim, v2.dim))
            if not is_comodule_morphism(f):
                return False
    return True


def check_lax_monoidal_lift(h: FinBialgebra, w_alg: FinAlgebra, s: OplaxStructure,
                            comodules: Sequence[Comodule] = ()) -> tuple[bool, bool]:
    """``(square holds, lifted comparisons are comodule maps)``; equal when consistent.

    ``cofree(K)`` is always among the samples: it detects every failure.
    """
    for rep in (validate_algebra(w_alg), validate_oplax(s)):
        if not rep.ok:
            raise InvalidStructure(rep)
    samples = [cofree(h.coalgebra, 1), *comodules]
    return (monoidality_report(h, w_alg, s).ok,
            lift_comparisons_are_morphisms(h, w_alg, s, samples))
