"""Bounded chain complexes over the rationals and dg comodules.

Differentials lower degree.  A complex is stored degree by degree, but most
operations work on the *total* space: the direct sum of all degrees with the
basis sorted by degree, and a single total differential.  Tensor products
follow ``d(x (x) y) = dx (x) y + (-1)^|x| x (x) dy`` and the hom complex
``[X, Y]_n = prod_p Hom(X_p, Y_{p+n})`` has ``d f = d_Y f - (-1)^n f d_X``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Sequence

from .adjlift import LiftedRightAdjoint, enriched_adjoint, graded_dims, mapping_adjoint
from .comodcat import (
    Comodule, ComoduleMorphism, is_comodule_morphism, restrict_comodule,
    solve_intertwiners, validate_comodule,
)
from .exactlin import (
    LinMap, ShapeError, equalizer, eye, is_invertible, kernel, kron, solve_factor,
)
from .hopf import lax_component
from .report import Report
from .structures import FinBialgebra


@dataclass(frozen=True)
class GradedModule:
    min_deg: int
    dims: tuple[int, ...]

    @property
    def max_deg(self) -> int:
        return self.min_deg + len(self.dims) - 1

    def dim(self, n: int) -> int:
        k = n - self.min_deg
        return self.dims[k] if 0 <= k < len(self.dims) else 0

    @property
    def total(self) -> int:
        return sum(self.dims)

    def degrees(self) -> list[int]:
        return [self.min_deg + k for k, d in enumerate(self.dims) for _ in range(d)]


def graded_from_degrees(degrees: Sequence[int]) -> GradedModule:
    if not degrees:
        return GradedModule(0, ())
    lo, hi = min(degrees), max(degrees)
    dims = [0] * (hi - lo + 1)
    for n in degrees:
        dims[n - lo] += 1
    return GradedModule(lo, tuple(dims))


def graded_tensor(a: GradedModule, b: GradedModule) -> GradedModule:
    return graded_from_degrees([p + q for p in a.degrees() for q in b.degrees()])


def graded_hom(a: GradedModule, b: GradedModule) -> GradedModule:
    """Degree ``n`` part is ``prod_p Hom(A_p, B_{p+n})``."""
    return graded_from_degrees([q - p for q in b.degrees() for p in a.degrees()])


@dataclass(frozen=True)
class ChainComplex:
    """``diffs[k]`` is ``d: X_{min+k+1} -> X_{min+k}``."""

    min_deg: int
    dims: tuple[int, ...]
    diffs: tuple[LinMap, ...]

    def check_shapes(self) -> None:
        if len(self.diffs) != max(len(self.dims) - 1, 0):
            raise ShapeError("need one differential between consecutive degrees")
        for k, d in enumerate(self.diffs):
            if d.shape != (self.dims[k], self.dims[k + 1]):
                raise ShapeError(f"differential out of degree {self.min_deg + k + 1} "
                                 f"must be {self.dims[k]}x{self.dims[k + 1]}")

    @property
    def max_deg(self) -> int:
        return self.min_deg + len(self.dims) - 1

    def dim(self, n: int) -> int:
        k = n - self.min_deg
        return self.dims[k] if 0 <= k < len(self.dims) else 0

    def d(self, n: int) -> LinMap:
        """``d_n: X_n -> X_{n-1}``, zero outside the stored range."""
        k = n - self.min_deg - 1
        if 0 <= k < len(self.diffs):
            return self.diffs[k]
        return LinMap.zero(self.dim(n - 1), self.dim(n))

    @property
    def total(self) -> int:
        return sum(self.dims)

    def degrees(self) -> list[int]:
        return [self.min_deg + k for k, d in enumerate(self.dims) for _ in range(d)]

    def offset(self, n: int) -> int:
        return sum(self.dims[: max(n - self.min_deg, 0)])

    @cached_property
    def total_differential(self) -> LinMap:
        items = []
        for k, d in enumerate(self.diffs):
            n = self.min_deg + k + 1
            ro, co = self.offset(n - 1), self.offset(n)
            items.extend((ro + i, co + j, v) for i, j, v in d.nonzero())
        return LinMap.from_sparse(self.total, self.total, items)


def concentrated(dim: int, degree: int = 0) -> ChainComplex:
    return ChainComplex(degree, (dim,), ())


def complex_from_total(degrees: Sequence[int], d: LinMap) -> ChainComplex:
    """Cut a total differential on a degree-sorted basis into blocks."""
    degrees = list(degrees)
    if degrees != sorted(degrees):
        raise ValueError("basis must be sorted by degree")
    g = graded_from_degrees(degrees)
    if not degrees:
        return ChainComplex(0, (), ())
    off = [sum(g.dims[:k]) for k in range(len(g.dims) + 1)]
    for i, j, _ in d.nonzero():
        if degrees[i] != degrees[j] - 1:
            raise ShapeError("total differential does not lower degree by one")
    diffs = []
    for k in range(len(g.dims) - 1):
        rows = range(off[k], off[k + 1])
        cols = range(off[k + 1], off[k + 2])
        diffs.append(LinMap.from_rows([[d[i, j] for j in cols] for i in rows], len(cols)))
    return ChainComplex(g.min_deg, g.dims, tuple(diffs))


def validate_complex(x: ChainComplex) -> Report:
    x.check_shapes()
    rep = Report("chain complex")
    for n in range(x.min_deg + 2, x.max_deg + 1):
        rep.check_equal(f"d o d at degree {n}", x.d(n - 1) @ x.d(n),
                        LinMap.zero(x.dim(n - 2), x.dim(n)))
    return rep


def forget_to_graded(x: ChainComplex) -> GradedModule:
    return GradedModule(x.min_deg, x.dims)


def parity(degrees: Sequence[int]) -> LinMap:
    return LinMap.diag([-1 if n % 2 else 1 for n in degrees])


def sorting_permutation(degrees: Sequence[int]) -> tuple[list[int], LinMap]:
    """Stable sort by degree; ``P`` sends the given basis to the sorted one."""
    order = sorted(range(len(degrees)), key=lambda k: degrees[k])
    images = [0] * len(order)
    for new, old in enumerate(order):
        images[old] = new
    return [degrees[k] for k in order], LinMap.permutation(images)


def tensor_degrees(x: ChainComplex, y: ChainComplex) -> list[int]:
    return [p + q for p in x.degrees() for q in y.degrees()]


def hom_degrees(x: ChainComplex, y: ChainComplex) -> list[int]:
    """Degrees of ``y (x) x*`` in ``kron`` order, i.e. of the entries of ``Y x X`` matrices."""
    return [q - p for q in y.degrees() for p in x.degrees()]


def tensor_kron_differential(x: ChainComplex, y: ChainComplex) -> LinMap:
    dx, dy = x.total_differential, y.total_differential
    return kron(dx, eye(y.total)) + kron(parity(x.degrees()), dy)


def tensor_complex(x: ChainComplex, y: ChainComplex) -> ChainComplex:
    degs, p = sorting_permutation(tensor_degrees(x, y))
    return complex_from_total(degs, p @ tensor_kron_differential(x, y) @ p.transpose())


def hom_kron_differential(x: ChainComplex, y: ChainComplex) -> LinMap:
    """Differential on vectorized ``Y x X`` matrices (row-major)."""
    dx, dy = x.total_differential, y.total_differential
    return (kron(dy, eye(x.total))
            - kron(eye(y.total), dx.transpose()) @ parity(hom_degrees(x, y)))


def hom_complex(x: ChainComplex, y: ChainComplex) -> ChainComplex:
    degs, p = sorting_permutation(hom_degrees(x, y))
    return complex_from_total(degs, p @ hom_kron_differential(x, y) @ p.transpose())


def is_chain_map(f: LinMap, x: ChainComplex, y: ChainComplex) -> bool:
    """Degree-0 total map commuting with the differentials."""
    dx, dy = x.degrees(), y.degrees()
    if any(dy[i] != dx[j] for i, j, _ in f.nonzero()):
        return False
    return y.total_differential @ f == f @ x.total_differential


def _degree_preserving(src: Sequence[int], tgt: Sequence[int]) -> list[tuple[int, int]]:
    return [(i, j) for i in range(len(tgt)) for j in range(len(src)) if tgt[i] == src[j]]


def chain_map_space(x: ChainComplex, y: ChainComplex) -> list[LinMap]:
    """Direct solve of ``d_Y f = f d_X`` over degree-0 total maps."""
    eq = (y.total_differential, x.total_differential, 1)
    return solve_intertwiners(x.total, y.total, [eq],
                              _degree_preserving(x.degrees(), y.degrees()))


def degree_zero_cycles(x: ChainComplex, y: ChainComplex) -> list[LinMap]:
    """Cycles of ``[X, Y]`` in degree 0, returned as ``Y x X`` matrices."""
    degs = hom_degrees(x, y)
    zero = [k for k, n in enumerate(degs) if n == 0]
    d = hom_kron_differential(x, y)
    block = LinMap.from_rows([[d[i, j] for j in zero] for i in range(d.rows)], len(zero)) \
        if zero else LinMap.zero(d.rows, 0)
    ker = kernel(block)
    out = []
    for b in range(ker.cols):
        data = [0] * (y.total * x.total)
        for pos, k in enumerate(zero):
            data[k] = ker[pos, b]
        out.append(LinMap.from_rows([data[i * x.total:(i + 1) * x.total]
                                     for i in range(y.total)], x.total))
    return out


def koszul_symmetry(x: ChainComplex, y: ChainComplex) -> LinMap:
    """``x (x) y -> (-1)^{|x||y|} y (x) x`` between the sorted total bases."""
    dx, dy = x.degrees(), y.degrees()
    nx, ny = len(dx), len(dy)
    items = [(j * nx + i, i * ny + j, -1 if (dx[i] * dy[j]) % 2 else 1)
             for i in range(nx) for j in range(ny)]
    swap = LinMap.from_sparse(nx * ny, nx * ny, items)
    _, p_xy = sorting_permutation(tensor_degrees(x, y))
    _, p_yx = sorting_permutation(tensor_degrees(y, x))
    return p_yx @ swap @ p_xy.transpose()


# -- dg comodules ---------------------------------------------------------------


@dataclass(frozen=True)
class DgComodule:
    """``H`` sits in degree 0 with zero differential; ``coaction`` is total."""

    over: FinBialgebra
    complex: ChainComplex
    coaction: LinMap

    @property
    def underlying(self) -> Comodule:
        return Comodule(self.over.coalgebra, self.complex.total, self.coaction)

    def piece(self, n: int) -> Comodule:
        """The comodule in degree ``n``."""
        x, nh = self.complex, self.over.dim
        lo, k = x.offset(n), x.dim(n)
        rows = [[self.coaction[(lo + i) * nh + c, lo + j] for j in range(k)]
                for i in range(k) for c in range(nh)]
        return Comodule(self.over.coalgebra, k, LinMap.from_rows(rows, k))


def validate_dg_comodule(v: DgComodule) -> Report:
    rep = Report("dg comodule")
    rep.extend(validate_complex(v.complex))
    rep.extend(validate_comodule(v.underlying))
    nh = v.over.dim
    degs = v.complex.degrees()
    rep.require("coaction preserves degree",
                all(degs[i // nh] == degs[j] for i, j, _ in v.coaction.nonzero()))
    d = v.complex.total_differential
    rep.check_equal("coaction is a chain map", v.coaction @ d, kron(d, eye(nh)) @ v.coaction)
    return rep


def dg_unit(h: FinBialgebra) -> DgComodule:
    return DgComodule(h, concentrated(1), h.unit)


def dg_cofree(h: FinBialgebra, x: ChainComplex) -> DgComodule:
    return DgComodule(h, tensor_complex(x, concentrated(h.dim)), kron(eye(x.total), h.comult))


def dg_comodule_tensor(h: FinBialgebra, v: DgComodule, w: DgComodule) -> DgComodule:
    x = tensor_complex(v.complex, w.complex)
    _, p = sorting_permutation(tensor_degrees(v.complex, w.complex))
    co = lax_component(h, v.complex.total, w.complex.total) @ kron(v.coaction, w.coaction)
    return DgComodule(h, x, kron(p, eye(h.dim)) @ co @ p.transpose())


def dg_hom_space(v: DgComodule, w: DgComodule) -> list[LinMap]:
    """Degree-0 chain maps that are comodule maps."""
    x, y = v.complex, w.complex
    eqs = [(w.coaction, v.coaction, v.over.dim),
           (y.total_differential, x.total_differential, 1)]
    return solve_intertwiners(x.total, y.total, eqs,
                              _degree_preserving(x.degrees(), y.degrees()))


# -- transfer -----------------------------------------------------------------


@dataclass
class DgRightAdjoint:
    result: DgComodule
    inclusion: LinMap        # into Z (x) K* (x) H, kron order
    graded: LiftedRightAdjoint
    comparison: LinMap       # result -> graded.result
    report: Report


def _restrict_block(m: LinMap, rows: Sequence[int], cols: Sequence[int]) -> LinMap:
    return LinMap.from_rows([[m[i, j] for j in cols] for i in rows], len(cols)) \
        if rows else LinMap.zero(0, len(cols))


def _dg_right_adjoint(h: FinBialgebra, z: DgComodule, k: DgComodule,
                      ra: LiftedRightAdjoint) -> DgRightAdjoint:
    """Equalizer of the pair inside ``[K, Z] (x) H`` computed one degree at a time."""
    rep = Report("dg right adjoint")
    nh = h.dim
    hom_degs = hom_degrees(k.complex, z.complex)
    src_degs = [n for n in hom_degs for _ in range(nh)]
    f, g = ra.pair
    # target Z (x) H (x) K* (x) H has the degree of its Z and K* factors
    zd, kd = z.complex.degrees(), k.complex.degrees()
    tgt_degs = [zd[a] - kd[b] for a in range(len(zd)) for _ in range(nh)
                for b in range(len(kd)) for _ in range(nh)]
    rep.require("hypothesis: pair is homogeneous",
                all(tgt_degs[i] == src_degs[j] for m in (f.map, g.map)
                    for i, j, _ in m.nonzero()))
    pieces = []
    for n in sorted(set(src_degs)):
        cols = [j for j, d in enumerate(src_degs) if d == n]
        rows = [i for i, d in enumerate(tgt_degs) if d == n]
        _, inc_n = equalizer(_restrict_block(f.map, rows, cols),
                             _restrict_block(g.map, rows, cols))
        for b in range(inc_n.cols):
            pieces.append((n, {cols[a]: inc_n[a, b] for a in range(len(cols)) if inc_n[a, b]}))
    total = len(src_degs)
    inc = LinMap.from_sparse(total, len(pieces),
                             ((i, b, v) for b, (_, col) in enumerate(pieces) for i, v in col.items()))
    degrees = [n for n, _ in pieces]
    # U_d preserves the equalizer: same subspace as the ungraded computation
    comparison = solve_factor(ra.inclusion, inc)
    rep.require("hypothesis: equalizer preserved",
                comparison is not None and is_invertible(comparison))
    cofree_zk = Comodule(h.coalgebra, total, kron(eye(total // nh), h.comult))
    sub = restrict_comodule(cofree_zk, inc)
    d_hom = kron(hom_kron_differential(k.complex, z.complex), eye(nh))
    d_e = solve_factor(inc, d_hom @ inc)
    if sub is None or d_e is None:
        rep.require("equalizer is a dg subcomodule", False)
        empty = DgComodule(h, ChainComplex(0, (), ()), LinMap.zero(0, 0))
        return DgRightAdjoint(empty, inc, ra, comparison or LinMap.zero(0, 0), rep)
    result = DgComodule(h, complex_from_total(degrees, d_e), sub.coaction)
    rep.extend(validate_dg_comodule(result), "result ")
    if comparison is not None:
        rep.require("conclusion: comparison is a comodule isomorphism",
                    is_invertible(comparison) and is_comodule_morphism(
                        ComoduleMorphism(result.underlying, ra.result, comparison)))
    return DgRightAdjoint(result, inc, ra, comparison or LinMap.zero(0, 0), rep)


def dg_mapping_comodule(h: FinBialgebra, z: DgComodule, v: DgComodule) -> DgRightAdjoint:
    """``<Z, V>`` for dg comodules, compared with the ungraded construction."""
    return _dg_right_adjoint(h, z, v, mapping_adjoint(h, z.underlying, v.underlying))


def dg_enriched_hom(h: FinBialgebra, w: DgComodule, z: DgComodule) -> DgRightAdjoint:
    return _dg_right_adjoint(h, z, w, enriched_adjoint(h, w.underlying, z.underlying))


def check_computed_on_graded(h: FinBialgebra, x: ChainComplex,
                             h_complex: ChainComplex | None = None) -> Report:
    """``U_d(X (x) H) = U_d(X) (x) U_d(H)`` with the comonad structure maps equal.

    ``h_complex`` may give ``H`` an internal grading and differential; the
    equality still holds because ``U_d`` only forgets differentials.
    """
    rep = Report("computed on graded modules")
    hc = h_complex if h_complex is not None else concentrated(h.dim)
    if hc.total != h.dim:
        raise ShapeError("grading of H has the wrong total dimension")
    qx = tensor_complex(x, hc)
    rep.require("graded dimensions", forget_to_graded(qx) ==
                graded_tensor(forget_to_graded(x), forget_to_graded(hc)))
    if h_complex is None:
        # H in degree 0: X (x) H is already degree sorted, so w and n are the Vect maps
        _, p = sorting_permutation(tensor_degrees(x, hc))
        rep.check_equal("basis order", p, eye(x.total * h.dim))
        rep.check_equal("differential", qx.total_differential,
                        kron(x.total_differential, eye(h.dim)))
    else:
        rep.notes.append("H carries its own differential; only the forgetful "
                         "equality is checked, so this is not a negative case")
    return rep


def transfer_iso_check(h: FinBialgebra, z: DgComodule, v: DgComodule) -> Report:
    """Hypotheses and conclusion of the graded-to-dg transfer for ``<Z, V>``."""
    rep = Report("transfer")
    for name, m in (("Z", z), ("V", v)):
        r = validate_dg_comodule(m)
        if not r.ok:
            rep.extend(r, f"input {name}: ")
            return rep
    # U_d commutes with cofree comodules
    cf = dg_cofree(h, z.complex)
    rep.require("hypothesis: cofree commutes with U_d",
                forget_to_graded(cf.complex) == graded_tensor(
                    forget_to_graded(z.complex), GradedModule(0, (h.dim,)))
                and cf.coaction == kron(eye(z.complex.total), h.comult))
    # U_d [V, Z] is the graded hom
    rep.require("hypothesis: hom complex forgets to graded hom",
                forget_to_graded(hom_complex(v.complex, z.complex)) ==
                graded_hom(forget_to_graded(v.complex), forget_to_graded(z.complex)))
    res = dg_mapping_comodule(h, z, v)
    rep.extend(res.report)
    return rep


def piecewise_mapping_dims(h: FinBialgebra, z: DgComodule, v: DgComodule,
                           oracle) -> dict[int, list[int]]:
    """Per chain degree ``n``: ``sum_p`` of the oracle on ``(Z_{p+n}, V_p)``."""
    out: dict[int, list[int]] = {}
    vc, zc = v.complex, z.complex
    for n in range(zc.min_deg - vc.max_deg, zc.max_deg - vc.min_deg + 1):
        acc = [0] * h.dim
        for p in range(vc.min_deg, vc.max_deg + 1):
            if vc.dim(p) and zc.dim(p + n):
                for g, d in enumerate(oracle(h, z.piece(p + n), v.piece(p))):
                    acc[g] += d
        out[n] = acc
    return out


def dg_degree_dims(m: DgComodule) -> dict[int, list[int]]:
    """``dim`` of each (chain degree, group-like degree) piece."""
    x = m.complex
    return {n: graded_dims(m.piece(n)) for n in range(x.min_deg, x.max_deg + 1)}


def nonzero_degrees(dims: dict[int, list[int]]) -> dict[int, list[int]]:
    """Drop chain degrees whose pieces are all zero, for comparing dimension tables."""
    return {n: d for n, d in dims.items() if any(d)}
