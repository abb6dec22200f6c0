"""The acceptance criteria as callable property suites.

Each ``criterion_*`` function runs a seeded randomized suite and returns a
:class:`CriterionResult`.  Optional arguments let the CLI report substitute
structures read from a file for the built-in defaults.
"""

from __future__ import annotations

import io
import random
import subprocess
import sys
from contextlib import redirect_stderr
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Sequence

from .adjlift import (
    certify_adjunction, check_factorization, enriched_adjoint, factor_comonad,
    graded_dims, kelly_lax_to_oplax, kelly_oplax_to_lax, lifted_right_adjoint,
    mapping_adjoint, oracle_enriched_dims, oracle_mapping_dims, verify_tce,
)
from .comodcat import (
    Comodule, ComoduleMorphism, ModuleMorphism, cofree, comodule_equalizer,
    comodule_hom_space, comodule_product, is_comodule_morphism,
    is_module_morphism, module_coequalizer, module_hom_space, product_pairing,
    validate_comodule, validate_module,
)
from .config import SuiteConfig
from .dgchain import (
    dg_comodule_tensor, dg_degree_dims, dg_enriched_hom, dg_hom_space,
    dg_mapping_comodule, nonzero_degrees, piecewise_mapping_dims, transfer_iso_check,
)
from .exactlin import (
    LinMap, coequalizer, equalizer, eye, is_injective, kernel, kron, solve_factor,
    solve_left,
)
from .hopf import (
    comodule_tensor, convolution_algebra, convolution_product, lifted_tensor_report,
    read_back_algebra,
)
from .library import kz2, kz2xz2, product_algebra
from .oplaxfun import (
    comodule_criterion, extract_oplax, lift_comodule, nt_lifts,
)
from .samples import (
    PointedCoalgebra, mutated_bialgebras, pointed_bialgebra, random_adjunction,
    random_algebra, random_coalgebra, random_combination, random_comodule,
    random_dg_comodule, random_matrix, random_module, random_nat_trans, random_oplax,
)
from .structures import (
    FinAlgebra, FinBialgebra, FinCoalgebra, StructMorphism, check_morphism,
    validate_algebra, validate_bialgebra,
)


@dataclass
class CriterionResult:
    number: int
    title: str
    ok: bool
    cases: int
    detail: str = ""
    failures: list[str] = field(default_factory=list)

    def line(self) -> str:
        mark = "PASS" if self.ok else "FAIL"
        extra = f" ({self.detail})" if self.detail else ""
        noun = "case" if self.cases == 1 else "cases"
        return f"[{mark}] {self.number:>2}. {self.title}: {self.cases} {noun}{extra}"


class _Tally:
    def __init__(self, number: int, title: str):
        self.number, self.title = number, title
        self.cases = 0
        self.failures: list[str] = []

    def case(self, ok: bool, what: str) -> None:
        self.cases += 1
        if not ok:
            self.failures.append(what)

    def result(self, detail: str = "") -> CriterionResult:
        if self.failures:
            detail = (detail + "; " if detail else "") + f"{len(self.failures)} failed, first: " \
                + self.failures[0]
        return CriterionResult(self.number, self.title, not self.failures, self.cases,
                               detail, self.failures)


def _rng(cfg: SuiteConfig, salt: int) -> random.Random:
    return random.Random(cfg.seed * 1000 + salt)


def _source(rng: random.Random, cfg: SuiteConfig,
            sources: Sequence[PointedCoalgebra] | None) -> PointedCoalgebra | None:
    return rng.choice(list(sources)) if sources else None


# 1 ----------------------------------------------------------------------------


def criterion_lifting_bijection(cfg: SuiteConfig,
                                sources: Sequence[PointedCoalgebra] | None = None
                                ) -> CriterionResult:
    rng = _rng(cfg, 1)
    t = _Tally(1, "lifting bijection (lift/extract round trips)")
    for k in range(cfg.lifting_cases):
        s = random_oplax(rng, cfg.max_coalgebra_dim, cfg.max_carrier_dim,
                         source=_source(rng, cfg, sources))
        coaction = lift_comodule(s, cofree(s.source, 1)).coaction
        back = extract_oplax(s.source, s.target, s.carrier, coaction)
        relift = lift_comodule(back, cofree(s.source, 1)).coaction
        t.case(back == s and relift == coaction, f"case {k}")
    return t.result()


# 2 ----------------------------------------------------------------------------


def criterion_nat_trans(cfg: SuiteConfig) -> CriterionResult:
    rng = _rng(cfg, 2)
    t = _Tally(2, "2-cell criterion agrees with comodule criterion")
    lifting = 0
    for k in range(cfg.nat_trans_cases):
        n = random_nat_trans(rng, cfg.max_coalgebra_dim, cfg.max_carrier_dim)
        c = n.source.source
        samples = [cofree(c, 1)] + [random_comodule(rng, c, cfg.max_comodule_dim)
                                    for _ in range(cfg.nat_trans_samples - 1)]
        holds, rep = nt_lifts(n, samples)
        lifting += holds
        agree = "criteria agree" not in rep.names()
        t.case(agree and holds == comodule_criterion(n, samples), f"case {k}")
    return t.result(f"{lifting} lifting, {t.cases - lifting} not")


# 3 ----------------------------------------------------------------------------


def criterion_kelly(cfg: SuiteConfig,
                    sources: Sequence[PointedCoalgebra] | None = None) -> CriterionResult:
    rng = _rng(cfg, 3)
    t = _Tally(3, "Kelly round trips")
    for k in range(cfg.kelly_cases):
        s = random_oplax(rng, cfg.max_coalgebra_dim, cfg.max_carrier_dim,
                         source=_source(rng, cfg, sources))
        adj = random_adjunction(rng, s.carrier)
        there = kelly_oplax_to_lax(adj, s)
        ok1 = kelly_lax_to_oplax(adj, there) == s
        # a lax structure obtained through a different adjunction
        lax = kelly_oplax_to_lax(random_adjunction(rng, s.carrier), s)
        ok2 = kelly_oplax_to_lax(adj, kelly_lax_to_oplax(adj, lax)) == lax
        t.case(ok1 and ok2, f"case {k}")
    return t.result()


# 4 ----------------------------------------------------------------------------


def criterion_adjoint_lifting(cfg: SuiteConfig,
                              bialgebras: Sequence[tuple[str, FinBialgebra]] | None = None
                              ) -> CriterionResult:
    rng = _rng(cfg, 4)
    t = _Tally(4, "adjoint lifting and graded-hom oracle")
    if bialgebras is None:
        bialgebras = [("kz2", kz2()), ("kz2xz2", kz2xz2())]
    for name, h in bialgebras:
        c = h.coalgebra
        pointed = pointed_bialgebra(h)
        for k in range(cfg.adjoint_cases):
            tag = f"{name} case {k}"
            v = random_comodule(rng, c, cfg.max_comodule_dim)
            z = random_comodule(rng, c, cfg.max_comodule_dim)
            w = random_comodule(rng, c, 3)
            ra = mapping_adjoint(h, z, v)
            m = ra.result
            ok = len(comodule_hom_space(comodule_tensor(h, v, w), z)) == \
                len(comodule_hom_space(w, m))
            ok = ok and graded_dims(m) == oracle_mapping_dims(h, z, v)
            ok = ok and certify_adjunction(ra, [w, cofree(c, 1)], seed=k).ok
            # a random oplax structure on the same comonad
            s = random_oplax(rng, 4, 2, source=pointed, target=pointed)
            rb = lifted_right_adjoint(random_adjunction(rng, s.carrier), s, z)
            ok = ok and certify_adjunction(rb, [v], seed=k).ok
            t.case(ok, tag)
    return t.result()


# 5 ----------------------------------------------------------------------------


def _convolution_kz2_ok() -> bool:
    h = kz2()
    conv = convolution_algebra(h.coalgebra, product_algebra(1)).result
    # delta functions on the two group-likes are the idempotents (eps +- chi)/2
    eps = LinMap.from_columns([[1, 1]], 2)
    chi = LinMap.from_columns([[1, -1]], 2)
    e_plus = (eps + chi).scale(Fraction(1, 2))
    e_minus = (eps - chi).scale(Fraction(1, 2))
    iso = StructMorphism(LinMap.from_rows([[1, 0], [0, 1]]), "algebra",
                         product_algebra(2), conv)

    def mul(x, y):
        return conv.mult @ kron(x, y)

    return (validate_algebra(conv).ok and check_morphism(iso).ok
            and mul(e_plus, e_plus) == e_plus and mul(e_minus, e_minus) == e_minus
            and mul(e_plus, e_minus).is_zero() and e_plus + e_minus == conv.unit
            and e_plus == LinMap.from_columns([[1, 0]], 2))


def criterion_convolution(cfg: SuiteConfig,
                          coalgebras: Sequence[FinCoalgebra] | None = None) -> CriterionResult:
    rng = _rng(cfg, 5)
    t = _Tally(5, "convolution algebras")
    t.case(_convolution_kz2_ok(), "[kz2, K] is K x K")
    for k in range(cfg.convolution_cases):
        c = rng.choice(list(coalgebras)) if coalgebras else random_coalgebra(rng)
        a = random_algebra(rng, 3)
        conv = convolution_algebra(c, a)
        ok = validate_algebra(conv.result).ok
        f = conv.to_map(random_matrix(rng, a.dim * c.dim, 1))
        unit = conv.to_map(conv.result.unit)
        ok = ok and convolution_product(c, a, unit, f) == f == convolution_product(c, a, f, unit)
        t.case(ok, f"case {k}")
    return t.result()


# 6 ----------------------------------------------------------------------------


def hopf_lift_agreement(h: FinBialgebra) -> tuple[bool, bool]:
    """(bialgebra axioms hold, lifted tensor is a monoidal structure on comodules)."""
    c = h.coalgebra
    samples = [cofree(c, 1), Comodule(c, 1, h.unit)]
    return validate_bialgebra(h).ok, lifted_tensor_report(h, samples).ok


def strict_monoidal_forgetful(h: FinBialgebra, rng: random.Random) -> bool:
    c = h.coalgebra
    v, w = random_comodule(rng, c, 3), random_comodule(rng, c, 3)
    f = random_combination(rng, comodule_hom_space(v, v), v.dim, v.dim)
    g = random_combination(rng, comodule_hom_space(w, w), w.dim, w.dim)
    vw = comodule_tensor(h, v, w)
    return (vw.dim == v.dim * w.dim
            and is_comodule_morphism(ComoduleMorphism(vw, vw, kron(f, g))))


def criterion_hopf_lift(cfg: SuiteConfig,
                        bialgebras: Sequence[tuple[str, FinBialgebra]] | None = None
                        ) -> CriterionResult:
    rng = _rng(cfg, 6)
    t = _Tally(6, "Hopf structures vs lifted tensor products")
    if bialgebras is None:
        base = kz2()
        from .library import broken_counit_kz2
        bialgebras = [("kz2", base), ("broken-counit", broken_counit_kz2())] + [
            (f"mutant {k}", m) for k, m in enumerate(mutated_bialgebras(base, rng))]
    positives = negatives = 0
    for name, h in bialgebras:
        axioms, lifted = hopf_lift_agreement(h)
        ok = axioms == lifted
        if axioms:
            positives += 1
            ok = ok and read_back_algebra(h) == h.algebra and strict_monoidal_forgetful(h, rng)
        else:
            negatives += 1
        t.case(ok, name)
    return t.result(f"{positives} positive, {negatives} negative")


# 7 ----------------------------------------------------------------------------


def criterion_factorization(cfg: SuiteConfig,
                            sources: Sequence[PointedCoalgebra] | None = None
                            ) -> CriterionResult:
    rng = _rng(cfg, 7)
    t = _Tally(7, "LQR comonad factorization")
    for k in range(cfg.factor_cases):
        s = random_oplax(rng, cfg.max_coalgebra_dim, cfg.max_carrier_dim,
                         source=_source(rng, cfg, sources))
        adj = random_adjunction(rng, s.carrier)
        t.case(check_factorization(adj, s, factor_comonad(adj, s)).ok, f"case {k}")
    return t.result()


# 8 ----------------------------------------------------------------------------


def criterion_tce(cfg: SuiteConfig, h: FinBialgebra | None = None) -> CriterionResult:
    rng = _rng(cfg, 8)
    t = _Tally(8, "TCE isomorphisms")
    h = h or kz2()
    c = h.coalgebra
    nonzero = 0
    for k in range(cfg.tce_cases):
        triple = tuple(random_comodule(rng, c, 3) for _ in range(3))
        res = verify_tce(h, [triple], seed=cfg.seed + k)
        v, w, z = triple
        ok = res.report.ok and graded_dims(enriched_adjoint(h, w, z).result) == \
            oracle_enriched_dims(h, w, z)
        nonzero += bool(res.dims and res.dims[0][0])
        t.case(ok, f"triple {k}: " + "; ".join(res.report.names()[:1]))
    return t.result(f"{nonzero} with nonzero hom")


# 9 ----------------------------------------------------------------------------


def criterion_transfer(cfg: SuiteConfig, h: FinBialgebra | None = None) -> CriterionResult:
    rng = _rng(cfg, 9)
    t = _Tally(9, "graded transfer")
    h = h or kz2()
    for k in range(cfg.transfer_cases):
        z = random_dg_comodule(rng, h, 4, 3)
        v = random_dg_comodule(rng, h, 4, 2)
        rep = transfer_iso_check(h, z, v)
        res = dg_mapping_comodule(h, z, v)
        ok = rep.ok and nonzero_degrees(dg_degree_dims(res.result)) == nonzero_degrees(
            piecewise_mapping_dims(h, z, v, oracle_mapping_dims))
        # the dg bifunctor dimension identities on one extra object
        w = random_dg_comodule(rng, h, 2, 1)
        vw = dg_comodule_tensor(h, v, w)
        d1 = len(dg_hom_space(vw, z))
        d2 = len(dg_hom_space(w, res.result))
        d3 = len(dg_hom_space(v, dg_enriched_hom(h, w, z).result))
        ok = ok and d1 == d2 == d3
        t.case(ok, f"case {k}: " + "; ".join(rep.names()[:1]) + f" dims {d1},{d2},{d3}")
    return t.result()


# 10 ---------------------------------------------------------------------------


def _equalizer_case(rng: random.Random, c: FinCoalgebra, cfg: SuiteConfig) -> bool:
    v = random_comodule(rng, c, cfg.max_comodule_dim)
    w = random_comodule(rng, c, cfg.max_comodule_dim)
    hom = comodule_hom_space(v, w)
    f = random_combination(rng, hom, w.dim, v.dim)
    g = random_combination(rng, hom, w.dim, v.dim) if rng.random() < 0.7 else f
    e, inc = comodule_equalizer(ComoduleMorphism(v, w, f), ComoduleMorphism(v, w, g))
    _, vect_inc = equalizer(f, g)
    ok = inc.map == vect_inc and is_comodule_morphism(inc) and validate_comodule(e).ok
    # random cone: comodule maps T -> V equalizing the pair
    tt = random_comodule(rng, c, 3)
    cone_basis = comodule_hom_space(tt, v)
    if cone_basis:
        cols = LinMap.from_columns([((f - g) @ b).entries for b in cone_basis],
                                   w.dim * tt.dim) if w.dim * tt.dim else None
        ker = kernel(cols) if cols is not None else eye(len(cone_basis))
        cones = [sum((ker[i, j] * cone_basis[i] for i in range(len(cone_basis))),
                     LinMap.zero(v.dim, tt.dim)) for j in range(ker.cols)]
        k = random_combination(rng, cones, v.dim, tt.dim)
        u = solve_factor(inc.map, k)
        ok = ok and u is not None and is_comodule_morphism(ComoduleMorphism(tt, e, u)) \
            and is_injective(inc.map)
    return ok


def _product_case(rng: random.Random, c: FinCoalgebra, cfg: SuiteConfig) -> bool:
    vs = [random_comodule(rng, c, 3) for _ in range(rng.randint(0, 3))]
    prod, projs = comodule_product(vs, over=c)
    ok = prod.dim == sum(v.dim for v in vs) and validate_comodule(prod).ok
    ok = ok and all(is_comodule_morphism(p) for p in projs)
    tt = random_comodule(rng, c, 3)
    legs = [ComoduleMorphism(tt, v, random_combination(rng, comodule_hom_space(tt, v),
                                                       v.dim, tt.dim)) for v in vs]
    if legs:
        pair = product_pairing(legs, prod)
        ok = ok and is_comodule_morphism(pair) and all(
            p.map @ pair.map == leg.map for p, leg in zip(projs, legs))
        ok = ok and len(comodule_hom_space(tt, prod)) == sum(
            len(comodule_hom_space(tt, v)) for v in vs)
    return ok


def _coequalizer_case(rng: random.Random, a: FinAlgebra) -> bool:
    v, w = random_module(rng, a), random_module(rng, a)
    hom = module_hom_space(v, w)
    f = random_combination(rng, hom, w.dim, v.dim)
    g = random_combination(rng, hom, w.dim, v.dim)
    q, proj = module_coequalizer(ModuleMorphism(v, w, f), ModuleMorphism(v, w, g))
    _, vect_proj = coequalizer(f, g)
    ok = proj.map == vect_proj and is_module_morphism(proj) and validate_module(q).ok
    tt = random_module(rng, a)
    cocone_basis = module_hom_space(w, tt)
    if cocone_basis:
        cols = LinMap.from_columns([(b @ (f - g)).entries for b in cocone_basis],
                                   tt.dim * v.dim)
        ker = kernel(cols)
        cocones = [sum((ker[i, j] * cocone_basis[i] for i in range(len(cocone_basis))),
                       LinMap.zero(tt.dim, w.dim)) for j in range(ker.cols)]
        k = random_combination(rng, cocones, tt.dim, w.dim)
        u = solve_left(proj.map, k)
        ok = ok and u is not None and is_module_morphism(ModuleMorphism(q, tt, u))
    return ok


def criterion_limits(cfg: SuiteConfig,
                     coalgebras: Sequence[FinCoalgebra] | None = None) -> CriterionResult:
    rng = _rng(cfg, 10)
    t = _Tally(10, "equalizers, products and coequalizers")
    for k in range(cfg.limit_cases):
        kind = k % 4
        if kind == 3:
            a = random_algebra(rng, 3)
            t.case(_coequalizer_case(rng, a), f"coequalizer {k}")
            continue
        c = rng.choice(list(coalgebras)) if coalgebras else random_coalgebra(rng)
        if kind == 2:
            t.case(_product_case(rng, c, cfg), f"product {k}")
        else:
            t.case(_equalizer_case(rng, c, cfg), f"equalizer {k}")
    return t.result()


# 11 ---------------------------------------------------------------------------


FIXTURE_EXIT = {"ground.wb": 0, "kz2.wb": 0, "kz2xz2.wb": 0, "broken-counit.wb": 1}

Runner = Callable[[Sequence[str]], tuple[int, bytes]]


def run_in_process(args: Sequence[str]) -> tuple[int, bytes]:
    from .cli import main
    out = io.StringIO()
    with redirect_stderr(io.StringIO()):
        try:
            code = main(list(args), out=out)
        except SystemExit as exc:
            code = exc.code
    return code, out.getvalue().encode()


def run_subprocess(args: Sequence[str]) -> tuple[int, bytes]:
    proc = subprocess.run([sys.executable, "-m", "comonad_workbench.cli", *args],
                          capture_output=True)
    return proc.returncode, proc.stdout


def criterion_cli(cfg: SuiteConfig, runner: Runner = run_in_process) -> CriterionResult:
    from .fixtures import fixture_path
    t = _Tally(11, "CLI fixtures")
    for name, expected in FIXTURE_EXIT.items():
        path = str(fixture_path(name))
        for verb in ("validate", "report"):
            first = runner([verb, path])
            second = runner([verb, path])
            t.case(first[0] == expected and first == second,
                   f"{verb} {name}: exit {first[0]}, expected {expected}")
    missing = runner(["validate", path + ".missing"])
    t.case(missing[0] == 2, f"missing file: exit {missing[0]}, expected 2")
    return t.result()


ALL = [
    criterion_lifting_bijection, criterion_nat_trans, criterion_kelly,
    criterion_adjoint_lifting, criterion_convolution, criterion_hopf_lift,
    criterion_factorization, criterion_tce, criterion_transfer, criterion_limits,
    criterion_cli,
]
