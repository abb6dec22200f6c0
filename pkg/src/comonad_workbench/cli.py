"""``wb``: validate, compute with and report on ``.wb`` files.

Exit codes: 0 success, 1 mathematical failure, 2 usage or parse error.
"""

from __future__ import annotations

import argparse
import sys
from typing import Sequence

from . import acceptance
from .adjlift import (
    certify_adjunction, check_factorization, enriched_adjoint, factor_comonad, graded_dims,
    group_law, kelly_lax_to_oplax, kelly_oplax_to_lax, lifted_right_adjoint, mapping_adjoint,
    oracle_enriched_dims, oracle_mapping_dims, validate_adjunction, validate_lax,
)
from .comodcat import Comodule, cofree, validate_comodule, validate_module
from .config import SuiteConfig
from .dgchain import dg_mapping_comodule, transfer_iso_check, validate_complex, \
    validate_dg_comodule
from .hopf import comodule_tensor, convolution_algebra, unit_comodule
from .oplaxfun import lift_comodule, validate_oplax
from .report import Report
from .samples import mutated_bialgebras, pointed_bialgebra
from .structures import FinBialgebra, validate_algebra, validate_bialgebra, validate_coalgebra
from .wbformat import Declaration, WbError, WorkbenchFile, Writer, builtin_ground, load

VALIDATORS = {
    "coalgebra": validate_coalgebra,
    "algebra": validate_algebra,
    "bialgebra": validate_bialgebra,
    "comodule": validate_comodule,
    "module": validate_module,
    "oplax": validate_oplax,
    "lax": validate_lax,
    "adjunction": validate_adjunction,
    "complex": validate_complex,
    "dgcomodule": validate_dg_comodule,
}

VERBS = ("tensor", "hom", "enriched", "conv", "kelly", "lift", "adjoint", "factor", "transfer")


class UsageError(Exception):
    """Bad operands on the command line (exit 2)."""


class OperandInvalid(Exception):
    """An operand fails its validator (exit 1)."""


def validate_declaration(decl: Declaration) -> Report:
    return VALIDATORS[decl.kind](decl.value)


# -- validate -----------------------------------------------------------------------


def cmd_validate(model: WorkbenchFile, out) -> int:
    failed = 0
    for decl in model.declarations.values():
        rep = validate_declaration(decl)
        if rep.ok:
            print(f"{decl.name} ({decl.kind}): ok", file=out)
        else:
            failed += 1
            print(f"{decl.name} ({decl.kind}): FAIL", file=out)
            for f in rep.failures:
                print(f"  {f.describe()}", file=out)
    print(f"summary: {len(model.declarations)} declarations, {failed} failed", file=out)
    return 1 if failed else 0


# -- compute ------------------------------------------------------------------------


class _Operands:
    def __init__(self, model: WorkbenchFile, over: str | None):
        self.model = model
        self.over = over

    def get(self, name: str, *kinds: str) -> Declaration:
        if name == "ground" and set(kinds) & {"coalgebra", "algebra", "bialgebra"}:
            return builtin_ground()
        decl = self.model.declarations.get(name)
        if decl is None:
            raise UsageError(f"undeclared operand {name!r}")
        if decl.kind not in kinds:
            raise UsageError(f"{name!r} is a {decl.kind}, expected {' or '.join(kinds)}")
        rep = validate_declaration(decl)
        if not rep.ok:
            raise OperandInvalid(f"operand {name!r} fails validation: "
                                 + ", ".join(rep.names()))
        return decl

    def bialgebra_for(self, *decls: Declaration) -> FinBialgebra:
        """The bialgebra the comodule operands live over."""
        if self.over is not None:
            return self.get(self.over, "bialgebra").value
        for d in decls:
            for ref in d.refs:
                target = self.model.declarations.get(ref)
                if target is not None and target.kind == "bialgebra":
                    return self.get(ref, "bialgebra").value
            if d.kind in ("comodule", "dgcomodule"):
                coalg = d.value.underlying.over if d.kind == "dgcomodule" else d.value.over
                for b in self.model.of_kind("bialgebra"):
                    if b.value.coalgebra == coalg:
                        return self.get(b.name, "bialgebra").value
                if builtin_ground().value.coalgebra == coalg:
                    return builtin_ground().value
        raise UsageError("cannot tell which bialgebra to use; pass --over NAME")

    def comodules_over(self, coalg) -> list[Comodule]:
        out = [cofree(coalg, 1)]
        for d in self.model.of_kind("comodule"):
            if d.value.over == coalg and validate_declaration(d).ok:
                out.append(d.value)
        return out


def _need(args: Sequence[str], n: int, usage: str) -> None:
    if len(args) != n:
        raise UsageError(f"usage: {usage}")


def _check_group_oracle(rep: Report, h: FinBialgebra, result: Comodule, oracle) -> None:
    try:
        group_law(h)
    except ValueError:
        rep.notes.append("graded oracle skipped: basis is not a group")
        return
    rep.require("graded dimensions match the oracle", graded_dims(result) == oracle())


def compute(model: WorkbenchFile, verb: str, args: Sequence[str], over: str | None,
            seed: int) -> tuple[str, list[tuple[str, Report]]]:
    """Output text (a ``.wb`` file) and the certification reports."""
    ops = _Operands(model, over)
    writer = Writer(model)
    reports: list[tuple[str, Report]] = []

    if verb == "tensor":
        _need(args, 2, "tensor V W")
        decls = [None if a == "unit" else ops.get(a, "comodule") for a in args]
        h = ops.bialgebra_for(*[d for d in decls if d is not None])
        v, w = (unit_comodule(h) if d is None else d.value for d in decls)
        result = comodule_tensor(h, v, w)
        reports.append(("comodule axioms of the tensor product", validate_comodule(result)))
        writer.ref("comodule", result, "tensor")
    elif verb in ("hom", "enriched"):
        _need(args, 2, f"{verb} " + ("Z V" if verb == "hom" else "W Z"))
        a, b = (ops.get(x, "comodule") for x in args)
        h = ops.bialgebra_for(a, b)
        if verb == "hom":
            z, v = a.value, b.value
            ra = mapping_adjoint(h, z, v)
            oracle = lambda: oracle_mapping_dims(h, z, v)  # noqa: E731
        else:
            w, z = a.value, b.value
            ra = enriched_adjoint(h, w, z)
            oracle = lambda: oracle_enriched_dims(h, w, z)  # noqa: E731
        samples = ops.comodules_over(h.coalgebra)
        rep = certify_adjunction(ra, samples, seed=seed)
        _check_group_oracle(rep, h, ra.result, oracle)
        reports.append((f"adjunction bijections, round trips and naturality on {len(samples)} "
                        "comodules; graded oracle", rep))
        writer.ref("comodule", ra.result, verb)
    elif verb == "conv":
        _need(args, 2, "conv C A")
        c = ops.get(args[0], "coalgebra", "bialgebra")
        a = ops.get(args[1], "algebra", "bialgebra")
        c_val = c.value.coalgebra if c.kind == "bialgebra" else c.value
        a_val = a.value.algebra if a.kind == "bialgebra" else a.value
        result = convolution_algebra(c_val, a_val).result
        reports.append(("associativity and unit of the convolution product",
                        validate_algebra(result)))
        writer.ref("algebra", result, "conv")
    elif verb == "kelly":
        if not args or args[0] not in ("lax", "oplax", "roundtrip"):
            raise UsageError("usage: kelly {lax|oplax|roundtrip} ADJ STRUCTURE")
        _need(args, 3, f"kelly {args[0]} ADJ STRUCTURE")
        adj = ops.get(args[1], "adjunction").value
        if args[0] == "oplax":
            s = ops.get(args[2], "lax").value
            if s.carrier != adj.w:
                raise UsageError("carrier does not match the adjunction")
            result = kelly_lax_to_oplax(adj, s)
            rep = validate_oplax(result)
            rep.check_equal("round trip", kelly_oplax_to_lax(adj, result).bhat, s.bhat)
            reports.append(("oplax axioms and the round trip back to the lax structure", rep))
            writer.ref("oplax", result, "kelly")
        else:
            s = ops.get(args[2], "oplax").value
            if s.carrier != adj.w:
                raise UsageError("carrier does not match the adjunction")
            lax = kelly_oplax_to_lax(adj, s)
            back = kelly_lax_to_oplax(adj, lax)
            rep = validate_lax(lax)
            rep.check_equal("round trip", back.b, s.b)
            reports.append(("lax axioms and the round trip back to the oplax structure", rep))
            if args[0] == "lax":
                writer.ref("lax", lax, "kelly")
            else:
                return f"identity: {'yes' if rep.ok else 'no'}\n", reports
    elif verb == "lift":
        _need(args, 2, "lift OPLAX V")
        s = ops.get(args[0], "oplax").value
        v = ops.get(args[1], "comodule").value
        if v.over != s.source:
            raise UsageError("comodule is not over the source of the oplax structure")
        result = lift_comodule(s, v)
        reports.append(("comodule axioms of the lift", validate_comodule(result)))
        writer.ref("comodule", result, "lift")
    elif verb == "adjoint":
        _need(args, 3, "adjoint ADJ OPLAX Z")
        adj = ops.get(args[0], "adjunction").value
        s = ops.get(args[1], "oplax").value
        z = ops.get(args[2], "comodule").value
        if s.carrier != adj.w or z.over != s.target:
            raise UsageError("operands do not fit together")
        ra = lifted_right_adjoint(adj, s, z)
        samples = ops.comodules_over(s.source)
        reports.append((f"adjunction bijections, round trips and naturality on {len(samples)} "
                        "comodules", certify_adjunction(ra, samples, seed=seed)))
        writer.ref("comodule", ra.result, "adjoint")
    elif verb == "factor":
        _need(args, 2, "factor ADJ OPLAX")
        adj = ops.get(args[0], "adjunction").value
        s = ops.get(args[1], "oplax").value
        if s.carrier != adj.w:
            raise UsageError("carrier does not match the adjunction")
        f = factor_comonad(adj, s)
        reports.append(("comonad axioms, both oplax structures and the composite",
                        check_factorization(adj, s, f)))
        writer.add("coalgebra", f.comonad, "factor")
        writer.add("oplax", f.first, "first")
        writer.add("oplax", f.second, "second")
    elif verb == "transfer":
        _need(args, 2, "transfer Z V")
        zd, vd = (ops.get(x, "dgcomodule") for x in args)
        h = ops.bialgebra_for(zd, vd)
        if zd.value.over != h or vd.value.over != h:
            raise UsageError("dg comodules are over different bialgebras")
        reports.append(("transfer hypotheses and the comparison isomorphism",
                        transfer_iso_check(h, zd.value, vd.value)))
        writer.ref("dgcomodule", dg_mapping_comodule(h, zd.value, vd.value).result, "transfer")
    else:
        raise UsageError(f"unknown verb {verb!r}")
    return writer.text(), reports


def _print_certificates(reports: Sequence[tuple[str, Report]], out) -> bool:
    ok = True
    for what, rep in reports:
        print(f"# check: {what}: {'ok' if rep.ok else 'FAIL'}", file=out)
        for f in rep.failures:
            print(f"#   {f.describe()}", file=out)
        for n in rep.notes:
            print(f"#   note: {n}", file=out)
        ok = ok and rep.ok
    return ok


def cmd_compute(model: WorkbenchFile, verb: str, args: Sequence[str], over: str | None,
                seed: int, out) -> int:
    text, reports = compute(model, verb, args, over, seed)
    out.write(text)
    return 0 if _print_certificates(reports, out) else 1


# -- report -------------------------------------------------------------------------


def _has_group_basis(h: FinBialgebra) -> bool:
    try:
        group_law(h)
    except ValueError:
        return False
    return True


def suite_for(model: WorkbenchFile, cfg: SuiteConfig) -> list:
    """The acceptance criteria bound to the file's valid declarations."""
    valid = [d for d in model.declarations.values() if validate_declaration(d).ok]
    bialgebras = [(d.name, d.value) for d in valid if d.kind == "bialgebra"]
    all_bialgebras = [(d.name, d.value) for d in model.of_kind("bialgebra")]
    grouped = [(n, h) for n, h in bialgebras if _has_group_basis(h) and h.dim > 1]
    coalgebras = [d.value for d in valid if d.kind == "coalgebra"] + [h.coalgebra
                                                                      for _, h in bialgebras]
    sources = [pointed_bialgebra(h) for _, h in bialgebras] or None
    hopf_cases = all_bialgebras + [
        (f"{n} mutant {k}", m) for n, h in bialgebras
        for k, m in enumerate(mutated_bialgebras(h, acceptance._rng(cfg, 6), 4))]
    h0 = grouped[0][1] if grouped else None
    return [
        lambda: acceptance.criterion_lifting_bijection(cfg, sources),
        lambda: acceptance.criterion_nat_trans(cfg),
        lambda: acceptance.criterion_kelly(cfg, sources),
        lambda: acceptance.criterion_adjoint_lifting(cfg, grouped or None),
        lambda: acceptance.criterion_convolution(cfg, coalgebras or None),
        lambda: acceptance.criterion_hopf_lift(cfg, hopf_cases or None),
        lambda: acceptance.criterion_factorization(cfg, sources),
        lambda: acceptance.criterion_tce(cfg, h0),
        lambda: acceptance.criterion_transfer(cfg, h0),
        lambda: acceptance.criterion_limits(cfg, coalgebras or None),
    ]


def cmd_report(model: WorkbenchFile, cfg: SuiteConfig, out) -> int:
    print(f"# seed {cfg.seed}", file=out)
    status = cmd_validate(model, out)
    failed = 0
    for run in suite_for(model, cfg):
        res = run()
        failed += not res.ok
        print(res.line(), file=out)
    print(f"criteria: {failed} failed", file=out)
    return 1 if failed or status else 0


# -- entry point ----------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="wb", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)
    v = sub.add_parser("validate", help="run every declaration's validator")
    v.add_argument("file")
    c = sub.add_parser("compute", help="run one construction and print the result")
    c.add_argument("file")
    c.add_argument("verb", choices=VERBS)
    c.add_argument("args", nargs="*")
    c.add_argument("--over", help="bialgebra to use for tensor, hom, enriched and transfer")
    r = sub.add_parser("report", help="validation plus the property suites")
    r.add_argument("file")
    r.add_argument("--cases", type=int, default=3, help="cases per criterion (default 3)")
    return p


def main(argv: Sequence[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    ns = build_parser().parse_args(argv)
    try:
        model = load(ns.file)
    except OSError as exc:
        print(f"wb: cannot read {ns.file}: {exc.strerror}", file=sys.stderr)
        return 2
    except WbError as exc:
        print(f"wb: {ns.file}:{exc}", file=sys.stderr)
        return 2
    cfg = SuiteConfig.from_env()
    try:
        if ns.command == "validate":
            return cmd_validate(model, out)
        if ns.command == "compute":
            return cmd_compute(model, ns.verb, ns.args, ns.over, cfg.seed, out)
        return cmd_report(model, cfg.scaled(ns.cases), out)
    except UsageError as exc:
        print(f"wb: {exc}", file=sys.stderr)
        return 2
    except OperandInvalid as exc:
        print(f"wb: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
