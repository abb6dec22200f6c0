"""Regenerate the bundled ``.wb`` fixtures (deterministic, seed 0)."""

from __future__ import annotations

import argparse
import random
from pathlib import Path

from comonad_workbench.adjlift import kelly_oplax_to_lax, standard_adjunction
from comonad_workbench.comodcat import (
    Comodule, free_module, regular_comodule, trivial_comodule,
)
from comonad_workbench.dgchain import dg_cofree, dg_unit
from comonad_workbench.exactlin import eye
from comonad_workbench.library import broken_counit_kz2, ground_bialgebra, kz2, kz2xz2
from comonad_workbench.oplaxfun import identity_oplax, oplax_from_comodule
from comonad_workbench.samples import random_comodule, random_complex, random_dg_comodule
from comonad_workbench.wbformat import Writer

OUT = Path(__file__).resolve().parents[1] / "src" / "comonad_workbench" / "fixtures"


def ground_file() -> str:
    h = ground_bialgebra()
    w = Writer()
    w.add("bialgebra", h, "k")
    w.add("comodule", Comodule(h.coalgebra, 2, eye(2)), "V")
    w.add("module", free_module(h.algebra, 2), "M")
    w.add("oplax", identity_oplax(h.coalgebra), "id")
    w.add("adjunction", standard_adjunction(2), "adj2")
    return w.text()


def group_file(h, name: str, rng: random.Random, with_dg: bool) -> str:
    c = h.coalgebra
    w = Writer()
    w.add("bialgebra", h, name)
    reg = regular_comodule(c)
    w.add("comodule", reg, "R")
    w.add("comodule", trivial_comodule(c, 1, h.unit), "triv")
    w.add("comodule", random_comodule(rng, c, 3), "V")
    s = oplax_from_comodule(c, reg)
    adj = standard_adjunction(s.carrier)
    w.add("oplax", s, "b")
    w.add("adjunction", adj, "adj")
    w.add("lax", kelly_oplax_to_lax(adj, s), "bhat")
    if with_dg:
        w.add("complex", random_complex(rng, 4, 2), "X")
        w.add("dgcomodule", dg_unit(h), "one")
        w.add("dgcomodule", dg_cofree(h, random_complex(rng, 2, 2)), "cofreeX")
        w.add("dgcomodule", random_dg_comodule(rng, h, 3, 2), "D")
    return w.text()


def broken_file() -> str:
    w = Writer()
    w.add("bialgebra", broken_counit_kz2(), "kz2_broken")
    w.add("coalgebra", kz2().coalgebra, "kz2_coalgebra")
    return w.text()


def main() -> None:
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--out", type=Path, default=OUT)
    ns = p.parse_args()
    rng = random.Random(0)
    files = {
        "ground.wb": ground_file(),
        "kz2.wb": group_file(kz2(), "kz2", rng, with_dg=True),
        "kz2xz2.wb": group_file(kz2xz2(), "kz2xz2", rng, with_dg=False),
        "broken-counit.wb": broken_file(),
    }
    for name, text in files.items():
        header = f"# {name}: generated by scripts/make_fixtures.py\n"
        (ns.out / name).write_text(header + text)
        print(f"wrote {ns.out / name}")


if __name__ == "__main__":
    main()
