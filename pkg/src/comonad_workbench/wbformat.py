"""The ``.wb`` structure-constant file format.

A file is a header line ``wb 1`` followed by declarations::

    bialgebra kz2 2
      map comult 4 2
        entry 0 0 1
        entry 3 1 1
      map counit 1 2
        entry 0 0 1
        entry 0 1 1
      ...
    end

Each declaration is ``KIND NAME ARGS...``, then ``map NAME ROWS COLS`` blocks
of ``entry ROW COL VALUE`` lines, closed by ``end``.  Values are integers or
``p/q``.  ``#`` starts a comment.  Names must be declared before use; the
name ``ground`` always refers to the one-dimensional bialgebra and ``unit`` is
reserved for the tensor unit on the command line.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from .adjlift import AdjunctionData, LaxStructure
from .comodcat import Comodule, ModuleOverAlgebra
from .dgchain import ChainComplex, DgComodule
from .exactlin import LinMap, format_scalar, parse_scalar
from .library import ground_bialgebra
from .oplaxfun import OplaxStructure
from .structures import FinAlgebra, FinBialgebra, FinCoalgebra

VERSION = 1
RESERVED = ("ground", "unit")
_NAME = re.compile(r"[A-Za-z_][A-Za-z0-9_.\-]*\Z")
_INT = re.compile(r"-?\d+\Z")


class WbError(Exception):
    """Parse error with a 1-based line and column."""

    def __init__(self, message: str, line: int, col: int):
        super().__init__(message)
        self.message, self.line, self.col = message, line, col

    def __str__(self) -> str:
        return f"{self.line}:{self.col}: {self.message}"


@dataclass(frozen=True)
class Declaration:
    kind: str
    name: str
    value: object
    refs: tuple[str, ...] = ()
    line: int = 0


@dataclass
class WorkbenchFile:
    version: int | None = None
    declarations: dict[str, Declaration] = field(default_factory=dict)

    def of_kind(self, *kinds: str) -> list[Declaration]:
        return [d for d in self.declarations.values() if d.kind in kinds]

    def __eq__(self, other) -> bool:
        if not isinstance(other, WorkbenchFile):
            return NotImplemented
        mine = {n: (d.kind, d.value) for n, d in self.declarations.items()}
        theirs = {n: (d.kind, d.value) for n, d in other.declarations.items()}
        return mine == theirs


# -- declaration kinds -----------------------------------------------------------
#
# Each kind lists its header arguments ("int", "ints" for a trailing list, or a
# reference group), and a function giving the expected map shapes.


_COALG_REF = ("coalgebra", "bialgebra")
_ALG_REF = ("algebra", "bialgebra")


def _coalgebra_of(d: Declaration) -> FinCoalgebra:
    return d.value.coalgebra if d.kind == "bialgebra" else d.value


def _algebra_of(d: Declaration) -> FinAlgebra:
    return d.value.algebra if d.kind == "bialgebra" else d.value


def _complex_maps(args) -> dict[str, tuple[int, int]]:
    lo, dims = args[0], args[1]
    return {f"d{lo + k + 1}": (dims[k], dims[k + 1]) for k in range(len(dims) - 1)}


@dataclass(frozen=True)
class _Kind:
    params: tuple
    shapes: Callable[[list], dict[str, tuple[int, int]]]
    build: Callable[[list, dict[str, LinMap]], object]
    optional_maps: bool = False


def _dim(d: Declaration) -> int:
    return d.value.dim


KINDS: dict[str, _Kind] = {
    "coalgebra": _Kind(
        ("int",),
        lambda a: {"comult": (a[0] ** 2, a[0]), "counit": (1, a[0])},
        lambda a, m: FinCoalgebra(a[0], m["comult"], m["counit"])),
    "algebra": _Kind(
        ("int",),
        lambda a: {"mult": (a[0], a[0] ** 2), "unit": (a[0], 1)},
        lambda a, m: FinAlgebra(a[0], m["mult"], m["unit"])),
    "bialgebra": _Kind(
        ("int",),
        lambda a: {"comult": (a[0] ** 2, a[0]), "counit": (1, a[0]),
                   "mult": (a[0], a[0] ** 2), "unit": (a[0], 1)},
        lambda a, m: FinBialgebra(FinCoalgebra(a[0], m["comult"], m["counit"]),
                                  FinAlgebra(a[0], m["mult"], m["unit"]))),
    "comodule": _Kind(
        ("int", _COALG_REF),
        lambda a: {"coaction": (a[0] * _dim(a[1]), a[0])},
        lambda a, m: Comodule(_coalgebra_of(a[1]), a[0], m["coaction"])),
    "module": _Kind(
        ("int", _ALG_REF),
        lambda a: {"action": (a[0], _dim(a[1]) * a[0])},
        lambda a, m: ModuleOverAlgebra(_algebra_of(a[1]), a[0], m["action"])),
    "oplax": _Kind(
        ("int", _COALG_REF, _COALG_REF),
        lambda a: {"b": (a[0] * _dim(a[2]), _dim(a[1]) * a[0])},
        lambda a, m: OplaxStructure(_coalgebra_of(a[1]), _coalgebra_of(a[2]), a[0], m["b"])),
    "lax": _Kind(
        ("int", _COALG_REF, _COALG_REF),
        lambda a: {"bhat": (_dim(a[2]) * a[0], a[0] * _dim(a[1]))},
        lambda a, m: LaxStructure(_coalgebra_of(a[1]), _coalgebra_of(a[2]), a[0], m["bhat"])),
    "adjunction": _Kind(
        ("int",),
        lambda a: {"coev": (a[0] ** 2, 1), "ev": (1, a[0] ** 2)},
        lambda a, m: AdjunctionData(a[0], m["coev"], m["ev"])),
    "complex": _Kind(
        ("int", "ints"),
        _complex_maps,
        lambda a, m: ChainComplex(a[0], tuple(a[1]), tuple(
            m.get(n, LinMap.zero(*s)) for n, s in _complex_maps(a).items())),
        optional_maps=True),
    "dgcomodule": _Kind(
        (("bialgebra",), ("complex",)),
        lambda a: {"coaction": (a[1].value.total * a[0].value.dim, a[1].value.total)},
        lambda a, m: DgComodule(a[0].value, a[1].value, m["coaction"])),
}


def builtin_ground() -> Declaration:
    return Declaration("bialgebra", "ground", ground_bialgebra())


# -- parser -----------------------------------------------------------------------


def _tokens(text: str) -> list[tuple[int, list[tuple[str, int]]]]:
    out = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0]
        toks = [(m.group(), m.start() + 1) for m in re.finditer(r"\S+", line)]
        if toks:
            out.append((lineno, toks))
    return out


def _int(tok: tuple[str, int], line: int, what: str, minimum: int | None = 0) -> int:
    text, col = tok
    if not _INT.match(text):
        raise WbError(f"expected an integer {what}, got {text!r}", line, col)
    value = int(text)
    if minimum is not None and value < minimum:
        raise WbError(f"{what} must be at least {minimum}, got {value}", line, col)
    return value


def parse(text: str) -> WorkbenchFile:
    """Parse ``.wb`` text; raises :class:`WbError` at the first problem."""
    lines = _tokens(text)
    model = WorkbenchFile()
    if not lines:
        return model
    lineno, toks = lines[0]
    if toks[0][0] != "wb" or len(toks) != 2:
        raise WbError("expected header 'wb 1'", lineno, toks[0][1])
    model.version = _int(toks[1], lineno, "format version")
    if model.version != VERSION:
        raise WbError(f"unsupported format version {model.version}", lineno, toks[1][1])
    pos = 1
    while pos < len(lines):
        pos = _parse_declaration(lines, pos, model)
    return model


def _lookup(model: WorkbenchFile, tok: tuple[str, int], line: int, kinds: tuple) -> Declaration:
    name, col = tok
    if name == "ground" and set(kinds) & {"coalgebra", "algebra", "bialgebra"}:
        return builtin_ground()
    if name not in model.declarations:
        raise WbError(f"undeclared name {name!r}", line, col)
    decl = model.declarations[name]
    if decl.kind not in kinds:
        raise WbError(f"{name!r} is a {decl.kind}, expected {' or '.join(kinds)}", line, col)
    return decl


def _parse_declaration(lines, pos: int, model: WorkbenchFile) -> int:
    lineno, toks = lines[pos]
    kind_text, kind_col = toks[0]
    if kind_text not in KINDS:
        raise WbError(f"unknown declaration kind {kind_text!r}", lineno, kind_col)
    kind = KINDS[kind_text]
    if len(toks) < 2:
        raise WbError("missing declaration name", lineno, kind_col + len(kind_text))
    name, name_col = toks[1]
    if not _NAME.match(name):
        raise WbError(f"invalid name {name!r}", lineno, name_col)
    if name in RESERVED:
        raise WbError(f"{name!r} is a reserved name", lineno, name_col)
    if name in model.declarations:
        raise WbError(f"duplicate declaration of {name!r} (first on line "
                      f"{model.declarations[name].line})", lineno, name_col)

    args, refs = [], []
    rest = toks[2:]
    for k, param in enumerate(kind.params):
        if param == "ints":
            if not rest[k:]:
                raise WbError("expected at least one dimension", lineno,
                              toks[-1][1] + len(toks[-1][0]))
            args.append([_int(t, lineno, "dimension") for t in rest[k:]])
            rest = rest[: k]
            break
        if k >= len(rest):
            raise WbError(f"{kind_text} needs {len(kind.params)} arguments", lineno,
                          toks[-1][1] + len(toks[-1][0]))
        if param == "int":
            minimum = None if kind_text == "complex" else 0
            args.append(_int(rest[k], lineno, "dimension", minimum))
        else:
            decl = _lookup(model, rest[k], lineno, param)
            args.append(decl)
            refs.append(decl.name)
    else:
        if len(rest) > len(kind.params):
            extra = rest[len(kind.params)]
            raise WbError(f"unexpected argument {extra[0]!r}", lineno, extra[1])

    shapes = kind.shapes(args)
    maps: dict[str, LinMap] = {}
    pos += 1
    current: tuple[str, int, int, dict] | None = None

    def close():
        if current is not None:
            mname, r, c, entries = current
            maps[mname] = LinMap.from_sparse(r, c, [(i, j, v) for (i, j), v in entries.items()])

    while True:
        if pos >= len(lines):
            raise WbError(f"declaration {name!r} is missing 'end'", lineno, kind_col)
        ln, ts = lines[pos]
        word, col = ts[0]
        if word == "end":
            if len(ts) > 1:
                raise WbError("unexpected text after 'end'", ln, ts[1][1])
            close()
            pos += 1
            break
        if word == "map":
            close()
            if len(ts) != 4:
                raise WbError("expected 'map NAME ROWS COLS'", ln, col)
            mname, mcol = ts[1]
            if mname not in shapes:
                raise WbError(f"{kind_text} has no map {mname!r}", ln, mcol)
            if mname in maps:
                raise WbError(f"duplicate map {mname!r}", ln, mcol)
            r = _int(ts[2], ln, "row count")
            c = _int(ts[3], ln, "column count")
            if (r, c) != shapes[mname]:
                er, ec = shapes[mname]
                raise WbError(f"dimension mismatch: {mname} must be {er}x{ec}, got {r}x{c}",
                              ln, ts[2][1])
            current = (mname, r, c, {})
        elif word == "entry":
            if current is None:
                raise WbError("'entry' outside a map block", ln, col)
            if len(ts) != 4:
                raise WbError("expected 'entry ROW COL VALUE'", ln, col)
            mname, r, c, entries = current
            i = _int(ts[1], ln, "row index")
            j = _int(ts[2], ln, "column index")
            if i >= r:
                raise WbError(f"row {i} outside {mname} ({r}x{c})", ln, ts[1][1])
            if j >= c:
                raise WbError(f"column {j} outside {mname} ({r}x{c})", ln, ts[2][1])
            if (i, j) in entries:
                raise WbError(f"duplicate entry ({i}, {j}) in {mname}", ln, col)
            try:
                entries[(i, j)] = parse_scalar(ts[3][0])
            except (ValueError, ZeroDivisionError) as exc:
                raise WbError(str(exc), ln, ts[3][1]) from None
        else:
            raise WbError(f"expected 'map', 'entry' or 'end', got {word!r}", ln, col)
        pos += 1

    if not kind.optional_maps:
        missing = [m for m in shapes if m not in maps]
        if missing:
            raise WbError(f"{kind_text} {name!r} is missing map {missing[0]!r}", lineno, kind_col)
    model.declarations[name] = Declaration(kind_text, name, kind.build(args, maps),
                                           tuple(refs), lineno)
    return pos


def load(path) -> WorkbenchFile:
    with open(path, encoding="utf-8") as fh:
        return parse(fh.read())


# -- writer -----------------------------------------------------------------------


def _format_map(name: str, m: LinMap) -> list[str]:
    out = [f"  map {name} {m.rows} {m.cols}"]
    out += [f"    entry {i} {j} {format_scalar(Fraction(v))}" for i, j, v in m.nonzero()]
    return out


_REF_GROUP = {"coalgebra": _COALG_REF, "algebra": _ALG_REF, "bialgebra": ("bialgebra",),
              "complex": ("complex",)}


class Writer:
    """Deterministic ``.wb`` output that pulls in every dependency once.

    Names already used in ``model`` are reused for equal structures.
    """

    def __init__(self, model: WorkbenchFile | None = None):
        model = model or WorkbenchFile()
        # own copy: emitted structures are registered for reuse
        self.model = WorkbenchFile(model.version, dict(model.declarations))
        self.blocks: list[str] = []
        self.emitted: set[str] = set()
        self.taken: set[str] = set(RESERVED) | set(self.model.declarations)

    def _fresh(self, hint: str) -> str:
        name, k = hint, 2
        while name in self.taken:
            name, k = f"{hint}_{k}", k + 1
        self.taken.add(name)
        return name

    def _matches(self, group: str, obj, decl: Declaration) -> bool:
        if decl.kind not in _REF_GROUP.get(group, (group,)):
            return False
        if group == "coalgebra":
            return _coalgebra_of(decl) == obj
        if group == "algebra":
            return _algebra_of(decl) == obj
        return decl.value == obj

    def ref(self, group: str, obj, hint: str) -> str:
        """Name for ``obj`` used as a reference of the given group, emitting it if needed."""
        ground = builtin_ground()
        if self._matches(group, obj, ground):
            return "ground"
        for decl in self.model.declarations.values():
            if self._matches(group, obj, decl):
                if decl.name not in self.emitted:
                    self._emit(decl.kind, decl.name, decl.value)
                return decl.name
        return self.add(group, obj, hint)

    def add(self, kind: str, obj, name: str) -> str:
        """Emit ``obj`` as a new declaration; the name is made unique."""
        name = self._fresh(name) if name in self.taken else name
        self.taken.add(name)
        self._emit(kind, name, obj)
        return name

    def _emit(self, kind: str, name: str, obj) -> None:
        self.emitted.add(name)
        self.model.declarations.setdefault(name, Declaration(kind, name, obj))
        if kind == "coalgebra":
            head, maps = f"{obj.dim}", [("comult", obj.comult), ("counit", obj.counit)]
        elif kind == "algebra":
            head, maps = f"{obj.dim}", [("mult", obj.mult), ("unit", obj.unit)]
        elif kind == "bialgebra":
            head = f"{obj.dim}"
            maps = [("comult", obj.comult), ("counit", obj.counit),
                    ("mult", obj.mult), ("unit", obj.unit)]
        elif kind == "comodule":
            head = f"{obj.dim} {self.ref('coalgebra', obj.over, name + '_over')}"
            maps = [("coaction", obj.coaction)]
        elif kind == "module":
            head = f"{obj.dim} {self.ref('algebra', obj.over, name + '_over')}"
            maps = [("action", obj.action)]
        elif kind in ("oplax", "lax"):
            src = self.ref("coalgebra", obj.source, name + "_source")
            tgt = self.ref("coalgebra", obj.target, name + "_target")
            head = f"{obj.carrier} {src} {tgt}"
            maps = [("b", obj.b)] if kind == "oplax" else [("bhat", obj.bhat)]
        elif kind == "adjunction":
            head, maps = f"{obj.w}", [("coev", obj.coev), ("ev", obj.ev)]
        elif kind == "complex":
            head = " ".join(str(x) for x in (obj.min_deg, *obj.dims))
            maps = [(f"d{obj.min_deg + k + 1}", d) for k, d in enumerate(obj.diffs)]
        elif kind == "dgcomodule":
            over = self.ref("bialgebra", obj.over, name + "_over")
            cx = self.ref("complex", obj.complex, name + "_complex")
            head, maps = f"{over} {cx}", [("coaction", obj.coaction)]
        else:
            raise ValueError(f"unknown kind {kind!r}")
        lines = [f"{kind} {name} {head}"]
        for mname, m in maps:
            lines += _format_map(mname, m)
        lines.append("end")
        self.blocks.append("\n".join(lines))

    def text(self) -> str:
        return "\n\n".join([f"wb {VERSION}", *self.blocks]) + "\n"


def dump(model: WorkbenchFile) -> str:
    """The whole model, declarations in their original order."""
    w = Writer(model)
    for decl in model.declarations.values():
        if decl.name not in w.emitted:
            w._emit(decl.kind, decl.name, decl.value)
    return w.text()
